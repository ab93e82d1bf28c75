#![allow(dead_code)]

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use slicecalc::integer_linear::{FgAbGroup, IntMatrix};
use slicecalc::mackey::CpMackey;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-bound..=bound)).collect();
    IntMatrix::from_i64(rows, cols, &data)
}

fn elementary(n: usize, i: usize, j: usize, c: i64) -> IntMatrix {
    let mut data = vec![0i64; n * n];
    for k in 0..n {
        data[k * n + k] = 1;
    }
    data[i * n + j] += c;
    IntMatrix::from_i64(n, n, &data)
}

/// A random unimodular matrix together with its inverse.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut w = IntMatrix::identity(n);
    let mut w_inv = IntMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            let neg = IntMatrix::from_i64(1, 1, &[-1]);
            return (neg.clone(), neg);
        }
        return (w, w_inv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = *[-2i64, -1, 1, 2].choose(rng).unwrap();
        w = &elementary(n, i, j, c) * &w;
        w_inv = &w_inv * &elementary(n, i, j, -c);
    }
    (w, w_inv)
}

/// A random presentation of a finitely generated abelian group.
pub fn random_group(rng: &mut impl Rng, max_gens: usize, max_rels: usize) -> FgAbGroup {
    let gens = rng.gen_range(0..=max_gens);
    let rels = rng.gen_range(0..=max_rels);
    FgAbGroup::new(gens, random_matrix(rng, gens, rels, 6)).unwrap()
}

/// A random valid `C_p` Mackey functor.
///
/// The bottom level is `a` free orbits `Z[C_p]` plus `b` trivial copies of `Z`.
/// Restriction lands in the fixed points through `F`, transfer factors through
/// the coinvariants `Q`, and `res tr = F A B Q` equals the norm because
/// `A B = diag(1,..,1,p,..,p)`. The top level is then mixed by a unimodular
/// change of basis and optionally given a torsion summand killed by restriction.
pub fn random_mackey(rng: &mut impl Rng, p: u64) -> CpMackey {
    let pi = p as usize;
    let a = rng.gen_range(0..=2usize);
    let b = rng.gen_range(0..=2usize);
    let s = rng.gen_range(0..=2usize);
    let n = a * pi + b;
    let f = a + b;
    let t = f + s;

    let mut gamma = vec![0i64; n * n];
    for i in 0..a {
        for r in 0..pi {
            let col = i * pi + r;
            let row = i * pi + (r + 1) % pi;
            gamma[row * n + col] = 1;
        }
    }
    for j in 0..b {
        let k = a * pi + j;
        gamma[k * n + k] = 1;
    }
    let gamma = IntMatrix::from_i64(n, n, &gamma);

    let mut fm = vec![0i64; n * f];
    let mut qm = vec![0i64; f * n];
    for i in 0..a {
        for r in 0..pi {
            fm[(i * pi + r) * f + i] = 1;
            qm[i * n + i * pi + r] = 1;
        }
    }
    for j in 0..b {
        fm[(a * pi + j) * f + a + j] = 1;
        qm[(a + j) * n + a * pi + j] = 1;
    }
    let fm = IntMatrix::from_i64(n, f, &fm);
    let qm = IntMatrix::from_i64(f, n, &qm);

    let x = random_matrix(rng, f, s, 3);
    let y = random_matrix(rng, s, f, 3);
    let mut c = vec![0i64; f * f];
    for i in 0..f {
        c[i * f + i] = if i < a { 1 } else { p as i64 };
    }
    let c = IntMatrix::from_i64(f, f, &c);
    let am = IntMatrix::hstack(f, &[&IntMatrix::identity(f), &x]);
    let upper = &c - &(&x * &y);
    let bm = IntMatrix::hstack(f, &[&upper.transpose(), &y.transpose()]).transpose();

    let (w, w_inv) = random_unimodular(rng, t, 3 * t);
    let res = &(&fm * &am) * &w;
    let tr = &(&w_inv * &bm) * &qm;

    let torsion = rng.gen_range(0..=1usize);
    let order = *[2i64, 3, p as i64, (p * p) as i64, 4].choose(rng).unwrap();
    let gens = torsion + t;
    let mut rels = vec![0i64; gens * torsion];
    if torsion == 1 {
        rels[0] = order;
    }
    let top = FgAbGroup::new(gens, IntMatrix::from_i64(gens, torsion, &rels)).unwrap();

    let res = IntMatrix::hstack(n, &[&IntMatrix::zeros(n, torsion), &res]);
    let tors_rows = &random_matrix(rng, torsion, f, 4) * &qm;
    let tr = IntMatrix::hstack(n, &[&tors_rows.transpose(), &tr.transpose()]).transpose();

    CpMackey::new_validated(p, FgAbGroup::free(n), top, gamma, res, tr)
        .expect("construction satisfies the axioms")
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}
