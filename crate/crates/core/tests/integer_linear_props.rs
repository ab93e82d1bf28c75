mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use common::random_unimodular;
use slicecalc::integer_linear::{integer_kernel, smith_normal_form, FgAbGroup, Homomorphism, IntMatrix};

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (0..=max_dim, 0..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |data| IntMatrix::from_i64(r, c, &data))
    })
}

fn square_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (0..=max_dim).prop_flat_map(move |n| {
        prop::collection::vec(-bound..=bound, n * n)
            .prop_map(move |data| IntMatrix::from_i64(n, n, &data))
    })
}

/// Determinantal divisors: the gcd of all `i x i` minors, by brute force.
fn determinantal_divisors(m: &IntMatrix) -> Vec<BigInt> {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        if n < k {
            return Vec::new();
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    let mut out = Vec::new();
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                g = g.gcd(&m.select_rows(&rs).select_cols(&cs).determinant());
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(g);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn smith_round_trip(m in matrix(6, 9)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
        prop_assert!(s.d.is_diagonal());
        prop_assert!(s.u.is_unimodular());
        prop_assert!(s.v.is_unimodular());
        prop_assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(m.rows()));
        let diag = s.diagonal();
        prop_assert!(diag.iter().all(|d| d.is_positive()));
        for w in diag.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        for i in s.rank..m.rows().min(m.cols()) {
            prop_assert!(s.d[(i, i)].is_zero());
        }
    }

    #[test]
    fn smith_matches_minors(m in matrix(4, 9)) {
        let s = smith_normal_form(&m);
        let dd = determinantal_divisors(&m);
        prop_assert_eq!(dd.len(), s.rank);
        let mut prefix = BigInt::one();
        for (i, d) in s.diagonal().iter().enumerate() {
            prefix *= d;
            prop_assert_eq!(&prefix, &dd[i]);
        }
    }

    #[test]
    fn rank_nullity(m in matrix(6, 9)) {
        let k = integer_kernel(&m);
        let rank = smith_normal_form(&m).rank;
        prop_assert_eq!(rank + k.cols(), m.cols());
        prop_assert!((&m * &k).is_zero());
        // the kernel basis is saturated: Z^n / ker is torsion-free
        if k.cols() > 0 {
            prop_assert!(smith_normal_form(&k).diagonal().iter().all(|d| d.is_one()));
        }
    }

    #[test]
    fn quotient_order_is_the_determinant(m in square_matrix(4, 9)) {
        let g = FgAbGroup::new(m.rows(), m.clone()).unwrap();
        let det = m.determinant();
        if det.is_zero() {
            prop_assert!(g.order().is_none());
        } else {
            prop_assert_eq!(g.order(), Some(det.abs()));
        }
    }

    #[test]
    fn invariants_ignore_presentation(m in matrix(5, 6), seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let (u, _) = random_unimodular(&mut r, m.rows(), 8);
        let (v, _) = random_unimodular(&mut r, m.cols(), 8);
        let a = FgAbGroup::new(m.rows(), m.clone()).unwrap();
        let b = FgAbGroup::new(m.rows(), &(&u * &m) * &v).unwrap();
        prop_assert_eq!(a.invariants(), b.invariants());
        let simple = a.simplify();
        prop_assert!(simple.group.is_simplified());
        prop_assert!(simple.group.is_isomorphic(&a));
        prop_assert_eq!(&simple.to_new * &simple.to_old, IntMatrix::identity(simple.group.gens()));
    }

    #[test]
    fn kernel_and_image_of_free_maps(m in matrix(5, 5)) {
        let f = Homomorphism::new(
            FgAbGroup::free(m.cols()),
            FgAbGroup::free(m.rows()),
            m.clone(),
        ).unwrap();
        let k = f.kernel();
        let im = f.image();
        prop_assert!(f.compose(&k).unwrap().is_zero());
        prop_assert!(k.is_injective());
        prop_assert!(im.is_injective());
        prop_assert_eq!(k.source().free_rank() + im.source().free_rank(), m.cols());
        prop_assert_eq!(f.is_injective(), k.source().is_trivial());
    }

    #[test]
    fn maps_into_torsion(m in matrix(4, 5), seed in any::<u64>()) {
        // f: Z^c -> Z^r / rels, with random relations
        let mut r = common::rng(seed);
        let rels = common::random_matrix(&mut r, m.rows(), 2, 5);
        let target = FgAbGroup::new(m.rows(), rels).unwrap();
        let f = Homomorphism::new(FgAbGroup::free(m.cols()), target.clone(), m.clone()).unwrap();
        let k = f.kernel();
        prop_assert!(f.compose(&k).unwrap().is_zero());
        let q = target.quotient(f.matrix()).unwrap();
        // |coker| * |im| = |target| when finite
        if let (Some(t), Some(c), Some(i)) = (target.order(), q.target().order(), f.image().source().order()) {
            prop_assert_eq!(t, c * i);
        }
        prop_assert_eq!(f.is_surjective(), q.target().is_trivial());
    }
}
