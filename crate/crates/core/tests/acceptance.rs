//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::time::{Duration, Instant};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;

use slicecalc::integer_linear::smith_normal_form;
use slicecalc::mackey::CpMackey;
use slicecalc::rep_theory::{CyclicGroup, VirtualRep};
use slicecalc::slice_calculus::{
    cp_pattern, equivalence_classes, induced_sphere_connectivity, is_auto_equivalence, nu,
    smash_verdict, sphere_in_tau, vj_condition,
};
use slicecalc::slice_formulas::{decompose, slice_description, slice_schedule, SliceFunctor};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || {
        format!("took {elapsed:.2?}, limit {limit:.0?}")
    })
}

fn g(m: u64) -> CyclicGroup {
    CyclicGroup::new(m).unwrap()
}

fn ceil_div(n: i64, d: i64) -> i64 {
    n.div_euclid(d) + i64::from(n.rem_euclid(d) != 0)
}

fn sphere_table() -> Check {
    let start = Instant::now();
    let two_rhobar = VirtualRep::reduced_regular(g(3)).scale(2);
    let a = sphere_in_tau(&two_rhobar, 4);
    let b = sphere_in_tau(&VirtualRep::regular(g(3)), 3);
    let elapsed = start.elapsed();
    ensure(!a.member && a.witness_divisor == Some(3), || {
        format!("2 rhobar at n=4: {a:?}")
    })?;
    ensure(b.member, || format!("rho at n=3: {b:?}"))?;
    within(elapsed, Duration::from_millis(1))?;
    Ok(format!("2rhobar not in tau>=4 (witness C3), rho in tau>=3, {elapsed:.2?}"))
}

fn rho_periodicity() -> Check {
    let start = Instant::now();
    let mut cases = 0;
    for m in 1..=12u64 {
        let rho = VirtualRep::regular(g(m));
        for n in -24..=24 {
            let v = smash_verdict(&rho, n, m as i64);
            ensure(v.verdict.is_equivalence(), || format!("m={m} n={n}: {}", v.verdict.name()))?;
            cases += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    ensure(cases == 588, || format!("{cases} cases"))?;
    Ok(format!("{cases} cases all Equivalence, {:.2?}", start.elapsed()))
}

/// The ceiling identity from the proof, with the fixed dimensions written out:
/// `2p^{j-d}` below level `j`, and for `d > j` the shift by `2p^j` stays inside
/// one block of length `p^{j+1}` because `n mod p^{j+1} <= p^{j+1} - 2p^j`.
fn ceiling_identity(p: i64, k: u32, j: u32, n: i64) -> bool {
    let step = 2 * p.pow(j);
    (0..=k).all(|d| {
        let pd = p.pow(d);
        let dim = if d <= j { 2 * p.pow(j - d) } else { 0 };
        let r = n.rem_euclid(p.pow(j + 1));
        let m = n - r;
        ceil_div(m + r, pd) + dim == ceil_div(m + r + step, pd)
    })
}

fn vj_sweep() -> Check {
    let start = Instant::now();
    let mut cases = 0;
    for p in [3u64, 5] {
        for k in 1..=3u32 {
            for j in 0..k {
                let v = VirtualRep::v_j(p, k, j).unwrap();
                let shift = 2 * p.pow(j) as i64;
                for n in 0..=4 * p.pow(k) as i64 {
                    if !vj_condition(p, k, j, n).unwrap() {
                        continue;
                    }
                    let verdict = smash_verdict(&v, n, shift).verdict;
                    ensure(verdict.is_equivalence(), || {
                        format!("p={p} k={k} j={j} n={n}: {}", verdict.name())
                    })?;
                    ensure(ceiling_identity(p as i64, k, j, n), || {
                        format!("ceiling identity fails at p={p} k={k} j={j} n={n}")
                    })?;
                    cases += 1;
                }
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!("{cases} cases, engine and ceiling identity agree, {:.2?}", start.elapsed()))
}

fn vj_dimensions() -> Check {
    let mut cases = 0;
    for p in [3u64, 5, 7] {
        for k in 1..=4u32 {
            let group = CyclicGroup::prime_power(p, k).unwrap();
            for j in 0..k {
                let v = VirtualRep::v_j(p, k, j).unwrap();
                for d in 0..=k {
                    let h = group.subgroup(p.pow(d)).unwrap();
                    let expected = if d <= j { 2 * p.pow(j - d) as i64 } else { 0 };
                    let got = v.dim_fixed(&h).unwrap();
                    ensure(got == expected, || {
                        format!("p={p} k={k} j={j} d={d}: {got} != {expected}")
                    })?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} (p,k,j,d) entries match 2p^(j-d) / 0"))
}

fn class_counts() -> Check {
    let start = Instant::now();
    for p in [3u64, 5, 7] {
        for k in 1..=3u32 {
            let part = equivalence_classes(p, k, 4 * p.pow(k)).unwrap();
            let expected = 1usize << k;
            ensure(part.block_count() == expected, || {
                format!("p={p} k={k}: {} blocks", part.block_count())
            })?;
            let mut blocks = part.representative_blocks.clone();
            blocks.sort_unstable();
            blocks.dedup();
            ensure(blocks.len() == expected, || {
                format!("p={p} k={k}: representatives share blocks")
            })?;
        }
    }
    let part = equivalence_classes(3, 2, 36).unwrap();
    let expected: Vec<Vec<u64>> = vec![vec![0, 1, 3, 7], vec![2, 8], vec![4, 6], vec![5]];
    ensure(part.blocks == expected, || format!("p=3 k=2: {:?}", part.blocks))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("2^k blocks for all 9 (p,k), p=3 k=2 partition exact, {:.2?}", start.elapsed()))
}

fn lambda_pattern() -> Check {
    for p in [3u64, 5, 7, 11] {
        let pi = p as i64;
        for row in cp_pattern(p).unwrap() {
            let n = row.n;
            let expected = if n % 2 == 1 {
                (1..=pi - 2).contains(&n)
            } else {
                (2..=pi - 3).contains(&n)
            };
            ensure(row.verdict.verdict.is_equivalence() == expected, || {
                format!("p={p} n={n}: {}", row.verdict.verdict.name())
            })?;
        }
    }
    Ok("Equivalence exactly on odd [1,p-2] and even [2,p-3] for p in {3,5,7,11}".into())
}

fn induced_bound() -> Check {
    let mut cases = 0;
    for m in 1..=27u64 {
        let group = g(m);
        for h in group.subgroups() {
            for k in 0..=6i64 {
                let conn = induced_sphere_connectivity(group, &h, k).unwrap();
                for n in 0..=k * h.order() as i64 {
                    let bound = nu(group, n).value;
                    for ((d, c), (_, b)) in conn.iter().zip(bound.iter()) {
                        ensure(c >= b, || format!("m={m} |H|={} k={k} n={n} d={d}", h.order()))?;
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} (m,H,k,n) cases connective"))
}

fn scalars(m: &CpMackey) -> Option<(i64, i64)> {
    m.as_scalars()
        .map(|(r, t)| (i64::try_from(r).unwrap(), i64::try_from(t).unwrap()))
}

fn mackey_algebra() -> Check {
    let start = Instant::now();
    for p in [3u64, 5, 7] {
        let b = CpMackey::burnside(p).unwrap();
        let f = CpMackey::fixed_point_integers(p).unwrap();
        ensure(b.is_valid() && f.is_valid(), || format!("p={p}: standard functors invalid"))?;
        let pi = p as i64;
        let q = b.p_zero().unwrap();
        ensure(scalars(&q) == Some((1, pi)), || format!("p={p}: p_zero(burnside) = {q}"))?;
        let e = b.e_tensor().unwrap();
        ensure(scalars(&e) == Some((pi, 1)), || format!("p={p}: e_tensor(burnside) = {e}"))?;
    }

    let mut rng = common::rng(8);
    for i in 0..200 {
        let m = common::random_mackey(&mut rng, [3, 5, 7][i % 3]);
        let once = m.p_zero().unwrap();
        let (twice, proj) = once.p_zero_with_projection().unwrap();
        ensure(twice.is_valid() && proj.is_isomorphism(&once, &twice), || {
            format!("p_zero not idempotent on instance {i}:\n{m}")
        })?;
        let once = m.e_tensor().unwrap();
        let (twice, inc) = once.e_tensor_with_inclusion().unwrap();
        ensure(twice.is_valid() && inc.is_isomorphism(&twice, &once), || {
            format!("e_tensor not idempotent on instance {i}:\n{m}")
        })?;
    }

    for i in 0..1000 {
        let rows = rng.gen_range(0..=6);
        let cols = rng.gen_range(0..=6);
        let a = common::random_matrix(&mut rng, rows, cols, 9);
        let s = smith_normal_form(&a);
        let diag = s.diagonal();
        let ok = &(&s.u * &a) * &s.v == s.d
            && s.d.is_diagonal()
            && s.u.is_unimodular()
            && s.v.is_unimodular()
            && diag.iter().all(|d| d.is_positive())
            && diag.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
            && (s.rank..rows.min(cols)).all(|t| s.d[(t, t)].is_zero());
        ensure(ok, || format!("SNF round trip fails on matrix {i}: {a}"))?;
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!(
        "standard functors, 200 idempotence instances, 1000 SNF round trips, {:.2?}",
        start.elapsed()
    ))
}

fn slice_formulas() -> Check {
    for p in [3u64, 5, 7, 11] {
        for n in -50..=50 {
            let i = decompose(p, n).unwrap();
            ensure(i.reconstruct() == n, || format!("p={p} n={n}: {i:?}"))?;
            let d = slice_description(p, n).unwrap();
            let dim = d.rho_mult * p as i64 + 2 * d.lambda_mult + d.int_shift;
            ensure(dim == n, || format!("p={p} n={n}: degree has dimension {dim}"))?;
        }
        let d = slice_description(p, -1).unwrap();
        ensure(
            d.functor == SliceFunctor::ETensor && d.underlying_dimensions() == (-1, -1),
            || format!("p={p} n=-1: {d}"),
        )?;
    }
    let codes: Vec<&str> = slice_schedule(3, 0, 5)
        .unwrap()
        .iter()
        .map(|d| d.functor.code())
        .collect();
    ensure(codes == ["Id", "P0", "ETensor", "Id", "P0", "ETensor"], || {
        format!("p=3 schedule: {codes:?}")
    })?;
    Ok("round trip and dimension on [-50,50], p=3 schedule, n=-1 consistency".into())
}

fn capped_valuation(p: i64, cap: u32, mut x: i64) -> u32 {
    let mut v = 0;
    while v < cap && x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

fn lambda_valuations() -> Check {
    let mut cases = 0;
    for p in [3u64, 5] {
        for n in 1..=3u32 {
            let group = CyclicGroup::prime_power(p, n).unwrap();
            let top = p.pow(n) as i64;
            let lambdas: Vec<VirtualRep> = (0..top).map(|a| VirtualRep::lambda(group, a)).collect();
            for a in 1..top {
                for b in 1..top {
                    let diff = &lambdas[a as usize] - &lambdas[b as usize];
                    let expected = capped_valuation(p as i64, n, a) == capped_valuation(p as i64, n, b);
                    ensure(is_auto_equivalence(&diff) == expected, || {
                        format!("p={p} n={n} a={a} b={b}")
                    })?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} (a,b) pairs agree with the valuation test"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("sphere criterion table", sphere_table),
        ("rho periodicity", rho_periodicity),
        ("V_j shift sweep", vj_sweep),
        ("V_j dimension table", vj_dimensions),
        ("equivalence class count", class_counts),
        ("C_p lambda pattern", lambda_pattern),
        ("induced sphere connectivity", induced_bound),
        ("Mackey algebra", mackey_algebra),
        ("slice formulas", slice_formulas),
        ("lambda difference valuations", lambda_valuations),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
