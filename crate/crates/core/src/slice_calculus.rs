//! Decidable questions about the regular slice filtration.
//!
//! Everything here reduces to pointwise comparisons of orbit functions: the
//! connectivity function `nu_n(G/C_d) = ceil(n/d)` against fixed-point dimension
//! functions of (virtual) representations.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::arith::{ceil_div, checked_pow, gcd, require_odd_prime, valuation};
use crate::error::{Error, Result};
use crate::rep_theory::{CyclicGroup, OrbitFunction, Subgroup, VirtualRep};

/// Caveats attached to a computed answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Advisory {
    /// A slice index below zero: the connectivity characterization is only
    /// established for `n >= 0`.
    NegativeIndex,
}

impl Advisory {
    pub fn message(&self) -> &'static str {
        match self {
            Advisory::NegativeIndex => "n<0 outside proven range",
        }
    }
}

impl fmt::Display for Advisory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.message())
    }
}

impl Serialize for Advisory {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.message())
    }
}

fn advisories_for(indices: &[i64]) -> Vec<Advisory> {
    if indices.iter().any(|&n| n < 0) {
        vec![Advisory::NegativeIndex]
    } else {
        Vec::new()
    }
}

/// A value together with the advisories raised while computing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Advised<T> {
    pub value: T,
    #[serde(rename = "advisory")]
    pub advisories: Vec<Advisory>,
}

/// The slice connectivity function `G/C_d -> ceil(n/d)`.
pub fn nu(group: CyclicGroup, n: i64) -> Advised<OrbitFunction> {
    Advised {
        value: nu_function(group, n),
        advisories: advisories_for(&[n]),
    }
}

fn nu_function(group: CyclicGroup, n: i64) -> OrbitFunction {
    OrbitFunction::from_fn(group, |d| ceil_div(n, d as i64))
}

/// Answer to "is `S^V` in `tau_{>=n}`?".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    /// Least subgroup order `d` with `dim V^{C_d} < ceil(n/d)`.
    pub witness_divisor: Option<u64>,
    #[serde(rename = "advisory")]
    pub advisories: Vec<Advisory>,
}

/// Decides `S^V in tau_{>=n}` by comparing `dim V^{C_d}` with `ceil(n/d)` at every `d`.
pub fn sphere_in_tau(rep: &VirtualRep, n: i64) -> Membership {
    let dims = rep.dim_function();
    let bound = nu_function(rep.group(), n);
    let witness = dims
        .iter()
        .zip(bound.iter())
        .find(|((_, dim), (_, nu))| dim < nu)
        .map(|((d, _), _)| d);
    Membership {
        member: witness.is_none(),
        witness_divisor: witness,
        advisories: advisories_for(&[n]),
    }
}

/// What smashing with `S^V` is known to do from `tau_{>=n}` to `tau_{>=n+k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equivalence,
    /// `dim_V + nu_n >= nu_{n+k}` everywhere, strictly at `witness`.
    MapOnly { witness: u64 },
    /// `dim_V + nu_n < nu_{n+k}` at `witness`.
    NoneEstablished { witness: u64 },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Equivalence => "Equivalence",
            Verdict::MapOnly { .. } => "MapOnly",
            Verdict::NoneEstablished { .. } => "NoneEstablished",
        }
    }

    pub fn witness(&self) -> Option<u64> {
        match *self {
            Verdict::Equivalence => None,
            Verdict::MapOnly { witness } | Verdict::NoneEstablished { witness } => Some(witness),
        }
    }

    pub fn is_equivalence(&self) -> bool {
        matches!(self, Verdict::Equivalence)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmashVerdict {
    #[serde(serialize_with = "serialize_verdict_name")]
    pub verdict: Verdict,
    pub witness_divisor: Option<u64>,
    #[serde(rename = "advisory")]
    pub advisories: Vec<Advisory>,
}

fn serialize_verdict_name<S: serde::Serializer>(
    v: &Verdict,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(v.name())
}

/// Classifies `Sigma^V: tau_{>=n} -> tau_{>=n+k}` by comparing `dim_V + nu_n` with `nu_{n+k}`.
pub fn smash_verdict(rep: &VirtualRep, n: i64, k: i64) -> SmashVerdict {
    let group = rep.group();
    let lhs = &rep.dim_function() + &nu_function(group, n);
    let rhs = nu_function(group, n + k);

    let mut first_strict = None;
    let mut verdict = Verdict::Equivalence;
    for ((d, l), (_, r)) in lhs.iter().zip(rhs.iter()) {
        if l < r {
            verdict = Verdict::NoneEstablished { witness: d };
            break;
        }
        if l > r && first_strict.is_none() {
            first_strict = Some(d);
        }
    }
    if let (Verdict::Equivalence, Some(witness)) = (verdict, first_strict) {
        verdict = Verdict::MapOnly { witness };
    }
    SmashVerdict {
        verdict,
        witness_divisor: verdict.witness(),
        advisories: advisories_for(&[n, n + k]),
    }
}

/// True iff `V` has vanishing fixed-point dimension at every subgroup, so that
/// `Sigma^V` preserves every `tau_{>=n}`.
pub fn is_auto_equivalence(rep: &VirtualRep) -> bool {
    rep.dim_function().is_zero()
}

/// `min(v_p(a), n) == min(v_p(b), n)`, the valuation test for `lambda(a) - lambda(b)`
/// over `C_{p^n}`; a multiple of `p^n` counts as valuation `n`.
pub fn same_capped_valuation(p: u64, n: u32, a: i64, b: i64) -> bool {
    let capped = |x: i64| match x.unsigned_abs() {
        0 => n,
        x => valuation(p, x).min(n),
    };
    capped(a) == capped(b)
}

/// Connectivity of the fixed points of `G_+ smash_H S^{k rho_H}`.
///
/// For cyclic `G` all double cosets give the same summand, whose `C_d`-fixed
/// points are `k [H : H cap C_d] = k |H| / gcd(|H|, d)`-connected.
pub fn induced_sphere_connectivity(
    group: CyclicGroup,
    h: &Subgroup,
    k: i64,
) -> Result<OrbitFunction> {
    if h.group() != group {
        return Err(Error::NotSubgroup {
            order: h.order(),
            group: group.order(),
        });
    }
    if k < 0 {
        return Err(Error::OutOfRange(format!("multiplicity k={k} must be >= 0")));
    }
    let order = h.order();
    Ok(OrbitFunction::from_fn(group, |d| {
        k * (order / gcd(order, d)) as i64
    }))
}

/// The congruence hypothesis for the `V_j` equivalence:
/// `n mod p^{j+1}` lies in `[1, p^{j+1} - 2p^j]`.
pub fn vj_condition(p: u64, k: u32, j: u32, n: i64) -> Result<bool> {
    check_vj_params(p, k, j)?;
    if n < 0 {
        return Err(Error::OutOfRange(format!("n={n} must be >= 0")));
    }
    Ok(vj_condition_unchecked(p, j, n))
}

fn check_vj_params(p: u64, k: u32, j: u32) -> Result<()> {
    require_odd_prime(p)?;
    if k == 0 || j >= k {
        return Err(Error::OutOfRange(format!(
            "need k >= 1 and 0 <= j <= k-1, got k={k}, j={j}"
        )));
    }
    checked_pow(p, k)?;
    Ok(())
}

fn vj_condition_unchecked(p: u64, j: u32, n: i64) -> bool {
    let period = p.pow(j + 1) as i64;
    let upper = period - 2 * p.pow(j) as i64;
    let r = n.rem_euclid(period);
    (1..=upper).contains(&r)
}

/// Disjoint-set forest over `0..n` with path halving and union by size.
#[derive(Clone, Debug)]
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

/// The partition of residues mod `p^k` generated by the known slice equivalences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassPartition {
    pub p: u64,
    pub k: u32,
    /// Blocks of residues, each sorted, ordered by least element.
    pub blocks: Vec<Vec<u64>>,
    /// The numbers `sum a_i p^i` with `a_0 in {1,2}` and `a_i in {0,1}`, ascending.
    pub representatives: Vec<u64>,
    /// Block index of each representative.
    pub representative_blocks: Vec<usize>,
}

impl ClassPartition {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Block containing residue `n mod p^k`.
    pub fn block_of(&self, n: i64) -> usize {
        let modulus = self.p.pow(self.k) as i64;
        let r = n.rem_euclid(modulus) as u64;
        self.blocks
            .iter()
            .position(|b| b.binary_search(&r).is_ok())
            .expect("blocks cover every residue")
    }

    /// `2^k` blocks, each containing exactly one representative.
    pub fn matches_expected_count(&self) -> bool {
        let expected = 1usize << self.k;
        let mut seen = self.representative_blocks.clone();
        seen.sort_unstable();
        seen.dedup();
        self.blocks.len() == expected
            && self.representatives.len() == expected
            && seen.len() == expected
    }
}

/// Default scan length for [`equivalence_classes`].
pub fn default_horizon(p: u64, k: u32) -> Result<u64> {
    Ok(4 * checked_pow(p, k)?)
}

/// Residues mod `p^k` glued by the regular-representation shift `n ~ n + p^k`
/// and by the `V_j` shifts `n ~ n + 2p^j` wherever the congruence hypothesis holds.
pub fn equivalence_classes(p: u64, k: u32, horizon: u64) -> Result<ClassPartition> {
    require_odd_prime(p)?;
    if k == 0 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    let modulus = checked_pow(p, k)?;
    if horizon == 0 || horizon % modulus != 0 {
        return Err(Error::OutOfRange(format!(
            "horizon {horizon} is not a positive multiple of {modulus}"
        )));
    }
    let modulus_len = usize::try_from(modulus)
        .map_err(|_| Error::OutOfRange(format!("{modulus} residues do not fit in memory")))?;

    let mut uf = UnionFind::new(modulus_len);
    for j in 0..k {
        let step = 2 * p.pow(j);
        for n in 0..horizon {
            if vj_condition_unchecked(p, j, n as i64) {
                uf.union((n % modulus) as usize, ((n + step) % modulus) as usize);
            }
        }
    }

    let mut grouped: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for r in 0..modulus_len {
        grouped.entry(uf.find(r)).or_default().push(r as u64);
    }
    let mut blocks: Vec<Vec<u64>> = grouped.into_values().collect();
    blocks.sort_by_key(|b| b[0]);

    let mut representatives = Vec::with_capacity(1 << k);
    for mask in 0u64..(1 << k) {
        let a0 = 1 + (mask & 1);
        let mut n = a0;
        for i in 1..k {
            if mask >> i & 1 == 1 {
                n += p.pow(i);
            }
        }
        representatives.push(n);
    }
    representatives.sort_unstable();

    let mut partition = ClassPartition {
        p,
        k,
        blocks,
        representatives,
        representative_blocks: Vec::new(),
    };
    partition.representative_blocks = partition
        .representatives
        .iter()
        .map(|&n| partition.block_of(n as i64))
        .collect();
    Ok(partition)
}

/// One row of the `C_p` lambda-suspension table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternRow {
    pub n: i64,
    #[serde(flatten)]
    pub verdict: SmashVerdict,
}

/// `smash_verdict(lambda, n, 2)` over `C_p` for `n in [1, p-1]`.
pub fn cp_pattern(p: u64) -> Result<Vec<PatternRow>> {
    let group = CyclicGroup::prime_power(p, 1)?;
    let lambda = VirtualRep::lambda(group, 1);
    Ok((1..p as i64)
        .map(|n| PatternRow {
            n,
            verdict: smash_verdict(&lambda, n, 2),
        })
        .collect())
}
