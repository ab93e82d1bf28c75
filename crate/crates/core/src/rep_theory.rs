//! Cyclic groups, their subgroup lattice and virtual real representations.
//!
//! A real representation of `C_m` is determined by its multiplicities on the
//! irreducibles: the trivial line, the sign line (only for even `m`) and the
//! rotation planes `lambda(k)` with `1 <= k <= (m-1)/2`. Everything the slice
//! calculus needs is a closed-form function of those multiplicities, so no
//! matrices are stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::arith::{checked_pow, divisors, require_odd_prime};
use crate::error::{Error, Result};

/// The cyclic group `C_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicGroup {
    order: u64,
}

/// Serialized as the bare order `m`.
impl Serialize for CyclicGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.order)
    }
}

impl CyclicGroup {
    pub fn new(order: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::OutOfRange("group order must be positive".into()));
        }
        Ok(CyclicGroup { order })
    }

    /// `C_{p^k}` for an odd prime `p` and `k >= 1`.
    pub fn prime_power(p: u64, k: u32) -> Result<Self> {
        require_odd_prime(p)?;
        if k == 0 {
            return Err(Error::OutOfRange("exponent k must be at least 1".into()));
        }
        CyclicGroup::new(checked_pow(p, k)?)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Orders of all subgroups, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        divisors(self.order)
    }

    /// One subgroup per divisor of the order, ascending by order.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        self.divisors()
            .into_iter()
            .map(|order| Subgroup { group: *self, order })
            .collect()
    }

    /// The unique subgroup of order `d`.
    pub fn subgroup(&self, d: u64) -> Result<Subgroup> {
        if d == 0 || self.order % d != 0 {
            return Err(Error::NotSubgroup {
                order: d,
                group: self.order,
            });
        }
        Ok(Subgroup {
            group: *self,
            order: d,
        })
    }
}

impl fmt::Display for CyclicGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.order)
    }
}

/// The subgroup `C_d` of `C_m`, generated by `gamma^{m/d}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    group: CyclicGroup,
    order: u64,
}

impl Subgroup {
    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn index(&self) -> u64 {
        self.group.order / self.order
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.order)
    }
}

/// An integer-valued function on the orbits `G/C_d`, keyed by `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitFunction {
    #[serde(rename = "m")]
    group: CyclicGroup,
    values: BTreeMap<u64, i64>,
}

impl OrbitFunction {
    /// Tabulates `f(d)` over every divisor `d` of the group order.
    pub fn from_fn(group: CyclicGroup, mut f: impl FnMut(u64) -> i64) -> Self {
        let values = group.divisors().into_iter().map(|d| (d, f(d))).collect();
        OrbitFunction { group, values }
    }

    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    /// Value at the orbit `G/C_d`, if `d` divides the group order.
    pub fn get(&self, d: u64) -> Option<i64> {
        self.values.get(&d).copied()
    }

    /// `(d, value)` pairs in ascending order of `d`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.values.iter().map(|(&d, &v)| (d, v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|&v| v == 0)
    }

    fn zip_with(&self, other: &OrbitFunction, op: impl Fn(i64, i64) -> i64) -> OrbitFunction {
        assert_eq!(
            self.group, other.group,
            "orbit functions live on different groups"
        );
        let values = self
            .values
            .iter()
            .map(|(&d, &v)| (d, op(v, other.values[&d])))
            .collect();
        OrbitFunction {
            group: self.group,
            values,
        }
    }
}

impl Add for &OrbitFunction {
    type Output = OrbitFunction;

    fn add(self, rhs: &OrbitFunction) -> OrbitFunction {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &OrbitFunction {
    type Output = OrbitFunction;

    fn sub(self, rhs: &OrbitFunction) -> OrbitFunction {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl fmt::Display for OrbitFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, v) in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "C{d}:{v}")?;
        }
        Ok(())
    }
}

/// One `lambda(k)` term of a raw representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaTerm {
    pub k: i64,
    pub coeff: i64,
}

/// Representation data as written by a user: any integer `k` is allowed in `lambda(k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawRep {
    pub m: u64,
    #[serde(default)]
    pub trivial: i64,
    #[serde(default)]
    pub sign: i64,
    #[serde(default)]
    pub lambda: Vec<LambdaTerm>,
}

impl RawRep {
    pub fn canonicalize(&self) -> Result<VirtualRep> {
        VirtualRep::try_from(self.clone())
    }
}

/// A virtual real representation of `C_m` in canonical form.
///
/// Stored rotation indices lie in `1..=(m-1)/2` and carry nonzero coefficients;
/// the sign coefficient is zero whenever `m` is odd.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRep", into = "RawRep")]
pub struct VirtualRep {
    group: CyclicGroup,
    trivial: i64,
    sign: i64,
    lambda: BTreeMap<u64, i64>,
}

enum Irreducible {
    Trivial,
    Sign,
    Lambda(u64),
}

fn classify_lambda(m: u64, k: i64) -> (Irreducible, i64) {
    let r = k.rem_euclid(m as i64) as u64;
    if r == 0 {
        (Irreducible::Trivial, 2)
    } else if 2 * r == m {
        (Irreducible::Sign, 2)
    } else {
        (Irreducible::Lambda(r.min(m - r)), 1)
    }
}

impl TryFrom<RawRep> for VirtualRep {
    type Error = Error;

    fn try_from(raw: RawRep) -> Result<Self> {
        let group = CyclicGroup::new(raw.m)?;
        let mut rep = VirtualRep::zero(group);
        rep.trivial = raw.trivial;
        rep.sign = raw.sign;
        for term in &raw.lambda {
            rep.add_lambda_raw(term.k, term.coeff);
        }
        if raw.m % 2 == 1 && rep.sign != 0 {
            return Err(Error::InvalidRep(format!(
                "sign coefficient {} is nonzero but C_{} has odd order",
                rep.sign, raw.m
            )));
        }
        Ok(rep)
    }
}

impl From<VirtualRep> for RawRep {
    fn from(rep: VirtualRep) -> RawRep {
        RawRep {
            m: rep.group.order,
            trivial: rep.trivial,
            sign: rep.sign,
            lambda: rep
                .lambda
                .iter()
                .map(|(&k, &coeff)| LambdaTerm {
                    k: k as i64,
                    coeff,
                })
                .collect(),
        }
    }
}

impl VirtualRep {
    pub fn zero(group: CyclicGroup) -> Self {
        VirtualRep {
            group,
            trivial: 0,
            sign: 0,
            lambda: BTreeMap::new(),
        }
    }

    pub fn trivial(group: CyclicGroup, coeff: i64) -> Self {
        VirtualRep {
            trivial: coeff,
            ..VirtualRep::zero(group)
        }
    }

    /// The sign line; only exists for even order.
    pub fn sign(group: CyclicGroup) -> Result<Self> {
        if group.order % 2 == 1 {
            return Err(Error::InvalidRep(format!(
                "{group} has odd order and no sign representation"
            )));
        }
        Ok(VirtualRep {
            sign: 1,
            ..VirtualRep::zero(group)
        })
    }

    /// `lambda(k)` for any integer `k`, canonicalized.
    pub fn lambda(group: CyclicGroup, k: i64) -> Self {
        let mut rep = VirtualRep::zero(group);
        rep.add_lambda_raw(k, 1);
        rep
    }

    fn add_lambda_raw(&mut self, k: i64, coeff: i64) {
        match classify_lambda(self.group.order, k) {
            (Irreducible::Trivial, mult) => self.trivial += mult * coeff,
            (Irreducible::Sign, mult) => self.sign += mult * coeff,
            (Irreducible::Lambda(idx), _) => {
                let entry = self.lambda.entry(idx).or_insert(0);
                *entry += coeff;
                if *entry == 0 {
                    self.lambda.remove(&idx);
                }
            }
        }
    }

    /// The regular representation: trivial, sign if `m` is even, and every `lambda(k)` once.
    pub fn regular(group: CyclicGroup) -> Self {
        let m = group.order;
        let mut rep = VirtualRep::trivial(group, 1);
        if m % 2 == 0 {
            rep.sign = 1;
        }
        for k in 1..=(m - 1) / 2 {
            rep.lambda.insert(k, 1);
        }
        rep
    }

    /// The regular representation minus one trivial summand.
    pub fn reduced_regular(group: CyclicGroup) -> Self {
        let mut rep = VirtualRep::regular(group);
        rep.trivial -= 1;
        rep
    }

    /// `V_j = sum_{i=0}^{j} (p^i - floor(p^{i-1})) lambda(p^{j-i})` over `C_{p^k}`.
    pub fn v_j(p: u64, k: u32, j: u32) -> Result<Self> {
        let group = CyclicGroup::prime_power(p, k)?;
        if j >= k {
            return Err(Error::OutOfRange(format!(
                "V_j needs 0 <= j <= k-1, got j={j}, k={k}"
            )));
        }
        let mut rep = VirtualRep::zero(group);
        for i in 0..=j {
            let coeff = if i == 0 {
                1
            } else {
                p.pow(i) - p.pow(i - 1)
            };
            rep.add_lambda_raw(p.pow(j - i) as i64, coeff as i64);
        }
        Ok(rep)
    }

    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn trivial_coeff(&self) -> i64 {
        self.trivial
    }

    pub fn sign_coeff(&self) -> i64 {
        self.sign
    }

    /// Coefficient of `lambda(k)` after canonicalizing `k`.
    pub fn lambda_coeff(&self, k: u64) -> i64 {
        self.lambda.get(&k).copied().unwrap_or(0)
    }

    /// `(k, coeff)` pairs with canonical `k`, ascending.
    pub fn lambda_terms(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.lambda.iter().map(|(&k, &c)| (k, c))
    }

    pub fn dimension(&self) -> i64 {
        self.trivial + self.sign + 2 * self.lambda.values().sum::<i64>()
    }

    /// True iff every coefficient is nonnegative.
    pub fn is_actual(&self) -> bool {
        self.trivial >= 0 && self.sign >= 0 && self.lambda.values().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.trivial == 0 && self.sign == 0 && self.lambda.is_empty()
    }

    /// `dim V^{C_d}`; `d` must divide the group order.
    pub(crate) fn dim_fixed_at(&self, d: u64) -> i64 {
        let m = self.group.order;
        debug_assert_eq!(m % d, 0);
        // gamma^{m/d} acts on the sign line by (-1)^{m/d} and rotates lambda(k) by 2 pi k / d.
        let sign = if (m / d) % 2 == 0 { self.sign } else { 0 };
        let rot: i64 = self
            .lambda
            .iter()
            .filter(|(&k, _)| k % d == 0)
            .map(|(_, &c)| 2 * c)
            .sum();
        self.trivial + sign + rot
    }

    pub fn dim_fixed(&self, h: &Subgroup) -> Result<i64> {
        if h.group != self.group {
            return Err(Error::NotSubgroup {
                order: h.order,
                group: self.group.order,
            });
        }
        Ok(self.dim_fixed_at(h.order))
    }

    /// The orbit function `G/C_d -> dim V^{C_d}`.
    pub fn dim_function(&self) -> OrbitFunction {
        OrbitFunction::from_fn(self.group, |d| self.dim_fixed_at(d))
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return VirtualRep::zero(self.group);
        }
        VirtualRep {
            group: self.group,
            trivial: c * self.trivial,
            sign: c * self.sign,
            lambda: self.lambda.iter().map(|(&k, &v)| (k, c * v)).collect(),
        }
    }

    pub fn try_add(&self, other: &VirtualRep) -> Result<VirtualRep> {
        if self.group != other.group {
            return Err(Error::InvalidRep(format!(
                "cannot add representations of {} and {}",
                self.group, other.group
            )));
        }
        let mut out = self.clone();
        out.trivial += other.trivial;
        out.sign += other.sign;
        for (&k, &c) in &other.lambda {
            let entry = out.lambda.entry(k).or_insert(0);
            *entry += c;
            if *entry == 0 {
                out.lambda.remove(&k);
            }
        }
        Ok(out)
    }
}

/// Panics if the summands live on different groups; see [`VirtualRep::try_add`].
impl Add for &VirtualRep {
    type Output = VirtualRep;

    fn add(self, rhs: &VirtualRep) -> VirtualRep {
        self.try_add(rhs).expect("representations of the same group")
    }
}

impl Sub for &VirtualRep {
    type Output = VirtualRep;

    fn sub(self, rhs: &VirtualRep) -> VirtualRep {
        self + &rhs.scale(-1)
    }
}

impl Neg for &VirtualRep {
    type Output = VirtualRep;

    fn neg(self) -> VirtualRep {
        self.scale(-1)
    }
}

impl fmt::Display for VirtualRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(i64, String)> = Vec::new();
        if self.trivial != 0 {
            terms.push((self.trivial, "1".into()));
        }
        if self.sign != 0 {
            terms.push((self.sign, "sign".into()));
        }
        for (&k, &c) in &self.lambda {
            terms.push((c, format!("lambda({k})")));
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, name)) in terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            match (i, *c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if name == "1" {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{mag}*{name}")?;
            }
        }
        Ok(())
    }
}
