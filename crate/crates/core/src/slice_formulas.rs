//! The complete table of `C_p` slices, `p` odd.
//!
//! Every slice index `n` is written uniquely as `n = m p + r` with `0 <= r < p`:
//!
//! | `r`          | slice `P^n_n E`                                              |
//! |--------------|--------------------------------------------------------------|
//! | `0`          | `Sigma^{m rho} H pi_{m rho} E`                               |
//! | `2k + 1`     | `Sigma^{m rho + k lambda + 1} H P^0 pi_{m rho + k lambda + 1} E` |
//! | `2k + 2`     | `Sigma^{m rho + (k+1) lambda} H (EC_p (x) pi_{m rho + (k+1) lambda} E)` |
//!
//! with `0 <= k <= (p-3)/2`. Here `lambda` is `lambda(1)`; any `lambda(j)` with
//! `p` not dividing `j` gives the same answer.

use std::fmt;

use serde::Serialize;

use crate::arith::require_odd_prime;
use crate::error::Result;
use crate::mackey::CpMackey;
use crate::rep_theory::{CyclicGroup, VirtualRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SliceCase {
    RhoMultiple,
    Odd(i64),
    Even(i64),
}

/// `n = m p + r` split into the regular-representation multiple and the residue case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SliceIndex {
    pub p: u64,
    pub n: i64,
    pub m: i64,
    pub case: SliceCase,
}

impl SliceIndex {
    /// Recomputes `n` from `(m, case)`.
    pub fn reconstruct(&self) -> i64 {
        let base = self.m * self.p as i64;
        match self.case {
            SliceCase::RhoMultiple => base,
            SliceCase::Odd(k) => base + 2 * k + 1,
            SliceCase::Even(k) => base + 2 * k + 2,
        }
    }
}

pub fn decompose(p: u64, n: i64) -> Result<SliceIndex> {
    require_odd_prime(p)?;
    let pi = p as i64;
    let m = n.div_euclid(pi);
    let r = n.rem_euclid(pi);
    let case = match r {
        0 => SliceCase::RhoMultiple,
        r if r % 2 == 1 => SliceCase::Odd((r - 1) / 2),
        r => SliceCase::Even((r - 2) / 2),
    };
    Ok(SliceIndex { p, n, m, case })
}

/// The Mackey-functor operation applied to the homotopy Mackey functor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SliceFunctor {
    Identity,
    PZero,
    ETensor,
}

impl SliceFunctor {
    pub fn code(&self) -> &'static str {
        match self {
            SliceFunctor::Identity => "Id",
            SliceFunctor::PZero => "P0",
            SliceFunctor::ETensor => "ETensor",
        }
    }
}

impl Serialize for SliceFunctor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

/// A slice as `Sigma^{degree} H F(pi_{degree})` with
/// `degree = rho_mult * rho + lambda_mult * lambda + int_shift`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SliceDescription {
    pub p: u64,
    pub n: i64,
    pub rho_mult: i64,
    pub lambda_mult: i64,
    pub int_shift: i64,
    pub functor: SliceFunctor,
    pub index: SliceIndex,
}

/// Formats `a rho + b lambda + c` compactly, e.g. `-rho+2lambda`, `rho+1`, `0`.
pub fn format_degree(rho: i64, lambda: i64, shift: i64) -> String {
    let mut out = String::new();
    for (c, name) in [(rho, "rho"), (lambda, "lambda"), (shift, "")] {
        if c == 0 {
            continue;
        }
        if c < 0 {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mag = c.unsigned_abs();
        if name.is_empty() || mag != 1 {
            out.push_str(&mag.to_string());
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl SliceDescription {
    /// The formal degree of the homotopy Mackey functor, equal to the suspension degree.
    pub fn degree_label(&self) -> String {
        format_degree(self.rho_mult, self.lambda_mult, self.int_shift)
    }

    /// `rho_mult * rho + lambda_mult * lambda(1) + int_shift` as a virtual representation.
    pub fn degree_rep(&self) -> VirtualRep {
        let group = CyclicGroup::new(self.p).expect("p is positive");
        let rho = VirtualRep::regular(group).scale(self.rho_mult);
        let lambda = VirtualRep::lambda(group, 1).scale(self.lambda_mult);
        let shift = VirtualRep::trivial(group, self.int_shift);
        &(&rho + &lambda) + &shift
    }

    /// `(dim at C_1, dim at C_p)` of the suspension degree.
    pub fn underlying_dimensions(&self) -> (i64, i64) {
        let f = self.degree_rep().dim_function();
        (f.get(1).unwrap(), f.get(self.p).unwrap())
    }

    /// Human-readable form, e.g. `Sigma^{rho+1} H P0 pi_{rho+1}`.
    pub fn render(&self) -> String {
        let d = self.degree_label();
        match self.functor {
            SliceFunctor::Identity => format!("Sigma^{{{d}}} H pi_{{{d}}}"),
            SliceFunctor::PZero => format!("Sigma^{{{d}}} H P0 pi_{{{d}}}"),
            SliceFunctor::ETensor => format!("Sigma^{{{d}}} H(EC_{} ⊗ pi_{{{d}}})", self.p),
        }
    }

    /// The slice index `n0 in {0, 1, 2}` whose slice this one is a suspension of,
    /// with the `lambda` multiple linking them (the `rho` multiple is `rho_mult`).
    pub fn link(&self) -> (i64, i64) {
        match self.index.case {
            SliceCase::RhoMultiple => (0, 0),
            SliceCase::Odd(k) => (1, k),
            SliceCase::Even(k) => (2, k),
        }
    }
}

impl fmt::Display for SliceDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Schedule row as written to JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScheduleRow {
    pub n: i64,
    pub rho: i64,
    pub lambda: i64,
    pub shift: i64,
    pub functor: SliceFunctor,
    pub degree: String,
}

impl From<&SliceDescription> for ScheduleRow {
    fn from(d: &SliceDescription) -> Self {
        ScheduleRow {
            n: d.n,
            rho: d.rho_mult,
            lambda: d.lambda_mult,
            shift: d.int_shift,
            functor: d.functor,
            degree: d.degree_label(),
        }
    }
}

pub fn slice_description(p: u64, n: i64) -> Result<SliceDescription> {
    let index = decompose(p, n)?;
    let (lambda_mult, int_shift, functor) = match index.case {
        SliceCase::RhoMultiple => (0, 0, SliceFunctor::Identity),
        SliceCase::Odd(k) => (k, 1, SliceFunctor::PZero),
        SliceCase::Even(k) => (k + 1, 0, SliceFunctor::ETensor),
    };
    Ok(SliceDescription {
        p,
        n,
        rho_mult: index.m,
        lambda_mult,
        int_shift,
        functor,
        index,
    })
}

/// Applies the slice's functor to `pi`, read as the homotopy Mackey functor in the slice's degree.
pub fn apply_slice_functor(desc: &SliceDescription, pi: &CpMackey) -> Result<CpMackey> {
    pi.ensure_valid()?;
    match desc.functor {
        SliceFunctor::Identity => Ok(pi.clone()),
        SliceFunctor::PZero => pi.p_zero(),
        SliceFunctor::ETensor => pi.e_tensor(),
    }
}

/// One description per `n` in `n_lo..=n_hi` (empty when `n_lo > n_hi`).
pub fn slice_schedule(p: u64, n_lo: i64, n_hi: i64) -> Result<Vec<SliceDescription>> {
    require_odd_prime(p)?;
    (n_lo..=n_hi).map(|n| slice_description(p, n)).collect()
}
