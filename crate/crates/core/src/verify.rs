//! Exhaustive sweeps over the decidable statements, each returning a report.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{ceil_div, checked_pow, require_odd_prime};
use crate::error::{Error, Result};
use crate::rep_theory::{CyclicGroup, VirtualRep};
use crate::slice_calculus::{
    cp_pattern, default_horizon, equivalence_classes, induced_sphere_connectivity, nu,
    smash_verdict, vj_condition,
};

/// The available sweeps, named on the command line as `thm43`, `cor44`, `thm45`, `prop210`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    /// `Sigma^{V_j}` is an equivalence `tau_{>=n} -> tau_{>=n+2p^j}` under the congruence hypothesis.
    VjShift,
    /// `2^k` equivalence classes of slice indices for `C_{p^k}`.
    ClassCount,
    /// The `lambda`-suspension pattern for `C_p`.
    LambdaPattern,
    /// Induced regular-representation spheres are slice-connective.
    InducedConnectivity,
    All,
}

impl Suite {
    pub fn code(&self) -> &'static str {
        match self {
            Suite::VjShift => "thm43",
            Suite::ClassCount => "cor44",
            Suite::LambdaPattern => "thm45",
            Suite::InducedConnectivity => "prop210",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "thm43" => Suite::VjShift,
            "cor44" => Suite::ClassCount,
            "thm45" => Suite::LambdaPattern,
            "prop210" => Suite::InducedConnectivity,
            "all" => Suite::All,
            _ => {
                return Err(Error::Parse(format!(
                    "unknown suite {s:?}; expected thm43, cor44, thm45, prop210 or all"
                )))
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Parameters shared by all sweeps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepParams {
    pub p: u64,
    pub k: u32,
    /// Slice indices for the `V_j` sweep; defaults to `[0, 4p^k]`.
    pub range: Option<RangeInclusive<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: usize,
    pub passed: bool,
    pub summary: String,
    /// First few failing cases, if any.
    pub failures: Vec<String>,
}

const MAX_LISTED_FAILURES: usize = 10;

struct Tally {
    checked: usize,
    failures: Vec<String>,
    failed: usize,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failures: Vec::new(),
            failed: 0,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    fn finish(self, suite: Suite, summary: String) -> SuiteReport {
        SuiteReport {
            suite: suite.code().to_string(),
            checked: self.checked,
            passed: self.failed == 0,
            summary,
            failures: self.failures,
        }
    }
}

/// The ceiling identity behind the `V_j` equivalence, computed without
/// representation data: `dim V_j^{C_{p^d}}` is `2p^{j-d}` for `d <= j` and `0`
/// otherwise, and for `d > j` writing `n = m + r` with `p^{j+1} | m` shows the
/// shift by `2p^j` never crosses a multiple of `p^d`.
pub fn vj_ceiling_identity(p: u64, k: u32, j: u32, n: i64) -> bool {
    let step = 2 * p.pow(j) as i64;
    (0..=k).all(|d| {
        let pd = p.pow(d) as i64;
        if d <= j {
            ceil_div(n, pd) + step / pd == ceil_div(n + step, pd)
        } else {
            let block = p.pow(j + 1) as i64;
            let r = n.rem_euclid(block);
            let m = n - r;
            ceil_div(m + r, pd) == ceil_div(m + r + step, pd)
        }
    })
}

fn vj_shift(params: &SweepParams) -> Result<SuiteReport> {
    let SweepParams { p, k, .. } = *params;
    require_odd_prime(p)?;
    let top = checked_pow(p, k)? as i64 * 4;
    let range = params.range.clone().unwrap_or(0..=top);
    if *range.start() < 0 {
        return Err(Error::OutOfRange(format!(
            "range must start at n >= 0, got {}",
            range.start()
        )));
    }
    let mut tally = Tally::new();
    for j in 0..k {
        let rep = VirtualRep::v_j(p, k, j)?;
        let shift = 2 * p.pow(j) as i64;
        for n in range.clone() {
            if !vj_condition(p, k, j, n)? {
                continue;
            }
            let verdict = smash_verdict(&rep, n, shift).verdict;
            let ok = verdict.is_equivalence() && vj_ceiling_identity(p, k, j, n);
            tally.record(ok, || format!("j={j} n={n}: {}", verdict.name()));
        }
    }
    let summary = if tally.failed == 0 {
        format!("checked {} (j,n) cases: all Equivalence", tally.checked)
    } else {
        format!(
            "checked {} (j,n) cases: {} not Equivalence",
            tally.checked, tally.failed
        )
    };
    Ok(tally.finish(Suite::VjShift, summary))
}

fn class_count(params: &SweepParams) -> Result<SuiteReport> {
    let SweepParams { p, k, .. } = *params;
    let horizon = default_horizon(p, k)?;
    let partition = equivalence_classes(p, k, horizon)?;
    let longer = equivalence_classes(p, k, 2 * horizon)?;
    let expected = 1usize << k;
    let mut tally = Tally::new();
    tally.record(partition.matches_expected_count(), || {
        format!(
            "{} blocks, representatives in {:?}",
            partition.block_count(),
            partition.representative_blocks
        )
    });
    tally.record(partition.blocks == longer.blocks, || {
        "partition changes when the horizon is doubled".to_string()
    });
    let summary = if tally.failed == 0 {
        format!("{} classes = 2^{k}", partition.block_count())
    } else {
        format!("{} classes, expected 2^{k} = {expected}", partition.block_count())
    };
    Ok(tally.finish(Suite::ClassCount, summary))
}

fn lambda_pattern(params: &SweepParams) -> Result<SuiteReport> {
    let p = params.p;
    let rows = cp_pattern(p)?;
    let pi = p as i64;
    let mut tally = Tally::new();
    for row in &rows {
        let n = row.n;
        let expected = if n % 2 == 1 { n <= pi - 2 } else { n <= pi - 3 };
        let got = row.verdict.verdict.is_equivalence();
        tally.record(got == expected, || {
            format!("n={n}: {} (expected equivalence: {expected})", row.verdict.verdict.name())
        });
    }
    let summary = format!(
        "checked {} indices n in [1, {}]: {}",
        tally.checked,
        pi - 1,
        if tally.failed == 0 { "pattern holds" } else { "pattern violated" }
    );
    Ok(tally.finish(Suite::LambdaPattern, summary))
}

/// Groups `C_m` for `m <= max_order`, every subgroup `H`, multiplicities
/// `k <= max_mult` and every `n in [0, k|H|]`.
pub fn induced_connectivity_sweep(max_order: u64, max_mult: i64) -> Result<SuiteReport> {
    let mut tally = Tally::new();
    for m in 1..=max_order {
        let group = CyclicGroup::new(m)?;
        for h in group.subgroups() {
            for k in 0..=max_mult {
                let conn = induced_sphere_connectivity(group, &h, k)?;
                for n in 0..=k * h.order() as i64 {
                    let bound = nu(group, n).value;
                    let ok = conn.iter().zip(bound.iter()).all(|((_, c), (_, b))| c >= b);
                    tally.record(ok, || format!("m={m} |H|={} k={k} n={n}", h.order()));
                }
            }
        }
    }
    let summary = format!(
        "checked {} (m,H,k,n) cases: {}",
        tally.checked,
        if tally.failed == 0 { "all connective" } else { "bound violated" }
    );
    Ok(tally.finish(Suite::InducedConnectivity, summary))
}

/// Multiplicity bound used by the `prop210` suite.
pub const CONNECTIVITY_MAX_MULT: i64 = 6;

fn induced_connectivity(params: &SweepParams) -> Result<SuiteReport> {
    if params.p < 2 {
        return Err(Error::OutOfRange(format!("p={} must be at least 2", params.p)));
    }
    let max_order = checked_pow(params.p, params.k)?;
    if max_order > 1024 {
        return Err(Error::OutOfRange(format!(
            "p^k = {max_order} exceeds the sweep limit 1024"
        )));
    }
    induced_connectivity_sweep(max_order, CONNECTIVITY_MAX_MULT)
}

/// Runs one suite, or every suite in order for [`Suite::All`].
pub fn run(suite: Suite, params: &SweepParams) -> Result<Vec<SuiteReport>> {
    if params.k == 0 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    match suite {
        Suite::VjShift => Ok(vec![vj_shift(params)?]),
        Suite::ClassCount => Ok(vec![class_count(params)?]),
        Suite::LambdaPattern => Ok(vec![lambda_pattern(params)?]),
        Suite::InducedConnectivity => Ok(vec![induced_connectivity(params)?]),
        Suite::All => {
            let mut out = Vec::new();
            for s in [
                Suite::VjShift,
                Suite::ClassCount,
                Suite::LambdaPattern,
                Suite::InducedConnectivity,
            ] {
                out.extend(run(s, params)?);
            }
            Ok(out)
        }
    }
}
