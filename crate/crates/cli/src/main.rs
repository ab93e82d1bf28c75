//! `slicecalc`: command-line front end for the slice calculator.
//!
//! Exit codes: 0 computed, 1 definite "no" (or failed verification),
//! 2 invalid input, 3 internal invariant violation.

use std::fmt::Write as _;
use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use slicecalc::mackey::CpMackey;
use slicecalc::rep_expr::parse_rep;
use slicecalc::rep_theory::{CyclicGroup, OrbitFunction, RawRep, VirtualRep};
use slicecalc::slice_calculus::{
    default_horizon, equivalence_classes, nu, smash_verdict, sphere_in_tau, vj_condition,
};
use slicecalc::slice_formulas::{
    apply_slice_functor, slice_description, slice_schedule, ScheduleRow, SliceDescription,
};
use slicecalc::verify::{self, Suite, SweepParams};
use slicecalc::Error;

#[derive(Parser, Debug)]
#[command(name = "slicecalc", version, about = "Exact slice-filtration calculator for cyclic groups")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing on success; rely on the exit code.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Slice connectivity function nu_n(G/C_d) = ceil(n/d).
    Nu {
        #[arg(long)]
        m: u64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Is S^V in tau_{>=n}? Exit 1 when it is not.
    Sphere {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// What smashing with S^V does from tau_{>=n} to tau_{>=n+shift}.
    Smash {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        shift: i64,
    },
    /// Equivalence classes of slice indices for C_{p^k}.
    Classes {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        /// Number of indices scanned; a multiple of p^k (default 4p^k).
        #[arg(long)]
        horizon: Option<u64>,
    },
    /// The representation V_j of C_{p^k}; with --n, tests the congruence hypothesis.
    Vj {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        n: Option<i64>,
    },
    /// The C_p slice in degree n, or a schedule up to --to.
    Slice {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Last index of a schedule starting at --n.
        #[arg(long, allow_hyphen_values = true)]
        to: Option<i64>,
        /// Mackey functor JSON to which the slice's functor is applied.
        #[arg(long)]
        mackey: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Operations on C_p Mackey functors.
    Mackey {
        #[arg(long, value_enum)]
        op: MackeyOp,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Prime for the built-in functors.
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive sweeps; exit 1 if any case fails.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        /// Index range LO..HI for the V_j sweep.
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        range: Option<RangeInclusive<i64>>,
    },
}

#[derive(clap::Args, Debug)]
struct RepArgs {
    /// Group order; may be omitted when the representation determines it.
    #[arg(long)]
    m: Option<u64>,
    /// Expression such as "2*lambda(1) - rho + 1".
    #[arg(long, conflicts_with = "rep_file", required_unless_present = "rep_file")]
    rep: Option<String>,
    /// Representation JSON file.
    #[arg(long)]
    rep_file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MackeyOp {
    P0,
    Eg,
    Validate,
    Burnside,
    Fixed,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (lo, hi) = s
        .split_once("..")
        .or_else(|| s.split_once(':'))
        .ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("{lo:?}: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("{hi:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::invalid(e.to_string())
    }
}

/// A finished command: what to print and the exit status.
struct Report {
    text: String,
    json: Value,
    code: u8,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, code: 0 }
    }
}

type Outcome = Result<Report, Failure>;

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn load_rep(args: &RepArgs) -> Result<VirtualRep, Failure> {
    let rep = match (&args.rep, &args.rep_file) {
        (Some(expr), _) => parse_rep(expr, args.m)?,
        (None, Some(path)) => {
            let raw: RawRep = serde_json::from_str(&read_file(path)?)
                .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
            let rep = raw.canonicalize()?;
            if let Some(m) = args.m {
                if m != rep.group().order() {
                    return Err(Failure::invalid(format!(
                        "--m {m} disagrees with m = {} in {}",
                        rep.group().order(),
                        path.display()
                    )));
                }
            }
            rep
        }
        (None, None) => return Err(Failure::invalid("one of --rep or --rep-file is required")),
    };
    Ok(rep)
}

fn load_mackey(path: &Path) -> Result<CpMackey, Failure> {
    Ok(CpMackey::from_json(&read_file(path)?)?)
}

fn orbit_json(f: &OrbitFunction) -> Value {
    let map: serde_json::Map<String, Value> =
        f.iter().map(|(d, v)| (d.to_string(), json!(v))).collect();
    Value::Object(map)
}

fn advisory_lines(text: &mut String, advisories: &[impl std::fmt::Display]) {
    for a in advisories {
        let _ = write!(text, "\nadvisory: {a}");
    }
}

fn cmd_nu(m: u64, n: i64) -> Outcome {
    let group = CyclicGroup::new(m)?;
    let out = nu(group, n);
    let mut text = out.value.to_string();
    advisory_lines(&mut text, &out.advisories);
    let json = json!({
        "m": m,
        "n": n,
        "nu": orbit_json(&out.value),
        "advisory": out.advisories,
    });
    Ok(Report::ok(text, json))
}

fn cmd_sphere(args: &RepArgs, n: i64) -> Outcome {
    let rep = load_rep(args)?;
    let membership = sphere_in_tau(&rep, n);
    let mut text = match membership.witness_divisor {
        None => format!("in tau_{{>={n}}}"),
        Some(d) => format!("NOT in tau_{{>={n}}}; witness C{d}"),
    };
    let _ = write!(text, "\ndims: {}", rep.dim_function());
    advisory_lines(&mut text, &membership.advisories);
    let json = json!({
        "rep": rep,
        "n": n,
        "dims": orbit_json(&rep.dim_function()),
        "member": membership.member,
        "witness_divisor": membership.witness_divisor,
        "advisory": membership.advisories,
    });
    Ok(Report {
        text,
        json,
        code: if membership.member { 0 } else { 1 },
    })
}

fn cmd_smash(args: &RepArgs, n: i64, shift: i64) -> Outcome {
    let rep = load_rep(args)?;
    let verdict = smash_verdict(&rep, n, shift);
    let mut text = verdict.verdict.name().to_string();
    if let Some(d) = verdict.witness_divisor {
        let _ = write!(text, " witness C{d}");
    }
    advisory_lines(&mut text, &verdict.advisories);
    let json = serde_json::to_value(&verdict).map_err(|e| Failure::internal(e.to_string()))?;
    Ok(Report::ok(text, json))
}

fn cmd_classes(p: u64, k: u32, horizon: Option<u64>) -> Outcome {
    let horizon = match horizon {
        Some(h) => h,
        None => default_horizon(p, k)?,
    };
    let partition = equivalence_classes(p, k, horizon)?;
    if !partition.matches_expected_count() {
        return Err(Failure::internal(format!(
            "{} blocks for C_{}^{k}, expected 2^{k}",
            partition.block_count(),
            p
        )));
    }
    let blocks: Vec<String> = partition
        .blocks
        .iter()
        .map(|b| {
            let items: Vec<String> = b.iter().map(u64::to_string).collect();
            format!("{{{}}}", items.join(","))
        })
        .collect();
    let reps: Vec<String> = partition.representatives.iter().map(u64::to_string).collect();
    let text = format!(
        "{} blocks (2^{k}) of residues mod {}^{k}\n{}\nrepresentatives: {}",
        partition.block_count(),
        p,
        blocks.join(" "),
        reps.join(" ")
    );
    let json = serde_json::to_value(&partition).map_err(|e| Failure::internal(e.to_string()))?;
    Ok(Report::ok(text, json))
}

fn cmd_vj(p: u64, k: u32, j: u32, n: Option<i64>) -> Outcome {
    let rep = VirtualRep::v_j(p, k, j)?;
    let dims = rep.dim_function();
    let mut text = format!("V_{j} = {rep} over C{}\ndims: {dims}", rep.group().order());
    let mut json = json!({
        "p": p,
        "k": k,
        "j": j,
        "rep": rep,
        "dims": orbit_json(&dims),
        "shift": 2 * p.pow(j),
    });
    let mut code = 0;
    if let Some(n) = n {
        let holds = vj_condition(p, k, j, n)?;
        let period = p.pow(j + 1);
        let _ = write!(
            text,
            "\nn = {n}: n mod {period} {} [1, {}]",
            if holds { "in" } else { "NOT in" },
            period - 2 * p.pow(j)
        );
        json["n"] = json!(n);
        json["condition"] = json!(holds);
        if !holds {
            code = 1;
        }
    }
    Ok(Report { text, json, code })
}

const LAMBDA_NOTE: &str = "lambda = lambda(1); any lambda(j) with p not dividing j gives the same slice";

fn schedule_table(rows: &[SliceDescription]) -> String {
    let header = ["n", "functor", "degree", "slice", "link"];
    let body: Vec<[String; 5]> = rows
        .iter()
        .map(|d| {
            let (base, k) = d.link();
            let link = match (k, d.rho_mult) {
                (0, 0) => format!("{base}"),
                _ => format!("{base} + {}", slicecalc::slice_formulas::format_degree(d.rho_mult, k, 0)),
            };
            [
                d.n.to_string(),
                d.functor.code().to_string(),
                d.degree_label(),
                d.render(),
                link,
            ]
        })
        .collect();
    let mut widths = header.map(|h| h.chars().count());
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[&str]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(&header);
    for row in &body {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        line(&cells);
    }
    out.push_str(LAMBDA_NOTE);
    out
}

fn cmd_slice(
    p: u64,
    n: i64,
    to: Option<i64>,
    mackey: Option<&Path>,
    out: Option<&Path>,
) -> Outcome {
    if let Some(hi) = to {
        if mackey.is_some() {
            return Err(Failure::invalid("--mackey applies to a single slice, not a schedule"));
        }
        if hi < n {
            return Err(Failure::invalid(format!("--to {hi} is below --n {n}")));
        }
        let rows = slice_schedule(p, n, hi)?;
        let json: Vec<ScheduleRow> = rows.iter().map(ScheduleRow::from).collect();
        let json = serde_json::to_value(json).map_err(|e| Failure::internal(e.to_string()))?;
        if let Some(path) = out {
            write_file(path, &pretty(&json))?;
        }
        return Ok(Report::ok(schedule_table(&rows), json));
    }

    let desc = slice_description(p, n)?;
    let (dim_e, dim_g) = desc.underlying_dimensions();
    let mut text = format!(
        "{}\ndegree dimensions: C1:{dim_e} C{p}:{dim_g}\n{LAMBDA_NOTE}",
        desc.render()
    );
    let mut json = serde_json::to_value(ScheduleRow::from(&desc))
        .map_err(|e| Failure::internal(e.to_string()))?;
    if let Some(path) = mackey {
        let pi = load_mackey(path)?;
        if pi.p() != p {
            return Err(Failure::invalid(format!(
                "Mackey functor is for C_{}, not C_{p}",
                pi.p()
            )));
        }
        pi.ensure_valid()?;
        let result = apply_slice_functor(&desc, &pi)?;
        check_output(&result)?;
        let _ = write!(text, "\n{} applied:\n{result}", desc.functor.code());
        let mackey_json =
            serde_json::to_value(&result).map_err(|e| Failure::internal(e.to_string()))?;
        if let Some(path) = out {
            write_file(path, &pretty(&mackey_json))?;
        }
        json = json!({ "slice": json, "mackey": mackey_json });
    } else if let Some(path) = out {
        write_file(path, &pretty(&json))?;
    }
    Ok(Report::ok(text, json))
}

fn check_output(m: &CpMackey) -> Result<(), Failure> {
    let violations = m.validate();
    if violations.is_empty() {
        Ok(())
    } else {
        let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
        Err(Failure::internal(format!(
            "computed functor fails its axioms: {}",
            list.join("; ")
        )))
    }
}

fn cmd_mackey(op: MackeyOp, input: Option<&Path>, p: Option<u64>, out: Option<&Path>) -> Outcome {
    let source = || -> Result<CpMackey, Failure> {
        match input {
            Some(path) => load_mackey(path),
            None => Err(Failure::invalid("--in FILE is required for this operation")),
        }
    };
    let builtin = |f: fn(u64) -> slicecalc::Result<CpMackey>| -> Result<CpMackey, Failure> {
        match p {
            Some(p) => Ok(f(p)?),
            None => Err(Failure::invalid("--p is required for this operation")),
        }
    };

    let result = match op {
        MackeyOp::Validate => {
            let m = source()?;
            let violations = m.validate();
            let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
            let text = if list.is_empty() {
                "valid".to_string()
            } else {
                format!("invalid:\n  {}", list.join("\n  "))
            };
            let json = json!({ "valid": list.is_empty(), "violations": list });
            return Ok(Report {
                text,
                json,
                code: if violations.is_empty() { 0 } else { 1 },
            });
        }
        MackeyOp::P0 => {
            let m = source()?;
            m.ensure_valid()?;
            m.p_zero()?
        }
        MackeyOp::Eg => {
            let m = source()?;
            m.ensure_valid()?;
            m.e_tensor()?
        }
        MackeyOp::Burnside => builtin(CpMackey::burnside)?,
        MackeyOp::Fixed => builtin(CpMackey::fixed_point_integers)?,
    };
    check_output(&result)?;
    let json = serde_json::to_value(&result).map_err(|e| Failure::internal(e.to_string()))?;
    if let Some(path) = out {
        write_file(path, &pretty(&json))?;
    }
    Ok(Report::ok(result.to_string(), json))
}

fn cmd_verify(suite: Suite, p: u64, k: u32, range: Option<RangeInclusive<i64>>) -> Outcome {
    let reports = verify::run(suite, &SweepParams { p, k, range })?;
    let passed = reports.iter().all(|r| r.passed);
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(
            text,
            "{} {}: {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.suite,
            r.summary
        );
        for f in &r.failures {
            let _ = writeln!(text, "    {f}");
        }
    }
    if reports.len() > 1 {
        let _ = writeln!(
            text,
            "{}",
            if passed { "aggregate: pass" } else { "aggregate: FAIL" }
        );
    }
    let text = text.trim_end().to_string();
    let json = json!({ "passed": passed, "suites": reports });
    Ok(Report {
        text,
        json,
        code: if passed { 0 } else { 1 },
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Nu { m, n } => cmd_nu(*m, *n),
        Command::Sphere { rep, n } => cmd_sphere(rep, *n),
        Command::Smash { rep, n, shift } => cmd_smash(rep, *n, *shift),
        Command::Classes { p, k, horizon } => cmd_classes(*p, *k, *horizon),
        Command::Vj { p, k, j, n } => cmd_vj(*p, *k, *j, *n),
        Command::Slice {
            p,
            n,
            to,
            mackey,
            out,
        } => cmd_slice(*p, *n, *to, mackey.as_deref(), out.as_deref()),
        Command::Mackey { op, input, p, out } => {
            cmd_mackey(*op, input.as_deref(), *p, out.as_deref())
        }
        Command::Verify { suite, p, k, range } => cmd_verify(*suite, *p, *k, range.clone()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    std::panic::set_hook(Box::new(|_| {}));
    let outcome = std::panic::catch_unwind(|| dispatch(&cli)).unwrap_or_else(|panic| {
        let msg = panic
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| panic.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unknown panic".into());
        Err(Failure::internal(msg))
    });
    match outcome {
        Ok(report) => {
            if !cli.quiet {
                if cli.json {
                    print!("{}", pretty(&report.json));
                } else {
                    println!("{}", report.text);
                }
            }
            ExitCode::from(report.code)
        }
        Err(f) => {
            if f.code == 3 {
                eprintln!("internal error: {}", f.message);
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
