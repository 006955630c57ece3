//! Command-line front end for the verifier.
//!
//! Every command returns an [`Outcome`]: the rendered report, diagnostics
//! and an exit code (0 pass, 1 fail, 2 input error).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use theta_graded::coords::{example_sl_2n1, example_sl_nk, extract_coordinates, round_trip, EmbeddedAlgebra};
use theta_graded::frak::verify_structure;
use theta_graded::graded::{assemble, check_condition_s, check_grading, check_jacobi, JacobiMode, DEFAULT_SEED};
use theta_graded::hom::{verify_homs, HomReport};
use theta_graded::module::{isotypic_decompose, GModule};
use theta_graded::sl::check_n;
use theta_graded::tensor::{verify_tables, TableReport, ThetaMultiset};
use theta_graded::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "theta-graded",
    version,
    about = "Verify (Θ_n, sl_n)-graded Lie algebras for n = 3, 4"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Full,
    Sampled,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Recompute the Θ-components of the tensor product tables.
    Tables {
        /// Rank n (3 or 4)
        #[arg(long)]
        n: usize,
    },
    /// Verify the listed bases of the Hom spaces.
    Homs {
        /// Rank n (3 or 4)
        #[arg(long)]
        n: usize,
    },
    /// Build an example, extract its coordinates and run checks.
    Example {
        /// `slnk` (sl_{n+k}) or `sl2n+1`.
        #[arg(long)]
        name: String,
        /// Rank n (3 or 4)
        #[arg(long)]
        n: usize,
        /// Size of the zero block for `slnk`.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Comma-separated subset of grading,jacobi,condition,coords,structure,roundtrip, or `all`.
        #[arg(long, default_value = "all")]
        check: String,
        /// Jacobi mode.
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
        /// Number of sampled triples in sampled mode.
        #[arg(long, default_value_t = 5000)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Decompose a module given as JSON into Θ-isotypic components.
    Decompose {
        /// Module file: {"n", "dim", "label"?, "actions": {basis name: matrix}}.
        input: PathBuf,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn input_error(msg: impl Into<String>) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.into()),
            code: EXIT_INPUT,
        }
    }

    fn report(stdout: String, pass: bool) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: if pass { EXIT_PASS } else { EXIT_FAIL },
        }
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Tables { n } => cmd_tables(*n, cli.format),
        Command::Homs { n } => cmd_homs(*n, cli.format),
        Command::Example {
            name,
            n,
            k,
            check,
            mode,
            samples,
            seed,
        } => {
            let checks = match parse_checks(check) {
                Ok(c) => c,
                Err(e) => return Outcome::input_error(e),
            };
            let mode = match mode {
                Mode::Full => JacobiMode::Full,
                Mode::Sampled => JacobiMode::Sampled {
                    samples: *samples,
                    seed: *seed,
                },
            };
            cmd_example(name, *n, *k, &checks, mode, cli.format)
        }
        Command::Decompose { input } => cmd_decompose(input, cli.format),
    }
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

pub fn cmd_tables(n: usize, format: Format) -> Outcome {
    match verify_tables(n) {
        Ok(r) => render_tables(&r, format),
        Err(e) => Outcome::input_error(e.to_string()),
    }
}

pub fn render_tables(r: &TableReport, format: Format) -> Outcome {
    let out = match format {
        Format::Json => pretty(r),
        Format::Text => {
            let mut s = String::new();
            for c in &r.cells {
                let status = if c.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    s,
                    "{status}  {}⊗{}  expected {}  computed {}  (remainder {})",
                    c.row,
                    c.col,
                    ThetaMultiset::formula(&c.expected),
                    ThetaMultiset::formula(&c.computed),
                    c.remainder_dim
                );
            }
            let _ = writeln!(
                s,
                "n={}: {}/{} cells match",
                r.n,
                r.cells.len() - r.failures(),
                r.cells.len()
            );
            s
        }
    };
    Outcome::report(out, r.all_pass())
}

pub fn cmd_homs(n: usize, format: Format) -> Outcome {
    match verify_homs(n) {
        Ok(r) => render_homs(&r, format),
        Err(e) => Outcome::input_error(e.to_string()),
    }
}

pub fn render_homs(r: &HomReport, format: Format) -> Outcome {
    let passed = r.entries.iter().filter(|e| e.pass()).count();
    let out = match format {
        Format::Json => {
            let entries: Vec<Value> = r
                .entries
                .iter()
                .map(|e| {
                    let mut v = serde_json::to_value(e).expect("serializable");
                    v["pass"] = json!(e.pass());
                    v
                })
                .collect();
            pretty(&json!({ "n": r.n, "entries": entries, "verified": passed, "pass": r.all_pass() }))
        }
        Format::Text => {
            let mut s = String::new();
            for e in &r.entries {
                let status = if e.pass() { "PASS" } else { "FAIL" };
                let _ = write!(s, "{status}  {}  dim {}", e.name, e.dim_computed);
                if !e.pass() {
                    let _ = write!(
                        s,
                        "  [equivariant={} nonzero={} in_span={} independent={} expected dim {}]",
                        e.equivariant, e.nonzero, e.in_span, e.independent, e.dim_expected
                    );
                    if let Some(err) = &e.error {
                        let _ = write!(s, "  error: {err}");
                    }
                }
                s.push('\n');
            }
            let _ = writeln!(s, "n={}: {passed}/{} entries verified", r.n, r.entries.len());
            s
        }
    };
    Outcome::report(out, r.all_pass())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    Grading,
    Jacobi,
    Condition,
    Coords,
    Structure,
    Roundtrip,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Coords,
        Check::Roundtrip,
        Check::Grading,
        Check::Jacobi,
        Check::Condition,
        Check::Structure,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Check::Grading => "grading",
            Check::Jacobi => "jacobi",
            Check::Condition => "condition",
            Check::Coords => "coords",
            Check::Structure => "structure",
            Check::Roundtrip => "roundtrip",
        }
    }
}

impl FromStr for Check {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.as_str() == s.trim())
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

/// Parses `all` or a comma list; the result is deduplicated and ordered.
pub fn parse_checks(s: &str) -> Result<CheckSet, String> {
    if s.trim() == "all" {
        return Ok(CheckSet {
            checks: Check::ALL.to_vec(),
            all: true,
        });
    }
    let mut checks = s.split(',').map(str::parse).collect::<Result<Vec<Check>, _>>()?;
    checks.sort();
    checks.dedup();
    let checks = Check::ALL.into_iter().filter(|c| checks.contains(c)).collect();
    Ok(CheckSet { checks, all: false })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckSet {
    pub checks: Vec<Check>,
    /// Requested as `all`; inapplicable checks are then skipped silently.
    pub all: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Entry {
    fn new(name: impl Into<String>, pass: bool, witness: Option<String>) -> Self {
        Entry {
            name: name.into(),
            pass,
            witness,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub example: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub entries: Vec<Entry>,
    /// Facts that are reported but not asserted.
    pub notes: Vec<String>,
    pub details: serde_json::Map<String, Value>,
    pub pass: bool,
    #[serde(skip)]
    pub timing: Vec<(String, f64)>,
}

fn build_example(name: &str, n: usize, k: usize) -> Result<EmbeddedAlgebra, String> {
    check_n(n).map_err(|e| e.to_string())?;
    match name {
        "slnk" => example_sl_nk(n, k).map_err(|e| e.to_string()),
        "sl2n+1" => example_sl_2n1(n).map_err(|e| e.to_string()),
        other => Err(format!("unknown example {other:?} (expected slnk or sl2n+1)")),
    }
}

fn command_echo(name: &str, n: usize, k: usize, checks: &CheckSet, mode: JacobiMode) -> String {
    let mut s = format!("example --name {name} --n {n}");
    if name == "slnk" {
        let _ = write!(s, " --k {k}");
    }
    if checks.all {
        s.push_str(" --check all");
    } else {
        let names: Vec<&str> = checks.checks.iter().map(|c| c.as_str()).collect();
        let _ = write!(s, " --check {}", names.join(","));
    }
    if let JacobiMode::Sampled { samples, seed } = mode {
        let _ = write!(s, " --mode sampled --samples {samples} --seed {seed}");
    }
    s
}

/// Builds the example and runs the requested checks.
pub fn example_report(name: &str, n: usize, k: usize, checks: &CheckSet, mode: JacobiMode) -> Result<Report, String> {
    let e = build_example(name, n, k)?;
    if n != 3 && !checks.all && checks.checks.contains(&Check::Condition) {
        return Err(format!("the condition check applies to n = 3 only (got n = {n})"));
    }
    let mut report = Report {
        command: command_echo(name, n, k, checks, mode),
        example: e.name.clone(),
        n,
        seed: match mode {
            JacobiMode::Sampled { seed, .. } => Some(seed),
            JacobiMode::Full => None,
        },
        entries: Vec::new(),
        notes: Vec::new(),
        details: serde_json::Map::new(),
        pass: false,
        timing: Vec::new(),
    };
    let t = Instant::now();
    let x = match extract_coordinates(&e) {
        Ok(x) => x,
        Err(err) => {
            report.entries.push(Entry::new("coords", false, Some(err.to_string())));
            report.timing.push(("extraction".into(), t.elapsed().as_secs_f64()));
            return Ok(report);
        }
    };
    report.timing.push(("extraction".into(), t.elapsed().as_secs_f64()));
    let dims: serde_json::Map<String, Value> = x.data.dims.iter().map(|(s, d)| (s.to_string(), json!(d))).collect();
    report.details.insert("dims".into(), Value::Object(dims));
    report.details.insert("multiplicities".into(), json!(x.multiplicities));
    let assembled = assemble(&x.data).map_err(|e| e.to_string());

    for &c in &checks.checks {
        let t = Instant::now();
        match c {
            Check::Coords => {
                let v = x
                    .data
                    .validate()
                    .map_err(|e| e.to_string())
                    .and(assembled.as_ref().map(|_| ()).map_err(String::clone));
                report.entries.push(Entry::new("coords", v.is_ok(), v.err()));
            }
            Check::Roundtrip => {
                let rt = round_trip(&x);
                match rt {
                    Ok(rt) => {
                        let w = rt.witness.as_ref().map(|[a, b]| format!("[{a}, {b}]"));
                        report
                            .entries
                            .push(Entry::new(format!("roundtrip ({} pairs)", rt.pairs), rt.pass(), w));
                    }
                    Err(err) => report
                        .entries
                        .push(Entry::new("roundtrip", false, Some(err.to_string()))),
                }
            }
            Check::Grading => match &assembled {
                Ok(l) => {
                    let g = check_grading(l);
                    report
                        .entries
                        .push(Entry::new("grading", g.pass(), g.notes.first().cloned()));
                    report.details.insert("grading".into(), json!(g));
                }
                Err(err) => report.entries.push(Entry::new("grading", false, Some(err.clone()))),
            },
            Check::Jacobi => match &assembled {
                Ok(l) => {
                    let j = check_jacobi(l, mode);
                    let w = j.witness_names.as_ref().map(|[a, b, c]| format!("({a}, {b}, {c})"));
                    report.entries.push(Entry::new(
                        format!("jacobi {} ({} triples)", j.mode, j.triples),
                        j.pass(),
                        w,
                    ));
                }
                Err(err) => report.entries.push(Entry::new("jacobi", false, Some(err.clone()))),
            },
            Check::Condition => {
                if n != 3 {
                    report
                        .notes
                        .push("condition check skipped: it applies to n = 3 only".into());
                    continue;
                }
                match assembled
                    .as_ref()
                    .map_err(String::clone)
                    .and_then(|l| check_condition_s(l).map_err(|e| e.to_string()))
                {
                    Ok(r) => {
                        let w = r.witness.as_ref().map(|[a, b]| format!("[{a}, {b}] != 0"));
                        report
                            .entries
                            .push(Entry::new(format!("condition ({} pairs)", r.pairs_checked), r.holds, w));
                    }
                    Err(err) => report.entries.push(Entry::new("condition", false, Some(err))),
                }
            }
            Check::Structure => match verify_structure(&x.data) {
                Ok(s) => {
                    for ch in &s.checks {
                        report.entries.push(Entry::new(
                            format!("structure: {}", ch.name),
                            ch.pass,
                            ch.witness.clone(),
                        ));
                    }
                    for ch in &s.module_associativity {
                        let verdict = if ch.pass { "yes" } else { "no" };
                        report.notes.push(format!("(reported) {}: {verdict}", ch.name));
                    }
                    let verdict = if s.frak_a_associative { "yes" } else { "no" };
                    report
                        .notes
                        .push(format!("(reported) the coordinate algebra is associative: {verdict}"));
                }
                Err(err) => report
                    .entries
                    .push(Entry::new("structure", false, Some(err.to_string()))),
            },
        }
        report.timing.push((c.as_str().into(), t.elapsed().as_secs_f64()));
    }
    report.pass = report.entries.iter().all(|e| e.pass);
    Ok(report)
}

pub fn render_example(r: &Report, format: Format) -> String {
    match format {
        Format::Json => pretty(r),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{}", r.command);
            let _ = writeln!(s, "example: {}", r.example);
            if let Some(seed) = r.seed {
                let _ = writeln!(s, "seed: {seed}");
            }
            if let Some(Value::Object(dims)) = r.details.get("dims") {
                let parts: Vec<String> = dims.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(s, "multiplicity spaces: {}", parts.join(" "));
            }
            for e in &r.entries {
                let status = if e.pass { "PASS" } else { "FAIL" };
                let _ = write!(s, "{status}  {}", e.name);
                if let Some(w) = &e.witness {
                    let _ = write!(s, "  witness: {w}");
                }
                s.push('\n');
            }
            for note in &r.notes {
                let _ = writeln!(s, "note: {note}");
            }
            let times: Vec<String> = r.timing.iter().map(|(k, t)| format!("{k} {t:.2}s")).collect();
            let _ = writeln!(s, "timing: {}", times.join(", "));
            let _ = writeln!(s, "{}", if r.pass { "overall: PASS" } else { "overall: FAIL" });
            s
        }
    }
}

pub fn cmd_example(name: &str, n: usize, k: usize, checks: &CheckSet, mode: JacobiMode, format: Format) -> Outcome {
    match example_report(name, n, k, checks, mode) {
        Ok(r) => Outcome::report(render_example(&r, format), r.pass),
        Err(e) => Outcome::input_error(e),
    }
}

pub fn cmd_decompose(input: &std::path::Path, format: Format) -> Outcome {
    let text = match std::fs::read_to_string(input) {
        Ok(t) => t,
        Err(e) => return Outcome::input_error(format!("cannot read {}: {e}", input.display())),
    };
    let value: Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => return Outcome::input_error(format!("malformed JSON: {e}")),
    };
    let m = match GModule::from_json(&value) {
        Ok(m) => m,
        Err(e) => return Outcome::input_error(e.to_string()),
    };
    match isotypic_decompose(&m) {
        Ok(d) => {
            let mults = d.multiplicities();
            let out = match format {
                Format::Json => pretty(&json!({
                    "n": d.n,
                    "dim": m.dim(),
                    "label": m.label(),
                    "multiplicities": mults,
                    "remainder_dim": d.remainder_dim,
                })),
                Format::Text => {
                    let mut s = String::new();
                    let _ = writeln!(s, "n={} dim={}", d.n, m.dim());
                    for (l, k) in &mults {
                        let _ = writeln!(s, "{l}: {k}");
                    }
                    let _ = writeln!(s, "= {}", ThetaMultiset::formula(&mults));
                    s
                }
            };
            Outcome::report(out, true)
        }
        Err(e @ (Error::NonThetaConstituent { .. } | Error::NotCompletelyReducible(_))) => Outcome {
            stdout: String::new(),
            stderr: format!("{e}\n"),
            code: EXIT_FAIL,
        },
        Err(e) => Outcome::input_error(e.to_string()),
    }
}
