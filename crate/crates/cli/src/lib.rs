//! `dla`: command-line front end over dla-core.
//!
//! Every report starts with a `RESULT:` line followed by `COND`, `LEVEL`,
//! `ROW` or `COMPONENT` lines. With `--kv` the same fields are printed as
//! `key=value` lines instead.
//!
//! Exit codes: 0 yes/valid, 1 no/invalid, 2 unknown, 3 usage or parse
//! error, 4 I/O error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;

use dla_core::branching::{
    decompose_by_characters, dynkin_index_module, gt_branch, lr_coefficient, restrict_signature, weyl_dim,
    BranchingResult, HighestWeight, WeightMap, WeightMultiset,
};
use dla_core::classify::{
    self, default_precision, embeds_decision, index_divisibility_check, Answer, DecisionOptions, Status, Verdict,
    Witness,
};
use dla_core::constructor::{
    build_diagram, build_triangle, constant_triangle, triangle_to_diagram, verify_diagram, verify_triangle,
    ConstructionError, EmbeddingDiagram, TargetFactors, Triangle, TriangleError,
};
use dla_core::exhaustions::format::{parse_rational, AlgebraInput};
use dla_core::exhaustions::{AlgebraProfile, DensityClass};
use dla_core::steinitz::SteinitzNumber;
use dla_core::ParseError;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "dla", version, about = "Decide and witness relations between diagonal locally simple Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print key=value lines instead of the RESULT/COND report.
    #[arg(long, global = true)]
    pub kv: bool,
    /// Append the derived profiles and full witness text to the report.
    #[arg(long, global = true)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct Precision {
    /// Target width of δ enclosures (rational literal such as 1/1024 or 2^-40).
    #[arg(long, value_name = "P")]
    pub precision: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derive and print the profile of a descriptor or profile file.
    Profile {
        input: String,
        #[command(flatten)]
        precision: Precision,
    },
    /// Decide isomorphism.
    Iso {
        first: String,
        second: String,
        #[command(flatten)]
        precision: Precision,
    },
    /// Decide whether the first algebra embeds into the second.
    Embed {
        first: String,
        second: String,
        #[command(flatten)]
        precision: Precision,
        /// Depth of the witness built for a Yes verdict (0 disables it).
        #[arg(long, value_name = "K", default_value_t = 4)]
        witness_depth: usize,
        /// Write the witness file here.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Decide mutual embeddability.
    Equiv {
        first: String,
        second: String,
        #[command(flatten)]
        precision: Precision,
    },
    /// Decide whether an algebra is universal (sparse with S = all primes to ∞).
    Universal {
        input: String,
        #[command(flatten)]
        precision: Precision,
    },
    /// Build and verify an embedding diagram between two descriptors.
    Diagram {
        first: String,
        second: String,
        #[arg(long, value_name = "K", default_value_t = 4)]
        depth: usize,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Build and verify an exterior-power triangle.
    Triangle {
        /// Exterior power parameter of the general path (q >= 4).
        #[arg(long, value_name = "Q", default_value_t = 4)]
        q: u64,
        /// Target Steinitz number of the general path.
        #[arg(long, value_name = "STZ", conflicts_with = "constant")]
        target: Option<String>,
        /// Constant group size n of the constant path.
        #[arg(long, value_name = "N")]
        constant: Option<u64>,
        #[arg(long, value_name = "K", default_value_t = 4)]
        depth: usize,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Small-rank branching computations.
    Branch {
        #[command(subcommand)]
        op: BranchOp,
    },
    /// Verify a diagram or triangle file.
    Check { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum BranchOp {
    /// Gelfand–Tsetlin branching gl(n+1) → gl(n).
    Gt { weight: String },
    /// Restriction along the diagonal signature (copies, 0, trivial) into gl(rank).
    Diag {
        weight: String,
        #[arg(long, value_name = "L")]
        copies: usize,
        #[arg(long, value_name = "N")]
        rank: usize,
        #[arg(long, value_name = "Z", default_value_t = 0)]
        trivial: usize,
    },
    /// Littlewood–Richardson coefficient c^λ_{μν}.
    Lr { mu: String, nu: String, lambda: String },
    /// Weyl dimension.
    Dim { weight: String },
    /// Dynkin index of an sl(n)-module.
    Index { weight: String },
}

/// Captured outcome of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{source_name}: {error}")]
    Parse { source_name: String, error: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {error}")]
    Io { path: String, error: std::io::Error },
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => Outcome {
            code: report.code,
            stdout: report.render(cli.kv),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

// ---------------------------------------------------------------- reports

#[derive(Default)]
struct Report {
    code: i32,
    result: String,
    conds: Vec<(String, String, String)>,
    /// PRECISION / LEVEL / ROW / B / COMPONENT / FIELD / VALUE lines: (tag, fields).
    lines: Vec<(&'static str, String)>,
    trace: Vec<String>,
}

impl Report {
    fn cond(&mut self, id: &str, status: impl ToString, detail: impl Into<String>) {
        self.conds.push((id.to_string(), status.to_string(), detail.into()));
    }

    fn render(&self, kv: bool) -> String {
        let mut out = String::new();
        if kv {
            let _ = writeln!(out, "result={}", self.result);
            let _ = writeln!(out, "exit={}", self.code);
            for (id, status, detail) in &self.conds {
                let _ = writeln!(out, "cond.{id}.status={status}");
                if !detail.is_empty() {
                    let _ = writeln!(out, "cond.{id}.detail={detail}");
                }
            }
            let mut counters: Vec<(&str, usize)> = Vec::new();
            for (tag, fields) in &self.lines {
                if *tag == "PRECISION" {
                    let _ = writeln!(out, "precision_used={fields}");
                    continue;
                }
                let key = tag.to_ascii_lowercase();
                let n = match counters.iter_mut().find(|(t, _)| *t == *tag) {
                    Some((_, n)) => {
                        *n += 1;
                        *n - 1
                    }
                    None => {
                        counters.push((tag, 1));
                        0
                    }
                };
                let _ = writeln!(out, "{key}.{n}={fields}");
            }
            for (n, t) in self.trace.iter().enumerate() {
                let _ = writeln!(out, "trace.{n}={t}");
            }
        } else {
            let _ = writeln!(out, "RESULT: {}", self.result);
            for (id, status, detail) in &self.conds {
                if detail.is_empty() {
                    let _ = writeln!(out, "COND {id} {status}");
                } else {
                    let _ = writeln!(out, "COND {id} {status} {detail}");
                }
            }
            for (tag, fields) in &self.lines {
                let _ = writeln!(out, "{tag} {fields}");
            }
            for t in &self.trace {
                let _ = writeln!(out, "TRACE {t}");
            }
        }
        out
    }
}

fn answer_code(a: Answer) -> i32 {
    match a {
        Answer::Yes => EXIT_YES,
        Answer::No => EXIT_NO,
        Answer::Unknown => EXIT_UNKNOWN,
    }
}

fn verdict_report(v: &Verdict) -> Report {
    let mut r = Report {
        code: answer_code(v.answer),
        result: v.answer.to_string(),
        ..Report::default()
    };
    for e in &v.trace {
        r.cond(&e.id, e.status, e.detail.clone());
    }
    r.lines.push(("PRECISION", v.precision_used.to_string()));
    match &v.witness {
        Some(Witness::Diagram(d)) => diagram_lines(&mut r, d),
        Some(Witness::Triangle(t)) => triangle_lines(&mut r, t),
        None => {}
    }
    r
}

fn diagram_lines(r: &mut Report, d: &EmbeddingDiagram) {
    for lv in &d.levels {
        r.lines.push(("LEVEL", format!("{} {} {} {} {}", lv.i, lv.k, lv.x, lv.y, lv.u)));
    }
}

fn triangle_lines(r: &mut Report, t: &Triangle) {
    for (k, row) in t.rows.iter().enumerate() {
        let entries: Vec<String> = row.iter().map(ToString::to_string).collect();
        r.lines.push(("ROW", format!("{k} {}", entries.join(" "))));
    }
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Diagram(d) => d.to_string(),
        Witness::Triangle(t) => t.to_string(),
    }
}

// ---------------------------------------------------------------- inputs

/// Reads `arg` as a file if it names one; otherwise treats it as inline
/// text with `;` separating lines.
fn read_input(arg: &str) -> Result<(String, String), CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|error| CliError::Io {
            path: arg.to_string(),
            error,
        })?;
        Ok((arg.to_string(), text))
    } else {
        Ok(("<inline>".to_string(), arg.replace(';', "\n")))
    }
}

fn parse_with<T>(name: &str, r: Result<T, ParseError>) -> Result<T, CliError> {
    r.map_err(|error| CliError::Parse {
        source_name: name.to_string(),
        error,
    })
}

fn algebra(arg: &str) -> Result<AlgebraInput, CliError> {
    let (name, text) = read_input(arg)?;
    parse_with(&name, AlgebraInput::parse(&text))
}

fn precision(p: &Precision) -> Result<BigRational, CliError> {
    match &p.precision {
        None => Ok(default_precision()),
        Some(s) => {
            let v = parse_with("--precision", parse_rational(s))?;
            if v <= BigRational::from_integer(0.into()) {
                return Err(CliError::Usage("--precision must be positive".into()));
            }
            Ok(v)
        }
    }
}

fn weight(arg: &str) -> Result<HighestWeight, CliError> {
    parse_with(arg, arg.parse())
}

fn write_out(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|error| CliError::Io {
        path: path.display().to_string(),
        error,
    })
}

// ---------------------------------------------------------------- commands

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let mut report = match &cli.command {
        Command::Profile { input, precision: p } => {
            let profile = algebra(input)?.profile(&precision(p)?);
            let mut r = Report {
                code: EXIT_YES,
                result: "VALID".into(),
                ..Report::default()
            };
            profile_lines(&mut r, &profile);
            r
        }
        Command::Iso {
            first,
            second,
            precision: p,
        } => pair(cli, first, second, p, None, classify::isomorphic_with)?,
        Command::Embed {
            first,
            second,
            precision: p,
            witness_depth,
            out,
        } => {
            let depth = (*witness_depth > 0).then_some(*witness_depth);
            let (r, witness) = pair_verdict(cli, first, second, p, depth, classify::embeds_with)?;
            if let (Some(path), Some(w)) = (out, &witness) {
                write_out(path, &witness_text(w))?;
            }
            r
        }
        Command::Equiv {
            first,
            second,
            precision: p,
        } => pair(cli, first, second, p, None, classify::equivalent_with)?,
        Command::Universal { input, precision: p } => {
            let profile = algebra(input)?.profile(&precision(p)?);
            let yes = classify::is_universal(&profile);
            let mut r = Report {
                code: if yes { EXIT_YES } else { EXIT_NO },
                result: if yes { Answer::Yes } else { Answer::No }.to_string(),
                ..Report::default()
            };
            r.cond("density", pass_fail(profile.density == DensityClass::Sparse), profile.density.to_string());
            r.cond("S", pass_fail(profile.s == SteinitzNumber::all_infinite()), profile.s.to_string());
            if cli.trace {
                trace_profile(&mut r, "input", &profile);
            }
            r
        }
        Command::Diagram {
            first,
            second,
            depth,
            out,
        } => diagram(cli, first, second, *depth, out.as_deref())?,
        Command::Triangle {
            q,
            target,
            constant,
            depth,
            out,
        } => triangle(cli, *q, target.as_deref(), *constant, *depth, out.as_deref())?,
        Command::Branch { op } => branch(op)?,
        Command::Check { file } => check(cli, file)?,
    };
    if !cli.trace {
        report.trace.clear();
    }
    Ok(report)
}

fn pass_fail(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn profile_lines(r: &mut Report, p: &AlgebraProfile) {
    for line in p.to_string().lines() {
        r.lines.push(("FIELD", line.to_string()));
    }
}

fn trace_profile(r: &mut Report, label: &str, p: &AlgebraProfile) {
    for line in p.to_string().lines() {
        r.trace.push(format!("{label}.{line}"));
    }
}

type Decision = fn(&AlgebraProfile, &AlgebraProfile, &DecisionOptions) -> Verdict;

fn pair(
    cli: &Cli,
    first: &str,
    second: &str,
    p: &Precision,
    witness_depth: Option<usize>,
    decide: Decision,
) -> Result<Report, CliError> {
    Ok(pair_verdict(cli, first, second, p, witness_depth, decide)?.0)
}

fn pair_verdict(
    cli: &Cli,
    first: &str,
    second: &str,
    p: &Precision,
    witness_depth: Option<usize>,
    decide: Decision,
) -> Result<(Report, Option<Witness>), CliError> {
    let precision = precision(p)?;
    let a = algebra(first)?.profile(&precision);
    let b = algebra(second)?.profile(&precision);
    let opts = DecisionOptions {
        witness_depth,
        ..DecisionOptions::with_precision(&precision)
    };
    let v = decide(&a, &b, &opts);
    let mut r = verdict_report(&v);
    if cli.trace {
        trace_profile(&mut r, "first", &a);
        trace_profile(&mut r, "second", &b);
        if let Some(w) = &v.witness {
            r.trace.extend(witness_text(w).lines().map(|l| format!("witness.{l}")));
        }
    }
    Ok((r, v.witness))
}

fn descriptor_of(arg: &str) -> Result<dla_core::exhaustions::ExhaustionDescriptor, CliError> {
    match algebra(arg)? {
        AlgebraInput::Descriptor(d) => Ok(d),
        AlgebraInput::Profile(_) => Err(CliError::Usage(format!(
            "{arg}: diagrams need exhaustion descriptors, not profiles"
        ))),
    }
}

fn diagram(cli: &Cli, first: &str, second: &str, depth: usize, out: Option<&Path>) -> Result<Report, CliError> {
    if depth == 0 {
        return Err(CliError::Usage("--depth must be at least 1".into()));
    }
    let d1 = descriptor_of(first)?;
    let d2 = descriptor_of(second)?;
    let precision = default_precision();
    let (p1, p2) = (d1.profile(&precision), d2.profile(&precision));
    let decision = embeds_decision(&p1, &p2, &DecisionOptions::default());
    let mut r = Report::default();
    r.cond("embed", decision.answer, String::new());
    if decision.answer != Answer::Yes {
        r.code = answer_code(decision.answer);
        r.result = decision.answer.to_string();
        return Ok(r);
    }
    match build_diagram(&d1, &d2, depth) {
        Ok(d) => {
            let report = verify_diagram(&d);
            let index_ok = index_divisibility_check(&p1, &p2, &d, depth);
            r.cond("verify", pass_fail(report.ok()), report.failures.join("; "));
            r.cond("index", pass_fail(index_ok), String::new());
            let ok = report.ok() && index_ok;
            r.code = if ok { EXIT_YES } else { EXIT_NO };
            r.result = if ok { "VALID" } else { "INVALID" }.into();
            diagram_lines(&mut r, &d);
            if cli.trace {
                r.trace.extend(d.to_string().lines().map(String::from));
            }
            if let Some(path) = out {
                write_out(path, &d.to_string())?;
            }
        }
        Err(ConstructionError::UnsupportedConstruction(why)) => {
            r.cond("construction", Status::Unknown, why);
            r.code = EXIT_UNKNOWN;
            r.result = Answer::Unknown.to_string();
        }
        Err(ConstructionError::NotEmbeddable(why)) => {
            r.cond("construction", Status::Fail, why);
            r.code = EXIT_NO;
            r.result = Answer::No.to_string();
        }
    }
    Ok(r)
}

fn triangle(
    cli: &Cli,
    q: u64,
    target: Option<&str>,
    constant: Option<u64>,
    depth: usize,
    out: Option<&Path>,
) -> Result<Report, CliError> {
    let built = match (target, constant) {
        (_, Some(n)) => constant_triangle(n, depth),
        (Some(t), None) => {
            let s: SteinitzNumber = parse_with("--target", t.parse())?;
            TargetFactors::from_steinitz(&s).and_then(|f| build_triangle(q, f, depth))
        }
        (None, None) => return Err(CliError::Usage("triangle needs --target or --constant".into())),
    };
    let mut r = Report::default();
    match built {
        Ok(t) => {
            triangle_report(cli, &mut r, &t);
            if let Some(path) = out {
                write_out(path, &t.to_string())?;
            }
        }
        Err(TriangleError::InvalidParameter(why)) => return Err(CliError::Usage(why)),
        Err(e) => {
            r.cond("construction", Status::Fail, e.to_string());
            r.code = EXIT_NO;
            r.result = "INVALID".into();
        }
    }
    Ok(r)
}

fn triangle_report(cli: &Cli, r: &mut Report, t: &Triangle) {
    let report = verify_triangle(t);
    let ladder = triangle_to_diagram(t).certificate();
    r.cond("verify", pass_fail(report.ok()), report.failures.join("; "));
    r.cond("ladder", pass_fail(ladder.is_ok()), ladder.err().unwrap_or_default());
    let ok = report.ok() && r.conds.iter().all(|c| c.1 == "PASS");
    r.code = if ok { EXIT_YES } else { EXIT_NO };
    r.result = if ok { "VALID" } else { "INVALID" }.into();
    triangle_lines(r, t);
    for (k, b) in t.b.iter().enumerate() {
        r.lines.push(("B", format!("{} {b}", k + 1)));
    }
    if cli.trace {
        r.trace.extend(t.to_string().lines().map(String::from));
    }
}

fn check(cli: &Cli, file: &Path) -> Result<Report, CliError> {
    let name = file.display().to_string();
    let text = std::fs::read_to_string(file).map_err(|error| CliError::Io {
        path: name.clone(),
        error,
    })?;
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    let mut r = Report::default();
    match header {
        "diagram" => {
            let d: EmbeddingDiagram = parse_with(&name, text.parse())?;
            let report = verify_diagram(&d);
            let precision = default_precision();
            let (p1, p2) = (d.source.profile(&precision), d.target.profile(&precision));
            let index_ok = index_divisibility_check(&p1, &p2, &d, d.levels.len());
            r.cond("verify", pass_fail(report.ok()), report.failures.join("; "));
            r.cond("index", pass_fail(index_ok), String::new());
            let ok = report.ok() && index_ok;
            r.code = if ok { EXIT_YES } else { EXIT_NO };
            r.result = if ok { "VALID" } else { "INVALID" }.into();
            diagram_lines(&mut r, &d);
        }
        "triangle" => {
            let t: Triangle = parse_with(&name, text.parse())?;
            triangle_report(cli, &mut r, &t);
        }
        _ => {
            return Err(CliError::Parse {
                source_name: name,
                error: ParseError::new(1, 1, "expected a 'diagram' or 'triangle' header"),
            })
        }
    }
    Ok(r)
}

// ---------------------------------------------------------------- branching

fn components(r: &mut Report, b: &BranchingResult) {
    for (w, m) in &b.multiplicities {
        r.lines.push(("COMPONENT", format!("{w} {m} {}", weyl_dim(w))));
    }
    if b.det_shift != 0 {
        r.trace.push(format!("det-shift {}", b.det_shift));
    }
}

/// Cross-checks a fast-path result against the character oracle.
fn oracle_cond(r: &mut Report, w: &HighestWeight, map: &WeightMap, fast: &BranchingResult) {
    match decompose_by_characters(&WeightMultiset::of_module(w), fast.target_rank, map) {
        Ok(oracle) => r.cond("oracle", pass_fail(oracle == *fast), String::new()),
        Err(e) => r.cond("oracle", Status::Unknown, e.to_string()),
    }
    let dim_ok = fast.total_dim() == weyl_dim(w);
    r.cond("dimension", pass_fail(dim_ok), format!("{} = {}", fast.total_dim(), weyl_dim(w)));
}

fn settle(r: &mut Report) {
    let failed = r.conds.iter().any(|c| c.1 == "FAIL");
    r.code = if failed { EXIT_NO } else { EXIT_YES };
    r.result = if failed { "INVALID" } else { "VALID" }.into();
}

fn branch(op: &BranchOp) -> Result<Report, CliError> {
    let mut r = Report::default();
    match op {
        BranchOp::Gt { weight: w } => {
            let w = weight(w)?;
            if w.rank() < 2 {
                return Err(CliError::Usage("gt needs rank at least 2".into()));
            }
            let fast = gt_branch(&w);
            oracle_cond(&mut r, &w, &WeightMap::drop_last(w.rank()), &fast);
            components(&mut r, &fast);
        }
        BranchOp::Diag {
            weight: w,
            copies,
            rank,
            trivial,
        } => {
            let w = weight(w)?;
            let fast = restrict_signature(&w, *copies, *trivial, *rank).map_err(|e| CliError::Usage(e.to_string()))?;
            oracle_cond(&mut r, &w, &WeightMap::diagonal(*copies, 0, *trivial, *rank), &fast);
            components(&mut r, &fast);
        }
        BranchOp::Lr { mu, nu, lambda } => {
            let (mu, nu, lambda) = (weight(mu)?, weight(nu)?, weight(lambda)?);
            if mu.rank() != lambda.rank() || nu.rank() != lambda.rank() {
                return Err(CliError::Usage("lr weights must share a rank".into()));
            }
            r.lines.push(("VALUE", lr_coefficient(&mu, &nu, &lambda).to_string()));
        }
        BranchOp::Dim { weight: w } => {
            r.lines.push(("VALUE", weyl_dim(&weight(w)?).to_string()));
        }
        BranchOp::Index { weight: w } => {
            let w = weight(w)?;
            if w.rank() < 2 {
                return Err(CliError::Usage("index needs rank at least 2".into()));
            }
            r.lines.push(("VALUE", dynkin_index_module(&w).to_string()));
        }
    }
    settle(&mut r);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_rendering_numbers_repeated_tags() {
        let mut r = Report {
            code: EXIT_YES,
            result: "VALID".into(),
            ..Report::default()
        };
        r.cond("verify", Status::Pass, "");
        r.lines.push(("ROW", "0 1".into()));
        r.lines.push(("ROW", "1 1 1".into()));
        r.lines.push(("PRECISION", "0".into()));
        assert_eq!(
            r.render(true),
            "result=VALID\nexit=0\ncond.verify.status=PASS\nrow.0=0 1\nrow.1=1 1 1\nprecision_used=0\n"
        );
        assert_eq!(r.render(false), "RESULT: VALID\nCOND verify PASS\nROW 0 1\nROW 1 1 1\nPRECISION 0\n");
    }

    #[test]
    fn inline_inputs_split_on_semicolons() {
        let (name, text) = read_input("type: A;n0: 2;tail: periodic (2,0,0)").unwrap();
        assert_eq!(name, "<inline>");
        assert!(matches!(AlgebraInput::parse(&text), Ok(AlgebraInput::Descriptor(_))));
    }

    #[test]
    fn precision_must_be_positive() {
        let p = |s: &str| precision(&Precision {
            precision: Some(s.into()),
        });
        assert_eq!(p("2^-10").unwrap(), BigRational::new(1.into(), 1024.into()));
        assert!(matches!(p("0"), Err(CliError::Usage(_))));
        assert!(matches!(p("x"), Err(CliError::Parse { .. })));
    }
}
