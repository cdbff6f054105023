//! Command-line front end. Every subcommand is a thin wrapper over library
//! operations; this module only parses, formats and maps errors to exit codes.
//!
//! Human-readable lines use 9 significant digits. CSV and JSON keep full
//! precision so that they round-trip.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{check_alpha, Error, Result};
use crate::family::{FamilyConfig, VolumeAssignment};
use crate::geometry::{BubblePair, RectilinearPolygon};
use crate::kkt::{
    critical_alphas, global_minimizer, per_assignment_minimum, BranchLabel, BranchSolution,
};
use crate::oracle::{
    certify_lower_bound, check_minimizers, detect_kinks, kink_discrepancies, oracle_agreement,
};
use crate::reduce::{normalize_scale, reduce, Reduction};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "dbubble", version, about = "Optimal l1 double bubbles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimal perimeter and minimizing branch for one ratio.
    #[command(allow_negative_numbers = true)]
    Eval {
        #[arg(long)]
        alpha: f64,
    },
    /// Minimal perimeter over an evenly spaced range of ratios.
    #[command(allow_negative_numbers = true)]
    Sweep {
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        /// One row per volume assignment instead of the overall minimum.
        #[arg(long)]
        per_assignment: bool,
        #[arg(long, value_enum)]
        format: Format,
    },
    /// The minimizing shape for one ratio, as text, JSON or SVG.
    #[command(allow_negative_numbers = true)]
    Shape {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Reduce a rectilinear pair read from JSON into the configuration family.
    Reduce {
        #[arg(long)]
        input: PathBuf,
        /// Rescale so the larger region has area 1 first.
        #[arg(long)]
        normalize: bool,
    },
    /// Run a verification suite; exits 2 on any violation.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        levels: usize,
    },
    /// The two critical ratios.
    Critical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Kkt,
    Reduce,
    Oracle,
    Kinks,
}

enum Failure {
    Invalid(Error),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Invalid(Error::Io(e))
    }
}

/// Parses `argv` (program name first) and runs the subcommand against the
/// process's stdout and stderr.
pub fn run<I: IntoIterator<Item = String>>(argv: I) -> i32 {
    let (stdout, stderr) = (io::stdout(), io::stderr());
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`run`], with explicit output streams.
pub fn run_with<I: IntoIterator<Item = String>>(
    argv: I,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Invalid(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
        Err(Failure::Verify(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            EXIT_VERIFY
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    match command {
        Command::Eval { alpha } => eval(alpha, out),
        Command::Sweep {
            from,
            to,
            steps,
            per_assignment,
            format,
        } => {
            let rows = sweep(&linspace(from, to, steps)?, per_assignment)?;
            match format {
                Format::Csv => write_csv(&rows, out)?,
                Format::Json => {
                    serde_json::to_writer_pretty(&mut *out, &rows).map_err(Error::from)?;
                    writeln!(out)?;
                }
            }
            Ok(())
        }
        Command::Shape { alpha, svg, json } => shape(alpha, svg, json, out),
        Command::Reduce { input, normalize } => reduce_file(input, normalize, out),
        Command::Verify {
            suite,
            samples,
            seed,
            levels,
        } => verify(suite, samples, seed, levels, out),
        Command::Critical => {
            let c = critical_alphas();
            writeln!(out, "first {}", fmt_sig(c.first, 9))?;
            writeln!(out, "second {}", fmt_sig(c.second, 9))?;
            writeln!(out, "bisection {}", fmt_sig(c.bisection_root, 9))?;
            writeln!(out, "residual {}", fmt_sig(c.residual, 9))?;
            Ok(())
        }
    }
}

fn eval(alpha: f64, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let res = global_minimizer(alpha)?;
    writeln!(out, "alpha {}", fmt_sig(res.alpha, 9))?;
    writeln!(out, "perimeter {}", fmt_sig(res.perimeter, 9))?;
    writeln!(out, "branch {}", res.branch_label)?;
    for sol in &res.minimizers {
        writeln!(out, "minimizer {}", describe(sol))?;
    }
    Ok(())
}

fn shape(
    alpha: f64,
    svg: Option<PathBuf>,
    json: bool,
    out: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    let res = global_minimizer(alpha)?;
    let cfg = res.minimizers[0]
        .config
        .expect("minimizers carry a configuration");
    if json {
        serde_json::to_writer_pretty(&mut *out, &cfg).map_err(Error::from)?;
        writeln!(out)?;
    } else {
        writeln!(out, "{}", describe(&res.minimizers[0]))?;
    }
    if let Some(path) = svg {
        let mut buf = Vec::new();
        render_svg(&cfg, &mut buf)?;
        fs::write(path, buf)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ReduceOutput {
    /// Factor applied to the input when `--normalize` was given.
    scale: Option<f64>,
    perimeter: f64,
    reduction: Reduction,
}

fn reduce_file(
    input: PathBuf,
    normalize: bool,
    out: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    let text = fs::read_to_string(&input)?;
    let pair: BubblePair = serde_json::from_str(&text)
        .map_err(|e| Error::MalformedInput(format!("{}: {e}", input.display())))?;
    let (pair, scale) = if normalize {
        let (p, s) = normalize_scale(&pair)?;
        (p, Some(s))
    } else {
        (pair, None)
    };
    let reduction = reduce(&pair)?;
    let report = ReduceOutput {
        scale,
        perimeter: reduction.perimeter(),
        reduction,
    };
    serde_json::to_writer_pretty(&mut *out, &report).map_err(Error::from)?;
    writeln!(out)?;
    Ok(())
}

/// Ratios exercised by `verify --suite reduce`: both sides of each critical ratio and the endpoint.
const REDUCE_ALPHAS: [f64; 6] = [0.05, 0.15, 0.25, 0.5, 0.75, 1.0];

fn verify(
    suite: Suite,
    samples: Option<usize>,
    seed: u64,
    levels: usize,
    out: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    let violations = match suite {
        Suite::Kkt => {
            let rep = check_minimizers(samples.unwrap_or(10_000), seed)?;
            emit(out, &rep)?;
            rep.violations
        }
        Suite::Reduce => {
            let n = samples.unwrap_or(1000);
            let mut all = Vec::new();
            for (i, &alpha) in REDUCE_ALPHAS.iter().enumerate() {
                let rep = certify_lower_bound(alpha, n, seed.wrapping_add(i as u64))?;
                all.extend(rep.violations.iter().map(|v| format!("alpha {alpha}: {v}")));
                emit(out, &rep)?;
            }
            all
        }
        Suite::Oracle => {
            let rep = oracle_agreement(samples.unwrap_or(50), levels)?;
            emit(out, &rep)?;
            rep.violations
        }
        Suite::Kinks => {
            let rep = detect_kinks(1e-4, 1e-5)?;
            emit(out, &rep)?;
            kink_discrepancies(&rep, 1e-4)
        }
    };
    match violations.first() {
        None => Ok(()),
        Some(first) => Err(Failure::Verify(format!(
            "{} violation(s); first: {first}",
            violations.len()
        ))),
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> std::result::Result<(), Failure> {
    serde_json::to_writer(&mut *out, value).map_err(Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn describe(sol: &BranchSolution) -> String {
    let mut s = format!(
        "{} ({}, {}) perimeter {}",
        sol.branch,
        fmt_sig(sol.assignment.beta, 9),
        fmt_sig(sol.assignment.gamma, 9),
        fmt_sig(sol.perimeter, 9)
    );
    if let Some(cfg) = &sol.config {
        s.push_str(&format!(" {}", cfg.variant_name()));
        for (name, v) in cfg.params() {
            s.push_str(&format!(" {name}={}", fmt_sig(v, 9)));
        }
    }
    s
}

/// Formats `x` with `digits` significant digits, trailing zeros removed.
/// Magnitudes below 1e-4 or from 1e9 up use exponent notation.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..9).contains(&exp) {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `steps` evenly spaced ratios from `from` to `to` inclusive.
pub fn linspace(from: f64, to: f64, steps: usize) -> Result<Vec<f64>> {
    check_alpha(from)?;
    check_alpha(to)?;
    if steps == 0 {
        return Err(Error::MalformedInput("--steps must be at least 1".into()));
    }
    if from > to {
        return Err(Error::MalformedInput(format!(
            "--from {from} exceeds --to {to}"
        )));
    }
    if steps == 1 {
        return Ok(vec![from]);
    }
    let span = to - from;
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| {
            if k + 1 == steps {
                to
            } else {
                from + span * k as f64 / last
            }
        })
        .collect())
}

/// One line of a sweep. Per-assignment rows carry the requested assignment;
/// overall rows carry the assignment of the first minimizer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub perimeter: f64,
    pub branch_label: BranchLabel,
    pub assignment: VolumeAssignment,
    pub config: FamilyConfig,
}

pub fn sweep(alphas: &[f64], per_assignment: bool) -> Result<Vec<SweepRow>> {
    let mut sorted = alphas.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut rows = Vec::new();
    for alpha in sorted {
        if per_assignment {
            for asg in VolumeAssignment::both(alpha) {
                let sol = per_assignment_minimum(alpha, asg)?;
                rows.push(row(alpha, asg, &sol));
            }
        } else {
            let res = global_minimizer(alpha)?;
            let sol = &res.minimizers[0];
            rows.push(row(alpha, sol.assignment, sol));
        }
    }
    Ok(rows)
}

fn row(alpha: f64, assignment: VolumeAssignment, sol: &BranchSolution) -> SweepRow {
    SweepRow {
        alpha,
        perimeter: sol.perimeter,
        branch_label: sol.branch,
        assignment,
        config: sol.config.expect("minimizers carry a configuration"),
    }
}

pub const CSV_HEADER: [&str; 10] = [
    "alpha",
    "perimeter",
    "branch",
    "assignment",
    "a",
    "b",
    "c",
    "d",
    "e",
    "f",
];

/// Assignment column spelling: `beta:gamma`.
fn assignment_field(asg: VolumeAssignment) -> String {
    format!("{}:{}", asg.beta, asg.gamma)
}

pub fn write_csv(rows: &[SweepRow], out: &mut dyn Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Io(io::Error::other(e));
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        let mut rec = vec![
            r.alpha.to_string(),
            r.perimeter.to_string(),
            r.branch_label.to_string(),
            assignment_field(r.assignment),
        ];
        let params = r.config.params();
        for name in &CSV_HEADER[4..] {
            rec.push(
                params
                    .iter()
                    .find(|(n, _)| n == name)
                    .map(|(_, v)| v.to_string())
                    .unwrap_or_default(),
            );
        }
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Parsed CSV line: the columns as written by [`write_csv`].
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct CsvRow {
    pub alpha: f64,
    pub perimeter: f64,
    pub branch: String,
    pub assignment: String,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub d: Option<f64>,
    pub e: Option<f64>,
    pub f: Option<f64>,
}

impl CsvRow {
    pub fn volume_assignment(&self) -> Result<VolumeAssignment> {
        let bad = || Error::MalformedInput(format!("assignment field {:?}", self.assignment));
        let (b, g) = self.assignment.split_once(':').ok_or_else(bad)?;
        VolumeAssignment::new(b.parse().map_err(|_| bad())?, g.parse().map_err(|_| bad())?)
    }
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<CsvRow>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .collect::<std::result::Result<Vec<CsvRow>, _>>()
        .map_err(|e| Error::MalformedInput(e.to_string()))
}

/// Draws both regions of `realize(cfg)` with side lengths at 6 significant
/// digits. The y axis points up. Output depends only on `cfg`.
pub fn render_svg(cfg: &FamilyConfig, out: &mut dyn Write) -> Result<()> {
    let violations = cfg.shape_violations();
    if let Some(v) = violations.first() {
        return Err(Error::Constraint(v.clone()));
    }
    let pair = cfg.realize()?;
    let bbox = pair
        .first()
        .bounding_box()
        .union(&pair.second().bounding_box());
    let (mx, my) = (0.1 * bbox.width(), 0.1 * bbox.height());
    let (x0, y0) = (bbox.left - mx, bbox.bottom - my);
    let (w, h) = (bbox.width() + 2.0 * mx, bbox.height() + 2.0 * my);
    let flip = |y: f64| bbox.bottom + bbox.top - y;
    let size = 0.035 * w.max(h);
    let stroke = 0.004 * w.max(h);

    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        fmt_sig(x0, 9),
        fmt_sig(y0, 9),
        fmt_sig(w, 9),
        fmt_sig(h, 9)
    )?;
    writeln!(out, "<!-- {} -->", describe_params(cfg))?;
    let mut labelled = BTreeSet::new();
    let mut labels = String::new();
    for (poly, fill) in [(pair.first(), "#9ecae1"), (pair.second(), "#fdae6b")] {
        let points: Vec<String> = poly
            .vertices()
            .iter()
            .map(|p| format!("{},{}", fmt_sig(p.x, 9), fmt_sig(flip(p.y), 9)))
            .collect();
        writeln!(
            out,
            r#"<polygon points="{}" fill="{fill}" stroke="black" stroke-width="{}"/>"#,
            points.join(" "),
            fmt_sig(stroke, 6)
        )?;
        edge_labels(poly, &flip, size, &mut labelled, &mut labels);
    }
    out.write_all(labels.as_bytes())?;
    writeln!(out, "</svg>")?;
    Ok(())
}

fn describe_params(cfg: &FamilyConfig) -> String {
    let params: Vec<String> = cfg
        .params()
        .iter()
        .map(|(n, v)| format!("{n}={}", fmt_sig(*v, 6)))
        .collect();
    format!("{} {}", cfg.variant_name(), params.join(" "))
}

/// One label per distinct edge midpoint, so shared walls are labelled once.
fn edge_labels(
    poly: &RectilinearPolygon,
    flip: &dyn Fn(f64) -> f64,
    size: f64,
    seen: &mut BTreeSet<(String, String)>,
    labels: &mut String,
) {
    let vs = poly.vertices();
    for (i, p) in vs.iter().enumerate() {
        let q = vs[(i + 1) % vs.len()];
        let len = (q.x - p.x).abs() + (q.y - p.y).abs();
        let (cx, cy) = (0.5 * (p.x + q.x), flip(0.5 * (p.y + q.y)));
        let key = (fmt_sig(cx, 9), fmt_sig(cy, 9));
        if !seen.insert(key.clone()) {
            continue;
        }
        labels.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"{}\" text-anchor=\"middle\">{}</text>\n",
            key.0,
            key.1,
            fmt_sig(size, 6),
            fmt_sig(len, 6)
        ));
    }
}
