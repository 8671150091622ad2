//! Command-line front end. Every subcommand wires one module into a
//! machine-readable report; `verify-all` runs the full acceptance matrix.
//!
//! Exit codes: 0 when every asserted check in the invoked subcommand
//! passes, 1 on a computation failure or failed assertion, 2 on a usage
//! error. Report-only subcommands (plan, sum, lattice counts) assert
//! nothing beyond valid input; identities, the replay certificates,
//! remark, and verify-all assert their verdicts.

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::bounds::remark::{remark_ratios, sample_remark_points};
use crate::bounds::replay::{derive_theta, replay_section7, replay_section8};
use crate::bounds::{build_bound, eval_exponent, region_check, BoundId};
use crate::lattice::{
    circle_count, circle_report, divisor_sum, psi_check_rows, r_sum, CircleMethod,
    CountingProblem, DivisorMethod, LatticeReport, RESIDUAL_CAP_CIRCLE, RESIDUAL_CAP_DIVISOR,
};
use crate::planner::{nstar_fallback, plan, Constants, PlanCase, PlannerInput};
use crate::rational::parse_rat;
use crate::report;
use crate::sums::{eval_sum, fit_exponent, PhaseFamilyId, SumJob, SumMethod};
use crate::tables::identity_suite;
use crate::verify::{run_all, VerifyConfig};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "expsum",
    version,
    about = "Exponent bookkeeping, oscillatory sums, and lattice counts with exact arithmetic"
)]
pub struct Cli {
    /// Seed for sampled properties; a fixed seed makes the run reproducible.
    #[arg(long, global = true, default_value_t = 46)]
    pub seed: u64,

    /// Worker threads; 0 keeps the library default.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// Report format; each subcommand has a natural default (CSV for the
    /// tabular outputs, JSON otherwise).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Report file; stdout when absent. A relative path lands under
    /// $EXPSUM_OUT_DIR when that variable is set.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the rational identity suite (asserts every record holds).
    Identities,
    /// Catalog bounds: evaluate, derive the crossing, replay certificates.
    Bounds {
        #[command(subcommand)]
        cmd: BoundsCmd,
    },
    /// Block length, spacing moduli, and side conditions for one (H, M, T).
    Plan(PlanArgs),
    /// Evaluate oscillatory double sums.
    Sum {
        #[command(subcommand)]
        cmd: SumCmd,
    },
    /// Lattice counts and sawtooth-sum residuals.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Run the full acceptance matrix (asserts every criterion).
    VerifyAll(VerifyArgs),
}

#[derive(Subcommand, Debug)]
pub enum BoundsCmd {
    /// Evaluate one catalog bound at a rational point (h, m).
    Eval {
        /// Bound name, e.g. X46.
        #[arg(long)]
        id: String,
        #[arg(long)]
        nu: u32,
        /// log_T H as an exact rational "p/q".
        #[arg(long)]
        h: String,
        /// log_T M as an exact rational "p/q".
        #[arg(long)]
        m: String,
        /// Optional numeric log T for pricing the log-power conditions.
        #[arg(long)]
        log_t: Option<f64>,
    },
    /// Print the derived crossing exponent and balance aspect.
    Theta,
    /// Certify the max-min exponent over the admissible window (asserts).
    Replay7 {
        #[arg(long, default_value_t = 64)]
        grid: u32,
    },
    /// Replay the mean-square constant bookkeeping (asserts).
    Replay8,
    /// Sampled window check of the two scaled bound ratios (asserts).
    Remark {
        #[arg(long)]
        nu: u32,
        #[arg(long, default_value_t = 112)]
        samples: usize,
    },
    /// Apply a word of A- and B-processes to a seed exponent pair.
    Exppair {
        /// Word over {A, B}, applied right to left.
        #[arg(long)]
        word: String,
        #[arg(long, default_value = "0")]
        k: String,
        #[arg(long, default_value = "1")]
        l: String,
    },
}

#[derive(Args, Debug)]
pub struct PlanArgs {
    /// Block-length case, A or B.
    #[arg(long)]
    pub case: String,
    #[arg(long = "H")]
    pub h: f64,
    #[arg(long = "M")]
    pub m: f64,
    #[arg(long = "T")]
    pub t: f64,
    #[arg(long, default_value_t = 7)]
    pub nu: u32,
    #[arg(long = "C1")]
    pub c1: Option<f64>,
    #[arg(long = "C2")]
    pub c2: Option<f64>,
    #[arg(long = "C3")]
    pub c3: Option<f64>,
    #[arg(long = "C4")]
    pub c4: Option<f64>,
    #[arg(long = "C5")]
    pub c5: Option<f64>,
    #[arg(long = "B5")]
    pub b5: Option<f64>,
    #[arg(long = "B6")]
    pub b6: Option<f64>,
    #[arg(long = "B7prime")]
    pub b7prime: Option<f64>,
    #[arg(long = "B0")]
    pub b0: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub enum SumCmd {
    /// Rational-phase sum over h in [H, 2H], m in [M, 2M].
    S7 {
        #[arg(long = "H")]
        h: u64,
        #[arg(long = "M")]
        m: u64,
        #[arg(long = "T")]
        t: u64,
        #[arg(long, default_value_t = 0)]
        a: i64,
        #[arg(long, default_value_t = 0)]
        b: i64,
        /// Exact integer phase reduction (the default).
        #[arg(long, conflicts_with = "float")]
        exact: bool,
        /// Double-double phase path instead of the exact one.
        #[arg(long)]
        float: bool,
    },
    /// Log-phase sum over h in [H1, H], m in [M1, M].
    Star {
        #[arg(long = "T")]
        t: f64,
        #[arg(long = "H")]
        h: u64,
        #[arg(long = "H1")]
        h1: u64,
        #[arg(long = "M")]
        m: u64,
        #[arg(long = "M1")]
        m1: u64,
    },
    /// Weighted model sum with a named phase family.
    General {
        /// inverse_shift or log.
        #[arg(long)]
        phase: String,
        #[arg(long = "H")]
        h: f64,
        #[arg(long = "M")]
        m: f64,
        #[arg(long = "T")]
        t: f64,
        #[arg(long, default_value_t = 0)]
        a: i64,
        #[arg(long, default_value_t = 0)]
        b: i64,
    },
    /// Least-squares exponent of value against T from a CSV of samples.
    Fit {
        /// CSV with lines "T,value"; a non-numeric first line is a header.
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum LatticeCmd {
    /// Divisor-sum count, with the error-term report when X >= 4.
    Divisor {
        #[arg(long = "X")]
        x: f64,
        /// sieve or hyperbola.
        #[arg(long, default_value = "hyperbola")]
        method: String,
    },
    /// Disk lattice-point count, with the error-term report when X >= 4.
    Circle {
        #[arg(long = "X")]
        x: f64,
        /// brute or gauss.
        #[arg(long, default_value = "brute")]
        method: String,
    },
    /// Residual scan; emits CSV rows X, error_term, psi_side, residual.
    PsiCheck {
        #[arg(long, default_value_t = 100_000)]
        xmax: u64,
        #[arg(long, default_value_t = 1)]
        step: u64,
        /// divisor or circle.
        #[arg(long, default_value = "divisor")]
        problem: String,
    },
    /// Sawtooth sum over the dyadic block m in [M, 2M].
    Rsum {
        #[arg(long = "M")]
        m: u64,
        #[arg(long = "T")]
        t: u64,
        #[arg(long, default_value_t = 0)]
        a: i64,
        #[arg(long, default_value_t = 0)]
        b: i64,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Grid density for the crossing certificate.
    #[arg(long, default_value_t = 64)]
    pub grid: u32,
    /// Shrink every sampled budget for a fast smoke run (same verdicts).
    #[arg(long)]
    pub quick: bool,
    /// Fault-injection hook: perturb the derived crossing by this rational
    /// offset and watch criterion 4 fail by name.
    #[arg(long)]
    pub corrupt_theta: Option<String>,
}

/// Parse argv and execute. Returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    if cli.threads > 0 {
        // The pool can only be installed once per process; later calls with
        // the same flag are harmless because every merge is deterministic.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    match dispatch(&cli) {
        Ok(all_pass) => {
            if all_pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn resolve_output(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Some(dir) = std::env::var_os("EXPSUM_OUT_DIR") {
            return PathBuf::from(dir).join(path);
        }
    }
    path.to_path_buf()
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
        Some(p) => {
            let p = resolve_output(p);
            if let Some(dir) = p.parent() {
                if !dir.as_os_str().is_empty() {
                    fs::create_dir_all(dir)?;
                }
            }
            Ok(fs::write(p, text)?)
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report values are always serializable");
    s.push('\n');
    s
}

/// Key,value rows for reports that have no natural table shape; nested
/// values stay as compact JSON.
fn kv_csv(v: &Value) -> String {
    let mut out = String::from("key,value\n");
    if let Value::Object(map) = v {
        for (k, val) in map {
            let rendered = match val {
                Value::String(s) => s.clone(),
                other => serde_json::to_string(other).expect("serializable"),
            };
            let quoted = if rendered.contains(',') || rendered.contains('"') {
                format!("\"{}\"", rendered.replace('"', "\"\""))
            } else {
                rendered
            };
            out.push_str(&format!("{k},{quoted}\n"));
        }
    }
    out
}

/// Render a JSON-shaped report in the requested format.
fn render(v: &Value, format: Option<Format>) -> String {
    match format {
        Some(Format::Csv) => kv_csv(v),
        _ => json_text(v),
    }
}

fn dispatch(cli: &Cli) -> Result<bool> {
    let out = cli.output.as_deref();
    match &cli.command {
        Command::Identities => {
            let suite = identity_suite();
            let text = match cli.format {
                Some(Format::Json) => json_text(&report::identities_json(&suite)),
                _ => report::identities_csv(&suite),
            };
            emit(&text, out)?;
            Ok(suite.iter().all(|r| r.holds))
        }
        Command::Bounds { cmd } => run_bounds(cmd, cli, out),
        Command::Plan(args) => {
            let mut consts = Constants::default();
            if let Some(v) = args.c1 {
                consts.c1 = v;
            }
            if let Some(v) = args.c2 {
                consts.c2 = v;
            }
            if let Some(v) = args.c3 {
                consts.c3 = v;
            }
            if let Some(v) = args.c4 {
                consts.c4 = v;
            }
            if let Some(v) = args.c5 {
                consts.c5 = v;
            }
            if let Some(v) = args.b5 {
                consts.b5 = v;
            }
            if let Some(v) = args.b6 {
                consts.b6 = v;
            }
            if let Some(v) = args.b7prime {
                consts.b7prime = v;
            }
            if let Some(v) = args.b0 {
                consts.b0 = v;
            }
            let input = PlannerInput {
                case: PlanCase::from_str(&args.case)?,
                nu: args.nu,
                h: args.h,
                m: args.m,
                t: args.t,
                consts,
            };
            let rep = plan(&input)?;
            let fallback = nstar_fallback(args.h, args.m, args.t)?;
            emit(&render(&report::plan_json(&rep, Some(&fallback)), cli.format), out)?;
            Ok(true)
        }
        Command::Sum { cmd } => run_sum(cmd, cli, out),
        Command::Lattice { cmd } => run_lattice(cmd, cli, out),
        Command::VerifyAll(args) => {
            let mut cfg = VerifyConfig { seed: cli.seed, replay_grid: args.grid, ..VerifyConfig::default() };
            if args.quick {
                cfg.remark_samples = 104;
                cfg.exhaustive_xmax = 2_000;
                cfg.random_lattice_jobs = 200;
                cfg.sweep_xmax = 20_000;
                cfg.dual_jobs = 200;
                cfg.phase_grid = 2_000;
            }
            if let Some(off) = &args.corrupt_theta {
                cfg.theta_offset = Some(parse_rat(off)?);
            }
            let results = run_all(&cfg);
            let text = match cli.format {
                Some(Format::Json) => json_text(&report::verify_json(&results)),
                Some(Format::Csv) => report::verify_csv(&results),
                None => report::verify_matrix(&results),
            };
            emit(&text, out)?;
            Ok(results.iter().all(|r| r.passed))
        }
    }
}

fn run_bounds(cmd: &BoundsCmd, cli: &Cli, out: Option<&Path>) -> Result<bool> {
    match cmd {
        BoundsCmd::Eval { id, nu, h, m, log_t } => {
            let spec = build_bound(BoundId::from_str(id)?, *nu)?;
            let hq = parse_rat(h)?;
            let mq = parse_rat(m)?;
            let exponent = eval_exponent(&spec, &hq, &mq);
            let verdict = region_check(&spec, &hq, &mq, *log_t);
            emit(&render(&report::eval_json(&spec, &hq, &mq, &exponent, &verdict), cli.format), out)?;
            Ok(true)
        }
        BoundsCmd::Theta => {
            let sol = derive_theta()?;
            emit(&render(&report::theta_json(&sol), cli.format), out)?;
            Ok(true)
        }
        BoundsCmd::Replay7 { grid } => {
            let cert = replay_section7(*grid)?;
            let ok =
                cert.all_points_pass && cert.balance_line_attained && cert.max_min_exponent == cert.theta;
            emit(&render(&report::replay7_json(&cert), cli.format), out)?;
            Ok(ok)
        }
        BoundsCmd::Replay8 => {
            let cert = replay_section8()?;
            let ok = cert.ok;
            emit(&render(&report::replay8_json(&cert), cli.format), out)?;
            Ok(ok)
        }
        BoundsCmd::Remark { nu, samples } => {
            let points = sample_remark_points(*samples, cli.seed + *nu as u64);
            let ratios = remark_ratios(*nu, &points)?;
            let ok = ratios.all_in_window;
            emit(&render(&report::remark_json(&ratios), cli.format), out)?;
            Ok(ok)
        }
        BoundsCmd::Exppair { word, k, l } => {
            let seed = (parse_rat(k)?, parse_rat(l)?);
            let pair = crate::bounds::exppair::exponent_pair(word, seed.clone())?;
            emit(&render(&report::exppair_json(word, &seed, &pair), cli.format), out)?;
            Ok(true)
        }
    }
}

fn run_sum(cmd: &SumCmd, cli: &Cli, out: Option<&Path>) -> Result<bool> {
    let job = match cmd {
        SumCmd::S7 { h, m, t, a, b, float, .. } => {
            let job = SumJob::s7(*h, *m, *t, *a, *b);
            if *float {
                job.with_method(SumMethod::FloatDoubleDouble)
            } else {
                job
            }
        }
        SumCmd::Star { t, h, h1, m, m1 } => SumJob::star(*t, *h1, *h, *m1, *m),
        SumCmd::General { phase, h, m, t, a, b } => {
            SumJob::general(PhaseFamilyId::from_str(phase)?, *a, *b, *h, *m, *t)
        }
        SumCmd::Fit { input } => {
            let samples = read_fit_samples(input)?;
            let slope = fit_exponent(&samples)?;
            emit(&render(&report::fit_json(&samples, slope), cli.format), out)?;
            return Ok(true);
        }
    };
    let res = eval_sum(&job)?;
    emit(&render(&report::sum_json(&job, &res), cli.format), out)?;
    Ok(true)
}

fn read_fit_samples(path: &Path) -> Result<Vec<(f64, f64)>> {
    let text = fs::read_to_string(path)?;
    let mut samples = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let t = parts.next().unwrap_or("").trim().parse::<f64>();
        let v = parts.next().unwrap_or("").trim().parse::<f64>();
        match (t, v) {
            (Ok(t), Ok(v)) => samples.push((t, v)),
            _ if i == 0 => continue,
            _ => {
                return Err(Error::BadInput(format!(
                    "line {} of {} is not \"T,value\"",
                    i + 1,
                    path.display()
                )))
            }
        }
    }
    Ok(samples)
}

fn lattice_count_report(
    problem: &str,
    x: f64,
    method: &str,
    count: u64,
    rep: Option<(LatticeReport, f64)>,
) -> Value {
    let mut v = report::lattice_count_json(x, method, count);
    if let Some((rep, cap)) = rep {
        if let Value::Object(full) = report::lattice_report_json(problem, &rep, cap) {
            for (k, val) in full {
                v[k] = val;
            }
        }
    } else {
        v["problem"] = Value::String(problem.to_string());
    }
    v
}

fn run_lattice(cmd: &LatticeCmd, cli: &Cli, out: Option<&Path>) -> Result<bool> {
    match cmd {
        LatticeCmd::Divisor { x, method } => {
            let m = DivisorMethod::from_str(method)?;
            let count = divisor_sum(*x, m)?;
            let rep = if *x >= 4.0 {
                Some((crate::lattice::delta_report(*x)?, RESIDUAL_CAP_DIVISOR))
            } else {
                None
            };
            let v = lattice_count_report("divisor", *x, method, count, rep);
            emit(&render(&v, cli.format), out)?;
            Ok(true)
        }
        LatticeCmd::Circle { x, method } => {
            let m = CircleMethod::from_str(method)?;
            let count = circle_count(*x, m)?;
            let rep = if *x >= 4.0 {
                Some((circle_report(*x)?, RESIDUAL_CAP_CIRCLE))
            } else {
                None
            };
            let v = lattice_count_report("circle", *x, method, count, rep);
            emit(&render(&v, cli.format), out)?;
            Ok(true)
        }
        LatticeCmd::PsiCheck { xmax, step, problem } => {
            let prob = CountingProblem::from_str(problem)?;
            let rows = psi_check_rows(*xmax, *step, prob)?;
            let cap = match prob {
                CountingProblem::Divisor => RESIDUAL_CAP_DIVISOR,
                CountingProblem::Circle => RESIDUAL_CAP_CIRCLE,
            };
            let text = match cli.format {
                Some(Format::Json) => json_text(&report::psi_check_json(problem, &rows, cap)),
                _ => report::psi_check_csv(&rows),
            };
            emit(&text, out)?;
            Ok(true)
        }
        LatticeCmd::Rsum { m, t, a, b } => {
            let value = r_sum(*m, *t, *a, *b)?;
            emit(&render(&report::rsum_json(*m, *t, *a, *b, value), cli.format), out)?;
            Ok(true)
        }
    }
}
