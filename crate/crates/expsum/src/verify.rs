//! The one-shot acceptance runner. Every shipped claim is a named
//! criterion with a timed pass/fail verdict and a one-line detail, so a
//! single call audits the whole artifact.
//!
//! Criterion 10 is expected to fail: the log phase family genuinely
//! bottoms out at curvature 1/16, below the 1/14 floor the stock constant
//! asks for. The runner reports that honestly instead of loosening the
//! constant behind the scenes; see the criterion detail and the README.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds;
use crate::bounds::remark::{remark_ratios, sample_remark_points};
use crate::bounds::replay::{derive_theta, derive_theta_with_offset, replay_section7};
use crate::lattice::{
    circle_count, circle_cumulative, delta_samples, divisor_cumulative, divisor_sum,
    residual_sweep, CircleMethod, DivisorMethod, RESIDUAL_CAP_CIRCLE, RESIDUAL_CAP_DIVISOR,
};
use crate::rational::{fmt_rat, rat, Rat};
use crate::sums::{check_phase_conditions, eval_sum, fit_exponent, PhaseFamily, SumJob, SumMethod};
use crate::tables::{
    exponent_table, identity_suite, q_of_nu, BALANCE_X, RHO_MEAN_SQUARE, THETA,
};
use crate::Result;

/// Knobs for the acceptance run. Defaults match the documented budgets;
/// `theta_offset` is a fault-injection hook that perturbs the derived
/// crossing so failure reporting can be exercised end to end.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub replay_grid: u32,
    pub remark_samples: usize,
    pub exhaustive_xmax: u64,
    pub random_lattice_jobs: usize,
    pub sweep_xmax: u64,
    pub dual_jobs: usize,
    pub phase_grid: usize,
    pub theta_offset: Option<Rat>,
}

impl Default for VerifyConfig {
    fn default() -> VerifyConfig {
        VerifyConfig {
            seed: 46,
            replay_grid: 64,
            remark_samples: 112,
            exhaustive_xmax: 10_000,
            random_lattice_jobs: 1_000,
            sweep_xmax: 100_000,
            dual_jobs: 1_000,
            phase_grid: 10_000,
            theta_offset: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub index: u32,
    pub name: &'static str,
    pub passed: bool,
    pub millis: u128,
    pub detail: String,
}

pub const CRITERION_NAMES: [&str; 11] = [
    "rational-identity-suite",
    "exponent-tables",
    "constant-closure",
    "theta-replay",
    "exponent-pair-word",
    "remark-ratio-window",
    "lattice-dual-routes",
    "sawtooth-residual-caps",
    "dual-phase-paths",
    "phase-condition-constants",
    "report-only-slope-fit",
];

fn criterion_1(_cfg: &VerifyConfig) -> Result<(bool, String)> {
    let start = Instant::now();
    let suite = identity_suite();
    let all = suite.iter().all(|r| r.holds);
    let enough = suite.len() >= 20;
    let fast = start.elapsed().as_secs_f64() < 1.0;
    Ok((
        all && enough && fast,
        format!("{} records, all_hold = {all}, under 1 s = {fast}", suite.len()),
    ))
}

fn criterion_2(_cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut ok = q_of_nu(3) == rat(30, 7) && q_of_nu(6) == rat(84, 19) && q_of_nu(7) == rat(102, 23);
    let t3 = exponent_table(3)?;
    let t6 = exponent_table(6)?;
    let t7 = exponent_table(7)?;
    ok &= t7.rho == rat(7, 102);
    ok &= &t3.alpha.1 / &t3.alpha.0 == rat(49, 164);
    ok &= &t6.alpha.1 / &t6.alpha.0 == rat(247, 792);
    let mut increasing = true;
    let mut in_window = q_of_nu(3) == rat(30, 7);
    for nu in 3..=64u32 {
        let q = q_of_nu(nu);
        in_window &= q >= rat(30, 7) && q < rat(9, 2);
        if nu > 3 {
            increasing &= q > q_of_nu(nu - 1);
        }
    }
    Ok((
        ok && increasing && in_window,
        format!(
            "anchors = {ok}, q strictly increasing = {increasing}, q in [30/7, 9/2) = {in_window}"
        ),
    ))
}

fn criterion_3(_cfg: &VerifyConfig) -> Result<(bool, String)> {
    let want3: Vec<Rat> = [(19, 750), (161, 500), (73, 750), (1681, 6000)]
        .iter()
        .map(|&(p, q)| rat(p, q))
        .collect();
    let want6: Vec<Rat> = [(2, 105), (179, 560), (113, 1050), (146, 525)]
        .iter()
        .map(|&(p, q)| rat(p, q))
        .collect();
    let want7: Vec<Rat> = [
        (2597, 2550),
        (543, 1700),
        (54, 425),
        (847, 20400),
        (128, 1275),
        (643, 20400),
    ]
    .iter()
    .map(|&(p, q)| rat(p, q))
    .collect();
    let got3 = bounds::closure_tuple(3)?;
    let got6 = bounds::closure_tuple(6)?;
    let got7 = bounds::closure_tuple(7)?;
    let ok = got3 == want3 && got6 == want6 && got7 == want7;
    Ok((ok, format!("nu=3: {}, nu=6: {}, nu=7: {}", got3 == want3, got6 == want6, got7 == want7)))
}

fn criterion_4(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let start = Instant::now();
    let sol = match &cfg.theta_offset {
        None => derive_theta()?,
        Some(off) => derive_theta_with_offset(off)?,
    };
    let anchors = sol.theta == *THETA && sol.balance == *BALANCE_X;
    if !anchors {
        return Ok((
            false,
            format!(
                "derived crossing ({}, {}) is off the recorded anchors",
                fmt_rat(&sol.theta),
                fmt_rat(&sol.balance)
            ),
        ));
    }
    let grid = cfg.replay_grid.max(64);
    let cert = replay_section7(grid)?;
    let ok = cert.all_points_pass
        && cert.max_min_exponent == *THETA
        && cert.balance_line_attained
        && start.elapsed().as_secs_f64() < 60.0;
    Ok((
        ok,
        format!(
            "grid {} ({} points): max-min = {}, balance line attained = {}, all pass = {}",
            grid,
            cert.points_checked,
            fmt_rat(&cert.max_min_exponent),
            cert.balance_line_attained,
            cert.all_points_pass
        ),
    ))
}

fn criterion_5(_cfg: &VerifyConfig) -> Result<(bool, String)> {
    let pair = bounds::exppair::exponent_pair("BAAB", (rat(0, 1), rat(1, 1)))?;
    let ok = pair == (rat(2, 7), rat(4, 7));
    Ok((ok, format!("BAAB(0, 1) = ({}, {})", fmt_rat(&pair.0), fmt_rat(&pair.1))))
}

fn criterion_6(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut ok = true;
    let mut least_usable = usize::MAX;
    for nu in 3..=8u32 {
        let points = sample_remark_points(cfg.remark_samples, cfg.seed + nu as u64);
        let ratios = remark_ratios(nu, &points)?;
        let usable = ratios.upsilon_samples.len().min(ratios.zeta_samples.len());
        least_usable = least_usable.min(usable);
        ok &= ratios.all_in_window && usable >= 100;
    }
    Ok((
        ok,
        format!("nu in 3..=8, >= {least_usable} usable samples each, window (67/100, 28/25]"),
    ))
}

fn criterion_7(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let start = Instant::now();
    let xmax = cfg.exhaustive_xmax;
    let div = divisor_cumulative(xmax)?;
    let circ = circle_cumulative(xmax)?;
    let mut exhaustive = circle_count(0.0, CircleMethod::Brute)? == circ[0];
    for x in 1..=xmax {
        exhaustive &= divisor_sum(x as f64, DivisorMethod::Hyperbola)? == div[x as usize];
        exhaustive &= circle_count(x as f64, CircleMethod::Brute)? == circ[x as usize];
        exhaustive &= circle_count(x as f64, CircleMethod::Gauss)? == circ[x as usize];
    }
    let big = divisor_cumulative(1_000_000)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut random = true;
    for _ in 0..cfg.random_lattice_jobs {
        let x: f64 = rng.gen_range(1.0..1e6);
        random &= divisor_sum(x, DivisorMethod::Hyperbola)? == big[x.floor() as usize];
        random &= circle_count(x, CircleMethod::Brute)? == circle_count(x, CircleMethod::Gauss)?;
    }
    for _ in 0..10 {
        let x: f64 = rng.gen_range(1.0..1e5);
        random &= divisor_sum(x, DivisorMethod::Sieve)? == divisor_sum(x, DivisorMethod::Hyperbola)?;
    }
    let fast = start.elapsed().as_secs_f64() < 60.0;
    Ok((
        exhaustive && random && fast,
        format!(
            "integer X <= {xmax} exhaustive = {exhaustive}, {} random real X = {random}, under 1 min = {fast}",
            cfg.random_lattice_jobs
        ),
    ))
}

fn criterion_8(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let base = residual_sweep(cfg.sweep_xmax)?;
    let doubled = residual_sweep(2 * cfg.sweep_xmax)?;
    let capped = base.divisor_sup <= RESIDUAL_CAP_DIVISOR
        && doubled.divisor_sup <= RESIDUAL_CAP_DIVISOR
        && base.circle_sup <= RESIDUAL_CAP_CIRCLE
        && doubled.circle_sup <= RESIDUAL_CAP_CIRCLE;
    let stable = doubled.divisor_sup <= 1.1 * base.divisor_sup
        && doubled.circle_sup <= 1.1 * base.circle_sup;
    Ok((
        capped && stable,
        format!(
            "divisor sup {:.8} -> {:.8} (cap {RESIDUAL_CAP_DIVISOR}), circle sup {:.8} -> {:.8} (cap {RESIDUAL_CAP_CIRCLE}), growth within 10% = {stable}",
            base.divisor_sup, doubled.divisor_sup, base.circle_sup, doubled.circle_sup
        ),
    ))
}

fn criterion_9(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e3779b97f4a7c15);
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for _ in 0..cfg.dual_jobs {
        let t = rng.gen_range(1..=1_000_000_000u64);
        let m = (10f64.powf(rng.gen_range(0.0..5.0)) as u64).clamp(1, 100_000);
        let h_cap = (50_000 / (m + 1)).max(1).min(64);
        let h = rng.gen_range(1..=h_cap);
        let a = [-1, 0, 1][rng.gen_range(0..3)];
        let b = if a == 0 { [-1, 0, 1][rng.gen_range(0..3)] } else { 0 };
        let job = SumJob::s7(h, m, t, a, b);
        let exact = eval_sum(&job)?;
        let float = eval_sum(&job.with_method(SumMethod::FloatDoubleDouble))?;
        let diff = (exact.value - float.value).norm();
        let tol = 1e-6 * exact.value.norm() + 1e-9 * exact.weight_sum;
        worst = worst.max(diff / tol.max(f64::MIN_POSITIVE));
        ok &= diff <= tol;
    }
    Ok((
        ok,
        format!(
            "{} jobs (T <= 1e9, M <= 1e5): paths agree to 1e-6 relative, worst diff/tol = {worst:.3}",
            cfg.dual_jobs
        ),
    ))
}

fn criterion_10(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let stock = (14.0, 14.0, 14.0, 14.0);
    let mut shifted_ok = true;
    for (a, b) in [(0i64, 0i64), (1, 0), (-1, 0), (0, 1), (0, -1)] {
        for m in [3.0, 7.0, 100.0, 10_000.0] {
            for t_over_m2 in [1.0, 10.0] {
                let fam = PhaseFamily::inverse_shift(a, b, m, t_over_m2 * m * m)?;
                shifted_ok &= check_phase_conditions(&fam, stock, cfg.phase_grid)?.ok;
            }
        }
    }
    let log_fam = PhaseFamily::log(100.0, 1e6);
    let log_stock = check_phase_conditions(&log_fam, stock, cfg.phase_grid)?;
    let log_relaxed = check_phase_conditions(&log_fam, (14.0, 14.0, 14.0, 16.0), cfg.phase_grid)?;
    let log_floor = log_stock.witnesses.curvature.min;
    let passed = shifted_ok && log_stock.ok;
    Ok((
        passed,
        format!(
            "shifted-reciprocal family holds at C = 14 ({shifted_ok}); log family curvature bottoms at {log_floor} = 1/16 < 1/14, so C = 14 fails ({}) and C4 = 16 holds ({}) - expected failure",
            log_stock.ok, log_relaxed.ok
        ),
    ))
}

fn criterion_11(_cfg: &VerifyConfig) -> Result<(bool, String)> {
    let samples = delta_samples(10, 20)?;
    let slope = fit_exponent(&samples)?;
    let statement_anchors = *THETA == rat(517, 1648) && *RHO_MEAN_SQUARE == rat(7159, 22824);
    Ok((
        statement_anchors && slope.is_finite(),
        format!(
            "asymptotic exponents 517/1648 and 7159/22824 are not reachable at desk scale; fitted |error| slope over X = 2^10..2^20 is {slope:.4}, reported only, never gated"
        ),
    ))
}

pub fn run_one(index: u32, cfg: &VerifyConfig) -> CriterionResult {
    let runners: [fn(&VerifyConfig) -> Result<(bool, String)>; 11] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
    ];
    let name = CRITERION_NAMES[(index - 1) as usize];
    let start = Instant::now();
    let (passed, detail) = match runners[(index - 1) as usize](cfg) {
        Ok(pair) => pair,
        Err(e) => (false, format!("hard failure: {e}")),
    };
    CriterionResult { index, name, passed, millis: start.elapsed().as_millis(), detail }
}

/// Runs all criteria in order. A hard failure is recorded in its row and
/// the run continues to the end.
pub fn run_all(cfg: &VerifyConfig) -> Vec<CriterionResult> {
    (1..=11).map(|i| run_one(i, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_criteria_pass_with_defaults() {
        let cfg = VerifyConfig::default();
        for index in [1, 2, 3, 5] {
            let r = run_one(index, &cfg);
            assert!(r.passed, "criterion {index} ({}) failed: {}", r.name, r.detail);
        }
    }

    #[test]
    fn a_corrupted_crossing_is_reported_as_a_named_failure() {
        let cfg = VerifyConfig { theta_offset: Some(rat(1, 1000)), ..VerifyConfig::default() };
        let r = run_one(4, &cfg);
        assert!(!r.passed);
        assert_eq!(r.name, "theta-replay");
        assert!(r.detail.contains("off the recorded anchors"), "{}", r.detail);
    }

    #[test]
    fn a_coarse_replay_grid_reaches_the_same_verdict() {
        let quick = VerifyConfig { replay_grid: 1, ..VerifyConfig::default() };
        let r = run_one(4, &quick);
        assert!(r.passed, "{}", r.detail);
    }

    #[test]
    fn the_log_family_clause_fails_for_the_documented_reason() {
        let cfg = VerifyConfig { phase_grid: 2000, ..VerifyConfig::default() };
        let r = run_one(10, &cfg);
        assert!(!r.passed);
        assert!(r.detail.contains("expected failure"), "{}", r.detail);
        assert!(r.detail.contains("1/16"), "{}", r.detail);
    }
}
