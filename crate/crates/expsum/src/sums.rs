//! Oscillatory double sums over integer rectangles: the weighted model sum
//! with a shifted-reciprocal or logarithmic phase, its rational-phase
//! instance with exact integer argument reduction, the two-sided log-phase
//! sum `S*`, and the sawtooth truncation with a calibrated error constant.

use std::f64::consts::{PI, TAU};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::dd::Dd;
use crate::rational::{rat, Rat};
use crate::{Error, Result};

/// Centered fractional part: `psi(y) = y - floor(y) - 1/2`.
///
/// Takes the value -1/2 at integers and stays in [-1/2, 1/2).
pub fn psi(y: f64) -> f64 {
    y - y.floor() - 0.5
}

/// Exact rational counterpart of [`psi`].
pub fn psi_rat(y: &Rat) -> Rat {
    y - y.floor() - rat(1, 2)
}

/// Cap on `|psi(y) - approx| * (1 + K * dist(y, Z))` for the truncated
/// sine series of [`psi_truncated`].
///
/// Calibrated over 10^6-point grids of [0, 1) at K in {10, 100, 1000}: the
/// supremum of that product is 1/2, attained in the limit at integer
/// arguments, where the series vanishes while psi jumps. The extra 2 %
/// absorbs rounding in the sine recurrence.
pub const PSI_TRUNCATION_C: f64 = 0.51;

/// Truncated Fourier approximation of the sawtooth together with its
/// error cap.
#[derive(Clone, Copy, Debug)]
pub struct PsiTruncation {
    /// `-sum_{0 < h <= K} sin(2 pi h y) / (pi h)`.
    pub approx: f64,
    /// `PSI_TRUNCATION_C / (1 + K * dist(y, Z))`.
    pub bound: f64,
}

/// Evaluates the K-term sine series for psi at y, with the calibrated cap
/// on its error. Requires K >= 1.
///
/// The sines are generated by a rotation recurrence, so the cost is a few
/// flops per term; the recurrence drift (~K ulps) is far below the cap.
pub fn psi_truncated(y: f64, k: f64) -> Result<PsiTruncation> {
    if !k.is_finite() || k < 1.0 {
        return Err(Error::BadInput(format!("truncation length K must be >= 1, got {k}")));
    }
    let terms = k.floor() as u64;
    let ang = TAU * (y - y.floor());
    let (s1, c1) = ang.sin_cos();
    let (mut s, mut c) = (0.0_f64, 1.0_f64);
    let mut acc = 0.0;
    for h in 1..=terms {
        let (ns, nc) = (s * c1 + c * s1, c * c1 - s * s1);
        s = ns;
        c = nc;
        acc += s / h as f64;
    }
    let dist = (y - y.round()).abs();
    Ok(PsiTruncation {
        approx: -acc / PI,
        bound: PSI_TRUNCATION_C / (1.0 + k * dist),
    })
}

/// How a job's phases were computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumMethod {
    /// Arguments reduced mod 1 with arbitrary-precision integers, then
    /// converted once to f64.
    ExactIntegerPhase,
    /// Phases carried in double-double (~31 digits) and reduced there.
    FloatDoubleDouble,
}

impl SumMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SumMethod::ExactIntegerPhase => "exact_integer_phase",
            SumMethod::FloatDoubleDouble => "float_double_double",
        }
    }
}

/// Weight profile on [1, 2], evaluated at h/H or m/M.
#[derive(Clone, Debug)]
pub enum Weight {
    One,
    Reciprocal,
    /// Piecewise-linear table of (x, w) nodes with strictly increasing x;
    /// clamped outside the tabulated range.
    Table(Vec<(f64, f64)>),
}

impl Weight {
    pub fn table(points: Vec<(f64, f64)>) -> Result<Weight> {
        if points.len() < 2 {
            return Err(Error::BadInput("weight table needs at least 2 nodes".into()));
        }
        if points.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::BadInput("weight table abscissas must strictly increase".into()));
        }
        Ok(Weight::Table(points))
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Weight::One => 1.0,
            Weight::Reciprocal => 1.0 / x,
            Weight::Table(pts) => {
                if x <= pts[0].0 {
                    return pts[0].1;
                }
                if x >= pts[pts.len() - 1].0 {
                    return pts[pts.len() - 1].1;
                }
                let i = pts.partition_point(|p| p.0 <= x);
                let (x0, y0) = pts[i - 1];
                let (x1, y1) = pts[i];
                y0 + (y1 - y0) * (x - x0) / (x1 - x0)
            }
        }
    }
}

/// The two built-in phase shapes on [1, 2].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseFamilyId {
    /// `F(x) = 1/(x + a/(4M)) + bM/(4T)`.
    InverseShift,
    /// `F(x) = log x`.
    Log,
}

impl FromStr for PhaseFamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<PhaseFamilyId> {
        match s {
            "inverse_shift" => Ok(PhaseFamilyId::InverseShift),
            "log" => Ok(PhaseFamilyId::Log),
            other => Err(Error::BadInput(format!(
                "unknown phase family `{other}` (expected inverse_shift or log)"
            ))),
        }
    }
}

/// A concrete phase function on [1, 2] with its parameters.
#[derive(Clone, Copy, Debug)]
pub struct PhaseFamily {
    pub id: PhaseFamilyId,
    pub a: i64,
    pub b: i64,
    pub m: f64,
    pub t: f64,
}

impl PhaseFamily {
    pub fn inverse_shift(a: i64, b: i64, m: f64, t: f64) -> Result<PhaseFamily> {
        if a.abs() + b.abs() > 1 {
            return Err(Error::BadInput(format!("need |a| + |b| <= 1, got a = {a}, b = {b}")));
        }
        if !(m > 0.0) || !(t > 0.0) || !m.is_finite() || !t.is_finite() {
            return Err(Error::BadInput("M and T must be positive finite".into()));
        }
        if 1.0 + a as f64 / (4.0 * m) <= 0.0 {
            return Err(Error::BadInput("shift a/(4M) pushes a pole into [1, 2]".into()));
        }
        Ok(PhaseFamily { id: PhaseFamilyId::InverseShift, a, b, m, t })
    }

    pub fn log(m: f64, t: f64) -> PhaseFamily {
        PhaseFamily { id: PhaseFamilyId::Log, a: 0, b: 0, m, t }
    }

    /// F(x) in plain f64, for condition checking.
    pub fn f(&self, x: f64) -> f64 {
        match self.id {
            PhaseFamilyId::InverseShift => {
                1.0 / (x + self.a as f64 / (4.0 * self.m)) + self.b as f64 * self.m / (4.0 * self.t)
            }
            PhaseFamilyId::Log => x.ln(),
        }
    }

    fn f_dd(&self, x: Dd) -> Dd {
        match self.id {
            PhaseFamilyId::InverseShift => {
                let shift = Dd::from_i64(self.a) / Dd::from_f64(self.m).mul_f64(4.0);
                let offset =
                    Dd::from_i64(self.b) * Dd::from_f64(self.m) / Dd::from_f64(self.t).mul_f64(4.0);
                Dd::ONE / (x + shift) + offset
            }
            PhaseFamilyId::Log => x.ln(),
        }
    }

    /// `[|F'|, |F''|, |F'''|, |F' F''' - 3 F''^2|]` at x, from closed forms.
    pub fn derivative_magnitudes(&self, x: f64) -> [f64; 4] {
        match self.id {
            PhaseFamilyId::InverseShift => {
                let u = x + self.a as f64 / (4.0 * self.m);
                let u2 = u * u;
                let u3 = u2 * u;
                [1.0 / u2, 2.0 / u3, 6.0 / (u2 * u2), 6.0 / (u3 * u3)]
            }
            PhaseFamilyId::Log => {
                let x2 = x * x;
                [1.0 / x, 1.0 / x2, 2.0 / (x2 * x), 1.0 / (x2 * x2)]
            }
        }
    }
}

/// Smallest and largest observed value of a quantity over the check grid,
/// with the abscissas where they occur.
#[derive(Clone, Copy, Debug)]
pub struct Extremes {
    pub min: f64,
    pub min_at: f64,
    pub max: f64,
    pub max_at: f64,
}

#[derive(Clone, Debug)]
pub struct PhaseWitnesses {
    pub d1: Extremes,
    pub d2: Extremes,
    pub d3: Extremes,
    /// `|F' F''' - 3 F''^2|`.
    pub curvature: Extremes,
}

#[derive(Clone, Debug)]
pub struct PhaseCheck {
    pub ok: bool,
    pub witnesses: PhaseWitnesses,
    pub violations: Vec<String>,
}

/// Checks `C_r >= |F^(r)| >= 1/C_r` for r = 1..3 and
/// `|F' F''' - 3 F''^2| >= 1/C4` on a uniform grid of [1, 2].
pub fn check_phase_conditions(
    fam: &PhaseFamily,
    c: (f64, f64, f64, f64),
    grid: usize,
) -> Result<PhaseCheck> {
    if grid < 2 {
        return Err(Error::BadInput(format!("condition grid needs >= 2 points, got {grid}")));
    }
    let caps = [c.0, c.1, c.2, c.3];
    if caps.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
        return Err(Error::BadInput("condition constants must be positive finite".into()));
    }
    let mut ext = [Extremes { min: f64::INFINITY, min_at: 1.0, max: f64::NEG_INFINITY, max_at: 1.0 }; 4];
    for j in 0..grid {
        let x = 1.0 + j as f64 / (grid - 1) as f64;
        let mags = fam.derivative_magnitudes(x);
        for (e, &v) in ext.iter_mut().zip(&mags) {
            if v < e.min {
                e.min = v;
                e.min_at = x;
            }
            if v > e.max {
                e.max = v;
                e.max_at = x;
            }
        }
    }
    let mut violations = Vec::new();
    for r in 0..3 {
        if ext[r].max > caps[r] {
            violations.push(format!(
                "|F^({})| reaches {} > C{} = {} at x = {}",
                r + 1,
                ext[r].max,
                r + 1,
                caps[r],
                ext[r].max_at
            ));
        }
        if ext[r].min < 1.0 / caps[r] {
            violations.push(format!(
                "|F^({})| falls to {} < 1/C{} = {} at x = {}",
                r + 1,
                ext[r].min,
                r + 1,
                1.0 / caps[r],
                ext[r].min_at
            ));
        }
    }
    if ext[3].min < 1.0 / caps[3] {
        violations.push(format!(
            "|F' F''' - 3 F''^2| falls to {} < 1/C4 = {} at x = {}",
            ext[3].min,
            1.0 / caps[3],
            ext[3].min_at
        ));
    }
    Ok(PhaseCheck {
        ok: violations.is_empty(),
        witnesses: PhaseWitnesses { d1: ext[0], d2: ext[1], d3: ext[2], curvature: ext[3] },
        violations,
    })
}

/// A double-sum evaluation request.
#[derive(Clone, Debug)]
pub enum SumJob {
    /// `sum_{H <= h <= H2} (H/h) sum_{M <= m <= M2} e(4hT/(4m+a) + hb/4)`
    /// with integer parameters and |a| + |b| <= 1.
    S7 { h: u64, h2: u64, m: u64, m2: u64, t: u64, a: i64, b: i64, method: SumMethod },
    /// `sum_h g(h/H) sum_m G(m/M) e((hT/M) F(m/M))` over h in
    /// [ceil(H), floor(H2)], m in [ceil(M), floor(M2)].
    General {
        h: f64,
        h2: f64,
        m: f64,
        m2: f64,
        t: f64,
        family: PhaseFamilyId,
        a: i64,
        b: i64,
        g: Weight,
        big_g: Weight,
    },
    /// `sum_{H1 <= h <= H} sum_{M1 <= m <= M} e(T log(m+h) - T log(m-h))`.
    Star { t: f64, h1: u64, h: u64, m1: u64, m: u64 },
    /// `sum_{0 < h <= K} (1/(pi h)) sum_{M <= m <= M2} e(4hT/(4m+a) + hb/4)`,
    /// the Fourier side of the sawtooth sum over the same rectangle; its
    /// negated imaginary part approximates that sum.
    PsiFourier { k: u64, m: u64, m2: u64, t: u64, a: i64, b: i64 },
}

impl SumJob {
    /// Rational-phase job over the standard dyadic rectangle
    /// h in [H, 2H], m in [M, 2M], on the exact path.
    pub fn s7(h: u64, m: u64, t: u64, a: i64, b: i64) -> SumJob {
        SumJob::S7 { h, h2: 2 * h, m, m2: 2 * m, t, a, b, method: SumMethod::ExactIntegerPhase }
    }

    pub fn star(t: f64, h1: u64, h: u64, m1: u64, m: u64) -> SumJob {
        SumJob::Star { t, h1, h, m1, m }
    }

    /// Same job on the other phase path (rational-phase jobs only).
    pub fn with_method(self, method: SumMethod) -> SumJob {
        match self {
            SumJob::S7 { h, h2, m, m2, t, a, b, .. } => {
                SumJob::S7 { h, h2, m, m2, t, a, b, method }
            }
            other => other,
        }
    }

    /// Weighted job with the built-in weights g(x) = 1/x, G(x) = 1 over
    /// h in [H, 2H], m in [M, 2M].
    pub fn general(family: PhaseFamilyId, a: i64, b: i64, h: f64, m: f64, t: f64) -> SumJob {
        SumJob::General {
            h,
            h2: 2.0 * h,
            m,
            m2: 2.0 * m,
            t,
            family,
            a,
            b,
            g: Weight::Reciprocal,
            big_g: Weight::One,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SumResult {
    pub value: Complex64,
    pub term_count: u64,
    /// Sum of |weight| over all terms; |value| can never exceed it.
    pub weight_sum: f64,
    /// Bound on |value - exact value| from per-term phase uncertainty.
    pub phase_error_bound: f64,
    pub method: SumMethod,
}

/// Per-term phase uncertainty of the exact integer path: one rounding of
/// an exact rational to f64, with headroom.
const EXACT_PHASE_EPS: f64 = 8.881784197001252e-16; // 2^-50

/// Relative phase error carried by a short double-double chain.
const DD_PHASE_REL: f64 = 1e-30;

struct Term {
    weight: f64,
    phase: f64,
    eps: f64,
}

fn pairwise(v: &[Complex64]) -> Complex64 {
    match v.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => v[0],
        2 => v[0] + v[1],
        n => pairwise(&v[..n / 2]) + pairwise(&v[n / 2..]),
    }
}

/// Deterministic block-pairwise reduction: terms are cut into fixed blocks
/// of 4096, each block is pairwise-summed, and block results are merged in
/// block order. The grouping depends only on the term count, never on the
/// worker count.
fn sum_phases<F>(n: u64, negate: bool, term: F) -> (Complex64, f64, f64)
where
    F: Fn(u64) -> Term + Sync,
{
    const BLOCK: u64 = 4096;
    let nblocks = n.div_ceil(BLOCK);
    let parts: Vec<(Complex64, f64, f64)> = (0..nblocks)
        .into_par_iter()
        .map(|blk| {
            let lo = blk * BLOCK;
            let hi = n.min(lo + BLOCK);
            let mut vals = Vec::with_capacity((hi - lo) as usize);
            let mut wsum = 0.0;
            let mut esum = 0.0;
            for i in lo..hi {
                let t = term(i);
                let (s, c) = (TAU * t.phase).sin_cos();
                let s = if negate { -s } else { s };
                vals.push(Complex64::new(t.weight * c, t.weight * s));
                wsum += t.weight.abs();
                esum += TAU * t.weight.abs() * t.eps;
            }
            (pairwise(&vals), wsum, esum)
        })
        .collect();
    let block_values: Vec<Complex64> = parts.iter().map(|p| p.0).collect();
    let value = pairwise(&block_values);
    let weight_sum = parts.iter().map(|p| p.1).sum();
    let err = parts.iter().map(|p| p.2).sum();
    (value, weight_sum, err)
}

/// `(4hT/(4m+a) + hb/4) mod 1` with the division carried out on integers.
fn exact_phase(h: u64, t: u64, d: u64, b: i64) -> f64 {
    let r = match (h as u128).checked_mul(t as u128).and_then(|x| x.checked_mul(4)) {
        Some(num) => (num % d as u128) as u64,
        None => {
            let num = BigInt::from(h) * BigInt::from(t) * BigInt::from(4);
            (num % BigInt::from(d)).to_u64().expect("residue fits in u64")
        }
    };
    let hb = (h as i128 * b as i128).rem_euclid(4) as u64;
    let mut ph = r as f64 / d as f64 + hb as f64 / 4.0;
    if ph >= 1.0 {
        ph -= 1.0;
    }
    ph
}

/// Fractional part of a double-double phase plus its uncertainty, which
/// scales with the magnitude swallowed by the reduction.
fn dd_frac(ph: Dd) -> (f64, f64) {
    let frac = ph - ph.floor();
    let mag = ph.to_f64().abs().max(1.0);
    (frac.to_f64(), mag * DD_PHASE_REL + f64::EPSILON)
}

fn dd_phase_s7(h: u64, t: u64, d: u64, b: i64) -> (f64, f64) {
    let num = match (h as u128).checked_mul(t as u128).and_then(|x| x.checked_mul(4)) {
        Some(n) => Dd::from_u128(n),
        None => Dd::from_u64(h) * Dd::from_u64(t).mul_f64(4.0),
    };
    let ph = num / Dd::from_u64(d) + Dd::from_u64(h).mul_f64(b as f64).div_f64(4.0);
    dd_frac(ph)
}

fn check_ab(a: i64, b: i64) -> Result<()> {
    if a.abs() + b.abs() > 1 {
        return Err(Error::BadInput(format!("need |a| + |b| <= 1, got a = {a}, b = {b}")));
    }
    Ok(())
}

fn check_dyadic_u64(name: &str, lo: u64, hi: u64) -> Result<()> {
    if lo < 1 || hi < lo || hi > 2 * lo {
        return Err(Error::BadInput(format!(
            "{name} range [{lo}, {hi}] must satisfy 1 <= {name} <= {name}2 <= 2 {name}"
        )));
    }
    Ok(())
}

/// Evaluates a sum job with deterministic block-pairwise accumulation.
pub fn eval_sum(job: &SumJob) -> Result<SumResult> {
    eval_with_sign(job, false)
}

fn eval_with_sign(job: &SumJob, negate: bool) -> Result<SumResult> {
    match *job {
        SumJob::S7 { h, h2, m, m2, t, a, b, method } => {
            check_ab(a, b)?;
            check_dyadic_u64("H", h, h2)?;
            check_dyadic_u64("M", m, m2)?;
            if 4 * m as i128 + a as i128 <= 0 {
                return Err(Error::BadInput(format!("4m + a = {} must be positive", 4 * m as i128 + a as i128)));
            }
            let m_count = m2 - m + 1;
            let n = (h2 - h + 1) * m_count;
            let h_weight = h as f64;
            let (value, weight_sum, err) = sum_phases(n, negate, |i| {
                let hh = h + i / m_count;
                let mm = m + i % m_count;
                let d = (4 * mm as i128 + a as i128) as u64;
                let weight = h_weight / hh as f64;
                let (phase, eps) = match method {
                    SumMethod::ExactIntegerPhase => (exact_phase(hh, t, d, b), EXACT_PHASE_EPS),
                    SumMethod::FloatDoubleDouble => dd_phase_s7(hh, t, d, b),
                };
                Term { weight, phase, eps }
            });
            Ok(SumResult { value, term_count: n, weight_sum, phase_error_bound: err, method })
        }
        SumJob::Star { t, h1, h, m1, m } => {
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::BadInput(format!("T must be positive finite, got {t}")));
            }
            if h1 < 1 || h < h1 || h > 2 * h1 {
                return Err(Error::BadInput(format!(
                    "h range [{h1}, {h}] must satisfy 1 <= H1 <= H <= 2 H1"
                )));
            }
            if m < m1 || m > 2 * m1 {
                return Err(Error::BadInput(format!(
                    "m range [{m1}, {m}] must satisfy M1 <= M <= 2 M1"
                )));
            }
            if m1 <= h {
                return Err(Error::BadInput(format!(
                    "m - h must stay positive: smallest m = {m1} does not exceed largest h = {h}"
                )));
            }
            let m_count = m - m1 + 1;
            let n = (h - h1 + 1) * m_count;
            let t_dd = Dd::from_f64(t);
            let (value, weight_sum, err) = sum_phases(n, negate, |i| {
                let hh = h1 + i / m_count;
                let mm = m1 + i % m_count;
                let ph = t_dd * (Dd::from_u64(mm + hh).ln() - Dd::from_u64(mm - hh).ln());
                let (phase, eps) = dd_frac(ph);
                Term { weight: 1.0, phase, eps }
            });
            Ok(SumResult {
                value,
                term_count: n,
                weight_sum,
                phase_error_bound: err,
                method: SumMethod::FloatDoubleDouble,
            })
        }
        SumJob::General { h, h2, m, m2, t, family, a, b, ref g, ref big_g } => {
            for (name, v) in [("H", h), ("M", m), ("T", t)] {
                if !(v > 0.0) || !v.is_finite() {
                    return Err(Error::BadInput(format!("{name} must be positive finite, got {v}")));
                }
            }
            for (name, lo, hi) in [("H", h, h2), ("M", m, m2)] {
                if !(hi >= lo) || !(hi <= 2.0 * lo) {
                    return Err(Error::BadInput(format!(
                        "{name} range [{lo}, {hi}] must satisfy {name} <= {name}2 <= 2 {name}"
                    )));
                }
            }
            let fam = match family {
                PhaseFamilyId::InverseShift => PhaseFamily::inverse_shift(a, b, m, t)?,
                PhaseFamilyId::Log => PhaseFamily::log(m, t),
            };
            let (h_lo, h_hi) = (h.ceil() as u64, h2.floor() as u64);
            let (m_lo, m_hi) = (m.ceil() as u64, m2.floor() as u64);
            if h_lo > h_hi || m_lo > m_hi {
                return Ok(SumResult {
                    value: Complex64::new(0.0, 0.0),
                    term_count: 0,
                    weight_sum: 0.0,
                    phase_error_bound: 0.0,
                    method: SumMethod::FloatDoubleDouble,
                });
            }
            let m_count = m_hi - m_lo + 1;
            let n = (h_hi - h_lo + 1) * m_count;
            let t_dd = Dd::from_f64(t);
            let m_dd = Dd::from_f64(m);
            let (value, weight_sum, err) = sum_phases(n, negate, |i| {
                let hh = h_lo + i / m_count;
                let mm = m_lo + i % m_count;
                let weight = g.eval(hh as f64 / h) * big_g.eval(mm as f64 / m);
                let x = Dd::from_u64(mm) / m_dd;
                let ph = Dd::from_u64(hh) * t_dd / m_dd * fam.f_dd(x);
                let (phase, eps) = dd_frac(ph);
                Term { weight, phase, eps }
            });
            Ok(SumResult {
                value,
                term_count: n,
                weight_sum,
                phase_error_bound: err,
                method: SumMethod::FloatDoubleDouble,
            })
        }
        SumJob::PsiFourier { k, m, m2, t, a, b } => {
            check_ab(a, b)?;
            check_dyadic_u64("M", m, m2)?;
            if k < 1 {
                return Err(Error::BadInput("need K >= 1 series terms".into()));
            }
            let m_count = m2 - m + 1;
            let n = k * m_count;
            let (value, weight_sum, err) = sum_phases(n, negate, |i| {
                let hh = 1 + i / m_count;
                let mm = m + i % m_count;
                let d = (4 * mm as i128 + a as i128) as u64;
                Term {
                    weight: 1.0 / (PI * hh as f64),
                    phase: exact_phase(hh, t, d, b),
                    eps: EXACT_PHASE_EPS,
                }
            });
            Ok(SumResult {
                value,
                term_count: n,
                weight_sum,
                phase_error_bound: err,
                method: SumMethod::ExactIntegerPhase,
            })
        }
    }
}

/// Least-squares slope of log|value| against log T.
///
/// Needs at least three samples with positive T and value; this is a
/// report-only diagnostic, never a pass/fail gate.
pub fn fit_exponent(samples: &[(f64, f64)]) -> Result<f64> {
    if samples.len() < 3 {
        return Err(Error::BadInput(format!(
            "exponent fit needs at least 3 samples, got {}",
            samples.len()
        )));
    }
    for &(t, v) in samples {
        if !(t > 0.0) || !(v > 0.0) || !t.is_finite() || !v.is_finite() {
            return Err(Error::BadInput(format!("fit samples must be positive finite, got ({t}, {v})")));
        }
    }
    let n = samples.len() as f64;
    let xs: Vec<f64> = samples.iter().map(|&(t, _)| t.ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|&(_, v)| v.ln()).collect();
    let xbar = xs.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();
    if sxx == 0.0 {
        return Err(Error::BadInput("fit needs at least two distinct T values".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum();
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sawtooth_values_and_period() {
        assert_eq!(psi(0.0), -0.5);
        assert_eq!(psi(0.25), -0.25);
        assert!((psi(0.9) - 0.4).abs() < 1e-15);
        assert_eq!(psi(-0.25), 0.25);
        assert_eq!(psi_rat(&rat(7, 2)), rat(0, 1));
        assert_eq!(psi_rat(&rat(100, 6)), rat(1, 6));
        assert_eq!(psi_rat(&rat(-5, 1)), rat(-1, 2));
        for j in 0..100 {
            let y = -3.0 + 0.0613 * j as f64;
            assert!((psi(y + 1.0) - psi(y)).abs() < 1e-12);
            assert!((-0.5..0.5).contains(&psi(y)));
        }
    }

    #[test]
    fn truncated_series_vanishes_by_symmetry_and_covers_the_jump() {
        let half = psi_truncated(0.5, 100.0).unwrap();
        assert!(half.approx.abs() < 1e-12);
        let zero = psi_truncated(0.0, 100.0).unwrap();
        assert_eq!(zero.approx, 0.0);
        assert!(zero.bound > 0.5, "cap at the jump must exceed 1/2");
        assert!(psi_truncated(0.3, 0.5).is_err());
    }

    #[test]
    fn truncation_cap_holds_on_a_dense_grid() {
        let n = 1_000_000u64;
        for k in [10.0, 100.0, 1000.0] {
            let sup = (0..n)
                .into_par_iter()
                .map(|j| {
                    let y = j as f64 / n as f64;
                    let tr = psi_truncated(y, k).unwrap();
                    let dist = (y - y.round()).abs();
                    ((psi(y) - tr.approx).abs() * (1.0 + k * dist), tr.bound * (1.0 + k * dist))
                })
                .map(|(prod, cap)| {
                    assert!(prod <= cap + 1e-12);
                    prod
                })
                .reduce(|| 0.0, f64::max);
            assert!(sup <= PSI_TRUNCATION_C, "K = {k}: sup product {sup}");
            assert!(sup > 0.49, "K = {k}: cap is not slack, sup product {sup}");
        }
    }

    #[test]
    fn shifted_reciprocal_family_passes_its_stock_constants() {
        let fam = PhaseFamily::inverse_shift(0, 0, 10.0, 1000.0).unwrap();
        let ok = check_phase_conditions(&fam, (14.0, 14.0, 14.0, 14.0), 10_001).unwrap();
        assert!(ok.ok, "{:?}", ok.violations);
        let tight = check_phase_conditions(&fam, (1.0, 1.0, 1.0, 1.0), 10_001).unwrap();
        assert!(!tight.ok);
        assert_eq!(tight.witnesses.d1.min, 0.25);
        assert_eq!(tight.witnesses.d1.min_at, 2.0);
        assert!(tight.violations.iter().any(|v| v.contains("|F^(1)| falls to 0.25")));
    }

    #[test]
    fn log_family_curvature_bottoms_out_at_one_sixteenth() {
        let fam = PhaseFamily::log(10.0, 1000.0);
        let stock = check_phase_conditions(&fam, (14.0, 14.0, 14.0, 14.0), 10_001).unwrap();
        assert!(!stock.ok, "1/16 < 1/14, so the stock C4 cannot hold");
        assert_eq!(stock.witnesses.curvature.min, 0.0625);
        assert_eq!(stock.witnesses.curvature.min_at, 2.0);
        assert_eq!(stock.violations.len(), 1);
        let relaxed = check_phase_conditions(&fam, (14.0, 14.0, 14.0, 16.0), 10_001).unwrap();
        assert!(relaxed.ok, "{:?}", relaxed.violations);
    }

    #[test]
    fn condition_checker_rejects_degenerate_requests() {
        let fam = PhaseFamily::log(10.0, 1000.0);
        assert!(check_phase_conditions(&fam, (14.0, 14.0, 14.0, 14.0), 1).is_err());
        assert!(check_phase_conditions(&fam, (0.0, 14.0, 14.0, 14.0), 10).is_err());
        assert!(PhaseFamily::inverse_shift(1, 1, 10.0, 1000.0).is_err());
    }

    fn assert_close(z: Complex64, re: f64, im: f64, tol: f64) {
        assert!((z.re - re).abs() < tol && (z.im - im).abs() < tol, "{z} vs ({re}, {im})");
    }

    #[test]
    fn rational_phase_sum_matches_the_reference_value() {
        let job = SumJob::s7(1, 3, 1_000_000, 1, 0);
        let exact = eval_sum(&job).unwrap();
        assert_eq!(exact.term_count, 8);
        assert_eq!(exact.method, SumMethod::ExactIntegerPhase);
        assert_close(exact.value, 1.55509792427570578854, 3.04597776288875564563, 1e-12);

        let float_job = job.clone().with_method(SumMethod::FloatDoubleDouble);
        let float = eval_sum(&float_job).unwrap();
        assert_close(float.value, exact.value.re, exact.value.im, 1e-12);
    }

    #[test]
    fn zero_frequency_sum_is_a_real_count() {
        let job = SumJob::s7(2, 5, 0, 1, 0);
        let res = eval_sum(&job).unwrap();
        assert_eq!(res.term_count, 18);
        assert_eq!(res.value.im, 0.0);
        let harmonic = 1.0 + 2.0 / 3.0 + 2.0 / 4.0;
        assert!((res.value.re - harmonic * 6.0).abs() < 1e-12);
        assert!((res.weight_sum - harmonic * 6.0).abs() < 1e-12);
    }

    #[test]
    fn log_phase_sum_matches_the_reference_values() {
        let single = eval_sum(&SumJob::star(1000.0, 1, 1, 10, 10)).unwrap();
        assert_eq!(single.term_count, 1);
        assert_close(single.value, -0.47791987419244267277, -0.87840343456288908577, 1e-12);
        assert!(single.value.norm() <= 10.0);

        let block = eval_sum(&SumJob::star(1000.0, 1, 2, 10, 12)).unwrap();
        assert_eq!(block.term_count, 6);
        assert_close(block.value, -2.08840296934499028636, -0.24089520589266932191, 1e-12);
    }

    #[test]
    fn log_phase_sum_rejects_bad_rectangles() {
        // m - h would hit zero.
        assert!(eval_sum(&SumJob::star(1000.0, 1, 3, 3, 5)).is_err());
        // H1 below H/2.
        assert!(eval_sum(&SumJob::star(1000.0, 2, 5, 10, 12)).is_err());
        // Nonpositive T.
        assert!(eval_sum(&SumJob::star(0.0, 1, 1, 10, 10)).is_err());
        // |a| + |b| too large on the rational side.
        assert!(eval_sum(&SumJob::s7(1, 3, 10, 1, 1)).is_err());
    }

    #[test]
    fn weighted_job_reproduces_the_rational_instance() {
        let general = eval_sum(&SumJob::general(
            PhaseFamilyId::InverseShift,
            1,
            0,
            1.0,
            3.0,
            1_000_000.0,
        ))
        .unwrap();
        assert_close(general.value, 1.55509792427570578854, 3.04597776288875564563, 1e-9);
        assert_eq!(general.term_count, 8);
    }

    #[test]
    fn fourier_side_tracks_the_sawtooth_sum_within_its_cap() {
        for (t, want) in [(101u64, -0.05f64), (100, -1.0)] {
            let res = eval_sum(&SumJob::PsiFourier { k: 50, m: 3, m2: 6, t, a: 0, b: 0 }).unwrap();
            let fourier_side = -res.value.im;
            let cap: f64 = (3..=6u64)
                .map(|m| psi_truncated(t as f64 / m as f64, 50.0).unwrap().bound)
                .sum();
            let exact: f64 = (3..=6u64).map(|m| psi(t as f64 / m as f64)).sum();
            assert!((exact - want).abs() < 1e-12);
            assert!(
                (fourier_side - exact).abs() <= cap,
                "T = {t}: |{fourier_side} - {exact}| > {cap}"
            );
        }
    }

    #[test]
    fn dual_phase_paths_agree_on_random_jobs() {
        let mut rng = ChaCha8Rng::seed_from_u64(90125);
        let shifts = [(0i64, 0i64), (1, 0), (-1, 0), (0, 1), (0, -1)];
        for _ in 0..100 {
            let t = rng.gen_range(1..=1_000_000_000u64);
            let m = (10f64.powf(rng.gen_range(0.5..5.0)) as u64).max(1);
            let h = rng.gen_range(1..=4u64);
            let (a, b) = shifts[rng.gen_range(0..shifts.len())];
            let base = SumJob::s7(h, m, t, a, b);
            let exact = eval_sum(&base).unwrap();
            let float =
                eval_sum(&base.clone().with_method(SumMethod::FloatDoubleDouble)).unwrap();
            let diff = (exact.value - float.value).norm();
            assert!(
                diff <= 1e-6 * exact.value.norm() + 1e-9 * exact.weight_sum,
                "H={h} M={m} T={t} a={a} b={b}: |{}| vs |{}|, diff {diff}",
                exact.value,
                float.value,
            );
            assert!(exact.value.norm() <= exact.weight_sum * (1.0 + 1e-12));
        }
    }

    #[test]
    fn negating_phases_conjugates_the_value_exactly() {
        for job in [
            SumJob::star(1000.0, 1, 2, 10, 12),
            SumJob::s7(2, 7, 123_456, -1, 0),
        ] {
            let plus = eval_with_sign(&job, false).unwrap();
            let minus = eval_with_sign(&job, true).unwrap();
            assert_eq!(plus.value.re.to_bits(), minus.value.re.to_bits());
            assert_eq!(plus.value.im, -minus.value.im);
        }
    }

    #[test]
    fn block_merge_is_identical_across_worker_counts() {
        let job = SumJob::s7(3, 2500, 987_654_321, 1, 0);
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| eval_sum(&job).unwrap())
        };
        let one = run(1);
        let four = run(4);
        assert_eq!(one.value.re.to_bits(), four.value.re.to_bits());
        assert_eq!(one.value.im.to_bits(), four.value.im.to_bits());
        assert_eq!(one.weight_sum.to_bits(), four.weight_sum.to_bits());
    }

    #[test]
    fn slope_fit_recovers_power_laws() {
        let half: Vec<(f64, f64)> = (1..=8).map(|j| {
            let t = 10f64.powi(j);
            (t, t.sqrt())
        }).collect();
        assert!((fit_exponent(&half).unwrap() - 0.5).abs() < 1e-12);

        let flat: Vec<(f64, f64)> = (1..=5).map(|j| (10f64.powi(j), 3.25)).collect();
        assert!(fit_exponent(&flat).unwrap().abs() < 1e-12);

        assert!(fit_exponent(&half[..2]).is_err());
        assert!(fit_exponent(&[(1.0, 1.0), (2.0, -1.0), (3.0, 1.0)]).is_err());
        assert!(fit_exponent(&[(1.0, 1.0), (1.0, 2.0), (1.0, 3.0)]).is_err());
    }

    #[test]
    fn weight_tables_interpolate_and_clamp() {
        let w = Weight::table(vec![(1.0, 2.0), (1.5, 3.0), (2.0, 0.0)]).unwrap();
        assert_eq!(w.eval(1.0), 2.0);
        assert_eq!(w.eval(1.25), 2.5);
        assert_eq!(w.eval(1.75), 1.5);
        assert_eq!(w.eval(0.5), 2.0);
        assert_eq!(w.eval(9.0), 0.0);
        assert!(Weight::table(vec![(1.0, 2.0)]).is_err());
        assert!(Weight::table(vec![(1.0, 2.0), (1.0, 3.0)]).is_err());
    }
}
