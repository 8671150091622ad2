//! Exact lattice-point counts for the divisor and disk problems, the
//! sawtooth-sum representations of their error terms with calibrated
//! residual caps, the sawtooth sum over a dyadic block, and short-interval
//! divisor scans.

use std::str::FromStr;

use rayon::prelude::*;

use crate::dd::{Dd, GAMMA, PI};
use crate::sums::psi;
use crate::{Error, Result};

/// Largest range the array-based sieves will allocate for.
const SIEVE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisorMethod {
    /// Per-integer divisor tally over an array; the memory-bound oracle.
    Sieve,
    /// `2 sum_{m <= sqrt(X)} floor(X/m) - floor(sqrt(X))^2`; O(sqrt X).
    Hyperbola,
}

impl FromStr for DivisorMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<DivisorMethod> {
        match s {
            "sieve" => Ok(DivisorMethod::Sieve),
            "hyperbola" => Ok(DivisorMethod::Hyperbola),
            other => Err(Error::BadInput(format!(
                "unknown divisor method `{other}` (expected sieve or hyperbola)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircleMethod {
    /// Column-by-column enumeration of |x| <= sqrt(X); O(sqrt X).
    Brute,
    /// `1 + 4 sum_{j >= 0} (floor(X/(4j+1)) - floor(X/(4j+3)))`; O(X).
    Gauss,
}

impl FromStr for CircleMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<CircleMethod> {
        match s {
            "brute" => Ok(CircleMethod::Brute),
            "gauss" => Ok(CircleMethod::Gauss),
            other => Err(Error::BadInput(format!(
                "unknown circle method `{other}` (expected brute or gauss)"
            ))),
        }
    }
}

/// `sum_{n <= X} d(n)`, exactly. Requires X >= 1.
pub fn divisor_sum(x: f64, method: DivisorMethod) -> Result<u64> {
    if !(x >= 1.0) || !x.is_finite() {
        return Err(Error::BadInput(format!("divisor sum needs X >= 1, got {x}")));
    }
    let fx = x.floor() as u64;
    match method {
        DivisorMethod::Sieve => {
            if fx > SIEVE_BUDGET {
                return Err(Error::SieveTooLarge(fx));
            }
            let mut tally = vec![0u32; (fx + 1) as usize];
            for m in 1..=fx {
                let mut k = m;
                while k <= fx {
                    tally[k as usize] += 1;
                    k += m;
                }
            }
            Ok(tally.iter().map(|&c| c as u64).sum())
        }
        DivisorMethod::Hyperbola => {
            let s = fx.isqrt();
            let inner: u64 = (1..=s).map(|m| fx / m).sum();
            Ok(2 * inner - s * s)
        }
    }
}

/// `#{(x, y) in Z^2 : x^2 + y^2 <= X}`, exactly (boundary included).
pub fn circle_count(x: f64, method: CircleMethod) -> Result<u64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::BadInput(format!("circle count needs X >= 0, got {x}")));
    }
    let fx = x.floor() as u64;
    match method {
        CircleMethod::Brute => {
            let r = fx.isqrt();
            let mut count = 2 * fx.isqrt() + 1;
            for xx in 1..=r {
                count += 2 * (2 * (fx - xx * xx).isqrt() + 1);
            }
            Ok(count)
        }
        CircleMethod::Gauss => {
            let mut count = 1u64;
            let mut j = 0u64;
            while 4 * j + 1 <= fx {
                count += 4 * (fx / (4 * j + 1));
                count -= 4 * (fx / (4 * j + 3));
                j += 1;
            }
            Ok(count)
        }
    }
}

/// One counting problem at one X: the exact count, its smooth main term,
/// the error term, the sawtooth-sum side, and the leftover residual.
#[derive(Clone, Copy, Debug)]
pub struct LatticeReport {
    pub x: f64,
    pub count: u64,
    pub main_term: f64,
    pub error_term: f64,
    pub psi_side: f64,
    pub residual: f64,
}

/// Cap on the divisor residual `error/2 + psi_side`, calibrated over
/// integer X in [4, 2*10^5]: the observed supremum climbs to 1/6 and is
/// stable under doubling the range.
pub const RESIDUAL_CAP_DIVISOR: f64 = 0.17;

/// Cap on the circle residual `error/4 - psi_side`, calibrated the same
/// way; the observed supremum climbs to 5/4.
pub const RESIDUAL_CAP_CIRCLE: f64 = 1.26;

/// psi(p/q) with the reduction done on integers, exact up to one final
/// rounding.
fn psi_frac(p: i128, q: i128) -> f64 {
    let r = p.rem_euclid(q);
    r as f64 / q as f64 - 0.5
}

fn divisor_psi_side(x: f64) -> f64 {
    let fx = x.floor() as u64;
    let s = fx.isqrt();
    if x.fract() == 0.0 {
        (1..=s).map(|m| psi_frac(fx as i128, m as i128)).sum()
    } else {
        (1..=s).map(|m| psi(x / m as f64)).sum()
    }
}

/// Divisor problem at X: error term `D(X) - X log X - (2 gamma - 1) X`
/// against the sawtooth side `sum_{m <= sqrt X} psi(X/m)`. Requires X >= 4.
pub fn delta_report(x: f64) -> Result<LatticeReport> {
    if !(x >= 4.0) || !x.is_finite() {
        return Err(Error::BadInput(format!("report needs X >= 4, got {x}")));
    }
    let count = divisor_sum(x, DivisorMethod::Hyperbola)?;
    let xd = Dd::from_f64(x);
    let main = xd * xd.ln() + (GAMMA.ldexp(1) - Dd::ONE) * xd;
    let error_term = (Dd::from_u64(count) - main).to_f64();
    let psi_side = divisor_psi_side(x);
    Ok(LatticeReport {
        x,
        count,
        main_term: main.to_f64(),
        error_term,
        psi_side,
        residual: error_term / 2.0 + psi_side,
    })
}

/// Which sign the quarter shift and the denominator shift take in the
/// even-index branch of the circle sawtooth display. The identity variant
/// is the corrected formula; the three permutations are the plausible
/// misprints the scan rules out.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CircleVariant {
    pub swap_quarter_shift: bool,
    pub swap_denominator_shift: bool,
}

/// `sum_{m <= sqrt X} psi((X + qs*m)/(4m)) - sum_{m <= sqrt(X)/4} psi(X/(4m + ds))`.
fn circle_branch(x: f64, qs: i64, ds: i64) -> f64 {
    let fx = x.floor() as u64;
    let s = fx.isqrt();
    let s4 = (fx / 16).isqrt();
    if x.fract() == 0.0 {
        let near: f64 =
            (1..=s).map(|m| psi_frac(fx as i128 + qs as i128 * m as i128, 4 * m as i128)).sum();
        let far: f64 =
            (1..=s4).map(|m| psi_frac(fx as i128, 4 * m as i128 + ds as i128)).sum();
        near - far
    } else {
        let near: f64 = (1..=s).map(|m| psi(x / (4 * m) as f64 + qs as f64 / 4.0)).sum();
        let far: f64 = (1..=s4).map(|m| psi(x / (4 * m + ds as u64) as f64)).sum();
        near - far
    }
}

fn circle_psi_side(x: f64, variant: CircleVariant) -> f64 {
    let qs = if variant.swap_quarter_shift { -1 } else { 1 };
    let ds = if variant.swap_denominator_shift { -1 } else { 1 };
    circle_branch(x, qs, ds) - circle_branch(x, -qs, -ds)
}

/// Circle problem at X: error term `N(X) - pi X` against the alternating
/// two-block sawtooth side. Requires X >= 4.
pub fn circle_report(x: f64) -> Result<LatticeReport> {
    if !(x >= 4.0) || !x.is_finite() {
        return Err(Error::BadInput(format!("report needs X >= 4, got {x}")));
    }
    let count = circle_count(x, CircleMethod::Brute)?;
    let main = *PI * Dd::from_f64(x);
    let error_term = (Dd::from_u64(count) - main).to_f64();
    let psi_side = circle_psi_side(x, CircleVariant::default());
    Ok(LatticeReport {
        x,
        count,
        main_term: main.to_f64(),
        error_term,
        psi_side,
        residual: error_term / 4.0 - psi_side,
    })
}

/// Cumulative divisor counts D(0..=xmax) by array sieve, one pass.
pub fn divisor_cumulative(xmax: u64) -> Result<Vec<u64>> {
    if xmax > SIEVE_BUDGET {
        return Err(Error::SieveTooLarge(xmax));
    }
    let n = (xmax + 1) as usize;
    let mut tally = vec![0u32; n];
    for m in 1..=xmax {
        let mut k = m;
        while k <= xmax {
            tally[k as usize] += 1;
            k += m;
        }
    }
    let mut acc = 0u64;
    let mut out = Vec::with_capacity(n);
    for c in tally {
        acc += c as u64;
        out.push(acc);
    }
    Ok(out)
}

/// Cumulative circle counts N(0..=xmax) by sieving r2(n) = 4(d_1(n) - d_3(n)).
pub fn circle_cumulative(xmax: u64) -> Result<Vec<u64>> {
    if xmax > SIEVE_BUDGET {
        return Err(Error::SieveTooLarge(xmax));
    }
    let n = (xmax + 1) as usize;
    let mut r2 = vec![0i32; n];
    let mut q = 1u64;
    while q <= xmax {
        let mut k = q;
        while k <= xmax {
            r2[k as usize] += 4;
            k += q;
        }
        q += 4;
    }
    let mut q = 3u64;
    while q <= xmax {
        let mut k = q;
        while k <= xmax {
            r2[k as usize] -= 4;
            k += q;
        }
        q += 4;
    }
    let mut acc = 1i64;
    let mut out = Vec::with_capacity(n);
    out.push(1);
    for &d in &r2[1..] {
        acc += d as i64;
        out.push(acc as u64);
    }
    Ok(out)
}

fn divisor_error_term(x: u64, count: u64) -> f64 {
    let xd = Dd::from_u64(x);
    (Dd::from_u64(count) - (xd * xd.ln() + (GAMMA.ldexp(1) - Dd::ONE) * xd)).to_f64()
}

fn circle_error_term(x: u64, count: u64) -> f64 {
    (Dd::from_u64(count) - *PI * Dd::from_u64(x)).to_f64()
}

/// Extreme residuals of both counting problems over integer X in [4, xmax].
#[derive(Clone, Copy, Debug)]
pub struct ResidualSweep {
    pub xmax: u64,
    pub divisor_sup: f64,
    pub divisor_argmax: u64,
    pub circle_sup: f64,
    pub circle_argmax: u64,
}

/// Scans integer X in [4, xmax] and records the largest |residual| seen on
/// each side. The counts come from sieves; the per-X sawtooth sums use
/// exact integer reduction.
pub fn residual_sweep(xmax: u64) -> Result<ResidualSweep> {
    if xmax < 4 {
        return Err(Error::BadInput(format!("sweep needs xmax >= 4, got {xmax}")));
    }
    let div = divisor_cumulative(xmax)?;
    let circ = circle_cumulative(xmax)?;
    let max_pair = |a: (f64, u64), b: (f64, u64)| {
        if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
            b
        } else {
            a
        }
    };
    let (divisor_sup, divisor_argmax) = (4..=xmax)
        .into_par_iter()
        .map(|x| {
            let r = divisor_error_term(x, div[x as usize]) / 2.0 + divisor_psi_side(x as f64);
            (r.abs(), x)
        })
        .reduce(|| (f64::NEG_INFINITY, u64::MAX), max_pair);
    let (circle_sup, circle_argmax) = (4..=xmax)
        .into_par_iter()
        .map(|x| {
            let r = circle_error_term(x, circ[x as usize]) / 4.0
                - circle_psi_side(x as f64, CircleVariant::default());
            (r.abs(), x)
        })
        .reduce(|| (f64::NEG_INFINITY, u64::MAX), max_pair);
    Ok(ResidualSweep { xmax, divisor_sup, divisor_argmax, circle_sup, circle_argmax })
}

/// One emitted row of a sawtooth-check scan.
#[derive(Clone, Copy, Debug)]
pub struct PsiCheckRow {
    pub x: u64,
    pub error_term: f64,
    pub psi_side: f64,
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountingProblem {
    Divisor,
    Circle,
}

impl FromStr for CountingProblem {
    type Err = Error;

    fn from_str(s: &str) -> Result<CountingProblem> {
        match s {
            "divisor" => Ok(CountingProblem::Divisor),
            "circle" => Ok(CountingProblem::Circle),
            other => Err(Error::BadInput(format!(
                "unknown counting problem `{other}` (expected divisor or circle)"
            ))),
        }
    }
}

/// Rows (X, error term, psi side, residual) for X = 4, 4+step, ... <= xmax.
pub fn psi_check_rows(xmax: u64, step: u64, problem: CountingProblem) -> Result<Vec<PsiCheckRow>> {
    if xmax < 4 || step < 1 {
        return Err(Error::BadInput(format!(
            "scan needs xmax >= 4 and step >= 1, got xmax = {xmax}, step = {step}"
        )));
    }
    let xs: Vec<u64> = (4..=xmax).step_by(step as usize).collect();
    let rows = match problem {
        CountingProblem::Divisor => {
            let cum = divisor_cumulative(xmax)?;
            xs.into_par_iter()
                .map(|x| {
                    let error_term = divisor_error_term(x, cum[x as usize]);
                    let psi_side = divisor_psi_side(x as f64);
                    PsiCheckRow { x, error_term, psi_side, residual: error_term / 2.0 + psi_side }
                })
                .collect()
        }
        CountingProblem::Circle => {
            let cum = circle_cumulative(xmax)?;
            xs.into_par_iter()
                .map(|x| {
                    let error_term = circle_error_term(x, cum[x as usize]);
                    let psi_side = circle_psi_side(x as f64, CircleVariant::default());
                    PsiCheckRow { x, error_term, psi_side, residual: error_term / 4.0 - psi_side }
                })
                .collect()
        }
    };
    Ok(rows)
}

/// Behavior of one sign variant of the circle sawtooth display over
/// [4, xmax]: its residual supremum over the first half and over the whole
/// range, and whether the growth marks it as bounded.
#[derive(Clone, Copy, Debug)]
pub struct VariantVerdict {
    pub variant: CircleVariant,
    pub sup_half: f64,
    pub sup_full: f64,
    pub bounded: bool,
}

/// Evaluates all four sign variants of the circle display and reports
/// which have a residual that stays put when the range doubles. Only the
/// identity variant should survive.
pub fn scan_circle_variants(xmax: u64) -> Result<Vec<VariantVerdict>> {
    if xmax < 16 {
        return Err(Error::BadInput(format!("variant scan needs xmax >= 16, got {xmax}")));
    }
    let cum = circle_cumulative(xmax)?;
    let variants = [
        CircleVariant { swap_quarter_shift: false, swap_denominator_shift: false },
        CircleVariant { swap_quarter_shift: false, swap_denominator_shift: true },
        CircleVariant { swap_quarter_shift: true, swap_denominator_shift: false },
        CircleVariant { swap_quarter_shift: true, swap_denominator_shift: true },
    ];
    let half = xmax / 2;
    Ok(variants
        .into_iter()
        .map(|variant| {
            let (sup_half, sup_full) = (4..=xmax)
                .into_par_iter()
                .map(|x| {
                    let r = (circle_error_term(x, cum[x as usize]) / 4.0
                        - circle_psi_side(x as f64, variant))
                    .abs();
                    (if x <= half { r } else { 0.0 }, r)
                })
                .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));
            VariantVerdict { variant, sup_half, sup_full, bounded: sup_full <= 1.1 * sup_half }
        })
        .collect())
}

/// `sum_{M <= m <= 2M} psi(4T/(4m + a) + b/4)` with every argument reduced
/// as an exact rational. Requires |a| + |b| <= 1 and 3 <= M <= sqrt(T).
pub fn r_sum(m: u64, t: u64, a: i64, b: i64) -> Result<f64> {
    if a.abs() + b.abs() > 1 {
        return Err(Error::BadInput(format!("need |a| + |b| <= 1, got a = {a}, b = {b}")));
    }
    if m < 3 || m * m > t {
        return Err(Error::BadInput(format!("need 3 <= M <= sqrt(T), got M = {m}, T = {t}")));
    }
    let mut total = 0.0;
    for mm in m..=2 * m {
        let den0 = 4 * mm as i128 + a as i128;
        // 4T/(4m+a) + b/4 = (16T + b (4m+a)) / (4 (4m+a)).
        total += psi_frac(16 * t as i128 + b as i128 * den0, 4 * den0);
    }
    Ok(total)
}

/// Samples (X, |error term|) of the divisor problem at X = 2^k,
/// k_lo <= k <= k_hi, sized for slope fitting on a log-log scale.
pub fn delta_samples(k_lo: u32, k_hi: u32) -> Result<Vec<(f64, f64)>> {
    if k_lo < 2 || k_hi < k_lo || k_hi > 40 {
        return Err(Error::BadInput(format!(
            "need 2 <= k_lo <= k_hi <= 40, got {k_lo}..{k_hi}"
        )));
    }
    (k_lo..=k_hi)
        .map(|k| {
            let x = (1u64 << k) as f64;
            Ok((x, delta_report(x)?.error_term.abs()))
        })
        .collect()
}

/// Exact count of one short-interval condition level.
#[derive(Clone, Copy, Debug)]
pub struct ShortIntervalLevel {
    pub delta: f64,
    /// How many m' in [3M, 9M] have ||16T/m'|| <= delta.
    pub count: u64,
    /// `sum d(l)` over integers l with |l - 16T| <= 9 delta M, the divisor
    /// bound that dominates the count.
    pub divisor_side: u64,
}

fn divisor_count(n: u64) -> u64 {
    let mut c = 0;
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            c += if i * i == n { 1 } else { 2 };
        }
        i += 1;
    }
    c
}

/// Scans m' in [3M, 9M] for ||16T/m'|| <= delta at each dyadic level, and
/// pairs each count with its divisor-sum upper bound. Deltas must be
/// powers of two in (0, 1].
pub fn divisor_short_interval_count(
    t: u64,
    m: u64,
    deltas: &[f64],
) -> Result<Vec<ShortIntervalLevel>> {
    if t < 1 || m < 1 {
        return Err(Error::BadInput(format!("need T >= 1 and M >= 1, got T = {t}, M = {m}")));
    }
    deltas
        .iter()
        .map(|&delta| {
            let inv = 1.0 / delta;
            if !(delta > 0.0) || delta > 1.0 || inv.fract() != 0.0 || !(inv as u64).is_power_of_two()
            {
                return Err(Error::BadInput(format!(
                    "delta must be 2^-j for an integer j >= 0, got {delta}"
                )));
            }
            let mut count = 0u64;
            for mp in 3 * m..=9 * m {
                let r = (16 * t) % mp;
                // delta * m' is exact: a power of two times an integer.
                if (r.min(mp - r) as f64) <= delta * mp as f64 {
                    count += 1;
                }
            }
            let w = (9.0 * delta * m as f64).floor() as u64;
            if 2 * w + 1 > 2_000_000 {
                return Err(Error::BadInput(format!(
                    "window of {} integers around 16T is over the scan budget",
                    2 * w + 1
                )));
            }
            let lo = (16 * t).saturating_sub(w).max(1);
            let hi = 16 * t + w;
            let divisor_side = (lo..=hi).into_par_iter().map(divisor_count).sum();
            Ok(ShortIntervalLevel { delta, count, divisor_side })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn divisor_spot_values_on_both_routes() {
        for (x, want) in [(1u64, 1u64), (10, 27), (100, 482), (10_000, 93_668)] {
            assert_eq!(divisor_sum(x as f64, DivisorMethod::Sieve).unwrap(), want);
            assert_eq!(divisor_sum(x as f64, DivisorMethod::Hyperbola).unwrap(), want);
        }
        assert_eq!(divisor_sum(10.9, DivisorMethod::Hyperbola).unwrap(), 27);
        assert!(divisor_sum(0.5, DivisorMethod::Sieve).is_err());
        assert!(matches!(
            divisor_sum(1e9, DivisorMethod::Sieve),
            Err(Error::SieveTooLarge(_))
        ));
    }

    #[test]
    fn circle_spot_values_on_both_routes() {
        for (x, want) in [(0u64, 1u64), (4, 13), (10, 37), (100, 317), (10_000, 31_417)] {
            assert_eq!(circle_count(x as f64, CircleMethod::Brute).unwrap(), want);
            assert_eq!(circle_count(x as f64, CircleMethod::Gauss).unwrap(), want);
        }
    }

    #[test]
    fn the_two_routes_agree_on_a_range_and_random_reals() {
        for x in 1..=2000u64 {
            assert_eq!(
                divisor_sum(x as f64, DivisorMethod::Sieve).unwrap(),
                divisor_sum(x as f64, DivisorMethod::Hyperbola).unwrap(),
            );
            assert_eq!(
                circle_count(x as f64, CircleMethod::Brute).unwrap(),
                circle_count(x as f64, CircleMethod::Gauss).unwrap(),
            );
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let x: f64 = rng.gen_range(1.0..1e6);
            assert_eq!(
                circle_count(x, CircleMethod::Brute).unwrap(),
                circle_count(x, CircleMethod::Gauss).unwrap(),
            );
        }
    }

    #[test]
    fn counts_are_nondecreasing_in_x() {
        let mut d_prev = 0;
        let mut n_prev = 0;
        for x in 1..=400u64 {
            let d = divisor_sum(x as f64, DivisorMethod::Hyperbola).unwrap();
            let n = circle_count(x as f64, CircleMethod::Gauss).unwrap();
            assert!(d >= d_prev && n >= n_prev, "step down at X = {x}");
            d_prev = d;
            n_prev = n;
        }
    }

    #[test]
    fn divisor_report_at_a_million_matches_the_reference() {
        let rep = delta_report(1e6).unwrap();
        assert_eq!(rep.count, 13_970_034);
        assert!((rep.error_term - 92.11223266017467902709).abs() < 1e-10, "{}", rep.error_term);
        assert!((rep.psi_side - -46.139449655087343482).abs() < 1e-10, "{}", rep.psi_side);
        assert!((rep.residual - (-1.0 / 12.0)).abs() < 1e-7, "{}", rep.residual);
        assert!(rep.residual.abs() <= RESIDUAL_CAP_DIVISOR);
    }

    #[test]
    fn circle_report_at_a_million_stays_capped() {
        let rep = circle_report(1e6).unwrap();
        assert_eq!(rep.count, 3_141_549);
        assert!((rep.error_term - (rep.count as f64 - std::f64::consts::PI * 1e6)).abs() < 1e-6);
        assert!(rep.residual.abs() <= RESIDUAL_CAP_CIRCLE, "{}", rep.residual);
        assert!(delta_report(3.0).is_err());
        assert!(circle_report(3.9).is_err());
    }

    #[test]
    fn integer_sawtooth_argument_enters_exactly() {
        // At integer X the m = 1 term of the divisor side is psi(X) = -1/2.
        let with = divisor_psi_side(9.0);
        let tail: f64 = (2..=3u64).map(|m| psi_frac(9, m as i128)).sum();
        assert_eq!(with, -0.5 + tail);
    }

    #[test]
    fn residual_caps_hold_and_are_not_slack_on_a_prefix() {
        let sweep = residual_sweep(20_000).unwrap();
        assert!(sweep.divisor_sup <= RESIDUAL_CAP_DIVISOR, "{}", sweep.divisor_sup);
        assert!(sweep.divisor_sup > 0.16, "{}", sweep.divisor_sup);
        assert!(sweep.circle_sup <= RESIDUAL_CAP_CIRCLE, "{}", sweep.circle_sup);
        assert!(sweep.circle_sup > 1.2, "{}", sweep.circle_sup);
        assert!(sweep.divisor_argmax >= 4 && sweep.circle_argmax >= 4);
    }

    #[test]
    fn scan_rows_match_the_single_x_reports() {
        let rows = psi_check_rows(50, 1, CountingProblem::Divisor).unwrap();
        assert_eq!(rows.len(), 47);
        assert_eq!(rows[0].x, 4);
        for row in [&rows[0], &rows[21], &rows[46]] {
            let rep = delta_report(row.x as f64).unwrap();
            assert_eq!(row.error_term, rep.error_term);
            assert_eq!(row.psi_side, rep.psi_side);
            assert_eq!(row.residual, rep.residual);
        }
        let circ = psi_check_rows(60, 7, CountingProblem::Circle).unwrap();
        for row in &circ {
            let rep = circle_report(row.x as f64).unwrap();
            assert_eq!(row.error_term, rep.error_term);
            assert_eq!(row.residual, rep.residual);
        }
    }

    #[test]
    fn swapping_both_signs_negates_the_sawtooth_side() {
        for x in [100.0, 1234.0, 55_555.0] {
            let ident = circle_psi_side(x, CircleVariant::default());
            let both = circle_psi_side(
                x,
                CircleVariant { swap_quarter_shift: true, swap_denominator_shift: true },
            );
            assert_eq!(ident, -both);
        }
    }

    #[test]
    fn only_the_identity_variant_is_bounded() {
        let verdicts = scan_circle_variants(20_000).unwrap();
        assert_eq!(verdicts.len(), 4);
        for v in &verdicts {
            let is_identity = v.variant == CircleVariant::default();
            assert_eq!(v.bounded, is_identity, "{:?}: {} -> {}", v.variant, v.sup_half, v.sup_full);
            if is_identity {
                assert!(v.sup_full <= RESIDUAL_CAP_CIRCLE);
            } else {
                assert!(v.sup_full > 2.0 * RESIDUAL_CAP_CIRCLE);
            }
        }
    }

    #[test]
    fn block_sawtooth_sum_matches_hand_values_and_caps() {
        let r = r_sum(3, 100, 0, 0).unwrap();
        assert!((r - -1.0).abs() < 1e-12, "{r}");
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let m = rng.gen_range(3..=1000u64);
            let t = rng.gen_range(m * m..=4_000_000u64);
            let a = [-1, 0, 1][rng.gen_range(0..3)];
            let b = if a == 0 { [-1, 0, 1][rng.gen_range(0..3)] } else { 0 };
            let r = r_sum(m, t, a, b).unwrap();
            assert!(r.abs() <= (m as f64 + 1.0) / 2.0, "M = {m}: {r}");
        }
    }

    #[test]
    fn unit_b_offsets_each_argument_by_a_quarter() {
        let (m, t) = (5u64, 1_000u64);
        let shifted = r_sum(m, t, 0, 1).unwrap();
        let direct: f64 =
            (m..=2 * m).map(|mm| psi_frac(16 * t as i128 + 4 * mm as i128, 16 * mm as i128)).sum();
        assert_eq!(shifted, direct);
    }

    #[test]
    fn block_sawtooth_sum_rejects_bad_parameters() {
        assert!(r_sum(2, 100, 0, 0).is_err());
        assert!(r_sum(11, 100, 0, 0).is_err());
        assert!(r_sum(3, 100, 1, 1).is_err());
    }

    #[test]
    fn short_interval_counts_match_the_direct_scan() {
        let levels = divisor_short_interval_count(10_000, 100, &[1.0 / 16.0, 0.5, 1.0]).unwrap();
        assert_eq!(levels[0].count, 80);
        assert_eq!(levels[0].divisor_side, 1501);
        assert_eq!(levels[1].count, 601);
        assert_eq!(levels[2].count, 601);
        for level in &levels {
            assert!(level.count <= level.divisor_side, "{:?}", level);
        }
        assert!(divisor_short_interval_count(10_000, 100, &[0.3]).is_err());
        assert!(divisor_short_interval_count(10_000, 100, &[2.0]).is_err());
    }
}
