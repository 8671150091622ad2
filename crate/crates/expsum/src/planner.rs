//! Parameter bookkeeping for the dissection step: given (H, M, T) and a
//! case selector, produce the block length N, the spacing parameter R, the
//! derived scales Q2..Q5, V0..V2, eta, Q', and a feasibility verdict for
//! every side condition the construction relies on.
//!
//! Everything numeric runs in double-double arithmetic; R alone is computed
//! exactly (ceiling of an exact rational square root) so reruns can never
//! disagree on the integer.

use num_bigint::BigInt;

use crate::dd::{bigint_to_dd, Dd};
use crate::error::{Error, Result};
use crate::rational::{ceil_sqrt, pow_int, Rat};
use crate::tables::q_of_nu;

/// Exact double-double quotient of two small integers (many exponents here
/// are not representable in binary, so f64 literals would drift).
fn frac(a: i64, b: i64) -> Dd {
    Dd::from_i64(a) / Dd::from_i64(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanCase {
    A,
    B,
}

impl PlanCase {
    pub fn as_str(self) -> &'static str {
        match self {
            PlanCase::A => "A",
            PlanCase::B => "B",
        }
    }
}

impl std::str::FromStr for PlanCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<PlanCase> {
        match s {
            "A" | "a" => Ok(PlanCase::A),
            "B" | "b" => Ok(PlanCase::B),
            _ => Err(Error::BadInput(format!("case must be A or B, got {s}"))),
        }
    }
}

/// The absolute constants of the construction, all adjustable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub c5: f64,
    pub b5: f64,
    pub b6: f64,
    pub b7prime: f64,
    pub b0: f64,
}

impl Default for Constants {
    fn default() -> Constants {
        Constants {
            c1: 14.0,
            c2: 14.0,
            c3: 14.0,
            c4: 14.0,
            c5: 2.0,
            b5: 1.0,
            b6: 1.0,
            b7prime: 1.0,
            b0: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlannerInput {
    pub case: PlanCase,
    pub nu: u32,
    pub h: f64,
    pub m: f64,
    pub t: f64,
    pub consts: Constants,
}

/// One side condition, normalized so that ok means lhs <= rhs (the formula
/// text records strictness where it matters).
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub formula: &'static str,
    pub lhs: Dd,
    pub rhs: Dd,
    pub ok: bool,
}

fn check(name: &'static str, formula: &'static str, lhs: Dd, rhs: Dd) -> Check {
    Check { name, formula, lhs, rhs, ok: lhs <= rhs }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlannerReport {
    pub case: PlanCase,
    pub nu: u32,
    pub n: Dd,
    pub r: BigInt,
    pub r1: Dd,
    pub q2: Dd,
    pub q3: Dd,
    pub q4: Dd,
    pub q5: Dd,
    pub v0: Dd,
    pub v0star: Dd,
    pub v1: Dd,
    pub v2: Dd,
    pub eta: Dd,
    pub qprime: Dd,
    pub checks: Vec<Check>,
    /// The disjunctive gate: H M^9 large, or M above the split point (both
    /// priced with their log powers). Its two halves appear in checks too.
    pub case_i_gate: bool,
    pub all_ok: bool,
}

fn positive(name: &str, v: f64) -> Result<Dd> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::BadInput(format!("{name} must be a positive finite real, got {v}")));
    }
    Ok(Dd::from_f64(v))
}

fn require_positive(formula: &'static str, v: Dd) -> Result<Dd> {
    if !v.is_finite() || !(v > Dd::ZERO) {
        return Err(Error::NonPositive { formula: formula.to_string(), value: format!("{v}") });
    }
    Ok(v)
}

const N_CASE_A: &str = "N = H (M/H)^{41/25} T^{-49/100} (log T)^{969/14000}";
const N_CASE_B: &str =
    "N = min{ M^{7/8} (log T)^{969/5600} / (T^{3/20} H^{29/40}), B7' M^2 / (H^{1/3} T^{2/3}) }";

/// Block length from the case formula, with every comparability constant
/// set to one.
pub fn block_length(input: &PlannerInput) -> Result<Dd> {
    let h = positive("H", input.h)?;
    let m = positive("M", input.m)?;
    let t = positive("T", input.t)?;
    let log_t = t.ln();
    match input.case {
        PlanCase::A => {
            let n = h * (m / h).pow(frac(41, 25))
                * t.pow(frac(-49, 100))
                * log_t.pow(frac(969, 14000));
            require_positive(N_CASE_A, n)
        }
        PlanCase::B => {
            let first = m.pow(frac(7, 8))
                * log_t.pow(frac(969, 5600))
                / (t.pow(frac(3, 20)) * h.pow(frac(29, 40)));
            let second = Dd::from_f64(input.consts.b7prime) * m.sqr()
                / (h.pow(frac(1, 3)) * t.pow(frac(2, 3)));
            require_positive(N_CASE_B, first.min(second))
        }
    }
}

/// Spacing parameter: the exact ceiling of sqrt(C2 M^3 / (N T)), taken over
/// the exact rational image of the double-double N.
pub fn spacing(n: Dd, m: f64, t: f64, c2: f64) -> Result<BigInt> {
    let n_rat = n
        .to_rational()
        .ok_or_else(|| Error::NonPositive { formula: "R^2 = C2 M^3 / (N T)".into(), value: format!("{n}") })?;
    let m_rat = Dd::from_f64(m).to_rational().unwrap_or_else(|| Rat::from_integer(0.into()));
    let t_rat = Dd::from_f64(t).to_rational().unwrap_or_else(|| Rat::from_integer(0.into()));
    let c2_rat = Dd::from_f64(c2).to_rational().unwrap_or_else(|| Rat::from_integer(0.into()));
    let denom = &n_rat * &t_rat;
    if denom <= Rat::from_integer(0.into()) || c2_rat <= Rat::from_integer(0.into()) {
        return Err(Error::NonPositive {
            formula: "R^2 = C2 M^3 / (N T)".into(),
            value: format!("{denom}"),
        });
    }
    let arg = c2_rat * pow_int(&m_rat, 3)? / denom;
    ceil_sqrt(&arg)
}

pub fn plan(input: &PlannerInput) -> Result<PlannerReport> {
    let h = positive("H", input.h)?;
    let m = positive("M", input.m)?;
    let t = positive("T", input.t)?;
    let q = q_of_nu(input.nu);
    if input.nu < 3 {
        return Err(Error::BadNu(input.nu as i64));
    }
    let c2 = positive("C2", input.consts.c2)?;
    let b5 = positive("B5", input.consts.b5)?;
    let b6 = positive("B6", input.consts.b6)?;
    let log_t = t.ln();

    let n = block_length(input)?;
    let r_int = spacing(n, input.m, input.t, input.consts.c2)?;
    let r = bigint_to_dd(&r_int);

    let r1 = (m * m * m / (n * t)).sqrt();
    let hr = h / r;
    let log2hr = (Dd::from_u64(2) * hr).ln();
    let q_dd = Dd::from_rational(&q);
    let q2 = r * hr.pow(frac(39, 119)) * log2hr.pow(frac(-3, 4));
    let q3 = r * hr.pow(frac(1, 3)) / log2hr;
    let q4 = b5 * r * hr.pow(frac(41, 119));
    let q5 = r
        * hr.pow(frac(2, 3) - frac(44, 17) / q_dd);
    let v0 = hr.pow(frac(18, 17));
    let v0star = hr;
    let v1 = r.powi(4) / (h * n);
    let v2 = m * m / (h * n.powi(3));
    let eta = (r / h).pow(
        frac(2, 51) / (q_dd - Dd::from_u64(2)),
    );
    let qprime = r * (r / h).pow(frac(41, 119)) * eta / b5;

    let mut checks = Vec::new();
    checks.push(check("n-floor", "64 C2 H <= N", Dd::from_u64(64) * c2 * h, n));
    checks.push(check("n-cap", "N <= M / 10", n, m / Dd::from_u64(10)));
    checks.push(check(
        "r-floor",
        "2 C2 sqrt(H) + 1 <= R",
        Dd::from_u64(2) * c2 * h.sqrt() + Dd::ONE,
        r,
    ));
    checks.push(check("r-cap", "R <= H", r, h));
    checks.push(check("hn2-le-mr2", "H N^2 <= M R^2", h * n.sqr(), m * r.sqr()));
    checks.push(check(
        "hr-floor",
        "(B5^2 B6)^{357/113} <= H / R",
        (b5.sqr() * b6).pow(frac(357, 113)),
        hr,
    ));
    checks.push(check(
        "hr-cap",
        "H / R <= (H T / (2 B5 M^2))^{357/487}",
        hr,
        (h * t / (Dd::from_u64(2) * b5 * m.sqr())).pow(frac(357, 487)),
    ));
    checks.push(check(
        "mr2-hn-vs-v0sq",
        "V0^2 <= M R^2 / (H N)",
        v0.sqr(),
        m * r.sqr() / (h * n),
    ));
    if input.case == PlanCase::A {
        checks.push(check("caseA-v-floor", "V0 <= min{V1, V2}", v0, v1.min(v2)));
    }

    let hm9 = check(
        "case-i-hm9",
        "T^4 (log T)^{171/140} <= H M^9",
        t.powi(4) * log_t.pow(frac(171, 140)),
        h * m.powi(9),
    );
    let msplit = Check {
        name: "case-i-m",
        formula: "T^{7/16} (log T)^{19/448} < M",
        lhs: t.pow(frac(7, 16)) * log_t.pow(frac(19, 448)),
        rhs: m,
        ok: t.pow(frac(7, 16)) * log_t.pow(frac(19, 448))
            < m,
    };
    let case_i_gate = hm9.ok || msplit.ok;
    checks.push(hm9);
    checks.push(msplit);

    let all_ok = checks.iter().all(|c| c.ok || c.name.starts_with("case-i")) && case_i_gate;

    Ok(PlannerReport {
        case: input.case,
        nu: input.nu,
        n,
        r: r_int,
        r1,
        q2,
        q3,
        q4,
        q5,
        v0,
        v0star,
        v1,
        v2,
        eta,
        qprime,
        checks,
        case_i_gate,
        all_ok,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NstarReport {
    pub nstar: Dd,
    pub rstar: Dd,
    pub hstar: Dd,
    /// The M-window (T^{7/16}, T^{9/16}) inside which the fallback matters.
    pub window: (Dd, Dd),
    pub m_in_window: bool,
    pub h_below_hstar: bool,
    /// Both conditions at once: the fallback block length is actually needed.
    pub triggers: bool,
}

/// Fallback block length for the regime where the main choice of N breaks
/// down: M within a half-power of T^{1/2} and H below the log-priced
/// ceiling H*.
pub fn nstar_fallback(h: f64, m: f64, t: f64) -> Result<NstarReport> {
    let h = positive("H", h)?;
    let m = positive("M", m)?;
    let t = positive("T", t)?;
    let log_t = t.ln();
    if !(log_t > Dd::ZERO) {
        return Err(Error::NonPositive { formula: "log T".into(), value: format!("{log_t}") });
    }

    let hstar = log_t.pow(frac(171, 140))
        * (t.powi(4) / m.powi(9)).max(m.powi(11) / t.powi(6));
    let nstar = log_t.pow(frac(969, 5600)) / h.pow(frac(29, 40))
        * (m.pow(frac(7, 8)) / t.pow(frac(3, 20))).max(m.pow(frac(103, 40)) / t);
    let nstar = require_positive(
        "N* = (log T)^{969/5600} H^{-29/40} max{M^{7/8} T^{-3/20}, M^{103/40} / T}",
        nstar,
    )?;
    let rstar = (m.powi(3) / (t * nstar)).sqrt();

    let lo = t.pow(frac(7, 16));
    let hi = t.pow(frac(9, 16));
    let m_in_window = m >= lo && m <= hi;
    let h_below_hstar = h < hstar;
    Ok(NstarReport {
        nstar,
        rstar,
        hstar,
        window: (lo, hi),
        m_in_window,
        h_below_hstar,
        triggers: m_in_window && h_below_hstar,
    })
}
