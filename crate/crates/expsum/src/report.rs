//! Rendering of module results into machine-readable reports: JSON with
//! deterministic key order, and CSV for the tabular outputs. Rationals
//! always serialize as exact "p/q" strings; high-precision scalars as
//! 30-digit decimals.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::bounds::remark::RemarkRatios;
use crate::bounds::replay::{Replay7Certificate, Replay8Certificate, ThetaSolution};
use crate::bounds::{BoundSpec, RegionVerdict};
use crate::dd::Dd;
use crate::lattice::{LatticeReport, PsiCheckRow, ResidualSweep, ShortIntervalLevel, VariantVerdict};
use crate::planner::{NstarReport, PlannerReport};
use crate::rational::{fmt_rat, Rat};
use crate::sums::{PhaseCheck, SumJob, SumResult};
use crate::tables::{ExponentTable, IdentityRecord};
use crate::verify::CriterionResult;

pub fn rat_value(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

pub fn dd_value(v: Dd) -> Value {
    Value::String(v.to_decimal(30))
}

/// Finite floats go through serde_json's shortest round-trip encoding;
/// non-finite values become strings, since JSON has no literal for them.
pub fn f64_value(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::String(format!("{v}"))
    }
}

fn complex_value(z: Complex64) -> Value {
    json!({ "re": f64_value(z.re), "im": f64_value(z.im) })
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(fields: &[String]) -> String {
    fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",")
}

pub fn identities_csv(records: &[IdentityRecord]) -> String {
    let mut out = String::from("name,kind,lhs,rhs,holds\n");
    for r in records {
        out.push_str(&csv_line(&[
            r.name.to_string(),
            r.kind.as_str().to_string(),
            fmt_rat(&r.lhs),
            fmt_rat(&r.rhs),
            r.holds.to_string(),
        ]));
        out.push('\n');
    }
    out
}

pub fn identities_json(records: &[IdentityRecord]) -> Value {
    json!({
        "count": records.len(),
        "all_hold": records.iter().all(|r| r.holds),
        "records": records
            .iter()
            .map(|r| json!({
                "name": r.name,
                "kind": r.kind.as_str(),
                "lhs": rat_value(&r.lhs),
                "rhs": rat_value(&r.rhs),
                "holds": r.holds,
            }))
            .collect::<Vec<_>>(),
    })
}

pub fn table_json(t: &ExponentTable) -> Value {
    json!({
        "nu": t.nu,
        "q": rat_value(&t.q),
        "rho": rat_value(&t.rho),
        "alpha": [rat_value(&t.alpha.0), rat_value(&t.alpha.1)],
        "beta": [rat_value(&t.beta.0), rat_value(&t.beta.1), rat_value(&t.beta.2)],
        "beta_star": [rat_value(&t.beta_star.0), rat_value(&t.beta_star.1)],
    })
}

pub fn theta_json(sol: &ThetaSolution) -> Value {
    json!({
        "theta": rat_value(&sol.theta),
        "balance": rat_value(&sol.balance),
    })
}

pub fn eval_json(b: &BoundSpec, h: &Rat, m: &Rat, exponent: &Rat, v: &RegionVerdict) -> Value {
    json!({
        "id": b.id.as_str(),
        "nu": b.nu,
        "target": b.target.as_str(),
        "h": rat_value(h),
        "m": rat_value(m),
        "exponent": rat_value(exponent),
        "pure_exponent_ok": v.pure_exponent_ok,
        "with_logs_ok": v.with_logs_ok,
        "failed_conditions": v.failed_conditions,
        "notes": b.notes,
    })
}

pub fn replay7_json(c: &Replay7Certificate) -> Value {
    json!({
        "grid_density": c.grid_density,
        "points_checked": c.points_checked,
        "theta": rat_value(&c.theta),
        "max_min_exponent": rat_value(&c.max_min_exponent),
        "witnesses": c.witnesses
            .iter()
            .map(|(h, m)| json!([rat_value(h), rat_value(m)]))
            .collect::<Vec<_>>(),
        "balance_line_attained": c.balance_line_attained,
        "all_points_pass": c.all_points_pass,
        "failures": c.failures
            .iter()
            .map(|f| json!({
                "h": rat_value(&f.h),
                "m": rat_value(&f.m),
                "min_exponent": rat_value(&f.min_exponent),
            }))
            .collect::<Vec<_>>(),
    })
}

pub fn replay8_json(c: &Replay8Certificate) -> Value {
    json!({
        "tuple": c.tuple.iter().map(rat_value).collect::<Vec<_>>(),
        "merged_lead": [rat_value(&c.merged_lead.0), rat_value(&c.merged_lead.1)],
        "shrink_pair": [rat_value(&c.shrink_pair.0), rat_value(&c.shrink_pair.1)],
        "lead_quotient": rat_value(&c.lead_quotient),
        "merged_quotient": rat_value(&c.merged_quotient),
        "shrink_quotient": rat_value(&c.shrink_quotient),
        "aspect_floor": rat_value(&c.aspect_floor),
        "shrink_margin": rat_value(&c.shrink_margin),
        "eps_margins": [rat_value(&c.eps_margins.0), rat_value(&c.eps_margins.1)],
        "phi": rat_value(&c.phi),
        "ok": c.ok,
        "failures": c.failures,
    })
}

fn ratio_extremes(samples: &[((Rat, Rat), Rat)]) -> Value {
    let min = samples.iter().min_by(|a, b| a.1.cmp(&b.1));
    let max = samples.iter().max_by(|a, b| a.1.cmp(&b.1));
    match (min, max) {
        (Some(lo), Some(hi)) => json!({
            "count": samples.len(),
            "min": rat_value(&lo.1),
            "min_at": [rat_value(&lo.0.0), rat_value(&lo.0.1)],
            "max": rat_value(&hi.1),
            "max_at": [rat_value(&hi.0.0), rat_value(&hi.0.1)],
        }),
        _ => json!({ "count": 0 }),
    }
}

pub fn remark_json(r: &RemarkRatios) -> Value {
    json!({
        "nu": r.nu,
        "window": [rat_value(&r.window.0), rat_value(&r.window.1)],
        "scaled_upsilon": ratio_extremes(&r.upsilon_samples),
        "scaled_zeta": ratio_extremes(&r.zeta_samples),
        "skipped": r.skipped.len(),
        "all_in_window": r.all_in_window,
    })
}

pub fn exppair_json(word: &str, seed: &(Rat, Rat), result: &(Rat, Rat)) -> Value {
    json!({
        "word": word,
        "seed": [rat_value(&seed.0), rat_value(&seed.1)],
        "pair": [rat_value(&result.0), rat_value(&result.1)],
    })
}

pub fn plan_json(rep: &PlannerReport, fallback: Option<&NstarReport>) -> Value {
    let mut v = json!({
        "case": rep.case.as_str(),
        "nu": rep.nu,
        "n": dd_value(rep.n),
        "r": rep.r.to_string(),
        "r1": dd_value(rep.r1),
        "q2": dd_value(rep.q2),
        "q3": dd_value(rep.q3),
        "q4": dd_value(rep.q4),
        "q5": dd_value(rep.q5),
        "v0": dd_value(rep.v0),
        "v0_star": dd_value(rep.v0star),
        "v1": dd_value(rep.v1),
        "v2": dd_value(rep.v2),
        "eta": dd_value(rep.eta),
        "q_prime": dd_value(rep.qprime),
        "checks": rep.checks
            .iter()
            .map(|c| json!({
                "name": c.name,
                "formula": c.formula,
                "lhs": dd_value(c.lhs),
                "rhs": dd_value(c.rhs),
                "ok": c.ok,
            }))
            .collect::<Vec<_>>(),
        "case_i_gate": rep.case_i_gate,
        "all_ok": rep.all_ok,
    });
    if let Some(f) = fallback {
        v["fallback"] = json!({
            "n_star": dd_value(f.nstar),
            "r_star": dd_value(f.rstar),
            "h_star": dd_value(f.hstar),
            "window": [dd_value(f.window.0), dd_value(f.window.1)],
            "m_in_window": f.m_in_window,
            "h_below_h_star": f.h_below_hstar,
            "triggers": f.triggers,
        });
    }
    v
}

pub fn sum_json(job: &SumJob, res: &SumResult) -> Value {
    json!({
        "job": format!("{job:?}"),
        "value": complex_value(res.value),
        "abs": f64_value(res.value.norm()),
        "term_count": res.term_count,
        "weight_sum": f64_value(res.weight_sum),
        "phase_error_bound": f64_value(res.phase_error_bound),
        "method": res.method.as_str(),
    })
}

pub fn phase_check_json(c: &PhaseCheck) -> Value {
    let ext = |e: &crate::sums::Extremes| {
        json!({
            "min": f64_value(e.min),
            "min_at": f64_value(e.min_at),
            "max": f64_value(e.max),
            "max_at": f64_value(e.max_at),
        })
    };
    json!({
        "ok": c.ok,
        "d1": ext(&c.witnesses.d1),
        "d2": ext(&c.witnesses.d2),
        "d3": ext(&c.witnesses.d3),
        "curvature": ext(&c.witnesses.curvature),
        "violations": c.violations,
    })
}

pub fn fit_json(samples: &[(f64, f64)], slope: f64) -> Value {
    json!({
        "samples": samples.len(),
        "slope": f64_value(slope),
        "gate": "report-only",
    })
}

pub fn lattice_count_json(x: f64, method: &str, count: u64) -> Value {
    json!({
        "x": f64_value(x),
        "method": method,
        "count": count,
    })
}

pub fn lattice_report_json(problem: &str, rep: &LatticeReport, cap: f64) -> Value {
    json!({
        "problem": problem,
        "x": f64_value(rep.x),
        "count": rep.count,
        "main_term": f64_value(rep.main_term),
        "error_term": f64_value(rep.error_term),
        "psi_side": f64_value(rep.psi_side),
        "residual": f64_value(rep.residual),
        "residual_cap": f64_value(cap),
        "within_cap": rep.residual.abs() <= cap,
    })
}

pub fn psi_check_csv(rows: &[PsiCheckRow]) -> String {
    let mut out = String::from("X,error_term,psi_side,residual\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.x, r.error_term, r.psi_side, r.residual));
    }
    out
}

pub fn psi_check_json(problem: &str, rows: &[PsiCheckRow], cap: f64) -> Value {
    let sup = rows.iter().map(|r| r.residual.abs()).fold(0.0, f64::max);
    json!({
        "problem": problem,
        "rows": rows.len(),
        "residual_sup": f64_value(sup),
        "residual_cap": f64_value(cap),
        "within_cap": sup <= cap,
    })
}

pub fn sweep_json(s: &ResidualSweep) -> Value {
    json!({
        "xmax": s.xmax,
        "divisor_sup": f64_value(s.divisor_sup),
        "divisor_argmax": s.divisor_argmax,
        "circle_sup": f64_value(s.circle_sup),
        "circle_argmax": s.circle_argmax,
    })
}

pub fn variants_json(verdicts: &[VariantVerdict]) -> Value {
    json!(verdicts
        .iter()
        .map(|v| json!({
            "swap_quarter_shift": v.variant.swap_quarter_shift,
            "swap_denominator_shift": v.variant.swap_denominator_shift,
            "sup_half": f64_value(v.sup_half),
            "sup_full": f64_value(v.sup_full),
            "bounded": v.bounded,
        }))
        .collect::<Vec<_>>())
}

pub fn rsum_json(m: u64, t: u64, a: i64, b: i64, value: f64) -> Value {
    json!({
        "M": m,
        "T": t,
        "a": a,
        "b": b,
        "value": f64_value(value),
        "term_count": m + 1,
    })
}

pub fn short_interval_json(t: u64, m: u64, levels: &[ShortIntervalLevel]) -> Value {
    json!({
        "T": t,
        "M": m,
        "levels": levels
            .iter()
            .map(|l| json!({
                "delta": f64_value(l.delta),
                "count": l.count,
                "divisor_side": l.divisor_side,
                "dominated": l.count <= l.divisor_side,
            }))
            .collect::<Vec<_>>(),
    })
}

pub fn verify_json(results: &[CriterionResult]) -> Value {
    json!({
        "all_pass": results.iter().all(|r| r.passed),
        "criteria": results
            .iter()
            .map(|r| json!({
                "index": r.index,
                "name": r.name,
                "passed": r.passed,
                "millis": r.millis,
                "detail": r.detail,
            }))
            .collect::<Vec<_>>(),
    })
}

/// The pass/fail matrix as fixed-width text, one criterion per line.
pub fn verify_matrix(results: &[CriterionResult]) -> String {
    let mut out = String::new();
    for r in results {
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "criterion {:02} {:<32} {} ({:>7.2} s) {}\n",
            r.index,
            r.name,
            verdict,
            r.millis as f64 / 1000.0,
            r.detail,
        ));
    }
    let passed = results.iter().filter(|r| r.passed).count();
    out.push_str(&format!("{passed}/{} criteria passed\n", results.len()));
    out
}

pub fn verify_csv(results: &[CriterionResult]) -> String {
    let mut out = String::from("index,name,passed,millis,detail\n");
    for r in results {
        out.push_str(&csv_line(&[
            r.index.to_string(),
            r.name.to_string(),
            r.passed.to_string(),
            r.millis.to_string(),
            r.detail.clone(),
        ]));
        out.push('\n');
    }
    out
}
