//! Replays of the two headline constant computations: the crossing that
//! produces the divisor exponent theta = 517/1648, the grid certificate
//! showing the catalog really delivers that exponent across the whole
//! admissible window, and the bookkeeping behind the mean-square margin.

use crate::bounds::{build_bound, eval_exponent, region_check, BoundId, BoundSpec};
use crate::error::{Error, Result};
use crate::pwl::{LinForm, PwlExpr};
use crate::rational::{rat, rat_int, Rat};
use crate::tables::{RHO_MEAN_SQUARE, THETA};

#[derive(Debug, Clone, PartialEq)]
pub struct ThetaSolution {
    /// Common exponent value at the crossing.
    pub theta: Rat,
    /// Aspect x = m - h at which the two bounds agree.
    pub balance: Rat,
}

/// Intersect two affine exponent forms that depend on (h, m) only through
/// the aspect x = m - h. Errors if either form has genuine two-variable
/// dependence, or if the slopes coincide.
pub fn balance_crossing(f: &LinForm, g: &LinForm) -> Result<ThetaSolution> {
    for form in [f, g] {
        if form.h != -form.m.clone() {
            return Err(Error::BadInput(format!(
                "crossing requires aspect-only forms, got {}",
                form.render("h", "m")
            )));
        }
    }
    // c + k h - k m = c - k x, so the slope in x is the negated h part.
    let s1 = -f.h.clone();
    let s2 = -g.h.clone();
    if s1 == s2 {
        return Err(Error::NoCrossing);
    }
    let balance = (&g.c - &f.c) / (&s1 - &s2);
    let theta = &f.c + &s1 * &balance;
    Ok(ThetaSolution { theta, balance })
}

fn single_lin(spec: &BoundSpec) -> LinForm {
    match &spec.expr {
        PwlExpr::Lin(f) => f.clone(),
        _ => unreachable!("expected a single affine exponent"),
    }
}

fn max_branches(spec: &BoundSpec) -> Vec<LinForm> {
    match &spec.expr {
        PwlExpr::Max(cs) => cs
            .iter()
            .map(|c| match c {
                PwlExpr::Lin(f) => f.clone(),
                _ => unreachable!("expected affine branches"),
            })
            .collect(),
        _ => unreachable!("expected a max of affine branches"),
    }
}

/// Balance the gated aspect bound H79 against the shrink branch of the
/// nu = 3 simplification. The crossing is the exponent the workbench is
/// built around: theta = 517/1648 at aspect 71/206.
pub fn derive_theta() -> Result<ThetaSolution> {
    derive_theta_with_offset(&rat_int(0))
}

/// Same crossing with the constant of H79 shifted by `offset`; exposes how
/// sensitive theta is to that constant.
pub fn derive_theta_with_offset(offset: &Rat) -> Result<ThetaSolution> {
    let mut lead = single_lin(&build_bound(BoundId::H79, 3)?);
    lead.c = &lead.c + offset;
    let shrink = max_branches(&build_bound(BoundId::H711, 3)?)[1].clone();
    balance_crossing(&lead, &shrink)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridFailure {
    pub h: Rat,
    pub m: Rat,
    pub min_exponent: Rat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Replay7Certificate {
    pub grid_density: u32,
    pub points_checked: usize,
    pub theta: Rat,
    /// Largest over the grid of the smallest applicable exponent.
    pub max_min_exponent: Rat,
    /// Sample of points attaining the maximum (capped).
    pub witnesses: Vec<(Rat, Rat)>,
    /// Whether some maximizer sits on the balance line m - h = 71/206.
    pub balance_line_attained: bool,
    pub all_points_pass: bool,
    pub failures: Vec<GridFailure>,
}

const WITNESS_CAP: usize = 12;

/// Certify on a rational grid that every admissible (h, m) pair admits some
/// applicable catalog bound with exponent at most theta.
///
/// The grid spans the window floor <= h <= m - theta, (9 theta - 2)/2 <= m
/// <= 1/2, at `grid_density + 1` points per axis, and always includes the
/// h-values on the balance line so the maximum is attained exactly.
pub fn replay_section7(grid_density: u32) -> Result<Replay7Certificate> {
    if grid_density == 0 {
        return Err(Error::BadInput("grid density must be at least 1".into()));
    }
    let theta = THETA.clone();
    let n = rat_int(grid_density as i64);
    let h_lo = super::h_floor();
    let m_lo = (rat_int(9) * &theta - rat_int(2)) / rat_int(2);
    let m_hi = rat(1, 2);
    let balance = rat(71, 206);

    let candidates: Vec<BoundSpec> = [BoundId::EP337, BoundId::H79, BoundId::H711, BoundId::H712]
        .into_iter()
        .map(|id| build_bound(id, 3))
        .collect::<Result<_>>()?;

    let mut max_min: Option<Rat> = None;
    let mut witnesses: Vec<(Rat, Rat)> = Vec::new();
    let mut balance_line_attained = false;
    let mut failures = Vec::new();
    let mut points_checked = 0usize;

    for j in 0..=grid_density {
        let m = &m_lo + (&m_hi - &m_lo) * rat_int(j as i64) / &n;
        let h_hi = &m - &theta;
        let mut hs: Vec<Rat> = (0..=grid_density)
            .map(|i| &h_lo + (&h_hi - &h_lo) * rat_int(i as i64) / &n)
            .collect();
        let bal_h = &m - &balance;
        if bal_h >= h_lo && bal_h <= h_hi && !hs.contains(&bal_h) {
            hs.push(bal_h);
        }
        // The bottom row degenerates to a single point (h_hi = h_lo there).
        hs.dedup();
        for h in hs {
            points_checked += 1;
            let min = candidates
                .iter()
                .filter(|b| region_check(b, &h, &m, None).pure_exponent_ok)
                .map(|b| eval_exponent(b, &h, &m))
                .min()
                .unwrap_or_else(|| eval_exponent(&candidates[0], &h, &m));
            if min > theta {
                failures.push(GridFailure { h: h.clone(), m: m.clone(), min_exponent: min.clone() });
            }
            match &max_min {
                Some(cur) if min < *cur => {}
                Some(cur) if min == *cur => {
                    if witnesses.len() < WITNESS_CAP {
                        witnesses.push((h.clone(), m.clone()));
                    }
                    if &m - &h == balance {
                        balance_line_attained = true;
                    }
                }
                _ => {
                    witnesses.clear();
                    witnesses.push((h.clone(), m.clone()));
                    balance_line_attained = &m - &h == balance;
                    max_min = Some(min);
                }
            }
        }
    }

    let max_min_exponent = max_min.expect("grid is nonempty");
    Ok(Replay7Certificate {
        grid_density,
        points_checked,
        theta,
        max_min_exponent,
        witnesses,
        balance_line_attained,
        all_points_pass: failures.is_empty(),
        failures,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Replay8Certificate {
    /// The six constants of the nu = 7 instance.
    pub tuple: Vec<Rat>,
    /// Lead and alpha branch merged: aspect power and T power.
    pub merged_lead: (Rat, Rat),
    /// Shrink-over-alpha quotient pair: (M/H) power and T drop.
    pub shrink_pair: (Rat, Rat),
    /// T power over aspect power for the lead term alone.
    pub lead_quotient: Rat,
    /// Same quotient for the merged term: the mean-square exponent rho.
    pub merged_quotient: Rat,
    /// T drop over (M/H) power for the shrink factor.
    pub shrink_quotient: Rat,
    /// Aspect ceiling below which the shrink factor stays small.
    pub aspect_floor: Rat,
    /// Strict negativity margin of the shrink exponent at the ceiling.
    pub shrink_margin: Rat,
    /// Per-term epsilon margins once the aspect cost is priced at 1.01 eps.
    pub eps_margins: (Rat, Rat),
    /// The usable margin: the smaller of the two.
    pub phi: Rat,
    pub ok: bool,
    pub failures: Vec<String>,
}

/// Replay the constant-level bookkeeping for the mean-square bound: the
/// six printed constants, the two quotient identities that produce
/// rho = 7159/22824, and the margins that make the error term shrink.
pub fn replay_section8() -> Result<Replay8Certificate> {
    let tuple = super::closure_tuple(7)?;
    let mut failures: Vec<String> = Vec::new();
    fn check(failures: &mut Vec<String>, name: &str, got: &Rat, want: Rat) {
        if *got != want {
            failures.push(format!("{name}: got {got}, want {want}"));
        }
    }

    let expected = [
        ("lead aspect power", rat(2597, 2550)),
        ("lead T power", rat(543, 1700)),
        ("shrink aspect power", rat(54, 425)),
        ("shrink T drop", rat(847, 20400)),
        ("alpha aspect power", rat(128, 1275)),
        ("alpha T power", rat(643, 20400)),
    ];
    for ((name, want), got) in expected.into_iter().zip(&tuple) {
        check(&mut failures, name, got, want);
    }

    let merged_lead = (&tuple[0] + &tuple[4], &tuple[1] + &tuple[5]);
    check(&mut failures, "merged aspect power", &merged_lead.0, rat(951, 850));
    check(&mut failures, "merged T power", &merged_lead.1, rat(7159, 20400));

    let shrink_pair = (&tuple[2] + &tuple[4], &tuple[3] + &tuple[5]);
    check(&mut failures, "shrink pair aspect", &shrink_pair.0, rat(58, 255));
    check(&mut failures, "shrink pair T drop", &shrink_pair.1, rat(149, 2040));

    let lead_quotient = &tuple[1] / &tuple[0];
    check(&mut failures, "lead quotient", &lead_quotient, rat(1629, 5194));
    let merged_quotient = &merged_lead.1 / &merged_lead.0;
    check(&mut failures, "merged quotient", &merged_quotient, RHO_MEAN_SQUARE.clone());
    let shrink_quotient = &shrink_pair.1 / &shrink_pair.0;
    check(&mut failures, "shrink quotient", &shrink_quotient, rat(149, 464));

    let aspect_floor = rat(11, 35);
    if shrink_quotient <= aspect_floor {
        failures.push(format!(
            "shrink quotient {shrink_quotient} does not clear the aspect floor {aspect_floor}"
        ));
    }
    // Shrink exponent at the worst admissible aspect; must be negative.
    let shrink_margin = &shrink_pair.1 - &shrink_pair.0 * &aspect_floor;
    check(&mut failures, "shrink margin", &shrink_margin, rat(37, 23800));

    let price = rat(101, 100);
    let eps_margins = (&merged_lead.0 - &price, &tuple[0] - &price);
    check(&mut failures, "merged eps margin", &eps_margins.0, rat(185, 1700));
    check(&mut failures, "lead eps margin", &eps_margins.1, rat(43, 5100));
    let phi = eps_margins.0.clone().min(eps_margins.1.clone());
    check(&mut failures, "phi", &phi, rat(43, 5100));

    // The merged T power must sit strictly below the merged aspect power
    // times the mean-square exponent ceiling: that is exactly rho.
    if merged_quotient <= lead_quotient {
        failures.push("merged quotient should exceed the lead quotient".into());
    }

    Ok(Replay8Certificate {
        tuple,
        merged_lead,
        shrink_pair,
        lead_quotient,
        merged_quotient,
        shrink_quotient,
        aspect_floor,
        shrink_margin,
        eps_margins,
        phi,
        ok: failures.is_empty(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rat;

    fn p(s: &str) -> Rat {
        parse_rat(s).unwrap()
    }

    #[test]
    fn theta_crossing_is_exact() {
        let sol = derive_theta().unwrap();
        assert_eq!(sol.theta, p("517/1648"));
        assert_eq!(sol.balance, p("71/206"));
        assert_eq!(sol.theta, THETA.clone());
    }

    #[test]
    fn theta_moves_up_when_the_lead_constant_grows() {
        let bumped = derive_theta_with_offset(&p("1/1000")).unwrap();
        assert!(bumped.theta > p("517/1648"));
        assert!(bumped.balance > p("71/206"));
    }

    #[test]
    fn crossing_against_the_nu6_shrink_lands_elsewhere() {
        let lead = single_lin(&build_bound(BoundId::H79, 3).unwrap());
        let shrink6 = max_branches(&build_bound(BoundId::H712, 6).unwrap())[1].clone();
        let sol = balance_crossing(&lead, &shrink6).unwrap();
        assert_eq!(sol.balance, p("83/248"));
        assert_ne!(sol.theta, THETA.clone());
    }

    #[test]
    fn parallel_forms_do_not_cross() {
        let f = LinForm::new(rat(1, 3), rat(1, 25), rat(-1, 25));
        let g = LinForm::new(rat(1, 4), rat(1, 25), rat(-1, 25));
        assert!(matches!(balance_crossing(&f, &g), Err(Error::NoCrossing)));
        let skew = LinForm::new(rat(1, 4), rat(1, 25), rat(1, 7));
        assert!(balance_crossing(&f, &skew).is_err());
    }

    #[test]
    fn small_grid_certifies_theta() {
        let cert = replay_section7(8).unwrap();
        assert!(cert.all_points_pass, "failures: {:?}", cert.failures);
        assert_eq!(cert.max_min_exponent, p("517/1648"));
        assert!(cert.balance_line_attained);
        // 9 rows of 9, minus the collapsed bottom row, plus injected
        // balance-line points.
        assert!(cert.points_checked >= 73, "{}", cert.points_checked);
        assert!(cert.witnesses.windows(2).all(|w| w[0] != w[1]), "{:?}", cert.witnesses);
    }

    #[test]
    fn grid_runs_are_deterministic() {
        let a = replay_section7(5).unwrap();
        let b = replay_section7(5).unwrap();
        assert_eq!(a, b);
        assert!(replay_section7(0).is_err());
    }

    #[test]
    fn inside_window_point_beats_theta_via_h712() {
        // An aspect strictly inside the nu = 6 window: exponent below theta.
        let spec = build_bound(BoundId::H712, 6).unwrap();
        let m = rat(12, 25);
        let h = &m - p("513/1648") - p("1/1000");
        assert!(eval_exponent(&spec, &h, &m) < THETA.clone());
    }

    #[test]
    fn mean_square_replay_is_clean() {
        let cert = replay_section8().unwrap();
        assert!(cert.ok, "failures: {:?}", cert.failures);
        assert_eq!(cert.merged_quotient, p("7159/22824"));
        assert_eq!(cert.lead_quotient, p("1629/5194"));
        assert_eq!(cert.shrink_quotient, p("149/464"));
        assert_eq!(cert.phi, p("43/5100"));
        assert_eq!(cert.shrink_margin, p("37/23800"));
    }
}
