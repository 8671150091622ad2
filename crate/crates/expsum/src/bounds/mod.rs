//! The catalog of estimates the workbench manipulates, each one an exact
//! piecewise-linear exponent expression in the normalized variables
//! h = log_T H and m = log_T M, together with its validity region.
//!
//! Catalog ids are stable tokens (they are what `bounds eval --id` accepts).
//! Two of the entries use the slot variables d = log_T(H/N) and
//! D = log_T(H/R) instead of (h, m); `BoundSpec::vars` records the names.

pub mod exppair;
pub mod remark;
pub mod replay;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pwl::{LinForm, PwlExpr};
use crate::rational::{rat, rat_int, Rat};
use crate::tables::{exponent_table, THETA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundId {
    X46,
    Y49,
    Z410,
    D67,
    D68,
    KL69,
    KL610,
    H79,
    H711,
    H712,
    EP337,
}

impl BoundId {
    pub const ALL: [BoundId; 11] = [
        BoundId::X46,
        BoundId::Y49,
        BoundId::Z410,
        BoundId::D67,
        BoundId::D68,
        BoundId::KL69,
        BoundId::KL610,
        BoundId::H79,
        BoundId::H711,
        BoundId::H712,
        BoundId::EP337,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::X46 => "X46",
            BoundId::Y49 => "Y49",
            BoundId::Z410 => "Z410",
            BoundId::D67 => "D67",
            BoundId::D68 => "D68",
            BoundId::KL69 => "KL69",
            BoundId::KL610 => "KL610",
            BoundId::H79 => "H79",
            BoundId::H711 => "H711",
            BoundId::H712 => "H712",
            BoundId::EP337 => "EP337",
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<BoundId> {
        let lookup = s.to_ascii_uppercase();
        BoundId::ALL
            .into_iter()
            .find(|id| id.as_str() == lookup)
            .ok_or_else(|| Error::UnknownBound(s.to_string()))
    }
}

/// What quantity the exponent bounds: S/M or S/H.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    SOverM,
    SOverH,
}

impl Target {
    pub fn as_str(self) -> &'static str {
        match self {
            Target::SOverM => "S/M",
            Target::SOverH => "S/H",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Lt,
    Ge,
    Gt,
}

impl Rel {
    pub fn as_str(self) -> &'static str {
        match self {
            Rel::Le => "<=",
            Rel::Lt => "<",
            Rel::Ge => ">=",
            Rel::Gt => ">",
        }
    }

    fn holds_rat(self, lhs: &Rat, rhs: &Rat) -> bool {
        match self {
            Rel::Le => lhs <= rhs,
            Rel::Lt => lhs < rhs,
            Rel::Ge => lhs >= rhs,
            Rel::Gt => lhs > rhs,
        }
    }

    fn holds_f64(self, lhs: f64, rhs: f64) -> bool {
        match self {
            Rel::Le => lhs <= rhs,
            Rel::Lt => lhs < rhs,
            Rel::Ge => lhs >= rhs,
            Rel::Gt => lhs > rhs,
        }
    }
}

/// One side condition, read as `form(vars) REL 0`, except that the zero on
/// the right carries an invisible (log T)^log_power factor which only the
/// numeric verdict applies: T^form REL (log T)^log_power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionCond {
    pub form: LinForm,
    pub rel: Rel,
    pub log_power: Rat,
}

impl RegionCond {
    pub fn new(form: LinForm, rel: Rel) -> RegionCond {
        RegionCond { form, rel, log_power: rat_int(0) }
    }

    pub fn with_log(form: LinForm, rel: Rel, log_power: Rat) -> RegionCond {
        RegionCond { form, rel, log_power }
    }

    pub fn render(&self, vars: (&str, &str)) -> String {
        let base = format!("{} {} 0", self.form.render(vars.0, vars.1), self.rel.as_str());
        if self.log_power == rat_int(0) {
            base
        } else {
            format!("{base} (log-power {})", self.log_power)
        }
    }

    /// Pure-exponent verdict: log factors ignored.
    pub fn pure_ok(&self, h: &Rat, m: &Rat) -> bool {
        let zero = rat_int(0);
        self.rel.holds_rat(&self.form.eval(h, m), &zero)
    }

    /// Numeric verdict at a concrete log T: compares form * logT against
    /// log_power * ln(logT).
    pub fn logs_ok(&self, h: &Rat, m: &Rat, log_t: f64) -> bool {
        let lhs = crate::dd::rat_to_f64(&self.form.eval(h, m)) * log_t;
        let rhs = crate::dd::rat_to_f64(&self.log_power) * log_t.ln();
        self.rel.holds_f64(lhs, rhs)
    }
}

/// A disjunction of conditions; the region of a bound is a conjunction of
/// these clauses. Most clauses are singletons; the two-sided gates (a
/// constraint that only applies on part of the m-range) need the disjunction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionClause {
    pub any_of: Vec<RegionCond>,
}

impl RegionClause {
    pub fn render(&self, vars: (&str, &str)) -> String {
        self.any_of.iter().map(|c| c.render(vars)).collect::<Vec<_>>().join("  or  ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundSpec {
    pub id: BoundId,
    pub nu: Option<u32>,
    pub target: Target,
    /// Names of the two slot variables, for rendering: ("h", "m") or ("d", "D").
    pub vars: (&'static str, &'static str),
    pub expr: PwlExpr,
    pub region: Vec<RegionClause>,
    pub notes: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionVerdict {
    pub pure_exponent_ok: bool,
    pub with_logs_ok: Option<bool>,
    pub failed_conditions: Vec<String>,
}

fn cond(form: LinForm, rel: Rel) -> RegionCond {
    RegionCond::new(form, rel)
}

fn clause1(c: RegionCond) -> RegionClause {
    RegionClause { any_of: vec![c] }
}

fn clause(cs: Vec<RegionCond>) -> RegionClause {
    RegionClause { any_of: cs }
}

fn lf(c: Rat, h: Rat, m: Rat) -> LinForm {
    LinForm::new(c, h, m)
}

/// c + k*(h - m): the aspect-only affine forms that most simplified bounds
/// consist of.
fn aspect(k: Rat, c: Rat) -> LinForm {
    LinForm::new(c, k.clone(), -k)
}

/// log_T of the lower end of the admissible H-window: (7 theta - 2)/2.
pub fn h_floor() -> Rat {
    (rat_int(7) * THETA.clone() - rat_int(2)) / rat_int(2)
}

/// The two ambient window clauses shared by the aspect bounds: H above the
/// floor where the van der Corput branch takes over, and H <= M T^{-theta}.
fn window_clauses() -> Vec<RegionClause> {
    vec![
        clause1(cond(lf(-h_floor(), rat_int(1), rat_int(0)), Rel::Gt)),
        clause1(cond(lf(THETA.clone(), rat_int(1), rat_int(-1)), Rel::Le)),
    ]
}

/// The pair of conditional floor constraints on H: each one binds only on
/// part of the M-range, hence the disjunctions.
fn conditional_floor_clauses() -> Vec<RegionClause> {
    let adj = rat(171, 140);
    vec![
        clause(vec![
            cond(lf(rat(-7, 16), rat_int(0), rat_int(1)), Rel::Ge),
            RegionCond::with_log(lf(rat_int(-4), rat_int(1), rat_int(9)), Rel::Ge, adj.clone()),
        ]),
        clause(vec![
            cond(lf(rat(9, 16), rat_int(0), rat_int(-1)), Rel::Ge),
            RegionCond::with_log(lf(rat_int(6), rat_int(1), rat_int(-11)), Rel::Ge, adj),
        ]),
    ]
}

/// Ceiling constraints for the alternative-branch estimates: M below the
/// square-root scale and H below both fractional-power ceilings.
fn alt_branch_clauses() -> Vec<RegionClause> {
    vec![
        clause1(cond(lf(rat(-1, 2), rat_int(0), rat_int(1)), Rel::Le)),
        clause1(cond(lf(rat(2, 23), rat_int(1), rat(-35, 69)), Rel::Le)),
        clause1(cond(lf(rat(1, 2), rat_int(1), rat(-3, 2)), Rel::Le)),
    ]
}

pub fn build_bound(id: BoundId, nu: u32) -> Result<BoundSpec> {
    if nu < 3 {
        return Err(Error::BadNu(nu as i64));
    }
    let t = exponent_table(nu)?;
    let q = t.q.clone();
    let qi = q.recip();

    let spec = match id {
        BoundId::X46 => {
            let spike = PwlExpr::scale(
                t.rho.clone(),
                PwlExpr::one_plus(vec![PwlExpr::Lin(aspect(rat(99, 25), rat(247, 200)))]),
            );
            // (M/H)^{19/75 - 14/(25q)} T^{-(1/(25q) + 13/400)}
            let shrink = aspect(
                -(rat(19, 75) - rat(14, 25) * &qi),
                -(&qi / rat_int(25) + rat(13, 400)),
            );
            let alpha_term = aspect(t.alpha.0.clone(), t.alpha.1.clone());
            let lead = aspect(
                rat(22, 25) * &qi + rat(41, 50),
                rat(33, 100) * &qi + rat(49, 200),
            );
            let mut region = conditional_floor_clauses();
            region.push(clause1(cond(lf(rat(49, 164), rat_int(1), rat_int(-1)), Rel::Le)));
            BoundSpec {
                id,
                nu: Some(nu),
                target: Target::SOverM,
                vars: ("h", "m"),
                expr: PwlExpr::Sum(vec![
                    spike,
                    PwlExpr::one_plus(vec![PwlExpr::Lin(shrink), PwlExpr::Lin(alpha_term)]),
                    PwlExpr::Lin(lead),
                ]),
                region,
                notes: "three-factor product bound on S/M; the spike factor carries the rho \
                        exponent and the alpha branch activates once the aspect H/M exceeds \
                        T^{-alpha2/alpha1}",
            }
        }
        BoundId::Y49 => {
            let spike = PwlExpr::scale(
                t.rho.clone(),
                PwlExpr::one_plus(vec![PwlExpr::lin(rat(29, 40), rat(327, 80), rat(-45, 16))]),
            );
            let shrink = lf(
                -(rat(7, 5) * &qi - rat(67, 240)),
                -(rat(53, 160) - rat(9, 10) * &qi),
                rat(5, 2) * &qi - rat(43, 96),
            );
            let beta_term = lf(t.beta.1.clone(), t.beta.0.clone(), -t.beta.2.clone());
            let lead = lf(
                rat(11, 20) * &qi + rat(3, 40),
                rat(33, 40) * &qi + rat(69, 80),
                -(rat(11, 8) * &qi + rat(7, 16)),
            );
            BoundSpec {
                id,
                nu: Some(nu),
                target: Target::SOverM,
                vars: ("h", "m"),
                expr: PwlExpr::Sum(vec![
                    spike,
                    PwlExpr::one_plus(vec![PwlExpr::Lin(shrink), PwlExpr::Lin(beta_term)]),
                    PwlExpr::Lin(lead),
                ]),
                region: alt_branch_clauses(),
                notes: "first of the two alternative-branch bounds on S/M, with the beta \
                        constants in the middle factor",
            }
        }
        BoundId::Z410 => {
            let spike = PwlExpr::scale(
                t.rho.clone(),
                PwlExpr::one_plus(vec![PwlExpr::lin(rat(3, 2), rat(7, 2), rat(-9, 2))]),
            );
            // Stated in the auxiliary variable w = 3m - 1; substituted here.
            let wa = rat(7, 36) - rat(2, 3) * &qi;
            let shrink = lf(-&wa, -(rat(2, 3) * &qi - rat(1, 36)), rat_int(3) * &wa);
            let bs = &t.beta_star;
            let beta_term = lf(bs.1.clone(), bs.0.clone(), rat_int(-3) * &bs.1);
            let lead = lf(
                rat(11, 51) * &qi + rat(1, 3),
                rat(55, 51) * &qi + rat(2, 3),
                -(rat_int(1) + rat(11, 17) * &qi),
            );
            BoundSpec {
                id,
                nu: Some(nu),
                target: Target::SOverM,
                vars: ("h", "m"),
                expr: PwlExpr::Sum(vec![
                    spike,
                    PwlExpr::one_plus(vec![PwlExpr::Lin(shrink), PwlExpr::Lin(beta_term)]),
                    PwlExpr::Lin(lead),
                ]),
                region: alt_branch_clauses(),
                notes: "second alternative-branch bound on S/M; the printed form uses \
                        w = 3m - 1, substituted into (h, m) here",
            }
        }
        BoundId::D67 => BoundSpec {
            id,
            nu: Some(nu),
            target: Target::SOverM,
            vars: ("d", "D"),
            expr: PwlExpr::Sum(vec![
                PwlExpr::lin(rat_int(0), rat(1, 2), rat(22, 17) * &qi),
                PwlExpr::scale(
                    rat_int(4) * &qi - rat(5, 6),
                    PwlExpr::one_plus(vec![PwlExpr::lin(rat_int(0), rat_int(2), rat_int(1))]),
                ),
                PwlExpr::one_plus(vec![
                    PwlExpr::lin(
                        rat_int(0),
                        rat_int(2) * &qi - rat(1, 2),
                        rat(5, 6) - rat_int(4) * &qi,
                    ),
                    PwlExpr::lin(
                        rat_int(0),
                        rat(1, 2) - rat_int(2) * &qi,
                        rat(11, 6) - rat_int(8) * &qi,
                    ),
                ]),
            ]),
            region: Vec::new(),
            notes: "spacing-count consequence for S/M in the slot variables d = log_T(H/N), \
                    D = log_T(H/R); this shape is the high-index branch (natural for nu >= 6)",
        },
        BoundId::D68 => BoundSpec {
            id,
            nu: Some(nu),
            target: Target::SOverM,
            vars: ("d", "D"),
            expr: PwlExpr::Sum(vec![
                PwlExpr::lin(rat_int(0), rat(1, 2), rat(22, 17) * &qi),
                PwlExpr::scale(
                    qi.clone() - rat(1, 6),
                    PwlExpr::one_plus(vec![PwlExpr::lin(rat_int(0), rat_int(2), rat_int(1))]),
                ),
                PwlExpr::one_plus(vec![
                    PwlExpr::lin(
                        rat_int(0),
                        rat_int(2) * &qi - rat(1, 2),
                        rat(5, 6) - rat_int(4) * &qi,
                    ),
                    PwlExpr::lin(
                        rat_int(0),
                        rat_int(4) * &qi - rat(5, 6),
                        rat(7, 6) - rat_int(5) * &qi,
                    ),
                ]),
            ]),
            region: Vec::new(),
            notes: "spacing-count consequence for S/M in the slot variables d = log_T(H/N), \
                    D = log_T(H/R); this shape is the low-index branch (natural for nu <= 5)",
        },
        BoundId::KL69 => BoundSpec {
            id,
            nu: None,
            target: Target::SOverH,
            vars: ("h", "m"),
            expr: PwlExpr::lin(rat(1, 2), rat(1, 2), rat(-1, 2)),
            region: vec![clause1(cond(lf(rat(-3, 5), rat(-3, 5), rat_int(1)), Rel::Le))],
            notes: "classical two-estimate fallback S/H <= H^{1/2} T^{1/2} / M^{1/2}; the \
                    simplification needs M <= (HT)^{3/5}",
        },
        BoundId::KL610 => BoundSpec {
            id,
            nu: Some(nu),
            target: Target::SOverM,
            vars: ("d", "D"),
            expr: PwlExpr::lin(rat_int(0), rat(1, 2), rat(22, 17) * &qi),
            region: vec![clause1(cond(lf(rat_int(0), rat_int(0), rat_int(1)), Rel::Le))],
            notes: "fallback in the slot variables d = log_T(H/N), D = log_T(H/R1) with \
                    R1 = (M^3/(NT))^{1/2}; valid when H <= R1, i.e. D <= 0",
        },
        BoundId::H79 => {
            let mut region = window_clauses();
            region.push(clause(vec![
                RegionCond::with_log(
                    lf(rat_int(-4), rat_int(1), rat_int(9)),
                    Rel::Ge,
                    rat(171, 140),
                ),
                RegionCond::with_log(
                    lf(rat(-7, 16), rat_int(0), rat_int(1)),
                    Rel::Gt,
                    rat(19, 448),
                ),
            ]));
            BoundSpec {
                id,
                nu: None,
                target: Target::SOverH,
                vars: ("h", "m"),
                expr: PwlExpr::Lin(aspect(rat(1, 25), rat(131, 400))),
                region,
                notes: "single-term aspect bound S/H <= (H/M)^{1/25} T^{131/400}; needs the \
                        gate clause (the large-HM^9 or large-M disjunction) on top of the \
                        ambient window",
            }
        }
        BoundId::H711 => {
            let tup = closure_tuple(3)?;
            let mut region = window_clauses();
            region.push(clause1(cond(lf(rat(-1, 2), rat_int(0), rat_int(1)), Rel::Le)));
            BoundSpec {
                id,
                nu: Some(3),
                target: Target::SOverH,
                vars: ("h", "m"),
                expr: PwlExpr::Max(vec![
                    PwlExpr::Lin(aspect(tup[0].clone(), tup[1].clone())),
                    PwlExpr::Lin(aspect(-tup[2].clone(), tup[3].clone())),
                ]),
                region,
                notes: "two-term aspect simplification of X46 at nu = 3, valid across the \
                        whole ambient window (both gate cases land back on X46)",
            }
        }
        BoundId::H712 => {
            let tup = closure_tuple(6)?;
            let mut region = window_clauses();
            region.push(clause1(cond(lf(rat(-1, 2), rat_int(0), rat_int(1)), Rel::Le)));
            BoundSpec {
                id,
                nu: Some(6),
                target: Target::SOverH,
                vars: ("h", "m"),
                expr: PwlExpr::Max(vec![
                    PwlExpr::Lin(aspect(tup[0].clone(), tup[1].clone())),
                    PwlExpr::Lin(aspect(-tup[2].clone(), tup[3].clone())),
                ]),
                region,
                notes: "two-term aspect simplification of X46 at nu = 6, valid across the \
                        whole ambient window",
            }
        }
        BoundId::EP337 => BoundSpec {
            id,
            nu: None,
            target: Target::SOverH,
            vars: ("h", "m"),
            // (HT/M^2)^{2/7} M^{4/7}: the m-parts cancel, leaving 2(h+1)/7.
            expr: PwlExpr::Max(vec![
                PwlExpr::Lin(
                    lf(rat(2, 7), rat(2, 7), rat(-4, 7))
                        .add(&lf(rat_int(0), rat_int(0), rat(4, 7))),
                ),
                PwlExpr::lin(rat_int(-1), rat_int(-1), rat_int(2)),
            ]),
            region: vec![clause1(cond(lf(rat(-1, 2), rat_int(0), rat_int(1)), Rel::Le))],
            notes: "exponent-pair estimate (2/7, 4/7) applied row-by-row; the row weight is \
                    O(1) so S/H inherits the single-row bound, and the second branch is the \
                    M^2/(HT) tail",
        },
    };
    Ok(spec)
}

/// Exact exponent of the bound at a rational point; evaluation outside the
/// region is permitted (pair with region_check when validity matters).
pub fn eval_exponent(b: &BoundSpec, h: &Rat, m: &Rat) -> Rat {
    b.expr.eval(h, m)
}

pub fn region_check(b: &BoundSpec, h: &Rat, m: &Rat, log_t: Option<f64>) -> RegionVerdict {
    let mut failed = Vec::new();
    let mut pure_ok = true;
    for cl in &b.region {
        if !cl.any_of.iter().any(|c| c.pure_ok(h, m)) {
            pure_ok = false;
            failed.push(cl.render(b.vars));
        }
    }
    let with_logs_ok = log_t.map(|l| {
        let mut ok = true;
        for cl in &b.region {
            if !cl.any_of.iter().any(|c| c.logs_ok(h, m, l)) {
                ok = false;
                let label = format!("{} [at log T = {l}]", cl.render(b.vars));
                if !failed.contains(&label) {
                    failed.push(label);
                }
            }
        }
        ok
    });
    RegionVerdict { pure_exponent_ok: pure_ok, with_logs_ok, failed_conditions: failed }
}

/// The three structural pieces of an X46 instance: the two branches of the
/// middle factor (shrink term, alpha term) and the leading linear factor.
fn x46_parts(spec: &BoundSpec) -> (LinForm, LinForm, LinForm) {
    let children = match &spec.expr {
        PwlExpr::Sum(c) if c.len() == 3 => c,
        _ => unreachable!("X46 is always a three-factor sum"),
    };
    let (b, c) = match &children[1] {
        PwlExpr::Max(branches) if branches.len() == 3 => {
            match (&branches[1], &branches[2]) {
                (PwlExpr::Lin(b), PwlExpr::Lin(c)) => (b.clone(), c.clone()),
                _ => unreachable!("middle factor branches are affine"),
            }
        }
        _ => unreachable!("middle factor is a one-plus max"),
    };
    let l = match &children[2] {
        PwlExpr::Lin(l) => l.clone(),
        _ => unreachable!("leading factor is affine"),
    };
    (b, c, l)
}

/// The constant tuple obtained by instantiating X46 at the given nu and
/// simplifying under the ambient window (aspect below T^{-theta}, which
/// switches off the spike and alpha branches).
///
/// For nu in the low/middle range the target is converted S/M -> S/H and the
/// result is the four-tuple (lead aspect, lead const, shrink aspect, shrink
/// const) of the two surviving branches. At nu = 7 the S/M form itself is
/// the quoted shape, and the six-tuple (lead h, lead const, shrink m,
/// -shrink const, alpha h, alpha const) is returned instead.
pub fn closure_tuple(nu: u32) -> Result<Vec<Rat>> {
    let spec = build_bound(BoundId::X46, nu)?;
    let (b, c, l) = x46_parts(&spec);
    if nu == 7 {
        return Ok(vec![l.h, l.c, b.m, -b.c, c.h, c.c]);
    }
    // S/H = (S/M) * (M/H): add m - h to the exponent.
    let mh = lf(rat_int(0), rat_int(-1), rat_int(1));
    let lead = l.add(&mh);
    let shrink = lead.add(&b);
    Ok(vec![lead.h, lead.c, shrink.m, shrink.c])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::rat_to_f64;
    use proptest::prelude::*;

    fn p(s: &str) -> Rat {
        crate::rational::parse_rat(s).unwrap()
    }

    #[test]
    fn ids_round_trip_through_strings() {
        for id in BoundId::ALL {
            assert_eq!(id.as_str().parse::<BoundId>().unwrap(), id);
            assert_eq!(id.as_str().to_lowercase().parse::<BoundId>().unwrap(), id);
        }
        assert!("X99".parse::<BoundId>().is_err());
        assert!(build_bound(BoundId::X46, 2).is_err());
    }

    #[test]
    fn x46_at_nu7_has_the_quoted_constants() {
        let spec = build_bound(BoundId::X46, 7).unwrap();
        let (b, c, l) = x46_parts(&spec);
        assert_eq!(l.h, p("2597/2550"));
        assert_eq!(l.c, p("543/1700"));
        assert_eq!(b.m, p("54/425"));
        assert_eq!(b.c, p("-847/20400"));
        assert_eq!(c.h, p("128/1275"));
        assert_eq!(c.c, p("643/20400"));
    }

    #[test]
    fn closure_tuples_reproduce_the_printed_constants() {
        assert_eq!(
            closure_tuple(3).unwrap(),
            vec![p("19/750"), p("161/500"), p("73/750"), p("1681/6000")]
        );
        assert_eq!(
            closure_tuple(6).unwrap(),
            vec![p("2/105"), p("179/560"), p("113/1050"), p("146/525")]
        );
        assert_eq!(
            closure_tuple(7).unwrap(),
            vec![
                p("2597/2550"),
                p("543/1700"),
                p("54/425"),
                p("847/20400"),
                p("128/1275"),
                p("643/20400"),
            ]
        );
    }

    #[test]
    fn h711_and_h712_are_the_converted_x46_instances() {
        for (id, nu) in [(BoundId::H711, 3u32), (BoundId::H712, 6)] {
            let spec = build_bound(id, 9).unwrap();
            assert_eq!(spec.nu, Some(nu));
            let tup = closure_tuple(nu).unwrap();
            let h = rat(1, 10);
            let m = rat(12, 25);
            let lead = &tup[1] + &tup[0] * (&h - &m);
            let shrink = &tup[3] + &tup[2] * (&m - &h);
            assert_eq!(eval_exponent(&spec, &h, &m), lead.max(shrink));
        }
    }

    #[test]
    fn h79_hits_theta_exactly_on_the_balance_line() {
        let spec = build_bound(BoundId::H79, 3).unwrap();
        let m = rat(9, 20);
        let h = &m - rat(71, 206);
        assert_eq!(eval_exponent(&spec, &h, &m), THETA.clone());

        // The nu=3 simplification agrees there, through its shrink branch.
        let h711 = build_bound(BoundId::H711, 3).unwrap();
        assert_eq!(eval_exponent(&h711, &h, &m), THETA.clone());
    }

    #[test]
    fn ep337_exponent_is_aspect_free() {
        let spec = build_bound(BoundId::EP337, 3).unwrap();
        // First branch 2(h+1)/7 dominates here and has no m-dependence.
        let h = rat(1, 10);
        assert_eq!(eval_exponent(&spec, &h, &rat(2, 5)), p("11/35"));
        assert_eq!(eval_exponent(&spec, &h, &rat(1, 2)), p("11/35"));
    }

    #[test]
    fn ep337_matches_theta_at_the_h_floor() {
        let spec = build_bound(BoundId::EP337, 3).unwrap();
        let h = h_floor();
        assert_eq!(eval_exponent(&spec, &h, &rat(1, 2)), THETA.clone());
    }

    #[test]
    fn region_boundary_verdicts() {
        // Ceiling h <= m - 49/164 is non-strict: boundary passes.
        let x46 = build_bound(BoundId::X46, 3).unwrap();
        let m = rat(1, 2);
        let h = &m - rat(49, 164);
        let v = region_check(&x46, &h, &m, None);
        assert!(v.pure_exponent_ok, "failed: {:?}", v.failed_conditions);

        // The window floor h > (7 theta - 2)/2 is strict: boundary fails.
        let h79 = build_bound(BoundId::H79, 3).unwrap();
        let v = region_check(&h79, &h_floor(), &rat(1, 2), None);
        assert!(!v.pure_exponent_ok);
        assert_eq!(v.failed_conditions.len(), 1);

        // Gate clause at m = 7/16 with small h: fails pure and with logs.
        let v = region_check(&h79, &rat(1, 5), &rat(7, 16), Some(std::f64::consts::E));
        assert!(!v.pure_exponent_ok);
        assert_eq!(v.with_logs_ok, Some(false));
    }

    #[test]
    fn log_gate_binds_where_pure_passes() {
        // At m slightly above 7/16 the pure gate passes but a small log T
        // numeric check still fails: T^{m - 7/16} < (log T)^{19/448}.
        let h79 = build_bound(BoundId::H79, 3).unwrap();
        let m = rat(7, 16) + rat(1, 10000);
        let h = rat(1, 9);
        let v = region_check(&h79, &h, &m, Some(30.0));
        assert!(v.pure_exponent_ok, "failed: {:?}", v.failed_conditions);
        assert_eq!(v.with_logs_ok, Some(false));
    }

    #[test]
    fn d67_and_d68_pinned_values() {
        // At (d, D) = (-1/10, 1/5) the spike argument is exactly zero and
        // every tail branch is nonpositive, so only the lead term remains.
        let d = rat(-1, 10);
        let big_d = rat(1, 5);
        let d67 = build_bound(BoundId::D67, 6).unwrap();
        assert_eq!(eval_exponent(&d67, &d, &big_d), p("61/7140"));
        let d68 = build_bound(BoundId::D68, 3).unwrap();
        assert_eq!(eval_exponent(&d68, &d, &big_d), p("53/5100"));
    }

    #[test]
    fn kl610_region_is_the_d_sign() {
        let spec = build_bound(BoundId::KL610, 3).unwrap();
        let ok = region_check(&spec, &rat(1, 2), &rat(-1, 10), None);
        assert!(ok.pure_exponent_ok);
        let bad = region_check(&spec, &rat(1, 2), &rat(1, 10), None);
        assert!(!bad.pure_exponent_ok);
    }

    #[test]
    fn eval_matches_independent_float_walk() {
        // Independent floating evaluator for cross-checking exact eval.
        fn eval_f64(e: &PwlExpr, h: f64, m: f64) -> f64 {
            match e {
                PwlExpr::Lin(f) => {
                    rat_to_f64(&f.c) + rat_to_f64(&f.h) * h + rat_to_f64(&f.m) * m
                }
                PwlExpr::Sum(cs) => cs.iter().map(|c| eval_f64(c, h, m)).sum(),
                PwlExpr::Max(cs) => {
                    cs.iter().map(|c| eval_f64(c, h, m)).fold(f64::NEG_INFINITY, f64::max)
                }
                PwlExpr::Scale(k, inner) => rat_to_f64(k) * eval_f64(inner, h, m),
            }
        }
        let mut rng_state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((rng_state >> 33) as i64 % 2000 - 1000, (rng_state >> 17) as i64 % 997 + 1)
        };
        for nu in [3u32, 6, 7] {
            for id in BoundId::ALL {
                let spec = build_bound(id, nu).unwrap();
                for _ in 0..30 {
                    let (a, b) = next();
                    let (c, d) = next();
                    let h = rat(a, b);
                    let m = rat(c, d);
                    let exact = rat_to_f64(&eval_exponent(&spec, &h, &m));
                    let float = eval_f64(&spec.expr, rat_to_f64(&h), rat_to_f64(&m));
                    assert!(
                        (exact - float).abs() <= 1e-12 * (1.0 + exact.abs()),
                        "{id} nu={nu} at ({h}, {m}): {exact} vs {float}"
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn catalog_exprs_are_midpoint_convex(
            nu in 3u32..=10,
            idx in 0usize..11,
            a in -50i64..=50, b in 1i64..=9,
            c in -50i64..=50, d in 1i64..=9,
            e in -50i64..=50, f in 1i64..=9,
            g in -50i64..=50, k in 1i64..=9,
        ) {
            let spec = build_bound(BoundId::ALL[idx], nu).unwrap();
            let (h1, m1) = (rat(a, b), rat(c, d));
            let (h2, m2) = (rat(e, f), rat(g, k));
            let two = rat_int(2);
            let mid = eval_exponent(&spec, &((&h1 + &h2) / &two), &((&m1 + &m2) / &two));
            let avg = (eval_exponent(&spec, &h1, &m1) + eval_exponent(&spec, &h2, &m2)) / &two;
            prop_assert!(mid <= avg);
        }

        #[test]
        fn identity_scale_wrap_changes_nothing(
            idx in 0usize..11,
            a in -50i64..=50, b in 1i64..=9,
            c in -50i64..=50, d in 1i64..=9,
        ) {
            let spec = build_bound(BoundId::ALL[idx], 4).unwrap();
            let wrapped = PwlExpr::scale(rat_int(1), spec.expr.clone());
            let (h, m) = (rat(a, b), rat(c, d));
            prop_assert_eq!(wrapped.eval(&h, &m), spec.expr.eval(&h, &m));
        }
    }
}
