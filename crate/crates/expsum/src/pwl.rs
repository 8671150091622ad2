//! Log-domain piecewise-linear expressions over the two variables
//! h = log_T H and m = log_T M.
//!
//! A product of powers is a sum of linear forms; a factor (1 + u) contributes
//! max(0, e_u); a factor (1 + u + v)^c contributes c * max(0, e_u, e_v).
//! With nonnegative scale factors every expression built here is convex, so
//! maxima over regions live on boundaries.

use crate::rational::{rat_int, Rat};

/// const + h_coeff * h + m_coeff * m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinForm {
    pub c: Rat,
    pub h: Rat,
    pub m: Rat,
}

impl LinForm {
    pub fn new(c: Rat, h: Rat, m: Rat) -> LinForm {
        LinForm { c, h, m }
    }

    pub fn constant(c: Rat) -> LinForm {
        LinForm { c, h: rat_int(0), m: rat_int(0) }
    }

    pub fn zero() -> LinForm {
        LinForm::constant(rat_int(0))
    }

    pub fn eval(&self, h: &Rat, m: &Rat) -> Rat {
        &self.c + &self.h * h + &self.m * m
    }

    pub fn add(&self, other: &LinForm) -> LinForm {
        LinForm {
            c: &self.c + &other.c,
            h: &self.h + &other.h,
            m: &self.m + &other.m,
        }
    }

    /// Renders like "161/500 + 19/750 h - 19/750 m" with zero terms dropped.
    pub fn render(&self, hname: &str, mname: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        let zero = rat_int(0);
        if self.c != zero || (self.h == zero && self.m == zero) {
            parts.push(format!("{}", self.c));
        }
        for (coef, name) in [(&self.h, hname), (&self.m, mname)] {
            if *coef == zero {
                continue;
            }
            if parts.is_empty() {
                parts.push(format!("{coef} {name}"));
            } else if *coef < zero {
                parts.push(format!("- {} {}", -coef, name));
            } else {
                parts.push(format!("+ {coef} {name}"));
            }
        }
        parts.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PwlExpr {
    Lin(LinForm),
    Sum(Vec<PwlExpr>),
    Max(Vec<PwlExpr>),
    Scale(Rat, Box<PwlExpr>),
}

impl PwlExpr {
    pub fn lin(c: Rat, h: Rat, m: Rat) -> PwlExpr {
        PwlExpr::Lin(LinForm::new(c, h, m))
    }

    pub fn zero() -> PwlExpr {
        PwlExpr::Lin(LinForm::zero())
    }

    /// max(0, branches...): the log of a (1 + u + ...) factor.
    pub fn one_plus(branches: Vec<PwlExpr>) -> PwlExpr {
        let mut all = vec![PwlExpr::zero()];
        all.extend(branches);
        PwlExpr::Max(all)
    }

    pub fn scale(factor: Rat, inner: PwlExpr) -> PwlExpr {
        PwlExpr::Scale(factor, Box::new(inner))
    }

    pub fn eval(&self, h: &Rat, m: &Rat) -> Rat {
        match self {
            PwlExpr::Lin(f) => f.eval(h, m),
            PwlExpr::Sum(children) => {
                children.iter().map(|c| c.eval(h, m)).fold(rat_int(0), |a, b| a + b)
            }
            PwlExpr::Max(children) => children
                .iter()
                .map(|c| c.eval(h, m))
                .max()
                .expect("Max node with no children"),
            PwlExpr::Scale(factor, inner) => factor * inner.eval(h, m),
        }
    }
}
