//! The nu-indexed exponent constants and an executable suite of the inline
//! rational identities and inequalities the derivations lean on.
//!
//! Everything here is exact. `theta`, `balance_x`, `rho_mean_square` and
//! `c_threshold` are the one source of truth for those constants; the bounds
//! and replay modules pull them from here.

use std::sync::LazyLock;

use crate::error::{Error, Result};
use crate::rational::{rat, rat_int, Rat};

/// Exponent of the divisor / circle error-term estimate: 517/1648.
pub static THETA: LazyLock<Rat> = LazyLock::new(|| rat(517, 1648));
/// The aspect ratio log_T(M/H) = 71/206 where the two competing branches tie.
pub static BALANCE_X: LazyLock<Rat> = LazyLock::new(|| rat(71, 206));
/// Exponent of the mean-square estimate: 7159/22824.
pub static RHO_MEAN_SQUARE: LazyLock<Rat> = LazyLock::new(|| rat(7159, 22824));
/// Smallest admissible aspect constant c: 247/792.
pub static C_THRESHOLD: LazyLock<Rat> = LazyLock::new(|| rat(247, 792));

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentTable {
    pub nu: u32,
    pub q: Rat,
    pub rho: Rat,
    pub alpha: (Rat, Rat),
    pub beta: (Rat, Rat, Rat),
    pub beta_star: (Rat, Rat),
}

pub fn q_of_nu(nu: u32) -> Rat {
    let n = nu as i64;
    rat(6 * (3 * n - 4), 4 * n - 5)
}

/// All six constant groups for a given nu >= 3. The alpha/beta/beta_star
/// formulas switch branch between nu = 5 and nu = 6.
pub fn exponent_table(nu: u32) -> Result<ExponentTable> {
    if nu < 3 {
        return Err(Error::BadNu(nu as i64));
    }
    let q = q_of_nu(nu);
    let qi = q.recip();
    let low = nu <= 5;

    let rho = if low {
        &qi - rat(1, 6)
    } else {
        rat_int(4) * &qi - rat(5, 6)
    };

    let alpha = if low {
        (rat(79, 25) * &qi - rat(43, 75), rat(137, 200) * &qi - rat(133, 1200))
    } else {
        (rat(31, 15) - rat(218, 25) * &qi, rat(57, 80) - rat(151, 50) * &qi)
    };

    let beta = if low {
        (
            rat(297, 80) * &qi - rat(111, 160),
            rat(89, 240) - rat(61, 40) * &qi,
            rat(49, 96) - rat(29, 16) * &qi,
        )
    } else {
        (
            rat(65, 32) - rat(171, 20) * &qi,
            rat(41, 48) - rat(37, 10) * &qi,
            rat(229, 96) - rat(41, 4) * &qi,
        )
    };

    let beta_star = if low {
        (rat(7, 6) * &qi - rat(5, 36), rat(11, 6) * &qi - rat(13, 36))
    } else {
        (rat(79, 36) - rat(28, 3) * &qi, rat(23, 36) - rat(8, 3) * &qi)
    };

    Ok(ExponentTable { nu, q, rho, alpha, beta, beta_star })
}

/// Relation a record claims between lhs and rhs. Strict and non-strict
/// inequalities are always stated in the direction lhs > rhs / lhs >= rhs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelKind {
    Equality,
    StrictInequality,
    NonStrictInequality,
}

impl RelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RelKind::Equality => "equality",
            RelKind::StrictInequality => "strict-inequality",
            RelKind::NonStrictInequality => "non-strict-inequality",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityRecord {
    pub name: &'static str,
    pub kind: RelKind,
    pub lhs: Rat,
    pub rhs: Rat,
    pub holds: bool,
}

fn record(name: &'static str, kind: RelKind, lhs: Rat, rhs: Rat) -> IdentityRecord {
    let holds = match kind {
        RelKind::Equality => lhs == rhs,
        RelKind::StrictInequality => lhs > rhs,
        RelKind::NonStrictInequality => lhs >= rhs,
    };
    IdentityRecord { name, kind, lhs, rhs, holds }
}

/// Every inline rational identity/inequality the exponent bookkeeping rests
/// on, as checkable records. All of them must hold.
pub fn identity_suite() -> Vec<IdentityRecord> {
    use RelKind::*;
    let theta = THETA.clone();
    let t3 = exponent_table(3).unwrap();
    let t6 = exponent_table(6).unwrap();
    let t7 = exponent_table(7).unwrap();

    vec![
        record(
            "theta-def",
            Equality,
            rat(131, 400) - rat(1, 25) * rat(71, 206),
            theta.clone(),
        ),
        record(
            "theta-quarter-power",
            Equality,
            (rat_int(13) * &theta - rat_int(4)) / rat_int(4),
            rat(129, 6592),
        ),
        record(
            "404theta-minus-100",
            StrictInequality,
            rat_int(404) * &theta - rat_int(100),
            rat(53, 2),
        ),
        record(
            "balance-sum",
            Equality,
            rat(71, 206) + rat(7, 2) * &theta - rat_int(1),
            rat(1459, 3296),
        ),
        record(
            "balance-sum-margin",
            StrictInequality,
            rat(1459, 3296),
            rat(7, 16) + rat(1, 224),
        ),
        record("window-overlap", StrictInequality, rat(30817, 93112), rat(5121, 15656)),
        record(
            "t-exponent-gap",
            StrictInequality,
            rat(7189, 71070),
            rat(2, 23) * rat(8, 7),
        ),
        record("m-exponent-gap", StrictInequality, rat(2, 23), rat(969, 16100)),
        record(
            "shrink-quotient",
            Equality,
            rat(149, 2040) / rat(58, 255),
            rat(149, 464),
        ),
        record("shrink-vs-11-35", StrictInequality, rat(149, 464), rat(11, 35)),
        record(
            "leading-quotient",
            Equality,
            rat(543, 1700) / rat(2597, 2550),
            rat(1629, 5194),
        ),
        record(
            "mean-square-rho-def",
            Equality,
            rat(7159, 20400) / rat(951, 850),
            RHO_MEAN_SQUARE.clone(),
        ),
        record(
            "rho-vs-leading",
            StrictInequality,
            RHO_MEAN_SQUARE.clone(),
            rat(1629, 5194),
        ),
        record(
            "c-threshold-def",
            Equality,
            rat(247, 200) / rat(99, 25),
            C_THRESHOLD.clone(),
        ),
        record("c-threshold-below-theta", StrictInequality, theta.clone(), C_THRESHOLD.clone()),
        record("q3-value", Equality, q_of_nu(3), rat(30, 7)),
        record("q6-value", Equality, q_of_nu(6), rat(84, 19)),
        record("q7-value", Equality, q_of_nu(7), rat(102, 23)),
        record("rho7-value", Equality, t7.rho.clone(), rat(7, 102)),
        record("q3-reciprocal-scale", Equality, rat_int(4) / q_of_nu(3), rat(14, 15)),
        record("alpha-ratio-nu3", Equality, &t3.alpha.1 / &t3.alpha.0, rat(49, 164)),
        record("alpha-ratio-nu6", Equality, &t6.alpha.1 / &t6.alpha.0, rat(247, 792)),
        record("q-monotone-start", StrictInequality, q_of_nu(4), q_of_nu(3)),
        record("q-monotone-end", StrictInequality, q_of_nu(64), q_of_nu(63)),
        record("q-limit", StrictInequality, rat(9, 2), q_of_nu(100)),
        record("q-floor", NonStrictInequality, q_of_nu(3), rat(30, 7)),
        record(
            "margin-min",
            Equality,
            rat(185, 1700).min(rat(43, 5100)),
            rat(43, 5100),
        ),
        record("11-35-cleared", Equality, rat(11, 35), rat(12738, 40530)),
        record("balance-simplify", Equality, rat(5183, 15038), rat(71, 206)),
        record(
            "third-branch-margin",
            Equality,
            rat(149, 464) - rat(11, 35),
            rat(111, 16240),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_at_the_three_working_nus() {
        let t3 = exponent_table(3).unwrap();
        assert_eq!(t3.q, rat(30, 7));
        assert_eq!(t3.rho, rat(1, 15));
        assert_eq!(t3.alpha, (rat(41, 250), rat(49, 1000)));

        let t6 = exponent_table(6).unwrap();
        assert_eq!(t6.q, rat(84, 19));
        assert_eq!(t6.alpha, (rat(33, 350), rat(247, 8400)));

        let t7 = exponent_table(7).unwrap();
        assert_eq!(t7.q, rat(102, 23));
        assert_eq!(t7.rho, rat(7, 102));

        assert!(exponent_table(2).is_err());
    }

    #[test]
    fn q_strictly_increases_within_its_window() {
        let lo = rat(30, 7);
        let hi = rat(9, 2);
        let mut prev = None;
        for nu in 3..=64 {
            let q = q_of_nu(nu);
            assert!(q >= lo && q < hi, "q_{nu} = {q} out of window");
            if let Some(p) = prev {
                assert!(q > p, "q not increasing at nu={nu}");
            }
            prev = Some(q);
        }
    }

    #[test]
    fn rho_positive_on_both_branches() {
        for nu in 3..=64 {
            let t = exponent_table(nu).unwrap();
            assert!(t.rho > rat_int(0), "rho_{nu} = {} not positive", t.rho);
        }
    }

    #[test]
    fn branch_switch_happens_exactly_at_nu_6() {
        // Evaluate the low-branch alpha formula at q_6: it must not match the
        // published nu=6 values, and symmetrically for the high branch at q_5.
        let q6 = q_of_nu(6);
        let low_at_q6 = (
            rat(79, 25) / &q6 - rat(43, 75),
            rat(137, 200) / &q6 - rat(133, 1200),
        );
        assert_ne!(low_at_q6, exponent_table(6).unwrap().alpha);

        let q5 = q_of_nu(5);
        let high_at_q5 = (
            rat(31, 15) - rat(218, 25) / &q5,
            rat(57, 80) - rat(151, 50) / &q5,
        );
        assert_ne!(high_at_q5, exponent_table(5).unwrap().alpha);

        // rho switches too: the two branch formulas differ at every valid q.
        for nu in 3..=10 {
            let q = q_of_nu(nu);
            assert_ne!(q.recip() - rat(1, 6), rat_int(4) / &q - rat(5, 6));
        }
    }

    #[test]
    fn identity_suite_holds_and_is_large_enough() {
        let suite = identity_suite();
        assert!(suite.len() >= 20, "only {} records", suite.len());
        for r in &suite {
            assert!(r.holds, "{} fails: {} vs {}", r.name, r.lhs, r.rhs);
        }
    }

    #[test]
    fn suite_contains_the_named_anchors() {
        let suite = identity_suite();
        let get = |n: &str| suite.iter().find(|r| r.name == n).unwrap();
        assert_eq!(get("theta-def").rhs, rat(517, 1648));
        assert_eq!(get("theta-quarter-power").rhs, rat(129, 6592));
        assert_eq!(get("balance-sum").rhs, rat(1459, 3296));
        assert_eq!(get("mean-square-rho-def").rhs, rat(7159, 22824));
        assert_eq!(get("404theta-minus-100").lhs, rat(11017, 412));
    }
}
