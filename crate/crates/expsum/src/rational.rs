//! Exact rational arithmetic plus the integer square-root helpers used by the
//! planner's ceiling formulas.
//!
//! `Rat` is arbitrary precision and always canonical (positive denominator,
//! reduced), so equality is structural. Nothing here ever rounds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Shorthand for small rational literals.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::BadRational(s.to_string());
    let mut parts = s.splitn(2, '/');
    let num: BigInt = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    match parts.next() {
        None => Ok(Rat::from_integer(num)),
        Some(d) => {
            let den: BigInt = d.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// Renders `p/q`, or just `p` when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Integer power with negative exponents allowed (errors on 0^negative).
pub fn pow_int(a: &Rat, e: i32) -> Result<Rat> {
    if e < 0 && a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a.pow(e))
}

pub fn floor_int(a: &Rat) -> BigInt {
    a.floor().to_integer()
}

pub fn ceil_int(a: &Rat) -> BigInt {
    a.ceil().to_integer()
}

/// Smallest integer n with n^2 >= r. Entirely in integer arithmetic: the
/// candidate comes from the integer square root of floor(r), and n^2 >= p/q
/// is decided by the cross-multiplied comparison n^2 q >= p.
pub fn ceil_sqrt(r: &Rat) -> Result<BigInt> {
    if r.is_negative() {
        return Err(Error::NegativeSqrt);
    }
    let p = r.numer();
    let q = r.denom();
    let candidate = p.div_floor(q).sqrt();
    // floor(sqrt(floor(r))) <= sqrt(r) < candidate + 1, so the answer is the
    // candidate itself (perfect square case) or the next integer up.
    if (&candidate * &candidate) * q >= *p {
        Ok(candidate)
    } else {
        Ok(candidate + 1)
    }
}

/// The eight primitive operations behind every exact computation in the
/// workbench, exposed as a single dispatch for report tooling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
    PowInt,
    Cmp,
    Floor,
    Ceil,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RatValue {
    Rational(Rat),
    Order(Ordering),
}

pub fn rational_arith(op: RatOp, a: &Rat, b: &Rat) -> Result<RatValue> {
    use RatValue::*;
    Ok(match op {
        RatOp::Add => Rational(a + b),
        RatOp::Sub => Rational(a - b),
        RatOp::Mul => Rational(a * b),
        RatOp::Div => {
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Rational(a / b)
        }
        RatOp::PowInt => {
            let e = b
                .to_integer()
                .try_into()
                .map_err(|_| Error::BadInput(format!("exponent {b} out of machine range")))?;
            if !b.is_integer() {
                return Err(Error::BadInput(format!("pow_int exponent {b} is not an integer")));
            }
            Rational(pow_int(a, e)?)
        }
        RatOp::Cmp => Order(a.cmp(b)),
        RatOp::Floor => Rational(a.floor()),
        RatOp::Ceil => Rational(a.ceil()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_literals_reduce() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(2, 4) + rat(-1, 2), rat_int(0));
        assert_eq!(fmt_rat(&rat(-6, 4)), "-3/2");
        assert_eq!(fmt_rat(&rat_int(7)), "7");
    }

    #[test]
    fn q3_from_its_defining_formula() {
        let nu = 3i64;
        let q = rat(6 * (3 * nu - 4), 4 * nu - 5);
        assert_eq!(q, rat(30, 7));
    }

    #[test]
    fn theta_from_its_defining_combination() {
        let theta = rat(131, 400) - rat(1, 25) * rat(71, 206);
        assert_eq!(theta, rat(517, 1648));
    }

    #[test]
    fn parse_round_trips() {
        for s in ["517/1648", "-71/206", "0", "42", "-9/4"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
        }
        assert_eq!(parse_rat("4/6").unwrap(), rat(2, 3));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn ceil_sqrt_examples() {
        assert_eq!(ceil_sqrt(&rat_int(9)).unwrap(), BigInt::from(3));
        assert_eq!(ceil_sqrt(&rat_int(2)).unwrap(), BigInt::from(2));
        // 2*1000^3 / (100*10^6) = 20, and 4^2 < 20 <= 5^2.
        let r = rat_int(2) * rat_int(1000).pow(3) / (rat_int(100) * rat_int(10).pow(6));
        assert_eq!(r, rat_int(20));
        assert_eq!(ceil_sqrt(&r).unwrap(), BigInt::from(5));
        assert_eq!(ceil_sqrt(&rat(1, 4)).unwrap(), BigInt::from(1));
        assert_eq!(ceil_sqrt(&rat_int(0)).unwrap(), BigInt::from(0));
        assert!(ceil_sqrt(&rat_int(-1)).is_err());
    }

    #[test]
    fn dispatch_matches_operators() {
        let a = rat(3, 7);
        let b = rat(-2, 5);
        assert_eq!(rational_arith(RatOp::Add, &a, &b).unwrap(), RatValue::Rational(&a + &b));
        assert_eq!(rational_arith(RatOp::Cmp, &a, &b).unwrap(), RatValue::Order(Ordering::Greater));
        assert_eq!(
            rational_arith(RatOp::PowInt, &a, &rat_int(-2)).unwrap(),
            RatValue::Rational(rat(49, 9))
        );
        assert!(rational_arith(RatOp::Div, &a, &rat_int(0)).is_err());
        assert!(rational_arith(RatOp::PowInt, &a, &rat(1, 2)).is_err());
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (any::<i32>(), 1..=u16::MAX).prop_map(|(n, d)| rat(n as i64, d as i64))
    }

    proptest! {
        #[test]
        fn add_then_subtract_restores(a in arb_rat(), b in arb_rat()) {
            prop_assert_eq!((&a + &b) - &b, a);
        }

        #[test]
        fn multiply_then_divide_restores(a in arb_rat(), b in arb_rat()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b) / &b, a);
        }

        #[test]
        fn comparison_is_antisymmetric_and_transitive(
            a in arb_rat(), b in arb_rat(), c in arb_rat()
        ) {
            prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
            if a <= b && b <= c {
                prop_assert!(a <= c);
            }
        }

        #[test]
        fn scaling_numerator_and_denominator_is_identity(
            n in any::<i32>(), d in 1..=u16::MAX, k in 1..=u16::MAX
        ) {
            let plain = rat(n as i64, d as i64);
            let scaled = rat(n as i64 * k as i64, d as i64 * k as i64);
            prop_assert_eq!(plain.numer(), scaled.numer());
            prop_assert_eq!(plain.denom(), scaled.denom());
        }

        #[test]
        fn ceil_sqrt_brackets_perfect_squares(n in 0u64..=1_000_000) {
            let sq = rat_int(n as i64) * rat_int(n as i64);
            prop_assert_eq!(ceil_sqrt(&sq).unwrap(), BigInt::from(n));
            prop_assert_eq!(ceil_sqrt(&(&sq + rat_int(1))).unwrap(), BigInt::from(n + 1));
        }
    }
}
