//! Double-double arithmetic: an unevaluated sum of two f64s giving roughly 31
//! significant decimal digits. Used wherever the formulas involve irrational
//! powers or `T * log(...)` phases that exceed native f64 precision.
//!
//! The error-free transformations (two_sum, two_prod) are the classical
//! Dekker/Knuth ones; two_prod leans on fused multiply-add. exp uses ln-2
//! argument reduction plus a Taylor tail, ln refines an f64 seed with two
//! Newton steps through the dd exp.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::LazyLock;

use crate::rational::Rat;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact: splits into two 32-bit halves, each representable.
    pub fn from_u64(x: u64) -> Dd {
        let hi = (x >> 32) as f64 * 4294967296.0;
        let lo = (x & 0xffff_ffff) as f64;
        let (s, e) = two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    pub fn from_i64(x: i64) -> Dd {
        if x < 0 {
            -Dd::from_u64(x.unsigned_abs())
        } else {
            Dd::from_u64(x as u64)
        }
    }

    pub fn from_u128(x: u128) -> Dd {
        let hi = Dd::from_u64((x >> 64) as u64);
        let lo = Dd::from_u64(x as u64);
        hi.ldexp(64) + lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    /// Multiplies by 2^k exactly.
    pub fn ldexp(self, k: i32) -> Dd {
        Dd {
            hi: libm_ldexp(self.hi, k),
            lo: libm_ldexp(self.lo, k),
        }
    }

    pub fn sqr(self) -> Dd {
        let (p, e) = two_prod(self.hi, self.hi);
        let e = e + 2.0 * self.hi * self.lo + self.lo * self.lo;
        let (s, e) = quick_two_sum(p, e);
        Dd { hi: s, lo: e }
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        // One Karp-Markstein correction on the f64 seed.
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let ax_dd = Dd::from_f64(ax);
        let err = (self - ax_dd.sqr()).hi * (x * 0.5);
        ax_dd + Dd::from_f64(err)
    }

    pub fn floor(self) -> Dd {
        let fhi = self.hi.floor();
        if fhi == self.hi {
            let flo = self.lo.floor();
            let (s, e) = quick_two_sum(fhi, flo);
            Dd { hi: s, lo: e }
        } else {
            Dd { hi: fhi, lo: 0.0 }
        }
    }

    /// Fractional part in [0, 1).
    pub fn fract(self) -> Dd {
        self - self.floor()
    }

    pub fn powi(self, mut e: i64) -> Dd {
        if e == 0 {
            return Dd::ONE;
        }
        let recip = e < 0;
        if recip {
            e = -e;
        }
        let mut base = self;
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base.sqr();
            e >>= 1;
        }
        if recip {
            Dd::ONE / acc
        } else {
            acc
        }
    }

    pub fn exp(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.to_f64() / std::f64::consts::LN_2).round();
        let r = self - LN2.mul_f64(k);
        // |r| <= ln2/2; the Taylor tail converges past double-double in ~26 terms.
        let mut term = r;
        let mut sum = Dd::ONE + r;
        for n in 2..=26 {
            term = term * r.div_f64(n as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-35 * sum.hi.abs() {
                break;
            }
        }
        sum.ldexp(k as i32)
    }

    pub fn ln(self) -> Dd {
        if !(self.hi > 0.0) {
            return Dd::new(f64::NAN, 0.0);
        }
        let mut y = Dd::from_f64(self.hi.ln());
        // Newton on exp(y) = x: y += x*exp(-y) - 1.
        for _ in 0..2 {
            y = y + self * (-y).exp() - Dd::ONE;
        }
        y
    }

    /// self^e. Nonpositive bases give NaN (zero base: 0 for positive e),
    /// so domain errors surface as non-finite results instead of panics.
    pub fn pow(self, e: Dd) -> Dd {
        if e.hi == 0.0 && e.lo == 0.0 {
            return Dd::ONE;
        }
        if self.hi == 0.0 && self.lo == 0.0 {
            return if e.hi > 0.0 {
                Dd::ZERO
            } else {
                Dd::new(f64::NAN, 0.0)
            };
        }
        (self.ln() * e).exp()
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (s, e) = quick_two_sum(p, e);
        Dd { hi: s, lo: e }
    }

    pub fn div_f64(self, b: f64) -> Dd {
        self / Dd::from_f64(b)
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    pub fn min(self, other: Dd) -> Dd {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Dd) -> Dd {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Exact conversion: both limbs are dyadic rationals.
    pub fn to_rational(self) -> Option<Rat> {
        let hi = BigRational::from_float(self.hi)?;
        let lo = BigRational::from_float(self.lo)?;
        Some(hi + lo)
    }

    pub fn from_rational(r: &Rat) -> Dd {
        let hi = rat_to_f64(r);
        let rem = r - BigRational::from_float(hi).expect("finite float");
        let lo = rat_to_f64(&rem);
        let (s, e) = two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    /// Decimal rendering with `digits` significant digits, exact digit
    /// extraction through the rational form.
    pub fn to_decimal(self, digits: usize) -> String {
        if !self.is_finite() {
            return format!("{}", self.hi);
        }
        let r = match self.to_rational() {
            Some(r) => r,
            None => return format!("{}", self.hi),
        };
        if r.is_zero() {
            return "0".to_string();
        }
        let neg = r.is_negative();
        let mut a = r.abs();
        let ten = BigRational::from_integer(BigInt::from(10));
        let one = BigRational::from_integer(BigInt::from(1));
        let mut exp10: i64 = 0;
        while a >= ten {
            a = &a / &ten;
            exp10 += 1;
        }
        while a < one {
            a = &a * &ten;
            exp10 -= 1;
        }
        // a in [1, 10); round to the requested number of significant digits.
        let digits = digits.max(1);
        let scale = BigRational::from_integer(BigInt::from(10).pow((digits - 1) as u32));
        let scaled = &a * &scale;
        let floor = scaled.floor().to_integer();
        let frac = &scaled - BigRational::from_integer(floor.clone());
        let mut n = floor;
        if frac >= BigRational::new(BigInt::from(1), BigInt::from(2)) {
            n += 1;
        }
        let mut ds = n.to_string();
        if ds.len() > digits {
            exp10 += 1;
            ds.truncate(digits);
        }
        let sign = if neg { "-" } else { "" };
        if (-4..=20).contains(&exp10) {
            // plain notation
            let digits_vec: Vec<char> = ds.chars().collect();
            let point = exp10 + 1;
            let mut out = String::new();
            if point <= 0 {
                out.push_str("0.");
                for _ in 0..(-point) {
                    out.push('0');
                }
                out.extend(&digits_vec);
            } else if (point as usize) >= digits_vec.len() {
                out.extend(&digits_vec);
                for _ in 0..(point as usize - digits_vec.len()) {
                    out.push('0');
                }
            } else {
                out.extend(&digits_vec[..point as usize]);
                out.push('.');
                out.extend(&digits_vec[point as usize..]);
            }
            let trimmed = if out.contains('.') {
                out.trim_end_matches('0').trim_end_matches('.').to_string()
            } else {
                out
            };
            format!("{sign}{trimmed}")
        } else {
            let mantissa: String = {
                let mut it = ds.chars();
                let first = it.next().unwrap();
                let rest: String = it.collect();
                let rest = rest.trim_end_matches('0');
                if rest.is_empty() {
                    first.to_string()
                } else {
                    format!("{first}.{rest}")
                }
            };
            format!("{sign}{mantissa}e{exp10}")
        }
    }
}

fn libm_ldexp(x: f64, k: i32) -> f64 {
    // Two-step scaling avoids overflow of the intermediate power for large |k|.
    let half = k / 2;
    x * f64::powi(2.0, half) * f64::powi(2.0, k - half)
}

/// Correctly-scaled f64 approximation of a big rational (never NaN for
/// finite-representable magnitudes; avoids numerator/denominator overflow).
pub fn rat_to_f64(r: &Rat) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let neg = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().clone();
    let shift = num.bits() as i64 - den.bits() as i64 - 64;
    let (n, d) = if shift >= 0 {
        (num, den << shift)
    } else {
        (num << (-shift), den)
    };
    let q = (&n / &d).to_f64().unwrap_or(f64::INFINITY);
    let scaled = libm_ldexp(q, shift.clamp(i32::MIN as i64, i32::MAX as i64) as i32);
    if neg {
        -scaled
    } else {
        scaled
    }
}

pub fn bigint_to_dd(x: &BigInt) -> Dd {
    let (sign, digits) = x.to_u64_digits();
    let mut acc = Dd::ZERO;
    for &d in digits.iter().rev() {
        acc = acc.ldexp(64) + Dd::from_u64(d);
    }
    if sign == Sign::Minus {
        -acc
    } else {
        acc
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let (t1, t2) = two_sum(self.lo, other.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (s1, s2) = quick_two_sum(s1, s2);
        Dd { hi: s1, lo: s2 }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, other: Dd) -> Dd {
        self + (-other)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + (self.hi * other.lo + self.lo * other.hi);
        let (s, e) = quick_two_sum(p, e);
        Dd { hi: s, lo: e }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self - other.mul_f64(q1);
        let q2 = r.hi / other.hi;
        let r = r - other.mul_f64(q2);
        let q3 = r.hi / other.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e } + Dd::from_f64(q3)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(31))
    }
}

pub fn parse_dd(s: &str) -> Dd {
    let mut int_part = String::new();
    let mut frac_part = String::new();
    let mut in_frac = false;
    let mut neg = false;
    for c in s.chars() {
        match c {
            '-' => neg = true,
            '.' => in_frac = true,
            '0'..='9' => {
                if in_frac {
                    frac_part.push(c)
                } else {
                    int_part.push(c)
                }
            }
            _ => panic!("bad dd literal {s}"),
        }
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = digits.parse().expect("digits");
    let den = BigInt::from(10).pow(frac_part.len() as u32);
    let r = BigRational::new(if neg { -num } else { num }, den);
    Dd::from_rational(&r)
}

pub static PI: LazyLock<Dd> =
    LazyLock::new(|| parse_dd("3.141592653589793238462643383279502884197169399375105821"));
pub static GAMMA: LazyLock<Dd> =
    LazyLock::new(|| parse_dd("0.5772156649015328606065120900824024310421593359399235988"));
pub static LN2_STATIC: LazyLock<Dd> =
    LazyLock::new(|| parse_dd("0.6931471805599453094172321214581765680755001343602552541"));
pub static E: LazyLock<Dd> =
    LazyLock::new(|| parse_dd("2.718281828459045235360287471352662497757247093699959575"));

// exp()'s reduction needs LN2 without going through LazyLock on the hot path.
static LN2: Dd = Dd {
    hi: 0.6931471805599453,
    lo: 2.3190468138462996e-17,
};

pub static TWO_PI: LazyLock<Dd> = LazyLock::new(|| PI.ldexp(1));

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn close(a: Dd, b: Dd, tol: f64) -> bool {
        (a - b).abs().to_f64() <= tol * b.abs().to_f64().max(1.0)
    }

    #[test]
    fn ln2_static_matches_parsed_constant() {
        assert!((LN2 - *LN2_STATIC).abs().to_f64() < 1e-32);
    }

    #[test]
    fn addition_keeps_tiny_tails() {
        let one = Dd::ONE;
        let tiny = Dd::from_f64(1e-25);
        let sum = one + tiny - one;
        assert!((sum.to_f64() - 1e-25).abs() < 1e-40);
    }

    #[test]
    fn rational_round_trip_is_exact() {
        let r = rat(517, 1648);
        let d = Dd::from_rational(&r);
        let back = d.to_rational().unwrap();
        assert!((&back - &r).abs() < rat(1, 1_000_000) * rat(1, 10i64.pow(18)) * rat(1, 10i64.pow(8)));
        let third = Dd::from_rational(&rat(1, 3));
        assert!((third.mul_f64(3.0) - Dd::ONE).abs().to_f64() < 1e-31);
    }

    #[test]
    fn big_integers_convert_exactly() {
        let x: u128 = 123_456_789_012_345_678_901_234_567_890;
        let d = Dd::from_u128(x);
        let r = d.to_rational().unwrap();
        assert_eq!(r, Rat::from_integer(BigInt::from(x)));
        let b = BigInt::from(-987654321987654321i64);
        assert_eq!(bigint_to_dd(&b).to_rational().unwrap(), Rat::from_integer(b));
    }

    #[test]
    fn sqrt_squares_back() {
        for v in [2.0f64, 3.0, 10.0, 1e8, 0.037] {
            let d = Dd::from_f64(v);
            let s = d.sqrt();
            assert!(close(s.sqr(), d, 1e-30), "sqrt({v})");
        }
    }

    #[test]
    fn exp_and_ln_agree_with_reference_constants() {
        assert!(close(Dd::ONE.exp(), *E, 1e-30));
        assert!(close(Dd::from_f64(2.0).ln(), *LN2_STATIC, 1e-30));
        for v in [0.5f64, 1.7, 12.0, 200.0, 1e-3] {
            let d = Dd::from_f64(v);
            assert!(close(d.ln().exp(), d, 1e-29), "exp(ln({v}))");
        }
    }

    #[test]
    fn pow_matches_powi_on_integer_exponents() {
        let x = Dd::from_f64(1.37);
        for e in [1i64, 2, 5, -3] {
            let a = x.powi(e);
            let b = x.pow(Dd::from_i64(e));
            assert!(close(a, b, 1e-28), "e={e}");
        }
    }

    #[test]
    fn floor_and_fract_split() {
        let x = Dd::from_f64(41.0) + Dd::from_f64(1e-20);
        assert_eq!(x.floor().to_f64(), 41.0);
        assert!((x.fract().to_f64() - 1e-20).abs() < 1e-33);
        let y = Dd::from_f64(41.0) - Dd::from_f64(1e-20);
        assert_eq!(y.floor().to_f64(), 40.0);
        assert!((y.fract().to_f64() - (1.0 - 1e-20)).abs() < 1e-15);
        assert_eq!(Dd::from_f64(-2.5).floor().to_f64(), -3.0);
    }

    #[test]
    fn decimal_rendering_matches_reference_digits() {
        // 31 significant digits, rounded, with trailing zeros trimmed.
        assert_eq!(PI.to_decimal(31), "3.14159265358979323846264338328");
        assert_eq!(PI.to_decimal(30), "3.14159265358979323846264338328");
        assert_eq!(PI.to_decimal(29), "3.1415926535897932384626433833");
        assert_eq!(Dd::from_f64(0.25).to_decimal(10), "0.25");
        assert_eq!(Dd::from_f64(-1024.0).to_decimal(8), "-1024");
        assert_eq!(Dd::ZERO.to_decimal(10), "0");
    }

    #[test]
    fn division_has_double_double_accuracy() {
        let a = Dd::from_u64(1) / Dd::from_u64(3);
        let three = a.mul_f64(3.0);
        assert!((three - Dd::ONE).abs().to_f64() < 1e-31);
    }
}
