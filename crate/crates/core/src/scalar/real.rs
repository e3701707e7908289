//! Binary floating-point numbers with an explicit, adjustable precision.
//!
//! A value is `mantissa * 2^exponent`. Every arithmetic result is rounded
//! (round half to even) to the larger of its operands' precisions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use super::rational::{to_exact_decimal, ExactRational};

/// Lowest precision accepted anywhere in the library.
pub const MIN_PRECISION: u32 = 16;

#[derive(Clone, Debug)]
pub struct AdjustableReal {
    mantissa: BigInt,
    exponent: i64,
    precision: u32,
}

// Bits kept beyond the target precision before the final rounding of an
// inexact intermediate.
const GUARD: u32 = 3;

impl AdjustableReal {
    pub fn zero(precision: u32) -> Self {
        Self {
            mantissa: BigInt::zero(),
            exponent: 0,
            precision: precision.max(MIN_PRECISION),
        }
    }

    pub fn from_integer(value: impl Into<BigInt>, precision: u32) -> Self {
        Self::round(value.into(), 0, false, precision)
    }

    /// Exact conversion of a finite `f64`, rounded to `precision` when it is below 53 bits.
    pub fn from_f64(value: f64, precision: u32) -> Self {
        assert!(value.is_finite(), "cannot represent {value}");
        let (mantissa, exponent, sign) = value.integer_decode();
        let m = BigInt::from(mantissa) * i64::from(sign);
        Self::round(m, i64::from(exponent), false, precision)
    }

    pub fn from_rational(value: &ExactRational, precision: u32) -> Self {
        let precision = precision.max(MIN_PRECISION);
        if value.is_zero() {
            return Self::zero(precision);
        }
        let numer = value.numer().magnitude();
        let denom = value.denom().magnitude();
        let want = u64::from(precision + GUARD) + denom.bits();
        let shift = want.saturating_sub(numer.bits());
        let scaled = numer << shift;
        let quotient = &scaled / denom;
        let sticky = !(&quotient * denom == scaled);
        Self::round_magnitude(
            quotient,
            -(shift as i64),
            sticky,
            value.is_negative(),
            precision,
        )
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    /// The same value rounded to a new precision.
    pub fn with_precision(&self, precision: u32) -> Self {
        Self::round(self.mantissa.clone(), self.exponent, false, precision)
    }

    pub fn abs(&self) -> Self {
        Self {
            mantissa: self.mantissa.abs(),
            ..self.clone()
        }
    }

    /// Correctly rounded square root; `None` for negative input.
    pub fn checked_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let p = self.precision;
        let mag = self.mantissa.magnitude();
        let want = 2 * u64::from(p + GUARD);
        let mut shift = want.saturating_sub(mag.bits());
        if (self.exponent - shift as i64) % 2 != 0 {
            shift += 1;
        }
        let radicand = mag << shift;
        let root = radicand.sqrt();
        let sticky = &root * &root != radicand;
        Some(Self::round_magnitude(
            root,
            (self.exponent - shift as i64) / 2,
            sticky,
            false,
            p,
        ))
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut result = Self::from_integer(1, self.precision);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact value as a rational (always a dyadic fraction).
    pub fn to_rational(&self) -> ExactRational {
        if self.exponent >= 0 {
            ExactRational::from_integer(&self.mantissa << self.exponent as usize)
        } else {
            BigRational::new(
                self.mantissa.clone(),
                BigInt::one() << (-self.exponent) as usize,
            )
        }
    }

    /// Exact decimal expansion of the stored value.
    pub fn to_decimal_string(&self) -> String {
        to_exact_decimal(&self.to_rational()).expect("dyadic values terminate in base ten")
    }

    /// Nearest `f64` (round half to even, ignoring subnormal double rounding).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = Self::round(self.mantissa.clone(), self.exponent, false, 53);
        let m = r.mantissa.to_f64().expect("53-bit mantissa");
        ldexp(m, r.exponent)
    }

    fn round(mantissa: BigInt, exponent: i64, sticky: bool, precision: u32) -> Self {
        let negative = mantissa.is_negative();
        let (_, mag) = mantissa.into_parts();
        Self::round_magnitude(mag, exponent, sticky, negative, precision)
    }

    /// Rounds `mag * 2^exponent` (plus an infinitesimal if `sticky`) to `precision` bits.
    /// Callers with `sticky` set must supply at least `precision + 2` bits.
    fn round_magnitude(
        mag: BigUint,
        exponent: i64,
        sticky: bool,
        negative: bool,
        precision: u32,
    ) -> Self {
        let precision = precision.max(MIN_PRECISION);
        let bits = mag.bits();
        let p = u64::from(precision);
        if mag.is_zero() {
            return Self::zero(precision);
        }
        let (mag, exponent) = if bits <= p {
            debug_assert!(!sticky || bits > p, "inexact value with too few bits");
            (mag, exponent)
        } else {
            let shift = bits - p;
            let mut q = &mag >> shift;
            let rem = &mag - (&q << shift);
            let half = BigUint::one() << (shift - 1);
            let round_up = match rem.cmp(&half) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => sticky || q.bit(0),
            };
            let mut exponent = exponent + shift as i64;
            if round_up {
                q += 1u32;
                if q.bits() > p {
                    q >>= 1;
                    exponent += 1;
                }
            }
            (q, exponent)
        };
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        Self {
            mantissa: BigInt::from_biguint(sign, mag),
            exponent,
            precision,
        }
    }

    fn top(&self) -> i64 {
        self.exponent + self.mantissa.bits() as i64
    }

    fn add_impl(&self, other: &Self) -> Self {
        let p = self.precision.max(other.precision);
        if other.is_zero() {
            return self.with_precision(p);
        }
        if self.is_zero() {
            return other.with_precision(p);
        }
        let (hi, lo) = if self.top() >= other.top() {
            (self, other)
        } else {
            (other, self)
        };
        let extend = u64::from(p + GUARD).saturating_sub(hi.mantissa.bits());
        let hi_m = &hi.mantissa << extend;
        let hi_e = hi.exponent - extend as i64;
        if lo.top() < hi_e - 1 {
            // lo only decides the rounding direction
            let surrogate = (hi_m << 1u32) + lo.mantissa.signum();
            return Self::round(surrogate, hi_e - 1, false, p);
        }
        let e = hi.exponent.min(lo.exponent);
        let sum = (&hi.mantissa << (hi.exponent - e) as usize)
            + (&lo.mantissa << (lo.exponent - e) as usize);
        Self::round(sum, e, false, p)
    }

    fn div_impl(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero");
        let p = self.precision.max(other.precision);
        if self.is_zero() {
            return Self::zero(p);
        }
        let a = self.mantissa.magnitude();
        let b = other.mantissa.magnitude();
        let want = u64::from(p + GUARD) + b.bits();
        let shift = want.saturating_sub(a.bits());
        let scaled = a << shift;
        let q = &scaled / b;
        let sticky = &q * b != scaled;
        Self::round_magnitude(
            q,
            self.exponent - shift as i64 - other.exponent,
            sticky,
            self.is_negative() != other.is_negative(),
            p,
        )
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        let e = self.exponent.min(other.exponent);
        let a = &self.mantissa << (self.exponent - e) as usize;
        let b = &other.mantissa << (other.exponent - e) as usize;
        a.cmp(&b)
    }
}

fn ldexp(mut value: f64, mut exp: i64) -> f64 {
    while exp > 1000 {
        value *= 2f64.powi(1000);
        exp -= 1000;
    }
    while exp < -1000 {
        value *= 2f64.powi(-1000);
        exp += 1000;
    }
    value * 2f64.powi(exp as i32)
}

impl PartialEq for AdjustableReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for AdjustableReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl fmt::Display for AdjustableReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_f64(), f)
    }
}

impl Neg for AdjustableReal {
    type Output = AdjustableReal;
    fn neg(self) -> Self::Output {
        AdjustableReal {
            mantissa: -self.mantissa,
            ..self
        }
    }
}

impl Neg for &AdjustableReal {
    type Output = AdjustableReal;
    fn neg(self) -> Self::Output {
        -self.clone()
    }
}

impl Add for &AdjustableReal {
    type Output = AdjustableReal;
    fn add(self, rhs: Self) -> Self::Output {
        self.add_impl(rhs)
    }
}

impl Sub for &AdjustableReal {
    type Output = AdjustableReal;
    fn sub(self, rhs: Self) -> Self::Output {
        self.add_impl(&-rhs)
    }
}

impl Mul for &AdjustableReal {
    type Output = AdjustableReal;
    fn mul(self, rhs: Self) -> Self::Output {
        let p = self.precision.max(rhs.precision);
        AdjustableReal::round(
            &self.mantissa * &rhs.mantissa,
            self.exponent + rhs.exponent,
            false,
            p,
        )
    }
}

impl Div for &AdjustableReal {
    type Output = AdjustableReal;
    fn div(self, rhs: Self) -> Self::Output {
        self.div_impl(rhs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $method:ident),*) => {$(
        impl $tr for AdjustableReal {
            type Output = AdjustableReal;
            fn $method(self, rhs: Self) -> Self::Output {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&AdjustableReal> for AdjustableReal {
            type Output = AdjustableReal;
            fn $method(self, rhs: &AdjustableReal) -> Self::Output {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rational;

    fn real(v: f64) -> AdjustableReal {
        AdjustableReal::from_f64(v, 64)
    }

    #[test]
    fn f64_round_trip() {
        for v in [0.0, 1.0, -2.5, 1e-300, 6.02e23, std::f64::consts::PI] {
            assert_eq!(AdjustableReal::from_f64(v, 64).to_f64(), v);
        }
    }

    #[test]
    fn rounds_to_nearest_even() {
        // 2^16 + 1 at 16 bits is a tie between 2^16 and 2^16 + 2
        let x = AdjustableReal::from_integer(65537, 64).with_precision(16);
        assert_eq!(x.to_f64(), 65536.0);
        let y = AdjustableReal::from_integer(65539, 64).with_precision(16);
        assert_eq!(y.to_f64(), 65540.0);
    }

    #[test]
    fn arithmetic_matches_f64_at_53_bits() {
        let a = AdjustableReal::from_f64(0.1, 53);
        let b = AdjustableReal::from_f64(0.7, 53);
        assert_eq!((&a + &b).to_f64(), 0.1 + 0.7);
        assert_eq!((&a - &b).to_f64(), 0.1 - 0.7);
        assert_eq!((&a * &b).to_f64(), 0.1 * 0.7);
        assert_eq!((&a / &b).to_f64(), 0.1 / 0.7);
        assert_eq!(b.checked_sqrt().unwrap().to_f64(), 0.7f64.sqrt());
    }

    #[test]
    fn sqrt_of_square() {
        let three = AdjustableReal::from_integer(3, 200);
        let s = (&three * &three).checked_sqrt().unwrap();
        assert_eq!(s, three);
        assert!(real(-1.0).checked_sqrt().is_none());
    }

    #[test]
    fn mixed_precision_takes_max() {
        let a = AdjustableReal::from_integer(1, 32);
        let b = AdjustableReal::from_integer(3, 128);
        assert_eq!((&a / &b).precision(), 128);
    }

    #[test]
    fn rational_conversion_is_close() {
        let third = AdjustableReal::from_rational(&rational(1, 3), 256);
        let err = (third.to_rational() - rational(1, 3)) * rational(3, 1);
        let bound = BigRational::new(BigInt::one(), BigInt::one() << 255usize);
        assert!(err.abs() <= bound);
    }

    #[test]
    fn sums_are_correctly_rounded() {
        // compare against rounding of the exact rational sum, across exponent gaps
        // that exercise both the aligned and the far-apart paths
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..2000 {
            let ma = (next() >> 40) as i64 - (1 << 23);
            let mb = (next() >> 40) as i64 - (1 << 23);
            let gap = (next() % 120) as i64;
            let a = AdjustableReal::round(BigInt::from(ma), 0, false, 20);
            let b = AdjustableReal::round(BigInt::from(mb), -gap, false, 20);
            let exact = a.to_rational() + b.to_rational();
            assert_eq!((&a + &b).to_rational(), AdjustableReal::from_rational(&exact, 20).to_rational());
            let exact = a.to_rational() - b.to_rational();
            assert_eq!((&a - &b).to_rational(), AdjustableReal::from_rational(&exact, 20).to_rational());
        }
    }

    #[test]
    fn decimal_string_is_exact() {
        assert_eq!(AdjustableReal::from_f64(0.375, 64).to_decimal_string(), "0.375");
        assert_eq!(AdjustableReal::from_integer(-12, 64).to_decimal_string(), "-12");
    }

    #[test]
    fn powi_small() {
        assert_eq!(real(1.5).powi(3).to_f64(), 3.375);
        assert_eq!(real(7.0).powi(0).to_f64(), 1.0);
    }
}
