//! Exact rational helpers: half-integer binomials, double factorials and
//! the finite-difference identity for alternating binomial sums.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::RationalPolynomial;

/// Exact rational number, always in lowest terms with positive denominator.
pub type ExactRational = BigRational;

pub fn rational(numer: i64, denom: i64) -> ExactRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(value))
}

/// Generalized binomial coefficient `C(a, n) = a(a-1)...(a-n+1) / n!`.
pub fn rational_binomial(a: &ExactRational, n: usize) -> ExactRational {
    let mut acc = ExactRational::one();
    let mut term = a.clone();
    for i in 1..=n {
        acc = acc * &term / BigInt::from(i);
        term -= ExactRational::one();
    }
    acc
}

/// `C(k - 1/2, n)`, the binomial coefficient appearing in the series of
/// `(1 + u)^(k - 1/2)`.
pub fn half_integer_binomial(k: u32, n: usize) -> ExactRational {
    rational_binomial(&rational(2 * i64::from(k) - 1, 2), n)
}

/// Integer binomial coefficient `C(n, r)`; zero when `r > n`.
pub fn binomial(n: usize, r: usize) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    BigInt::from(acc)
}

/// `m!! = m (m-2) ... 3 1` for odd `m`, with `(-1)!! = 1`.
pub fn double_factorial(m: i64) -> Result<BigInt> {
    if m < -1 {
        return Err(Error::InvalidParameter(format!(
            "double factorial of {m} is undefined"
        )));
    }
    if m.is_even() {
        return Err(Error::EvenDoubleFactorial(m));
    }
    let mut acc = BigInt::one();
    let mut f = m;
    while f > 1 {
        acc *= f;
        f -= 2;
    }
    Ok(acc)
}

/// `sum_{j=0}^{N} (-1)^j C(N, j) p(j)`.
///
/// The sum vanishes when `deg p < N` and equals `(-1)^N lead(p) N!` when
/// `deg p = N`; polynomials of higher degree are rejected.
pub fn alternating_binomial_sum(n: usize, p: &RationalPolynomial) -> Result<ExactRational> {
    if let Some(degree) = p.degree() {
        if degree > n {
            return Err(Error::DegreeExceedsOrder { degree, n });
        }
    }
    let mut total = ExactRational::zero();
    for j in 0..=n {
        let term = p.eval(&ExactRational::from_integer(BigInt::from(j)))
            * ExactRational::from_integer(binomial(n, j));
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// `(2(n+m)+1)!! / (2^m (2n+1)!!) = (2n+2m+1)(2n+2m-1)...(2n+3) / 2^m`.
///
/// As a function of `n` this is a monic polynomial of degree `m`.
pub fn monic_odd_ratio(n: u64, m: u64) -> ExactRational {
    let n = n as i64;
    let m = m as i64;
    let numer = double_factorial(2 * (n + m) + 1).expect("odd argument");
    let denom = double_factorial(2 * n + 1).expect("odd argument") * (BigInt::one() << m as usize);
    BigRational::new(numer, denom)
}

/// Parses a decimal literal (`-12.5`, `3e-4`) or a ratio `p/q` into an exact rational.
pub fn parse_rational(text: &str) -> Result<ExactRational> {
    let s = text.trim();
    let bad = || Error::Format(format!("not a rational literal: {text:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let mut value = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Exact decimal expansion, if the rational terminates in base ten.
pub fn to_exact_decimal(value: &ExactRational) -> Option<String> {
    let mut denom = value.denom().clone();
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    let (mut twos, mut fives) = (0usize, 0usize);
    while denom.is_even() {
        denom /= &two;
        twos += 1;
    }
    while (&denom % &five).is_zero() {
        denom /= &five;
        fives += 1;
    }
    if !denom.is_one() {
        return None;
    }
    let places = twos.max(fives);
    let scaled = value * BigRational::from_integer(num_traits::pow(BigInt::from(10u32), places));
    debug_assert!(scaled.is_integer());
    let magnitude = scaled.to_integer().abs().to_string();
    let sign = if value.is_negative() { "-" } else { "" };
    if places == 0 {
        return Some(format!("{sign}{magnitude}"));
    }
    let padded = format!("{magnitude:0>width$}", width = places + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - places);
    Some(format!("{sign}{int_part}.{frac_part}"))
}

/// Exact decimal when it terminates, `p/q` otherwise.
pub fn format_exact(value: &ExactRational) -> String {
    to_exact_decimal(value).unwrap_or_else(|| value.to_string())
}

pub fn to_f64(value: &ExactRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

pub fn from_f64(value: f64) -> Option<ExactRational> {
    BigRational::from_float(value)
}
