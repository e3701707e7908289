//! Exact and adjustable-precision scalars.

mod rational;
mod real;

pub use rational::{
    alternating_binomial_sum, binomial, double_factorial, format_exact, from_f64, half_integer_binomial,
    integer, monic_odd_ratio, parse_rational, rational, rational_binomial, to_exact_decimal, to_f64,
    ExactRational,
};
pub use real::{AdjustableReal, MIN_PRECISION};

/// Working precision for sums whose terms reach `y_max^(2k+N)` in magnitude
/// but cancel to a value of order one: `ceil((2k+N+1) log2 y_max) + 64` bits.
pub fn required_precision_bits(k: u32, n: usize, y_max: f64) -> u32 {
    let log = y_max.max(1.0).log2();
    let terms = f64::from(2 * k) + n as f64 + 1.0;
    (terms * log).ceil() as u32 + 64
}
