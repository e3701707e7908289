//! Fixtures shared by the benchmarks.

use multiquadric::approx::approximate_polynomial;
use multiquadric::centers::select_centers;
use multiquadric::scalar::rational;
use multiquadric::{Approximant, CenterSet, Interval, MultiquadricParams, RationalPolynomial, ScatteredSequence};

pub fn params(k: u32) -> MultiquadricParams {
    MultiquadricParams::new(k, rational(1, 1)).expect("valid parameters")
}

pub fn unit() -> Interval {
    Interval::new(0.0, 1.0).expect("valid interval")
}

/// `2k+n+1` doubling lattice centers from 64.
pub fn lattice_centers(k: u32, n: usize) -> CenterSet {
    select_centers(&ScatteredSequence::integer_lattice(), 2 * k as usize + n + 1, &rational(64, 1))
        .expect("lattice is infinite")
}

/// Degree-4 Taylor polynomial of exp recovered from translates starting at `y_min`.
pub fn exp_approximant(k: u32, y_min: i64) -> Approximant {
    let taylor = RationalPolynomial::new(vec![
        rational(1, 1),
        rational(1, 1),
        rational(1, 2),
        rational(1, 6),
        rational(1, 24),
    ]);
    approximate_polynomial(&params(k), &taylor, unit(), &ScatteredSequence::integer_lattice(), &rational(y_min, 1), None)
        .expect("centers above threshold")
}
