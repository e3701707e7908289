//! Scattered sequences and doubling center selection.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{format_exact, from_f64, parse_rational, ExactRational};

#[derive(Clone, Debug, PartialEq)]
pub enum SequenceSource {
    /// The integers.
    IntegerLattice,
    /// `n + offset(n)` with `|offset(n)| < radius < 1/2`, offsets drawn from a seeded stream.
    JitteredLattice { radius: f64, seed: u64 },
    /// A sorted, finite list.
    Explicit(Vec<ExactRational>),
}

/// A delta-separated sequence of reals, enumerable by threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct ScatteredSequence {
    source: SequenceSource,
    declared_delta: ExactRational,
}

impl ScatteredSequence {
    pub fn integer_lattice() -> Self {
        Self {
            source: SequenceSource::IntegerLattice,
            declared_delta: ExactRational::one(),
        }
    }

    pub fn jittered_lattice(radius: f64, seed: u64) -> Result<Self> {
        if !(0.0..0.5).contains(&radius) {
            return Err(Error::InvalidParameter(format!(
                "jitter radius {radius} must lie in [0, 1/2)"
            )));
        }
        let delta = ExactRational::one() - from_f64(2.0 * radius).expect("finite");
        Ok(Self {
            source: SequenceSource::JitteredLattice { radius, seed },
            declared_delta: delta,
        })
    }

    /// Finite sorted list; its separation is the smallest adjacent gap.
    pub fn explicit(points: Vec<ExactRational>) -> Result<Self> {
        for (i, w) in points.windows(2).enumerate() {
            if w[1] < w[0] {
                return Err(Error::Unsorted(i + 1));
            }
            if w[1] == w[0] {
                return Err(Error::InvalidCenters(format!(
                    "repeated point {}",
                    format_exact(&w[0])
                )));
            }
        }
        let declared_delta = points
            .windows(2)
            .map(|w| &w[1] - &w[0])
            .min()
            .unwrap_or_else(ExactRational::one);
        Ok(Self {
            source: SequenceSource::Explicit(points),
            declared_delta,
        })
    }

    /// Reads one number per line (`#` comments and blank lines skipped).
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
        Self::parse_list(&text)
    }

    pub fn parse_list(text: &str) -> Result<Self> {
        let points = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::explicit(points)
    }

    pub fn source(&self) -> &SequenceSource {
        &self.source
    }

    pub fn declared_delta(&self) -> &ExactRational {
        &self.declared_delta
    }

    fn jittered_point(n: &BigInt, radius: f64, seed: u64) -> ExactRational {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // two's-complement stream id; distinct for every lattice index in range
        let stream: i64 = n.try_into().expect("lattice index fits in i64");
        rng.set_stream(stream as u64);
        let offset = if radius > 0.0 {
            rng.random_range(-radius..radius)
        } else {
            0.0
        };
        ExactRational::from_integer(n.clone()) + from_f64(offset).expect("finite")
    }

    /// Smallest element `>= t`.
    pub fn next_at_least(&self, t: &ExactRational) -> Result<ExactRational> {
        match &self.source {
            SequenceSource::IntegerLattice => Ok(ExactRational::from_integer(t.ceil().to_integer())),
            SequenceSource::JitteredLattice { radius, seed } => {
                // |offset| < 1/2, so only indices within half a unit of t can qualify first
                let half = ExactRational::new(1.into(), 2.into());
                let lo = (t - &half).floor().to_integer();
                let hi = (t + &half).ceil().to_integer();
                let mut n = lo;
                while n <= hi {
                    let p = Self::jittered_point(&n, *radius, *seed);
                    if &p >= t {
                        return Ok(p);
                    }
                    n += 1;
                }
                unreachable!("index ceil(t + 1/2) always qualifies")
            }
            SequenceSource::Explicit(points) => {
                let i = points.partition_point(|p| p < t);
                points
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::Exhausted(format_exact(t)))
            }
        }
    }

    /// The first `count` elements at or above `t`, in order. Relies on the
    /// declared separation to step past each element.
    pub fn points_from(&self, t: &ExactRational, count: usize) -> Result<Vec<ExactRational>> {
        let mut out: Vec<ExactRational> = Vec::with_capacity(count);
        let mut threshold = t.clone();
        for _ in 0..count {
            let p = self.next_at_least(&threshold)?;
            threshold = &p + &self.declared_delta / ExactRational::from_integer(2.into());
            out.push(p);
        }
        Ok(out)
    }
}

/// `true` iff every adjacent gap of the ascending list is at least `delta`.
pub fn validate_separation(points: &[ExactRational], delta: &ExactRational) -> Result<bool> {
    if let Some(i) = points.windows(2).position(|w| w[1] < w[0]) {
        return Err(Error::Unsorted(i + 1));
    }
    Ok(points.windows(2).all(|w| &(&w[1] - &w[0]) >= delta))
}

/// Positive centers with `y_j >= 2 y_{j-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterSet {
    centers: Vec<ExactRational>,
}

impl CenterSet {
    pub fn new(centers: Vec<ExactRational>) -> Result<Self> {
        if let Some(first) = centers.first() {
            if !first.is_positive() {
                return Err(Error::InvalidCenters(format!(
                    "first center {} must be positive",
                    format_exact(first)
                )));
            }
        }
        let two = ExactRational::from_integer(2.into());
        if let Some(i) = centers.windows(2).position(|w| w[1] < &two * &w[0]) {
            return Err(Error::InvalidCenters(format!(
                "center {} is less than twice its predecessor",
                i + 2
            )));
        }
        Ok(Self { centers })
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn as_slice(&self) -> &[ExactRational] {
        &self.centers
    }

    pub fn first(&self) -> Option<&ExactRational> {
        self.centers.first()
    }

    pub fn last(&self) -> Option<&ExactRational> {
        self.centers.last()
    }

    /// The first `m` centers (still a doubling set).
    pub fn prefix(&self, m: usize) -> CenterSet {
        CenterSet {
            centers: self.centers[..m.min(self.centers.len())].to_vec(),
        }
    }
}

/// Greedy doubling selection: `y_1 = next(y_min)`, `y_j = next(2 y_{j-1})`.
pub fn select_centers(seq: &ScatteredSequence, m: usize, y_min: &ExactRational) -> Result<CenterSet> {
    if !y_min.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "y_min = {} must be positive",
            format_exact(y_min)
        )));
    }
    let two = ExactRational::from_integer(2.into());
    let mut centers: Vec<ExactRational> = Vec::with_capacity(m);
    let mut threshold = y_min.clone();
    for _ in 0..m {
        let y = seq.next_at_least(&threshold)?;
        threshold = &two * &y;
        centers.push(y);
    }
    CenterSet::new(centers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{integer, rational};

    fn ints(v: &[i64]) -> Vec<ExactRational> {
        v.iter().map(|&i| integer(i)).collect()
    }

    #[test]
    fn separation_examples() {
        assert!(validate_separation(&ints(&[0, 1, 2, 3]), &integer(1)).unwrap());
        let pts = vec![integer(0), rational(2, 5), integer(2)];
        assert!(!validate_separation(&pts, &rational(1, 2)).unwrap());
        let pts = vec![integer(0), rational(1, 2), integer(2)];
        assert!(validate_separation(&pts, &rational(1, 2)).unwrap());
        assert_eq!(
            validate_separation(&ints(&[0, 2, 1]), &integer(1)),
            Err(Error::Unsorted(2))
        );
    }

    #[test]
    fn next_at_least_examples() {
        let lattice = ScatteredSequence::integer_lattice();
        assert_eq!(lattice.next_at_least(&rational(36, 5)).unwrap(), integer(8));
        assert_eq!(lattice.next_at_least(&integer(8)).unwrap(), integer(8));
        let list = ScatteredSequence::explicit(ints(&[3, 10, 25])).unwrap();
        assert_eq!(list.next_at_least(&integer(11)).unwrap(), integer(25));
        let short = ScatteredSequence::explicit(ints(&[3, 10])).unwrap();
        assert!(matches!(short.next_at_least(&integer(11)), Err(Error::Exhausted(_))));
    }

    #[test]
    fn select_examples() {
        let lattice = ScatteredSequence::integer_lattice();
        let c = select_centers(&lattice, 3, &integer(8)).unwrap();
        assert_eq!(c.as_slice(), ints(&[8, 16, 32]).as_slice());
        let c = select_centers(&lattice, 4, &integer(5)).unwrap();
        assert_eq!(c.as_slice(), ints(&[5, 10, 20, 40]).as_slice());
        let list = ScatteredSequence::explicit(ints(&[8, 20, 41])).unwrap();
        let c = select_centers(&list, 3, &integer(8)).unwrap();
        assert_eq!(c.as_slice(), ints(&[8, 20, 41]).as_slice());
        assert!(matches!(
            select_centers(&list, 4, &integer(8)),
            Err(Error::Exhausted(_))
        ));
    }

    #[test]
    fn explicit_list_validation() {
        assert_eq!(ScatteredSequence::explicit(ints(&[1, 3, 2])), Err(Error::Unsorted(2)));
        assert!(ScatteredSequence::explicit(ints(&[1, 1])).is_err());
        let seq = ScatteredSequence::explicit(ints(&[1, 3, 4])).unwrap();
        assert_eq!(seq.declared_delta(), &integer(1));
    }

    #[test]
    fn parses_list_file_contents() {
        let seq = ScatteredSequence::parse_list("# centers\n8\n\n20.5\n83/2\n").unwrap();
        let SequenceSource::Explicit(pts) = seq.source() else { panic!() };
        assert_eq!(pts, &vec![integer(8), rational(41, 2), rational(83, 2)]);
        assert!(ScatteredSequence::parse_list("1\nfoo\n").is_err());
    }

    #[test]
    fn center_set_rejects_non_doubling() {
        assert!(CenterSet::new(ints(&[8, 15])).is_err());
        assert!(CenterSet::new(ints(&[0, 16])).is_err());
        assert!(CenterSet::new(ints(&[8, 16])).is_ok());
    }

    #[test]
    fn jitter_is_deterministic() {
        let seq = ScatteredSequence::jittered_lattice(0.3, 7).unwrap();
        let a = select_centers(&seq, 6, &integer(9)).unwrap();
        let b = select_centers(&seq, 6, &integer(9)).unwrap();
        assert_eq!(a, b);
        assert!(ScatteredSequence::jittered_lattice(0.5, 1).is_err());
    }
}
