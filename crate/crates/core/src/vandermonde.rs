//! Weights for the modified Vandermonde system
//! `sum_j b_j y_j^l = delta_{l,-N-1}` for `l = 2k-1, ..., -N-1`.
//!
//! With `c_j = b_j y_j^(-N-1)` this becomes the standard system
//! `sum_j c_j y_j^m = delta_{m,0}`, `m = 0..=2k+N`, whose solution is the
//! Lagrange cardinal functions evaluated at zero:
//! `c_j = prod_{l != j} (1 - y_j / y_l)^(-1)`.

use num_traits::{One, Signed, Zero};

use crate::centers::CenterSet;
use crate::error::{Error, Result};
use crate::scalar::{format_exact, rational, ExactRational};

/// Supremum of `|b_j y_j^(-(N+1))|` over doubling centers, rounded up:
/// `prod_{m >= 1} (1 - 2^-m)^(-1) = 3.46274...`.
pub const NORMALIZED_WEIGHT_BOUND: f64 = 3.4628;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    pub weights: Vec<ExactRational>,
    pub order_k: u32,
    pub degree_n: usize,
    pub centers: CenterSet,
}

/// Number of centers needed to recover `A_{k,2k+N}`.
pub fn system_size(k: u32, n: usize) -> usize {
    2 * k as usize + n + 1
}

fn check_nodes(nodes: &[ExactRational], k: u32, n: usize) -> Result<()> {
    let m = system_size(k, n);
    if nodes.len() != m {
        return Err(Error::InvalidCenters(format!(
            "expected 2k+N+1 = {m} centers, got {}",
            nodes.len()
        )));
    }
    if nodes.iter().any(Zero::is_zero) {
        return Err(Error::Singular("center at the origin".into()));
    }
    for i in 0..m {
        for j in i + 1..m {
            if nodes[i] == nodes[j] {
                return Err(Error::Singular(format!(
                    "repeated center {}",
                    format_exact(&nodes[i])
                )));
            }
        }
    }
    Ok(())
}

fn power(y: &ExactRational, e: i64) -> ExactRational {
    if e >= 0 {
        num_traits::pow(y.clone(), e as usize)
    } else {
        num_traits::pow(y.recip(), (-e) as usize)
    }
}

/// Exact Gaussian elimination on the modified system, for arbitrary distinct nonzero nodes.
pub fn solve_modified_system(nodes: &[ExactRational], k: u32, n: usize) -> Result<Vec<ExactRational>> {
    check_nodes(nodes, k, n)?;
    let m = nodes.len();
    let top = 2 * i64::from(k) - 1;
    let mut rows: Vec<Vec<ExactRational>> = (0..m)
        .map(|r| {
            let mut row: Vec<ExactRational> =
                nodes.iter().map(|y| power(y, top - r as i64)).collect();
            row.push(if r == m - 1 {
                ExactRational::one()
            } else {
                ExactRational::zero()
            });
            row
        })
        .collect();
    for col in 0..m {
        let pivot = (col..m)
            .find(|&r| !rows[r][col].is_zero())
            .ok_or_else(|| Error::Singular(format!("no pivot in column {col}")))?;
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for v in rows[col].iter_mut().skip(col) {
            *v *= &inv;
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *v -= &factor * p;
            }
        }
    }
    Ok(rows.into_iter().map(|mut row| row.pop().expect("augmented")).collect())
}

/// `b_j = y_j^(N+1) prod_{l != j} (1 - y_j / y_l)^(-1)`.
pub fn closed_form_modified_system(
    nodes: &[ExactRational],
    k: u32,
    n: usize,
) -> Result<Vec<ExactRational>> {
    check_nodes(nodes, k, n)?;
    Ok(nodes
        .iter()
        .enumerate()
        .map(|(j, yj)| {
            let denom = nodes
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != j)
                .fold(ExactRational::one(), |acc, (_, yl)| {
                    acc * (ExactRational::one() - yj / yl)
                });
            power(yj, n as i64 + 1) / denom
        })
        .collect())
}

pub fn solve_weights_exact(centers: &CenterSet, k: u32, n: usize) -> Result<WeightVector> {
    Ok(WeightVector {
        weights: solve_modified_system(centers.as_slice(), k, n)?,
        order_k: k,
        degree_n: n,
        centers: centers.clone(),
    })
}

pub fn closed_form_weights(centers: &CenterSet, k: u32, n: usize) -> Result<WeightVector> {
    Ok(WeightVector {
        weights: closed_form_modified_system(centers.as_slice(), k, n)?,
        order_k: k,
        degree_n: n,
        centers: centers.clone(),
    })
}

/// `c_j = b_j y_j^(-(N+1))`.
pub fn normalized_weights(wv: &WeightVector) -> Vec<ExactRational> {
    wv.weights
        .iter()
        .zip(wv.centers.as_slice())
        .map(|(b, y)| b * power(y, -(wv.degree_n as i64) - 1))
        .collect()
}

/// `max_j |c_j|`, zero for an empty vector.
pub fn max_normalized_weight(wv: &WeightVector) -> ExactRational {
    normalized_weights(wv)
        .into_iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(ExactRational::zero)
}

/// Exact comparison against [`NORMALIZED_WEIGHT_BOUND`].
pub fn within_uniform_bound(wv: &WeightVector) -> bool {
    max_normalized_weight(wv) < rational(34628, 10000)
}

impl WeightVector {
    /// `sum_j b_j y_j^l` for one row of the system.
    pub fn row_sum(&self, l: i64) -> ExactRational {
        self.weights
            .iter()
            .zip(self.centers.as_slice())
            .map(|(b, y)| b * power(y, l))
            .sum()
    }

    /// All zero rows vanish and the last row sums to one, exactly.
    pub fn satisfies_system(&self) -> bool {
        let top = 2 * i64::from(self.order_k) - 1;
        let bottom = -(self.degree_n as i64) - 1;
        (bottom + 1..=top).all(|l| self.row_sum(l).is_zero()) && self.row_sum(bottom).is_one()
    }
}

/// `sign(b_j) = (-1)^(j+1)` with none zero, counting from one.
pub fn sign_pattern_alternates(weights: &[ExactRational]) -> bool {
    weights
        .iter()
        .enumerate()
        .all(|(j, b)| b.is_positive() == (j % 2 == 0) && !b.is_zero())
}
