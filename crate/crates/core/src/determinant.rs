//! Determinants.
//!
//! [`det_permutation`] sums `σ(p)·a₁p₁·…·aₙpₙ` over all `n!` permutations,
//! enumerated with Heap's algorithm so each step is a single transposition
//! and the sign just flips. [`det_lu`] is the Gaussian-elimination route
//! used as a cross-check and for sizes the expansion cannot reach.

use alloc::vec::Vec;

use crate::linalg::{matmul_cayley, Matrix, Vector};
use crate::tol::PIVOT_TOL;
use crate::{Error, Result};

/// Largest size accepted by [`det_permutation`] (10! ≈ 3.6M terms).
pub const MAX_PERMUTATION_DIM: usize = 10;

/// [`det`] and [`check_product_property`] use the permutation expansion up
/// to this size and LU above it.
pub const PERMUTATION_CUTOFF: usize = 7;

/// A permutation of `0..n` together with its parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    order: Vec<usize>,
    parity: i8,
}

impl Permutation {
    /// Validates a zero-based ordering and computes its parity.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let parity = permutation_sign(&order)?;
        Ok(Self { order, parity })
    }

    /// Same as [`Permutation::new`] for the one-based notation `(p₁, …, pₙ)`.
    pub fn from_one_based(order: &[usize]) -> Result<Self> {
        let zero_based = order
            .iter()
            .map(|&p| {
                p.checked_sub(1).ok_or(Error::InvalidPermutation {
                    reason: "entry out of range",
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(zero_based)
    }

    /// The identity permutation of length `n`.
    pub fn identity(n: usize) -> Self {
        Self {
            order: (0..n).collect(),
            parity: 1,
        }
    }

    /// Zero-based images `p(0), …, p(n-1)`.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `+1` for even, `-1` for odd.
    pub fn parity(&self) -> i8 {
        self.parity
    }

    /// Length `n`.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    /// `true` for the empty permutation.
    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Sign of a zero-based permutation by counting inversions.
pub fn permutation_sign(order: &[usize]) -> Result<i8> {
    let n = order.len();
    if n == 0 {
        return Err(Error::InvalidPermutation { reason: "empty" });
    }
    let mut seen = alloc::vec![false; n];
    for &p in order {
        if p >= n {
            return Err(Error::InvalidPermutation {
                reason: "entry out of range",
            });
        }
        if core::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidPermutation {
                reason: "repeated entry",
            });
        }
    }
    let inversions = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| order[i] > order[j])
        .count();
    Ok(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Calls `f(order, sign)` once for every permutation of `0..n`.
///
/// Heap's algorithm: consecutive permutations differ by one swap, so the
/// sign alternates.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize], i8)) {
    let mut order: Vec<usize> = (0..n).collect();
    let mut counters = alloc::vec![0usize; n];
    let mut sign = 1i8;
    f(&order, sign);
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(counters[i], i);
            }
            sign = -sign;
            f(&order, sign);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
}

/// Determinant as the signed sum over all `n!` permutations.
pub fn det_permutation(a: &Matrix) -> Result<f64> {
    let n = a.require_square()?;
    if n > MAX_PERMUTATION_DIM {
        return Err(Error::PermutationTooLarge {
            n,
            max: MAX_PERMUTATION_DIM,
        });
    }
    let rows = a.to_rows();
    let mut total = 0.0;
    for_each_permutation(n, |p, sign| {
        let term: f64 = rows.iter().zip(p).map(|(row, &j)| row[j]).product();
        total += f64::from(sign) * term;
    });
    Ok(total)
}

/// Determinant by Gaussian elimination with partial pivoting.
///
/// Returns exactly `0.0` once the best available pivot drops below
/// [`PIVOT_TOL`].
pub fn det_lu(a: &Matrix) -> Result<f64> {
    let n = a.require_square()?;
    let mut m = a.to_rows();
    let mut det = 1.0;
    for k in 0..n {
        let (pivot_row, pivot) = (k..n)
            .map(|i| (i, m[i][k].abs()))
            .fold(
                (k, -1.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
        if pivot < PIVOT_TOL {
            return Ok(0.0);
        }
        if pivot_row != k {
            m.swap(pivot_row, k);
            det = -det;
        }
        let (upper, lower) = m.split_at_mut(k + 1);
        let pivot_vals = &upper[k];
        det *= pivot_vals[k];
        for row in lower {
            let factor = row[k] / pivot_vals[k];
            if factor != 0.0 {
                for (x, p) in row[k..].iter_mut().zip(&pivot_vals[k..]) {
                    *x -= factor * p;
                }
            }
        }
    }
    Ok(det)
}

/// Permutation expansion up to [`PERMUTATION_CUTOFF`], LU above.
pub fn det(a: &Matrix) -> Result<f64> {
    if a.require_square()? <= PERMUTATION_CUTOFF {
        det_permutation(a)
    } else {
        det_lu(a)
    }
}

/// Both sides of `det(AB) = det(A)·det(B)` and their disagreement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductReport {
    /// `det(AB)`.
    pub lhs: f64,
    /// `det(A)·det(B)`.
    pub rhs: f64,
    /// `|lhs - rhs| / max(1, |rhs|)`.
    pub residual: f64,
}

/// Evaluates the multiplicative property for one pair, with `AB` formed
/// column by column as `[A b₁, …, A bₙ]`.
pub fn check_product_property(a: &Matrix, b: &Matrix) -> Result<ProductReport> {
    let n = a.require_square()?;
    let m = b.require_square()?;
    if n != m {
        return Err(Error::DimensionMismatch {
            op: "check_product_property",
            left: n,
            right: m,
        });
    }
    let lhs = det(&matmul_cayley(a, b)?)?;
    let rhs = det(a)? * det(b)?;
    Ok(ProductReport {
        lhs,
        rhs,
        residual: (lhs - rhs).abs() / rhs.abs().max(1.0),
    })
}

/// Area of the parallelogram spanned by `u, v ∈ ℝ²`, i.e. `|det([u, v])|`.
pub fn parallelogram_area(u: &Vector, v: &Vector) -> Result<f64> {
    for w in [u, v] {
        if w.dim() != 2 {
            return Err(Error::DimensionMismatch {
                op: "parallelogram_area",
                left: w.dim(),
                right: 2,
            });
        }
    }
    let m = Matrix::from_columns(&[u.clone(), v.clone()])?;
    Ok(det_permutation(&m)?.abs())
}
