//! Shared numerical tolerances.
//!
//! Comparisons are relative for magnitudes above one and absolute below.

/// Orthonormality tolerance for frames and plane vectors.
pub const ORTHO_TOL: f64 = 1e-10;

/// Agreement tolerance between two computations of the same quantity.
pub const EQ_TOL: f64 = 1e-12;

/// LU pivots below this magnitude make the matrix numerically singular.
pub const PIVOT_TOL: f64 = 1e-14;

/// Default residual bound for invariant-plane checks.
pub const INVARIANCE_TOL: f64 = 1e-9;

/// `|a - b| <= tol * max(1, |a|, |b|)`.
#[inline]
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * scale(a, b)
}

/// Relative error with an absolute floor: `|a - b| / max(1, |a|, |b|)`.
#[inline]
pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / scale(a, b)
}

#[inline]
fn scale(a: f64, b: f64) -> f64 {
    1.0f64.max(a.abs()).max(b.abs())
}
