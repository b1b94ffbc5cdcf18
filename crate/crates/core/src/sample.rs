//! Seeded random inputs: vectors, orthonormal frames and rotation specs.
//!
//! Entries are drawn uniformly from `[-1, 1]`. Callers own the RNG, so a
//! fixed seed reproduces every draw.

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::Rng;

use crate::linalg::{gram_schmidt, Matrix, Vector};
use crate::rotation::{Frame4, PlaneSpec, Repair, RotationSpec};

/// Vector with entries uniform in `[-1, 1]`.
pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vector {
    Vector::new((0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()).expect("finite draws")
}

/// `rows × cols` matrix with entries uniform in `[-1, 1]`.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..=1.0))
}

/// Unit vector in a random direction.
pub fn random_unit<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vector {
    loop {
        let v = random_vector(rng, n);
        if v.norm() > 1e-3 {
            return v.normalized().expect("norm checked");
        }
    }
}

/// `k` orthonormal vectors in ℝⁿ, `k <= n`.
///
/// # Panics
/// If `k > n` or `k == 0`.
pub fn random_orthonormal<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Vec<Vector> {
    assert!(
        k > 0 && k <= n,
        "cannot draw {k} orthonormal vectors in dimension {n}"
    );
    loop {
        let vs: Vec<Vector> = (0..k).map(|_| random_vector(rng, n)).collect();
        if let Ok(q) = gram_schmidt(&vs) {
            return q;
        }
    }
}

/// Random orthonormal frame of ℝ⁴.
pub fn random_frame4<R: Rng + ?Sized>(rng: &mut R) -> Frame4 {
    let [a, b, c, d]: [Vector; 4] = random_orthonormal(rng, 4, 4)
        .try_into()
        .expect("four vectors");
    Frame4::new(a, b, c, d).expect("gram_schmidt output is orthonormal")
}

/// Angle uniform in `[-π, π)`.
pub fn random_angle<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.gen_range(-PI..PI)
}

/// Spec with `p` random orthonormal planes in ℝⁿ and random angles. When
/// `n = 2p + 1` the axis is supplied explicitly about half the time and
/// completed otherwise.
///
/// # Panics
/// If `2p > n`.
pub fn random_spec<R: Rng + ?Sized>(rng: &mut R, n: usize, p: usize) -> RotationSpec {
    assert!(2 * p <= n, "{p} planes do not fit in dimension {n}");
    let with_axis = n == 2 * p + 1 && rng.gen_bool(0.5);
    let k = 2 * p + usize::from(with_axis);
    let mut frame = if k == 0 {
        Vec::new()
    } else {
        random_orthonormal(rng, n, k)
    };
    let axis = if with_axis { frame.pop() } else { None };
    let mut vectors = frame.into_iter();
    let planes = (0..p)
        .map(|_| {
            let a = vectors.next().expect("2p vectors");
            let b = vectors.next().expect("2p vectors");
            PlaneSpec::new(a, b, random_angle(rng), Repair::Strict).expect("orthonormal pair")
        })
        .collect();
    RotationSpec::new(n, planes, axis, Repair::Strict).expect("orthonormal frame")
}
