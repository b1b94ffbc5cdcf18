//! Invariant planes of isoclinic rotations.
//!
//! When every plane of a rotation turns by the same angle α, the rotation
//! is `R = cos α I + sin α J` with `J = Σₖ (bₖaₖᵀ − aₖbₖᵀ)`. `J` is skew and
//! `J² = −I`, so it has no real eigenvector and `span{u, Ju}` is invariant
//! under `J`, and therefore under `R`, for every nonzero `u`. Conversely
//! any invariant plane `U` contains `Ju` for each `u ∈ U`, so these are all
//! of them, whatever the angle.
//!
//! For a 4D double rotation with distinct angles only Π and Π⊥ survive.
//! That half is supported here by randomized falsification, not proved.

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::Rng;

use crate::linalg::{check_orthonormal, gram_schmidt, matmul_cayley, matvec, Matrix, Vector};
use crate::rotation::{rotation_nd, Frame4, PlaneSpec, RotationSpec};
use crate::sample::{random_unit, random_vector};
use crate::tol::{INVARIANCE_TOL, ORTHO_TOL};
use crate::{Error, Result};

/// Angles closer than this (mod 2π) count as equal.
pub const ANGLE_TOL: f64 = 1e-12;

/// Bound on `max |J² + I|` accepted by [`invariant_plane`].
pub const COMPLEX_STRUCTURE_TOL: f64 = 1e-9;

/// Minimum component norm in each rotation plane for a general-position
/// sample.
pub const GENERAL_POSITION_MIN: f64 = 0.1;

/// A 2D subspace given by an orthonormal pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Plane {
    u: Vector,
    v: Vector,
}

impl Plane {
    /// Fails unless `u, v` are orthonormal within [`ORTHO_TOL`].
    pub fn new(u: Vector, v: Vector) -> Result<Self> {
        if u.dim() != v.dim() {
            return Err(Error::DimensionMismatch {
                op: "Plane",
                left: u.dim(),
                right: v.dim(),
            });
        }
        check_orthonormal(&[&u, &v], ORTHO_TOL)?;
        Ok(Self { u, v })
    }

    /// First basis vector.
    pub fn u(&self) -> &Vector {
        &self.u
    }

    /// Second basis vector.
    pub fn v(&self) -> &Vector {
        &self.v
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.u.dim()
    }
}

/// `J = baᵀ − abᵀ + dcᵀ − cdᵀ`.
pub fn build_j(frame: &Frame4) -> Matrix {
    let mut j = Matrix::zeros(4, 4);
    for (x, y) in [(frame.a(), frame.b()), (frame.c(), frame.d())] {
        j.add_scaled(
            1.0,
            &crate::rotation::plane_generator(x, y).expect("frame vectors are 4D"),
        );
    }
    j
}

/// `cos α I + sin α J`, the same matrix as `rotation_4d(frame, α, α)`.
pub fn isoclinic_rotation(frame: &Frame4, alpha: f64) -> Matrix {
    let mut r = Matrix::identity(4).scaled(libm::cos(alpha));
    r.add_scaled(libm::sin(alpha), &build_j(frame));
    r
}

/// `max |J² + I|`.
pub fn complex_structure_residual(j: &Matrix) -> Result<f64> {
    let n = j.require_square()?;
    matmul_cayley(j, j)?
        .add(&Matrix::identity(n))?
        .max_abs_diff(&Matrix::zeros(n, n))
}

/// The invariant plane `span{u, Ju}` as the orthonormal pair
/// `(u/‖u‖, Ju/‖u‖)`.
pub fn invariant_plane(u: &Vector, j: &Matrix) -> Result<Plane> {
    let n = j.require_square()?;
    if u.dim() != n {
        return Err(Error::DimensionMismatch {
            op: "invariant_plane",
            left: n,
            right: u.dim(),
        });
    }
    let residual = complex_structure_residual(j)?;
    if residual > COMPLEX_STRUCTURE_TOL {
        return Err(Error::NotComplexStructure { residual });
    }
    let u = u.normalized()?;
    let mut v = matvec(j, &u)?;
    // uᵀJu vanishes for skew J; strip whatever rounding leaves behind.
    v.axpy(-u.dot_unchecked(&v), &u);
    let v = v.normalized()?;
    Ok(Plane { u, v })
}

/// Largest norm of the part of `Ru` or `Rv` that leaves the plane.
pub fn invariance_residual(r: &Matrix, plane: &Plane) -> Result<f64> {
    let n = r.require_square()?;
    if plane.dim() != n {
        return Err(Error::DimensionMismatch {
            op: "is_invariant_plane",
            left: n,
            right: plane.dim(),
        });
    }
    let mut worst = 0.0f64;
    for x in [&plane.u, &plane.v] {
        let mut y = matvec(r, x)?;
        let (cu, cv) = (plane.u.dot_unchecked(&y), plane.v.dot_unchecked(&y));
        y.axpy(-cu, &plane.u);
        y.axpy(-cv, &plane.v);
        worst = worst.max(y.norm());
    }
    Ok(worst)
}

/// `true` iff `R` maps the plane into itself up to `tol`.
pub fn is_invariant_plane(r: &Matrix, plane: &Plane, tol: f64) -> Result<bool> {
    Ok(invariance_residual(r, plane)? < tol)
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    libm::remainder(a - b, 2.0 * PI).abs()
}

/// A random plane whose spanning vectors each have a component of norm
/// above [`GENERAL_POSITION_MIN`] in every one of `planes`.
pub fn general_position_plane<R: Rng + ?Sized>(rng: &mut R, planes: &[PlaneSpec]) -> Plane {
    let n = planes.first().map_or(4, PlaneSpec::dim);
    loop {
        let Ok(q) = gram_schmidt(&[random_vector(rng, n), random_vector(rng, n)]) else {
            continue;
        };
        let spread = q.iter().all(|w| {
            planes.iter().all(|p| {
                let (x, y) = (p.a().dot_unchecked(w), p.b().dot_unchecked(w));
                libm::hypot(x, y) > GENERAL_POSITION_MIN
            })
        });
        if spread {
            let [u, v]: [Vector; 2] = q.try_into().expect("two vectors");
            return Plane { u, v };
        }
    }
}

/// Which planes are invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaneClass {
    /// Distinct angles: the rotation planes are the only invariant planes.
    NoneExtra,
    /// Equal angles: every `span{u, Ju}` is invariant, and nothing else.
    AllJPlanes,
    /// 4D with angles 0 and π (R = ±diag(I, −I)): besides Π and Π⊥, every
    /// plane spanned by a line of Π and a line of Π⊥ is invariant.
    SplitHalfTurn,
}

/// Isoclinic cases where the rotation is `±I` and every plane is invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degenerate {
    /// α ≡ 0.
    Identity,
    /// α ≡ π.
    NegativeIdentity,
}

/// A plane with its measured invariance residual under the rotation.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    /// The plane.
    pub plane: Plane,
    /// [`invariance_residual`] under the classified rotation.
    pub residual: f64,
}

/// Outcome of random general-position probing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Falsification {
    /// Planes drawn.
    pub trials: usize,
    /// How many of them turned out invariant.
    pub invariant_found: usize,
}

/// Result of [`classify_invariant_planes`].
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    /// The class.
    pub kind: PlaneClass,
    /// Set when the isoclinic rotation is `±I`.
    pub degenerate: Option<Degenerate>,
    /// `Σₖ sₖ(bₖaₖᵀ − aₖbₖᵀ)` for [`PlaneClass::AllJPlanes`], where
    /// `sₖ = −1` for a plane whose angle is the negative of the first.
    pub j: Option<Matrix>,
    /// Planes checked against the rotation.
    pub witnesses: Vec<Witness>,
    /// Random probing, for the classes that claim no extra planes in
    /// general position.
    pub falsification: Option<Falsification>,
    /// Residual bound used for every check.
    pub tol: f64,
}

impl Classification {
    /// Every witness passed and no general-position plane was invariant.
    pub fn consistent(&self) -> bool {
        self.witnesses.iter().all(|w| w.residual < self.tol)
            && self.falsification.is_none_or(|f| f.invariant_found == 0)
    }
}

/// Knobs for [`classify_invariant_planes`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    /// Random `span{u, Ju}` witnesses to produce in the isoclinic case.
    pub witnesses: usize,
    /// General-position planes to probe in the non-isoclinic case.
    pub trials: usize,
    /// Invariance residual bound.
    pub tol: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            witnesses: 8,
            trials: 1000,
            tol: INVARIANCE_TOL,
        }
    }
}

/// Generalized `J = Σₖ sₖ(bₖaₖᵀ − aₖbₖᵀ)` with the given orientation signs.
fn oriented_j(spec: &RotationSpec, signs: &[f64]) -> Matrix {
    let n = spec.dim();
    let mut j = Matrix::zeros(n, n);
    for (plane, &s) in spec.planes().iter().zip(signs) {
        j.add_scaled(s, &plane.generator());
    }
    j
}

/// `J = Σₖ (bₖaₖᵀ − aₖbₖᵀ)` for a spec whose planes fill the space.
pub fn complex_structure(spec: &RotationSpec) -> Result<Matrix> {
    if spec.fixed_dim() != 0 {
        return Err(Error::Inapplicable {
            reason: "planes do not cover the space",
        });
    }
    Ok(oriented_j(spec, &alloc::vec![1.0; spec.planes().len()]))
}

/// Classifies the invariant planes of the rotation described by `spec`.
///
/// The planes must fill the space (no fixed directions). Equal angles, up
/// to the orientation of each plane (`(a, b, α)` and `(b, a, −α)` describe
/// the same turn), give [`PlaneClass::AllJPlanes`] in any even dimension.
/// Distinct angles are only classified in 4D.
pub fn classify_invariant_planes<R: Rng + ?Sized>(
    spec: &RotationSpec,
    opts: &ClassifyOptions,
    rng: &mut R,
) -> Result<Classification> {
    if spec.fixed_dim() != 0 {
        return Err(Error::Inapplicable {
            reason: "the rotation fixes some directions; planes must cover the whole space",
        });
    }
    let r = rotation_nd(spec);
    let planes = spec.planes();
    let first = planes[0].angle();
    let signs: Option<Vec<f64>> = planes
        .iter()
        .map(|p| {
            if angle_distance(p.angle(), first) <= ANGLE_TOL {
                Some(1.0)
            } else if angle_distance(p.angle(), -first) <= ANGLE_TOL {
                Some(-1.0)
            } else {
                None
            }
        })
        .collect();
    let witness = |plane: Plane| -> Result<Witness> {
        let residual = invariance_residual(&r, &plane)?;
        Ok(Witness { plane, residual })
    };

    if let Some(signs) = signs {
        let j = oriented_j(spec, &signs);
        let degenerate = if angle_distance(first, 0.0) <= ANGLE_TOL {
            Some(Degenerate::Identity)
        } else if angle_distance(first, PI) <= ANGLE_TOL {
            Some(Degenerate::NegativeIdentity)
        } else {
            None
        };
        let witnesses = (0..opts.witnesses)
            .map(|_| witness(invariant_plane(&random_unit(rng, spec.dim()), &j)?))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Classification {
            kind: PlaneClass::AllJPlanes,
            degenerate,
            j: Some(j),
            witnesses,
            falsification: None,
            tol: opts.tol,
        });
    }

    if planes.len() != 2 {
        return Err(Error::Inapplicable {
            reason: "unequal angles are only classified in four dimensions",
        });
    }
    let (pi, perp) = (&planes[0], &planes[1]);
    let half_turns = [pi, perp]
        .iter()
        .all(|p| libm::sin(p.angle()).abs() <= ANGLE_TOL);
    let mut found = alloc::vec![
        Plane::new(pi.a().clone(), pi.b().clone())?,
        Plane::new(perp.a().clone(), perp.b().clone())?,
    ];
    if half_turns {
        found.push(Plane::new(pi.a().clone(), perp.a().clone())?);
        found.push(Plane::new(pi.b().clone(), perp.b().clone())?);
    }
    let witnesses = found.into_iter().map(witness).collect::<Result<Vec<_>>>()?;
    let mut invariant_found = 0;
    for _ in 0..opts.trials {
        let probe = general_position_plane(rng, planes);
        if is_invariant_plane(&r, &probe, opts.tol)? {
            invariant_found += 1;
        }
    }
    Ok(Classification {
        kind: if half_turns {
            PlaneClass::SplitHalfTurn
        } else {
            PlaneClass::NoneExtra
        },
        degenerate: None,
        j: None,
        witnesses,
        falsification: Some(Falsification {
            trials: opts.trials,
            invariant_found,
        }),
        tol: opts.tol,
    })
}
