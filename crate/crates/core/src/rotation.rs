//! Rotation matrices assembled from planes of rotation.
//!
//! Every construction here is a sum of plane terms
//!
//! ```text
//! cos α (a aᵀ + b bᵀ) + sin α (b aᵀ − a bᵀ)
//! ```
//!
//! where `a aᵀ + b bᵀ` projects onto the plane spanned by the orthonormal
//! pair `(a, b)` and `b aᵀ − a bᵀ` turns that plane by a quarter turn
//! (it squares to minus the projector). Directions orthogonal to every
//! plane are left fixed. A positive angle turns `a` toward `b`.
//!
//! No eigenvectors or change of basis are involved: the matrix comes out
//! directly in standard coordinates.

use alloc::vec::Vec;

use crate::determinant::det_lu;
use crate::linalg::{check_orthonormal, cross, gram_schmidt, matmul_cayley, outer, Matrix, Vector};
use crate::tol::ORTHO_TOL;
use crate::{Error, Result};

/// `verify_rotation` bound on `max |RᵀR − I|`.
pub const ROTATION_ORTHO_TOL: f64 = 1e-9;
/// `verify_rotation` bound on `|det R − 1|`.
pub const ROTATION_DET_TOL: f64 = 1e-8;

/// What to do with plane vectors that are independent but not orthonormal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Repair {
    /// Run Gram–Schmidt within each plane, keeping the direction of `a`.
    #[default]
    Orthonormalize,
    /// Reject anything that is not orthonormal within [`ORTHO_TOL`].
    Strict,
}

/// Projector onto span{a, b}: `a aᵀ + b bᵀ`.
pub fn plane_projector(a: &Vector, b: &Vector) -> Result<Matrix> {
    outer(a, a).add(&outer(b, b))
}

/// Quarter-turn generator of the oriented plane (a, b): `b aᵀ − a bᵀ`.
pub fn plane_generator(a: &Vector, b: &Vector) -> Result<Matrix> {
    outer(b, a).sub(&outer(a, b))
}

/// One plane of rotation with its angle in radians.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneSpec {
    a: Vector,
    b: Vector,
    angle: f64,
}

impl PlaneSpec {
    /// Validates (or repairs, see [`Repair`]) the spanning pair.
    pub fn new(a: Vector, b: Vector, angle: f64, repair: Repair) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                op: "PlaneSpec",
                left: a.dim(),
                right: b.dim(),
            });
        }
        if !angle.is_finite() {
            return Err(Error::NonFinite { index: 0 });
        }
        match repair {
            Repair::Strict => {
                check_orthonormal(&[&a, &b], ORTHO_TOL)?;
                Ok(Self { a, b, angle })
            }
            Repair::Orthonormalize => {
                let mut q = gram_schmidt(&[a, b]).map_err(|_| Error::Collinear)?;
                let b = q.pop().expect("two vectors");
                let a = q.pop().expect("two vectors");
                Ok(Self { a, b, angle })
            }
        }
    }

    /// First spanning vector; a positive angle turns it toward [`PlaneSpec::b`].
    pub fn a(&self) -> &Vector {
        &self.a
    }

    /// Second spanning vector.
    pub fn b(&self) -> &Vector {
        &self.b
    }

    /// Angle in radians.
    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// Same plane, different angle.
    pub fn with_angle(&self, angle: f64) -> Self {
        Self {
            angle,
            ..self.clone()
        }
    }

    /// `a aᵀ + b bᵀ`.
    pub fn projector(&self) -> Matrix {
        plane_projector(&self.a, &self.b).expect("dimensions checked on construction")
    }

    /// `b aᵀ − a bᵀ`.
    pub fn generator(&self) -> Matrix {
        plane_generator(&self.a, &self.b).expect("dimensions checked on construction")
    }
}

/// A rotation of ℝⁿ given as mutually orthogonal planes with angles and,
/// in odd dimension `2p + 1`, the fixed axis.
///
/// When `dim = 2p + 1` and no axis is supplied one is computed: the unit
/// vector orthogonal to every plane, signed so that
/// `(a₁, b₁, …, aₚ, bₚ, c)` is positively oriented (for `n = 3` this is
/// `c = a × b`). When fewer planes are given, the leftover orthogonal
/// complement is held fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationSpec {
    dim: usize,
    planes: Vec<PlaneSpec>,
    axis: Option<Vector>,
    axis_supplied: bool,
}

impl RotationSpec {
    /// Validates the planes against each other and the ambient dimension.
    pub fn new(
        dim: usize,
        planes: Vec<PlaneSpec>,
        axis: Option<Vector>,
        repair: Repair,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Empty);
        }
        for p in &planes {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    op: "RotationSpec",
                    left: dim,
                    right: p.dim(),
                });
            }
        }
        if 2 * planes.len() > dim {
            return Err(Error::TooManyPlanes {
                dim,
                planes: planes.len(),
            });
        }
        let odd_fit = dim == 2 * planes.len() + 1;
        let axis_supplied = axis.is_some();
        let axis = match axis {
            Some(c) => {
                if !odd_fit {
                    return Err(Error::AxisNotAllowed {
                        dim,
                        planes: planes.len(),
                    });
                }
                if c.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        op: "RotationSpec axis",
                        left: dim,
                        right: c.dim(),
                    });
                }
                Some(match repair {
                    Repair::Orthonormalize => c.normalized()?,
                    Repair::Strict => {
                        let norm = c.norm();
                        if (norm - 1.0).abs() > ORTHO_TOL {
                            return Err(Error::NotUnit { norm });
                        }
                        c
                    }
                })
            }
            None => None,
        };

        let mut frame: Vec<&Vector> = planes.iter().flat_map(|p| [&p.a, &p.b]).collect();
        if let Some(c) = &axis {
            frame.push(c);
        }
        check_orthonormal(&frame, ORTHO_TOL)?;

        let axis = match axis {
            None if odd_fit => Some(complete_axis(dim, &planes)),
            other => other,
        };
        Ok(Self {
            dim,
            planes,
            axis,
            axis_supplied,
        })
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The planes of rotation.
    pub fn planes(&self) -> &[PlaneSpec] {
        &self.planes
    }

    /// Fixed axis, supplied or completed. `None` unless `dim = 2p + 1`.
    pub fn axis(&self) -> Option<&Vector> {
        self.axis.as_ref()
    }

    /// Whether the axis came from the caller.
    pub fn axis_supplied(&self) -> bool {
        self.axis_supplied
    }

    /// The plane angles in order.
    pub fn angles(&self) -> Vec<f64> {
        self.planes.iter().map(PlaneSpec::angle).collect()
    }

    /// Dimension of the fixed subspace, `n − 2p`.
    pub fn fixed_dim(&self) -> usize {
        self.dim - 2 * self.planes.len()
    }

    /// Same planes and axis with new angles.
    pub fn with_angles(&self, angles: &[f64]) -> Result<Self> {
        if angles.len() != self.planes.len() {
            return Err(Error::DimensionMismatch {
                op: "with_angles",
                left: self.planes.len(),
                right: angles.len(),
            });
        }
        if let Some(index) = angles.iter().position(|a| !a.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let planes = self
            .planes
            .iter()
            .zip(angles)
            .map(|(p, &t)| p.with_angle(t))
            .collect();
        Ok(Self {
            planes,
            ..self.clone()
        })
    }

    // Directions fixed beyond the axis, if any.
    fn has_free_complement(&self) -> bool {
        self.fixed_dim() > usize::from(self.axis.is_some())
    }
}

fn complete_axis(dim: usize, planes: &[PlaneSpec]) -> Vector {
    let spanning: Vec<&Vector> = planes.iter().flat_map(|p| [&p.a, &p.b]).collect();
    let residual = |e: Vector| {
        let mut w = e;
        // two passes keep the residual orthogonal to working precision
        for _ in 0..2 {
            for q in &spanning {
                let c = q.dot_unchecked(&w);
                w.axpy(-c, q);
            }
        }
        w
    };
    let best = (0..dim)
        .map(|j| residual(Vector::basis(dim, j)))
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .expect("dim > 0");
    let c = best
        .normalized()
        .expect("complement of 2p < n planes is nonzero");
    let mut columns: Vec<Vector> = spanning.into_iter().cloned().collect();
    columns.push(c.clone());
    let orientation = Matrix::from_columns(&columns)
        .and_then(|m| det_lu(&m))
        .unwrap_or(1.0);
    if orientation < 0.0 {
        c.scaled(-1.0)
    } else {
        c
    }
}

/// `cos α I + sin α J` with `J = [[0, −1], [1, 0]]`.
pub fn rotation_2d(angle: f64) -> Matrix {
    let (s, c) = (libm::sin(angle), libm::cos(angle));
    Matrix::from_rows(&[[c, -s], [s, c]]).expect("finite angle")
}

/// Rotation of ℝ³ by `angle` in the plane of `a` and `b`:
/// `cos α (aaᵀ + bbᵀ) + sin α (baᵀ − abᵀ) + ccᵀ` with `c = a × b`.
///
/// `a` and `b` only need to be independent; they are orthonormalized
/// keeping the direction of `a`.
pub fn rotation_3d(a: &Vector, b: &Vector, angle: f64) -> Result<Matrix> {
    for v in [a, b] {
        if v.dim() != 3 {
            return Err(Error::DimensionMismatch {
                op: "rotation_3d",
                left: v.dim(),
                right: 3,
            });
        }
    }
    let plane = PlaneSpec::new(a.clone(), b.clone(), angle, Repair::Orthonormalize)?;
    let c = cross(plane.a(), plane.b())?;
    let mut r = plane_term(&plane);
    r.add_scaled(1.0, &outer(&c, &c));
    Ok(r)
}

fn plane_term(plane: &PlaneSpec) -> Matrix {
    let mut m = plane.projector().scaled(libm::cos(plane.angle));
    m.add_scaled(libm::sin(plane.angle), &plane.generator());
    m
}

/// Rodrigues' formula: `cos α x + (1 − cos α) c (cᵀx) + sin α (c × x)`.
pub fn rodrigues_apply(c: &Vector, angle: f64, x: &Vector) -> Result<Vector> {
    for v in [c, x] {
        if v.dim() != 3 {
            return Err(Error::DimensionMismatch {
                op: "rodrigues_apply",
                left: v.dim(),
                right: 3,
            });
        }
    }
    let norm = c.norm();
    if (norm - 1.0).abs() > ORTHO_TOL {
        return Err(Error::NotUnit { norm });
    }
    let (s, co) = (libm::sin(angle), libm::cos(angle));
    let mut out = x.scaled(co);
    out.axpy((1.0 - co) * c.dot_unchecked(x), c);
    out.axpy(s, &cross(c, x)?);
    Ok(out)
}

/// `baᵀ − abᵀ` for orthonormal `a, b ∈ ℝ³`; as a matrix it acts as
/// `x ↦ (a × b) × x`.
pub fn cross_matrix(a: &Vector, b: &Vector) -> Result<Matrix> {
    for v in [a, b] {
        if v.dim() != 3 {
            return Err(Error::DimensionMismatch {
                op: "cross_matrix",
                left: v.dim(),
                right: 3,
            });
        }
    }
    plane_generator(a, b)
}

/// An orthonormal frame `(a, b, c, d)` of ℝ⁴: Π = span{a, b} and
/// Π⊥ = span{c, d}.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame4 {
    vectors: [Vector; 4],
}

impl Frame4 {
    /// Fails with [`Error::NotOrthonormal`] naming the worst pair.
    pub fn new(a: Vector, b: Vector, c: Vector, d: Vector) -> Result<Self> {
        for v in [&a, &b, &c, &d] {
            if v.dim() != 4 {
                return Err(Error::DimensionMismatch {
                    op: "Frame4",
                    left: v.dim(),
                    right: 4,
                });
            }
        }
        check_orthonormal(&[&a, &b, &c, &d], ORTHO_TOL)?;
        Ok(Self {
            vectors: [a, b, c, d],
        })
    }

    /// The standard basis `(e₁, e₂, e₃, e₄)`.
    pub fn standard() -> Self {
        Self {
            vectors: core::array::from_fn(|j| Vector::basis(4, j)),
        }
    }

    /// `a`.
    pub fn a(&self) -> &Vector {
        &self.vectors[0]
    }
    /// `b`.
    pub fn b(&self) -> &Vector {
        &self.vectors[1]
    }
    /// `c`.
    pub fn c(&self) -> &Vector {
        &self.vectors[2]
    }
    /// `d`.
    pub fn d(&self) -> &Vector {
        &self.vectors[3]
    }

    /// Two-plane rotation spec turning Π by `alpha` and Π⊥ by `beta`.
    pub fn spec(&self, alpha: f64, beta: f64) -> Result<RotationSpec> {
        let [a, b, c, d] = self.vectors.clone();
        RotationSpec::new(
            4,
            alloc::vec![
                PlaneSpec::new(a, b, alpha, Repair::Strict)?,
                PlaneSpec::new(c, d, beta, Repair::Strict)?,
            ],
            None,
            Repair::Strict,
        )
    }
}

/// Double rotation of ℝ⁴:
/// `cos α (aaᵀ + bbᵀ) + sin α (baᵀ − abᵀ) + cos β (ccᵀ + ddᵀ) + sin β (dcᵀ − cdᵀ)`.
///
/// `beta = 0` gives a simple rotation fixing Π⊥ pointwise.
pub fn rotation_4d(frame: &Frame4, alpha: f64, beta: f64) -> Matrix {
    let term = |u: &Vector, v: &Vector, t: f64| {
        let mut m = plane_projector(u, v)
            .expect("frame vectors share a dimension")
            .scaled(libm::cos(t));
        m.add_scaled(
            libm::sin(t),
            &plane_generator(u, v).expect("frame vectors share a dimension"),
        );
        m
    };
    let mut r = term(frame.a(), frame.b(), alpha);
    r.add_scaled(1.0, &term(frame.c(), frame.d(), beta));
    r
}

/// `Σₖ cos αₖ (aₖaₖᵀ + bₖbₖᵀ) + sin αₖ (bₖaₖᵀ − aₖbₖᵀ)`, plus `ccᵀ` for the
/// axis and the projector onto any remaining fixed directions.
pub fn rotation_nd(spec: &RotationSpec) -> Matrix {
    let n = spec.dim();
    let mut r = Matrix::zeros(n, n);
    for plane in spec.planes() {
        r.add_scaled(1.0, &plane_term(plane));
    }
    if let Some(c) = spec.axis() {
        r.add_scaled(1.0, &outer(c, c));
    }
    if spec.has_free_complement() {
        r.add_scaled(1.0, &fixed_projector(spec));
    }
    r
}

// I − Σ Pₖ − ccᵀ
fn fixed_projector(spec: &RotationSpec) -> Matrix {
    let mut m = Matrix::identity(spec.dim());
    for plane in spec.planes() {
        m.add_scaled(-1.0, &plane.projector());
    }
    if let Some(c) = spec.axis() {
        m.add_scaled(-1.0, &outer(c, c));
    }
    m
}

/// `Rx = Σₖ cos αₖ yₖ + sin αₖ zₖ [+ (cᵀx) c]` where `yₖ` projects `x`
/// onto plane k and `zₖ` is `yₖ` turned a quarter turn within the plane.
/// Components of `x` orthogonal to every plane and the axis pass through.
pub fn apply_vector_form(spec: &RotationSpec, x: &Vector) -> Result<Vector> {
    if x.dim() != spec.dim() {
        return Err(Error::DimensionMismatch {
            op: "apply_vector_form",
            left: spec.dim(),
            right: x.dim(),
        });
    }
    let mut out = Vector::zeros(x.dim());
    let mut remainder = x.clone();
    for plane in spec.planes() {
        let (xa, xb) = (plane.a().dot_unchecked(x), plane.b().dot_unchecked(x));
        let (s, c) = (libm::sin(plane.angle()), libm::cos(plane.angle()));
        // y = xa a + xb b,  z = xa b − xb a
        out.axpy(c * xa - s * xb, plane.a());
        out.axpy(c * xb + s * xa, plane.b());
        remainder.axpy(-xa, plane.a());
        remainder.axpy(-xb, plane.b());
    }
    if let Some(c) = spec.axis() {
        let xc = c.dot_unchecked(x);
        out.axpy(xc, c);
        remainder.axpy(-xc, c);
    }
    if spec.has_free_complement() {
        out.axpy(1.0, &remainder);
    }
    Ok(out)
}

/// Outcome of [`verify_rotation`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationReport {
    /// `max |RᵀR − I|` over all entries.
    pub ortho_residual: f64,
    /// `det R` by LU.
    pub det_value: f64,
    /// `ortho_residual < 1e-9 && |det_value − 1| < 1e-8`.
    pub is_rotation: bool,
}

/// Checks that `r` is orthogonal with unit determinant.
pub fn verify_rotation(r: &Matrix) -> Result<RotationReport> {
    let n = r.require_square()?;
    let gram = matmul_cayley(&r.transpose(), r)?;
    let ortho_residual = gram.max_abs_diff(&Matrix::identity(n))?;
    let det_value = det_lu(r)?;
    let is_rotation =
        ortho_residual < ROTATION_ORTHO_TOL && (det_value - 1.0).abs() < ROTATION_DET_TOL;
    Ok(RotationReport {
        ortho_residual,
        det_value,
        is_rotation,
    })
}
