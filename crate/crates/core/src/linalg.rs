//! Dense vectors and matrices.
//!
//! Matrices are stored column-major so that [`Matrix::column`] and the
//! column-oriented products are plain slice walks. Three products are
//! provided and are expected to agree to rounding:
//!
//! * [`matmul_cayley`]: `AB = [A b₁, …, A bₖ]`, each column of `B` pushed
//!   through [`matvec`];
//! * [`matmul_colrow`]: `AB = Σⱼ aⱼ (row j of B)`, a sum of outer products;
//! * [`matmul_rowcol`]: the entrywise rule `cᵢⱼ = Σₖ aᵢₖ bₖⱼ`.
//!
//! [`matvec`] itself forms `x₁a₁ + … + xₙaₙ`, a linear combination of the
//! columns of `A`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;

use crate::tol::ORTHO_TOL;
use crate::{Error, Result};

fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

/// A dense real vector with at least one entry, all finite.
#[derive(Clone, PartialEq)]
pub struct Vector {
    data: Vec<f64>,
}

impl Vector {
    /// Wraps `data`, rejecting empty input and NaN/Inf entries.
    pub fn new(data: Vec<f64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::Empty);
        }
        check_finite(&data)?;
        Ok(Self { data })
    }

    /// Copies `data` into a new vector. Same checks as [`Vector::new`].
    pub fn from_slice(data: &[f64]) -> Result<Self> {
        Self::new(data.to_vec())
    }

    pub(crate) fn from_raw(data: Vec<f64>) -> Self {
        debug_assert!(!data.is_empty());
        Self { data }
    }

    /// The zero vector of dimension `n`.
    ///
    /// # Panics
    /// If `n == 0`.
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "vector dimension must be positive");
        Self::from_raw(vec![0.0; n])
    }

    /// Standard basis vector `e_j` of ℝⁿ (zero-based `j`).
    ///
    /// # Panics
    /// If `j >= n`.
    pub fn basis(n: usize, j: usize) -> Self {
        assert!(j < n, "basis index {j} out of range for dimension {n}");
        let mut v = Self::zeros(n);
        v.data[j] = 1.0;
        v
    }

    /// Number of entries.
    #[inline]
    pub fn dim(&self) -> usize {
        self.data.len()
    }

    /// Entries as a slice.
    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Consumes the vector, returning its entries.
    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    /// Iterates over the entries.
    pub fn iter(&self) -> core::slice::Iter<'_, f64> {
        self.data.iter()
    }

    /// Euclidean inner product.
    pub fn dot(&self, other: &Vector) -> Result<f64> {
        same_dim("dot", self, other)?;
        Ok(self.dot_unchecked(other))
    }

    pub(crate) fn dot_unchecked(&self, other: &Vector) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    /// Euclidean 2-norm.
    pub fn norm(&self) -> f64 {
        libm::sqrt(self.dot_unchecked(self))
    }

    /// `self / ‖self‖`; fails when the norm is below `1e-12`.
    pub fn normalized(&self) -> Result<Vector> {
        let norm = self.norm();
        if norm < 1e-12 {
            return Err(Error::ZeroVector { norm });
        }
        Ok(self.scaled(1.0 / norm))
    }

    /// `s · self`.
    pub fn scaled(&self, s: f64) -> Vector {
        Self::from_raw(self.data.iter().map(|v| v * s).collect())
    }

    /// `self + other`.
    pub fn add(&self, other: &Vector) -> Result<Vector> {
        same_dim("add", self, other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    /// `self - other`.
    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        same_dim("sub", self, other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    /// In place `self += s · other`. Dimensions must already match.
    pub(crate) fn axpy(&mut self, s: f64, other: &Vector) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &Vector) -> Result<f64> {
        same_dim("max_abs_diff", self, other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    fn zip_with(&self, other: &Vector, f: impl Fn(f64, f64) -> f64) -> Vector {
        Self::from_raw(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        )
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.data[i]
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.data).finish()
    }
}

fn same_dim(op: &'static str, a: &Vector, b: &Vector) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            op,
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}

/// Euclidean inner product of `u` and `v`.
pub fn dot(u: &Vector, v: &Vector) -> Result<f64> {
    u.dot(v)
}

/// Euclidean norm of `u`.
pub fn norm(u: &Vector) -> f64 {
    u.norm()
}

/// Cross product in ℝ³.
pub fn cross(u: &Vector, v: &Vector) -> Result<Vector> {
    for w in [u, v] {
        if w.dim() != 3 {
            return Err(Error::DimensionMismatch {
                op: "cross",
                left: w.dim(),
                right: 3,
            });
        }
    }
    let (u, v) = (u.as_slice(), v.as_slice());
    Ok(Vector::from_raw(vec![
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]))
}

/// A dense real matrix with finite entries and positive dimensions.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    // column-major
    data: Vec<f64>,
}

impl Matrix {
    /// Builds a matrix from a list of rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.as_ref().len());
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::Empty);
        }
        for (row, r) in rows.iter().enumerate() {
            let len = r.as_ref().len();
            if len != n_cols {
                return Err(Error::RaggedRows {
                    row,
                    len,
                    expected: n_cols,
                });
            }
        }
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for j in 0..n_cols {
            data.extend(rows.iter().map(|r| r.as_ref()[j]));
        }
        check_finite(&data)?;
        Ok(Self {
            rows: n_rows,
            cols: n_cols,
            data,
        })
    }

    /// Builds a matrix whose columns are `columns`.
    pub fn from_columns(columns: &[Vector]) -> Result<Self> {
        let first = columns.first().ok_or(Error::Empty)?;
        let rows = first.dim();
        let mut data = Vec::with_capacity(rows * columns.len());
        for c in columns {
            if c.dim() != rows {
                return Err(Error::DimensionMismatch {
                    op: "from_columns",
                    left: rows,
                    right: c.dim(),
                });
            }
            data.extend_from_slice(c.as_slice());
        }
        Ok(Self {
            rows,
            cols: columns.len(),
            data,
        })
    }

    /// Entry `(i, j)` is `f(i, j)`.
    ///
    /// # Panics
    /// If either dimension is zero or `f` yields a non-finite value.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                let v = f(i, j);
                assert!(v.is_finite(), "non-finite entry at ({i}, {j})");
                data.push(v);
            }
        }
        Self { rows, cols, data }
    }

    /// All-zero `rows × cols` matrix.
    ///
    /// # Panics
    /// If either dimension is zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// The `n × n` identity.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Diagonal matrix with the given diagonal.
    pub fn diag(values: &[f64]) -> Result<Self> {
        check_finite(values)?;
        if values.is_empty() {
            return Err(Error::Empty);
        }
        let n = values.len();
        Ok(Self::from_fn(
            n,
            n,
            |i, j| if i == j { values[i] } else { 0.0 },
        ))
    }

    /// Number of rows.
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// `rows == cols`.
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Fails with [`Error::NotSquare`] unless the matrix is square; returns `n`.
    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Entry at row `i`, column `j`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        self.data[j * self.rows + i]
    }

    #[inline]
    fn get_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.data[j * self.rows + i]
    }

    /// Column `j` as a slice.
    pub fn column_slice(&self, j: usize) -> &[f64] {
        assert!(j < self.cols, "column {j} out of range");
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Column `j` as a [`Vector`] of dimension `rows`.
    pub fn column(&self, j: usize) -> Vector {
        Vector::from_raw(self.column_slice(j).to_vec())
    }

    /// Row `i` as a [`Vector`] of dimension `cols`.
    pub fn row(&self, i: usize) -> Vector {
        Vector::from_raw((0..self.cols).map(|j| self.get(i, j)).collect())
    }

    /// Rows as nested vectors.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).into_vec()).collect()
    }

    /// Transpose.
    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Sum of the diagonal.
    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// `self + other`.
    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape("add", other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    /// `self - other`.
    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape("sub", other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    /// `s · self`.
    pub fn scaled(&self, s: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    /// In place `self += s · other`. Shapes must already match.
    pub(crate) fn add_scaled(&mut self, s: f64, other: &Matrix) {
        debug_assert!(self.rows == other.rows && self.cols == other.cols);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &Matrix) -> Result<f64> {
        self.same_shape("max_abs_diff", other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// Largest `|a - b| / max(1, |a|, |b|)` over all entries.
    pub fn max_rel_diff(&self, other: &Matrix) -> Result<f64> {
        self.same_shape("max_rel_diff", other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| crate::tol::rel_err(a, b))
            .fold(0.0, f64::max))
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Copy with columns `i` and `j` exchanged.
    pub fn with_columns_swapped(&self, i: usize, j: usize) -> Matrix {
        let mut m = self.clone();
        for r in 0..self.rows {
            m.data.swap(i * self.rows + r, j * self.rows + r);
        }
        m
    }

    /// Copy with column `j` replaced by `v`.
    pub fn with_column(&self, j: usize, v: &Vector) -> Result<Matrix> {
        if v.dim() != self.rows {
            return Err(Error::DimensionMismatch {
                op: "with_column",
                left: self.rows,
                right: v.dim(),
            });
        }
        let mut m = self.clone();
        m.data[j * self.rows..(j + 1) * self.rows].copy_from_slice(v.as_slice());
        Ok(m)
    }

    fn same_shape(&self, op: &'static str, other: &Matrix) -> Result<()> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                op,
                left: self.rows,
                right: other.rows,
            });
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op,
                left: self.cols,
                right: other.cols,
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(f64, f64) -> f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        &self.data[j * self.rows + i]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries(self.to_rows()).finish()
    }
}

fn conformable(op: &'static str, a: &Matrix, b: &Matrix) -> Result<()> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            op,
            left: a.cols,
            right: b.rows,
        });
    }
    Ok(())
}

/// `A x = x₁a₁ + … + xₙaₙ`.
pub fn matvec(a: &Matrix, x: &Vector) -> Result<Vector> {
    if a.cols != x.dim() {
        return Err(Error::DimensionMismatch {
            op: "matvec",
            left: a.cols,
            right: x.dim(),
        });
    }
    Ok(Vector::from_raw(combine_columns(a, x.as_slice())))
}

fn combine_columns(a: &Matrix, coeffs: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.rows];
    for (j, &xj) in coeffs.iter().enumerate() {
        for (o, &aij) in out.iter_mut().zip(a.column_slice(j)) {
            *o += xj * aij;
        }
    }
    out
}

/// `AB = [A b₁, A b₂, …, A bₖ]`.
pub fn matmul_cayley(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    conformable("matmul_cayley", a, b)?;
    let mut data = Vec::with_capacity(a.rows * b.cols);
    for j in 0..b.cols {
        data.extend(combine_columns(a, b.column_slice(j)));
    }
    Ok(Matrix {
        rows: a.rows,
        cols: b.cols,
        data,
    })
}

/// `AB = a₁b₁ᵀ + … + aₙbₙᵀ` where `bⱼᵀ` is row `j` of `B`.
pub fn matmul_colrow(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    conformable("matmul_colrow", a, b)?;
    let mut c = Matrix::zeros(a.rows, b.cols);
    for k in 0..a.cols {
        c.add_scaled(1.0, &outer(&a.column(k), &b.row(k)));
    }
    Ok(c)
}

/// Entrywise `cᵢⱼ = Σₖ aᵢₖ bₖⱼ`.
pub fn matmul_rowcol(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    conformable("matmul_rowcol", a, b)?;
    Ok(Matrix::from_fn(a.rows, b.cols, |i, j| {
        (0..a.cols).map(|k| a.get(i, k) * b.get(k, j)).sum()
    }))
}

/// Outer product `u vᵀ`.
pub fn outer(u: &Vector, v: &Vector) -> Matrix {
    let mut m = Matrix::zeros(u.dim(), v.dim());
    for (j, &vj) in v.iter().enumerate() {
        for (i, &ui) in u.iter().enumerate() {
            *m.get_mut(i, j) = ui * vj;
        }
    }
    m
}

/// Orthonormalizes `vs` with modified Gram–Schmidt.
///
/// The first output is parallel to `vs[0]` and the outputs span the same
/// subspace as the inputs. A vector whose projection coefficients onto the
/// accepted basis exceed 0.5 (after scaling to unit length) gets a second
/// orthogonalization pass. A vector whose residual falls below
/// [`ORTHO_TOL`] times its original norm is reported as dependent.
pub fn gram_schmidt(vs: &[Vector]) -> Result<Vec<Vector>> {
    let first = vs.first().ok_or(Error::Empty)?;
    let mut basis: Vec<Vector> = Vec::with_capacity(vs.len());
    for (index, v) in vs.iter().enumerate() {
        same_dim("gram_schmidt", first, v)?;
        let original = v.norm();
        if original == 0.0 {
            return Err(Error::LinearlyDependent { index });
        }
        let mut w = v.scaled(1.0 / original);
        let mut largest = 0.0f64;
        for q in &basis {
            let c = q.dot_unchecked(&w);
            largest = largest.max(c.abs());
            w.axpy(-c, q);
        }
        if largest > 0.5 {
            for q in &basis {
                let c = q.dot_unchecked(&w);
                w.axpy(-c, q);
            }
        }
        let residual = w.norm();
        if residual < ORTHO_TOL {
            return Err(Error::LinearlyDependent { index });
        }
        basis.push(w.scaled(1.0 / residual));
    }
    Ok(basis)
}

/// Largest deviation of the Gram matrix of `vs` from the identity, with
/// the pair `(i, j)` where it occurs.
pub fn orthonormality_defect(vs: &[&Vector]) -> (usize, usize, f64) {
    let mut worst = (0, 0, 0.0);
    for i in 0..vs.len() {
        for j in i..vs.len() {
            let target = if i == j { 1.0 } else { 0.0 };
            let dev = (vs[i].dot_unchecked(vs[j]) - target).abs();
            if dev > worst.2 {
                worst = (i, j, dev);
            }
        }
    }
    worst
}

/// Fails with [`Error::NotOrthonormal`] naming the worst pair if any
/// inner product deviates from `δᵢⱼ` by more than `tol`.
pub fn check_orthonormal(vs: &[&Vector], tol: f64) -> Result<()> {
    if let Some(first) = vs.first() {
        for v in vs {
            same_dim("check_orthonormal", first, v)?;
        }
    }
    let (i, j, deviation) = orthonormality_defect(vs);
    if deviation > tol {
        return Err(Error::NotOrthonormal { i, j, deviation });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol::EQ_TOL;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_slice(xs).unwrap()
    }

    fn m(rows: &[&[f64]]) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    fn random_matrix(rng: &mut impl Rng, r: usize, c: usize) -> Matrix {
        Matrix::from_fn(r, c, |_, _| rng.gen_range(-1.0..=1.0))
    }

    // Independent oracle: row-dot-product evaluation straight from the rows.
    fn oracle_matmul(a: &Matrix, b: &Matrix) -> Vec<Vec<f64>> {
        let ar = a.to_rows();
        let bt = b.transpose().to_rows();
        ar.iter()
            .map(|row| {
                bt.iter()
                    .map(|col| row.iter().zip(col).map(|(x, y)| x * y).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn constructors_reject_non_finite_and_empty() {
        assert_eq!(
            Vector::new(vec![1.0, f64::NAN]),
            Err(Error::NonFinite { index: 1 })
        );
        assert_eq!(Vector::new(vec![]), Err(Error::Empty));
        assert!(matches!(
            Matrix::from_rows(&[[1.0, f64::INFINITY]]),
            Err(Error::NonFinite { .. })
        ));
        assert_eq!(
            Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0]]),
            Err(Error::RaggedRows {
                row: 1,
                len: 1,
                expected: 2
            })
        );
        assert_eq!(Matrix::from_rows::<[f64; 0]>(&[]), Err(Error::Empty));
    }

    #[test]
    fn matvec_examples() {
        let x = v(&[2.0, 3.0, 5.0]);
        assert_eq!(matvec(&Matrix::identity(3), &x).unwrap(), x);
        let a = m(&[&[1.0, 0.0], &[0.0, 1.0], &[0.0, 0.0]]);
        assert_eq!(matvec(&a, &v(&[2.0, 3.0])).unwrap(), v(&[2.0, 3.0, 0.0]));
    }

    #[test]
    fn matvec_dimension_error_names_both() {
        let err = matvec(&Matrix::identity(3), &v(&[1.0, 2.0])).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                op: "matvec",
                left: 3,
                right: 2
            }
        );
        let msg = alloc::format!("{err}");
        assert!(msg.contains('3') && msg.contains('2'));
    }

    #[test]
    fn matvec_matches_row_dot_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a = random_matrix(&mut rng, 4, 4);
            let x = Vector::new((0..4).map(|_| rng.gen_range(-1.0..=1.0)).collect()).unwrap();
            let got = matvec(&a, &x).unwrap();
            for i in 0..4 {
                let want: f64 = (0..4).map(|k| a.get(i, k) * x[k]).sum();
                assert!(crate::tol::close(got[i], want, 1e-13));
            }
        }
    }

    #[test]
    fn matvec_of_basis_is_column_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_matrix(&mut rng, 5, 3);
        for j in 0..3 {
            assert_eq!(matvec(&a, &Vector::basis(3, j)).unwrap(), a.column(j));
        }
    }

    #[test]
    fn product_examples() {
        let a = m(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let b = m(&[&[5.0, 6.0], &[7.0, 8.0]]);
        let want = m(&[&[19.0, 22.0], &[43.0, 50.0]]);
        assert_eq!(matmul_rowcol(&a, &b).unwrap(), want);
        assert_eq!(matmul_cayley(&a, &b).unwrap(), want);
        assert_eq!(matmul_colrow(&a, &b).unwrap(), want);

        let j = m(&[&[0.0, -1.0], &[1.0, 0.0]]);
        assert_eq!(
            matmul_cayley(&j, &j).unwrap(),
            Matrix::identity(2).scaled(-1.0)
        );
        assert_eq!(matmul_cayley(&a, &Matrix::identity(2)).unwrap(), a);
        assert_eq!(matmul_colrow(&Matrix::identity(2), &b).unwrap(), b);
        let i3 = Matrix::identity(3);
        assert_eq!(matmul_rowcol(&i3, &i3).unwrap(), i3);
    }

    #[test]
    fn colrow_single_column_is_rank_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = random_matrix(&mut rng, 3, 4);
        let col = v(&[0.5, -1.0, 2.0]);
        let a = Matrix::zeros(3, 3).with_column(1, &col).unwrap();
        assert_eq!(matmul_colrow(&a, &b).unwrap(), outer(&col, &b.row(1)));
    }

    #[test]
    fn products_match_row_column_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..30 {
            let a = random_matrix(&mut rng, 3, 4);
            let b = random_matrix(&mut rng, 4, 2);
            let want = Matrix::from_rows(&oracle_matmul(&a, &b)).unwrap();
            assert!(matmul_cayley(&a, &b).unwrap().max_rel_diff(&want).unwrap() <= 1e-13);
            assert!(matmul_colrow(&a, &b).unwrap().max_rel_diff(&want).unwrap() <= EQ_TOL);
            assert!(matmul_rowcol(&a, &b).unwrap().max_rel_diff(&want).unwrap() <= EQ_TOL);
        }
    }

    #[test]
    fn products_reject_nonconformable() {
        let a = Matrix::zeros(2, 3);
        type Product = fn(&Matrix, &Matrix) -> Result<Matrix>;
        let products: [Product; 3] = [matmul_cayley, matmul_colrow, matmul_rowcol];
        for f in products {
            assert!(matches!(
                f(&a, &a),
                Err(Error::DimensionMismatch {
                    left: 3,
                    right: 2,
                    ..
                })
            ));
        }
    }

    #[test]
    fn outer_examples() {
        let e1 = Vector::basis(2, 0);
        let e2 = Vector::basis(2, 1);
        assert_eq!(outer(&e1, &e2), m(&[&[0.0, 1.0], &[0.0, 0.0]]));
        let u = v(&[0.3, -0.7, 1.1]);
        let uu = outer(&u, &u);
        assert_eq!(uu, uu.transpose());
        let w = v(&[2.0, 0.5, -1.0]);
        assert!((outer(&u, &w).trace() - u.dot(&w).unwrap()).abs() < 1e-13);
    }

    #[test]
    fn plumbing_examples() {
        assert_eq!(
            dot(&Vector::basis(3, 0), &Vector::basis(3, 1)).unwrap(),
            0.0
        );
        assert_eq!(norm(&v(&[3.0, 4.0])), 5.0);
        let a = m(&[&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]]);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().rows(), 3);
        assert!(dot(&Vector::basis(3, 0), &Vector::basis(2, 0)).is_err());
    }

    #[test]
    fn cross_right_handed() {
        let c = cross(&Vector::basis(3, 0), &Vector::basis(3, 1)).unwrap();
        assert_eq!(c, Vector::basis(3, 2));
        assert!(cross(&Vector::basis(2, 0), &Vector::basis(2, 1)).is_err());
    }

    #[test]
    fn gram_schmidt_examples() {
        let out = gram_schmidt(&[v(&[1.0, 1.0]), v(&[1.0, 0.0])]).unwrap();
        let h = core::f64::consts::FRAC_1_SQRT_2;
        assert!(out[0].max_abs_diff(&v(&[h, h])).unwrap() < 1e-15);
        assert!(out[1].max_abs_diff(&v(&[h, -h])).unwrap() < 1e-15);

        let basis = [Vector::basis(3, 2), Vector::basis(3, 0)];
        let out = gram_schmidt(&basis).unwrap();
        for (a, b) in out.iter().zip(&basis) {
            assert!(a.max_abs_diff(b).unwrap() < 1e-12);
        }
    }

    #[test]
    fn gram_schmidt_reports_dependent_index() {
        let err = gram_schmidt(&[
            v(&[1.0, 0.0, 0.0]),
            v(&[0.0, 1.0, 0.0]),
            v(&[2.0, -3.0, 0.0]),
        ]);
        assert_eq!(err, Err(Error::LinearlyDependent { index: 2 }));
        assert_eq!(
            gram_schmidt(&[v(&[0.0, 0.0])]),
            Err(Error::LinearlyDependent { index: 0 })
        );
        assert_eq!(gram_schmidt(&[]), Err(Error::Empty));
    }

    #[test]
    fn gram_schmidt_random_triples_in_r5() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let input: Vec<Vector> = (0..3)
                .map(|_| Vector::new((0..5).map(|_| rng.gen_range(-1.0..=1.0)).collect()).unwrap())
                .collect();
            let q = gram_schmidt(&input).unwrap();
            let refs: Vec<&Vector> = q.iter().collect();
            assert!(orthonormality_defect(&refs).2 < 1e-12);
            // Span check: least-squares residual of each input against Q.
            for x in &input {
                let mut r = x.clone();
                for qi in &q {
                    r.axpy(-qi.dot(x).unwrap(), qi);
                }
                assert!(r.norm() < 1e-10);
            }
            // First output parallel to the first input.
            let cos = q[0].dot(&input[0]).unwrap() / input[0].norm();
            assert!((cos - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn gram_schmidt_survives_nearly_parallel_inputs() {
        let a = v(&[1.0, 1e-7, 0.0, 0.0]);
        let b = v(&[1.0, 0.0, 1e-7, 0.0]);
        let c = v(&[1.0, 0.0, 0.0, 1e-7]);
        let q = gram_schmidt(&[a, b, c]).unwrap();
        let refs: Vec<&Vector> = q.iter().collect();
        assert!(orthonormality_defect(&refs).2 < 1e-10);
    }

    #[test]
    fn check_orthonormal_names_worst_pair() {
        let a = Vector::basis(3, 0);
        let b = v(&[0.1, 1.0, 0.0]).normalized().unwrap();
        let c = Vector::basis(3, 2);
        match check_orthonormal(&[&a, &b, &c], 1e-10) {
            Err(Error::NotOrthonormal {
                i: 0,
                j: 1,
                deviation,
            }) => assert!(deviation > 0.09),
            other => panic!("unexpected {other:?}"),
        }
        assert!(check_orthonormal(&[&a, &c], 1e-10).is_ok());
    }

    fn matrix_strategy(max: usize) -> impl Strategy<Value = (Matrix, Matrix)> {
        (1..=max, 1..=max, 1..=max).prop_flat_map(|(r, k, c)| {
            (
                proptest::collection::vec(-1.0f64..=1.0, r * k),
                proptest::collection::vec(-1.0f64..=1.0, k * c),
            )
                .prop_map(move |(a, b)| {
                    (
                        Matrix::from_fn(r, k, |i, j| a[i * k + j]),
                        Matrix::from_fn(k, c, |i, j| b[i * c + j]),
                    )
                })
        })
    }

    proptest! {
        #[test]
        fn three_products_agree((a, b) in matrix_strategy(10)) {
            let c1 = matmul_cayley(&a, &b).unwrap();
            let c2 = matmul_colrow(&a, &b).unwrap();
            let c3 = matmul_rowcol(&a, &b).unwrap();
            prop_assert!(c1.max_rel_diff(&c3).unwrap() <= EQ_TOL);
            prop_assert!(c2.max_rel_diff(&c3).unwrap() <= EQ_TOL);
        }

        #[test]
        fn matvec_is_linear(
            (r, c, a, u, w) in (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| (
                Just(r),
                Just(c),
                proptest::collection::vec(-1.0f64..=1.0, r * c),
                proptest::collection::vec(-1.0f64..=1.0, c),
                proptest::collection::vec(-1.0f64..=1.0, c),
            )),
            alpha in -2.0f64..2.0,
            beta in -2.0f64..2.0,
        ) {
            let a = Matrix::from_fn(r, c, |i, j| a[i * c + j]);
            let (u, w) = (Vector::new(u).unwrap(), Vector::new(w).unwrap());
            let lhs = matvec(&a, &u.scaled(alpha).add(&w.scaled(beta)).unwrap()).unwrap();
            let rhs = matvec(&a, &u).unwrap().scaled(alpha).add(&matvec(&a, &w).unwrap().scaled(beta)).unwrap();
            for i in 0..r {
                prop_assert!(crate::tol::close(lhs[i], rhs[i], EQ_TOL));
            }
        }

        #[test]
        fn gram_schmidt_gives_orthonormal_columns(
            (n, k, entries) in (2usize..8).prop_flat_map(|n| (Just(n), 1..=n))
                .prop_flat_map(|(n, k)| (Just(n), Just(k), proptest::collection::vec(-1.0f64..=1.0, n * k)))
        ) {
            let vs: Vec<Vector> = entries.chunks(n).map(|c| Vector::from_slice(c).unwrap()).collect();
            if let Ok(q) = gram_schmidt(&vs) {
                let qm = Matrix::from_columns(&q).unwrap();
                let gram = matmul_cayley(&qm.transpose(), &qm).unwrap();
                prop_assert!(gram.max_abs_diff(&Matrix::identity(k)).unwrap() <= ORTHO_TOL);
            }
        }
    }
}
