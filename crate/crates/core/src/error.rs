use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong when building or checking matrices.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Operand shapes do not conform.
    #[error("dimension mismatch in {op}: {left} vs {right}")]
    DimensionMismatch {
        /// Operation that rejected its operands.
        op: &'static str,
        /// Dimension seen on the left operand.
        left: usize,
        /// Dimension seen on the right operand.
        right: usize,
    },
    /// Zero-length vectors and matrices with a zero dimension are rejected.
    #[error("empty vector or matrix")]
    Empty,
    /// A NaN or infinite entry was supplied.
    #[error("non-finite entry at index {index}")]
    NonFinite {
        /// Flat index of the offending entry.
        index: usize,
    },
    /// Matrix rows of unequal length.
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRows {
        /// Offending row.
        row: usize,
        /// Its length.
        len: usize,
        /// Length of the first row.
        expected: usize,
    },
    /// A square matrix was required.
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare {
        /// Row count.
        rows: usize,
        /// Column count.
        cols: usize,
    },
    /// Gram–Schmidt found a vector inside the span of its predecessors.
    #[error("vector {index} is linearly dependent on the preceding vectors")]
    LinearlyDependent {
        /// Index of the dependent input vector.
        index: usize,
    },
    /// The permutation expansion was asked for a matrix that is too large.
    #[error("permutation expansion limited to n <= {max}, got n = {n}; use det_lu instead")]
    PermutationTooLarge {
        /// Requested size.
        n: usize,
        /// Largest supported size.
        max: usize,
    },
    /// The sequence is not a permutation of `0..n`.
    #[error("not a permutation: {reason}")]
    InvalidPermutation {
        /// What is wrong with it.
        reason: &'static str,
    },
    /// A unit vector was required.
    #[error("expected a unit vector, norm is {norm}")]
    NotUnit {
        /// Norm of the supplied vector.
        norm: f64,
    },
    /// A set of vectors is not orthonormal. `i == j` flags a norm defect.
    #[error("frame is not orthonormal: worst pair ({i}, {j}) deviates by {deviation:e}")]
    NotOrthonormal {
        /// First index of the worst pair.
        i: usize,
        /// Second index of the worst pair.
        j: usize,
        /// |<v_i, v_j> - δ_ij|.
        deviation: f64,
    },
    /// Two vectors meant to span a plane are collinear.
    #[error("plane vectors are collinear")]
    Collinear,
    /// More planes than fit in the ambient dimension.
    #[error("{planes} planes do not fit in dimension {dim}")]
    TooManyPlanes {
        /// Ambient dimension.
        dim: usize,
        /// Number of planes supplied.
        planes: usize,
    },
    /// An explicit fixed axis only makes sense when `dim == 2p + 1`.
    #[error("fixed axis requires dim = 2p + 1, got dim = {dim} with {planes} planes")]
    AxisNotAllowed {
        /// Ambient dimension.
        dim: usize,
        /// Number of planes supplied.
        planes: usize,
    },
    /// Vector too short to normalize.
    #[error("vector norm {norm:e} is too small")]
    ZeroVector {
        /// Norm of the vector.
        norm: f64,
    },
    /// J was expected to square to -I.
    #[error("matrix does not satisfy J^2 = -I (residual {residual:e})")]
    NotComplexStructure {
        /// max |J² + I| entry.
        residual: f64,
    },
    /// The invariant-plane classification does not apply to this input.
    #[error("classification inapplicable: {reason}")]
    Inapplicable {
        /// Explanation.
        reason: &'static str,
    },
}
