use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Dimension or group mismatch between operands.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A matrix required to be Hermitian has too large a Hermitian residual.
    #[error("matrix is not Hermitian: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { residual: f64, tol: f64 },

    /// A matrix required to be positive semidefinite has a genuinely negative eigenvalue.
    #[error("matrix is not positive: min eigenvalue {min_eig:.6e}")]
    NotPositive { min_eig: f64 },

    /// A multiplication table failed a group axiom.
    #[error("invalid group table: {axiom} violated ({witness})")]
    GroupValidation {
        axiom: &'static str,
        witness: String,
    },

    /// A requested group exceeds the configured order cap.
    #[error("group order {order} exceeds maximum {max}")]
    SizeLimit { order: usize, max: usize },

    /// A constructor received parameters outside its documented range.
    #[error("invalid parameter: {0}")]
    Param(String),

    /// An operation restricted to scalar (k = 1) functions got k > 1, or similar.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Operation requires an Abelian group.
    #[error("group is not Abelian: {s} and {t} do not commute")]
    NotAbelian { s: String, t: String },

    /// A block operator does not lie in the matrix amplification of the group
    /// von Neumann algebra (it fails to commute with the right translations).
    #[error("operator is not in the group algebra: commutator violation {violation:.6e}")]
    NotInGroupAlgebra { violation: f64 },

    /// A positive-definiteness precondition failed.
    #[error("function is not positive definite: min eigenvalue {min_eig:.6e}")]
    NotPositiveDefinite { min_eig: f64 },

    /// Rank truncation produced a non-unitary induced representation.
    #[error(
        "dilation failed: induced operator has unitarity defect {defect:.3e}; \
         retry with a smaller rank tolerance"
    )]
    DilationFailure { defect: f64 },

    /// A function label in a serialized payload does not name a group element.
    #[error("unknown element label {label:?} in {context}")]
    UnknownLabel { label: String, context: String },
}

pub type Result<T> = std::result::Result<T, Error>;
