use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("lattice is not even: diagonal entry {index} is odd")]
    NotEven { index: usize },
    #[error("form [{a} {b} {c}] is not positive definite")]
    NotPositiveDefinite { a: i64, b: i64, c: i64 },
    #[error("vector is zero")]
    ZeroVector,
    #[error("vector is not primitive (content {0})")]
    NotPrimitive(String),
    #[error("discriminant group of order {order} exceeds the search cap {cap}")]
    GroupTooLarge { order: String, cap: u64 },
    #[error("expected a lattice of rank {expected}, got rank {found}")]
    WrongRank { expected: usize, found: usize },
    #[error("expected a lattice of negative determinant, got {0}")]
    WrongDeterminantSign(String),
    #[error("no even positive-definite binary form matches the discriminant form (inconsistent Néron–Severi input)")]
    NoCandidates,
    #[error("value does not fit the target integer type: {0}")]
    Overflow(String),
    #[error("invalid fibration: {0}")]
    InvalidFibration(String),
    #[error("Shioda–Tate rank {0} exceeds 20")]
    PicardTooLarge(usize),
    #[error("rank-0 discriminant formula requires Mordell–Weil rank 0, got {0}")]
    PositiveMordellWeilRank(u32),
    #[error("no torsion section named {0:?}")]
    NoTorsion(String),
    #[error("discriminant vanishes identically: model is not elliptic")]
    NotElliptic,
    #[error("coefficient a{index} has degree {degree} > {bound}; the chart at infinity is not defined")]
    DegreeBound { index: u8, degree: usize, bound: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("valuations v(c4)={c4}, v(c6)={c6}, v(disc)={disc} match no Kodaira type")]
    UnclassifiedFiber { c4: String, c6: String, disc: u32 },
    #[error("place is not uniform: its roots carry different fiber types")]
    NonUniformPlace,
    #[error("invalid tau equation: {0}")]
    InvalidTau(String),
    #[error("algebraic vector has non-negative square {0}")]
    NonNegativeAlgebraicClass(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable snake_case name of the variant, for machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotSquare { .. } => "not_square",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::Singular => "singular",
            Error::NotSymmetric => "not_symmetric",
            Error::NotEven { .. } => "not_even",
            Error::NotPositiveDefinite { .. } => "not_positive_definite",
            Error::ZeroVector => "zero_vector",
            Error::NotPrimitive(_) => "not_primitive",
            Error::GroupTooLarge { .. } => "group_too_large",
            Error::WrongRank { .. } => "wrong_rank",
            Error::WrongDeterminantSign(_) => "wrong_determinant_sign",
            Error::NoCandidates => "no_candidates",
            Error::Overflow(_) => "overflow",
            Error::InvalidFibration(_) => "invalid_fibration",
            Error::PicardTooLarge(_) => "picard_too_large",
            Error::PositiveMordellWeilRank(_) => "positive_mordell_weil_rank",
            Error::NoTorsion(_) => "no_torsion",
            Error::NotElliptic => "not_elliptic",
            Error::DegreeBound { .. } => "degree_bound",
            Error::DivisionByZero => "division_by_zero",
            Error::UnclassifiedFiber { .. } => "unclassified_fiber",
            Error::NonUniformPlace => "non_uniform_place",
            Error::InvalidTau(_) => "invalid_tau",
            Error::NonNegativeAlgebraicClass(_) => "non_negative_algebraic_class",
            Error::Parse(_) => "parse",
        }
    }
}
