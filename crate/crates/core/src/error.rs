use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a prime")]
    CompositeCharacteristic(u64),
    #[error("operands live over different fields (characteristic {left} vs {right})")]
    FieldMismatch { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable x{index} at byte {position}: only x0..x{} are available", .nvars.saturating_sub(1))]
    UnknownVariable {
        index: usize,
        nvars: usize,
        position: usize,
    },
    #[error("arity mismatch: expected {expected} variables, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("ideal generator #{0} is not homogeneous")]
    InhomogeneousGenerator(usize),
    #[error("polynomial is not a linear form")]
    NotLinear,
    #[error("linear change of coordinates is not invertible")]
    NotInvertible,
    #[error("the zero linear form does not define a hyperplane")]
    ZeroHyperplane,
    #[error("criterion needs n >= 3 and d >= 3, got n = {n}, d = {d}")]
    DimensionTooSmall { n: usize, d: u32 },
    #[error("hypersurface is singular")]
    SingularInput,
    #[error("degree {0} is too small (need d >= 3)")]
    DegreeTooSmall(u32),
    #[error("operation requires characteristic 0, got {0}")]
    BadCharacteristic(u64),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

impl Error {
    /// Stable machine-readable code, used in JSON error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::CompositeCharacteristic(_) => "composite_characteristic",
            Error::FieldMismatch { .. } => "field_mismatch",
            Error::DivisionByZero => "division_by_zero",
            Error::Syntax { .. } => "syntax_error",
            Error::UnknownVariable { .. } => "unknown_variable",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::NotHomogeneous => "not_homogeneous",
            Error::InhomogeneousGenerator(_) => "inhomogeneous_generator",
            Error::NotLinear => "not_linear",
            Error::NotInvertible => "not_invertible",
            Error::ZeroHyperplane => "zero_hyperplane",
            Error::DimensionTooSmall { .. } => "dimension_too_small",
            Error::SingularInput => "singular_input",
            Error::DegreeTooSmall(_) => "degree_too_small",
            Error::BadCharacteristic(_) => "bad_characteristic",
            Error::Overflow(_) => "overflow",
        }
    }

    /// Byte offset into the parsed text, for parser errors.
    pub fn position(&self) -> Option<usize> {
        match self {
            Error::Syntax { position, .. } | Error::UnknownVariable { position, .. } => {
                Some(*position)
            }
            _ => None,
        }
    }
}
