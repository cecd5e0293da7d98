use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the pipeline can report. Fields hold zero-based positions;
/// messages print them one-based. [`Error::code`] gives the stable
/// machine-readable name used in JSON output.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("need 1 <= m < n, got n = {n}, m = {m}")]
    InvalidSize { n: usize, m: usize },
    #[error("{set} is not strictly increasing at position {}", index + 1)]
    NotSorted { set: &'static str, index: usize },
    #[error("y[{}] coincides with x[{}]", y_index + 1, x_index + 1)]
    SharedPoint { y_index: usize, x_index: usize },
    #[error("y[{}] lies outside the open hull of the larger zero set", y_index + 1)]
    OutOfRange { y_index: usize },
    #[error(
        "the gap between x[{gap}] and x[{}] holds both y[{}] and y[{}]",
        gap + 1,
        first + 1,
        second + 1
    )]
    GapOverfull {
        gap: usize,
        first: usize,
        second: usize,
    },
    #[error("band {} between consecutive points of the smaller set contains no node", band + 1)]
    EmptyBand { band: usize },
    #[error("{set}[{}] has modulus {modulus}, expected 1", index + 1)]
    NotUnitModulus {
        set: &'static str,
        index: usize,
        modulus: f64,
    },
    #[error("{set}[{}] and {set}[{}] are the same point", first + 1, second + 1)]
    DegenerateAngle {
        set: &'static str,
        first: usize,
        second: usize,
    },
    #[error("support {support:?} is invalid: {reason}")]
    InvalidSupport { support: Vec<usize>, reason: String },
    #[error("node {} is not covered by any positively weighted circuit", index + 1)]
    NotCovered { index: usize },
    #[error("coefficient s{param} is negative")]
    NegativeCoefficient { param: usize },
    #[error("coefficient s{param} does not exist; the admissible family has {family} members")]
    UnknownParameter { param: usize, family: u128 },
    #[error("weight {} is not strictly positive", index + 1)]
    NonPositiveWeight { index: usize },
    #[error("admissible family is too large ({reason})")]
    FamilyTooLarge { reason: String },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("norm of P_{k} vanished during the Stieltjes recursion")]
    ZeroNorm { k: usize },
    #[error("|alpha_{k}| = {modulus} is not inside the unit disk")]
    AlphaOutOfDisk { k: usize, modulus: f64 },
    #[error("Szego recursion hit a zero denominator at step {k}")]
    ZeroDenominator { k: usize },
    #[error("nullspace has dimension {found}, expected {expected}")]
    RankDeficient { expected: usize, found: usize },
    #[error("dimension {dim} exceeds the expansion limit {limit}")]
    DimensionTooLarge { dim: usize, limit: usize },
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("unsupported combination: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidSize { .. } => "INVALID_SIZE",
            Error::NotSorted { .. } => "NOT_SORTED",
            Error::SharedPoint { .. } => "SHARED_POINT",
            Error::OutOfRange { .. } => "OUT_OF_RANGE",
            Error::GapOverfull { .. } => "GAP_OVERFULL",
            Error::EmptyBand { .. } => "EMPTY_BAND",
            Error::NotUnitModulus { .. } => "NOT_UNIT_MODULUS",
            Error::DegenerateAngle { .. } => "DEGENERATE_ANGLE",
            Error::InvalidSupport { .. } => "INVALID_SUPPORT",
            Error::NotCovered { .. } => "NOT_COVERED",
            Error::NegativeCoefficient { .. } => "NEGATIVE_COEFFICIENT",
            Error::UnknownParameter { .. } => "UNKNOWN_PARAMETER",
            Error::NonPositiveWeight { .. } => "NON_POSITIVE_WEIGHT",
            Error::FamilyTooLarge { .. } => "FAMILY_TOO_LARGE",
            Error::LengthMismatch { .. } => "LENGTH_MISMATCH",
            Error::ZeroNorm { .. } => "ZERO_NORM",
            Error::AlphaOutOfDisk { .. } => "ALPHA_OUT_OF_DISK",
            Error::ZeroDenominator { .. } => "ZERO_DENOMINATOR",
            Error::RankDeficient { .. } => "RANK_DEFICIENT",
            Error::DimensionTooLarge { .. } => "DIMENSION_TOO_LARGE",
            Error::Parse { .. } => "PARSE_ERROR",
            Error::Unsupported(_) => "UNSUPPORTED",
        }
    }

    /// True for the violations that mean "the two sets do not strictly interlace".
    pub fn is_interlacing_violation(&self) -> bool {
        matches!(
            self,
            Error::NotSorted { .. }
                | Error::SharedPoint { .. }
                | Error::OutOfRange { .. }
                | Error::GapOverfull { .. }
                | Error::EmptyBand { .. }
                | Error::DegenerateAngle { .. }
        )
    }
}
