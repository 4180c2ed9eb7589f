use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input for {0}")]
    NonFiniteInput(&'static str),

    #[error("side {side} must be positive, got {value}")]
    NonPositiveSide { side: char, value: f64 },

    #[error(
        "triangle inequality violated: {first} + {second} = {sum} is not greater than {opposite} = {opposite_value}"
    )]
    TriangleInequalityViolated {
        first: char,
        second: char,
        opposite: char,
        sum: f64,
        opposite_value: f64,
    },

    #[error("triangle is too close to degenerate: s - {side} = {gap:e} is below {guard:e} * s")]
    NearDegenerate { side: char, gap: f64, guard: f64 },

    #[error("invalid angles: {0}")]
    InvalidAngles(String),

    #[error("unknown variant `{0}`; expected an index 1..32 or a label i1..i8, a1..a8, b1..b8, c1..c8")]
    UnknownVariant(String),

    #[error("system parameters violate their constraint: {0}")]
    ConstraintViolated(String),

    #[error("expected 8 solutions to survive filtering, got {survivors}")]
    FilterCountMismatch { survivors: usize },

    #[error("no consistent placement for variant {variant}: best tangency residual {residual:e}")]
    NoConsistentPlacement { variant: String, residual: f64 },

    #[error("oracle found no tangent triple for region assignment {regions}")]
    OracleDivergence { regions: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
