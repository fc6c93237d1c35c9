use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Mesh or problem parameters outside their admissible range.
    InvalidParams(&'static str),
    /// A generating function was evaluated outside its domain.
    Domain { t: f64, lo: f64, hi: f64 },
    /// The transition point exceeds 1/2, i.e. the layer regime assumption
    /// `eps <= beta / (2 sigma ln(alpha N))` fails.
    AssumptionViolated {
        lambda: f64,
        epsilon: f64,
        epsilon_max: f64,
    },
    UnsupportedQuadrature(usize),
    InvalidDegree(usize),
    EmptyMesh,
    SingularMatrix { row: usize, pivot: f64 },
    DimensionMismatch { expected: usize, found: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            Error::Domain { t, lo, hi } => {
                write!(f, "argument t = {t} outside the domain [{lo}, {hi}]")
            }
            Error::AssumptionViolated {
                lambda,
                epsilon,
                epsilon_max,
            } => write!(
                f,
                "transition point lambda = {lambda} > 1/2: layer regime requires \
                 eps <= beta/(2 sigma ln(alpha N)) = {epsilon_max}, got eps = {epsilon}"
            ),
            Error::UnsupportedQuadrature(n) => {
                write!(f, "unsupported Gauss rule size {n} (supported: 1..=20)")
            }
            Error::InvalidDegree(p) => write!(f, "unsupported polynomial degree {p}"),
            Error::EmptyMesh => write!(f, "mesh has no cells"),
            Error::SingularMatrix { row, pivot } => {
                write!(f, "singular matrix: pivot {pivot:e} in row {row}")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
        }
    }
}

impl core::error::Error for Error {}
