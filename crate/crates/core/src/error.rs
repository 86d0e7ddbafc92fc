use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Domain errors (bad physics: an unstable parameter set, no critical
/// occupation in range) and configuration errors are kept apart so the CLI
/// can map them onto distinct exit codes, see [`Error::is_config`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite input for `{name}`")]
    NonFiniteInput { name: &'static str },

    #[error("non-positive frequency: {name} = {value}")]
    NonPositiveFrequency { name: &'static str, value: f64 },

    #[error("negative coupling: {name} = {value}")]
    NegativeCoupling { name: &'static str, value: f64 },

    #[error("negative thermal occupation: {name} = {value}")]
    NegativeOccupation { name: &'static str, value: f64 },

    #[error("negative temperature: {0}")]
    NegativeTemperature(f64),

    #[error("UnstableRegime: {quantity} = {value:e} (omega1={omega1}, omega2={omega2}, g1={g1}, g2={g2})")]
    UnstableRegime {
        quantity: &'static str,
        value: f64,
        omega1: f64,
        omega2: f64,
        g1: f64,
        g2: f64,
    },

    #[error("DegenerateModes: Delta^2 = {delta_sq:e} (omega1={omega1}, omega2={omega2}, g1={g1}, g2={g2})")]
    DegenerateModes {
        delta_sq: f64,
        omega1: f64,
        omega2: f64,
        g1: f64,
        g2: f64,
    },

    #[error("non-finite time: {0}")]
    NonFiniteTime(f64),

    #[error(
        "inverse variance matrix is singular or not positive definite (condition {condition:e})"
    )]
    SingularInverseVariance { condition: f64 },

    #[error("transformation is not symplectic (residual {residual:e})")]
    NonSymplecticInput { residual: f64 },

    #[error("negative discriminant B^2 - det V = {value:e}: covariance is not physical")]
    NegativeDiscriminant { value: f64 },

    #[error("matrix norm {norm} exceeds the exponential's range")]
    NormOverflow { norm: f64 },

    #[error("eigenvalue iteration did not converge")]
    NonConvergence,

    #[error("matrix is numerically defective (eigenvector condition {condition:e})")]
    NearDefective { condition: f64 },

    #[error("bracket [{lo}, {hi}] does not change sign (f = {f_lo:e}, {f_hi:e})")]
    InvalidBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("need at least 3 samples, got {0}")]
    TooFewSamples(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("at t = {t}: {source}")]
    AtTime { t: f64, source: Box<Error> },

    #[error("NoSignChange: {0}")]
    NoSignChange(String),

    #[error("EmptyFeasibleSet: every grid point of the coupling box is unstable or degenerate")]
    EmptyFeasibleSet,

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error at `{path}`: {message}")]
    Validation { path: String, message: String },

    #[error("conflict at `{path}`: both an occupation and a temperature were given")]
    Conflict { path: String },

    #[error("missing column `{0}`")]
    MissingColumn(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn at_time(self, t: f64) -> Error {
        match self {
            e @ Error::AtTime { .. } => e,
            e => Error::AtTime {
                t,
                source: Box::new(e),
            },
        }
    }

    /// The innermost error, stripping time tags.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtTime { source, .. } => source.root(),
            e => e,
        }
    }

    /// True for errors caused by the input document or command line rather
    /// than by the physics of a valid request.
    pub fn is_config(&self) -> bool {
        matches!(
            self.root(),
            Error::Parse(_)
                | Error::Validation { .. }
                | Error::Conflict { .. }
                | Error::InvalidSweep(_)
                | Error::MissingColumn(_)
        )
    }

    /// Short stable name, used as the error tag in sweep output.
    pub fn kind(&self) -> &'static str {
        match self.root() {
            Error::NonFiniteInput { .. } => "NonFiniteInput",
            Error::NonPositiveFrequency { .. } => "NonPositiveFrequency",
            Error::NegativeCoupling { .. } => "NegativeCoupling",
            Error::NegativeOccupation { .. } => "NegativeOccupation",
            Error::NegativeTemperature(_) => "NegativeTemperature",
            Error::UnstableRegime { .. } => "UnstableRegime",
            Error::DegenerateModes { .. } => "DegenerateModes",
            Error::NonFiniteTime(_) => "NonFiniteTime",
            Error::SingularInverseVariance { .. } => "SingularInverseVariance",
            Error::NonSymplecticInput { .. } => "NonSymplecticInput",
            Error::NegativeDiscriminant { .. } => "NegativeDiscriminant",
            Error::NormOverflow { .. } => "NormOverflow",
            Error::NonConvergence => "NonConvergence",
            Error::NearDefective { .. } => "NearDefective",
            Error::InvalidBracket { .. } => "InvalidBracket",
            Error::TooFewSamples(_) => "TooFewSamples",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::AtTime { .. } => unreachable!(),
            Error::NoSignChange(_) => "NoSignChange",
            Error::EmptyFeasibleSet => "EmptyFeasibleSet",
            Error::InvalidSweep(_) => "InvalidSweep",
            Error::Parse(_) => "ParseError",
            Error::Validation { .. } => "ValidationError",
            Error::Conflict { .. } => "ConflictError",
            Error::MissingColumn(_) => "MissingColumn",
            Error::Io(_) => "Io",
        }
    }
}
