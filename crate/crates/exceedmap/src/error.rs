use thiserror::Error;

/// Crate-wide error type.
///
/// Variants are grouped by origin: geometry/input validation, dataset
/// construction, sampling, and I/O. The CLI maps these onto distinct
/// exit codes (input errors vs convergence refusal vs internal errors).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("empty feature collection: {0}")]
    EmptyFeatureCollection(&'static str),

    #[error("buffer radius must be positive, got {0}")]
    NonPositiveRadius(f64),

    #[error("non-finite value in {context}: {value}")]
    NonFinite { context: String, value: f64 },

    #[error("threshold must be positive, got {0}")]
    InvalidThreshold(f64),

    #[error("site {site_id}: no grid points within the polygon or its {radius} m dilation")]
    UncoveredSite { site_id: String, radius: f64 },

    #[error("site {site_id}: centroid lies outside every region")]
    UnassignedSite { site_id: String },

    #[error("duplicate region id {0}")]
    DuplicateRegion(String),

    #[error("unknown region id {0}")]
    UnknownRegion(String),

    #[error("duplicate grid point at ({x}, {y})")]
    DuplicateGridPoint { x: f64, y: f64 },

    #[error("malformed edge list: {0}")]
    MalformedEdgeList(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("precision must be positive: {name} = {value}")]
    NonPositivePrecision { name: &'static str, value: f64 },

    #[error("sum-to-zero constraint violated in component {component}: |mean| = {magnitude:e}")]
    ConstraintViolated { component: usize, magnitude: f64 },

    #[error("degenerate outcome vector: {0}")]
    DegenerateOutcome(String),

    #[error("non-finite log-posterior at {0}")]
    NonFinitePosterior(String),

    #[error("convergence check failed: max fixed-effect R-hat = {max_rhat:.4} (gate {gate}); rerun with --force to override")]
    ConvergenceRefused { max_rhat: f64, gate: f64 },

    #[error("intercept calibration failed after {0} bisection steps")]
    CalibrationFailed(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("missing input file {path}")]
    MissingInput { path: String },

    #[error("manifest mismatch: {0}")]
    ManifestMismatch(String),

    #[error("empty draw set for parameter {0}")]
    EmptyDraws(String),

    #[error("{path}: {source}")]
    FileIo {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Wrap an I/O error with the offending path for better CLI messages.
    pub fn file_io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::FileIo {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by bad inputs (files, config, data) rather
    /// than sampler state or bugs.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidGeometry(_)
                | Error::EmptyFeatureCollection(_)
                | Error::NonPositiveRadius(_)
                | Error::NonFinite { .. }
                | Error::InvalidThreshold(_)
                | Error::UncoveredSite { .. }
                | Error::UnassignedSite { .. }
                | Error::DuplicateRegion(_)
                | Error::UnknownRegion(_)
                | Error::DuplicateGridPoint { .. }
                | Error::MalformedEdgeList(_)
                | Error::DegenerateOutcome(_)
                | Error::InvalidConfig(_)
                | Error::MissingInput { .. }
                | Error::ManifestMismatch(_)
                | Error::FileIo { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
