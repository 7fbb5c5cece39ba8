use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("sequence order p must be at least 1")]
    ZeroOrder,
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("tolerance {0} is below the f64 resolution on [1, 2]")]
    ToleranceBelowResolution(f64),
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("unsupported bit depth {0}")]
    UnsupportedDepth(u32),
    #[error("value {value} outside 0..={max}")]
    ValueOutOfRange { value: u64, max: u64 },
    #[error("plane {plane} outside 0..{planes}")]
    PlaneOutOfRange { plane: usize, planes: usize },
    #[error("unknown number system {0:?} (expected `binary` or `fib<p>`)")]
    UnknownSystem(String),
    #[error("message is empty")]
    EmptyMessage,
    #[error("capacity exceeded: {requested} bits requested, {available} available")]
    CapacityExceeded { requested: usize, available: usize },
    #[error("image dimensions or depth differ")]
    DimensionMismatch,
    #[error("image depth {image} does not match number system depth {system}")]
    DepthMismatch { image: u32, system: u32 },
    #[error("invalid image: {0}")]
    InvalidImage(String),
    #[error("malformed PGM header: {0}")]
    MalformedHeader(String),
    #[error("PGM raster truncated")]
    TruncatedData,
    #[error("unsupported PGM maxval {0}")]
    UnsupportedMaxval(u32),
    #[error("PGM sample {sample} exceeds maxval {maxval}")]
    SampleOutOfRange { sample: u32, maxval: u32 },
}

impl Error {
    /// Stable snake_case identifier, used for machine-readable error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroOrder => "zero_order",
            Error::InvalidTolerance(_) => "invalid_tolerance",
            Error::ToleranceBelowResolution(_) => "tolerance_below_resolution",
            Error::InvalidRange(_) => "invalid_range",
            Error::UnsupportedDepth(_) => "unsupported_depth",
            Error::ValueOutOfRange { .. } => "value_out_of_range",
            Error::PlaneOutOfRange { .. } => "plane_out_of_range",
            Error::UnknownSystem(_) => "unknown_system",
            Error::EmptyMessage => "empty_message",
            Error::CapacityExceeded { .. } => "capacity_exceeded",
            Error::DimensionMismatch => "dimension_mismatch",
            Error::DepthMismatch { .. } => "depth_mismatch",
            Error::InvalidImage(_) => "invalid_image",
            Error::MalformedHeader(_) => "malformed_header",
            Error::TruncatedData => "truncated_data",
            Error::UnsupportedMaxval(_) => "unsupported_maxval",
            Error::SampleOutOfRange { .. } => "sample_out_of_range",
        }
    }
}
