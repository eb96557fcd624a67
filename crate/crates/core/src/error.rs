//! Error type shared by all satrep-core modules.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while evaluating a scenario.
///
/// Numerical failures ([`Error::QuadratureNotConverged`]) are kept distinct
/// from modelling/parameter errors so that callers (notably the CLI) can map
/// them to different exit codes.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The Fraunhofer (far-field) diffraction model was asked to evaluate a
    /// geometry inside the transmitter's Fresnel distance `D²/λ`, where the
    /// far-field intensity pattern is not yet formed.
    #[error(
        "far-field model invalid: slant range {slant_m:.3e} m is shorter than the \
         transmit aperture's Fresnel distance {fresnel_distance_m:.3e} m"
    )]
    FarFieldViolation {
        /// Requested propagation distance, m.
        slant_m: f64,
        /// Fresnel distance `D²/λ` of the transmit aperture, m.
        fresnel_distance_m: f64,
    },

    /// An atmosphere table with no entries cannot be interpolated.
    #[error("atmosphere table has no entries")]
    EmptyAtmosphereTable,

    /// The Gauss–Legendre rule underlying the pointing-jitter convolution
    /// failed its self-check (Newton iteration residual or weight-sum
    /// defect above tolerance).
    #[error("quadrature self-check failed: residual {residual:.3e}")]
    QuadratureNotConverged {
        /// Magnitude of the failed self-check residual.
        residual: f64,
    },

    /// A scenario or model parameter is outside its physical domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Convenience constructor for [`Error::InvalidParameter`].
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
