use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("loop is not closed: first and last vertices differ")]
    OpenPath,
    #[error("path touches or grazes the puncture")]
    PunctureOnPath,
    #[error("path must have at least two vertices")]
    TooFewVertices,
    #[error("paths cannot be concatenated: endpoint mismatch")]
    EndpointMismatch,
    #[error("group element outside the representation's domain")]
    ElementOutOfDomain,
    #[error("permutation images are not a bijection")]
    NotABijection,
    #[error("time parameter must be positive")]
    NonpositiveTime,
    #[error("quadrature grid too coarse for requested tolerance")]
    GridTooCoarse,
    #[error("class sum did not converge within the truncation cap")]
    TruncationInsufficient,
    #[error("endpoints lie on circles of different radii")]
    RadiusMismatch,
    #[error("invalid spin label (j, m, k)")]
    InvalidSpinLabel,
    #[error("half-integer j is not an SO(3) label")]
    HalfIntegerOnSO3,
    #[error("quaternion has zero norm")]
    ZeroQuaternion,
    #[error("particle configurations differ in count or dimension")]
    SizeMismatch,
    #[error("particle count exceeds the factorial-enumeration cap")]
    TooManyParticles,
    #[error("anyon statistics need two particles in two dimensions on a common relative ring")]
    AnyonUnsupportedConfig,
    #[error("one-dimensional identical-particle configuration space is not connected")]
    DisconnectedConfigSpace,
    #[error("coincident particle positions")]
    CoincidentPositions,
    #[error("nonzero flux where a zero-flux setup is required")]
    NonzeroFlux,
    #[error("invalid physical constants (hbar, mass, inertia must be positive)")]
    InvalidConstants,
}

pub type Result<T> = std::result::Result<T, Error>;
