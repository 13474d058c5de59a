use thiserror::Error;

/// Errors produced by the classifier, the radial solvers and the verification
/// routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("phi argument {nu} lies outside [-1, 1]")]
    Domain { nu: f64 },

    #[error("degenerate coefficients: a = b = 0")]
    DegenerateParams,

    #[error("no radial solution: a^2 + b*phi(1) = {discriminant} < 0")]
    NoSolution { discriminant: f64 },

    #[error("equation is not elliptic at the axis: a^2 + b*phi(1) = {discriminant}")]
    NotElliptic { discriminant: f64 },

    #[error("negative radicand at r = {r}: ellipticity broke down along the iterate")]
    RadicandNegative { r: f64 },

    #[error("slope blowup at r = {r}: profile turns vertical inside the interval")]
    SlopeBlowup { r: f64 },

    #[error("Picard iteration did not converge after {iterations} iterations (last delta {delta:e})")]
    NonConvergence { iterations: usize, delta: f64 },

    #[error("equation degenerates to parabolic type at r = {r_star}")]
    DegenerateParabolic { r_star: f64 },

    #[error("profile turned vertical at r = {r} before reaching the target radius")]
    StoppedVertical { r: f64 },

    #[error("profile has too few nodes ({0})")]
    TooFewNodes(usize),

    #[error("relation is not parabolic: a0^2 + b0*c = {0}")]
    NotParabolic(f64),

    #[error("parabolic normalization requires b != 0")]
    ZeroB,

    #[error("empty r-domain: k = {k} >= 1")]
    EmptyDomain { k: f64 },

    #[error("profile is not a Dirichlet solution: boundary value {0} is nonzero")]
    NotDirichlet(f64),

    #[error("stencil spacing h = {h} too coarse for disk radius {radius}")]
    GridTooCoarse { h: f64, radius: f64 },

    #[error("profile has fewer than 2 nodes")]
    DegenerateProfile,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
