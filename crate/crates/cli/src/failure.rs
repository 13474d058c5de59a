//! Error-to-exit-code mapping and the JSON error envelope.

use serde::Serialize;
use weingarten_core::Error;

/// Exit codes: 0 success, 2 no solution (hyperbolic obstruction),
/// 3 ellipticity breakdown, 4 non-convergence, 5 bad input.
pub const EXIT_NO_SOLUTION: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_NON_CONVERGENCE: i32 = 4;
pub const EXIT_BAD_INPUT: i32 = 5;

#[derive(Debug, Serialize)]
pub struct CliFailure {
    pub status: &'static str,
    pub error: String,
    pub message: String,
    #[serde(skip)]
    pub code: i32,
}

pub fn bad_input(message: String) -> CliFailure {
    CliFailure { status: "error", error: "BadInput".into(), message, code: EXIT_BAD_INPUT }
}

impl From<Error> for CliFailure {
    fn from(e: Error) -> Self {
        let (name, code) = match &e {
            Error::NoSolution { .. } => ("NoSolution", EXIT_NO_SOLUTION),
            Error::DegenerateParabolic { .. } => ("DegenerateParabolic", EXIT_DEGENERATE),
            Error::RadicandNegative { .. } => ("RadicandNegative", EXIT_DEGENERATE),
            Error::SlopeBlowup { .. } => ("SlopeBlowup", EXIT_DEGENERATE),
            Error::NotElliptic { .. } => ("NotElliptic", EXIT_DEGENERATE),
            Error::StoppedVertical { .. } => ("StoppedVertical", EXIT_DEGENERATE),
            Error::NonConvergence { .. } => ("NonConvergence", EXIT_NON_CONVERGENCE),
            Error::Domain { .. } => ("DomainError", EXIT_BAD_INPUT),
            Error::DegenerateParams => ("DegenerateParams", EXIT_BAD_INPUT),
            Error::TooFewNodes(_) => ("TooFewNodes", EXIT_BAD_INPUT),
            Error::NotParabolic(_) => ("NotParabolic", EXIT_BAD_INPUT),
            Error::ZeroB => ("ZeroB", EXIT_BAD_INPUT),
            Error::EmptyDomain { .. } => ("EmptyDomain", EXIT_BAD_INPUT),
            Error::NotDirichlet(_) => ("NotDirichlet", EXIT_BAD_INPUT),
            Error::GridTooCoarse { .. } => ("GridTooCoarse", EXIT_BAD_INPUT),
            Error::DegenerateProfile => ("DegenerateProfile", EXIT_BAD_INPUT),
            Error::InvalidInput(_) => ("BadInput", EXIT_BAD_INPUT),
        };
        CliFailure { status: "error", error: name.into(), message: e.to_string(), code }
    }
}
