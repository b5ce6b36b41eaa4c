use std::ops::Range;

use crate::surface::SurfaceFiber;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("genus {0} fiber has no Humphreys curve system (need genus >= 1)")]
    GenusTooSmall(usize),

    #[error("homology is only modelled for fibers with at most one boundary component, got {0}")]
    TooManyBoundaryComponents(usize),

    #[error("operation needs a fiber with exactly one boundary component, got {0}")]
    NeedsOneBoundary(usize),

    #[error("operation needs a closed fiber, got {0} boundary component(s)")]
    NeedsClosedFiber(usize),

    #[error("operation needs a bounded fiber")]
    NeedsBoundary,

    #[error("classes live on different fibers ({0} vs {1})")]
    FiberMismatch(SurfaceFiber, SurfaceFiber),

    #[error("vector has length {got}, fiber expects {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("curve {curve} does not exist on a genus {genus} fiber")]
    InvalidCurve { curve: String, genus: usize },

    #[error("{message} at {}..{}", span.start, span.end)]
    Parse { message: String, span: Range<usize> },

    #[error("duplicate letter index {0} in subset")]
    DuplicateIndex(usize),

    #[error("letter index {index} out of range for {len} letters")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("{letters} letters exceed the brute-force bound of {bound}")]
    BruteForceBound { letters: usize, bound: usize },

    #[error("no clean word of length <= {0} found")]
    SearchBound(usize),

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// True for the bug traps that the CLI maps to exit code 2.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Inconsistency(_))
    }
}
