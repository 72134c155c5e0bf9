//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two scalars from different basis contexts were combined.
    #[error("scalars belong to different basis contexts")]
    ContextMismatch,

    /// A symbolic sign query could not be separated from zero at the
    /// precision cap. The declared enclosures are too coarse; nothing is
    /// guessed.
    #[error("sign undecided after refining enclosures to {cap_bits} bits")]
    AmbiguousSign { cap_bits: u32 },

    /// The value is not a rational combination of the basis entries.
    #[error("value is not in the span of the basis")]
    NotInSpan,

    /// `context_adjoin` was asked to adjoin a value that is already
    /// expressible; use `context_express` instead.
    #[error("value is already in the span of the basis")]
    AlreadyInSpan,

    #[error("basis completion requires a nonzero vector")]
    ZeroVector,

    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,

    #[error("interval lengths must be positive")]
    NonPositiveLength,

    #[error("not a valid permutation")]
    InvalidPermutation,

    #[error("point lies outside the domain interval")]
    OutOfDomain,

    /// Composition or comparison of IETs defined on different domains.
    #[error("IETs are defined on different domain intervals")]
    DomainMismatch,

    /// Interval data does not align with a grid of `q` equal cells.
    #[error("data does not align with {q} equal cells")]
    NotCellAligned { q: usize },

    /// The requested bivector does not lie in K(|X|) = {|X| ∧ v}.
    #[error("bivector is not of the form |X| ∧ v")]
    NotInKX,

    #[error("IET is not a member of G1")]
    NotInG1,

    #[error("iteration cap of {cap} exceeded")]
    CapExceeded { cap: usize },

    #[error("scalar must be nonzero")]
    ZeroScalar,

    /// An affine scale factor (or product) leaves the span of the basis.
    #[error("product is not representable in this basis context")]
    NotRepresentable,

    /// `d` in a quadratic value must be squarefree and at least 2 after
    /// normalization.
    #[error("invalid radicand {d}: must normalize to a squarefree integer >= 2")]
    InvalidRadicand { d: u64 },

    /// Malformed context declaration (entry 0 not the constant 1, bad
    /// decimal string, too few significant digits, duplicate names).
    #[error("invalid basis context: {reason}")]
    InvalidContext { reason: &'static str },

    #[error("matrix dimensions are inconsistent")]
    DimensionMismatch,

    #[error("coordinate vector length does not match context size")]
    CoordLength,

    /// An internal consistency check failed; indicates corrupted input data
    /// or a bug, never a property of valid IETs.
    #[error("internal consistency check failed: {reason}")]
    Inconsistent { reason: &'static str },
}
