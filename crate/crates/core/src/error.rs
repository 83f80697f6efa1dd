use thiserror::Error;

use crate::signature::Action;
use crate::term::ProcessTerm;

/// Position of a token in the input text, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl std::fmt::Display for Pos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Errors raised while reading signature files, terms or formulae from text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{pos}: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("{pos}: duplicate action `{name}`")]
    DuplicateAction { pos: Pos, name: String },
    #[error("{pos}: invalid action name `{name}` (allowed: [a-zA-Z0-9_]+, not a reserved word)")]
    InvalidAction { pos: Pos, name: String },
    #[error("{pos}: unknown action `{name}`")]
    UnknownAction { pos: Pos, name: String },
    #[error("{pos}: modality mismatch: {msg}")]
    ModalityMismatch { pos: Pos, msg: String },
}

impl ParseError {
    pub(crate) fn syntax(pos: Pos, msg: impl Into<String>) -> Self {
        ParseError::Syntax {
            pos,
            msg: msg.into(),
        }
    }
}

/// Errors raised by the semantic operations of the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A term or formula mentions an action outside the ambient signature,
    /// or two compared systems carry different signatures.
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    /// A diamond over a purely contravariant action, or a box over a purely
    /// covariant one.
    #[error("modality mismatch: {0}")]
    ModalityMismatch(String),
    /// The term-level bivariant encoding is undefined on embedded omega.
    #[error("omega is not supported by the term-level bivariant encoding")]
    OmegaInBivariantTerm,
    /// A stated precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    /// Normal-form rewriting exceeded the configured disjunct budget.
    #[error("strong normal form exceeds the limit of {limit} disjuncts")]
    TooManyDisjuncts { limit: usize },
}

/// Outcome of the bivariant reconstruction when the input is not equivalent
/// to the encoding of any term over the original signature.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    /// Carries the candidate that was built and its re-encoding, which failed
    /// the equivalence check against the input.
    #[error("not representable: candidate `{candidate}` re-encodes to `{image}`, which is not cc-equivalent to the input")]
    NotRepresentable {
        candidate: ProcessTerm,
        image: ProcessTerm,
    },
    #[error(transparent)]
    Other(#[from] Error),
}

pub(crate) fn unknown_action(a: &Action) -> Error {
    Error::SignatureMismatch(format!("action `{a}` does not belong to the signature"))
}
