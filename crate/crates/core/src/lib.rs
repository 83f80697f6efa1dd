//! Covariant-contravariant simulation over finite process terms and the
//! cc-modal logic: model checking, characteristic formulae, strong normal
//! forms, graphical representation of formulae by finite antichains of
//! processes, and the encodings that eliminate bivariant actions.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything here is safe to use from multiple threads.

pub mod bivariant;
pub mod characteristic;
pub mod error;
pub mod formula;
pub mod logic;
pub mod lts;
pub mod normal_form;
pub mod parse;
pub mod representation;
pub mod signature;
pub mod simulation;
pub mod term;

pub use error::{Error, ParseError, ReconstructError};
pub use formula::Formula;
pub use lts::Lts;
pub use normal_form::{StrongNormalForm, UnarySnf, DEFAULT_MAX_DISJUNCTS};
pub use representation::RepresentationSet;
pub use signature::{Action, ActionClass, Signature};
pub use simulation::SimulationRelation;
pub use term::ProcessTerm;
