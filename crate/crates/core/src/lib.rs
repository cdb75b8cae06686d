//! Model checking and inference for dependence and independence logic under
//! team semantics.
//!
//! Formulas are parsed from a plain-text syntax ([`parse`]), evaluated on
//! finite structures and teams ([`eval::satisfies`]), and rewritten between
//! atom families ([`translate`]). The [`axioms`] module decides derivability
//! for functional dependencies and independence statements and builds
//! counterexample teams.

pub mod axioms;
pub mod cli;
pub mod eval;
pub mod formula;
pub mod parser;
pub mod structure;
pub mod translate;

pub use eval::{
    consequence_check, satisfies, satisfies_sentence, Consequence, EvalConfig, EvalError,
    EvalResult, Mode, Verdict,
};
pub use formula::{var, AtomKind, Formula, FormulaError, MatchedPair, Var, VarTuple};
pub use parser::{parse, print, ParseError};
pub use structure::{Element, ModelDoc, SplitMode, Structure, Team, WitnessMap};
