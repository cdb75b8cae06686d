//! Deciding `M, S |= phi`.
//!
//! Formulas are compiled against the variable layout of the input team and
//! evaluated by structural recursion. First-order subformulas are checked
//! row by row; disjunctions search splits of the team; existential
//! quantifiers search witness maps depth first, pruning with the atoms of
//! the quantified body that are already refuted by the rows chosen so far.

mod atoms;
mod compile;
mod consequence;
mod engine;

use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use atoms::{eval_cond_indep, eval_dep, eval_exclusion, eval_inclusion, eval_indep};
pub use consequence::{consequence_check, Bounds, Consequence, Countermodel};

use crate::formula::{AtomKind, Formula, Var};
use crate::structure::{SplitMode, Structure, Team, DEFAULT_ROW_BOUND};
use engine::{Engine, Halt};

/// How existential quantifiers pick witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// One witness per row.
    Strict,
    /// A nonempty set of witnesses per row.
    Lax,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalConfig {
    pub mode: Mode,
    pub split_mode: SplitMode,
    pub memo: bool,
    /// Most candidate rows a linear implication may enumerate teams over.
    pub row_bound: usize,
    /// Most teams a linear implication may enumerate.
    pub team_enum_bound: usize,
    pub time_budget: Duration,
    /// Evaluate first-order subformulas row by row.
    pub flat_shortcut: bool,
    /// Cut searches with atoms already refuted by partial choices.
    pub pruning: bool,
}

impl Default for EvalConfig {
    fn default() -> EvalConfig {
        EvalConfig {
            mode: Mode::Strict,
            split_mode: SplitMode::Partitions,
            memo: true,
            row_bound: DEFAULT_ROW_BOUND,
            team_enum_bound: 1 << 16,
            time_budget: Duration::from_secs(60),
            flat_shortcut: true,
            pruning: true,
        }
    }
}

impl EvalConfig {
    pub fn lax() -> EvalConfig {
        EvalConfig {
            mode: Mode::Lax,
            ..EvalConfig::default()
        }
    }

    pub fn with_split_mode(mut self, split_mode: SplitMode) -> EvalConfig {
        self.split_mode = split_mode;
        self
    }

    pub fn with_budget(mut self, budget: Duration) -> EvalConfig {
        self.time_budget = budget;
        self
    }

    /// The definitional clauses only: no row-wise shortcut, no pruning, no memo.
    pub fn literal(mut self) -> EvalConfig {
        self.flat_shortcut = false;
        self.pruning = false;
        self.memo = false;
        self
    }

    /// The mode actually used for `f`; inclusion atoms force lax witnesses.
    pub fn effective_mode(&self, f: &Formula) -> Mode {
        if f.contains_atom(AtomKind::Inclusion) {
            Mode::Lax
        } else {
            self.mode
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Satisfied,
    NotSatisfied,
    BudgetExhausted,
}

impl Verdict {
    /// `None` when the budget ran out.
    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::Satisfied => Some(true),
            Verdict::NotSatisfied => Some(false),
            Verdict::BudgetExhausted => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Satisfied => "true",
            Verdict::NotSatisfied => "false",
            Verdict::BudgetExhausted => "budget-exhausted",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalStats {
    pub nodes: u64,
    pub memo_hits: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalResult {
    pub verdict: Verdict,
    pub stats: EvalStats,
}

impl EvalResult {
    pub fn holds(&self) -> Option<bool> {
        self.verdict.as_bool()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable {0} is not in the team's domain")]
    UnknownVariable(Var),
    #[error("relation {0} is not interpreted in the structure")]
    UnknownRelation(String),
    #[error("relation {name} has arity {expected}, used with {found} arguments")]
    RelationArity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("tuples of lengths {left} and {right} cannot be compared")]
    ArityMismatch { left: usize, right: usize },
    #[error("not a sentence: free variables {0:?}")]
    NotASentence(Vec<Var>),
    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
}

/// Decides `M, team |= f`.
pub fn satisfies(
    m: &Structure,
    team: &Team,
    f: &Formula,
    cfg: &EvalConfig,
) -> Result<EvalResult, EvalError> {
    let prog = compile::compile(f, team.vars(), m, cfg.flat_shortcut)?;
    let mut engine = Engine::new(&prog, m.domain_size(), cfg, cfg.effective_mode(f));
    let verdict = match engine.run(team.rows().to_vec()) {
        Ok(true) => Verdict::Satisfied,
        Ok(false) => Verdict::NotSatisfied,
        Err(Halt::Budget) => Verdict::BudgetExhausted,
        Err(Halt::Error(e)) => return Err(e),
    };
    Ok(EvalResult {
        verdict,
        stats: engine.stats,
    })
}

/// Evaluates a sentence on the team holding only the empty assignment.
pub fn satisfies_sentence(
    m: &Structure,
    f: &Formula,
    cfg: &EvalConfig,
) -> Result<EvalResult, EvalError> {
    let fv = f.free_variables();
    if !fv.is_empty() {
        return Err(EvalError::NotASentence(fv.into_iter().collect()));
    }
    satisfies(m, &Team::unit(), f, cfg)
}
