//! Derivability of dependency statements.
//!
//! Three systems are supported: the Armstrong rules for functional
//! dependence, the rules for marginal independence, and a bounded search
//! over rules for conditional independence. Statements are canonicalized to
//! variable sets, so reorderings and repetitions inside a tuple are
//! invisible here.

pub mod armstrong;
pub mod conditional;
pub mod independence;
mod subsets;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::formula::{Formula, Var, VarTuple};
use crate::parser::{parse, ParseError};

pub use armstrong::{armstrong_counterexample, armstrong_derives};
pub use conditional::ci_derive;
pub use independence::{gpp_closure, gpp_counterexample, gpp_derives, GppCounterexample};

pub type VarSet = BTreeSet<Var>;

fn tuple(s: &VarSet) -> VarTuple {
    s.iter().cloned().collect()
}

/// `dep(antecedent, consequent)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FdStatement {
    pub antecedent: VarSet,
    pub consequent: VarSet,
}

/// `lhs _||_ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndStatement {
    pub lhs: VarSet,
    pub rhs: VarSet,
}

/// `lhs _||_{condition} rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CiStatement {
    pub condition: VarSet,
    pub lhs: VarSet,
    pub rhs: VarSet,
}

fn set(names: &str) -> VarSet {
    VarTuple::of(names).to_set()
}

impl FdStatement {
    pub fn new(antecedent: VarSet, consequent: VarSet) -> FdStatement {
        FdStatement {
            antecedent,
            consequent,
        }
    }

    /// Whitespace separated variable names, e.g. `FdStatement::of("x y", "z")`.
    pub fn of(antecedent: &str, consequent: &str) -> FdStatement {
        FdStatement::new(set(antecedent), set(consequent))
    }

    pub fn to_formula(&self) -> Formula {
        Formula::dep(tuple(&self.antecedent), tuple(&self.consequent))
    }
}

impl IndStatement {
    pub fn new(lhs: VarSet, rhs: VarSet) -> IndStatement {
        IndStatement { lhs, rhs }
    }

    pub fn of(lhs: &str, rhs: &str) -> IndStatement {
        IndStatement::new(set(lhs), set(rhs))
    }

    pub fn to_formula(&self) -> Formula {
        Formula::indep(tuple(&self.lhs), tuple(&self.rhs))
    }
}

impl CiStatement {
    pub fn new(condition: VarSet, lhs: VarSet, rhs: VarSet) -> CiStatement {
        CiStatement {
            condition,
            lhs,
            rhs,
        }
    }

    pub fn of(condition: &str, lhs: &str, rhs: &str) -> CiStatement {
        CiStatement::new(set(condition), set(lhs), set(rhs))
    }

    pub fn to_formula(&self) -> Formula {
        Formula::cond_indep(tuple(&self.condition), tuple(&self.lhs), tuple(&self.rhs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statement {
    Fd(FdStatement),
    Ind(IndStatement),
    Ci(CiStatement),
}

impl Statement {
    pub fn to_formula(&self) -> Formula {
        match self {
            Statement::Fd(s) => s.to_formula(),
            Statement::Ind(s) => s.to_formula(),
            Statement::Ci(s) => s.to_formula(),
        }
    }

    pub fn from_formula(f: &Formula) -> Option<Statement> {
        Some(match f {
            Formula::Dep {
                antecedent,
                consequent,
            } => Statement::Fd(FdStatement::new(antecedent.to_set(), consequent.to_set())),
            Formula::Constancy(t) => Statement::Fd(FdStatement::new(VarSet::new(), t.to_set())),
            Formula::Indep { lhs, rhs } => {
                Statement::Ind(IndStatement::new(lhs.to_set(), rhs.to_set()))
            }
            Formula::CondIndep {
                condition,
                lhs,
                rhs,
            } => Statement::Ci(CiStatement::new(
                condition.to_set(),
                lhs.to_set(),
                rhs.to_set(),
            )),
            _ => return None,
        })
    }

    pub fn system(&self) -> System {
        match self {
            Statement::Fd(_) => System::Armstrong,
            Statement::Ind(_) => System::Independence,
            Statement::Ci(_) => System::Conditional,
        }
    }

    pub fn variables(&self) -> VarSet {
        match self {
            Statement::Fd(s) => s.antecedent.union(&s.consequent).cloned().collect(),
            Statement::Ind(s) => s.lhs.union(&s.rhs).cloned().collect(),
            Statement::Ci(s) => s
                .condition
                .iter()
                .chain(&s.lhs)
                .chain(&s.rhs)
                .cloned()
                .collect(),
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

impl From<FdStatement> for Statement {
    fn from(s: FdStatement) -> Statement {
        Statement::Fd(s)
    }
}

impl From<IndStatement> for Statement {
    fn from(s: IndStatement) -> Statement {
        Statement::Ind(s)
    }
}

impl From<CiStatement> for Statement {
    fn from(s: CiStatement) -> Statement {
        Statement::Ci(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum System {
    Armstrong,
    Independence,
    Conditional,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatementError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("`{text}` is not a statement of the {expected:?} system")]
    WrongKind { text: String, expected: System },
}

/// Parses one statement with the formula syntax. Constancy atoms are read as
/// dependencies with an empty antecedent; in the conditional system an
/// unconditional independence atom gets an empty condition.
pub fn parse_statement(text: &str, system: System) -> Result<Statement, StatementError> {
    let f = parse(text)?;
    let wrong = || StatementError::WrongKind {
        text: text.trim().to_string(),
        expected: system,
    };
    let s = Statement::from_formula(&f).ok_or_else(wrong)?;
    match (system, s) {
        (System::Conditional, Statement::Ind(s)) => {
            Ok(CiStatement::new(VarSet::new(), s.lhs, s.rhs).into())
        }
        (sys, s) if s.system() == sys => Ok(s),
        _ => Err(wrong()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("the goal is derivable, so no counterexample exists")]
    Derivable,
    #[error("internal error: the constructed team does not separate premises from goal")]
    Unverified,
    #[error("{found} variables exceed the engine limit of {max}")]
    TooManyVariables { found: usize, max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// A member of the premise set.
    Hypothesis,
    /// `dep(x, x)`.
    A1,
    /// Enlarging the antecedent.
    A2,
    /// Transitivity.
    A4,
    /// `dep(y, x)` and `dep(y, z)` give `dep(y, x z)`.
    Union,
    EmptySet,
    Symmetry,
    Weakening,
    Constancy,
    Exchange,
    Reflexivity,
    FirstTransitivity,
    SecondTransitivity,
}

const RULE_NAMES: &[(Rule, &str)] = &[
    (Rule::Hypothesis, "hypothesis"),
    (Rule::A1, "A1"),
    (Rule::A2, "A2"),
    (Rule::A4, "A4"),
    (Rule::Union, "union"),
    (Rule::EmptySet, "empty-set"),
    (Rule::Symmetry, "symmetry"),
    (Rule::Weakening, "weakening"),
    (Rule::Constancy, "constancy"),
    (Rule::Exchange, "exchange"),
    (Rule::Reflexivity, "reflexivity"),
    (Rule::FirstTransitivity, "first-transitivity"),
    (Rule::SecondTransitivity, "second-transitivity"),
];

impl Rule {
    pub fn name(self) -> &'static str {
        RULE_NAMES
            .iter()
            .find(|(r, _)| *r == self)
            .map(|p| p.1)
            .unwrap()
    }

    pub fn from_name(name: &str) -> Option<Rule> {
        RULE_NAMES.iter().find(|(_, n)| *n == name).map(|p| p.0)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A proof tree; every node names the rule that yields its conclusion from
/// the conclusions of its premises.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub conclusion: Statement,
    pub rule: Rule,
    pub premises: Vec<Derivation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("`{conclusion}` does not follow by {rule}")]
    BadStep { rule: Rule, conclusion: String },
    #[error("`{0}` is used as a hypothesis but is not a premise")]
    UnknownHypothesis(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofTextError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("empty proof")]
    Empty,
}

impl Derivation {
    pub fn leaf(conclusion: Statement, rule: Rule) -> Derivation {
        Derivation {
            conclusion,
            rule,
            premises: Vec::new(),
        }
    }

    pub fn step(conclusion: Statement, rule: Rule, premises: Vec<Derivation>) -> Derivation {
        Derivation {
            conclusion,
            rule,
            premises,
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self
            .premises
            .iter()
            .map(Derivation::height)
            .max()
            .unwrap_or(0)
    }

    /// Every conclusion in the tree, root first.
    pub fn conclusions(&self) -> Vec<&Statement> {
        let mut out = vec![&self.conclusion];
        for p in &self.premises {
            out.extend(p.conclusions());
        }
        out
    }

    /// Checks every node against its rule schema. Hypotheses must be members
    /// of `premises`.
    pub fn verify(&self, premises: &[Statement]) -> Result<(), ReplayError> {
        for p in &self.premises {
            p.verify(premises)?;
        }
        if self.rule == Rule::Hypothesis {
            if self.premises.is_empty() && premises.contains(&self.conclusion) {
                return Ok(());
            }
            return Err(ReplayError::UnknownHypothesis(self.conclusion.to_string()));
        }
        let prem: Vec<&Statement> = self.premises.iter().map(|d| &d.conclusion).collect();
        if rule_applies(self.rule, &prem, &self.conclusion) {
            Ok(())
        } else {
            Err(ReplayError::BadStep {
                rule: self.rule,
                conclusion: self.conclusion.to_string(),
            })
        }
    }

    /// One line per node, `rule: statement`, premises indented two spaces
    /// below their conclusion.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(0, &mut out);
        out
    }

    fn write_text(&self, depth: usize, out: &mut String) {
        out.push_str(&"  ".repeat(depth));
        out.push_str(&format!("{}: {}\n", self.rule, self.conclusion));
        for p in &self.premises {
            p.write_text(depth + 1, out);
        }
    }

    /// Reads the format written by [`Derivation::to_text`].
    pub fn from_text(text: &str, system: System) -> Result<Derivation, ProofTextError> {
        let mut lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            if raw.trim().is_empty() {
                continue;
            }
            let err = |message: String| ProofTextError::Line {
                line: i + 1,
                message,
            };
            let indent = raw.len() - raw.trim_start_matches(' ').len();
            if indent % 2 != 0 {
                return Err(err("indentation must be a multiple of two spaces".into()));
            }
            let (rule, stmt) = raw
                .trim()
                .split_once(':')
                .ok_or_else(|| err("expected `rule: statement`".into()))?;
            let rule = Rule::from_name(rule.trim())
                .ok_or_else(|| err(format!("unknown rule `{}`", rule.trim())))?;
            let stmt = parse_statement(stmt, system).map_err(|e| err(e.to_string()))?;
            lines.push((indent / 2, i + 1, Derivation::leaf(stmt, rule)));
        }
        let mut pos = 0;
        let d = build(&lines, &mut pos, 0)?;
        if let Some((_, line, _)) = lines.get(pos) {
            return Err(ProofTextError::Line {
                line: *line,
                message: "more than one root".into(),
            });
        }
        Ok(d)
    }
}

fn build(
    lines: &[(usize, usize, Derivation)],
    pos: &mut usize,
    depth: usize,
) -> Result<Derivation, ProofTextError> {
    let (d, line, node) = lines.get(*pos).ok_or(ProofTextError::Empty)?;
    if *d != depth {
        return Err(ProofTextError::Line {
            line: *line,
            message: format!("expected indentation depth {depth}"),
        });
    }
    let mut node = node.clone();
    *pos += 1;
    while let Some((d, _, _)) = lines.get(*pos) {
        if *d <= depth {
            break;
        }
        node.premises.push(build(lines, pos, depth + 1)?);
    }
    Ok(node)
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn subset(a: &VarSet, b: &VarSet) -> bool {
    a.is_subset(b)
}

fn union(a: &VarSet, b: &VarSet) -> VarSet {
    a.union(b).cloned().collect()
}

/// Local schema check for one inference.
fn rule_applies(rule: Rule, prem: &[&Statement], c: &Statement) -> bool {
    use Statement::{Ci, Fd, Ind};
    match (rule, prem, c) {
        (Rule::A1, [], Fd(c)) => c.antecedent == c.consequent,
        (Rule::A2, [Fd(p)], Fd(c)) => {
            p.consequent == c.consequent && subset(&p.antecedent, &c.antecedent)
        }
        (Rule::A4, [Fd(p), Fd(q)], Fd(c)) => {
            p.antecedent == c.antecedent
                && p.consequent == q.antecedent
                && q.consequent == c.consequent
        }
        (Rule::Union, [Fd(p), Fd(q)], Fd(c)) => {
            p.antecedent == c.antecedent
                && q.antecedent == c.antecedent
                && union(&p.consequent, &q.consequent) == c.consequent
        }
        (Rule::EmptySet, [], Ind(c)) => c.rhs.is_empty(),
        (Rule::Symmetry, [Ind(p)], Ind(c)) => p.lhs == c.rhs && p.rhs == c.lhs,
        (Rule::Weakening, [Ind(p)], Ind(c)) => p.lhs == c.lhs && subset(&c.rhs, &p.rhs),
        (Rule::Constancy, [Ind(p)], Ind(c)) => p.lhs == p.rhs && p.lhs == c.lhs,
        (Rule::Exchange, [Ind(p), Ind(q)], Ind(c)) => {
            p.lhs == c.lhs && q.lhs == union(&p.lhs, &p.rhs) && c.rhs == union(&p.rhs, &q.rhs)
        }
        (Rule::Reflexivity, [], Ci(c)) => c.condition == c.lhs,
        (Rule::Symmetry, [Ci(p)], Ci(c)) => {
            p.condition == c.condition && p.lhs == c.rhs && p.rhs == c.lhs
        }
        (Rule::Weakening, [Ci(p)], Ci(c)) => {
            p.condition == c.condition && subset(&c.lhs, &p.lhs) && subset(&c.rhs, &p.rhs)
        }
        (Rule::FirstTransitivity, [Ci(p), Ci(q)], Ci(c)) => {
            p.condition == c.condition
                && q.condition == union(&p.condition, &p.lhs)
                && q.lhs == c.lhs
                && p.rhs == c.rhs
                && q.rhs == c.rhs
        }
        (Rule::SecondTransitivity, [Ci(p), Ci(q)], Ci(c)) => {
            p.condition == c.condition
                && p.lhs == p.rhs
                && q.condition == p.lhs
                && q.lhs == union(&c.condition, &c.lhs)
                && q.rhs == c.rhs
        }
        (Rule::Exchange, [Ci(p), Ci(q)], Ci(c)) => {
            p.condition == c.condition
                && q.condition == c.condition
                && p.lhs == c.lhs
                && q.lhs == union(&p.lhs, &p.rhs)
                && c.rhs == union(&p.rhs, &q.rhs)
        }
        _ => false,
    }
}
