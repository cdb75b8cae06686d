//! The `teamlogic` command line.
//!
//! Exit codes: 0 for true / derivable / equivalent, 1 for false /
//! not derivable / unknown / not equivalent, 2 for errors and exhausted
//! budgets.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::axioms::{
    armstrong_counterexample, armstrong_derives, ci_derive, gpp_counterexample, gpp_derives,
    parse_statement, Statement, StatementError, System,
};
use crate::eval::{consequence_check, satisfies, Bounds, Consequence, EvalConfig, Mode, Verdict};
use crate::formula::{AtomKind, Formula};
use crate::parser::parse;
use crate::structure::{ModelDoc, SplitMode, Structure, Team};
use crate::translate::eliminate_atoms;

#[derive(Debug, Parser)]
#[command(name = "teamlogic", version, about = "Team-semantics model checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a formula on a structure and team.
    Eval(EvalArgs),
    /// Decide whether premises derive a goal statement.
    Derive(DeriveArgs),
    /// Compare two formulas on all small structures and teams.
    Equiv(EquivArgs),
    /// Replace atoms by their translations.
    Rewrite(RewriteArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Lax,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SplitArg {
    Partitions,
    Covers,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SystemArg {
    Armstrong,
    Independence,
    Conditional,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TargetArg {
    Constancy,
    Dep,
    Exclusion,
}

#[derive(Debug, Args)]
struct SemanticsArgs {
    #[arg(long, value_enum, default_value = "strict")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "partitions")]
    splits: SplitArg,
    /// Time budget in seconds.
    #[arg(long, default_value_t = 60.0)]
    budget: f64,
}

impl SemanticsArgs {
    fn config(&self) -> Result<EvalConfig, String> {
        if !(self.budget.is_finite() && self.budget >= 0.0) {
            return Err(format!("invalid budget {}", self.budget));
        }
        Ok(EvalConfig {
            mode: match self.mode {
                ModeArg::Strict => Mode::Strict,
                ModeArg::Lax => Mode::Lax,
            },
            split_mode: match self.splits {
                SplitArg::Partitions => SplitMode::Partitions,
                SplitArg::Covers => SplitMode::Covers,
            },
            time_budget: Duration::from_secs_f64(self.budget),
            ..EvalConfig::default()
        })
    }
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// Model document (JSON); may also hold the team.
    #[arg(long, conflicts_with = "domain", required_unless_present = "domain")]
    model: Option<PathBuf>,
    /// Use the structure with this many elements and no relations.
    #[arg(long)]
    domain: Option<usize>,
    /// Document whose `team` field overrides the model's.
    #[arg(long)]
    team: Option<PathBuf>,
    /// Evaluate on the team holding only the empty assignment.
    #[arg(long, conflicts_with = "team")]
    sentence: bool,
    formula: String,
    #[command(flatten)]
    semantics: SemanticsArgs,
}

#[derive(Debug, Args)]
struct DeriveArgs {
    #[arg(long, value_enum)]
    system: SystemArg,
    /// File with one premise per line; `#` starts a comment.
    #[arg(long)]
    premises: Option<PathBuf>,
    /// A premise given inline; may be repeated.
    #[arg(long = "premise", short = 'p')]
    premise: Vec<String>,
    /// Height bound for the conditional system.
    #[arg(long, default_value_t = 6)]
    depth: usize,
    goal: String,
}

#[derive(Debug, Args)]
struct EquivArgs {
    formula_a: String,
    formula_b: String,
    #[arg(long, default_value_t = 3)]
    max_domain: usize,
    #[arg(long, default_value_t = 2)]
    max_vars: usize,
    #[command(flatten)]
    semantics: SemanticsArgs,
}

#[derive(Debug, Args)]
struct RewriteArgs {
    formula: String,
    /// Atom kinds to eliminate; all of them when omitted.
    #[arg(long, value_enum, value_delimiter = ',')]
    targets: Vec<TargetArg>,
}

/// An error already rendered for the user.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure(format!("error: {e}"))
    }
}

fn parse_formula(text: &str) -> Result<Formula, Failure> {
    parse(text).map_err(|e| Failure(e.render(text)))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("error: {}: {e}", path.display())))
}

fn load_doc(path: &Path) -> Result<ModelDoc, Failure> {
    ModelDoc::parse(&read(path)?).map_err(|e| Failure(format!("error: {}: {e}", path.display())))
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a, out),
        Command::Derive(a) => cmd_derive(a, out),
        Command::Equiv(a) => cmd_equiv(a, out),
        Command::Rewrite(a) => cmd_rewrite(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "{msg}");
            2
        }
    }
}

fn cmd_eval(a: &EvalArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let f = parse_formula(&a.formula)?;
    let cfg = a.semantics.config().map_err(Failure)?;
    let doc = a.model.as_deref().map(load_doc).transpose()?;
    let m = match (&doc, a.domain) {
        (Some(doc), _) => doc.structure()?,
        (None, Some(n)) => Structure::new(n)?,
        (None, None) => unreachable!("clap requires a model or a domain"),
    };
    let team = if a.sentence {
        Team::unit()
    } else if let Some(path) = &a.team {
        load_doc(path)?.team()?
    } else {
        match doc.as_ref().filter(|d| d.team.is_some()) {
            Some(doc) => doc.team()?,
            None => Team::unit(),
        }
    };
    if let Some(&bad) = team
        .rows()
        .iter()
        .flatten()
        .find(|&&e| e as usize >= m.domain_size())
    {
        return Err(Failure(format!(
            "error: team value {bad} outside a domain of size {}",
            m.domain_size()
        )));
    }
    if a.sentence && !f.is_sentence() {
        let fv: Vec<_> = f.free_variables().iter().map(|v| v.to_string()).collect();
        return Err(Failure(format!(
            "error: not a sentence, free: {}",
            fv.join(" ")
        )));
    }
    let r = satisfies(&m, &team, &f, &cfg)?;
    writeln!(out, "verdict: {}", r.verdict)?;
    writeln!(
        out,
        "nodes: {} memo-hits: {} elapsed: {:.3}s",
        r.stats.nodes,
        r.stats.memo_hits,
        r.stats.elapsed.as_secs_f64()
    )?;
    Ok(match r.verdict {
        Verdict::Satisfied => 0,
        Verdict::NotSatisfied => 1,
        Verdict::BudgetExhausted => 2,
    })
}

fn statement(text: &str, system: System) -> Result<Statement, Failure> {
    parse_statement(text, system).map_err(|e| match e {
        StatementError::Parse(p) => Failure(p.render(text)),
        other => Failure(format!("error: {other}")),
    })
}

fn cmd_derive(a: &DeriveArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let system = match a.system {
        SystemArg::Armstrong => System::Armstrong,
        SystemArg::Independence => System::Independence,
        SystemArg::Conditional => System::Conditional,
    };
    let mut sigma = Vec::new();
    if let Some(path) = &a.premises {
        for line in read(path)?.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                sigma.push(statement(line, system)?);
            }
        }
    }
    for p in &a.premise {
        sigma.push(statement(p, system)?);
    }
    let goal = statement(&a.goal, system)?;
    let (found, proof, counter) = match (system, &goal) {
        (System::Armstrong, Statement::Fd(g)) => {
            let fds: Vec<_> = sigma.iter().filter_map(fd).collect();
            let (ok, proof) = armstrong_derives(&fds, g);
            let counter = if ok {
                None
            } else {
                let (m, t) = armstrong_counterexample(&fds, g)?;
                Some(ModelDoc::from_parts(&m, Some(&t)))
            };
            (ok, proof, counter)
        }
        (System::Independence, Statement::Ind(g)) => {
            let inds: Vec<_> = sigma.iter().filter_map(ind).collect();
            let (ok, proof) = gpp_derives(&inds, g)?;
            let counter = if ok {
                None
            } else {
                let c = gpp_counterexample(&inds, g)?;
                Some(ModelDoc::from_parts(&c.structure, Some(&c.team)))
            };
            (ok, proof, counter)
        }
        (System::Conditional, Statement::Ci(g)) => {
            let cis: Vec<_> = sigma.iter().filter_map(ci).collect();
            let (ok, proof) = ci_derive(&cis, g, a.depth)?;
            (ok, proof, None)
        }
        _ => unreachable!("statements are parsed for the chosen system"),
    };
    if found {
        writeln!(out, "DERIVABLE")?;
        if let Some(p) = proof {
            write!(out, "{}", p.to_text())?;
        }
        Ok(0)
    } else if let Some(doc) = counter {
        writeln!(out, "NOT-DERIVABLE")?;
        writeln!(out, "{}", doc.to_json())?;
        Ok(1)
    } else {
        writeln!(out, "UNKNOWN")?;
        writeln!(out, "no derivation of height at most {}", a.depth)?;
        Ok(1)
    }
}

fn fd(s: &Statement) -> Option<crate::axioms::FdStatement> {
    match s {
        Statement::Fd(s) => Some(s.clone()),
        _ => None,
    }
}

fn ind(s: &Statement) -> Option<crate::axioms::IndStatement> {
    match s {
        Statement::Ind(s) => Some(s.clone()),
        _ => None,
    }
}

fn ci(s: &Statement) -> Option<crate::axioms::CiStatement> {
    match s {
        Statement::Ci(s) => Some(s.clone()),
        _ => None,
    }
}

fn cmd_equiv(a: &EquivArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let fa = parse_formula(&a.formula_a)?;
    let fb = parse_formula(&a.formula_b)?;
    let cfg = a.semantics.config().map_err(Failure)?;
    let bounds = Bounds {
        max_domain: a.max_domain,
        max_vars: a.max_vars,
        ..Bounds::default()
    };
    for (p, q) in [(&fa, &fb), (&fb, &fa)] {
        match consequence_check(p, q, &bounds, &cfg)? {
            Consequence::Holds => {}
            Consequence::Fails(c) => {
                writeln!(out, "NOT-EQUIVALENT")?;
                writeln!(out, "satisfies: {p}")?;
                writeln!(out, "falsifies: {q}")?;
                writeln!(
                    out,
                    "{}",
                    ModelDoc::from_parts(&c.structure, Some(&c.team)).to_json()
                )?;
                return Ok(1);
            }
            Consequence::BudgetExhausted => {
                writeln!(out, "budget-exhausted")?;
                return Ok(2);
            }
        }
    }
    writeln!(out, "EQUIVALENT")?;
    writeln!(
        out,
        "checked domains 1..={} with at most {} free variables",
        a.max_domain, a.max_vars
    )?;
    Ok(0)
}

fn cmd_rewrite(a: &RewriteArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let f = parse_formula(&a.formula)?;
    let kinds: BTreeSet<AtomKind> = if a.targets.is_empty() {
        crate::translate::ELIMINABLE.into_iter().collect()
    } else {
        a.targets
            .iter()
            .map(|t| match t {
                TargetArg::Constancy => AtomKind::Constancy,
                TargetArg::Dep => AtomKind::Dep,
                TargetArg::Exclusion => AtomKind::Exclusion,
            })
            .collect()
    };
    writeln!(out, "{}", eliminate_atoms(&f, &kinds)?)?;
    Ok(0)
}
