//! Marginal independence statements: closure under the five rules, proofs,
//! and parity-team counterexamples.

use std::collections::VecDeque;

use super::subsets::{submasks, Universe};
use super::{AxiomError, Derivation, IndStatement, Rule, Statement, VarSet};
use crate::eval::eval_indep;
use crate::formula::{Var, VarTuple};
use crate::structure::{all_rows, Structure, Team};

/// Most variables the closure is computed over.
pub const MAX_VARIABLES: usize = 10;

#[derive(Clone, Copy)]
struct Prov {
    rule: Rule,
    premises: [Option<usize>; 2],
}

/// Every derivable `X _||_ Y` over a fixed universe, with the first step
/// that produced it.
struct Closure {
    uni: Universe,
    prov: Vec<Option<Prov>>,
}

impl Closure {
    fn new(sigma: &[IndStatement], extra: &[&IndStatement]) -> Result<Closure, AxiomError> {
        let mut vars = VarSet::new();
        for s in sigma.iter().chain(extra.iter().copied()) {
            vars.extend(s.lhs.iter().chain(&s.rhs).cloned());
        }
        if vars.len() > MAX_VARIABLES {
            return Err(AxiomError::TooManyVariables {
                found: vars.len(),
                max: MAX_VARIABLES,
            });
        }
        let uni = Universe::new(vars);
        let n = uni.len();
        let mut c = Closure {
            prov: vec![None; 1 << (2 * n)],
            uni,
        };
        let mut queue = VecDeque::new();
        for s in sigma {
            let i = c.index(c.uni.mask(&s.lhs), c.uni.mask(&s.rhs));
            c.add(i, Rule::Hypothesis, [None, None], &mut queue);
        }
        for x in 0..=c.uni.full() {
            c.add(c.index(x, 0), Rule::EmptySet, [None, None], &mut queue);
        }
        let full = c.uni.full();
        while let Some(s) = queue.pop_front() {
            let (x, y) = c.split(s);
            c.add(c.index(y, x), Rule::Symmetry, [Some(s), None], &mut queue);
            for y2 in submasks(y) {
                c.add(c.index(x, y2), Rule::Weakening, [Some(s), None], &mut queue);
            }
            if x == y {
                for y2 in 0..=full {
                    c.add(c.index(x, y2), Rule::Constancy, [Some(s), None], &mut queue);
                }
            }
            // s = x _||_ y as first premise, (x y) _||_ z as second
            for z in 0..=full {
                let q = c.index(x | y, z);
                if c.has(q) {
                    c.add(
                        c.index(x, y | z),
                        Rule::Exchange,
                        [Some(s), Some(q)],
                        &mut queue,
                    );
                }
            }
            // s = w _||_ z as second premise, with a first premise a _||_ b, a b = w
            let (w, z) = (x, y);
            for a in submasks(w) {
                for t in submasks(a) {
                    let b = (w & !a) | t;
                    let p = c.index(a, b);
                    if c.has(p) {
                        c.add(
                            c.index(a, b | z),
                            Rule::Exchange,
                            [Some(p), Some(s)],
                            &mut queue,
                        );
                    }
                }
            }
        }
        Ok(c)
    }

    fn index(&self, x: u32, y: u32) -> usize {
        ((x as usize) << self.uni.len()) | y as usize
    }

    fn split(&self, i: usize) -> (u32, u32) {
        let n = self.uni.len();
        ((i >> n) as u32, (i & ((1 << n) - 1)) as u32)
    }

    fn has(&self, i: usize) -> bool {
        self.prov[i].is_some()
    }

    fn add(&mut self, i: usize, rule: Rule, premises: [Option<usize>; 2], q: &mut VecDeque<usize>) {
        if self.prov[i].is_none() {
            self.prov[i] = Some(Prov { rule, premises });
            q.push_back(i);
        }
    }

    fn statement(&self, i: usize) -> IndStatement {
        let (x, y) = self.split(i);
        IndStatement::new(self.uni.set(x), self.uni.set(y))
    }

    fn contains(&self, s: &IndStatement) -> bool {
        self.has(self.index(self.uni.mask(&s.lhs), self.uni.mask(&s.rhs)))
    }

    fn derivation(&self, i: usize) -> Derivation {
        let p = self.prov[i].expect("derived statement");
        let premises = p
            .premises
            .iter()
            .flatten()
            .map(|&j| self.derivation(j))
            .collect();
        Derivation::step(self.statement(i).into(), p.rule, premises)
    }
}

/// Decides whether `sigma` derives `goal` by closing the statements over the
/// mentioned variables under the rules.
pub fn gpp_derives(
    sigma: &[IndStatement],
    goal: &IndStatement,
) -> Result<(bool, Option<Derivation>), AxiomError> {
    let c = Closure::new(sigma, &[goal])?;
    if c.contains(goal) {
        let i = c.index(c.uni.mask(&goal.lhs), c.uni.mask(&goal.rhs));
        Ok((true, Some(c.derivation(i))))
    } else {
        Ok((false, None))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GppCounterexample {
    pub structure: Structure,
    pub team: Team,
    /// A non-derivable statement below the goal all of whose proper
    /// weakenings are derivable.
    pub minimal_goal: IndStatement,
    /// The variable holding the parity of the other minimal-goal variables;
    /// `None` when the minimal goal is `u _||_ u`.
    pub parity_variable: Option<Var>,
    /// Variables forced constant by the premises.
    pub constants: VarSet,
}

/// Builds a team over `{0, 1}` satisfying `sigma` and falsifying `goal`.
///
/// The goal is first shrunk to a minimal non-derivable pair. Variables whose
/// self-independence is derivable are fixed to 0; one non-constant variable
/// of the minimal pair then holds the parity of the remaining ones, and all
/// other variables range freely.
pub fn gpp_counterexample(
    sigma: &[IndStatement],
    goal: &IndStatement,
) -> Result<GppCounterexample, AxiomError> {
    let c = Closure::new(sigma, &[goal])?;
    if c.contains(goal) {
        return Err(AxiomError::Derivable);
    }
    let (mut x, mut y) = (c.uni.mask(&goal.lhs), c.uni.mask(&goal.rhs));
    'shrink: loop {
        for bit in (0..c.uni.len()).map(|i| 1u32 << i) {
            if x & bit != 0 && !c.has(c.index(x & !bit, y)) {
                x &= !bit;
                continue 'shrink;
            }
            if y & bit != 0 && !c.has(c.index(x, y & !bit)) {
                y &= !bit;
                continue 'shrink;
            }
        }
        break;
    }
    let n = c.uni.len();
    let constants: u32 = (0..n)
        .map(|i| 1u32 << i)
        .filter(|&b| c.has(c.index(b, b)))
        .fold(0, |a, b| a | b);
    let parity = if x & y != 0 {
        None
    } else {
        if x & !constants == 0 {
            std::mem::swap(&mut x, &mut y);
        }
        let free = x & !constants;
        if free == 0 {
            return Err(AxiomError::Unverified);
        }
        Some(free.trailing_zeros() as usize)
    };
    let rows = all_rows(n, 2).into_iter().filter(|r| {
        let bit = |i: usize| r[i] == 1;
        let consts_ok = (0..n).all(|i| constants >> i & 1 == 0 || !bit(i));
        let parity_ok = parity.is_none_or(|p| {
            let ones = (0..n)
                .filter(|&i| i != p && (x | y) >> i & 1 == 1 && bit(i))
                .count();
            r[p] as usize == ones % 2
        });
        consts_ok && parity_ok
    });
    let vars: Vec<Var> = c.uni.set(c.uni.full()).into_iter().collect();
    let team = Team::from_rows(&vars, rows).expect("rows over the universe");
    let holds = |s: &IndStatement| {
        let l: VarTuple = s.lhs.iter().cloned().collect();
        let r: VarTuple = s.rhs.iter().cloned().collect();
        eval_indep(&team, &l, &r).expect("variables in team")
    };
    if !sigma.iter().all(holds) || holds(goal) {
        return Err(AxiomError::Unverified);
    }
    Ok(GppCounterexample {
        structure: Structure::pure(2),
        minimal_goal: IndStatement::new(c.uni.set(x), c.uni.set(y)),
        parity_variable: parity.map(|p| vars[p].clone()),
        constants: c.uni.set(constants),
        team,
    })
}

/// Statements derivable from `sigma` over the given variables; used by tests
/// and by the proof checker's documentation examples.
pub fn gpp_closure(sigma: &[IndStatement], vars: &VarSet) -> Result<Vec<Statement>, AxiomError> {
    let anchor = IndStatement::new(vars.clone(), VarSet::new());
    let c = Closure::new(sigma, &[&anchor])?;
    Ok((0..c.prov.len())
        .filter(|&i| c.has(i))
        .map(|i| c.statement(i).into())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::var;

    fn ind(l: &str, r: &str) -> IndStatement {
        IndStatement::of(l, r)
    }

    fn derives(sigma: &[IndStatement], goal: &IndStatement) -> bool {
        let (ok, proof) = gpp_derives(sigma, goal).unwrap();
        if let Some(p) = proof {
            let hyps: Vec<Statement> = sigma.iter().cloned().map(Into::into).collect();
            p.verify(&hyps).unwrap();
            assert_eq!(p.conclusion, goal.clone().into());
        }
        ok
    }

    #[test]
    fn constants_combine() {
        assert!(derives(&[ind("x", "x"), ind("y", "y")], &ind("x y", "x y")));
        assert!(derives(&[], &ind("x", "")));
        assert!(derives(&[], &ind("", "x")));
        assert!(!derives(&[ind("x", "y")], &ind("x", "x")));
        assert!(derives(&[ind("x", "y z")], &ind("z", "x")));
        assert!(derives(&[ind("x", "y"), ind("x y", "z")], &ind("x", "y z")));
    }

    #[test]
    fn parity_team_for_bare_goal() {
        let cx = gpp_counterexample(&[], &ind("x", "y")).unwrap();
        let expected =
            Team::from_rows(&[var("x"), var("y")], vec![vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(cx.team, expected);
        assert_eq!(cx.parity_variable, Some(var("x")));
    }

    #[test]
    fn self_independence_goal() {
        let cx = gpp_counterexample(&[ind("x", "y")], &ind("x", "x")).unwrap();
        assert_eq!(cx.parity_variable, None);
        assert_eq!(cx.team.len(), 4);
    }

    #[test]
    fn premises_survive() {
        let sigma = [ind("x", "y")];
        let cx = gpp_counterexample(&sigma, &ind("x", "z")).unwrap();
        assert_eq!(cx.minimal_goal, ind("x", "z"));
        let sigma = [ind("u", "u"), ind("x", "y")];
        let cx = gpp_counterexample(&sigma, &ind("x u", "z y")).unwrap();
        assert!(cx.constants.contains(&var("u")));
        assert!(cx.team.assignments().all(|a| a[&var("u")] == 0));
        assert!(matches!(
            gpp_counterexample(&sigma, &ind("x", "y u")),
            Err(AxiomError::Derivable)
        ));
    }

    #[test]
    fn closure_listing() {
        let vars: VarSet = [var("x")].into();
        let all = gpp_closure(&[], &vars).unwrap();
        // x _||_ (), () _||_ x, () _||_ ()
        assert_eq!(all.len(), 3);
    }
}
