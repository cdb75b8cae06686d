//! Functional dependencies: attribute closure, proofs and two-row
//! counterexamples.

use super::{AxiomError, Derivation, FdStatement, Rule, Statement, VarSet};
use crate::eval::eval_dep;
use crate::formula::VarTuple;
use crate::structure::{Structure, Team};

/// Smallest superset of `start` closed under every dependency in `sigma`,
/// with the dependencies in the order they first fired.
pub fn closure<'a>(sigma: &'a [FdStatement], start: &VarSet) -> (VarSet, Vec<&'a FdStatement>) {
    let mut v = start.clone();
    let mut fired = Vec::new();
    loop {
        let next = sigma
            .iter()
            .find(|s| s.antecedent.is_subset(&v) && !s.consequent.is_subset(&v));
        match next {
            Some(s) => {
                v.extend(s.consequent.iter().cloned());
                fired.push(s);
            }
            None => return (v, fired),
        }
    }
}

fn fd(a: &VarSet, c: &VarSet) -> Statement {
    FdStatement::new(a.clone(), c.clone()).into()
}

/// `dep(v, a)` for `a ⊆ v`: A1 then A2.
fn projection(v: &VarSet, a: &VarSet) -> Derivation {
    let refl = Derivation::leaf(fd(a, a), Rule::A1);
    if a == v {
        refl
    } else {
        Derivation::step(fd(v, a), Rule::A2, vec![refl])
    }
}

fn transitivity(first: Derivation, second: Derivation) -> Derivation {
    let (Statement::Fd(p), Statement::Fd(q)) = (&first.conclusion, &second.conclusion) else {
        unreachable!("dependency derivations")
    };
    if q.antecedent == q.consequent {
        return first;
    }
    if p.antecedent == p.consequent {
        return second;
    }
    let c = fd(&p.antecedent, &q.consequent);
    Derivation::step(c, Rule::A4, vec![first, second])
}

/// Decides whether `sigma` derives `goal`, with a proof when it does.
///
/// The closure of the goal's antecedent is computed by repeatedly firing
/// dependencies; the proof replays each firing with A1, A2, A4 and union.
pub fn armstrong_derives(sigma: &[FdStatement], goal: &FdStatement) -> (bool, Option<Derivation>) {
    let y = &goal.antecedent;
    let (closed, fired) = closure(sigma, y);
    if !goal.consequent.is_subset(&closed) {
        return (false, None);
    }
    // invariant: `acc` derives dep(y, v)
    let mut v = y.clone();
    let mut acc = Derivation::leaf(fd(y, y), Rule::A1);
    for s in fired {
        let y_to_a = if s.antecedent.is_subset(y) {
            projection(y, &s.antecedent)
        } else {
            transitivity(acc.clone(), projection(&v, &s.antecedent))
        };
        let hyp = Derivation::leaf(s.clone().into(), Rule::Hypothesis);
        let y_to_b = transitivity(y_to_a, hyp);
        v.extend(s.consequent.iter().cloned());
        acc = Derivation::step(fd(y, &v), Rule::Union, vec![acc, y_to_b]);
    }
    let proof = if v == goal.consequent {
        acc
    } else {
        transitivity(acc, projection(&v, &goal.consequent))
    };
    (true, Some(proof))
}

/// Two rows over `{0, 1}`: the closure of the goal's antecedent is 0 in both,
/// every other variable is 0 in the first row and 1 in the second.
pub fn armstrong_counterexample(
    sigma: &[FdStatement],
    goal: &FdStatement,
) -> Result<(Structure, Team), AxiomError> {
    let (closed, _) = closure(sigma, &goal.antecedent);
    if goal.consequent.is_subset(&closed) {
        return Err(AxiomError::Derivable);
    }
    let mut vars: VarSet = goal.antecedent.union(&goal.consequent).cloned().collect();
    for s in sigma {
        vars.extend(s.antecedent.iter().chain(&s.consequent).cloned());
    }
    let vars: Vec<_> = vars.into_iter().collect();
    let second = vars
        .iter()
        .map(|v| u32::from(!closed.contains(v)))
        .collect();
    let team = Team::from_rows(&vars, vec![vec![0; vars.len()], second]).expect("well-formed rows");
    let holds = |s: &FdStatement| {
        let a: VarTuple = s.antecedent.iter().cloned().collect();
        let c: VarTuple = s.consequent.iter().cloned().collect();
        eval_dep(&team, &a, &c).expect("variables in team")
    };
    if sigma.iter().all(holds) && !holds(goal) {
        Ok((Structure::pure(2), team))
    } else {
        Err(AxiomError::Unverified)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::var;

    fn sigma(items: &[(&str, &str)]) -> Vec<FdStatement> {
        items.iter().map(|(a, c)| FdStatement::of(a, c)).collect()
    }

    fn derives(s: &[FdStatement], goal: &FdStatement) -> bool {
        let (ok, proof) = armstrong_derives(s, goal);
        if let Some(p) = &proof {
            let hyps: Vec<Statement> = s.iter().cloned().map(Into::into).collect();
            p.verify(&hyps).unwrap();
            assert_eq!(p.conclusion, goal.clone().into());
        }
        assert_eq!(ok, proof.is_some());
        ok
    }

    #[test]
    fn transitivity_and_reflexivity() {
        let s = sigma(&[("x", "y"), ("y", "z")]);
        assert!(derives(&s, &FdStatement::of("x", "z")));
        assert!(derives(&[], &FdStatement::of("x", "x")));
        assert!(derives(&[], &FdStatement::of("x y", "x")));
        assert!(derives(&[], &FdStatement::of("x", "")));
        assert!(!derives(&sigma(&[("x", "y")]), &FdStatement::of("y", "x")));
    }

    #[test]
    fn union_of_consequents() {
        let s = sigma(&[("x", "y"), ("x", "z")]);
        assert!(derives(&s, &FdStatement::of("x", "y z")));
        assert!(derives(&s, &FdStatement::of("x", "x y z")));
        let s = sigma(&[("x", "y"), ("x y", "z"), ("", "w")]);
        assert!(derives(&s, &FdStatement::of("x", "z w")));
        assert!(!derives(&s, &FdStatement::of("z", "x")));
    }

    #[test]
    fn counterexample_teams() {
        let s = sigma(&[("x", "y")]);
        let (m, t) = armstrong_counterexample(&s, &FdStatement::of("y", "x")).unwrap();
        assert_eq!(m.domain_size(), 2);
        assert_eq!(
            t,
            Team::from_rows(&[var("y"), var("x")], vec![vec![0, 0], vec![0, 1]]).unwrap()
        );
        let (_, t) = armstrong_counterexample(&[], &FdStatement::of("", "x")).unwrap();
        assert_eq!(
            t,
            Team::from_rows(&[var("x")], vec![vec![0], vec![1]]).unwrap()
        );
        let s = sigma(&[("x", "y"), ("y", "z")]);
        let (_, t) = armstrong_counterexample(&s, &FdStatement::of("z", "x")).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(
            armstrong_counterexample(&s, &FdStatement::of("x", "z")),
            Err(AxiomError::Derivable)
        );
    }
}
