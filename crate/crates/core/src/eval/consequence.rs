//! Bounded semantic consequence.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use super::{satisfies, EvalConfig, EvalError, Verdict};
use crate::formula::{Formula, Var};
use crate::structure::{all_rows, all_teams, Structure, Team};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Domain sizes `1..=max_domain` are tried.
    pub max_domain: usize,
    /// Most free variables the two formulas may have together.
    pub max_vars: usize,
    /// Most relation interpretations tried per domain size.
    pub max_interpretations: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds {
            max_domain: 3,
            max_vars: 2,
            max_interpretations: 1 << 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub structure: Structure,
    pub team: Team,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Consequence {
    /// No structure and team within the bounds satisfies the premise but not
    /// the conclusion.
    Holds,
    Fails(Countermodel),
    BudgetExhausted,
}

fn relation_symbols(fs: &[&Formula]) -> Result<BTreeMap<String, usize>, EvalError> {
    let mut out: BTreeMap<String, usize> = BTreeMap::new();
    let mut clash = None;
    for f in fs {
        f.walk(&mut |g| {
            if let Formula::Rel { symbol, args, .. } = g {
                let prev = *out.entry(symbol.to_string()).or_insert(args.len());
                if prev != args.len() {
                    clash = Some(EvalError::RelationArity {
                        name: symbol.to_string(),
                        expected: prev,
                        found: args.len(),
                    });
                }
            }
        });
    }
    match clash {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

fn interpretations(
    n: usize,
    symbols: &BTreeMap<String, usize>,
    cap: usize,
) -> Result<Vec<Structure>, EvalError> {
    let universes: Vec<(&String, usize, Vec<Vec<u32>>)> = symbols
        .iter()
        .map(|(name, &k)| (name, k, all_rows(k, n)))
        .collect();
    let bits: usize = universes.iter().map(|u| u.2.len()).sum();
    if bits >= 64 || (1u128 << bits) > cap as u128 {
        return Err(EvalError::BoundExceeded(format!(
            "2^{bits} relation interpretations at domain size {n}, bound is {cap}"
        )));
    }
    let mut out = Vec::with_capacity(1 << bits);
    for mask in 0..1u64 << bits {
        let mut m = Structure::pure(n);
        let mut offset = 0;
        for (name, k, rows) in &universes {
            let chosen = rows
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> (offset + i) & 1 == 1)
                .map(|(_, r)| r.clone());
            m = m
                .with_relation(name, *k, chosen)
                .expect("tuples drawn from the domain");
            offset += rows.len();
        }
        out.push(m);
    }
    Ok(out)
}

/// Searches for a structure and team satisfying `phi` but not `psi`.
///
/// Teams range over the free variables of both formulas; structures over
/// domain sizes `1..=bounds.max_domain` and every interpretation of the
/// relation symbols used. Structures are tried by size, then interpretation,
/// then team in bitmask order over lexicographically sorted rows.
pub fn consequence_check(
    phi: &Formula,
    psi: &Formula,
    bounds: &Bounds,
    cfg: &EvalConfig,
) -> Result<Consequence, EvalError> {
    let vars: BTreeSet<Var> = phi
        .free_variables()
        .into_iter()
        .chain(psi.free_variables())
        .collect();
    if vars.len() > bounds.max_vars {
        return Err(EvalError::BoundExceeded(format!(
            "{} free variables, bound is {}",
            vars.len(),
            bounds.max_vars
        )));
    }
    let symbols = relation_symbols(&[phi, psi])?;
    let start = Instant::now();
    for n in 1..=bounds.max_domain {
        for m in interpretations(n, &symbols, bounds.max_interpretations)? {
            let teams = all_teams(&vars, &m, cfg.row_bound)
                .map_err(|e| EvalError::BoundExceeded(e.to_string()))?;
            for team in teams {
                let remaining = cfg.time_budget.saturating_sub(start.elapsed());
                if remaining.is_zero() {
                    return Ok(Consequence::BudgetExhausted);
                }
                let local = cfg.clone().with_budget(remaining);
                match satisfies(&m, &team, phi, &local)?.verdict {
                    Verdict::NotSatisfied => continue,
                    Verdict::BudgetExhausted => return Ok(Consequence::BudgetExhausted),
                    Verdict::Satisfied => {}
                }
                match satisfies(&m, &team, psi, &local)?.verdict {
                    Verdict::Satisfied => {}
                    Verdict::BudgetExhausted => return Ok(Consequence::BudgetExhausted),
                    Verdict::NotSatisfied => {
                        return Ok(Consequence::Fails(Countermodel { structure: m, team }))
                    }
                }
            }
        }
    }
    Ok(Consequence::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::var;
    use crate::parse;

    fn check(a: &str, b: &str) -> Consequence {
        let bounds = Bounds {
            max_domain: 2,
            ..Bounds::default()
        };
        consequence_check(
            &parse(a).unwrap(),
            &parse(b).unwrap(),
            &bounds,
            &EvalConfig::default(),
        )
        .unwrap()
    }

    #[test]
    fn constancy_and_self_independence() {
        assert_eq!(check("dep(x)", "x _||_ x"), Consequence::Holds);
        assert_eq!(check("x _||_ x", "dep(x)"), Consequence::Holds);
        assert_eq!(check("x _||_ y", "y _||_ x"), Consequence::Holds);
    }

    #[test]
    fn dependence_is_not_symmetric() {
        let Consequence::Fails(cm) = check("dep(x, y)", "dep(y, x)") else {
            panic!("expected a countermodel");
        };
        assert_eq!(cm.structure.domain_size(), 2);
        let expected =
            Team::from_rows(&[var("x"), var("y")], vec![vec![0, 0], vec![1, 0]]).unwrap();
        assert_eq!(cm.team, expected);
    }

    #[test]
    fn relation_interpretations_are_enumerated() {
        assert_eq!(check("R(x)", "R(x) | x = x"), Consequence::Holds);
        assert!(matches!(check("R(x)", "A y R(y)"), Consequence::Fails(_)));
        assert!(matches!(check("x = x", "R(x)"), Consequence::Fails(_)));
    }

    #[test]
    fn bounds_are_enforced() {
        let f = parse("dep(x, y z)").unwrap();
        assert!(consequence_check(&f, &f, &Bounds::default(), &EvalConfig::default()).is_err());
    }
}
