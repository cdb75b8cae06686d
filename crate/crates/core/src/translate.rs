//! Rewriting atoms into other atom families.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::formula::{AtomKind, Formula, Var, VarTuple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("expected a {expected} atom, found `{found}`")]
    WrongKind {
        expected: &'static str,
        found: String,
    },
    #[error("no translation eliminates {0:?} atoms")]
    Unsupported(AtomKind),
}

/// Atom kinds [`eliminate_atoms`] can remove.
pub const ELIMINABLE: [AtomKind; 3] = [AtomKind::Constancy, AtomKind::Dep, AtomKind::Exclusion];

/// Hands out `_z1`, `_z2`, ... skipping names already in use.
#[derive(Debug, Clone)]
pub struct FreshVars {
    taken: BTreeSet<Var>,
    next: usize,
}

impl FreshVars {
    /// Avoids every variable occurring in `f`, bound or free.
    pub fn avoiding(f: &Formula) -> FreshVars {
        FreshVars {
            taken: f.all_variables(),
            next: 1,
        }
    }

    pub fn fresh(&mut self) -> Var {
        loop {
            let v = Var::new(&format!("_z{}", self.next)).expect("valid identifier");
            self.next += 1;
            if self.taken.insert(v.clone()) {
                return v;
            }
        }
    }
}

/// `dep(x)` becomes `x _||_ x`.
pub fn constancy_to_indep(f: &Formula) -> Result<Formula, TranslateError> {
    match f {
        Formula::Constancy(t) => Ok(Formula::indep(t.clone(), t.clone())),
        _ => Err(wrong("constancy", f)),
    }
}

/// `dep(x, y)` becomes `y _||_{x} y`.
pub fn dep_to_cond_indep(f: &Formula) -> Result<Formula, TranslateError> {
    match f {
        Formula::Dep {
            antecedent,
            consequent,
        } => Ok(Formula::cond_indep(
            antecedent.clone(),
            consequent.clone(),
            consequent.clone(),
        )),
        _ => Err(wrong("dependence", f)),
    }
}

/// `excl(x ; y)` becomes `E z (incl(x ; z) & y _||_ z & (y) != (z))` with
/// one fresh `z` per component.
pub fn exclusion_to_indep(f: &Formula, fresh: &mut FreshVars) -> Result<Formula, TranslateError> {
    let Formula::Exclusion(p) = f else {
        return Err(wrong("exclusion", f));
    };
    let z: VarTuple = (0..p.lhs().len()).map(|_| fresh.fresh()).collect();
    let body = Formula::and_all(vec![
        Formula::inclusion(p.lhs().clone(), z.clone()).expect("matching arity"),
        Formula::indep(p.rhs().clone(), z.clone()),
        Formula::tuple_diseq(p.rhs().clone(), z.clone()).expect("matching arity"),
    ]);
    Ok(z.iter()
        .rev()
        .fold(body, |acc, v| Formula::exists(v.clone(), acc)))
}

fn wrong(expected: &'static str, f: &Formula) -> TranslateError {
    TranslateError::WrongKind {
        expected,
        found: f.to_string(),
    }
}

/// Replaces every atom of the target kinds by its translation. Fresh
/// variables avoid every variable of `f` and each other.
pub fn eliminate_atoms(
    f: &Formula,
    targets: &BTreeSet<AtomKind>,
) -> Result<Formula, TranslateError> {
    if let Some(k) = targets.iter().find(|k| !ELIMINABLE.contains(k)) {
        return Err(TranslateError::Unsupported(*k));
    }
    let mut fresh = FreshVars::avoiding(f);
    Ok(rewrite(f, targets, &mut fresh))
}

fn rewrite(f: &Formula, targets: &BTreeSet<AtomKind>, fresh: &mut FreshVars) -> Formula {
    let mut go = |g: &Formula| Box::new(rewrite(g, targets, fresh));
    match f {
        Formula::Constancy(_) if targets.contains(&AtomKind::Constancy) => {
            constancy_to_indep(f).expect("constancy atom")
        }
        Formula::Dep { .. } if targets.contains(&AtomKind::Dep) => {
            dep_to_cond_indep(f).expect("dependence atom")
        }
        Formula::Exclusion(_) if targets.contains(&AtomKind::Exclusion) => {
            exclusion_to_indep(f, fresh).expect("exclusion atom")
        }
        Formula::And(a, b) => Formula::And(go(a), go(b)),
        Formula::Or(a, b) => Formula::Or(go(a), go(b)),
        Formula::LinImp(a, b) => Formula::LinImp(go(a), go(b)),
        Formula::Exists(v, body) => Formula::Exists(v.clone(), go(body)),
        Formula::Forall(v, body) => Formula::Forall(v.clone(), go(body)),
        Formula::SlashExists {
            var,
            independent_of,
            body,
        } => Formula::SlashExists {
            var: var.clone(),
            independent_of: independent_of.clone(),
            body: go(body),
        },
        _ => f.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;

    fn all() -> BTreeSet<AtomKind> {
        ELIMINABLE.into_iter().collect()
    }

    #[test]
    fn single_translations() {
        assert_eq!(
            constancy_to_indep(&parse("dep(x)").unwrap()).unwrap(),
            parse("x _||_ x").unwrap()
        );
        assert_eq!(
            constancy_to_indep(&parse("dep(x y)").unwrap()).unwrap(),
            parse("x y _||_ x y").unwrap()
        );
        assert_eq!(
            dep_to_cond_indep(&parse("dep(x, y)").unwrap()).unwrap(),
            parse("y _||_{x} y").unwrap()
        );
        assert_eq!(
            dep_to_cond_indep(&parse("dep(; x y)").unwrap()).unwrap(),
            parse("x y _||_{} x y").unwrap()
        );
        assert!(dep_to_cond_indep(&parse("dep(x)").unwrap()).is_err());
        assert!(constancy_to_indep(&parse("x = y").unwrap()).is_err());
    }

    #[test]
    fn exclusion_translation() {
        let f = parse("excl(x ; y)").unwrap();
        let mut fresh = FreshVars::avoiding(&f);
        assert_eq!(
            exclusion_to_indep(&f, &mut fresh).unwrap(),
            parse("E _z1 (incl(x ; _z1) & y _||_ _z1 & (y) != (_z1))").unwrap()
        );
        let f = parse("excl(x _z1 ; y u)").unwrap();
        let mut fresh = FreshVars::avoiding(&f);
        assert_eq!(
            exclusion_to_indep(&f, &mut fresh).unwrap().to_string(),
            "E _z2 E _z3 (incl(x _z1 ; _z2 _z3) & y u _||_ _z2 _z3 & (y u) != (_z2 _z3))"
        );
    }

    #[test]
    fn elimination() {
        let f = parse("dep(x) | excl(u ; v)").unwrap();
        assert_eq!(
            eliminate_atoms(&f, &all()).unwrap(),
            parse("x _||_ x | E _z1 (incl(u ; _z1) & v _||_ _z1 & (v) != (_z1))").unwrap()
        );
        let g = parse("A x E y (x = y & R(x))").unwrap();
        assert_eq!(eliminate_atoms(&g, &all()).unwrap(), g);
        let h = parse("excl(x ; y) & E _z1 excl(_z1 ; x)").unwrap();
        let out = eliminate_atoms(&h, &all()).unwrap();
        assert!(!out.contains_atom(AtomKind::Exclusion));
        assert_eq!(
            out.all_variables().len(),
            h.all_variables().len() + 2,
            "{out}"
        );
        let only_dep: BTreeSet<_> = [AtomKind::Dep].into();
        let k = parse("dep(x) & dep(x, y)").unwrap();
        assert_eq!(
            eliminate_atoms(&k, &only_dep).unwrap(),
            parse("dep(x) & y _||_{x} y").unwrap()
        );
        let bad: BTreeSet<_> = [AtomKind::Inclusion].into();
        assert!(eliminate_atoms(&k, &bad).is_err());
    }
}
