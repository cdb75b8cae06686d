//! Team-level checks for the dependency atoms.

use std::collections::{HashMap, HashSet};

use super::EvalError;
use crate::formula::VarTuple;
use crate::structure::{Element, Team};

pub(crate) type Row = Vec<Element>;

pub(crate) fn project(row: &[Element], cols: &[usize]) -> Row {
    cols.iter().map(|&c| row[c]).collect()
}

fn same_on(a: &[Element], b: &[Element], cols: &[usize]) -> bool {
    cols.iter().all(|&c| a[c] == b[c])
}

pub(crate) fn dep(rows: &[Row], ante: &[usize], cons: &[usize]) -> bool {
    let mut seen: HashMap<Row, Row> = HashMap::with_capacity(rows.len());
    rows.iter().all(|r| {
        let val = project(r, cons);
        match seen.entry(project(r, ante)) {
            std::collections::hash_map::Entry::Occupied(e) => *e.get() == val,
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(val);
                true
            }
        }
    })
}

pub(crate) fn indep(rows: &[Row], lhs: &[usize], rhs: &[usize]) -> bool {
    let mut ls = HashSet::new();
    let mut rs = HashSet::new();
    let mut pairs = HashSet::new();
    for r in rows {
        let (a, b) = (project(r, lhs), project(r, rhs));
        ls.insert(a.clone());
        rs.insert(b.clone());
        pairs.insert((a, b));
    }
    pairs.len() == ls.len() * rs.len()
}

pub(crate) fn cond_indep(rows: &[Row], cond: &[usize], lhs: &[usize], rhs: &[usize]) -> bool {
    let mut groups: HashMap<Row, Vec<Row>> = HashMap::new();
    for r in rows {
        groups.entry(project(r, cond)).or_default().push(r.clone());
    }
    groups.values().all(|g| indep(g, lhs, rhs))
}

pub(crate) fn inclusion(rows: &[Row], lhs: &[usize], rhs: &[usize]) -> bool {
    let targets: HashSet<Row> = rows.iter().map(|r| project(r, rhs)).collect();
    rows.iter().all(|r| targets.contains(&project(r, lhs)))
}

pub(crate) fn exclusion(rows: &[Row], lhs: &[usize], rhs: &[usize]) -> bool {
    let left: HashSet<Row> = rows.iter().map(|r| project(r, lhs)).collect();
    rows.iter().all(|r| !left.contains(&project(r, rhs)))
}

/// Whether two rows, taken together, are compatible with a dependence atom.
pub(crate) fn dep_pair(a: &[Element], b: &[Element], ante: &[usize], cons: &[usize]) -> bool {
    !same_on(a, b, ante) || same_on(a, b, cons)
}

pub(crate) fn excl_pair(a: &[Element], b: &[Element], lhs: &[usize], rhs: &[usize]) -> bool {
    let differs = |p: &[Element], q: &[Element]| lhs.iter().zip(rhs).any(|(&l, &r)| p[l] != q[r]);
    differs(a, b) && differs(b, a)
}

fn columns(team: &Team, t: &VarTuple) -> Result<Vec<usize>, EvalError> {
    t.iter()
        .map(|v| {
            team.column(v)
                .ok_or_else(|| EvalError::UnknownVariable(v.clone()))
        })
        .collect()
}

fn check_arity(x: &VarTuple, y: &VarTuple) -> Result<(), EvalError> {
    if x.len() == y.len() {
        Ok(())
    } else {
        Err(EvalError::ArityMismatch {
            left: x.len(),
            right: y.len(),
        })
    }
}

/// `dep(y, x)` on `team`: rows agreeing on `y` agree on `x`.
pub fn eval_dep(team: &Team, y: &VarTuple, x: &VarTuple) -> Result<bool, EvalError> {
    Ok(dep(team.rows(), &columns(team, y)?, &columns(team, x)?))
}

/// `x _||_ y` on `team`.
pub fn eval_indep(team: &Team, x: &VarTuple, y: &VarTuple) -> Result<bool, EvalError> {
    Ok(indep(team.rows(), &columns(team, x)?, &columns(team, y)?))
}

/// `y _||_{x} z` on `team`.
pub fn eval_cond_indep(
    team: &Team,
    x: &VarTuple,
    y: &VarTuple,
    z: &VarTuple,
) -> Result<bool, EvalError> {
    Ok(cond_indep(
        team.rows(),
        &columns(team, x)?,
        &columns(team, y)?,
        &columns(team, z)?,
    ))
}

/// `incl(x ; y)` on `team`.
pub fn eval_inclusion(team: &Team, x: &VarTuple, y: &VarTuple) -> Result<bool, EvalError> {
    check_arity(x, y)?;
    Ok(inclusion(
        team.rows(),
        &columns(team, x)?,
        &columns(team, y)?,
    ))
}

/// `excl(x ; y)` on `team`.
pub fn eval_exclusion(team: &Team, x: &VarTuple, y: &VarTuple) -> Result<bool, EvalError> {
    check_arity(x, y)?;
    Ok(exclusion(
        team.rows(),
        &columns(team, x)?,
        &columns(team, y)?,
    ))
}
