//! Finite relational structures, assignments and teams.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::Var;

/// Domain elements are the indices `0..domain_size`.
pub type Element = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("domain size must be positive")]
    EmptyDomain,
    #[error("relation {name}: tuple {tuple:?} does not have arity {arity}")]
    TupleArity {
        name: String,
        arity: usize,
        tuple: Vec<Element>,
    },
    #[error("element {element} is outside the domain 0..{domain_size}")]
    OutOfDomain {
        element: Element,
        domain_size: usize,
    },
    #[error("row {row:?} does not match the variable domain {vars:?}")]
    RowShape { vars: Vec<Var>, row: Vec<Element> },
    #[error("variable {0} listed twice")]
    DuplicateVariable(Var),
    #[error("empty witness set for row {0}")]
    EmptyWitness(usize),
    #[error("witness map has {got} entries for a team of {expected} rows")]
    WitnessShape { expected: usize, got: usize },
    #[error("{universe} candidate rows exceed the enumeration bound {bound}")]
    BoundExceeded { universe: u128, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub arity: usize,
    pub tuples: BTreeSet<Vec<Element>>,
}

/// A finite structure over the domain `{0, .., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    domain_size: usize,
    relations: BTreeMap<String, Relation>,
}

impl Structure {
    /// A structure of the empty vocabulary.
    pub fn new(domain_size: usize) -> Result<Structure, StructureError> {
        if domain_size == 0 {
            return Err(StructureError::EmptyDomain);
        }
        Ok(Structure {
            domain_size,
            relations: BTreeMap::new(),
        })
    }

    /// # Panics
    /// If `domain_size` is zero.
    pub fn pure(domain_size: usize) -> Structure {
        Structure::new(domain_size).expect("positive domain size")
    }

    pub fn with_relation(
        mut self,
        name: &str,
        arity: usize,
        tuples: impl IntoIterator<Item = Vec<Element>>,
    ) -> Result<Structure, StructureError> {
        let mut set = BTreeSet::new();
        for t in tuples {
            if t.len() != arity {
                return Err(StructureError::TupleArity {
                    name: name.to_string(),
                    arity,
                    tuple: t,
                });
            }
            for &e in &t {
                self.check_element(e)?;
            }
            set.insert(t);
        }
        self.relations
            .insert(name.to_string(), Relation { arity, tuples: set });
        Ok(self)
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        0..self.domain_size as Element
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.get(name)
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, &Relation)> {
        self.relations.iter().map(|(k, v)| (k.as_str(), v))
    }

    fn check_element(&self, e: Element) -> Result<(), StructureError> {
        if (e as usize) < self.domain_size {
            Ok(())
        } else {
            Err(StructureError::OutOfDomain {
                element: e,
                domain_size: self.domain_size,
            })
        }
    }
}

/// A total map from a set of variables to elements.
pub type Assignment = BTreeMap<Var, Element>;

/// A set of assignments sharing one variable domain.
///
/// Rows are stored positionally against the sorted variable list and kept
/// sorted and deduplicated, so two teams are equal iff they contain the same
/// assignments.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Team {
    vars: Vec<Var>,
    rows: Vec<Vec<Element>>,
}

impl Team {
    /// The empty team over `vars`.
    pub fn empty(vars: impl IntoIterator<Item = Var>) -> Team {
        let vars: BTreeSet<Var> = vars.into_iter().collect();
        Team {
            vars: vars.into_iter().collect(),
            rows: Vec::new(),
        }
    }

    /// The team holding only the empty assignment.
    pub fn unit() -> Team {
        Team {
            vars: Vec::new(),
            rows: vec![Vec::new()],
        }
    }

    /// Builds a team from rows whose values follow the order of `vars`.
    pub fn from_rows(
        vars: &[Var],
        rows: impl IntoIterator<Item = Vec<Element>>,
    ) -> Result<Team, StructureError> {
        let mut sorted: Vec<(Var, usize)> = vars.iter().cloned().zip(0..).collect();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(StructureError::DuplicateVariable(w[0].0.clone()));
            }
        }
        let mut out = Vec::new();
        for row in rows {
            if row.len() != vars.len() {
                return Err(StructureError::RowShape {
                    vars: vars.to_vec(),
                    row,
                });
            }
            out.push(sorted.iter().map(|&(_, i)| row[i]).collect());
        }
        Ok(Team::from_sorted_parts(
            sorted.into_iter().map(|(v, _)| v).collect(),
            out,
        ))
    }

    pub fn from_assignments(
        vars: impl IntoIterator<Item = Var>,
        rows: impl IntoIterator<Item = Assignment>,
    ) -> Result<Team, StructureError> {
        let mut team = Team::empty(vars);
        for a in rows {
            if a.len() != team.vars.len() || !team.vars.iter().all(|v| a.contains_key(v)) {
                return Err(StructureError::RowShape {
                    vars: team.vars.clone(),
                    row: a.values().copied().collect(),
                });
            }
            team.rows.push(a.into_values().collect());
        }
        team.normalize();
        Ok(team)
    }

    /// `vars` must be sorted and unique; rows are positional against it.
    pub(crate) fn from_sorted_parts(vars: Vec<Var>, rows: Vec<Vec<Element>>) -> Team {
        debug_assert!(vars.windows(2).all(|w| w[0] < w[1]));
        let mut t = Team { vars, rows };
        t.normalize();
        t
    }

    fn normalize(&mut self) {
        self.rows.sort_unstable();
        self.rows.dedup();
    }

    /// The variable domain, sorted.
    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn column(&self, v: &Var) -> Option<usize> {
        self.vars.binary_search(v).ok()
    }

    /// Rows as value vectors aligned with [`Team::vars`], in sorted order.
    pub fn rows(&self) -> &[Vec<Element>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn assignment(&self, i: usize) -> Assignment {
        self.vars
            .iter()
            .cloned()
            .zip(self.rows[i].iter().copied())
            .collect()
    }

    pub fn assignments(&self) -> impl Iterator<Item = Assignment> + '_ {
        (0..self.rows.len()).map(|i| self.assignment(i))
    }

    pub fn contains(&self, a: &Assignment) -> bool {
        if a.len() != self.vars.len() {
            return false;
        }
        let row: Option<Vec<Element>> = self.vars.iter().map(|v| a.get(v).copied()).collect();
        row.is_some_and(|r| self.rows.binary_search(&r).is_ok())
    }

    /// Subteam of the rows whose indices have their bit set in `mask`.
    pub fn subteam(&self, mask: u64) -> Team {
        Team {
            vars: self.vars.clone(),
            rows: self
                .rows
                .iter()
                .enumerate()
                .filter(|(i, _)| *i < 64 && mask >> i & 1 == 1)
                .map(|(_, r)| r.clone())
                .collect(),
        }
    }

    /// Union of two teams over the same variable domain.
    pub fn union(&self, other: &Team) -> Team {
        assert_eq!(
            self.vars, other.vars,
            "union of teams over different domains"
        );
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Team::from_sorted_parts(self.vars.clone(), rows)
    }

    pub fn is_subteam_of(&self, other: &Team) -> bool {
        self.vars == other.vars
            && self
                .rows
                .iter()
                .all(|r| other.rows.binary_search(r).is_ok())
    }

    /// Position where `x` lives, or would be inserted, in the sorted domain.
    fn slot(&self, x: &Var) -> (usize, bool) {
        match self.vars.binary_search(x) {
            Ok(i) => (i, false),
            Err(i) => (i, true),
        }
    }

    fn extended_vars(&self, x: &Var) -> Vec<Var> {
        let mut vars = self.vars.clone();
        if let (i, true) = self.slot(x) {
            vars.insert(i, x.clone());
        }
        vars
    }
}

/// `s(a/x)` on a positional row: overwrite or insert at `col`.
pub(crate) fn with_value(row: &[Element], col: usize, insert: bool, a: Element) -> Vec<Element> {
    let mut r = Vec::with_capacity(row.len() + insert as usize);
    r.extend_from_slice(&row[..col]);
    r.push(a);
    let rest = if insert { col } else { col + 1 };
    r.extend_from_slice(&row[rest..]);
    r
}

impl fmt::Debug for Team {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Team{:?}{:?}", self.vars, self.rows)
    }
}

impl fmt::Display for Team {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let cells: Vec<String> = self
                    .vars
                    .iter()
                    .zip(r)
                    .map(|(v, a)| format!("{v}:{a}"))
                    .collect();
                format!("{{{}}}", cells.join(", "))
            })
            .collect();
        write!(f, "{{{}}}", rows.join(", "))
    }
}

/// Per-row witness sets for an existential extension, aligned with the
/// row order of the team being extended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessMap(Vec<BTreeSet<Element>>);

impl WitnessMap {
    pub fn new(sets: Vec<BTreeSet<Element>>) -> WitnessMap {
        WitnessMap(sets)
    }

    pub fn from_fn(team: &Team, mut f: impl FnMut(&Assignment) -> BTreeSet<Element>) -> WitnessMap {
        WitnessMap(team.assignments().map(|a| f(&a)).collect())
    }

    /// Single-valued witnesses.
    pub fn strict(team: &Team, mut f: impl FnMut(&Assignment) -> Element) -> WitnessMap {
        WitnessMap::from_fn(team, |a| BTreeSet::from([f(a)]))
    }

    pub fn sets(&self) -> &[BTreeSet<Element>] {
        &self.0
    }
}

/// `{ s(a/x) : s in team, a in M }`.
pub fn extend_universal(team: &Team, x: &Var, m: &Structure) -> Team {
    let (col, insert) = team.slot(x);
    let rows = team
        .rows
        .iter()
        .flat_map(|r| m.elements().map(move |a| with_value(r, col, insert, a)))
        .collect();
    Team::from_sorted_parts(team.extended_vars(x), rows)
}

/// `{ s(a/x) : s in team, a in W(s) }`.
pub fn extend_existential(team: &Team, x: &Var, w: &WitnessMap) -> Result<Team, StructureError> {
    if w.0.len() != team.len() {
        return Err(StructureError::WitnessShape {
            expected: team.len(),
            got: w.0.len(),
        });
    }
    if let Some(i) = w.0.iter().position(BTreeSet::is_empty) {
        return Err(StructureError::EmptyWitness(i));
    }
    let (col, insert) = team.slot(x);
    let rows = team
        .rows
        .iter()
        .zip(&w.0)
        .flat_map(|(r, set)| set.iter().map(move |&a| with_value(r, col, insert, a)))
        .collect();
    Ok(Team::from_sorted_parts(team.extended_vars(x), rows))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitMode {
    /// Disjoint pairs only: `2^n` splits.
    Partitions,
    /// Every pair whose union is the team: `3^n` splits.
    Covers,
}

/// All pairs `(left, right)` with `left ∪ right = team`, lazily.
pub fn covers(team: &Team, mode: SplitMode) -> impl Iterator<Item = (Team, Team)> + '_ {
    let n = team.len() as u32;
    let base: u64 = match mode {
        SplitMode::Partitions => 2,
        SplitMode::Covers => 3,
    };
    let total = base.checked_pow(n).expect("team too large to split");
    (0..total).map(move |mut code| {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for r in &team.rows {
            // 0: left only, 1: right only, 2: both
            match code % base {
                0 => left.push(r.clone()),
                1 => right.push(r.clone()),
                _ => {
                    left.push(r.clone());
                    right.push(r.clone());
                }
            }
            code /= base;
        }
        (
            Team {
                vars: team.vars.clone(),
                rows: left,
            },
            Team {
                vars: team.vars.clone(),
                rows: right,
            },
        )
    })
}

/// Default bound on `|M|^|vars|` for [`all_teams`].
pub const DEFAULT_ROW_BOUND: usize = 16;

/// Every assignment of `vars` (sorted) into the domain, in lexicographic order.
pub fn all_rows(width: usize, domain_size: usize) -> Vec<Vec<Element>> {
    let mut rows = vec![Vec::new()];
    for _ in 0..width {
        rows = rows
            .into_iter()
            .flat_map(|r| {
                (0..domain_size as Element).map(move |a| {
                    let mut r = r.clone();
                    r.push(a);
                    r
                })
            })
            .collect();
    }
    rows
}

/// Enumerates all `2^(|M|^|vars|)` teams over `vars`, in order of the bitmask
/// over lexicographically sorted rows.
pub fn all_teams(
    vars: &BTreeSet<Var>,
    m: &Structure,
    row_bound: usize,
) -> Result<impl Iterator<Item = Team>, StructureError> {
    let universe = (m.domain_size() as u128).checked_pow(vars.len() as u32);
    match universe {
        Some(u) if u <= row_bound as u128 && u < 64 => {}
        _ => {
            return Err(StructureError::BoundExceeded {
                universe: universe.unwrap_or(u128::MAX),
                bound: row_bound,
            })
        }
    }
    let vars: Vec<Var> = vars.iter().cloned().collect();
    let universe = all_rows(vars.len(), m.domain_size());
    let full = Team {
        vars,
        rows: universe,
    };
    let count = 1u64 << full.len();
    Ok((0..count).map(move |mask| full.subteam(mask)))
}

/// Version tag written to and accepted from model documents.
pub const FORMAT_VERSION: u32 = 1;

/// JSON document describing a structure and, optionally, a team.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDoc {
    #[serde(default = "default_version")]
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain_size: Option<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub relations: BTreeMap<String, Vec<Vec<Element>>>,
    /// Declares the variable domain; needed for an empty team.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub team: Option<Vec<BTreeMap<String, Element>>>,
}

fn default_version() -> u32 {
    FORMAT_VERSION
}

#[derive(Debug, Error)]
pub enum DocError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("document has no `{0}` field")]
    Missing(&'static str),
    #[error("relation {0} has tuples of different lengths")]
    MixedArity(String),
    #[error("invalid variable name {0:?}")]
    BadVariable(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

impl ModelDoc {
    pub fn parse(text: &str) -> Result<ModelDoc, DocError> {
        let doc: ModelDoc = serde_json::from_str(text)?;
        if doc.version != FORMAT_VERSION {
            return Err(DocError::Version(doc.version));
        }
        Ok(doc)
    }

    pub fn structure(&self) -> Result<Structure, DocError> {
        let n = self.domain_size.ok_or(DocError::Missing("domain_size"))?;
        let mut m = Structure::new(n)?;
        for (name, tuples) in &self.relations {
            let arity = tuples.first().map_or(0, Vec::len);
            if tuples.iter().any(|t| t.len() != arity) {
                return Err(DocError::MixedArity(name.clone()));
            }
            m = m.with_relation(name, arity, tuples.iter().cloned())?;
        }
        Ok(m)
    }

    pub fn team(&self) -> Result<Team, DocError> {
        let rows = self.team.as_ref().ok_or(DocError::Missing("team"))?;
        let parse_var = |s: &String| Var::new(s).map_err(|_| DocError::BadVariable(s.clone()));
        let vars: BTreeSet<Var> = match (&self.variables, rows.first()) {
            (Some(vs), _) => vs.iter().map(parse_var).collect::<Result<_, _>>()?,
            (None, Some(first)) => first.keys().map(parse_var).collect::<Result<_, _>>()?,
            (None, None) => BTreeSet::new(),
        };
        let mut assignments = Vec::new();
        for row in rows {
            let a: Assignment = row
                .iter()
                .map(|(k, &v)| Ok((parse_var(k)?, v)))
                .collect::<Result<_, DocError>>()?;
            if let Some(n) = self.domain_size {
                if let Some(&bad) = a.values().find(|&&e| e as usize >= n) {
                    return Err(StructureError::OutOfDomain {
                        element: bad,
                        domain_size: n,
                    }
                    .into());
                }
            }
            assignments.push(a);
        }
        Ok(Team::from_assignments(vars, assignments)?)
    }

    pub fn from_parts(m: &Structure, team: Option<&Team>) -> ModelDoc {
        ModelDoc {
            version: FORMAT_VERSION,
            domain_size: Some(m.domain_size()),
            relations: m
                .relations()
                .map(|(k, r)| (k.to_string(), r.tuples.iter().cloned().collect()))
                .collect(),
            variables: team.map(|t| t.vars().iter().map(|v| v.name().to_string()).collect()),
            team: team.map(|t| {
                t.assignments()
                    .map(|a| {
                        a.into_iter()
                            .map(|(k, v)| (k.name().to_string(), v))
                            .collect()
                    })
                    .collect()
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model documents always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::var;
    use proptest::prelude::*;

    fn xy_team(rows: &[[Element; 2]]) -> Team {
        Team::from_rows(&[var("x"), var("y")], rows.iter().map(|r| r.to_vec())).unwrap()
    }

    #[test]
    fn universal_extension() {
        let m2 = Structure::pure(2);
        let t = extend_universal(&Team::unit(), &var("x"), &m2);
        assert_eq!(
            t,
            Team::from_rows(&[var("x")], vec![vec![0], vec![1]]).unwrap()
        );
        let empty = Team::empty([var("y")]);
        assert!(extend_universal(&empty, &var("x"), &m2).is_empty());
        let m3 = Structure::pure(3);
        let t = Team::from_rows(&[var("y")], vec![vec![0]]).unwrap();
        let ext = extend_universal(&t, &var("x"), &m3);
        assert_eq!(ext.len(), 3);
        assert!(ext.assignments().all(|a| a[&var("y")] == 0));
    }

    #[test]
    fn universal_overwrites_existing_variable() {
        let t = xy_team(&[[0, 0], [0, 1]]);
        let ext = extend_universal(&t, &var("x"), &Structure::pure(2));
        assert_eq!(ext, xy_team(&[[0, 0], [0, 1], [1, 0], [1, 1]]));
    }

    #[test]
    fn existential_extension() {
        let s = Team::from_rows(&[var("y")], vec![vec![0], vec![1]]).unwrap();
        let w = WitnessMap::strict(&s, |_| 0);
        let t = extend_existential(&s, &var("x"), &w).unwrap();
        assert_eq!(t, xy_team(&[[0, 0], [0, 1]]));
        let w = WitnessMap::strict(&s, |a| a[&var("y")]);
        let t = extend_existential(&s, &var("x"), &w).unwrap();
        assert!(t.assignments().all(|a| a[&var("x")] == a[&var("y")]));
        let empty = Team::empty([var("y")]);
        assert!(
            extend_existential(&empty, &var("x"), &WitnessMap::new(vec![]))
                .unwrap()
                .is_empty()
        );
        let bad = WitnessMap::new(vec![BTreeSet::new(), BTreeSet::from([1])]);
        assert_eq!(
            extend_existential(&s, &var("x"), &bad),
            Err(StructureError::EmptyWitness(0))
        );
    }

    #[test]
    fn cover_counts() {
        let one = Team::from_rows(&[var("x")], vec![vec![0]]).unwrap();
        let pairs: Vec<_> = covers(&one, SplitMode::Covers).collect();
        assert_eq!(pairs.len(), 3);
        assert!(pairs.contains(&(one.clone(), Team::empty([var("x")]))));
        assert!(pairs.contains(&(Team::empty([var("x")]), one.clone())));
        assert!(pairs.contains(&(one.clone(), one.clone())));
        assert_eq!(
            covers(&Team::empty([var("x")]), SplitMode::Covers).count(),
            1
        );
        assert_eq!(
            covers(&xy_team(&[[0, 0], [1, 1]]), SplitMode::Covers).count(),
            9
        );
    }

    #[test]
    fn team_enumeration() {
        let m2 = Structure::pure(2);
        let x: BTreeSet<Var> = [var("x")].into();
        let teams: Vec<_> = all_teams(&x, &m2, 16).unwrap().collect();
        assert_eq!(teams.len(), 4);
        assert_eq!(all_teams(&BTreeSet::new(), &m2, 16).unwrap().count(), 2);
        let xy: BTreeSet<Var> = [var("x"), var("y")].into();
        assert_eq!(all_teams(&xy, &m2, 16).unwrap().count(), 16);
        let xyz: BTreeSet<Var> = [var("x"), var("y"), var("z")].into();
        assert!(all_teams(&xyz, &Structure::pure(3), 16).is_err());
    }

    #[test]
    fn model_document_round_trip() {
        let text = r#"{"domain_size": 3, "relations": {"R": [[0, 1], [2, 2]]},
                       "team": [{"x": 0, "y": 1}, {"x": 2, "y": 1}]}"#;
        let doc = ModelDoc::parse(text).unwrap();
        let m = doc.structure().unwrap();
        let t = doc.team().unwrap();
        assert_eq!(m.relation("R").unwrap().arity, 2);
        assert_eq!(t, xy_team(&[[0, 1], [2, 1]]));
        let again = ModelDoc::parse(&ModelDoc::from_parts(&m, Some(&t)).to_json()).unwrap();
        assert_eq!(again.structure().unwrap(), m);
        assert_eq!(again.team().unwrap(), t);
    }

    #[test]
    fn model_document_errors() {
        assert!(ModelDoc::parse(r#"{"version": 2, "domain_size": 2}"#).is_err());
        let doc = ModelDoc::parse(r#"{"domain_size": 2, "team": [{"x": 5}]}"#).unwrap();
        assert!(doc.team().is_err());
        let doc = ModelDoc::parse(r#"{"domain_size": 2, "team": [{"x": 0}, {"y": 0}]}"#).unwrap();
        assert!(doc.team().is_err());
        let doc = ModelDoc::parse(r#"{"domain_size": 0}"#).unwrap();
        assert!(doc.structure().is_err());
        let doc = ModelDoc::parse(r#"{"domain_size": 2, "variables": ["x"], "team": []}"#).unwrap();
        assert_eq!(doc.team().unwrap().vars(), &[var("x")]);
    }

    fn arb_team() -> impl Strategy<Value = Team> {
        proptest::collection::btree_set(proptest::collection::vec(0u32..3, 2), 0..7)
            .prop_map(|rows| Team::from_rows(&[var("u"), var("w")], rows).unwrap())
    }

    proptest! {
        #[test]
        fn universal_row_count(t in arb_team(), n in 1usize..4) {
            let ext = extend_universal(&t, &var("x"), &Structure::pure(n));
            prop_assert_eq!(ext.len(), t.len() * n);
        }

        #[test]
        fn singleton_witnesses_keep_size(t in arb_team(), a in 0u32..3) {
            let ext = extend_existential(&t, &var("x"), &WitnessMap::strict(&t, |_| a)).unwrap();
            prop_assert_eq!(ext.len(), t.len());
        }

        #[test]
        fn covers_union_to_team(t in arb_team()) {
            let mut count = 0u64;
            for (l, r) in covers(&t, SplitMode::Covers) {
                prop_assert_eq!(l.union(&r), t.clone());
                count += 1;
            }
            prop_assert_eq!(count, 3u64.pow(t.len() as u32));
            let mut parts = 0u64;
            for (l, r) in covers(&t, SplitMode::Partitions) {
                prop_assert_eq!(l.union(&r), t.clone());
                prop_assert_eq!(l.len() + r.len(), t.len());
                parts += 1;
            }
            prop_assert_eq!(parts, 2u64.pow(t.len() as u32));
        }
    }
}
