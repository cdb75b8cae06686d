//! Seeded generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use teamlogic::axioms::{CiStatement, FdStatement, IndStatement, VarSet};
use teamlogic::{var, Element, Formula, Structure, Team, Var, VarTuple};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn vars(names: &str) -> Vec<Var> {
    names.split_whitespace().map(var).collect()
}

/// Which constructs a generated formula may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fragment {
    /// Literals, conjunction, disjunction and the two quantifiers.
    FirstOrder,
    /// First order plus dependence and constancy atoms.
    Dependence,
    /// Every atom and quantifier, no linear implication.
    NoLinImp,
    /// Everything.
    All,
}

pub struct FormulaGen {
    pub rng: ChaCha8Rng,
    /// Names quantifiers may bind.
    pub pool: Vec<Var>,
    /// Relation symbols with their arities.
    pub relations: Vec<(String, usize)>,
    pub max_quantifiers: usize,
    /// Longest tuple in inclusion, exclusion and disequality atoms.
    pub pair_arity: usize,
    quantifiers: usize,
}

impl FormulaGen {
    pub fn new(seed: u64, pool: &str, relations: &[(&str, usize)]) -> FormulaGen {
        FormulaGen {
            rng: rng(seed),
            pool: vars(pool),
            relations: relations.iter().map(|(n, a)| (n.to_string(), *a)).collect(),
            max_quantifiers: usize::MAX,
            pair_arity: 2,
            quantifiers: 0,
        }
    }

    /// A formula whose free variables lie in `scope`.
    pub fn formula(&mut self, depth: usize, scope: &[Var], frag: Fragment) -> Formula {
        self.quantifiers = 0;
        self.gen(depth, scope, frag)
    }

    fn pick(&mut self, scope: &[Var]) -> Var {
        scope.choose(&mut self.rng).expect("nonempty scope").clone()
    }

    fn tuple(&mut self, scope: &[Var], min: usize, max: usize) -> VarTuple {
        let n = self.rng.gen_range(min..=max);
        (0..n).map(|_| self.pick(scope)).collect()
    }

    fn literal(&mut self, scope: &[Var]) -> Formula {
        let negated = self.rng.gen_bool(0.5);
        if !self.relations.is_empty() && self.rng.gen_bool(0.4) {
            let (name, arity) = self.relations.choose(&mut self.rng).unwrap().clone();
            let args = self.tuple(scope, arity, arity);
            return Formula::rel(&name, args, negated).unwrap();
        }
        let (a, b) = (self.pick(scope), self.pick(scope));
        if negated {
            Formula::neq(a, b)
        } else {
            Formula::eq(a, b)
        }
    }

    fn atom(&mut self, scope: &[Var], frag: Fragment) -> Formula {
        let choices: &[u8] = match frag {
            Fragment::FirstOrder => &[0, 0],
            Fragment::Dependence => &[0, 0, 1, 2],
            _ => &[0, 0, 1, 2, 3, 4, 5, 6, 7],
        };
        match *choices.choose(&mut self.rng).unwrap() {
            0 => self.literal(scope),
            1 => {
                let ante = self.tuple(scope, 0, 2);
                let cons = self.tuple(scope, 1, 2);
                Formula::dep(ante, cons)
            }
            2 => Formula::constancy(self.tuple(scope, 1, 2)),
            3 => Formula::indep(self.tuple(scope, 1, 2), self.tuple(scope, 1, 2)),
            4 => Formula::cond_indep(
                self.tuple(scope, 0, 2),
                self.tuple(scope, 1, 2),
                self.tuple(scope, 1, 2),
            ),
            k => {
                let n = self.rng.gen_range(1..=self.pair_arity);
                let (l, r) = (self.tuple(scope, n, n), self.tuple(scope, n, n));
                match k {
                    5 => Formula::inclusion(l, r).unwrap(),
                    6 => Formula::exclusion(l, r).unwrap(),
                    _ => Formula::tuple_diseq(l, r).unwrap(),
                }
            }
        }
    }

    fn gen(&mut self, depth: usize, scope: &[Var], frag: Fragment) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.25) {
            return self.atom(scope, frag);
        }
        let can_bind = self.quantifiers < self.max_quantifiers && !self.pool.is_empty();
        let k = self
            .rng
            .gen_range(0..if frag == Fragment::All { 7 } else { 6 });
        match k {
            0 | 1 => {
                let (a, b) = (
                    self.gen(depth - 1, scope, frag),
                    self.gen(depth - 1, scope, frag),
                );
                Formula::and(a, b)
            }
            2 => {
                let (a, b) = (
                    self.gen(depth - 1, scope, frag),
                    self.gen(depth - 1, scope, frag),
                );
                Formula::or(a, b)
            }
            3..=5 if can_bind => {
                self.quantifiers += 1;
                let x = self.pick(&self.pool.clone());
                let mut inner: Vec<Var> = scope.to_vec();
                if !inner.contains(&x) {
                    inner.push(x.clone());
                }
                let slash = k == 5
                    && !scope.is_empty()
                    && !matches!(frag, Fragment::FirstOrder | Fragment::Dependence);
                if slash {
                    let y = self.pick(scope);
                    let body = self.gen(depth - 1, &inner, frag);
                    Formula::slash_exists(x, y, body)
                } else {
                    let body = self.gen(depth - 1, &inner, frag);
                    if k == 3 {
                        Formula::exists(x, body)
                    } else {
                        Formula::forall(x, body)
                    }
                }
            }
            6 => {
                let (a, b) = (
                    self.gen(depth - 1, scope, frag),
                    self.gen(depth - 1, scope, frag),
                );
                Formula::lin_imp(a, b)
            }
            _ => self.atom(scope, frag),
        }
    }
}

/// Structures over `{0, .., n-1}` interpreting each relation at random.
pub fn random_structure(rng: &mut ChaCha8Rng, n: usize, relations: &[(&str, usize)]) -> Structure {
    let mut m = Structure::pure(n);
    for &(name, arity) in relations {
        let tuples: Vec<Vec<Element>> = rows(arity, n)
            .into_iter()
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        m = m.with_relation(name, arity, tuples).unwrap();
    }
    m
}

/// All rows of the given width over `{0, .., n-1}`, lexicographic.
pub fn rows(width: usize, n: usize) -> Vec<Vec<Element>> {
    let mut out = vec![Vec::new()];
    for _ in 0..width {
        out = out
            .into_iter()
            .flat_map(|r| {
                (0..n as Element).map(move |e| {
                    let mut r = r.clone();
                    r.push(e);
                    r
                })
            })
            .collect();
    }
    out
}

/// Every team over `vs` with values below `n`.
pub fn teams(vs: &[Var], n: usize) -> Vec<Team> {
    let all = rows(vs.len(), n);
    assert!(all.len() <= 20, "too many teams to enumerate");
    (0u64..1 << all.len())
        .map(|mask| {
            let chosen = all
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, r)| r.clone());
            Team::from_rows(vs, chosen).unwrap()
        })
        .collect()
}

/// Usual truth of a first-order formula under one assignment.
pub fn tarski(m: &Structure, s: &BTreeMap<Var, Element>, f: &Formula) -> bool {
    let val = |v: &Var| s[v];
    match f {
        Formula::Eq {
            left,
            right,
            negated,
        } => (val(left) == val(right)) != *negated,
        Formula::Rel {
            symbol,
            args,
            negated,
        } => {
            let t: Vec<Element> = args.iter().map(val).collect();
            m.relation(symbol).unwrap().tuples.contains(&t) != *negated
        }
        Formula::TupleDiseq(p) => p
            .lhs()
            .iter()
            .zip(p.rhs().iter())
            .any(|(a, b)| val(a) != val(b)),
        Formula::And(a, b) => tarski(m, s, a) && tarski(m, s, b),
        Formula::Or(a, b) => tarski(m, s, a) || tarski(m, s, b),
        Formula::Exists(x, body) | Formula::Forall(x, body) => {
            let mut results = m.elements().map(|e| {
                let mut t = s.clone();
                t.insert(x.clone(), e);
                tarski(m, &t, body)
            });
            if matches!(f, Formula::Exists(..)) {
                results.any(|b| b)
            } else {
                results.all(|b| b)
            }
        }
        other => panic!("not first order: {other}"),
    }
}

fn project(row: &BTreeMap<Var, Element>, t: &VarSet) -> Vec<Element> {
    t.iter().map(|v| row[v]).collect()
}

/// Functional dependence read off the definition, over explicit rows.
pub fn fd_holds(rows: &[BTreeMap<Var, Element>], s: &FdStatement) -> bool {
    rows.iter().all(|a| {
        rows.iter().all(|b| {
            project(a, &s.antecedent) != project(b, &s.antecedent)
                || project(a, &s.consequent) == project(b, &s.consequent)
        })
    })
}

/// Independence read off the definition: every mix of two rows occurs.
pub fn ind_holds(rows: &[BTreeMap<Var, Element>], s: &IndStatement) -> bool {
    ci_holds(
        rows,
        &CiStatement::new(VarSet::new(), s.lhs.clone(), s.rhs.clone()),
    )
}

pub fn ci_holds(rows: &[BTreeMap<Var, Element>], s: &CiStatement) -> bool {
    let present: HashSet<(Vec<Element>, Vec<Element>, Vec<Element>)> = rows
        .iter()
        .map(|r| {
            (
                project(r, &s.condition),
                project(r, &s.lhs),
                project(r, &s.rhs),
            )
        })
        .collect();
    rows.iter().all(|a| {
        rows.iter().all(|b| {
            project(a, &s.condition) != project(b, &s.condition)
                || present.contains(&(
                    project(a, &s.condition),
                    project(a, &s.lhs),
                    project(b, &s.rhs),
                ))
        })
    })
}

/// Precomputed exhaustive search over all teams on `{0, 1}` for up to four
/// variables, with teams as 16-bit row masks.
pub struct BinaryTeams {
    pub vars: Vec<Var>,
    assignments: Vec<BTreeMap<Var, Element>>,
}

impl BinaryTeams {
    pub fn new(vs: &VarSet) -> BinaryTeams {
        let vars: Vec<Var> = vs.iter().cloned().collect();
        assert!(vars.len() <= 4);
        let assignments = rows(vars.len(), 2)
            .into_iter()
            .map(|r| vars.iter().cloned().zip(r).collect())
            .collect();
        BinaryTeams { vars, assignments }
    }

    pub fn row_count(&self) -> usize {
        self.assignments.len()
    }

    /// For a pairwise-checkable statement: `bad[i]` has bit `j` set when rows
    /// `i` and `j` cannot both occur.
    pub fn conflicts(&self, s: &FdStatement) -> Vec<u32> {
        let a = &self.assignments;
        (0..a.len())
            .map(|i| {
                (0..a.len())
                    .filter(|&j| !fd_holds(&[a[i].clone(), a[j].clone()], s))
                    .fold(0u32, |m, j| m | 1 << j)
            })
            .collect()
    }

    pub fn rows_of(&self, mask: u32) -> Vec<BTreeMap<Var, Element>> {
        (0..self.assignments.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.assignments[i].clone())
            .collect()
    }

    /// Whether every team satisfying all of `sigma` satisfies `goal`; the
    /// first team (in mask order) that does not is returned.
    pub fn fd_implies(&self, sigma: &[FdStatement], goal: &FdStatement) -> Option<u32> {
        let tables: Vec<Vec<u32>> = sigma.iter().map(|s| self.conflicts(s)).collect();
        let goal_table = self.conflicts(goal);
        let ok = |t: &Vec<u32>, mask: u32| {
            (0..self.row_count()).all(|i| mask >> i & 1 == 0 || t[i] & mask == 0)
        };
        (0u32..1 << self.row_count())
            .find(|&mask| tables.iter().all(|t| ok(t, mask)) && !ok(&goal_table, mask))
    }

    /// Independence on a team mask via value codes.
    fn ind_table(&self, s: &IndStatement) -> Vec<(u8, u8)> {
        let code = |r: &BTreeMap<Var, Element>, t: &VarSet| {
            t.iter().fold(0u8, |acc, v| acc << 1 | r[v] as u8)
        };
        self.assignments
            .iter()
            .map(|r| (code(r, &s.lhs), code(r, &s.rhs)))
            .collect()
    }

    pub fn ind_implies(&self, sigma: &[IndStatement], goal: &IndStatement) -> Option<u32> {
        let tables: Vec<_> = sigma.iter().map(|s| self.ind_table(s)).collect();
        let goal_table = self.ind_table(goal);
        let ok = |t: &Vec<(u8, u8)>, mask: u32| {
            let (mut l, mut r, mut pairs) = (0u16, 0u16, [0u64; 4]);
            for (i, &(a, b)) in t.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    l |= 1 << a;
                    r |= 1 << b;
                    let p = (a as usize) << 4 | b as usize;
                    pairs[p >> 6] |= 1 << (p & 63);
                }
            }
            let n: u32 = pairs.iter().map(|w| w.count_ones()).sum();
            n == l.count_ones() * r.count_ones()
        };
        (0u32..1 << self.row_count())
            .find(|&mask| tables.iter().all(|t| ok(t, mask)) && !ok(&goal_table, mask))
    }
}

pub fn random_subset(rng: &mut ChaCha8Rng, vs: &[Var], p: f64) -> VarSet {
    vs.iter().filter(|_| rng.gen_bool(p)).cloned().collect()
}

pub fn random_fd(rng: &mut ChaCha8Rng, vs: &[Var]) -> FdStatement {
    FdStatement::new(random_subset(rng, vs, 0.4), random_subset(rng, vs, 0.4))
}

pub fn random_ind(rng: &mut ChaCha8Rng, vs: &[Var]) -> IndStatement {
    IndStatement::new(random_subset(rng, vs, 0.4), random_subset(rng, vs, 0.4))
}

pub fn random_ci(rng: &mut ChaCha8Rng, vs: &[Var]) -> CiStatement {
    CiStatement::new(
        random_subset(rng, vs, 0.3),
        random_subset(rng, vs, 0.4),
        random_subset(rng, vs, 0.4),
    )
}

pub fn tuple(s: &VarSet) -> VarTuple {
    s.iter().cloned().collect()
}

pub fn to_var_set(names: &str) -> BTreeSet<Var> {
    vars(names).into_iter().collect()
}
