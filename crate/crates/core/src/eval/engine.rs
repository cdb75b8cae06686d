//! The search procedures behind [`super::satisfies`].

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use super::atoms::{self, project, Row};
use super::compile::{Atom, Binder, Kind, Lit, NodeId, Program};
use super::{EvalConfig, EvalError, EvalStats, Mode};
use crate::structure::{all_rows, with_value, Element, SplitMode};

pub(crate) enum Halt {
    Budget,
    Error(EvalError),
}

type Res = Result<bool, Halt>;

pub(crate) struct Engine<'a> {
    prog: &'a Program,
    domain: usize,
    cfg: &'a EvalConfig,
    mode: Mode,
    memo: HashMap<(NodeId, Vec<Row>), bool>,
    pub stats: EvalStats,
    start: Instant,
}

fn normalize(mut rows: Vec<Row>) -> Vec<Row> {
    rows.sort_unstable();
    rows.dedup();
    rows
}

impl<'a> Engine<'a> {
    pub fn new(prog: &'a Program, domain: usize, cfg: &'a EvalConfig, mode: Mode) -> Engine<'a> {
        Engine {
            prog,
            domain,
            cfg,
            mode,
            memo: HashMap::new(),
            stats: EvalStats::default(),
            start: Instant::now(),
        }
    }

    pub fn run(&mut self, rows: Vec<Row>) -> Res {
        let r = self.eval(self.prog.root, &normalize(rows));
        self.stats.elapsed = self.start.elapsed();
        r
    }

    fn tick(&mut self) -> Result<(), Halt> {
        self.stats.nodes += 1;
        if self.stats.nodes.is_multiple_of(1024) && self.start.elapsed() > self.cfg.time_budget {
            return Err(Halt::Budget);
        }
        Ok(())
    }

    /// `rows` must be sorted and duplicate free.
    fn eval(&mut self, id: NodeId, rows: &[Row]) -> Res {
        self.tick()?;
        let prog = self.prog;
        let node = &prog.nodes[id];
        if node.flat && self.cfg.flat_shortcut {
            return Ok(rows.iter().all(|r| self.holds(id, r)));
        }
        match &node.kind {
            Kind::Lit(_) => return Ok(rows.iter().all(|r| self.holds(id, r))),
            Kind::Atom(a) => return Ok(check_atom(a, rows)),
            Kind::And(a, b) => {
                let (a, b) = (*a, *b);
                return Ok(self.eval(a, rows)? && self.eval(b, rows)?);
            }
            _ => {}
        }
        let key = if self.cfg.memo {
            let key = (id, rows.to_vec());
            if let Some(&v) = self.memo.get(&key) {
                self.stats.memo_hits += 1;
                return Ok(v);
            }
            Some(key)
        } else {
            None
        };
        let v = match &node.kind {
            Kind::Or(a, b) => self.split(*a, *b, rows)?,
            Kind::Forall(b) => {
                let ext = self.extend_all(b, rows);
                self.eval(b.body, &ext)?
            }
            Kind::Exists { b, hoisted } => {
                let units: Vec<Vec<usize>> = (0..rows.len()).map(|i| vec![i]).collect();
                let lax = self.mode == Mode::Lax;
                self.witness_search(b, hoisted, rows, units, lax)?
            }
            Kind::Slash { b, key, hoisted } => {
                let mut groups: HashMap<Row, Vec<usize>> = HashMap::new();
                for (i, r) in rows.iter().enumerate() {
                    groups.entry(project(r, key)).or_default().push(i);
                }
                let mut units: Vec<Vec<usize>> = groups.into_values().collect();
                units.sort();
                self.witness_search(b, hoisted, rows, units, false)?
            }
            Kind::LinImp(a, b) => self.lin_imp(*a, *b, rows)?,
            Kind::Lit(_) | Kind::Atom(_) | Kind::And(..) => unreachable!(),
        };
        if let Some(key) = key {
            self.memo.insert(key, v);
        }
        Ok(v)
    }

    /// Single-assignment truth for first-order nodes.
    fn holds(&self, id: NodeId, row: &[Element]) -> bool {
        match &self.prog.nodes[id].kind {
            Kind::Lit(lit) => self.literal(lit, row),
            Kind::And(a, b) => self.holds(*a, row) && self.holds(*b, row),
            Kind::Or(a, b) => self.holds(*a, row) || self.holds(*b, row),
            Kind::Exists { b, .. } => (0..self.domain as Element)
                .any(|a| self.holds(b.body, &with_value(row, b.col, b.insert, a))),
            Kind::Forall(b) => (0..self.domain as Element)
                .all(|a| self.holds(b.body, &with_value(row, b.col, b.insert, a))),
            Kind::Atom(_) | Kind::Slash { .. } | Kind::LinImp(..) => {
                unreachable!("row-wise truth asked of a non first-order node")
            }
        }
    }

    fn literal(&self, lit: &Lit, row: &[Element]) -> bool {
        match lit {
            Lit::Eq { l, r, negated } => (row[*l] == row[*r]) != *negated,
            Lit::Rel { rel, args, negated } => {
                self.prog.relations[*rel].contains(&project(row, args)) != *negated
            }
            Lit::TupleDiseq { l, r } => l.iter().zip(r).any(|(a, b)| row[*a] != row[*b]),
        }
    }

    fn extend_all(&self, b: &Binder, rows: &[Row]) -> Vec<Row> {
        let out = rows
            .iter()
            .flat_map(|r| {
                (0..self.domain as Element).map(move |a| with_value(r, b.col, b.insert, a))
            })
            .collect();
        normalize(out)
    }

    fn split(&mut self, a: NodeId, b: NodeId, rows: &[Row]) -> Res {
        match self.cfg.split_mode {
            SplitMode::Covers => {
                let n = rows.len() as u32;
                let Some(total) = 3u64.checked_pow(n) else {
                    return Err(Halt::Budget);
                };
                for mut code in 0..total {
                    self.tick()?;
                    let (mut left, mut right) = (Vec::new(), Vec::new());
                    for r in rows {
                        match code % 3 {
                            0 => left.push(r.clone()),
                            1 => right.push(r.clone()),
                            _ => {
                                left.push(r.clone());
                                right.push(r.clone());
                            }
                        }
                        code /= 3;
                    }
                    if self.eval(a, &left)? && self.eval(b, &right)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            SplitMode::Partitions => {
                let (dca, dcb) = (
                    self.cfg.pruning && self.prog.nodes[a].downward_closed,
                    self.cfg.pruning && self.prog.nodes[b].downward_closed,
                );
                let mut forced_left = Vec::new();
                let mut forced_right = Vec::new();
                let mut free = Vec::new();
                for r in rows {
                    let single = std::slice::from_ref(r);
                    let can_left = !dca || self.eval(a, single)?;
                    let can_right = !dcb || self.eval(b, single)?;
                    match (can_left, can_right) {
                        (false, false) => return Ok(false),
                        (true, false) => forced_left.push(r.clone()),
                        (false, true) => forced_right.push(r.clone()),
                        (true, true) => free.push(r.clone()),
                    }
                }
                if dca || dcb {
                    let (left, right) = (normalize(forced_left), normalize(forced_right));
                    if (dca && !self.eval(a, &left)?) || (dcb && !self.eval(b, &right)?) {
                        return Ok(false);
                    }
                    let mut sides = [left, right];
                    return self.assign(&[a, b], [dca, dcb], &free, &mut sides);
                }
                if free.len() >= 64 {
                    return Err(Halt::Budget);
                }
                for mask in 0..1u64 << free.len() {
                    self.tick()?;
                    let mut left = forced_left.clone();
                    let mut right = forced_right.clone();
                    for (i, r) in free.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            left.push(r.clone());
                        } else {
                            right.push(r.clone());
                        }
                    }
                    let (left, right) = (normalize(left), normalize(right));
                    if self.eval(a, &left)? && self.eval(b, &right)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    /// Places the `free` rows one at a time. A downward-closed side is
    /// checked after every addition, so a failing partial side cuts the
    /// branch; other sides are checked once all rows are placed.
    fn assign(
        &mut self,
        nodes: &[NodeId; 2],
        dc: [bool; 2],
        free: &[Row],
        sides: &mut [Vec<Row>; 2],
    ) -> Res {
        self.tick()?;
        let Some((row, rest)) = free.split_first() else {
            for k in 0..2 {
                if !dc[k] && !self.eval(nodes[k], &sides[k])? {
                    return Ok(false);
                }
            }
            return Ok(true);
        };
        for k in 0..2 {
            let pos = sides[k].binary_search(row).unwrap_or_else(|p| p);
            sides[k].insert(pos, row.clone());
            let ok = !dc[k] || self.eval(nodes[k], &sides[k])?;
            if ok && self.assign(nodes, dc, rest, sides)? {
                return Ok(true);
            }
            sides[k].remove(pos);
        }
        Ok(false)
    }

    fn lin_imp(&mut self, a: NodeId, b: NodeId, rows: &[Row]) -> Res {
        let width = match rows.first() {
            Some(r) => r.len(),
            None => self.layout_width(a),
        };
        let universe = (self.domain as u128).checked_pow(width as u32);
        let universe = match universe {
            Some(u) if u <= self.cfg.row_bound as u128 && u < 64 => u as usize,
            _ => {
                return Err(Halt::Error(EvalError::BoundExceeded(format!(
                    "linear implication needs {}^{} candidate rows, bound is {}",
                    self.domain, width, self.cfg.row_bound
                ))))
            }
        };
        if (1u128 << universe) > self.cfg.team_enum_bound as u128 {
            return Err(Halt::Error(EvalError::BoundExceeded(format!(
                "linear implication needs 2^{} teams, bound is {}",
                universe, self.cfg.team_enum_bound
            ))));
        }
        let all = all_rows(width, self.domain);
        for mask in 0..1u64 << universe {
            self.tick()?;
            let t: Vec<Row> = all
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, r)| r.clone())
                .collect();
            if self.eval(a, &t)? {
                let mut u = rows.to_vec();
                u.extend(t);
                if !self.eval(b, &normalize(u))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn layout_width(&self, id: NodeId) -> usize {
        self.prog.nodes[id].width
    }

    /// Backtracking over witness choices, one unit (a row, or a group of rows
    /// that must share a witness) at a time.
    fn witness_search(
        &mut self,
        b: &Binder,
        hoisted: &[NodeId],
        rows: &[Row],
        units: Vec<Vec<usize>>,
        lax: bool,
    ) -> Res {
        let prog = self.prog;
        let mut s = Search {
            body: b.body,
            produced: Vec::with_capacity(units.len()),
            pairs: Vec::new(),
            counts: Vec::new(),
            leaf: Vec::new(),
            bound: if lax {
                rows.len() * self.domain
            } else {
                rows.len()
            },
        };
        let mut flats = Vec::new();
        if self.cfg.pruning {
            for &h in hoisted {
                match &prog.nodes[h].kind {
                    Kind::Atom(a) => {
                        match a {
                            Atom::Dep { .. } | Atom::Excl { .. } => s.pairs.push(a),
                            Atom::Indep { l, r } => s.counts.push((l, r)),
                            _ => {}
                        }
                        s.leaf.push(a);
                    }
                    _ if prog.nodes[h].flat => flats.push(h),
                    _ => {}
                }
            }
        }
        let mut domains = Vec::with_capacity(units.len());
        for unit in &units {
            let allowed: Vec<Element> = (0..self.domain as Element)
                .filter(|&a| {
                    unit.iter().all(|&i| {
                        let r = with_value(&rows[i], b.col, b.insert, a);
                        flats.iter().all(|&h| self.holds(h, &r))
                    })
                })
                .collect();
            let sets: Vec<Vec<Element>> = if lax {
                if allowed.len() > 16 {
                    return Err(Halt::Budget);
                }
                let mut sets: Vec<Vec<Element>> = (1..1u32 << allowed.len())
                    .map(|mask| {
                        allowed
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| mask >> i & 1 == 1)
                            .map(|(_, &a)| a)
                            .collect()
                    })
                    .collect();
                sets.sort_by_key(Vec::len);
                sets
            } else {
                allowed.iter().map(|&a| vec![a]).collect()
            };
            let mut produced = Vec::with_capacity(sets.len());
            for set in sets {
                let out: Vec<Row> = unit
                    .iter()
                    .flat_map(|&i| set.iter().map(move |&a| (i, a)))
                    .map(|(i, a)| with_value(&rows[i], b.col, b.insert, a))
                    .collect();
                if s.compatible(&out, &out) {
                    produced.push(out);
                }
            }
            if produced.is_empty() {
                return Ok(false);
            }
            domains.push(Some((0..produced.len()).collect::<Vec<_>>()));
            s.produced.push(produced);
        }
        let mut assigned = Vec::new();
        self.dfs(&s, domains, &mut assigned)
    }

    fn dfs(
        &mut self,
        s: &Search<'_>,
        domains: Vec<Option<Vec<usize>>>,
        assigned: &mut Vec<Row>,
    ) -> Res {
        self.tick()?;
        let next = domains
            .iter()
            .enumerate()
            .filter_map(|(i, d)| d.as_ref().map(|d| (d.len(), i)))
            .min();
        let Some((_, u)) = next else {
            let team = normalize(assigned.clone());
            if !s.leaf.iter().all(|a| check_atom(a, &team)) {
                return Ok(false);
            }
            return self.eval(s.body, &team);
        };
        let choices = domains[u].clone().unwrap_or_default();
        for k in choices {
            let new_rows = &s.produced[u][k];
            if !s.counts_ok(assigned, new_rows) {
                continue;
            }
            let mut rest = domains.clone();
            rest[u] = None;
            let mut alive = true;
            if !s.pairs.is_empty() {
                for (j, d) in rest.iter_mut().enumerate() {
                    if let Some(d) = d {
                        d.retain(|&kj| s.compatible(new_rows, &s.produced[j][kj]));
                        if d.is_empty() {
                            alive = false;
                            break;
                        }
                    }
                }
            }
            if !alive {
                continue;
            }
            let mark = assigned.len();
            assigned.extend(new_rows.iter().cloned());
            let found = self.dfs(s, rest, assigned)?;
            assigned.truncate(mark);
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

struct Search<'p> {
    body: NodeId,
    /// `produced[unit][choice]`: the rows that choice contributes.
    produced: Vec<Vec<Vec<Row>>>,
    /// Atoms refuted by a single pair of rows.
    pairs: Vec<&'p Atom>,
    /// Independence atoms, refuted once too many distinct values appear.
    counts: Vec<(&'p Vec<usize>, &'p Vec<usize>)>,
    /// Every hoisted atom, checked on complete teams.
    leaf: Vec<&'p Atom>,
    /// Upper bound on the size of the extended team.
    bound: usize,
}

impl Search<'_> {
    fn compatible(&self, xs: &[Row], ys: &[Row]) -> bool {
        self.pairs.iter().all(|a| {
            xs.iter().all(|p| {
                ys.iter().all(|q| match a {
                    Atom::Dep { ante, cons } => atoms::dep_pair(p, q, ante, cons),
                    Atom::Excl { l, r } => atoms::excl_pair(p, q, l, r),
                    _ => true,
                })
            })
        })
    }

    /// A team satisfying `l _||_ r` has at least `|L| * |R|` rows.
    fn counts_ok(&self, assigned: &[Row], new_rows: &[Row]) -> bool {
        self.counts.iter().all(|&(l, r)| {
            let mut ls = HashSet::new();
            let mut rs = HashSet::new();
            for row in assigned.iter().chain(new_rows) {
                ls.insert(project(row, l));
                rs.insert(project(row, r));
            }
            ls.len() * rs.len() <= self.bound
        })
    }
}

pub(crate) fn check_atom(a: &Atom, rows: &[Row]) -> bool {
    match a {
        Atom::Dep { ante, cons } => atoms::dep(rows, ante, cons),
        Atom::Indep { l, r } => atoms::indep(rows, l, r),
        Atom::CondIndep { c, l, r } => atoms::cond_indep(rows, c, l, r),
        Atom::Incl { l, r } => atoms::inclusion(rows, l, r),
        Atom::Excl { l, r } => atoms::exclusion(rows, l, r),
    }
}
