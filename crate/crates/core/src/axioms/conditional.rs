//! Bounded forward chaining for conditional independence.
//!
//! The rules are sound but no finite rule set is complete for this
//! consequence relation, so a negative answer only means that no derivation
//! of at most the given height exists.

use super::subsets::{submasks, Universe};
use super::{AxiomError, CiStatement, Derivation, Rule, VarSet};

/// Most variables the search ranges over.
pub const MAX_VARIABLES: usize = 6;

const ABSENT: u8 = u8::MAX;

struct Search {
    uni: Universe,
    /// Height of the shortest known derivation, or `ABSENT`.
    height: Vec<u8>,
    prov: Vec<(Rule, [Option<usize>; 2])>,
}

impl Search {
    fn index(&self, c: u32, l: u32, r: u32) -> usize {
        let n = self.uni.len();
        ((c as usize) << (2 * n)) | ((l as usize) << n) | r as usize
    }

    fn split(&self, i: usize) -> (u32, u32, u32) {
        let n = self.uni.len();
        let m = (1usize << n) - 1;
        ((i >> (2 * n)) as u32, ((i >> n) & m) as u32, (i & m) as u32)
    }

    /// Known before round `round`.
    fn known(&self, i: usize, round: u8) -> bool {
        self.height[i] < round
    }

    fn statement(&self, i: usize) -> CiStatement {
        let (c, l, r) = self.split(i);
        CiStatement::new(self.uni.set(c), self.uni.set(l), self.uni.set(r))
    }

    fn derivation(&self, i: usize) -> Derivation {
        let (rule, premises) = self.prov[i];
        let premises = premises
            .iter()
            .flatten()
            .map(|&j| self.derivation(j))
            .collect();
        Derivation::step(self.statement(i).into(), rule, premises)
    }
}

/// Searches for a derivation of `goal` from `sigma` of height at most
/// `depth`, counting hypotheses as height 0 and reflexivity axioms as 1.
pub fn ci_derive(
    sigma: &[CiStatement],
    goal: &CiStatement,
    depth: usize,
) -> Result<(bool, Option<Derivation>), AxiomError> {
    let mut vars = VarSet::new();
    for s in sigma.iter().chain([goal]) {
        vars.extend(s.condition.iter().chain(&s.lhs).chain(&s.rhs).cloned());
    }
    if vars.len() > MAX_VARIABLES {
        return Err(AxiomError::TooManyVariables {
            found: vars.len(),
            max: MAX_VARIABLES,
        });
    }
    let uni = Universe::new(vars);
    let size = 1usize << (3 * uni.len());
    let mut s = Search {
        uni,
        height: vec![ABSENT; size],
        prov: vec![(Rule::Hypothesis, [None, None]); size],
    };
    let full = s.uni.full();
    let mask = |s: &Search, st: &CiStatement| {
        s.index(
            s.uni.mask(&st.condition),
            s.uni.mask(&st.lhs),
            s.uni.mask(&st.rhs),
        )
    };
    for st in sigma {
        let i = mask(&s, st);
        s.height[i] = 0;
    }
    let g = mask(&s, goal);
    let depth = depth.min(ABSENT as usize - 1) as u8;
    for round in 1..=depth {
        if s.height[g] != ABSENT {
            break;
        }
        let mut new: Vec<(usize, Rule, [Option<usize>; 2])> = Vec::new();
        if round == 1 {
            for x in 0..=full {
                for y in 0..=full {
                    new.push((s.index(x, x, y), Rule::Reflexivity, [None, None]));
                }
            }
        }
        for p in 0..size {
            if !s.known(p, round) {
                continue;
            }
            let (z, x, y) = s.split(p);
            new.push((s.index(z, y, x), Rule::Symmetry, [Some(p), None]));
            for x2 in submasks(x) {
                for y2 in submasks(y) {
                    new.push((s.index(z, x2, y2), Rule::Weakening, [Some(p), None]));
                }
            }
            for u in 0..=full {
                // z: x _||_ y and z x: u _||_ y give z: u _||_ y
                let q = s.index(z | x, u, y);
                if s.known(q, round) {
                    new.push((
                        s.index(z, u, y),
                        Rule::FirstTransitivity,
                        [Some(p), Some(q)],
                    ));
                }
                // z: x _||_ y and z: x y _||_ u give z: x _||_ y u
                let q = s.index(z, x | y, u);
                if s.known(q, round) {
                    new.push((s.index(z, x, y | u), Rule::Exchange, [Some(p), Some(q)]));
                }
            }
            if x == y {
                // z: y _||_ y and y: l _||_ u with l = z x give z: x _||_ u
                let yy = x;
                for l in 0..=full {
                    if z & !l != 0 {
                        continue;
                    }
                    for u in 0..=full {
                        let q = s.index(yy, l, u);
                        if !s.known(q, round) {
                            continue;
                        }
                        for t in submasks(z) {
                            let xs = (l & !z) | t;
                            new.push((
                                s.index(z, xs, u),
                                Rule::SecondTransitivity,
                                [Some(p), Some(q)],
                            ));
                        }
                    }
                }
            }
        }
        for (i, rule, premises) in new {
            if s.height[i] == ABSENT {
                s.height[i] = round;
                s.prov[i] = (rule, premises);
            }
        }
    }
    if s.height[g] == ABSENT {
        Ok((false, None))
    } else {
        Ok((true, Some(s.derivation(g))))
    }
}
