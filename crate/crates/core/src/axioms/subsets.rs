//! Variable sets as bitmasks over a fixed universe.

use super::VarSet;
use crate::formula::Var;

pub(crate) struct Universe {
    vars: Vec<Var>,
}

impl Universe {
    pub fn new(vars: VarSet) -> Universe {
        assert!(
            vars.len() <= 16,
            "too many variables for the bitmask engines"
        );
        Universe {
            vars: vars.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn full(&self) -> u32 {
        (1u32 << self.vars.len()) - 1
    }

    /// # Panics
    /// If `s` has a variable outside the universe.
    pub fn mask(&self, s: &VarSet) -> u32 {
        s.iter()
            .map(|v| 1u32 << self.vars.binary_search(v).expect("variable in universe"))
            .fold(0, |a, b| a | b)
    }

    pub fn set(&self, mask: u32) -> VarSet {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, v)| v.clone())
            .collect()
    }
}

/// All submasks of `m`, including `0` and `m`.
pub(crate) fn submasks(m: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(m);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & m) };
        Some(cur)
    })
}
