//! Formula syntax trees in negation normal form.
//!
//! Negation only ever appears as a flag on equality and relation literals;
//! there is no constructor for the negation of a compound formula. The
//! equal-arity requirement of inclusion, exclusion and tuple-disequality
//! atoms is enforced by [`MatchedPair::new`].

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Relation symbols that collide with atom keywords of the surface syntax.
pub const RESERVED_RELATIONS: [&str; 3] = ["dep", "incl", "excl"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("invalid variable name {0:?}")]
    InvalidVariable(String),
    #[error("invalid relation symbol {0:?}")]
    InvalidRelation(String),
    #[error("arity mismatch: left side has {left} variables, right side has {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("cannot rename {old} to {new}: {new} already occurs in the formula")]
    NameClash { old: Var, new: Var },
    #[error("biconditional arguments must be literals, got `{0}`")]
    NotALiteral(String),
}

/// Returns true if `name` is a valid identifier: a letter or underscore
/// followed by letters, digits, underscores or primes.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    name != "_" && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// A first-order variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Result<Var, FormulaError> {
        if is_identifier(name) {
            Ok(Var(name.into()))
        } else {
            Err(FormulaError::InvalidVariable(name.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Shorthand for building a [`Var`] from a name known to be valid.
///
/// # Panics
/// If `name` is not an identifier.
pub fn var(name: &str) -> Var {
    Var::new(name).unwrap_or_else(|e| panic!("{e}"))
}

/// An ordered, possibly empty, sequence of variables. Duplicates are allowed.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarTuple(Vec<Var>);

impl VarTuple {
    pub fn new(items: Vec<Var>) -> VarTuple {
        VarTuple(items)
    }

    pub fn empty() -> VarTuple {
        VarTuple(Vec::new())
    }

    /// Builds a tuple from whitespace-separated names, e.g. `tuple("x y")`.
    ///
    /// # Panics
    /// If any name is not an identifier.
    pub fn of(names: &str) -> VarTuple {
        VarTuple(names.split_whitespace().map(var).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Var> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Var] {
        &self.0
    }

    pub fn to_set(&self) -> BTreeSet<Var> {
        self.0.iter().cloned().collect()
    }

    pub fn contains(&self, v: &Var) -> bool {
        self.0.contains(v)
    }

    /// Concatenation `self` followed by `other`.
    pub fn concat(&self, other: &VarTuple) -> VarTuple {
        VarTuple(self.0.iter().chain(other.0.iter()).cloned().collect())
    }

    fn map(&self, f: impl Fn(&Var) -> Var) -> VarTuple {
        VarTuple(self.0.iter().map(f).collect())
    }
}

impl FromIterator<Var> for VarTuple {
    fn from_iter<I: IntoIterator<Item = Var>>(iter: I) -> Self {
        VarTuple(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a VarTuple {
    type Item = &'a Var;
    type IntoIter = std::slice::Iter<'a, Var>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for VarTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

/// Two tuples of equal length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatchedPair {
    lhs: VarTuple,
    rhs: VarTuple,
}

impl MatchedPair {
    pub fn new(lhs: VarTuple, rhs: VarTuple) -> Result<MatchedPair, FormulaError> {
        if lhs.len() != rhs.len() {
            return Err(FormulaError::ArityMismatch {
                left: lhs.len(),
                right: rhs.len(),
            });
        }
        Ok(MatchedPair { lhs, rhs })
    }

    pub fn lhs(&self) -> &VarTuple {
        &self.lhs
    }

    pub fn rhs(&self) -> &VarTuple {
        &self.rhs
    }
}

/// A formula of first-order logic extended with dependency atoms, the slash
/// quantifier and linear implication.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    /// `x = y`, or `!(x = y)` when negated.
    Eq {
        left: Var,
        right: Var,
        negated: bool,
    },
    /// `R(x1, ..., xn)`, or `!R(...)` when negated.
    Rel {
        symbol: Arc<str>,
        args: VarTuple,
        negated: bool,
    },
    /// `(x1 .. xn) != (y1 .. yn)`: in every row the two tuples differ somewhere.
    TupleDiseq(MatchedPair),
    /// `dep(y, x)`: the antecedent functionally determines the consequent.
    Dep {
        antecedent: VarTuple,
        consequent: VarTuple,
    },
    /// `dep(x)`: the tuple is constant.
    Constancy(VarTuple),
    /// `x _||_ y`
    Indep {
        lhs: VarTuple,
        rhs: VarTuple,
    },
    /// `y _||_{x} z`: `lhs` and `rhs` are independent once `condition` is fixed.
    CondIndep {
        condition: VarTuple,
        lhs: VarTuple,
        rhs: VarTuple,
    },
    /// `incl(x ; y)`: every value of the left tuple is a value of the right one.
    Inclusion(MatchedPair),
    /// `excl(x ; y)`: the value sets of the two tuples are disjoint.
    Exclusion(MatchedPair),
    And(Box<Formula>, Box<Formula>),
    /// Split disjunction.
    Or(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
    /// `E x / y body`: there is an `x`, chosen independently of `y`.
    SlashExists {
        var: Var,
        independent_of: Var,
        body: Box<Formula>,
    },
    /// `a -o b`
    LinImp(Box<Formula>, Box<Formula>),
}

/// The atom kinds handled by the translator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomKind {
    Dep,
    Constancy,
    Indep,
    CondIndep,
    Inclusion,
    Exclusion,
}

impl Formula {
    pub fn eq(left: Var, right: Var) -> Formula {
        Formula::Eq {
            left,
            right,
            negated: false,
        }
    }

    pub fn neq(left: Var, right: Var) -> Formula {
        Formula::Eq {
            left,
            right,
            negated: true,
        }
    }

    pub fn rel(symbol: &str, args: VarTuple, negated: bool) -> Result<Formula, FormulaError> {
        if !is_identifier(symbol) || RESERVED_RELATIONS.contains(&symbol) {
            return Err(FormulaError::InvalidRelation(symbol.to_string()));
        }
        Ok(Formula::Rel {
            symbol: symbol.into(),
            args,
            negated,
        })
    }

    pub fn dep(antecedent: VarTuple, consequent: VarTuple) -> Formula {
        Formula::Dep {
            antecedent,
            consequent,
        }
    }

    pub fn constancy(vars: VarTuple) -> Formula {
        Formula::Constancy(vars)
    }

    pub fn indep(lhs: VarTuple, rhs: VarTuple) -> Formula {
        Formula::Indep { lhs, rhs }
    }

    pub fn cond_indep(condition: VarTuple, lhs: VarTuple, rhs: VarTuple) -> Formula {
        Formula::CondIndep {
            condition,
            lhs,
            rhs,
        }
    }

    pub fn inclusion(lhs: VarTuple, rhs: VarTuple) -> Result<Formula, FormulaError> {
        MatchedPair::new(lhs, rhs).map(Formula::Inclusion)
    }

    pub fn exclusion(lhs: VarTuple, rhs: VarTuple) -> Result<Formula, FormulaError> {
        MatchedPair::new(lhs, rhs).map(Formula::Exclusion)
    }

    pub fn tuple_diseq(lhs: VarTuple, rhs: VarTuple) -> Result<Formula, FormulaError> {
        MatchedPair::new(lhs, rhs).map(Formula::TupleDiseq)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn exists(v: Var, body: Formula) -> Formula {
        Formula::Exists(v, Box::new(body))
    }

    pub fn forall(v: Var, body: Formula) -> Formula {
        Formula::Forall(v, Box::new(body))
    }

    pub fn slash_exists(v: Var, independent_of: Var, body: Formula) -> Formula {
        Formula::SlashExists {
            var: v,
            independent_of,
            body: Box::new(body),
        }
    }

    pub fn lin_imp(a: Formula, b: Formula) -> Formula {
        Formula::LinImp(Box::new(a), Box::new(b))
    }

    /// Right-nested conjunction of a nonempty list.
    pub fn and_all(mut parts: Vec<Formula>) -> Formula {
        let mut acc = parts.pop().expect("and_all of an empty list");
        while let Some(p) = parts.pop() {
            acc = Formula::and(p, acc);
        }
        acc
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Formula::Eq { .. } | Formula::Rel { .. })
    }

    /// The literal with its negation flag flipped; `None` for non-literals.
    pub fn negate_literal(&self) -> Option<Formula> {
        match self {
            Formula::Eq {
                left,
                right,
                negated,
            } => Some(Formula::Eq {
                left: left.clone(),
                right: right.clone(),
                negated: !negated,
            }),
            Formula::Rel {
                symbol,
                args,
                negated,
            } => Some(Formula::Rel {
                symbol: symbol.clone(),
                args: args.clone(),
                negated: !negated,
            }),
            _ => None,
        }
    }

    pub fn atom_kind(&self) -> Option<AtomKind> {
        Some(match self {
            Formula::Dep { .. } => AtomKind::Dep,
            Formula::Constancy(_) => AtomKind::Constancy,
            Formula::Indep { .. } => AtomKind::Indep,
            Formula::CondIndep { .. } => AtomKind::CondIndep,
            Formula::Inclusion(_) => AtomKind::Inclusion,
            Formula::Exclusion(_) => AtomKind::Exclusion,
            _ => return None,
        })
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::And(a, b) | Formula::Or(a, b) | Formula::LinImp(a, b) => vec![a, b],
            Formula::Exists(_, b) | Formula::Forall(_, b) => vec![b],
            Formula::SlashExists { body, .. } => vec![body],
            _ => Vec::new(),
        }
    }

    /// Pre-order traversal.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Formula)) {
        visit(self);
        for c in self.children() {
            c.walk(visit);
        }
    }

    pub fn contains_atom(&self, kind: AtomKind) -> bool {
        let mut found = false;
        self.walk(&mut |f| found |= f.atom_kind() == Some(kind));
        found
    }

    /// No dependency atoms, no slash quantifier and no linear implication.
    pub fn is_first_order(&self) -> bool {
        let mut ok = true;
        self.walk(&mut |f| {
            ok &= f.atom_kind().is_none()
                && !matches!(f, Formula::SlashExists { .. } | Formula::LinImp(..))
        });
        ok
    }

    /// Variables appearing in atoms, without regard to binding.
    pub fn atom_variables(&self) -> Vec<&Var> {
        match self {
            Formula::Eq { left, right, .. } => vec![left, right],
            Formula::Rel { args, .. } | Formula::Constancy(args) => args.iter().collect(),
            Formula::TupleDiseq(p) | Formula::Inclusion(p) | Formula::Exclusion(p) => {
                p.lhs.iter().chain(p.rhs.iter()).collect()
            }
            Formula::Dep {
                antecedent,
                consequent,
            } => antecedent.iter().chain(consequent.iter()).collect(),
            Formula::Indep { lhs, rhs } => lhs.iter().chain(rhs.iter()).collect(),
            Formula::CondIndep {
                condition,
                lhs,
                rhs,
            } => condition
                .iter()
                .chain(lhs.iter())
                .chain(rhs.iter())
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Every variable occurring anywhere, bound, free or as a binder.
    pub fn all_variables(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| {
            out.extend(f.atom_variables().into_iter().cloned());
            match f {
                Formula::Exists(v, _) | Formula::Forall(v, _) => {
                    out.insert(v.clone());
                }
                Formula::SlashExists {
                    var,
                    independent_of,
                    ..
                } => {
                    out.insert(var.clone());
                    out.insert(independent_of.clone());
                }
                _ => {}
            }
        });
        out
    }

    pub fn free_variables(&self) -> BTreeSet<Var> {
        match self {
            Formula::And(a, b) | Formula::Or(a, b) | Formula::LinImp(a, b) => {
                let mut s = a.free_variables();
                s.extend(b.free_variables());
                s
            }
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let mut s = body.free_variables();
                s.remove(v);
                s
            }
            // The `independent_of` variable is a reference to the current
            // team, not a binder.
            Formula::SlashExists {
                var,
                independent_of,
                body,
            } => {
                let mut s = body.free_variables();
                s.remove(var);
                s.insert(independent_of.clone());
                s
            }
            atom => atom.atom_variables().into_iter().cloned().collect(),
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_variables().is_empty()
    }

    /// Replaces the free occurrences of `old` by `new`. Fails if `new`
    /// occurs anywhere in the formula, which rules out capture.
    pub fn rename(&self, old: &Var, new: &Var) -> Result<Formula, FormulaError> {
        if self.all_variables().contains(new) {
            return Err(FormulaError::NameClash {
                old: old.clone(),
                new: new.clone(),
            });
        }
        Ok(self.rename_free(old, new))
    }

    fn rename_free(&self, old: &Var, new: &Var) -> Formula {
        let sub = |v: &Var| if v == old { new.clone() } else { v.clone() };
        let sub_pair = |p: &MatchedPair| MatchedPair {
            lhs: p.lhs.map(sub),
            rhs: p.rhs.map(sub),
        };
        match self {
            Formula::Eq {
                left,
                right,
                negated,
            } => Formula::Eq {
                left: sub(left),
                right: sub(right),
                negated: *negated,
            },
            Formula::Rel {
                symbol,
                args,
                negated,
            } => Formula::Rel {
                symbol: symbol.clone(),
                args: args.map(sub),
                negated: *negated,
            },
            Formula::TupleDiseq(p) => Formula::TupleDiseq(sub_pair(p)),
            Formula::Inclusion(p) => Formula::Inclusion(sub_pair(p)),
            Formula::Exclusion(p) => Formula::Exclusion(sub_pair(p)),
            Formula::Dep {
                antecedent,
                consequent,
            } => Formula::dep(antecedent.map(sub), consequent.map(sub)),
            Formula::Constancy(t) => Formula::Constancy(t.map(sub)),
            Formula::Indep { lhs, rhs } => Formula::indep(lhs.map(sub), rhs.map(sub)),
            Formula::CondIndep {
                condition,
                lhs,
                rhs,
            } => Formula::cond_indep(condition.map(sub), lhs.map(sub), rhs.map(sub)),
            Formula::And(a, b) => Formula::and(a.rename_free(old, new), b.rename_free(old, new)),
            Formula::Or(a, b) => Formula::or(a.rename_free(old, new), b.rename_free(old, new)),
            Formula::LinImp(a, b) => {
                Formula::lin_imp(a.rename_free(old, new), b.rename_free(old, new))
            }
            Formula::Exists(v, _) | Formula::Forall(v, _) if v == old => self.clone(),
            Formula::Exists(v, body) => Formula::exists(v.clone(), body.rename_free(old, new)),
            Formula::Forall(v, body) => Formula::forall(v.clone(), body.rename_free(old, new)),
            Formula::SlashExists {
                var,
                independent_of,
                body,
            } => {
                let body = if var == old {
                    (**body).clone()
                } else {
                    body.rename_free(old, new)
                };
                Formula::slash_exists(var.clone(), sub(independent_of), body)
            }
        }
    }
}

/// Expands `a <-> b` for literals into `(a & b) | (!a & !b)`.
pub fn desugar_iff(a: &Formula, b: &Formula) -> Result<Formula, FormulaError> {
    let (na, nb) = match (a.negate_literal(), b.negate_literal()) {
        (Some(na), Some(nb)) => (na, nb),
        _ => {
            let bad = if a.is_literal() { b } else { a };
            return Err(FormulaError::NotALiteral(bad.to_string()));
        }
    };
    Ok(Formula::or(
        Formula::and(a.clone(), b.clone()),
        Formula::and(na, nb),
    ))
}
