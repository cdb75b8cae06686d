//! Lowering of formulas to a node arena with resolved column indices.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::EvalError;
use crate::formula::{Formula, Var, VarTuple};
use crate::structure::{Element, Structure};

pub(crate) type NodeId = usize;

#[derive(Debug, Clone)]
pub(crate) enum Lit {
    Eq {
        l: usize,
        r: usize,
        negated: bool,
    },
    Rel {
        rel: usize,
        args: Vec<usize>,
        negated: bool,
    },
    TupleDiseq {
        l: Vec<usize>,
        r: Vec<usize>,
    },
}

#[derive(Debug, Clone)]
pub(crate) enum Atom {
    Dep {
        ante: Vec<usize>,
        cons: Vec<usize>,
    },
    Indep {
        l: Vec<usize>,
        r: Vec<usize>,
    },
    CondIndep {
        c: Vec<usize>,
        l: Vec<usize>,
        r: Vec<usize>,
    },
    Incl {
        l: Vec<usize>,
        r: Vec<usize>,
    },
    Excl {
        l: Vec<usize>,
        r: Vec<usize>,
    },
}

#[derive(Debug, Clone)]
pub(crate) struct Binder {
    pub col: usize,
    pub insert: bool,
    pub body: NodeId,
}

#[derive(Debug, Clone)]
pub(crate) enum Kind {
    Lit(Lit),
    Atom(Atom),
    And(NodeId, NodeId),
    Or(NodeId, NodeId),
    LinImp(NodeId, NodeId),
    Forall(Binder),
    /// `hoisted` are necessary conditions on the extended team, compiled
    /// against its layout.
    Exists {
        b: Binder,
        hoisted: Vec<NodeId>,
    },
    /// Rows sharing their values on `key` must get the same witness.
    Slash {
        b: Binder,
        key: Vec<usize>,
        hoisted: Vec<NodeId>,
    },
}

#[derive(Debug, Clone)]
pub(crate) struct Node {
    pub kind: Kind,
    pub flat: bool,
    pub downward_closed: bool,
    /// Number of variables in the layout the node is evaluated against.
    pub width: usize,
}

pub(crate) struct Program {
    pub nodes: Vec<Node>,
    pub relations: Vec<HashSet<Vec<Element>>>,
    pub root: NodeId,
}

struct Compiler<'a> {
    m: &'a Structure,
    nodes: Vec<Node>,
    relations: Vec<HashSet<Vec<Element>>>,
    rel_index: HashMap<String, usize>,
    hoist_compound: bool,
}

/// `layout` must be sorted and duplicate free.
pub(crate) fn compile(
    f: &Formula,
    layout: &[Var],
    m: &Structure,
    hoist_compound: bool,
) -> Result<Program, EvalError> {
    let mut c = Compiler {
        m,
        nodes: Vec::new(),
        relations: Vec::new(),
        rel_index: HashMap::new(),
        hoist_compound,
    };
    let root = c.node(f, layout)?;
    Ok(Program {
        nodes: c.nodes,
        relations: c.relations,
        root,
    })
}

fn col(layout: &[Var], v: &Var) -> Result<usize, EvalError> {
    layout
        .binary_search(v)
        .map_err(|_| EvalError::UnknownVariable(v.clone()))
}

fn cols(layout: &[Var], t: &VarTuple) -> Result<Vec<usize>, EvalError> {
    t.iter().map(|v| col(layout, v)).collect()
}

fn extend(layout: &[Var], x: &Var) -> (Vec<Var>, usize, bool) {
    let mut out = layout.to_vec();
    match layout.binary_search(x) {
        Ok(i) => (out, i, false),
        Err(i) => {
            out.insert(i, x.clone());
            (out, i, true)
        }
    }
}

impl Compiler<'_> {
    fn push(&mut self, kind: Kind, flat: bool, downward_closed: bool) -> NodeId {
        self.nodes.push(Node {
            kind,
            flat,
            downward_closed,
            width: 0,
        });
        self.nodes.len() - 1
    }

    fn relation(&mut self, name: &str, arity: usize) -> Result<usize, EvalError> {
        let rel = self
            .m
            .relation(name)
            .ok_or_else(|| EvalError::UnknownRelation(name.to_string()))?;
        if rel.arity != arity && !rel.tuples.is_empty() {
            return Err(EvalError::RelationArity {
                name: name.to_string(),
                expected: rel.arity,
                found: arity,
            });
        }
        if let Some(&i) = self.rel_index.get(name) {
            return Ok(i);
        }
        self.relations.push(rel.tuples.iter().cloned().collect());
        self.rel_index
            .insert(name.to_string(), self.relations.len() - 1);
        Ok(self.relations.len() - 1)
    }

    fn node(&mut self, f: &Formula, layout: &[Var]) -> Result<NodeId, EvalError> {
        let id = match f {
            Formula::Eq {
                left,
                right,
                negated,
            } => {
                let lit = Lit::Eq {
                    l: col(layout, left)?,
                    r: col(layout, right)?,
                    negated: *negated,
                };
                self.push(Kind::Lit(lit), true, true)
            }
            Formula::Rel {
                symbol,
                args,
                negated,
            } => {
                let lit = Lit::Rel {
                    rel: self.relation(symbol, args.len())?,
                    args: cols(layout, args)?,
                    negated: *negated,
                };
                self.push(Kind::Lit(lit), true, true)
            }
            Formula::TupleDiseq(p) => {
                let lit = Lit::TupleDiseq {
                    l: cols(layout, p.lhs())?,
                    r: cols(layout, p.rhs())?,
                };
                self.push(Kind::Lit(lit), true, true)
            }
            Formula::Dep {
                antecedent,
                consequent,
            } => {
                let a = Atom::Dep {
                    ante: cols(layout, antecedent)?,
                    cons: cols(layout, consequent)?,
                };
                self.push(Kind::Atom(a), false, true)
            }
            Formula::Constancy(t) => {
                let a = Atom::Dep {
                    ante: Vec::new(),
                    cons: cols(layout, t)?,
                };
                self.push(Kind::Atom(a), false, true)
            }
            Formula::Indep { lhs, rhs } => {
                let a = Atom::Indep {
                    l: cols(layout, lhs)?,
                    r: cols(layout, rhs)?,
                };
                self.push(Kind::Atom(a), false, false)
            }
            Formula::CondIndep {
                condition,
                lhs,
                rhs,
            } => {
                let a = Atom::CondIndep {
                    c: cols(layout, condition)?,
                    l: cols(layout, lhs)?,
                    r: cols(layout, rhs)?,
                };
                self.push(Kind::Atom(a), false, false)
            }
            Formula::Inclusion(p) => {
                let a = Atom::Incl {
                    l: cols(layout, p.lhs())?,
                    r: cols(layout, p.rhs())?,
                };
                self.push(Kind::Atom(a), false, false)
            }
            Formula::Exclusion(p) => {
                let a = Atom::Excl {
                    l: cols(layout, p.lhs())?,
                    r: cols(layout, p.rhs())?,
                };
                self.push(Kind::Atom(a), false, true)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::LinImp(a, b) => {
                let (ia, ib) = (self.node(a, layout)?, self.node(b, layout)?);
                let flat = self.nodes[ia].flat && self.nodes[ib].flat;
                let dc = self.nodes[ia].downward_closed && self.nodes[ib].downward_closed;
                match f {
                    Formula::And(..) => self.push(Kind::And(ia, ib), flat, dc),
                    Formula::Or(..) => self.push(Kind::Or(ia, ib), flat, dc),
                    _ => self.push(Kind::LinImp(ia, ib), false, false),
                }
            }
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                let (inner, col, insert) = extend(layout, x);
                let body_id = self.node(body, &inner)?;
                let (flat, dc) = (
                    self.nodes[body_id].flat,
                    self.nodes[body_id].downward_closed,
                );
                let b = Binder {
                    col,
                    insert,
                    body: body_id,
                };
                if matches!(f, Formula::Forall(..)) {
                    self.push(Kind::Forall(b), flat, dc)
                } else {
                    let hoisted = self.hoist(body, &inner)?;
                    self.push(Kind::Exists { b, hoisted }, flat, dc)
                }
            }
            Formula::SlashExists {
                var,
                independent_of,
                body,
            } => {
                let (inner, col, insert) = extend(layout, var);
                let body_id = self.node(body, &inner)?;
                col_check(layout, independent_of)?;
                let key = layout
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| *v != var && *v != independent_of)
                    .map(|(i, _)| i)
                    .collect();
                let hoisted = self.hoist(body, &inner)?;
                let dc = self.nodes[body_id].downward_closed;
                let b = Binder {
                    col,
                    insert,
                    body: body_id,
                };
                self.push(Kind::Slash { b, key, hoisted }, false, dc)
            }
        };
        self.nodes[id].width = layout.len();
        Ok(id)
    }

    /// Conjuncts reachable from `body` through conjunctions and quantifiers
    /// that only mention variables of `layout` not rebound on the way down.
    fn hoist(&mut self, body: &Formula, layout: &[Var]) -> Result<Vec<NodeId>, EvalError> {
        let mut found = Vec::new();
        collect(
            body,
            &BTreeSet::new(),
            layout,
            self.hoist_compound,
            &mut found,
        );
        found.into_iter().map(|g| self.node(g, layout)).collect()
    }
}

fn col_check(layout: &[Var], v: &Var) -> Result<(), EvalError> {
    col(layout, v).map(|_| ())
}

fn collect<'f>(
    f: &'f Formula,
    rebound: &BTreeSet<Var>,
    layout: &[Var],
    hoist_compound: bool,
    out: &mut Vec<&'f Formula>,
) {
    match f {
        Formula::And(a, b) => {
            collect(a, rebound, layout, hoist_compound, out);
            collect(b, rebound, layout, hoist_compound, out);
        }
        Formula::Exists(x, body)
        | Formula::Forall(x, body)
        | Formula::SlashExists { var: x, body, .. } => {
            let mut inner = rebound.clone();
            inner.insert(x.clone());
            collect(body, &inner, layout, hoist_compound, out);
        }
        Formula::Or(..) | Formula::LinImp(..) => {
            if hoist_compound && f.is_first_order() {
                push_if_local(f, rebound, layout, out);
            }
        }
        _ => push_if_local(f, rebound, layout, out),
    }
}

fn push_if_local<'f>(
    f: &'f Formula,
    rebound: &BTreeSet<Var>,
    layout: &[Var],
    out: &mut Vec<&'f Formula>,
) {
    let fv = f.free_variables();
    if fv
        .iter()
        .all(|v| !rebound.contains(v) && layout.binary_search(v).is_ok())
    {
        out.push(f);
    }
}
