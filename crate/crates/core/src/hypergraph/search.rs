//! Closure propagation and depth-first enumeration of total states.
//!
//! The search branches on the context with the fewest unassigned atoms that
//! does not yet hold a 1, picks each candidate atom as that context's 1 and
//! propagates. Each branch fixes a different atom to 1 in the same context,
//! so the branches partition the total states and none is found twice.
//! Worst case is exponential in the number of contexts.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use super::{OrthoHypergraph, TwoValuedState};
use crate::error::{Error, Result};

/// Result of [`super::closure`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure {
    /// The fixpoint of the two propagation rules.
    Consistent(TwoValuedState),
    /// Propagation forced a conflicting value; `atom` is where it surfaced.
    Contradiction { atom: String },
}

impl Closure {
    pub fn state(&self) -> Option<&TwoValuedState> {
        match self {
            Closure::Consistent(s) => Some(s),
            Closure::Contradiction { .. } => None,
        }
    }

    pub fn is_contradiction(&self) -> bool {
        matches!(self, Closure::Contradiction { .. })
    }
}

pub(crate) type Values = Vec<Option<bool>>;

pub(crate) struct Engine {
    pub atom_ids: Vec<String>,
    index: HashMap<String, usize>,
    pub contexts: Vec<Vec<usize>>,
    atom_contexts: Vec<Vec<usize>>,
}

impl Engine {
    /// `h` must be valid.
    pub fn new(h: &OrthoHypergraph) -> Engine {
        let atom_ids: Vec<String> = h.atoms.iter().map(|a| a.id.clone()).collect();
        let index: HashMap<String, usize> = atom_ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();
        let contexts: Vec<Vec<usize>> = h
            .contexts
            .iter()
            .map(|c| c.iter().map(|id| index[id]).collect())
            .collect();
        let mut atom_contexts = vec![Vec::new(); atom_ids.len()];
        for (ci, ctx) in contexts.iter().enumerate() {
            for &a in ctx {
                atom_contexts[a].push(ci);
            }
        }
        Engine {
            atom_ids,
            index,
            contexts,
            atom_contexts,
        }
    }

    pub fn values_of(&self, state: &TwoValuedState) -> Result<Values> {
        let mut values = vec![None; self.atom_ids.len()];
        for (id, v) in state.iter() {
            let i = *self
                .index
                .get(id)
                .ok_or_else(|| Error::UnknownAtom(id.to_string()))?;
            values[i] = Some(v);
        }
        Ok(values)
    }

    pub fn to_state(&self, values: &Values) -> TwoValuedState {
        values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|b| (self.atom_ids[i].clone(), b)))
            .collect()
    }

    /// Closure over every context. `Err` carries the atom where a conflict surfaced.
    pub fn propagate(&self, values: Values) -> std::result::Result<Values, usize> {
        self.propagate_from(values, 0..self.contexts.len())
    }

    fn propagate_from(
        &self,
        mut values: Values,
        seeds: impl IntoIterator<Item = usize>,
    ) -> std::result::Result<Values, usize> {
        let mut queued = vec![false; self.contexts.len()];
        let mut queue = VecDeque::new();
        for c in seeds {
            if !queued[c] {
                queued[c] = true;
                queue.push_back(c);
            }
        }
        while let Some(c) = queue.pop_front() {
            queued[c] = false;
            let ctx = &self.contexts[c];
            let mut ones = ctx.iter().filter(|&&a| values[a] == Some(true));
            let first_one = ones.next();
            if let Some(&second) = ones.next() {
                return Err(second);
            }
            let open: Vec<usize> = ctx
                .iter()
                .copied()
                .filter(|&a| values[a].is_none())
                .collect();
            let forced = match (first_one, open.len()) {
                (Some(_), _) => Some(false),
                (None, 0) => return Err(ctx[0]),
                (None, 1) => Some(true),
                (None, _) => None,
            };
            if let Some(value) = forced {
                for a in open {
                    values[a] = Some(value);
                    for &d in &self.atom_contexts[a] {
                        if d != c && !queued[d] {
                            queued[d] = true;
                            queue.push_back(d);
                        }
                    }
                }
            }
        }
        Ok(values)
    }

    /// Children of a propagated node, or `None` if the node is already total.
    fn branches(&self, values: &Values) -> Option<Vec<Values>> {
        let pick = self
            .contexts
            .iter()
            .filter(|ctx| ctx.iter().all(|&a| values[a] != Some(true)))
            .min_by_key(|ctx| ctx.iter().filter(|&&a| values[a].is_none()).count())?;
        let children = pick
            .iter()
            .filter(|&&a| values[a].is_none())
            .filter_map(|&a| {
                let mut child = values.clone();
                child[a] = Some(true);
                self.propagate_from(child, self.atom_contexts[a].iter().copied())
                    .ok()
            })
            .collect();
        Some(children)
    }

    /// Calls `f` on every total state below the propagated node `values`.
    pub fn visit(&self, values: Values, f: &mut dyn FnMut(&Values)) {
        match self.branches(&values) {
            None => f(&values),
            Some(children) => {
                for child in children {
                    self.visit(child, f);
                }
            }
        }
    }

    /// All total states below `values`; top-level branches run in parallel.
    pub fn collect(&self, values: Values) -> Vec<Values> {
        match self.branches(&values) {
            None => vec![values],
            Some(children) => children
                .into_par_iter()
                .map(|child| {
                    let mut out = Vec::new();
                    self.visit(child, &mut |v| out.push(v.clone()));
                    out
                })
                .flatten()
                .collect(),
        }
    }

    pub fn count(&self, values: Values) -> u64 {
        match self.branches(&values) {
            None => 1,
            Some(children) => children
                .into_par_iter()
                .map(|child| {
                    let mut n = 0u64;
                    self.visit(child, &mut |_| n += 1);
                    n
                })
                .sum(),
        }
    }
}
