//! Orthogonality hypergraphs and their two-valued states.
//!
//! Atoms are yes/no propositions identified by string ids; contexts are
//! maximal sets of mutually exclusive atoms. A two-valued state assigns 0/1
//! to atoms so that no context holds two 1s; a total state additionally has
//! exactly one 1 in every context.

mod io;
mod search;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{Ket, ORTHO_TOL};

pub use search::Closure;

/// An atom with an optional vector label.
#[derive(Clone, Debug, PartialEq)]
pub struct Atom {
    pub id: String,
    pub vector: Option<Ket>,
}

impl Atom {
    pub fn new(id: impl Into<String>) -> Atom {
        Atom {
            id: id.into(),
            vector: None,
        }
    }

    pub fn labeled(id: impl Into<String>, vector: Ket) -> Atom {
        Atom {
            id: id.into(),
            vector: Some(vector),
        }
    }
}

/// A structural problem reported by [`OrthoHypergraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    DuplicateAtomId { atom: String },
    UnknownAtom { context: usize, atom: String },
    RepeatedAtomInContext { context: usize, atom: String },
    ContextTooSmall { context: usize, size: usize },
    OrphanAtom { atom: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateAtomId { atom } => write!(f, "atom id {atom:?} declared twice"),
            Violation::UnknownAtom { context, atom } => {
                write!(f, "context {context} references unknown atom {atom:?}")
            }
            Violation::RepeatedAtomInContext { context, atom } => {
                write!(f, "context {context} repeats atom {atom:?}")
            }
            Violation::ContextTooSmall { context, size } => {
                write!(f, "context {context} has {size} atom(s), need at least 2")
            }
            Violation::OrphanAtom { atom } => write!(f, "atom {atom:?} belongs to no context"),
        }
    }
}

/// Atoms grouped into (possibly intertwined) contexts.
///
/// Construction does not validate; every analysis entry point calls
/// [`OrthoHypergraph::validate`] first and fails with
/// [`Error::InvalidHypergraph`] on violations.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OrthoHypergraph {
    atoms: Vec<Atom>,
    contexts: Vec<Vec<String>>,
}

impl OrthoHypergraph {
    pub fn new(atoms: Vec<Atom>, contexts: Vec<Vec<String>>) -> OrthoHypergraph {
        OrthoHypergraph { atoms, contexts }
    }

    /// Builds an unlabeled hypergraph whose atoms are exactly those named by `contexts`,
    /// in order of first appearance.
    pub fn from_contexts<S: AsRef<str>>(contexts: &[Vec<S>]) -> OrthoHypergraph {
        let mut seen = BTreeSet::new();
        let mut atoms = Vec::new();
        for id in contexts.iter().flatten() {
            if seen.insert(id.as_ref().to_string()) {
                atoms.push(Atom::new(id.as_ref()));
            }
        }
        let contexts = contexts
            .iter()
            .map(|c| c.iter().map(|s| s.as_ref().to_string()).collect())
            .collect();
        OrthoHypergraph { atoms, contexts }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn contexts(&self) -> &[Vec<String>] {
        &self.contexts
    }

    pub fn atom(&self, id: &str) -> Option<&Atom> {
        self.atoms.iter().find(|a| a.id == id)
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty() && self.contexts.is_empty()
    }

    /// A copy without the context at `index`.
    pub fn without_context(&self, index: usize) -> OrthoHypergraph {
        let mut h = self.clone();
        h.contexts.remove(index);
        h
    }

    /// Lists every invariant violation; an empty list means the hypergraph is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut ids = BTreeSet::new();
        for a in &self.atoms {
            if !ids.insert(a.id.as_str()) {
                out.push(Violation::DuplicateAtomId { atom: a.id.clone() });
            }
        }
        let mut used = BTreeSet::new();
        for (i, ctx) in self.contexts.iter().enumerate() {
            if ctx.len() < 2 {
                out.push(Violation::ContextTooSmall {
                    context: i,
                    size: ctx.len(),
                });
            }
            let mut local = BTreeSet::new();
            for id in ctx {
                if !ids.contains(id.as_str()) {
                    out.push(Violation::UnknownAtom {
                        context: i,
                        atom: id.clone(),
                    });
                }
                if !local.insert(id.as_str()) {
                    out.push(Violation::RepeatedAtomInContext {
                        context: i,
                        atom: id.clone(),
                    });
                }
                used.insert(id.as_str());
            }
        }
        for a in &self.atoms {
            if !used.contains(a.id.as_str()) {
                out.push(Violation::OrphanAtom { atom: a.id.clone() });
            }
        }
        out
    }

    fn ensure_valid(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidHypergraph(violations))
        }
    }

    fn require_atom(&self, id: &str) -> Result<()> {
        if self.atom(id).is_some() {
            Ok(())
        } else {
            Err(Error::UnknownAtom(id.to_string()))
        }
    }
}

/// A partial map from atom id to truth value.
///
/// Ordered by atom id, so sorting a list of total states over the same atoms
/// sorts them lexicographically by their value sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct TwoValuedState {
    values: BTreeMap<String, bool>,
}

impl TwoValuedState {
    pub fn new() -> TwoValuedState {
        TwoValuedState::default()
    }

    pub fn with(mut self, atom: impl Into<String>, value: bool) -> TwoValuedState {
        self.values.insert(atom.into(), value);
        self
    }

    pub fn set(&mut self, atom: impl Into<String>, value: bool) {
        self.values.insert(atom.into(), value);
    }

    pub fn get(&self, atom: &str) -> Option<bool> {
        self.values.get(atom).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, bool)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// True if no context of `h` has two atoms assigned 1.
    pub fn is_exclusive(&self, h: &OrthoHypergraph) -> bool {
        h.contexts
            .iter()
            .all(|c| c.iter().filter(|a| self.get(a) == Some(true)).count() <= 1)
    }

    /// True if every atom of `h` is assigned and every context has exactly one 1.
    pub fn is_total_for(&self, h: &OrthoHypergraph) -> bool {
        h.atoms.iter().all(|a| self.get(&a.id).is_some())
            && h.contexts
                .iter()
                .all(|c| c.iter().filter(|a| self.get(a) == Some(true)).count() == 1)
    }

    /// True if `other` agrees with every value assigned here.
    pub fn is_extended_by(&self, other: &TwoValuedState) -> bool {
        self.iter().all(|(k, v)| other.get(k) == Some(v))
    }
}

impl FromIterator<(String, bool)> for TwoValuedState {
    fn from_iter<I: IntoIterator<Item = (String, bool)>>(iter: I) -> Self {
        TwoValuedState {
            values: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for TwoValuedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.values {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{k}={}", u8::from(*v))?;
        }
        Ok(())
    }
}

/// How the value of one terminal constrains another across all total states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    TrueImpliesFalse,
    TrueImpliesTrue,
    Unconstrained,
    NoStateWithSourceTrue,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Relation::TrueImpliesFalse => "TrueImpliesFalse",
            Relation::TrueImpliesTrue => "TrueImpliesTrue",
            Relation::Unconstrained => "Unconstrained",
            Relation::NoStateWithSourceTrue => "NoStateWithSourceTrue",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Relation> {
        match s {
            "TrueImpliesFalse" => Ok(Relation::TrueImpliesFalse),
            "TrueImpliesTrue" => Ok(Relation::TrueImpliesTrue),
            "Unconstrained" => Ok(Relation::Unconstrained),
            "NoStateWithSourceTrue" => Ok(Relation::NoStateWithSourceTrue),
            other => Err(Error::Parse(format!("unknown relation {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetRelation {
    pub from: String,
    pub to: String,
    pub relation: Relation,
    /// Total states with `from = 1` and `to = 1`.
    pub both_true: u64,
    /// Total states with `from = 1` and `to = 0`.
    pub target_false: u64,
}

impl GadgetRelation {
    fn from_counts(from: &str, to: &str, both_true: u64, target_false: u64) -> GadgetRelation {
        let relation = match (both_true, target_false) {
            (0, 0) => Relation::NoStateWithSourceTrue,
            (0, _) => Relation::TrueImpliesFalse,
            (_, 0) => Relation::TrueImpliesTrue,
            _ => Relation::Unconstrained,
        };
        GadgetRelation {
            from: from.to_string(),
            to: to.to_string(),
            relation,
            both_true,
            target_false,
        }
    }
}

/// Status of one atom given that the prepared atom is true.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AtomStatus {
    Forced1,
    Forced0,
    /// No total state has the prepared atom true, so any admissible
    /// assignment must leave this atom undefined.
    UndefinedRequired,
    Free,
}

impl fmt::Display for AtomStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AtomStatus::Forced1 => "forced-1",
            AtomStatus::Forced0 => "forced-0",
            AtomStatus::UndefinedRequired => "undefined-required",
            AtomStatus::Free => "free",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndefinitenessReport {
    pub prepared: String,
    /// Number of total states with the prepared atom true.
    pub total_states: u64,
    /// Every atom other than the prepared one, sorted by id.
    pub atoms: Vec<(String, AtomStatus)>,
}

impl IndefinitenessReport {
    pub fn status(&self, atom: &str) -> Option<AtomStatus> {
        self.atoms.iter().find(|(a, _)| a == atom).map(|(_, s)| *s)
    }
}

/// All total two-valued states of `h` that extend `constraints`, sorted.
pub fn enumerate_total_states(
    h: &OrthoHypergraph,
    constraints: &TwoValuedState,
) -> Result<Vec<TwoValuedState>> {
    let (engine, start) = prepare(h, constraints, true)?;
    let mut states: Vec<TwoValuedState> = match start {
        Some(start) => engine
            .collect(start)
            .into_iter()
            .map(|v| engine.to_state(&v))
            .collect(),
        None => Vec::new(),
    };
    states.sort();
    Ok(states)
}

/// Number of total states extending `constraints`, without materializing them.
pub fn count_total_states(h: &OrthoHypergraph, constraints: &TwoValuedState) -> Result<u64> {
    let (engine, start) = prepare(h, constraints, true)?;
    Ok(start.map_or(0, |s| engine.count(s)))
}

/// Like [`count_total_states`], but constraints that break exclusivity just
/// have no extensions.
fn count_extensions(h: &OrthoHypergraph, constraints: &TwoValuedState) -> Result<u64> {
    let (engine, start) = prepare(h, constraints, false)?;
    Ok(start.map_or(0, |s| engine.count(s)))
}

fn prepare(
    h: &OrthoHypergraph,
    constraints: &TwoValuedState,
    strict: bool,
) -> Result<(search::Engine, Option<Vec<Option<bool>>>)> {
    h.ensure_valid()?;
    let engine = search::Engine::new(h);
    let partial = engine.values_of(constraints)?;
    if strict {
        for (i, ctx) in engine.contexts.iter().enumerate() {
            if ctx.iter().filter(|&&a| partial[a] == Some(true)).count() > 1 {
                return Err(Error::InvalidConstraint(format!(
                    "context {i} has more than one atom constrained to 1"
                )));
            }
        }
    }
    let start = engine.propagate(partial).ok();
    Ok((engine, start))
}

/// Applies the exclusivity and completeness rules to a fixpoint.
pub fn closure(h: &OrthoHypergraph, partial: &TwoValuedState) -> Result<Closure> {
    h.ensure_valid()?;
    let engine = search::Engine::new(h);
    let start = engine.values_of(partial)?;
    Ok(match engine.propagate(start) {
        Ok(values) => Closure::Consistent(engine.to_state(&values)),
        Err(atom) => Closure::Contradiction {
            atom: engine.atom_ids[atom].clone(),
        },
    })
}

/// Classifies what `from = 1` implies for `to` over all total states.
pub fn classify_pair(h: &OrthoHypergraph, from: &str, to: &str) -> Result<GadgetRelation> {
    h.require_atom(from)?;
    h.require_atom(to)?;
    if from == to {
        return Err(Error::IdenticalTerminals(from.to_string()));
    }
    let source = TwoValuedState::new().with(from, true);
    let both_true = count_extensions(h, &source.clone().with(to, true))?;
    let target_false = count_extensions(h, &source.with(to, false))?;
    Ok(GadgetRelation::from_counts(
        from,
        to,
        both_true,
        target_false,
    ))
}

/// Identifies atoms with equal ids and takes the union of the contexts.
///
/// Contexts already present in `h1` (as atom sets) are not duplicated.
pub fn merge(h1: &OrthoHypergraph, h2: &OrthoHypergraph) -> Result<OrthoHypergraph> {
    let mut atoms = h1.atoms.clone();
    let mut index: HashMap<String, usize> = atoms
        .iter()
        .enumerate()
        .map(|(i, a)| (a.id.clone(), i))
        .collect();
    for a in &h2.atoms {
        match index.get(&a.id) {
            Some(&i) => {
                let existing = &mut atoms[i];
                match (&existing.vector, &a.vector) {
                    (Some(u), Some(v)) => {
                        if u.dim() != v.dim() || !u.is_collinear(v, ORTHO_TOL) {
                            return Err(Error::LabelConflict(a.id.clone()));
                        }
                    }
                    (None, Some(v)) => existing.vector = Some(v.clone()),
                    _ => {}
                }
            }
            None => {
                index.insert(a.id.clone(), atoms.len());
                atoms.push(a.clone());
            }
        }
    }
    let mut seen: BTreeSet<BTreeSet<String>> = BTreeSet::new();
    let mut contexts = Vec::new();
    for ctx in h1.contexts.iter().chain(&h2.contexts) {
        if seen.insert(ctx.iter().cloned().collect()) {
            contexts.push(ctx.clone());
        }
    }
    Ok(OrthoHypergraph { atoms, contexts })
}

/// Reports, for every atom other than `prepared`, whether its value is
/// fixed, free, or necessarily undefined once `prepared` is true.
pub fn indefiniteness_report(h: &OrthoHypergraph, prepared: &str) -> Result<IndefinitenessReport> {
    h.require_atom(prepared)?;
    let constraint = TwoValuedState::new().with(prepared, true);
    let (engine, start) = prepare(h, &constraint, true)?;
    let n = engine.atom_ids.len();
    let mut ones = vec![0u64; n];
    let mut total = 0u64;
    if let Some(start) = start {
        engine.visit(start, &mut |values| {
            total += 1;
            for (i, v) in values.iter().enumerate() {
                if *v == Some(true) {
                    ones[i] += 1;
                }
            }
        });
    }
    let mut atoms: Vec<(String, AtomStatus)> = engine
        .atom_ids
        .iter()
        .enumerate()
        .filter(|(_, id)| id.as_str() != prepared)
        .map(|(i, id)| {
            let status = if total == 0 {
                AtomStatus::UndefinedRequired
            } else if ones[i] == total {
                AtomStatus::Forced1
            } else if ones[i] == 0 {
                AtomStatus::Forced0
            } else {
                AtomStatus::Free
            };
            (id.clone(), status)
        })
        .collect();
    atoms.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(IndefinitenessReport {
        prepared: prepared.to_string(),
        total_states: total,
        atoms,
    })
}
