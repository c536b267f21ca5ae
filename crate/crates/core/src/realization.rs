//! Checks that vector labels realize a hypergraph, and compares classical
//! gadget relations with Born probabilities at the terminals.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{born, inner, normalize, Ket, ORTHO_TOL};
use crate::hypergraph::{classify_pair, GadgetRelation, OrthoHypergraph};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContextResidual {
    pub context: usize,
    pub atoms: Vec<String>,
    /// Largest `|<u|v>|` over distinct atoms of the context.
    pub max_overlap: f64,
    /// Largest `|1 - ||v|||` over the context.
    pub max_norm_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealizationReport {
    pub tolerance: f64,
    pub dim: usize,
    pub contexts: Vec<ContextResidual>,
    /// Indices of contexts with a residual above tolerance.
    pub offending: Vec<usize>,
    pub pass: bool,
}

impl fmt::Display for RealizationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>7}  {:>18}  {:>18}  atoms",
            "context", "max |<u|v>|", "max |1-|v||"
        )?;
        for c in &self.contexts {
            writeln!(
                f,
                "{:>7}  {:>18.6e}  {:>18.6e}  {}",
                c.context,
                c.max_overlap,
                c.max_norm_error,
                c.atoms.join(",")
            )?;
        }
        write!(
            f,
            "verdict: {} (dim {}, tolerance {:e}, {} offending)",
            if self.pass { "pass" } else { "fail" },
            self.dim,
            self.tolerance,
            self.offending.len()
        )
    }
}

/// Checks that every context of `h` is an orthonormal basis of its labels.
pub fn verify_realization(h: &OrthoHypergraph, tol: f64) -> Result<RealizationReport> {
    let mut dim = None;
    for a in h.atoms() {
        let v = a
            .vector
            .as_ref()
            .ok_or_else(|| Error::MissingLabel(a.id.clone()))?;
        match dim {
            None => dim = Some(v.dim()),
            Some(d) if d != v.dim() => {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.dim(),
                })
            }
            Some(_) => {}
        }
    }
    let dim = dim.unwrap_or(0);
    let mut contexts = Vec::with_capacity(h.contexts().len());
    for (i, ctx) in h.contexts().iter().enumerate() {
        if ctx.len() != dim {
            return Err(Error::ContextSizeMismatch {
                context: i,
                size: ctx.len(),
                dim,
            });
        }
        let kets = ctx
            .iter()
            .map(|id| {
                h.atom(id)
                    .and_then(|a| a.vector.as_ref())
                    .ok_or_else(|| Error::UnknownAtom(id.clone()))
            })
            .collect::<Result<Vec<&Ket>>>()?;
        let mut max_overlap = 0.0f64;
        for (j, u) in kets.iter().enumerate() {
            for v in &kets[j + 1..] {
                max_overlap = max_overlap.max(inner(u, v)?.norm());
            }
        }
        let max_norm_error = kets
            .iter()
            .map(|k| (1.0 - k.norm_sqr().sqrt()).abs())
            .fold(0.0, f64::max);
        contexts.push(ContextResidual {
            context: i,
            atoms: ctx.clone(),
            max_overlap,
            max_norm_error,
        });
    }
    let offending: Vec<usize> = contexts
        .iter()
        .filter(|c| c.max_overlap > tol || c.max_norm_error > tol)
        .map(|c| c.context)
        .collect();
    Ok(RealizationReport {
        tolerance: tol,
        dim,
        pass: offending.is_empty(),
        contexts,
        offending,
    })
}

/// The unit vector completing `{u, v}` to an orthonormal basis of `C^3`.
///
/// Computed as the conjugated cross product, which is orthogonal to both
/// inputs under the antilinear inner product.
pub fn complete_context_d3(u: &Ket, v: &Ket) -> Result<Ket> {
    for k in [u, v] {
        if k.dim() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: k.dim(),
            });
        }
    }
    let overlap = inner(u, v)?.norm();
    if overlap > ORTHO_TOL {
        return Err(Error::NotOrthogonal(overlap));
    }
    let a = u.amplitudes();
    let b = v.amplitudes();
    let cross: [Complex64; 3] = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    normalize(&cross.map(|z| z.conj()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TerminalGap {
    pub classical: GadgetRelation,
    /// Born probability `|<to|from>|^2` of the terminal labels.
    pub quantum: f64,
    /// Set when the labels are orthogonal or collinear, where a gadget says nothing new.
    pub warning: Option<String>,
}

/// The classical relation between two terminals next to their Born probability.
pub fn terminal_gap(h: &OrthoHypergraph, from: &str, to: &str) -> Result<TerminalGap> {
    let label = |id: &str| -> Result<Ket> {
        let atom = h
            .atom(id)
            .ok_or_else(|| Error::UnknownAtom(id.to_string()))?;
        atom.vector
            .clone()
            .ok_or_else(|| Error::MissingLabel(id.to_string()))
    };
    let source = label(from)?;
    let target = label(to)?;
    let classical = classify_pair(h, from, to)?;
    let quantum = born(&source, &target)?;
    let warning = if quantum < ORTHO_TOL {
        Some(format!("labels of {from} and {to} are orthogonal"))
    } else if quantum > 1.0 - ORTHO_TOL {
        Some(format!("labels of {from} and {to} are collinear"))
    } else {
        None
    };
    Ok(TerminalGap {
        classical,
        quantum,
        warning,
    })
}
