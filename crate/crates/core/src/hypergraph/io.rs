//! JSON hypergraph files:
//!
//! ```json
//! {
//!   "atoms": [{"id": "PSI", "vector": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]}, {"id": "b"}],
//!   "contexts": [["PSI", "b", "c"]]
//! }
//! ```
//!
//! Vectors are lists of `[re, im]` pairs and are normalized on load. Ids are
//! case-sensitive. Duplicate ids and labels of differing dimension are parse
//! errors; everything else is left to [`OrthoHypergraph::validate`].

use std::collections::BTreeSet;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Atom, OrthoHypergraph};
use crate::error::{Error, Result};
use crate::hilbert::normalize;

#[derive(Serialize, Deserialize)]
struct RawGraph {
    atoms: Vec<RawAtom>,
    contexts: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct RawAtom {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vector: Option<Vec<[f64; 2]>>,
}

impl OrthoHypergraph {
    pub fn from_json(text: &str) -> Result<OrthoHypergraph> {
        let raw: RawGraph = serde_json::from_str(text)?;
        let mut ids = BTreeSet::new();
        let mut dim = None;
        let mut atoms = Vec::with_capacity(raw.atoms.len());
        for a in raw.atoms {
            if !ids.insert(a.id.clone()) {
                return Err(Error::Parse(format!("duplicate atom id {:?}", a.id)));
            }
            let vector = match a.vector {
                None => None,
                Some(pairs) => {
                    let amps: Vec<Complex64> = pairs
                        .iter()
                        .map(|[re, im]| Complex64::new(*re, *im))
                        .collect();
                    match dim {
                        None => dim = Some(amps.len()),
                        Some(d) if d != amps.len() => {
                            return Err(Error::Parse(format!(
                                "atom {:?} has a {}-dimensional vector, expected {d}",
                                a.id,
                                amps.len()
                            )))
                        }
                        Some(_) => {}
                    }
                    let ket = normalize(&amps)
                        .map_err(|e| Error::Parse(format!("atom {:?}: {e}", a.id)))?;
                    Some(ket)
                }
            };
            atoms.push(Atom { id: a.id, vector });
        }
        Ok(OrthoHypergraph::new(atoms, raw.contexts))
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<OrthoHypergraph> {
        OrthoHypergraph::from_json(&std::fs::read_to_string(path)?)
    }

    /// Pretty-printed JSON in the file format, one atom or context per line.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n  \"atoms\": [\n");
        for (i, a) in self.atoms.iter().enumerate() {
            let raw = RawAtom {
                id: a.id.clone(),
                vector: a
                    .vector
                    .as_ref()
                    .map(|k| k.amplitudes().iter().map(|z| [z.re, z.im]).collect()),
            };
            out.push_str("    ");
            out.push_str(&serde_json::to_string(&raw).expect("atoms serialize"));
            out.push_str(if i + 1 < self.atoms.len() {
                ",\n"
            } else {
                "\n"
            });
        }
        out.push_str("  ],\n  \"contexts\": [\n");
        for (i, c) in self.contexts.iter().enumerate() {
            out.push_str("    ");
            out.push_str(&serde_json::to_string(c).expect("contexts serialize"));
            out.push_str(if i + 1 < self.contexts.len() {
                ",\n"
            } else {
                "\n"
            });
        }
        out.push_str("  ]\n}\n");
        out
    }
}
