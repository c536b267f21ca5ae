//! Pure states, orthonormal contexts and Born probabilities.
//!
//! Kets are rays: nothing here canonicalizes the global phase, and equality
//! of physical states is tested with [`Ket::is_collinear`] (`|<u|v>| = 1`),
//! never componentwise.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Orthogonality and normalization tolerance.
pub const ORTHO_TOL: f64 = 1e-9;
/// Equality tolerance for closed-form results.
pub const EXACT_TOL: f64 = 1e-12;
/// Components below this magnitude count as zero in [`normalize`].
pub const ZERO_TOL: f64 = 1e-12;

/// A unit vector in `C^dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ket {
    amplitudes: Vec<Complex64>,
}

impl Ket {
    /// Normalizes `amplitudes` into a ket. Same as [`normalize`].
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Ket> {
        normalize(&amplitudes)
    }

    pub fn from_real(components: &[f64]) -> Result<Ket> {
        let v: Vec<Complex64> = components.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        normalize(&v)
    }

    /// The `index`-th standard basis vector of `C^dim`.
    pub fn basis(dim: usize, index: usize) -> Ket {
        assert!(
            index < dim,
            "basis index {index} out of range for dimension {dim}"
        );
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ket { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Multiplies every amplitude by `e^{i theta}`. The ray is unchanged.
    pub fn with_phase(&self, theta: f64) -> Ket {
        let phase = Complex64::from_polar(1.0, theta);
        Ket {
            amplitudes: self.amplitudes.iter().map(|a| a * phase).collect(),
        }
    }

    /// True when both kets describe the same ray, i.e. `|<self|other>| >= 1 - tol`.
    pub fn is_collinear(&self, other: &Ket, tol: f64) -> bool {
        match inner(self, other) {
            Ok(z) => z.norm() >= 1.0 - tol,
            Err(_) => false,
        }
    }
}

/// Rescales `v` to unit norm.
pub fn normalize(v: &[Complex64]) -> Result<Ket> {
    if v.is_empty() || v.iter().all(|a| a.norm() < ZERO_TOL) {
        return Err(Error::ZeroVector);
    }
    if v.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
        return Err(Error::InvalidArgument(
            "vector has non-finite components".into(),
        ));
    }
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    Ok(Ket {
        amplitudes: v.iter().map(|a| a / norm).collect(),
    })
}

/// `<u|v>`, antilinear in the first argument.
pub fn inner(u: &Ket, v: &Ket) -> Result<Complex64> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: v.dim(),
        });
    }
    Ok(u.amplitudes
        .iter()
        .zip(&v.amplitudes)
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// Probability `|<post|pre>|^2` that a system prepared in `pre` is found in `post`.
pub fn born(pre: &Ket, post: &Ket) -> Result<f64> {
    let amp = inner(post, pre)?;
    Ok(amp.norm_sqr().clamp(0.0, 1.0))
}

/// An orthonormal basis, i.e. a maximal set of mutually exclusive outcomes.
#[derive(Clone, Debug, PartialEq)]
pub struct ContextBasis {
    vectors: Vec<Ket>,
}

impl ContextBasis {
    /// Checks that `vectors` are `dim` pairwise orthogonal unit kets within [`ORTHO_TOL`].
    pub fn new(vectors: Vec<Ket>) -> Result<ContextBasis> {
        let dim = match vectors.first() {
            Some(v) => v.dim(),
            None => return Err(Error::InvalidBasis("no vectors".into())),
        };
        if vectors.len() != dim {
            return Err(Error::InvalidBasis(format!(
                "{} vectors in dimension {dim}",
                vectors.len()
            )));
        }
        for (i, u) in vectors.iter().enumerate() {
            if u.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: u.dim(),
                });
            }
            if (u.norm_sqr() - 1.0).abs() > ORTHO_TOL {
                return Err(Error::InvalidBasis(format!("vector {i} is not unit-norm")));
            }
            for (j, v) in vectors.iter().enumerate().skip(i + 1) {
                let overlap = inner(u, v)?.norm();
                if overlap > ORTHO_TOL {
                    return Err(Error::InvalidBasis(format!(
                        "vectors {i} and {j} overlap by {overlap:.3e}"
                    )));
                }
            }
        }
        Ok(ContextBasis { vectors })
    }

    pub fn standard(dim: usize) -> ContextBasis {
        ContextBasis {
            vectors: (0..dim).map(|i| Ket::basis(dim, i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Ket] {
        &self.vectors
    }
}

impl std::ops::Index<usize> for ContextBasis {
    type Output = Ket;

    fn index(&self, index: usize) -> &Ket {
        &self.vectors[index]
    }
}

/// The standard qubit basis rotated by `phi`: `{(cos phi, sin phi), (-sin phi, cos phi)}`.
pub fn tilt_basis(phi: f64) -> Result<ContextBasis> {
    if !phi.is_finite() {
        return Err(Error::NonFiniteAngle(phi));
    }
    let (s, c) = phi.sin_cos();
    let ket = |a: f64, b: f64| Ket {
        amplitudes: vec![Complex64::new(a, 0.0), Complex64::new(b, 0.0)],
    };
    Ok(ContextBasis {
        vectors: vec![ket(c, s), ket(-s, c)],
    })
}

/// Applies the real rotation by `phi` to a two-dimensional ket.
pub fn rotate(phi: f64, ket: &Ket) -> Result<Ket> {
    if !phi.is_finite() {
        return Err(Error::NonFiniteAngle(phi));
    }
    if ket.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: ket.dim(),
        });
    }
    let (s, c) = phi.sin_cos();
    let a = ket.amplitudes[0];
    let b = ket.amplitudes[1];
    Ok(Ket {
        amplitudes: vec![a * c - b * s, a * s + b * c],
    })
}

/// Born probabilities of every outcome of `ctx` for a system prepared in `pre`.
pub fn context_probabilities(pre: &Ket, ctx: &ContextBasis) -> Result<Vec<f64>> {
    if pre.dim() != ctx.dim() {
        return Err(Error::DimensionMismatch {
            expected: ctx.dim(),
            found: pre.dim(),
        });
    }
    ctx.vectors.iter().map(|e| born(pre, e)).collect()
}
