//! Simulated quantum coin and von Neumann extraction.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`), seeded with
//! `SeedableRng::seed_from_u64`. Both are specified bit-for-bit and do not
//! depend on the platform, so a `(phi, n, seed)` triple always produces the
//! same stream. Rows of a sweep use the same seed with ChaCha stream
//! number equal to the row index.
//!
//! A draw is a uniform 53-bit fraction `u = (x >> 11) / 2^53` compared with
//! `u < p`. This is exact at the ends: `p = 0` never fires and `p = 1`
//! always does.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{context_probabilities, tilt_basis, ContextBasis, Ket};

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct StreamMeta {
    pub source: String,
    pub seed: Option<u64>,
    /// Tilt angle in radians.
    pub tilt: Option<f64>,
}

/// A finite bit sequence plus where it came from.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BitStream {
    bits: Vec<bool>,
    pub meta: StreamMeta,
}

impl BitStream {
    pub fn new(bits: Vec<bool>, meta: StreamMeta) -> BitStream {
        BitStream { bits, meta }
    }

    pub fn from_bits(bits: Vec<bool>) -> BitStream {
        BitStream {
            bits,
            meta: StreamMeta::default(),
        }
    }

    /// Parses `'0'`/`'1'` characters. Trailing whitespace is ignored.
    pub fn from_ascii(text: &str) -> Result<BitStream> {
        let bits = text
            .trim_end()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok(BitStream::from_bits(bits))
    }

    pub fn to_ascii(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    /// `len=<n>\n` followed by the bits packed MSB first, last byte zero-padded.
    pub fn to_packed(&self) -> Vec<u8> {
        let mut out = format!("len={}\n", self.bits.len()).into_bytes();
        for chunk in self.bits.chunks(8) {
            let byte = chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (7 - i)));
            out.push(byte);
        }
        out
    }

    pub fn from_packed(data: &[u8]) -> Result<BitStream> {
        let newline = data
            .iter()
            .position(|&b| b == b'\n')
            .ok_or_else(|| Error::Parse("packed stream lacks a len= header line".into()))?;
        let header = std::str::from_utf8(&data[..newline])
            .map_err(|_| Error::Parse("packed header is not UTF-8".into()))?;
        let len: usize = header
            .strip_prefix("len=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad packed header {header:?}")))?;
        let body = &data[newline + 1..];
        if body.len() != len.div_ceil(8) {
            return Err(Error::Parse(format!(
                "packed body has {} bytes, header says {len} bits",
                body.len()
            )));
        }
        let bits = (0..len)
            .map(|i| body[i / 8] >> (7 - i % 8) & 1 == 1)
            .collect();
        Ok(BitStream::from_bits(bits))
    }

    /// Reads either format; packed files start with `len=`.
    pub fn from_file_bytes(data: &[u8]) -> Result<BitStream> {
        if data.starts_with(b"len=") {
            BitStream::from_packed(data)
        } else {
            let text = std::str::from_utf8(data)
                .map_err(|_| Error::Parse("bit file is not UTF-8".into()))?;
            BitStream::from_ascii(text)
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Every bit flipped, same metadata.
    pub fn complement(&self) -> BitStream {
        BitStream {
            bits: self.bits.iter().map(|b| !b).collect(),
            meta: self.meta.clone(),
        }
    }
}

fn generator(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn uniform53(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Probability of outcome 1 when `(1, 0)` is measured in `tilt_basis(phi)`, i.e. `sin^2 phi`.
pub fn click_probability(phi: f64) -> Result<f64> {
    let probs = context_probabilities(&Ket::basis(2, 0), &tilt_basis(phi)?)?;
    Ok(probs[1])
}

fn bernoulli_stream(p: f64, n: usize, rng: &mut ChaCha8Rng) -> Vec<bool> {
    (0..n).map(|_| uniform53(rng) < p).collect()
}

/// `n` detector clicks for the pre-selected state `(1, 0)` measured in the
/// context tilted by `phi`; each bit is 1 with probability `sin^2 phi`.
pub fn simulate_coin(phi: f64, n: usize, seed: u64) -> Result<BitStream> {
    simulate_coin_on_stream(phi, n, seed, 0)
}

fn simulate_coin_on_stream(phi: f64, n: usize, seed: u64, stream: u64) -> Result<BitStream> {
    let p = click_probability(phi)?;
    let mut rng = generator(seed, stream);
    Ok(BitStream {
        bits: bernoulli_stream(p, n, &mut rng),
        meta: StreamMeta {
            source: "simulate_coin".into(),
            seed: Some(seed),
            tilt: Some(phi),
        },
    })
}

/// `n` outcome indices drawn from the Born distribution of `pre` in `ctx`.
pub fn simulate_context(pre: &Ket, ctx: &ContextBasis, n: usize, seed: u64) -> Result<Vec<usize>> {
    let probs = context_probabilities(pre, ctx)?;
    let mut cumulative = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for p in &probs {
        acc += p;
        cumulative.push(acc);
    }
    // rounding can leave the total just under 1; the last outcome that can occur absorbs it
    let fallback = probs.iter().rposition(|&p| p > 0.0).unwrap_or(0);
    let mut rng = generator(seed, 0);
    Ok((0..n)
        .map(|_| {
            let u = uniform53(&mut rng);
            cumulative.iter().position(|&c| u < c).unwrap_or(fallback)
        })
        .collect())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExtractorStats {
    pub pairs_consumed: usize,
    /// Pairs `00` or `11`.
    pub pairs_discarded: usize,
    pub pairs_emitted: usize,
    pub output_len: usize,
}

impl ExtractorStats {
    /// The bookkeeping identities every extraction satisfies.
    pub fn is_consistent(&self, input_len: usize) -> bool {
        self.pairs_emitted + self.pairs_discarded == self.pairs_consumed
            && self.output_len == self.pairs_emitted
            && self.pairs_consumed == input_len / 2
    }
}

/// Maps consecutive pairs `01 -> 0`, `10 -> 1` and drops `00`, `11`.
/// A trailing odd bit is dropped.
pub fn von_neumann_extract(raw: &BitStream) -> (BitStream, ExtractorStats) {
    let mut out = Vec::with_capacity(raw.len() / 4);
    let mut stats = ExtractorStats::default();
    for pair in raw.bits.chunks_exact(2) {
        stats.pairs_consumed += 1;
        if pair[0] == pair[1] {
            stats.pairs_discarded += 1;
        } else {
            out.push(pair[0]);
        }
    }
    stats.pairs_emitted = out.len();
    stats.output_len = out.len();
    let meta = StreamMeta {
        source: format!("von_neumann({})", raw.meta.source),
        ..raw.meta.clone()
    };
    (BitStream { bits: out, meta }, stats)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub phi: f64,
    pub raw_ones_frequency: f64,
    pub extracted_len: usize,
    /// `None` when nothing survived extraction.
    pub extracted_ones_frequency: Option<f64>,
}

/// Simulates and extracts one stream per angle. Row `i` uses ChaCha stream `i` of `seed`.
pub fn transition_sweep(phis: &[f64], n: usize, seed: u64) -> Result<Vec<SweepRow>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "sweep needs at least 2 bits per row, got {n}"
        )));
    }
    phis.iter()
        .enumerate()
        .map(|(row, &phi)| {
            let raw = simulate_coin_on_stream(phi, n, seed, row as u64)?;
            let (out, _) = von_neumann_extract(&raw);
            Ok(SweepRow {
                phi,
                raw_ones_frequency: raw.ones() as f64 / n as f64,
                extracted_len: out.len(),
                extracted_ones_frequency: (!out.is_empty())
                    .then(|| out.ones() as f64 / out.len() as f64),
            })
        })
        .collect()
}
