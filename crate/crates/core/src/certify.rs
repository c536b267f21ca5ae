//! Finite Borel-normality checks, and the Champernowne sequence as a
//! normal-looking but perfectly predictable counterexample.
//!
//! A string of length `n` passes at block length `m` when every one of the
//! `2^m` blocks, counted over the `floor(n/m)` non-overlapping windows, has a
//! frequency within `sqrt(log2 n / n)` of `2^-m`. Block lengths run from 1 to
//! `floor(log2 log2 n)`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::{BitStream, StreamMeta};

/// Largest block length for which all `2^m` counters are kept.
pub const MAX_BLOCK_LEN: usize = 24;

/// Counts of the `2^m` blocks of length `m`, indexed by the block read as a
/// big-endian binary number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCounts {
    m: usize,
    counts: Vec<u64>,
}

impl BlockCounts {
    pub fn block_len(&self) -> usize {
        self.m
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Count of `block`, given as a string of `'0'`/`'1'`.
    pub fn get(&self, block: &str) -> Option<u64> {
        if block.len() != self.m {
            return None;
        }
        let index = usize::from_str_radix(block, 2).ok()?;
        self.counts.get(index).copied()
    }

    /// `(block, count)` for every block, in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (String, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(move |(i, &c)| (format!("{i:0width$b}", width = self.m), c))
    }
}

/// Counts non-overlapping blocks of length `m`; a trailing partial block is ignored.
pub fn block_frequencies(bits: &BitStream, m: usize) -> Result<BlockCounts> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "block length must be at least 1".into(),
        ));
    }
    if m > bits.len() {
        return Err(Error::BlockTooLong { m, n: bits.len() });
    }
    if m > MAX_BLOCK_LEN {
        return Err(Error::InvalidArgument(format!(
            "block length {m} exceeds the supported maximum {MAX_BLOCK_LEN}"
        )));
    }
    let mut counts = vec![0u64; 1 << m];
    for block in bits.bits().chunks_exact(m) {
        let index = block
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | usize::from(b));
        counts[index] += 1;
    }
    Ok(BlockCounts { m, counts })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockEntry {
    pub block: String,
    pub count: u64,
    pub frequency: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockLevel {
    pub m: usize,
    pub windows: u64,
    pub max_deviation: f64,
    pub pass: bool,
    pub blocks: Vec<BlockEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalityReport {
    pub n: usize,
    pub threshold: f64,
    pub max_block: usize,
    pub levels: Vec<BlockLevel>,
    pub pass: bool,
}

impl NormalityReport {
    pub fn level(&self, m: usize) -> Option<&BlockLevel> {
        self.levels.iter().find(|l| l.m == m)
    }
}

impl fmt::Display for NormalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "n = {}  threshold = {}  max block = {}",
            self.n,
            crate::fmt_sig(self.threshold),
            self.max_block
        )?;
        writeln!(
            f,
            "{:>3}  {:>10}  {:>20}  verdict",
            "m", "windows", "max deviation"
        )?;
        for l in &self.levels {
            writeln!(
                f,
                "{:>3}  {:>10}  {:>20}  {}",
                l.m,
                l.windows,
                crate::fmt_sig(l.max_deviation),
                if l.pass { "pass" } else { "fail" }
            )?;
        }
        write!(f, "overall: {}", if self.pass { "pass" } else { "fail" })
    }
}

/// `floor(log2 log2 n)`, at least 1.
pub fn default_max_block(n: usize) -> usize {
    let m = (n as f64).log2().log2().floor();
    if m.is_finite() && m >= 1.0 {
        m as usize
    } else {
        1
    }
}

/// Runs the block test for `m = 1..=min(max_m, floor(log2 log2 n))`.
/// Deviations equal to the threshold pass.
pub fn borel_normality(bits: &BitStream, max_m: Option<usize>) -> Result<NormalityReport> {
    let n = bits.len();
    if n < 4 {
        return Err(Error::StreamTooShort(n));
    }
    let mut max_block = default_max_block(n);
    if let Some(cap) = max_m {
        if cap == 0 {
            return Err(Error::InvalidArgument(
                "max block length must be at least 1".into(),
            ));
        }
        max_block = max_block.min(cap);
    }
    let threshold = ((n as f64).log2() / n as f64).sqrt();
    let mut levels = Vec::with_capacity(max_block);
    for m in 1..=max_block {
        let counts = block_frequencies(bits, m)?;
        let windows = counts.total();
        let expected = 0.5f64.powi(m as i32);
        let blocks: Vec<BlockEntry> = counts
            .iter()
            .map(|(block, count)| {
                let frequency = count as f64 / windows as f64;
                BlockEntry {
                    block,
                    count,
                    frequency,
                    deviation: (frequency - expected).abs(),
                }
            })
            .collect();
        let max_deviation = blocks.iter().map(|b| b.deviation).fold(0.0, f64::max);
        levels.push(BlockLevel {
            m,
            windows,
            max_deviation,
            pass: blocks.iter().all(|b| b.deviation <= threshold),
            blocks,
        });
    }
    Ok(NormalityReport {
        n,
        threshold,
        max_block,
        pass: levels.iter().all(|l| l.pass),
        levels,
    })
}

/// Digits of `1, 2, 3, ...` written in `base` and concatenated, without end.
#[derive(Clone, Debug)]
pub struct ChampernowneDigits {
    base: u64,
    next: u64,
    pending: Vec<u8>,
}

impl ChampernowneDigits {
    pub fn new(base: u32) -> Result<ChampernowneDigits> {
        if base != 2 && base != 10 {
            return Err(Error::UnsupportedBase(base));
        }
        Ok(ChampernowneDigits {
            base: u64::from(base),
            next: 1,
            pending: Vec::new(),
        })
    }
}

impl Iterator for ChampernowneDigits {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        if self.pending.is_empty() {
            // least significant digit first, so popping yields the most significant
            let mut k = self.next;
            while k > 0 {
                self.pending.push((k % self.base) as u8);
                k /= self.base;
            }
            self.next += 1;
        }
        self.pending.pop()
    }
}

/// The first `n` Champernowne digits in `base` as characters, e.g. `"1234567891"`.
pub fn champernowne_digits(n: usize, base: u32) -> Result<String> {
    Ok(ChampernowneDigits::new(base)?
        .take(n)
        .map(|d| char::from(b'0' + d))
        .collect())
}

/// The first `n` bits of the binary Champernowne sequence `1 10 11 100 ...`.
pub fn champernowne_bits(n: usize) -> BitStream {
    let bits = ChampernowneDigits::new(2)
        .expect("base 2 is supported")
        .take(n)
        .map(|d| d == 1)
        .collect();
    BitStream::new(
        bits,
        StreamMeta {
            source: "champernowne".into(),
            seed: None,
            tilt: None,
        },
    )
}

/// Fraction of ones.
pub fn bias(bits: &BitStream) -> Result<f64> {
    if bits.is_empty() {
        return Err(Error::EmptyStream);
    }
    Ok(bits.ones() as f64 / bits.len() as f64)
}

/// Guesses each bit from the bits before it.
pub trait NextBitPredictor {
    fn predict(&mut self, history: &[bool]) -> bool;
}

/// Predicts by regenerating the binary Champernowne construction.
#[derive(Clone, Debug)]
pub struct ChampernownePredictor {
    digits: ChampernowneDigits,
    position: usize,
}

impl Default for ChampernownePredictor {
    fn default() -> Self {
        ChampernownePredictor {
            digits: ChampernowneDigits::new(2).expect("base 2 is supported"),
            position: 0,
        }
    }
}

impl NextBitPredictor for ChampernownePredictor {
    fn predict(&mut self, history: &[bool]) -> bool {
        while self.position < history.len() {
            self.digits.next();
            self.position += 1;
        }
        self.position += 1;
        self.digits.next() == Some(1)
    }
}

/// Fraction of positions at which `predictor` guesses the next bit correctly.
pub fn predictor_accuracy(predictor: &mut dyn NextBitPredictor, bits: &BitStream) -> Result<f64> {
    if bits.is_empty() {
        return Err(Error::EmptyStream);
    }
    let b = bits.bits();
    let hits = (0..b.len())
        .filter(|&i| predictor.predict(&b[..i]) == b[i])
        .count();
    Ok(hits as f64 / b.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> BitStream {
        BitStream::from_ascii(s).unwrap()
    }

    #[test]
    fn block_frequency_examples() {
        let c = block_frequencies(&bits("010101"), 2).unwrap();
        assert_eq!(c.get("01"), Some(3));
        assert_eq!(c.get("00"), Some(0));
        assert_eq!(c.get("10"), Some(0));
        assert_eq!(c.get("11"), Some(0));

        let c = block_frequencies(&bits("0011"), 1).unwrap();
        assert_eq!((c.get("0"), c.get("1")), (Some(2), Some(2)));

        let c = block_frequencies(&bits("00110"), 2).unwrap();
        let all: Vec<(String, u64)> = c.iter().collect();
        assert_eq!(
            all,
            [
                ("00".into(), 1),
                ("01".into(), 0),
                ("10".into(), 0),
                ("11".into(), 1)
            ]
        );

        assert!(matches!(
            block_frequencies(&bits("01"), 3),
            Err(Error::BlockTooLong { m: 3, n: 2 })
        ));
        assert!(block_frequencies(&bits("01"), 0).is_err());
    }

    #[test]
    fn normality_of_constant_and_periodic_streams() {
        let zeros = BitStream::from_bits(vec![false; 1024]);
        let r = borel_normality(&zeros, None).unwrap();
        assert!(!r.pass);
        assert!(!r.level(1).unwrap().pass);
        assert!((r.level(1).unwrap().max_deviation - 0.5).abs() < 1e-15);
        assert!((r.threshold - (10.0f64 / 1024.0).sqrt()).abs() < 1e-15);

        let alt = BitStream::from_bits((0..1024).map(|i| i % 2 == 1).collect());
        let r = borel_normality(&alt, None).unwrap();
        assert!(r.level(1).unwrap().pass);
        assert!(!r.level(2).unwrap().pass);
        let m2 = r.level(2).unwrap();
        let dev = |b: &str| m2.blocks.iter().find(|e| e.block == b).unwrap().deviation;
        assert_eq!((dev("00"), dev("11")), (0.25, 0.25));
        assert!(m2.max_deviation > r.threshold);
        assert!(!r.pass);
    }

    #[test]
    fn max_block_rules() {
        assert_eq!(default_max_block(4), 1);
        assert_eq!(default_max_block(16), 2);
        assert_eq!(default_max_block(1 << 16), 4);
        assert_eq!(default_max_block((1 << 16) - 1), 3);
        let r = borel_normality(&BitStream::from_bits(vec![true; 1 << 16]), Some(2)).unwrap();
        assert_eq!(r.max_block, 2);
        assert_eq!(r.levels.len(), 2);
        assert!(matches!(
            borel_normality(&bits("010"), None),
            Err(Error::StreamTooShort(3))
        ));
    }

    #[test]
    fn ties_pass() {
        // n = 16: threshold sqrt(4/16) = 0.5; all-ones has deviation exactly 0.5 at m = 1
        let r = borel_normality(&BitStream::from_bits(vec![true; 16]), Some(1)).unwrap();
        assert_eq!(r.threshold, 0.5);
        assert_eq!(r.level(1).unwrap().max_deviation, 0.5);
        assert!(r.pass);
    }

    #[test]
    fn champernowne_examples() {
        assert_eq!(champernowne_digits(10, 10).unwrap(), "1234567891");
        assert_eq!(champernowne_digits(15, 10).unwrap(), "123456789101112");
        assert_eq!(champernowne_digits(6, 2).unwrap(), "110111");
        assert_eq!(champernowne_bits(12).to_ascii(), "110111001011");
        assert_eq!(champernowne_digits(0, 10).unwrap(), "");
        assert!(matches!(
            champernowne_digits(5, 3),
            Err(Error::UnsupportedBase(3))
        ));
    }

    #[test]
    fn bias_examples() {
        assert_eq!(bias(&bits("1111")).unwrap(), 1.0);
        assert_eq!(bias(&bits("0101")).unwrap(), 0.5);
        assert!(matches!(bias(&bits("")), Err(Error::EmptyStream)));
    }

    #[test]
    fn champernowne_predictor_is_exact() {
        let s = champernowne_bits(5000);
        let acc = predictor_accuracy(&mut ChampernownePredictor::default(), &s).unwrap();
        assert_eq!(acc, 1.0);
        let flipped = s.complement();
        let acc = predictor_accuracy(&mut ChampernownePredictor::default(), &flipped).unwrap();
        assert_eq!(acc, 0.0);
    }
}
