//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls into the enumeration engine, the closure code or the
//! block counter of the library; only plain data types are shared.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use vindef::hypergraph::{OrthoHypergraph, TwoValuedState};
use vindef::rng::BitStream;

pub fn fixture(name: &str) -> OrthoHypergraph {
    OrthoHypergraph::from_path(vindef::fixtures_dir().join(format!("{name}.json")))
        .unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

pub fn pentagon() -> OrthoHypergraph {
    let ctxs: Vec<Vec<String>> = (0..5)
        .map(|i| {
            vec![
                format!("a{i}"),
                format!("b{i}"),
                format!("a{}", (i + 1) % 5),
            ]
        })
        .collect();
    OrthoHypergraph::from_contexts(&ctxs)
}

fn index(h: &OrthoHypergraph) -> (Vec<String>, Vec<Vec<usize>>) {
    let ids: Vec<String> = h.atoms().iter().map(|a| a.id.clone()).collect();
    let pos: HashMap<&str, usize> = ids
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let ctxs = h
        .contexts()
        .iter()
        .map(|c| c.iter().map(|a| pos[a.as_str()]).collect())
        .collect();
    (ids, ctxs)
}

fn to_state(ids: &[String], values: impl Fn(usize) -> bool) -> TwoValuedState {
    ids.iter()
        .enumerate()
        .map(|(i, id)| (id.clone(), values(i)))
        .collect()
}

/// Every assignment of `2^n` filtered by the exactly-one-true rule.
pub fn brute_force_states(
    h: &OrthoHypergraph,
    constraints: &TwoValuedState,
) -> Vec<TwoValuedState> {
    let (ids, ctxs) = index(h);
    let n = ids.len();
    assert!(n <= 64, "brute-force oracle is limited to 64 atoms");
    assert!(n <= 24, "brute force over {n} atoms would take too long");
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let bit = |i: usize| mask >> i & 1 == 1;
        if ctxs
            .iter()
            .all(|c| c.iter().filter(|&&a| bit(a)).count() == 1)
            && constraints
                .iter()
                .all(|(k, v)| ids.iter().position(|id| id == k).map(bit) == Some(v))
        {
            out.push(to_state(&ids, bit));
        }
    }
    out.sort();
    out
}

/// Atom-by-atom backtracking that only rejects assignments violating a
/// context outright: no propagation, no context-level branching.
pub fn naive_states(h: &OrthoHypergraph, constraints: &TwoValuedState) -> Vec<TwoValuedState> {
    let (ids, ctxs) = index(h);
    let n = ids.len();
    let fixed: Vec<Option<bool>> = ids.iter().map(|id| constraints.get(id)).collect();
    let mut atom_ctxs = vec![Vec::new(); n];
    for (ci, c) in ctxs.iter().enumerate() {
        for &a in c {
            atom_ctxs[a].push(ci);
        }
    }
    let mut values: Vec<Option<bool>> = vec![None; n];
    let mut out = Vec::new();

    fn ok(ctx: &[usize], values: &[Option<bool>]) -> bool {
        let ones = ctx.iter().filter(|&&a| values[a] == Some(true)).count();
        let open = ctx.iter().filter(|&&a| values[a].is_none()).count();
        ones <= 1 && (ones == 1 || open > 0)
    }

    fn rec(
        i: usize,
        values: &mut Vec<Option<bool>>,
        fixed: &[Option<bool>],
        ctxs: &[Vec<usize>],
        atom_ctxs: &[Vec<usize>],
        ids: &[String],
        out: &mut Vec<TwoValuedState>,
    ) {
        if i == values.len() {
            out.push(to_state(ids, |k| values[k] == Some(true)));
            return;
        }
        for v in [false, true] {
            if fixed[i].is_some_and(|f| f != v) {
                continue;
            }
            values[i] = Some(v);
            if atom_ctxs[i].iter().all(|&c| ok(&ctxs[c], values)) {
                rec(i + 1, values, fixed, ctxs, atom_ctxs, ids, out);
            }
            values[i] = None;
        }
    }

    rec(0, &mut values, &fixed, &ctxs, &atom_ctxs, &ids, &mut out);
    out.sort();
    out
}

/// Random hypergraph with up to `max_atoms` atoms and contexts of size 2..=4.
pub fn random_graph(
    rng: &mut ChaCha8Rng,
    prefix: &str,
    max_atoms: usize,
    max_contexts: usize,
) -> OrthoHypergraph {
    let n = 2 + (rng.next_u64() as usize) % (max_atoms - 1);
    let k = 1 + (rng.next_u64() as usize) % max_contexts;
    let mut contexts: Vec<Vec<String>> = Vec::new();
    for _ in 0..k {
        let size = (2 + (rng.next_u64() as usize) % 3).min(n);
        let mut members: Vec<usize> = Vec::new();
        while members.len() < size {
            let a = (rng.next_u64() as usize) % n;
            if !members.contains(&a) {
                members.push(a);
            }
        }
        contexts.push(members.iter().map(|a| format!("{prefix}{a}")).collect());
    }
    // only atoms that occur in some context, so the graph is valid
    OrthoHypergraph::from_contexts(&contexts)
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `sin(x)` by its Taylor series.
pub fn sin_series(x: f64) -> f64 {
    let mut term = x;
    let mut sum = 0.0;
    for k in 0..30 {
        sum += term;
        let n = 2.0 * k as f64;
        term *= -x * x / ((n + 2.0) * (n + 3.0));
    }
    sum
}

/// Standard deviation of a binomial frequency.
pub fn binomial_sigma(p: f64, n: usize) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

/// Non-overlapping block counts by string slicing.
pub fn count_blocks(bits: &BitStream, m: usize) -> BTreeMap<String, u64> {
    let s = bits.to_ascii();
    let mut counts = BTreeMap::new();
    for i in 0..s.len() / m {
        *counts.entry(s[i * m..(i + 1) * m].to_string()).or_insert(0) += 1;
    }
    counts
}

pub struct Run {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

impl Run {
    pub fn text(&self) -> String {
        String::from_utf8_lossy(&self.stdout).into_owned()
    }
}

/// Runs the `vindef` binary with `args`, feeding `stdin` if given.
pub fn vindef(args: &[&str], stdin: Option<&[u8]>) -> Run {
    use std::io::Write;
    use std::process::{Command, Stdio};

    let mut child = Command::new(env!("CARGO_BIN_EXE_vindef"))
        .args(args)
        .stdin(if stdin.is_some() {
            Stdio::piped()
        } else {
            Stdio::null()
        })
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn vindef");
    if let Some(data) = stdin {
        let mut pipe = child.stdin.take().unwrap();
        let data = data.to_vec();
        // write from a thread so a full stdout pipe cannot deadlock us
        std::thread::spawn(move || {
            let _ = pipe.write_all(&data);
        });
    }
    let out = child.wait_with_output().expect("wait for vindef");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: out.stdout,
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

pub fn fixture_path(name: &str) -> String {
    vindef::fixtures_dir()
        .join(format!("{name}.json"))
        .to_string_lossy()
        .into_owned()
}
