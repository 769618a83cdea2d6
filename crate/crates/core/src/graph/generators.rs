//! Synthetic graph families: complete, ab-list, σ-string, cycle and
//! Barabási–Albert preferential attachment.
//!
//! Vertices are named by their decimal index. All randomness comes from
//! ChaCha8 seeded with `ChaCha8Rng::seed_from_u64(seed)`; a uniform index
//! below `n` is drawn as `(next_u64() as u128 * n) >> 64`. Both are frozen so
//! that a `(n, k, seed, labels)` tuple names the same graph everywhere.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{DataGraph, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
}

/// Every triple of `V × labels × V`, self-loops included.
pub fn gen_complete<S: AsRef<str>>(n: usize, labels: &[S]) -> DataGraph {
    let mut g = DataGraph::with_vertices(n);
    let labels: Vec<_> = labels.iter().map(|l| g.intern_label(l.as_ref())).collect();
    for i in 0..n as u32 {
        for &l in &labels {
            for j in 0..n as u32 {
                g.add_edge(VertexId(i), l, VertexId(j));
            }
        }
    }
    g
}

/// A single path `0 -a-> 1 ... -a-> n -b-> ... -b-> 2n`.
pub fn gen_ablist(n: usize) -> DataGraph {
    let mut g = DataGraph::with_vertices(2 * n + 1);
    let a = g.intern_label("a");
    let b = g.intern_label("b");
    for i in 0..2 * n as u32 {
        let l = if (i as usize) < n { a } else { b };
        g.add_edge(VertexId(i), l, VertexId(i + 1));
    }
    g
}

/// A path of `n` edges all labeled `label`.
pub fn gen_string(n: usize, label: &str) -> DataGraph {
    let mut g = DataGraph::with_vertices(n + 1);
    let l = g.intern_label(label);
    for i in 0..n as u32 {
        g.add_edge(VertexId(i), l, VertexId(i + 1));
    }
    g
}

/// `n` vertices joined in one directed cycle; `n = 1` is a self-loop and
/// `n = 0` an empty graph.
pub fn gen_cycle(n: usize, label: &str) -> DataGraph {
    let mut g = DataGraph::with_vertices(n);
    let l = g.intern_label(label);
    for i in 0..n as u32 {
        g.add_edge(VertexId(i), l, VertexId((i + 1) % n as u32));
    }
    g
}

fn uniform(rng: &mut ChaCha8Rng, n: usize) -> usize {
    ((rng.next_u64() as u128 * n as u128) >> 64) as usize
}

/// Preferential attachment graph Ĝ(n, k).
///
/// Starts from a directed clique on `0..k` (every ordered pair, no loops).
/// Each later vertex `v` then adds `k` edges `v -> u`, where `u < v` is drawn
/// with probability proportional to its current in+out degree (uniformly
/// while all degrees are zero). Targets are drawn with replacement, so
/// repeated `(v, label, u)` draws collapse. Every label is drawn uniformly
/// from `labels`, right after the target it belongs to.
pub fn gen_barabasi<S: AsRef<str>>(
    n: usize,
    k: usize,
    seed: u64,
    labels: &[S],
) -> Result<DataGraph, GeneratorError> {
    if k < 1 || k > n {
        return Err(GeneratorError::InvalidParams(format!(
            "need 1 <= k <= n, got n={n} k={k}"
        )));
    }
    if labels.is_empty() {
        return Err(GeneratorError::InvalidParams("label list is empty".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = DataGraph::with_vertices(n);
    let labels: Vec<_> = labels.iter().map(|l| g.intern_label(l.as_ref())).collect();
    // one entry per edge endpoint, so a uniform pick is degree-proportional
    let mut endpoints: Vec<u32> = Vec::new();

    for i in 0..k as u32 {
        for j in 0..k as u32 {
            if i != j {
                let l = labels[uniform(&mut rng, labels.len())];
                g.add_edge(VertexId(i), l, VertexId(j));
                endpoints.push(i);
                endpoints.push(j);
            }
        }
    }
    for v in k as u32..n as u32 {
        for _ in 0..k {
            let target = if endpoints.is_empty() {
                uniform(&mut rng, v as usize) as u32
            } else {
                endpoints[uniform(&mut rng, endpoints.len())]
            };
            let l = labels[uniform(&mut rng, labels.len())];
            g.add_edge(VertexId(v), l, VertexId(target));
            endpoints.push(target);
        }
        endpoints.extend(std::iter::repeat_n(v, k));
    }
    Ok(g)
}
