//! Deterministic test-instance factory: canonical labeled graph families and
//! seeded random graphs, including rejection sampling filtered by the
//! `(p,q)`-connectivity checker.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

use crate::connectivity::{is_pq_connected, ConnectivitySpec, PqVerdict};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Complete graph on `n` vertices; edges in lexicographic order.
pub fn complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::ParameterOutOfRange(
            "complete graph needs n >= 1".into(),
        ));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, edges)
}

/// Cycle `0-1-...-(n-1)-0`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::ParameterOutOfRange("cycle needs n >= 3".into()));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Path `0-1-...-(n-1)`.
pub fn path(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::ParameterOutOfRange("path needs n >= 1".into()));
    }
    Graph::new(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1)))
}

/// Two triangles `012` and `034` sharing vertex 0.
pub fn bowtie() -> Graph {
    Graph::new(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap()
}

/// Wheel: hub `0` joined to the cycle `1..n-1`.
pub fn wheel(n: usize) -> Result<Graph> {
    if n < 4 {
        return Err(Error::ParameterOutOfRange("wheel needs n >= 4".into()));
    }
    let rim = n - 1;
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (0, v)).collect();
    edges.extend((0..rim).map(|i| (1 + i, 1 + (i + 1) % rim)));
    Graph::new(n, edges)
}

/// Circulant graph: vertex `i` joined to `i ± d` for each offset `d`.
/// Offsets are reduced mod `n`; each resulting undirected edge appears once.
pub fn circulant(n: usize, offsets: &[usize]) -> Result<Graph> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange("circulant needs n >= 2".into()));
    }
    let mut reduced = BTreeSet::new();
    for &d in offsets {
        let d = d % n;
        if d == 0 {
            return Err(Error::ParameterOutOfRange(
                "circulant offsets must be nonzero mod n".into(),
            ));
        }
        reduced.insert(d.min(n - d));
    }
    let mut edges = Vec::new();
    for &d in &reduced {
        let rounds = if 2 * d == n { n / 2 } else { n };
        for i in 0..rounds {
            edges.push((i, (i + d) % n));
        }
    }
    Graph::new(n, edges)
}

/// Seeded Erdős–Rényi-style simple graph: each of the `n(n-1)/2` candidate
/// edges is kept independently with probability `p`.
pub fn random_simple(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange(
            "edge probability must lie in [0,1]".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// Samples a simple graph certified `(p,q)`-connected by [`is_pq_connected`].
///
/// Generation draws a `d`-regular-ish configuration-model graph with
/// `d ≈ p + 2`, simplifies it, and resamples until the checker certifies the
/// result. Identical `(n, spec, seed)` always yield the identical graph.
pub fn random_pq_connected(
    n: usize,
    spec: &ConnectivitySpec,
    seed: u64,
    max_attempts: usize,
) -> Result<Graph> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange(
            "pq-connected sampling needs n >= 2".into(),
        ));
    }
    let degree = (spec.p() + 2).min(n - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_attempts {
        // Dense targets are sampled through the complement: pairing stubs
        // directly almost never reaches minimum degree n-2 or so.
        let g = if degree > (n - 1) / 2 {
            complement_of(&configuration_model(n, n - 1 - degree, &mut rng)?)?
        } else {
            configuration_model(n, degree, &mut rng)?
        };
        if matches!(is_pq_connected(&g, spec), PqVerdict::Connected) {
            return Ok(g);
        }
    }
    Err(Error::MaxAttemptsExhausted {
        attempts: max_attempts,
    })
}

fn complement_of(g: &Graph) -> Result<Graph> {
    let n = g.vertex_count();
    let mut present = vec![false; n * n];
    for (_, u, v) in g.edges() {
        present[u * n + v] = true;
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !present[u * n + v] {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// One configuration-model draw: `degree` stubs per vertex, paired after a
/// shuffle; loops and duplicate pairs are dropped (simplification).
fn configuration_model(n: usize, degree: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let mut stubs: Vec<usize> = (0..n)
        .flat_map(|v| std::iter::repeat_n(v, degree))
        .collect();
    stubs.shuffle(rng);
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    for pair in stubs.chunks_exact(2) {
        let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        if u != v && seen.insert((u, v)) {
            edges.push((u, v));
        }
    }
    edges.sort_unstable();
    Graph::new(n, edges)
}
