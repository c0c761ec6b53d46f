//! Independent ground-truth engines used to cross-check the fast
//! implementations: an exhaustive sparsity-count rank, a randomized
//! rigidity-matrix rank over a prime field, and an exhaustive
//! union-rank search. None of them share code with the engines they audit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};

/// Fixed field modulus: the Mersenne prime `2^61 - 1`. Products fit in
/// `u128`, and the per-query failure probability of the randomized rank is
/// bounded by (matrix size)/modulus.
pub const FIELD_MODULUS: u64 = (1 << 61) - 1;

const LAMAN_VERTEX_CAP: usize = 10;
const LAMAN_EDGE_CAP: usize = 17;
const UNION_EDGE_CAP: usize = 12;
const UNION_VERTEX_CAP: usize = 6;

/// Size of the largest subset of `f` in which every nonempty sub-subset
/// `f''` satisfies `|f''| <= 2|V(f'')| - 3`, found by exhaustive search over
/// candidate subsets (largest first).
pub fn laman_rank_bruteforce(g: &Graph, f: &EdgeSet) -> Result<usize> {
    let support: Vec<usize> = {
        let mut vs = BTreeSet::new();
        for e in f.iter() {
            let (u, v) = g.endpoints(e);
            vs.insert(u);
            vs.insert(v);
        }
        vs.into_iter().collect()
    };
    if support.len() > LAMAN_VERTEX_CAP {
        return Err(Error::InstanceTooLarge {
            what: "support vertex count",
            cap: LAMAN_VERTEX_CAP,
            got: support.len(),
        });
    }
    if f.len() > LAMAN_EDGE_CAP {
        return Err(Error::InstanceTooLarge {
            what: "edge count",
            cap: LAMAN_EDGE_CAP,
            got: f.len(),
        });
    }
    let index_of = |v: usize| support.binary_search(&v).unwrap();
    let edges: Vec<(usize, usize)> = f
        .iter()
        .map(|e| {
            let (u, v) = g.endpoints(e);
            (index_of(u), index_of(v))
        })
        .collect();
    let nv = support.len();
    let m = edges.len();
    if m == 0 {
        return Ok(0);
    }

    // edge_in_x[x] = bitmask of edges with both endpoints inside vertex mask x.
    let masks = 1usize << nv;
    let mut edges_in: Vec<u32> = vec![0; masks];
    for x in 0..masks {
        let mut bits = 0u32;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if x >> u & 1 == 1 && x >> v & 1 == 1 {
                bits |= 1 << i;
            }
        }
        edges_in[x] = bits;
    }
    let sparse = |candidate: u32| -> bool {
        for x in 0..masks {
            let size = x.count_ones() as usize;
            if size < 2 {
                continue;
            }
            if (edges_in[x] & candidate).count_ones() as usize > 2 * size - 3 {
                return false;
            }
        }
        true
    };

    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); m + 1];
    for candidate in 0..(1u32 << m) {
        by_size[candidate.count_ones() as usize].push(candidate);
    }
    for size in (0..=m).rev() {
        if by_size[size].iter().any(|&c| sparse(c)) {
            return Ok(size);
        }
    }
    Ok(0)
}

/// A seeded generic point configuration over the prime field.
#[derive(Clone, Debug)]
pub struct GenericConfiguration {
    pub prime: u64,
    pub coords: Vec<(u64, u64)>,
    pub seed: u64,
}

impl GenericConfiguration {
    pub fn sample(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coords = (0..n)
            .map(|_| {
                (
                    rng.gen_range(1..FIELD_MODULUS),
                    rng.gen_range(1..FIELD_MODULUS),
                )
            })
            .collect();
        GenericConfiguration {
            prime: FIELD_MODULUS,
            coords,
            seed,
        }
    }
}

/// Rank of the rigidity matrix of `(V, f)` at random generic configurations,
/// maximized over three seeds derived from `seed`. Specialization can only
/// lower the rank, so the maximum is exact except with negligible
/// probability.
pub fn matrix_rank_rigidity(g: &Graph, f: &EdgeSet, seed: u64) -> usize {
    (0..3)
        .map(|i| {
            matrix_rank_at(
                g,
                f,
                &GenericConfiguration::sample(g.vertex_count(), seed.wrapping_add(i)),
            )
        })
        .max()
        .unwrap_or(0)
}

/// Rank at one fixed configuration.
pub fn matrix_rank_at(g: &Graph, f: &EdgeSet, config: &GenericConfiguration) -> usize {
    let n = g.vertex_count();
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(f.len());
    for e in f.iter() {
        let (u, v) = g.endpoints(e);
        let mut row = vec![0u64; 2 * n];
        let dx = sub(config.coords[u].0, config.coords[v].0);
        let dy = sub(config.coords[u].1, config.coords[v].1);
        row[2 * u] = dx;
        row[2 * u + 1] = dy;
        row[2 * v] = sub(0, dx);
        row[2 * v + 1] = sub(0, dy);
        rows.push(row);
    }
    field_rank(&mut rows)
}

/// Gaussian elimination with full pivoting over the prime field.
fn field_rank(rows: &mut [Vec<u64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0;
    let mut used_col = vec![false; cols];
    for _ in 0..rows.len().min(cols) {
        // Full pivot search over the untouched block.
        let mut pivot = None;
        'search: for r in rank..rows.len() {
            for c in 0..cols {
                if !used_col[c] && rows[r][c] != 0 {
                    pivot = Some((r, c));
                    break 'search;
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        rows.swap(rank, pr);
        used_col[pc] = true;
        let inv = mod_inverse(rows[rank][pc]);
        for r in 0..rows.len() {
            if r != rank && rows[r][pc] != 0 {
                let factor = mul(rows[r][pc], inv);
                for c in 0..cols {
                    let delta = mul(factor, rows[rank][c]);
                    rows[r][c] = sub(rows[r][c], delta);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % FIELD_MODULUS as u128) as u64
}

fn sub(a: u64, b: u64) -> u64 {
    (a + FIELD_MODULUS - b) % FIELD_MODULUS
}

fn mod_inverse(a: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let mut base = a;
    let mut exp = FIELD_MODULUS - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        exp >>= 1;
    }
    acc
}

/// Exhaustive maximum size of a subset of `E` partitionable into `k`
/// sparsity-independent sets plus `l` forests. Assignment search over edge
/// labels with first-fit symmetry breaking and a remaining-capacity bound.
pub fn union_rank_bruteforce(g: &Graph, k: usize, l: usize) -> Result<usize> {
    if g.edge_count() > UNION_EDGE_CAP {
        return Err(Error::InstanceTooLarge {
            what: "edge count",
            cap: UNION_EDGE_CAP,
            got: g.edge_count(),
        });
    }
    if g.vertex_count() > UNION_VERTEX_CAP {
        return Err(Error::InstanceTooLarge {
            what: "vertex count",
            cap: UNION_VERTEX_CAP,
            got: g.vertex_count(),
        });
    }
    if k + l == 0 {
        return Err(Error::ParameterOutOfRange("k + l must be >= 1".into()));
    }
    let edges: Vec<(usize, usize)> = g.edges().map(|(_, u, v)| (u, v)).collect();
    let n = g.vertex_count();
    let masks = 1usize << n;
    let mut edges_in: Vec<u32> = vec![0; masks];
    for (x, slot) in edges_in.iter_mut().enumerate() {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if x >> u & 1 == 1 && x >> v & 1 == 1 {
                *slot |= 1 << i;
            }
        }
    }

    struct Search<'a> {
        edges: &'a [(usize, usize)],
        edges_in: &'a [u32],
        masks: usize,
        k: usize,
        l: usize,
        best: usize,
    }

    impl Search<'_> {
        fn sparse_after_add(&self, part: u32, e: usize) -> bool {
            let part = part | 1 << e;
            for x in 0..self.masks {
                let size = x.count_ones() as usize;
                if size < 2 {
                    continue;
                }
                if (self.edges_in[x] & part).count_ones() as usize > 2 * size - 3 {
                    return false;
                }
            }
            true
        }

        fn forest_after_add(&self, part: u32, e: usize) -> bool {
            // Cycle check on the small part.
            let mut dsu = crate::graph::DisjointSets::new(UNION_VERTEX_CAP);
            for i in 0..self.edges.len() {
                if part >> i & 1 == 1 {
                    let (u, v) = self.edges[i];
                    dsu.union(u, v);
                }
            }
            let (u, v) = self.edges[e];
            dsu.find(u) != dsu.find(v)
        }

        fn run(&mut self, e: usize, parts: &mut Vec<u32>, selected: usize) {
            if selected + (self.edges.len() - e) <= self.best {
                return;
            }
            if e == self.edges.len() {
                self.best = self.best.max(selected);
                return;
            }
            // Identical copies: only the first empty part of each kind is
            // worth trying.
            let mut tried_empty_sparse = false;
            let mut tried_empty_forest = false;
            for i in 0..self.k + self.l {
                let is_sparse = i < self.k;
                if parts[i] == 0 {
                    let tried = if is_sparse {
                        &mut tried_empty_sparse
                    } else {
                        &mut tried_empty_forest
                    };
                    if *tried {
                        continue;
                    }
                    *tried = true;
                }
                let ok = if is_sparse {
                    self.sparse_after_add(parts[i], e)
                } else {
                    self.forest_after_add(parts[i], e)
                };
                if ok {
                    parts[i] |= 1 << e;
                    self.run(e + 1, parts, selected + 1);
                    parts[i] &= !(1 << e);
                }
            }
            self.run(e + 1, parts, selected);
        }
    }

    let mut search = Search {
        edges: &edges,
        edges_in: &edges_in,
        masks,
        k,
        l,
        best: 0,
    };
    let mut parts = vec![0u32; k + l];
    search.run(0, &mut parts, 0);
    Ok(search.best)
}
