//! Theorem-level packing API: extract `k` rigid spanning subgraphs plus `l`
//! spanning trees, verify packings clause by clause, and run the derived
//! constructions (2-connected spanning subgraphs, the tree-plus-2-connected
//! split, packing after edge removal).

use crate::connectivity::{vertex_connectivity_at_least, VertexConnectivity};
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};
use crate::matroid_union::{
    self, circuit_independent, full_union_rank_target, DeficiencyOutcome, DeficiencyWitness,
};
use crate::rigidity;

/// `k` rigid bases plus `l` spanning trees, pairwise edge-disjoint.
#[derive(Clone, Debug)]
pub struct Packing {
    pub rigid_subgraphs: Vec<EdgeSet>,
    pub trees: Vec<EdgeSet>,
}

#[derive(Clone, Debug)]
pub enum PackOutcome {
    Packed(Packing),
    Deficient(DeficiencyWitness),
}

/// First violated clause found by [`verify_packing`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PackingViolation {
    /// Wrong number of rigid parts or trees.
    Counts,
    /// Two parts share the given edge.
    Disjointness { edge: usize },
    /// A part mentions an edge id outside the graph.
    UnknownEdge { edge: usize },
    /// A rigid part whose pebble rank falls short of `2n - 3`.
    RigidRank { part: usize, rank: usize },
    /// A rigid part that is not a base (wrong edge count).
    RigidSize { part: usize, size: usize },
    /// A tree that does not reach every vertex.
    Spanning { part: usize },
    /// A tree with a cycle.
    Acyclic { part: usize },
    /// A tree with the wrong edge count.
    TreeSize { part: usize, size: usize },
}

impl std::fmt::Display for PackingViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PackingViolation::Counts => write!(f, "counts"),
            PackingViolation::Disjointness { edge } => write!(f, "disjointness (edge {edge})"),
            PackingViolation::UnknownEdge { edge } => write!(f, "unknown edge {edge}"),
            PackingViolation::RigidRank { part, rank } => {
                write!(f, "rigid part {part} has rank {rank}")
            }
            PackingViolation::RigidSize { part, size } => {
                write!(f, "rigid part {part} has {size} edges")
            }
            PackingViolation::Spanning { part } => write!(f, "spanning (tree {part})"),
            PackingViolation::Acyclic { part } => write!(f, "acyclic (tree {part})"),
            PackingViolation::TreeSize { part, size } => {
                write!(f, "tree {part} has {size} edges")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum PackingVerdict {
    Valid,
    Violated(PackingViolation),
}

impl PackingVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, PackingVerdict::Valid)
    }
}

/// Packs `k` rigid bases and `l` spanning trees, or returns the deficiency
/// witness proving that no such packing exists. Connectivity of the input is
/// *not* required: the sufficient condition is checked nowhere, so the
/// packer doubles as an explorer for tight examples.
pub fn pack(g: &Graph, k: usize, l: usize) -> Result<PackOutcome> {
    pack_on(g, &g.full_edge_set(), k, l)
}

/// Packs on `(V, E \ removed)`.
pub fn pack_after_removal(g: &Graph, k: usize, l: usize, removed: &EdgeSet) -> Result<PackOutcome> {
    pack_on(g, &g.full_edge_set().difference(removed), k, l)
}

fn pack_on(g: &Graph, ground: &EdgeSet, k: usize, l: usize) -> Result<PackOutcome> {
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    if g.vertex_count() < 2 {
        return Err(Error::TooFewVertices {
            need: 2,
            have: g.vertex_count(),
        });
    }
    let partition = matroid_union::union_max_partition_on(g, ground, k, l)?;
    if partition.selected_count() == full_union_rank_target(g.vertex_count(), k, l) {
        // At full rank every part is forced to be a base of its matroid.
        return Ok(PackOutcome::Packed(Packing {
            rigid_subgraphs: partition.rigidity_parts,
            trees: partition.forest_parts,
        }));
    }
    match matroid_union::deficiency_witness_on(g, ground, k, l)? {
        DeficiencyOutcome::Deficient(w) => Ok(PackOutcome::Deficient(w)),
        DeficiencyOutcome::FullRank => Err(Error::Internal(
            "partition size and deficiency probe disagree".into(),
        )),
    }
}

/// Re-checks every packing invariant by independent recomputation and
/// reports the first violated clause.
pub fn verify_packing(g: &Graph, packing: &Packing, k: usize, l: usize) -> PackingVerdict {
    use PackingViolation as V;
    let n = g.vertex_count();
    if packing.rigid_subgraphs.len() != k || packing.trees.len() != l {
        return PackingVerdict::Violated(V::Counts);
    }
    let all_parts: Vec<&EdgeSet> = packing
        .rigid_subgraphs
        .iter()
        .chain(packing.trees.iter())
        .collect();
    for part in &all_parts {
        if let Some(edge) = part.iter().find(|&e| e >= g.edge_count()) {
            return PackingVerdict::Violated(V::UnknownEdge { edge });
        }
    }
    for (i, a) in all_parts.iter().enumerate() {
        for b in all_parts.iter().skip(i + 1) {
            let first_shared = a.intersection(b).iter().next();
            if let Some(edge) = first_shared {
                return PackingVerdict::Violated(V::Disjointness { edge });
            }
        }
    }
    let base_size = if n >= 2 { 2 * n - 3 } else { 0 };
    for (i, part) in packing.rigid_subgraphs.iter().enumerate() {
        if part.len() != base_size {
            return PackingVerdict::Violated(V::RigidSize {
                part: i,
                size: part.len(),
            });
        }
        let rank = rigidity::rigidity_rank(g, part);
        if rank != base_size {
            return PackingVerdict::Violated(V::RigidRank { part: i, rank });
        }
    }
    for (i, tree) in packing.trees.iter().enumerate() {
        if g.components(tree).count() != 1 {
            return PackingVerdict::Violated(V::Spanning { part: i });
        }
        if !circuit_independent(g, tree) {
            return PackingVerdict::Violated(V::Acyclic { part: i });
        }
        if tree.len() != n - 1 {
            return PackingVerdict::Violated(V::TreeSize {
                part: i,
                size: tree.len(),
            });
        }
    }
    PackingVerdict::Valid
}

/// The packing re-read as `k` 2-connected plus `l` connected spanning
/// subgraphs; the 2-connectivity of every rigid base is re-verified rather
/// than assumed.
#[derive(Clone, Debug)]
pub struct TwoConnectedPacking {
    pub two_connected: Vec<EdgeSet>,
    pub connected: Vec<EdgeSet>,
}

#[derive(Clone, Debug)]
pub enum TwoConnectedOutcome {
    Packed(TwoConnectedPacking),
    Deficient(DeficiencyWitness),
}

pub fn two_connected_packing(g: &Graph, k: usize, l: usize) -> Result<TwoConnectedOutcome> {
    if g.vertex_count() < 3 {
        return Err(Error::TooFewVertices {
            need: 3,
            have: g.vertex_count(),
        });
    }
    let packing = match pack(g, k, l)? {
        PackOutcome::Packed(p) => p,
        PackOutcome::Deficient(w) => return Ok(TwoConnectedOutcome::Deficient(w)),
    };
    for part in &packing.rigid_subgraphs {
        let subgraph = Graph::new(g.vertex_count(), part.iter().map(|e| g.endpoints(e)))?;
        match vertex_connectivity_at_least(&subgraph, 2)? {
            VertexConnectivity::AtLeast => {}
            other => {
                return Err(Error::Internal(format!(
                    "rigid base is not 2-connected: {other:?}"
                )))
            }
        }
    }
    Ok(TwoConnectedOutcome::Packed(TwoConnectedPacking {
        two_connected: packing.rigid_subgraphs,
        connected: packing.trees,
    }))
}

/// Outcome of the spanning-tree split: the tree plus the verified
/// 2-connectivity verdict on the full remainder `G - E(T)`.
#[derive(Clone, Debug)]
pub enum KriesellOutcome {
    Split {
        tree: EdgeSet,
        remainder_two_connected: bool,
    },
    Deficient(DeficiencyWitness),
}

pub fn kriesell_split(g: &Graph) -> Result<KriesellOutcome> {
    let packing = match pack(g, 1, 1)? {
        PackOutcome::Packed(p) => p,
        PackOutcome::Deficient(w) => return Ok(KriesellOutcome::Deficient(w)),
    };
    let tree = packing.trees.into_iter().next().expect("l = 1");
    // The remainder contains the rigid base, but the claim is about all of
    // G - E(T), so check the full remainder.
    let remainder = g.full_edge_set().difference(&tree);
    let rest = Graph::new(g.vertex_count(), remainder.iter().map(|e| g.endpoints(e)))?;
    let remainder_two_connected = matches!(
        vertex_connectivity_at_least(&rest, 2)?,
        VertexConnectivity::AtLeast
    );
    Ok(KriesellOutcome::Split {
        tree,
        remainder_two_connected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::{is_pq_connected, ConnectivitySpec, PqVerdict};
    use crate::generators;

    #[test]
    fn pack_examples() {
        let k3 = generators::complete(3).unwrap();
        match pack(&k3, 1, 0).unwrap() {
            PackOutcome::Packed(p) => {
                assert_eq!(p.rigid_subgraphs[0].len(), 3);
                assert!(verify_packing(&k3, &p, 1, 0).is_valid());
            }
            PackOutcome::Deficient(_) => panic!("K3 packs one rigid base"),
        }

        let k9 = generators::complete(9).unwrap();
        match pack(&k9, 1, 1).unwrap() {
            PackOutcome::Packed(p) => {
                assert_eq!(p.rigid_subgraphs[0].len(), 15);
                assert_eq!(p.trees[0].len(), 8);
                assert!(p.rigid_subgraphs[0].is_disjoint(&p.trees[0]));
                assert!(verify_packing(&k9, &p, 1, 1).is_valid());
            }
            PackOutcome::Deficient(_) => panic!("K9 packs a base and a tree"),
        }

        let bow = generators::bowtie();
        match pack(&bow, 1, 0).unwrap() {
            PackOutcome::Deficient(w) => {
                assert_eq!(w.achieved_rank, 6);
                assert!(w.achieved_rank < 7);
            }
            PackOutcome::Packed(_) => panic!("bowtie is not rigid"),
        }

        let doubled = Graph::new(3, [(0, 1), (0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(pack(&doubled, 1, 0).unwrap_err(), Error::NotSimple);
    }

    #[test]
    fn packing_consumes_exactly_the_target() {
        let k11 = generators::complete(11).unwrap();
        match pack(&k11, 1, 2).unwrap() {
            PackOutcome::Packed(p) => {
                let used: usize = p.rigid_subgraphs.iter().map(EdgeSet::len).sum::<usize>()
                    + p.trees.iter().map(EdgeSet::len).sum::<usize>();
                assert_eq!(used, full_union_rank_target(11, 1, 2));
            }
            PackOutcome::Deficient(_) => panic!("K11 packs (1,2)"),
        }
    }

    #[test]
    fn verify_catches_injected_violations() {
        let k9 = generators::complete(9).unwrap();
        let p = match pack(&k9, 1, 1).unwrap() {
            PackOutcome::Packed(p) => p,
            _ => unreachable!(),
        };

        let mut shared = p.clone();
        let stolen = shared.rigid_subgraphs[0].iter().next().unwrap();
        let mut tree = shared.trees[0].clone();
        let dropped = tree.iter().next().unwrap();
        tree.remove(dropped);
        tree.insert(stolen);
        shared.trees[0] = tree;
        assert!(matches!(
            verify_packing(&k9, &shared, 1, 1),
            PackingVerdict::Violated(PackingViolation::Disjointness { .. })
        ));

        // A tree omitting vertex 8: 8 edges avoiding both vertex 8 and the
        // rigid part, so the spanning clause is the first to fail.
        let mut omits = p.clone();
        let pool: Vec<usize> = k9
            .edges()
            .filter(|&(e, u, v)| u != 8 && v != 8 && !p.rigid_subgraphs[0].contains(e))
            .map(|(e, _, _)| e)
            .take(8)
            .collect();
        assert_eq!(pool.len(), 8);
        omits.trees[0] = EdgeSet::from_ids(&k9, pool).unwrap();
        assert!(matches!(
            verify_packing(&k9, &omits, 1, 1),
            PackingVerdict::Violated(PackingViolation::Spanning { .. })
        ));

        assert!(matches!(
            verify_packing(&k9, &p, 2, 1),
            PackingVerdict::Violated(PackingViolation::Counts)
        ));
    }

    fn expect_two_connected(outcome: TwoConnectedOutcome) -> TwoConnectedPacking {
        match outcome {
            TwoConnectedOutcome::Packed(t) => t,
            TwoConnectedOutcome::Deficient(_) => panic!("expected a packing"),
        }
    }

    #[test]
    fn two_connected_packing_examples() {
        let k7 = generators::complete(7).unwrap();
        let t = expect_two_connected(two_connected_packing(&k7, 1, 0).unwrap());
        assert_eq!(t.two_connected[0].len(), 11);
        assert!(t.connected.is_empty());

        let k9 = generators::complete(9).unwrap();
        let t = expect_two_connected(two_connected_packing(&k9, 1, 1).unwrap());
        assert_eq!(t.two_connected.len(), 1);
        assert_eq!(t.connected.len(), 1);

        let k3 = generators::complete(3).unwrap();
        let t = expect_two_connected(two_connected_packing(&k3, 1, 0).unwrap());
        assert_eq!(t.two_connected[0].len(), 3);
    }

    #[test]
    fn kriesell_examples() {
        let k9 = generators::complete(9).unwrap();
        match kriesell_split(&k9).unwrap() {
            KriesellOutcome::Split {
                tree,
                remainder_two_connected,
            } => {
                assert_eq!(tree.len(), 8);
                assert!(remainder_two_connected);
            }
            KriesellOutcome::Deficient(_) => panic!("K9 splits"),
        }

        // K3 has too few edges for a base plus a tree.
        let k3 = generators::complete(3).unwrap();
        assert!(matches!(
            kriesell_split(&k3).unwrap(),
            KriesellOutcome::Deficient(_)
        ));

        let k11 = generators::complete(11).unwrap();
        match kriesell_split(&k11).unwrap() {
            KriesellOutcome::Split {
                tree,
                remainder_two_connected,
            } => {
                assert_eq!(tree.len(), 10);
                assert!(remainder_two_connected);
            }
            KriesellOutcome::Deficient(_) => panic!("K11 splits"),
        }
    }

    #[test]
    fn removal_examples() {
        let k9 = generators::complete(9).unwrap();
        let removed = EdgeSet::from_ids(&k9, [0, 7, 13, 21]).unwrap();
        match pack_after_removal(&k9, 1, 1, &removed).unwrap() {
            PackOutcome::Packed(p) => {
                assert!(verify_packing(&k9, &p, 1, 1).is_valid());
                for part in p.rigid_subgraphs.iter().chain(p.trees.iter()) {
                    assert!(part.is_disjoint(&removed));
                }
            }
            PackOutcome::Deficient(_) => panic!("removal within 3k + l must keep the packing"),
        }

        // Deleting the whole star at vertex 0 isolates it.
        let star: Vec<usize> = k9
            .edges()
            .filter(|&(_, u, _)| u == 0)
            .map(|(e, _, _)| e)
            .collect();
        let removed = EdgeSet::from_ids(&k9, star).unwrap();
        match pack_after_removal(&k9, 1, 1, &removed).unwrap() {
            PackOutcome::Deficient(w) => {
                assert!(w.achieved_rank < full_union_rank_target(9, 1, 1));
            }
            PackOutcome::Packed(_) => panic!("isolated vertex admits no spanning tree"),
        }

        let k7 = generators::complete(7).unwrap();
        let removed = EdgeSet::from_ids(&k7, [2, 9, 17]).unwrap();
        match pack_after_removal(&k7, 1, 0, &removed).unwrap() {
            PackOutcome::Packed(p) => assert!(verify_packing(&k7, &p, 1, 0).is_valid()),
            PackOutcome::Deficient(_) => panic!("3 = 3k + l removals keep K7 packable"),
        }
    }

    #[test]
    fn certified_pq_graphs_always_pack() {
        // Sufficiency of the hypothesis class at desk scale.
        for (k, l, seed) in [(1usize, 0usize, 21u64), (1, 1, 22), (2, 0, 23), (1, 2, 24)] {
            let spec = ConnectivitySpec::new(6 * k + 2 * l, 2 * k).unwrap();
            let n = (6 * k + 2 * l + 2).min(14);
            let g = generators::random_pq_connected(n, &spec, seed, 60).unwrap();
            assert!(matches!(is_pq_connected(&g, &spec), PqVerdict::Connected));
            match pack(&g, k, l).unwrap() {
                PackOutcome::Packed(p) => assert!(verify_packing(&g, &p, k, l).is_valid()),
                PackOutcome::Deficient(_) => {
                    panic!(
                        "certified ({},{})-connected graph failed to pack",
                        6 * k + 2 * l,
                        2 * k
                    )
                }
            }
        }
    }

    #[test]
    fn pack_outcome_is_exclusive() {
        for seed in 0..15u64 {
            let g = generators::random_simple(7, 0.7, 14_000 + seed).unwrap();
            let outcome = pack(&g, 1, 1).unwrap();
            let rank = matroid_union::union_rank(&g, 1, 1).unwrap();
            let full = rank == full_union_rank_target(7, 1, 1);
            match outcome {
                PackOutcome::Packed(p) => {
                    assert!(full);
                    assert!(verify_packing(&g, &p, 1, 1).is_valid());
                }
                PackOutcome::Deficient(w) => {
                    assert!(!full);
                    assert_eq!(w.achieved_rank, rank);
                }
            }
        }
    }
}
