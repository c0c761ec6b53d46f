//! The two-dimensional rigidity matroid: independence and rank via the
//! (2,3)-pebble game, rigid-component covers that attain the rank as a
//! certificate, and the arithmetic of non-rigidity certificates.
//!
//! The pebble game keeps two pebbles per vertex and accepts an edge exactly
//! when four pebbles can be gathered on its endpoints by reversing
//! bookkeeping arcs; the accepted count is the rank. Rigid components fall
//! out of the final state: with three pebbles gathered on the endpoints of a
//! spanned pair, the component is the set of vertices that cannot reach any
//! other pebble.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, Graph, VertexId};

/// Pebble-game bookkeeping over one graph: the accepted independent set,
/// per-vertex pebble counts, and the orientation of accepted edges.
#[derive(Clone)]
pub struct PebbleState {
    pebbles: Vec<u8>,
    /// out[v] lists (edge id, head) for accepted edges oriented out of v.
    out: Vec<Vec<(EdgeId, VertexId)>>,
    accepted: Vec<EdgeId>,
}

impl PebbleState {
    pub fn new(n: usize) -> Self {
        PebbleState {
            pebbles: vec![2; n],
            out: vec![Vec::new(); n],
            accepted: Vec::new(),
        }
    }

    pub fn accepted(&self) -> &[EdgeId] {
        &self.accepted
    }

    pub fn rank(&self) -> usize {
        self.accepted.len()
    }

    /// Attempts to insert `e = (u, v)`: succeeds iff four pebbles can be
    /// gathered on `{u, v}`, i.e. iff the accepted set stays independent.
    pub fn try_insert(&mut self, e: EdgeId, u: VertexId, v: VertexId) -> bool {
        if !self.gather(u, v, 4) {
            return false;
        }
        self.pebbles[u] -= 1;
        self.out[u].push((e, v));
        self.accepted.push(e);
        true
    }

    /// Whether a (possibly virtual) edge `uv` could be inserted now. The
    /// pebble layout may move, the accepted set does not.
    pub fn probe(&mut self, u: VertexId, v: VertexId) -> bool {
        self.gather(u, v, 4)
    }

    /// Removes a previously accepted edge, handing its pebble back to the
    /// tail. The state stays valid for the reduced accepted set.
    pub fn remove_accepted(&mut self, e: EdgeId) {
        let pos = self
            .accepted
            .iter()
            .position(|&x| x == e)
            .expect("edge was accepted");
        self.accepted.remove(pos);
        for v in 0..self.out.len() {
            if let Some(i) = self.out[v].iter().position(|&(id, _)| id == e) {
                self.out[v].remove(i);
                self.pebbles[v] += 1;
                return;
            }
        }
        unreachable!("accepted edge has an orientation");
    }

    /// Moves pebbles until `goal` of them sit on `{u, v}`, or returns false
    /// when no further pebble is reachable (then exactly three are there).
    fn gather(&mut self, u: VertexId, v: VertexId, goal: u8) -> bool {
        while self.pebbles[u] + self.pebbles[v] < goal {
            if !(self.pull_pebble(u, v) || self.pull_pebble(v, u)) {
                return false;
            }
        }
        true
    }

    /// Finds a directed path from `root` to a pebbled vertex outside
    /// `{root, other}` and reverses it, moving one pebble to `root`.
    fn pull_pebble(&mut self, root: VertexId, other: VertexId) -> bool {
        let n = self.out.len();
        let mut parent: Vec<Option<(VertexId, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        seen[other] = true;
        let mut stack = vec![root];
        let mut found = None;
        'dfs: while let Some(x) = stack.pop() {
            for i in 0..self.out[x].len() {
                let (_, head) = self.out[x][i];
                if seen[head] {
                    continue;
                }
                seen[head] = true;
                parent[head] = Some((x, i));
                if self.pebbles[head] > 0 {
                    found = Some(head);
                    break 'dfs;
                }
                stack.push(head);
            }
        }
        let Some(mut w) = found else { return false };
        self.pebbles[w] -= 1;
        self.pebbles[root] += 1;
        while let Some((prev, idx)) = parent[w] {
            let (edge, _) = self.out[prev].remove(idx);
            self.out[w].push((edge, prev));
            w = prev;
        }
        true
    }

    /// Vertices that cannot reach any pebble other than the three gathered
    /// on `{u, v}`; callers must have just failed `probe(u, v)`.
    fn locked_region(&self, u: VertexId, v: VertexId) -> BTreeSet<VertexId> {
        let n = self.out.len();
        debug_assert_eq!(self.pebbles[u] + self.pebbles[v], 3);
        let mut reverse: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for tail in 0..n {
            for &(_, head) in &self.out[tail] {
                reverse[head].push(tail);
            }
        }
        let mut reaches_pebble = vec![false; n];
        let mut stack: Vec<VertexId> = (0..n)
            .filter(|&w| w != u && w != v && self.pebbles[w] > 0)
            .collect();
        for &w in &stack {
            reaches_pebble[w] = true;
        }
        while let Some(x) = stack.pop() {
            for &back in &reverse[x] {
                if !reaches_pebble[back] {
                    reaches_pebble[back] = true;
                    stack.push(back);
                }
            }
        }
        (0..n).filter(|&w| !reaches_pebble[w]).collect()
    }
}

/// A collection of vertex sets whose induced edges partition `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub sets: Vec<BTreeSet<VertexId>>,
    pub target: EdgeSet,
}

fn play_game(g: &Graph, f: &EdgeSet) -> PebbleState {
    let mut state = PebbleState::new(g.vertex_count());
    for e in f.iter() {
        let (u, v) = g.endpoints(e);
        state.try_insert(e, u, v);
    }
    state
}

/// True iff `f` is independent in the rigidity matroid.
pub fn rigidity_independent(g: &Graph, f: &EdgeSet) -> bool {
    rigidity_rank(g, f) == f.len()
}

/// Rank of `f` in the rigidity matroid of `g`.
pub fn rigidity_rank(g: &Graph, f: &EdgeSet) -> usize {
    play_game(g, f).rank()
}

/// The maximal vertex sets spanning rigid subgraphs of `(V, f)`, returned as
/// a cover whose value equals the rank.
pub fn rigid_components(g: &Graph, f: &EdgeSet) -> Result<Cover> {
    if f.is_empty() {
        return Err(Error::EmptyEdgeSet);
    }
    let mut state = play_game(g, f);
    let mut assigned = vec![false; g.edge_count()];
    let mut sets: Vec<BTreeSet<VertexId>> = Vec::new();
    for e in f.iter() {
        if assigned[e] {
            continue;
        }
        let (u, v) = g.endpoints(e);
        let insertable = state.probe(u, v);
        debug_assert!(!insertable, "an edge of f is always spanned");
        let component = state.locked_region(u, v);
        debug_assert!(component.contains(&u) && component.contains(&v));
        for other in f.iter() {
            let (a, b) = g.endpoints(other);
            if component.contains(&a) && component.contains(&b) {
                assigned[other] = true;
            }
        }
        sets.push(component);
    }
    let cover = Cover {
        sets,
        target: f.clone(),
    };
    debug_assert_eq!(cover_value(g, &cover).unwrap(), state.rank());
    Ok(cover)
}

/// True iff `r(E) = 2n - 3`; requires a simple graph on at least two
/// vertices.
pub fn is_rigid(g: &Graph) -> Result<bool> {
    if g.vertex_count() < 2 {
        return Err(Error::TooFewVertices {
            need: 2,
            have: g.vertex_count(),
        });
    }
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    Ok(rigidity_rank(g, &g.full_edge_set()) == 2 * g.vertex_count() - 3)
}

/// Validates the cover and evaluates `Σ (2|X| - 3)`, an upper bound on the
/// rank of the cover's target.
pub fn cover_value(g: &Graph, cover: &Cover) -> Result<usize> {
    validate_cover(g, cover)?;
    Ok(cover.sets.iter().map(|x| 2 * x.len() - 3).sum())
}

fn validate_cover(g: &Graph, cover: &Cover) -> Result<()> {
    let mut covered_by = vec![None; g.edge_count()];
    for (i, x) in cover.sets.iter().enumerate() {
        if x.len() < 2 {
            return Err(Error::InvalidCover(format!(
                "set {i} has fewer than two vertices"
            )));
        }
        let induced = g.induced_edges(x).map_err(|e| match e {
            Error::VertexOutOfRange { id, n } => {
                Error::InvalidCover(format!("set {i} mentions vertex {id} >= {n}"))
            }
            other => other,
        })?;
        let mut hit_target = false;
        for e in induced.iter() {
            if !cover.target.contains(e) {
                continue;
            }
            hit_target = true;
            if let Some(j) = covered_by[e] {
                return Err(Error::InvalidCover(format!(
                    "edge {e} induced by sets {j} and {i}"
                )));
            }
            covered_by[e] = Some(i);
        }
        if !hit_target {
            return Err(Error::InvalidCover(format!(
                "set {i} induces no edge of the target"
            )));
        }
    }
    for e in cover.target.iter() {
        if covered_by[e].is_none() {
            return Err(Error::InvalidCover(format!("edge {e} is not covered")));
        }
    }
    Ok(())
}

/// True iff the cover proves `r(E) < 2n - 3`. The cover must target the full
/// edge set.
pub fn certify_nonrigid(g: &Graph, cover: &Cover) -> Result<bool> {
    if g.vertex_count() < 2 {
        return Err(Error::TooFewVertices {
            need: 2,
            have: g.vertex_count(),
        });
    }
    if cover.target != g.full_edge_set() {
        return Err(Error::InvalidCover(
            "non-rigidity certificates must cover the full edge set".into(),
        ));
    }
    Ok(cover_value(g, cover)? < 2 * g.vertex_count() - 3)
}
