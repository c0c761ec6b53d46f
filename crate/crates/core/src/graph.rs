//! Undirected multigraphs with stable edge identifiers, edge-set views of
//! subgraphs, and orientations.
//!
//! A subgraph is always "spanning" in the sense that it keeps the full vertex
//! set and restricts the edge set; vertex deletion is expressed by the
//! connectivity queries instead of by rebuilding graphs, so vertex and edge
//! ids never get remapped.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// An undirected multigraph on vertices `0..n`. Loops are rejected at
/// construction; parallel edges are allowed and distinguished by [`EdgeId`].
/// Edge ids are dense in `0..edge_count()` and stable for the lifetime of
/// the graph. Endpoints are stored normalized so that `u < v`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(VertexId, VertexId)>,
}

impl Graph {
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            for id in [u, v] {
                if id >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        id,
                        n: vertex_count,
                    });
                }
            }
            normalized.push((u.min(v), u.max(v)));
        }
        Ok(Graph {
            vertex_count,
            edges: normalized,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of edge `e`, normalized so the first is the smaller id.
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges.iter().enumerate().map(|(e, &(u, v))| (e, u, v))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// True when no two edges join the same pair of vertices.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|&pair| seen.insert(pair))
    }

    pub fn full_edge_set(&self) -> EdgeSet {
        EdgeSet {
            ids: (0..self.edge_count()).collect(),
        }
    }

    /// The edges with both endpoints inside `x`.
    pub fn induced_edges(&self, x: &BTreeSet<VertexId>) -> Result<EdgeSet> {
        self.check_vertices(x)?;
        let ids = self
            .edges()
            .filter(|(_, u, v)| x.contains(u) && x.contains(v))
            .map(|(e, _, _)| e)
            .collect();
        Ok(EdgeSet { ids })
    }

    /// Connected components of the spanning subgraph `(V, f)`. Isolated
    /// vertices form singleton parts.
    pub fn components(&self, f: &EdgeSet) -> Partition {
        let mut dsu = DisjointSets::new(self.vertex_count);
        for e in f.iter() {
            let (u, v) = self.endpoints(e);
            dsu.union(u, v);
        }
        Partition::from_dsu(&mut dsu)
    }

    /// Number of edges with exactly one endpoint in `y` and no endpoint in
    /// `x`; evaluates `d_{G-X}(Y)`.
    pub fn cut_degree(&self, x: &BTreeSet<VertexId>, y: &BTreeSet<VertexId>) -> Result<usize> {
        self.check_vertices(x)?;
        self.check_vertices(y)?;
        if y.is_empty() {
            return Err(Error::EmptyCutSide);
        }
        if !x.is_disjoint(y) {
            return Err(Error::OverlappingCutSets);
        }
        if x.len() + y.len() == self.vertex_count {
            return Err(Error::CutSidesCoverAll);
        }
        let count = self
            .edges()
            .filter(|(_, u, v)| {
                !x.contains(u) && !x.contains(v) && (y.contains(u) != y.contains(v))
            })
            .count();
        Ok(count)
    }

    fn check_vertices(&self, set: &BTreeSet<VertexId>) -> Result<()> {
        for &id in set {
            if id >= self.vertex_count {
                return Err(Error::VertexOutOfRange {
                    id,
                    n: self.vertex_count,
                });
            }
        }
        Ok(())
    }

    /// Parses the edge-list text format: first non-comment line is the vertex
    /// count, every following non-empty line is `u v`. Lines starting with
    /// `#` are ignored. Edge ids are assigned in file order.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut vertex_count: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            if vertex_count.is_none() {
                let n = fields
                    .next()
                    .unwrap()
                    .parse()
                    .map_err(|_| Error::Malformed {
                        line: idx + 1,
                        reason: format!("expected vertex count, got {line:?}"),
                    })?;
                if fields.next().is_some() {
                    return Err(Error::Malformed {
                        line: idx + 1,
                        reason: "vertex-count line must hold a single integer".into(),
                    });
                }
                vertex_count = Some(n);
                continue;
            }
            let parse = |tok: Option<&str>| -> Result<usize> {
                tok.ok_or_else(|| Error::Malformed {
                    line: idx + 1,
                    reason: format!("expected `u v`, got {line:?}"),
                })?
                .parse()
                .map_err(|_| Error::Malformed {
                    line: idx + 1,
                    reason: format!("expected `u v`, got {line:?}"),
                })
            };
            let u = parse(fields.next())?;
            let v = parse(fields.next())?;
            if fields.next().is_some() {
                return Err(Error::Malformed {
                    line: idx + 1,
                    reason: format!("trailing tokens after edge in {line:?}"),
                });
            }
            edges.push((u, v));
        }
        let Some(n) = vertex_count else {
            return Err(Error::Malformed {
                line: 0,
                reason: "missing vertex-count line".into(),
            });
        };
        Graph::new(n, edges)
    }

    /// Canonical edge-list text: `serialize(parse(t)) == t` whenever `t` is
    /// already in canonical form (no comments, endpoints ordered).
    pub fn serialize(&self) -> String {
        let mut out = format!("{}\n", self.vertex_count);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.vertex_count, self.edges.len())
    }
}

/// A set of edge ids of one particular [`Graph`], representing the spanning
/// subgraph `(V, F)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct EdgeSet {
    ids: BTreeSet<EdgeId>,
}

impl EdgeSet {
    pub fn empty() -> Self {
        EdgeSet::default()
    }

    /// Builds an edge set, rejecting ids outside `g`.
    pub fn from_ids(g: &Graph, ids: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for id in ids {
            if id >= g.edge_count() {
                return Err(Error::EdgeOutOfRange {
                    id,
                    m: g.edge_count(),
                });
            }
            set.insert(id);
        }
        Ok(EdgeSet { ids: set })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.ids.contains(&e)
    }

    /// Edge ids in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.ids.iter().copied()
    }

    pub fn insert(&mut self, e: EdgeId) -> bool {
        self.ids.insert(e)
    }

    pub fn remove(&mut self, e: EdgeId) -> bool {
        self.ids.remove(&e)
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet {
            ids: self.ids.union(&other.ids).copied().collect(),
        }
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet {
            ids: self.ids.difference(&other.ids).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet {
            ids: self.ids.intersection(&other.ids).copied().collect(),
        }
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.ids.is_disjoint(&other.ids)
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.ids.is_subset(&other.ids)
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.ids.iter()).finish()
    }
}

impl FromIterator<EdgeId> for EdgeSet {
    fn from_iter<T: IntoIterator<Item = EdgeId>>(iter: T) -> Self {
        EdgeSet {
            ids: iter.into_iter().collect(),
        }
    }
}

/// A partition of the vertex set into connected components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    part_of: Vec<usize>,
    parts: Vec<Vec<VertexId>>,
}

impl Partition {
    fn from_dsu(dsu: &mut DisjointSets) -> Self {
        let n = dsu.parent.len();
        let mut root_to_part = vec![usize::MAX; n];
        let mut parts: Vec<Vec<VertexId>> = Vec::new();
        let mut part_of = vec![0; n];
        for v in 0..n {
            let r = dsu.find(v);
            if root_to_part[r] == usize::MAX {
                root_to_part[r] = parts.len();
                parts.push(Vec::new());
            }
            part_of[v] = root_to_part[r];
            parts[root_to_part[r]].push(v);
        }
        Partition { part_of, parts }
    }

    /// Number of parts, `c(G_F)`.
    pub fn count(&self) -> usize {
        self.parts.len()
    }

    pub fn part_of(&self, v: VertexId) -> usize {
        self.part_of[v]
    }

    pub fn same_part(&self, u: VertexId, v: VertexId) -> bool {
        self.part_of[u] == self.part_of[v]
    }

    /// Parts ordered by their smallest member; members ascending.
    pub fn parts(&self) -> &[Vec<VertexId>] {
        &self.parts
    }
}

pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, v: usize) -> usize {
        if self.parent[v] != v {
            let root = self.find(self.parent[v]);
            self.parent[v] = root;
        }
        self.parent[v]
    }

    pub(crate) fn union(&mut self, u: usize, v: usize) -> bool {
        let (ru, rv) = (self.find(u), self.find(v));
        if ru == rv {
            return false;
        }
        // Smaller root wins so part order is stable.
        let (lo, hi) = (ru.min(rv), ru.max(rv));
        self.parent[hi] = lo;
        true
    }
}

/// One directed edge of an [`Orientation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub edge: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
}

/// An orientation of a spanning subgraph `(V, F)`: every edge of the support
/// carries exactly one direction. Built from a graph plus a tail choice per
/// covered edge, so arcs always agree with the underlying endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    vertex_count: usize,
    arcs: Vec<Arc>,
}

impl Orientation {
    /// Orients the listed edges, each away from its chosen tail. Every edge
    /// may appear at most once and the tail must be one of its endpoints.
    pub fn new(g: &Graph, directed: impl IntoIterator<Item = (EdgeId, VertexId)>) -> Result<Self> {
        let mut seen = vec![false; g.edge_count()];
        let mut arcs = Vec::new();
        for (e, tail) in directed {
            if e >= g.edge_count() {
                return Err(Error::EdgeOutOfRange {
                    id: e,
                    m: g.edge_count(),
                });
            }
            let (u, v) = g.endpoints(e);
            if tail != u && tail != v {
                return Err(Error::Internal(format!(
                    "vertex {tail} is not an endpoint of edge {e}"
                )));
            }
            if seen[e] {
                return Err(Error::Internal(format!("edge {e} oriented twice")));
            }
            seen[e] = true;
            let head = if tail == u { v } else { u };
            arcs.push(Arc {
                edge: e,
                tail,
                head,
            });
        }
        arcs.sort_by_key(|a| a.edge);
        Ok(Orientation {
            vertex_count: g.vertex_count(),
            arcs,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Edge ids covered by this orientation.
    pub fn support(&self) -> EdgeSet {
        self.arcs.iter().map(|a| a.edge).collect()
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.arcs.iter().filter(|a| a.tail == v).count()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.arcs.iter().filter(|a| a.head == v).count()
    }

    /// Reverses the direction of the given edges.
    pub fn flip_edges(&mut self, edges: &BTreeSet<EdgeId>) {
        for arc in &mut self.arcs {
            if edges.contains(&arc.edge) {
                std::mem::swap(&mut arc.tail, &mut arc.head);
            }
        }
    }
}
