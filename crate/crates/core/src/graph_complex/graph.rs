use std::collections::BTreeSet;
use std::fmt;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};

/// User-facing vertex identifier.
pub type Label = u32;

/// Largest number of vertices a factor may have (coordinates are stored as bytes).
pub const MAX_FACTOR_VERTICES: usize = 256;

/// An edge given by vertex positions, `lo < hi` in the vertex order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub lo: usize,
    pub hi: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Edge {
        Edge { lo: a.min(b), hi: a.max(b) }
    }

    pub fn contains(&self, p: usize) -> bool {
        self.lo == p || self.hi == p
    }

    /// The shared endpoint of two distinct incident edges.
    pub fn shared_vertex(&self, other: &Edge) -> Option<usize> {
        if self == other {
            return None;
        }
        [self.lo, self.hi].into_iter().find(|&p| other.contains(p))
    }
}

/// A finite simple graph with a total order on its vertices.
///
/// Vertices are addressed by position in the order; `labels` keeps the identifiers the
/// graph was built from. Edges are kept sorted by `(lo, hi)`, which is the fixed edge order.
#[derive(Clone, PartialEq, Eq)]
pub struct OrderedGraph {
    labels: Vec<Label>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
}

impl fmt::Debug for OrderedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges.iter().map(|e| (self.labels[e.lo], self.labels[e.hi])).collect();
        f.debug_struct("OrderedGraph").field("vertices", &self.labels).field("edges", &edges).finish()
    }
}

impl OrderedGraph {
    /// Builds and validates a graph: no loops, no repeated edges, known endpoints, connected.
    pub fn new(vertices: Vec<Label>, edges: &[(Label, Label)]) -> Result<OrderedGraph> {
        if vertices.is_empty() {
            return Err(Error::InvalidGraph("empty vertex list".into()));
        }
        if vertices.len() > MAX_FACTOR_VERTICES {
            return Err(Error::InvalidGraph(format!(
                "{} vertices exceeds the limit of {MAX_FACTOR_VERTICES}",
                vertices.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for &v in &vertices {
            if !seen.insert(v) {
                return Err(Error::InvalidGraph(format!("duplicate vertex {v}")));
            }
        }
        let pos = |l: Label| {
            vertices.iter().position(|&x| x == l).ok_or_else(|| Error::InvalidGraph(format!("unknown endpoint {l}")))
        };
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at {a}")));
            }
            let e = Edge::new(pos(a)?, pos(b)?);
            if !set.insert(e) {
                return Err(Error::InvalidGraph(format!("repeated edge {{{a},{b}}}")));
            }
        }
        let g = OrderedGraph::from_parts(vertices, set.into_iter().collect());
        if !g.is_connected() {
            return Err(Error::InvalidGraph("graph is disconnected".into()));
        }
        Ok(g)
    }

    /// Unvalidated construction; `edges` must be sorted, deduplicated and in range.
    pub(crate) fn from_parts(labels: Vec<Label>, edges: Vec<Edge>) -> OrderedGraph {
        let mut adjacency = vec![Vec::new(); labels.len()];
        for e in &edges {
            adjacency[e.lo].push(e.hi);
            adjacency[e.hi].push(e.lo);
        }
        for a in &mut adjacency {
            a.sort_unstable();
        }
        OrderedGraph { labels, edges, adjacency }
    }

    /// Complete graph on `0 < 1 < … < n-1`.
    pub fn complete(n: usize) -> OrderedGraph {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push(Edge { lo: a, hi: b });
            }
        }
        OrderedGraph::from_parts((0..n as Label).collect(), edges)
    }

    /// Path `0 - 1 - … - (n-1)` with the natural order.
    pub fn path(n: usize) -> OrderedGraph {
        let edges = (1..n).map(|b| Edge { lo: b - 1, hi: b }).collect();
        OrderedGraph::from_parts((0..n as Label).collect(), edges)
    }

    /// Star with center `0` and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> OrderedGraph {
        let edges = (1..=leaves).map(|b| Edge { lo: 0, hi: b }).collect();
        OrderedGraph::from_parts((0..=leaves as Label).collect(), edges)
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, pos: usize) -> Label {
        self.labels[pos]
    }

    pub fn position(&self, label: Label) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn neighbors(&self, a: usize) -> &[usize] {
        &self.adjacency[a]
    }

    /// Number of incident edges.
    pub fn valence(&self, a: usize) -> usize {
        self.adjacency[a].len()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.labels.len();
        if n == 0 {
            return false;
        }
        let mut uf = UnionFind::<usize>::new(n);
        for e in &self.edges {
            uf.union(e.lo, e.hi);
        }
        (1..n).all(|v| uf.equiv(0, v))
    }

    /// Induced subgraph on the first `n` vertices of the order. May be empty or disconnected.
    pub(crate) fn prefix(&self, n: usize) -> OrderedGraph {
        let edges = self.edges.iter().copied().filter(|e| e.hi < n).collect();
        OrderedGraph::from_parts(self.labels[..n].to_vec(), edges)
    }

    /// Vertices are the edges of `self` in edge order (labelled by edge index); two are
    /// adjacent when the edges share an endpoint.
    pub fn line_graph(&self) -> OrderedGraph {
        let m = self.edges.len();
        let mut edges = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                if self.edges[a].shared_vertex(&self.edges[b]).is_some() {
                    edges.push(Edge { lo: a, hi: b });
                }
            }
        }
        OrderedGraph::from_parts((0..m as Label).collect(), edges)
    }

    /// Replaces every edge by a path of `n` edges.
    ///
    /// The interior vertices of an edge are placed directly after its lower endpoint, edges
    /// taken in edge order, so each new path is increasing. Original labels are kept and new
    /// vertices get fresh labels above the current maximum.
    pub fn subdivide(&self, n: usize) -> Result<OrderedGraph> {
        if n == 0 {
            return Err(Error::InvalidArgument("subdivision factor must be at least 1".into()));
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let total = self.labels.len() + self.edges.len() * (n - 1);
        if total > MAX_FACTOR_VERTICES {
            return Err(Error::InvalidGraph(format!("subdivision has {total} vertices, limit {MAX_FACTOR_VERTICES}")));
        }
        let mut next = self.labels.iter().max().map_or(0, |&m| m + 1);
        // interior labels of each edge, in path order from lo to hi
        let interior: Vec<Vec<Label>> = self
            .edges
            .iter()
            .map(|_| {
                (1..n)
                    .map(|_| {
                        next += 1;
                        next - 1
                    })
                    .collect()
            })
            .collect();
        let mut order = Vec::with_capacity(total);
        for p in 0..self.labels.len() {
            order.push(self.labels[p]);
            for (ei, e) in self.edges.iter().enumerate() {
                if e.lo == p {
                    order.extend_from_slice(&interior[ei]);
                }
            }
        }
        let mut pairs = Vec::new();
        for (ei, e) in self.edges.iter().enumerate() {
            let mut chain = vec![self.labels[e.lo]];
            chain.extend_from_slice(&interior[ei]);
            chain.push(self.labels[e.hi]);
            pairs.extend(chain.windows(2).map(|w| (w[0], w[1])));
        }
        OrderedGraph::new(order, &pairs)
    }
}
