use std::fmt;

use crate::error::{Error, Result};
use crate::graph_complex::graph::{Edge, Label, OrderedGraph};

/// Largest supported number of factors.
pub const MAX_DIM: usize = 8;

/// A vertex of a product: one vertex position per factor.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductVertex {
    dim: u8,
    coords: [u8; MAX_DIM],
}

impl ProductVertex {
    pub fn new(coords: &[usize]) -> Result<ProductVertex> {
        if coords.len() > MAX_DIM {
            return Err(Error::InvalidVertex(format!("{} coordinates, at most {MAX_DIM} supported", coords.len())));
        }
        let mut c = [0u8; MAX_DIM];
        for (slot, &x) in c.iter_mut().zip(coords) {
            *slot = u8::try_from(x).map_err(|_| Error::InvalidVertex(format!("coordinate {x} out of range")))?;
        }
        Ok(ProductVertex { dim: coords.len() as u8, coords: c })
    }

    /// The vertex of `{0,1}^d` whose coordinate `i` is bit `i` of `bits`.
    pub fn from_bits(d: usize, bits: u32) -> ProductVertex {
        assert!(d <= MAX_DIM);
        let mut c = [0u8; MAX_DIM];
        for (i, slot) in c.iter_mut().enumerate().take(d) {
            *slot = ((bits >> i) & 1) as u8;
        }
        ProductVertex { dim: d as u8, coords: c }
    }

    /// Inverse of [`ProductVertex::from_bits`]; meaningful for 0/1 coordinates.
    pub fn bits(&self) -> u32 {
        self.coords().iter().enumerate().fold(0, |acc, (i, &c)| acc | (u32::from(c & 1) << i))
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords[..self.dim as usize]
    }

    pub fn coord(&self, i: usize) -> usize {
        debug_assert!(i < self.dim());
        self.coords[i] as usize
    }

    pub fn with_coord(mut self, i: usize, value: usize) -> ProductVertex {
        self.coords[i] = value as u8;
        self
    }

    /// Drops coordinate `i`.
    pub fn without(&self, i: usize) -> ProductVertex {
        let mut v: Vec<usize> = self.coords().iter().map(|&c| c as usize).collect();
        v.remove(i);
        ProductVertex::new(&v).expect("fewer coordinates than before")
    }

    /// Sum of coordinates; on `{0,1}^d` the number of ones, written `|v|`.
    pub fn weight(&self) -> usize {
        self.coords().iter().map(|&c| c as usize).sum()
    }

    /// Coordinatewise `≤`.
    pub fn le(&self, other: &ProductVertex) -> bool {
        self.coords().iter().zip(other.coords()).all(|(a, b)| a <= b)
    }
}

impl fmt::Debug for ProductVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ProductVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A possibly degenerate simplex: a non-decreasing chain of vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    chain: Vec<ProductVertex>,
}

impl Simplex {
    pub(crate) fn from_chain(chain: Vec<ProductVertex>) -> Simplex {
        Simplex { chain }
    }

    pub fn vertices(&self) -> &[ProductVertex] {
        &self.chain
    }

    pub fn dim(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.chain.windows(2).all(|w| w[0] != w[1])
    }
}

/// A cube of the product: one edge index per factor (into the factor's edge order).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeIndex(pub Vec<usize>);

/// Two cubes that differ only in `coordinate`, where their edges share the vertex `shared`.
/// `first` carries the smaller edge in that coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjacency {
    pub coordinate: usize,
    pub first: CubeIndex,
    pub second: CubeIndex,
    pub shared: usize,
    /// Local coordinate (0 or 1) of `shared` inside `first`, resp. `second`.
    pub first_side: u8,
    pub second_side: u8,
}

/// The simplicial set on a product `G_1 × … × G_d` of ordered graphs.
#[derive(Clone, PartialEq, Eq)]
pub struct ProductComplex {
    factors: Vec<OrderedGraph>,
    cubes: Vec<CubeIndex>,
}

impl fmt::Debug for ProductComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.factors).finish()
    }
}

impl ProductComplex {
    pub fn product(factors: Vec<OrderedGraph>) -> Result<ProductComplex> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("a product needs at least one factor".into()));
        }
        if factors.len() > MAX_DIM {
            return Err(Error::InvalidArgument(format!("{} factors, at most {MAX_DIM} supported", factors.len())));
        }
        Ok(ProductComplex::from_factors(factors))
    }

    /// `{0,1}^d` as the product of `d` copies of `K_2`; `d = 0` gives a point.
    pub fn hypercube(d: usize) -> ProductComplex {
        assert!(d <= MAX_DIM);
        ProductComplex::from_factors(vec![OrderedGraph::complete(2); d])
    }

    /// No validation of the factors (they may be empty or disconnected).
    pub(crate) fn from_factors(factors: Vec<OrderedGraph>) -> ProductComplex {
        let mut cubes = vec![Vec::new()];
        for g in &factors {
            let mut next = Vec::new();
            for c in &cubes {
                for e in 0..g.edges().len() {
                    let mut c2: Vec<usize> = c.clone();
                    c2.push(e);
                    next.push(c2);
                }
            }
            cubes = next;
        }
        let cubes = cubes.into_iter().map(CubeIndex).collect();
        ProductComplex { factors, cubes }
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[OrderedGraph] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &OrderedGraph {
        &self.factors[i]
    }

    pub fn is_hypercube(&self) -> bool {
        self.factors.iter().all(|g| *g == OrderedGraph::complete(2))
    }

    pub fn vertex_count(&self) -> usize {
        self.factors.iter().map(|g| g.vertex_count()).product()
    }

    /// All vertices in lexicographic order.
    pub fn vertices(&self) -> Vec<ProductVertex> {
        let mut out = vec![Vec::new()];
        for g in &self.factors {
            let mut next = Vec::with_capacity(out.len() * g.vertex_count());
            for c in &out {
                for p in 0..g.vertex_count() {
                    let mut c2: Vec<usize> = c.clone();
                    c2.push(p);
                    next.push(c2);
                }
            }
            out = next;
        }
        out.iter().map(|c| ProductVertex::new(c).expect("dimension checked at construction")).collect()
    }

    pub fn contains(&self, v: &ProductVertex) -> bool {
        v.dim() == self.dim() && v.coords().iter().zip(&self.factors).all(|(&c, g)| (c as usize) < g.vertex_count())
    }

    /// Bitmask of `I(u,v)` when `{u ≤ v}` is a 1-simplex.
    pub fn one_simplex_mask(&self, u: &ProductVertex, v: &ProductVertex) -> Option<u32> {
        let mut mask = 0u32;
        for (i, g) in self.factors.iter().enumerate() {
            let (a, b) = (u.coord(i), v.coord(i));
            if a == b {
                continue;
            }
            if a > b || !g.is_adjacent(a, b) {
                return None;
            }
            mask |= 1 << i;
        }
        Some(mask)
    }

    /// `I(u,v)`, the coordinates in which `u` is strictly below `v`.
    pub fn interval_set(&self, u: &ProductVertex, v: &ProductVertex) -> Result<Vec<usize>> {
        if !self.contains(u) || !self.contains(v) {
            return Err(Error::InvalidVertex(format!("{u} or {v} not in the complex")));
        }
        let mask = self.one_simplex_mask(u, v).ok_or_else(|| Error::NotOneSimplex(u.to_string(), v.to_string()))?;
        Ok(mask_to_indices(mask))
    }

    /// Whether the multiset, sorted, is a chain of 1-simplices with disjoint index sets.
    pub fn is_simplex(&self, vertices: &[ProductVertex]) -> bool {
        if !vertices.iter().all(|v| self.contains(v)) {
            return false;
        }
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        self.is_sorted_chain(&sorted)
    }

    /// [`Self::is_simplex`] for input already in lexicographic order.
    pub(crate) fn is_sorted_chain(&self, sorted: &[ProductVertex]) -> bool {
        let mut used = 0u32;
        for w in sorted.windows(2) {
            match self.one_simplex_mask(&w[0], &w[1]) {
                Some(m) if m & used == 0 => used |= m,
                _ => return false,
            }
        }
        true
    }

    /// Vertices `w ≥ u` such that `{u,w}` is a 1-simplex with `I(u,w)` avoiding `used`.
    /// Returned in lexicographic order; `u` itself is included unless `strict`.
    pub(crate) fn extensions(&self, u: &ProductVertex, used: u32, strict: bool) -> Vec<ProductVertex> {
        let mut out = vec![(*u, 0u32)];
        for (i, g) in self.factors.iter().enumerate() {
            let a = u.coord(i);
            let ups: Vec<usize> = if used & (1 << i) != 0 {
                Vec::new()
            } else {
                g.neighbors(a).iter().copied().filter(|&b| b > a).collect()
            };
            if ups.is_empty() {
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * (ups.len() + 1));
            for &(w, m) in &out {
                next.push((w, m));
                for &b in &ups {
                    next.push((w.with_coord(i, b), m | (1 << i)));
                }
            }
            out = next;
        }
        let mut out: Vec<ProductVertex> = out.into_iter().filter(|(_, m)| !strict || *m != 0).map(|(w, _)| w).collect();
        out.sort_unstable();
        out
    }

    /// All `k`-simplices (chains of `k+1` vertices) in lexicographic order.
    pub fn enumerate_simplices(&self, k: usize, nondegenerate: bool) -> Vec<Simplex> {
        if nondegenerate && k > self.dim() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut chain = Vec::with_capacity(k + 1);
        for v in self.vertices() {
            chain.push(v);
            self.extend_chains(&mut chain, 0, k, nondegenerate, &mut out);
            chain.pop();
        }
        out
    }

    fn extend_chains(&self, chain: &mut Vec<ProductVertex>, used: u32, k: usize, strict: bool, out: &mut Vec<Simplex>) {
        if chain.len() == k + 1 {
            out.push(Simplex::from_chain(chain.clone()));
            return;
        }
        let last = *chain.last().expect("chain starts non-empty");
        for w in self.extensions(&last, used, strict) {
            let m = self.one_simplex_mask(&last, &w).expect("extension is a 1-simplex");
            chain.push(w);
            self.extend_chains(chain, used | m, k, strict, out);
            chain.pop();
        }
    }

    /// The cubes in lexicographic order of edge indices.
    pub fn cubes(&self) -> &[CubeIndex] {
        &self.cubes
    }

    pub fn cube_edge(&self, cube: &CubeIndex, i: usize) -> Edge {
        self.factors[i].edges()[cube.0[i]]
    }

    pub fn cube_contains(&self, cube: &CubeIndex, v: &ProductVertex) -> bool {
        (0..self.dim()).all(|i| self.cube_edge(cube, i).contains(v.coord(i)))
    }

    /// Coordinates of `v` in the cube, identified with `{0,1}^d` (lower endpoint is 0).
    pub fn to_local(&self, cube: &CubeIndex, v: &ProductVertex) -> Option<ProductVertex> {
        let mut c = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let e = self.cube_edge(cube, i);
            let x = v.coord(i);
            if x == e.lo {
                c.push(0);
            } else if x == e.hi {
                c.push(1);
            } else {
                return None;
            }
        }
        Some(ProductVertex::new(&c).expect("dimension within bounds"))
    }

    pub fn to_global(&self, cube: &CubeIndex, local: &ProductVertex) -> ProductVertex {
        let c: Vec<usize> = (0..self.dim())
            .map(|i| {
                let e = self.cube_edge(cube, i);
                if local.coord(i) == 0 {
                    e.lo
                } else {
                    e.hi
                }
            })
            .collect();
        ProductVertex::new(&c).expect("dimension within bounds")
    }

    /// Vertices of a cube, ordered as their local coordinates.
    pub fn cube_vertices(&self, cube: &CubeIndex) -> Vec<ProductVertex> {
        (0..1u32 << self.dim())
            .map(|b| {
                let mut local = ProductVertex::from_bits(self.dim(), 0);
                for i in 0..self.dim() {
                    local = local.with_coord(i, ((b >> (self.dim() - 1 - i)) & 1) as usize);
                }
                self.to_global(cube, &local)
            })
            .collect()
    }

    /// Every cube containing all the given vertices.
    pub fn cubes_containing(&self, vertices: &[ProductVertex]) -> Vec<CubeIndex> {
        let mut choices: Vec<Vec<usize>> = Vec::with_capacity(self.dim());
        for (i, g) in self.factors.iter().enumerate() {
            let mut vals: Vec<usize> = vertices.iter().map(|v| v.coord(i)).collect();
            vals.sort_unstable();
            vals.dedup();
            let opts: Vec<usize> = match vals.as_slice() {
                [a] => (0..g.edges().len()).filter(|&e| g.edges()[e].contains(*a)).collect(),
                [a, b] => g.edge_index(Edge::new(*a, *b)).into_iter().collect(),
                _ => Vec::new(),
            };
            if opts.is_empty() {
                return Vec::new();
            }
            choices.push(opts);
        }
        let mut out = vec![Vec::new()];
        for opts in choices {
            out = out
                .into_iter()
                .flat_map(|c: Vec<usize>| {
                    opts.iter().map(move |&e| {
                        let mut c2 = c.clone();
                        c2.push(e);
                        c2
                    })
                })
                .collect();
        }
        out.into_iter().map(CubeIndex).collect()
    }

    /// All pairs of cubes differing in exactly one coordinate by two incident edges.
    ///
    /// Ordered by coordinate, then by the pair of edges in that coordinate, then by the
    /// remaining edges; within a pair the smaller edge comes first.
    pub fn cube_adjacencies(&self) -> Vec<Adjacency> {
        let mut out = Vec::new();
        for (i, g) in self.factors.iter().enumerate() {
            let edges = g.edges();
            for a in 0..edges.len() {
                for b in a + 1..edges.len() {
                    let Some(s) = edges[a].shared_vertex(&edges[b]) else {
                        continue;
                    };
                    for cube in &self.cubes {
                        if cube.0[i] != a {
                            continue;
                        }
                        let mut second = cube.clone();
                        second.0[i] = b;
                        out.push(Adjacency {
                            coordinate: i,
                            first: cube.clone(),
                            second,
                            shared: s,
                            first_side: u8::from(edges[a].hi == s),
                            second_side: u8::from(edges[b].hi == s),
                        });
                    }
                }
            }
        }
        out
    }

    /// `(a,b,…)` using the factors' vertex labels.
    pub fn format_vertex(&self, v: &ProductVertex) -> String {
        let parts: Vec<String> = (0..self.dim()).map(|i| self.factors[i].label(v.coord(i)).to_string()).collect();
        format!("({})", parts.join(","))
    }

    pub fn vertex_from_labels(&self, labels: &[Label]) -> Result<ProductVertex> {
        if labels.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), actual: labels.len() });
        }
        let mut c = Vec::with_capacity(labels.len());
        for (i, &l) in labels.iter().enumerate() {
            c.push(
                self.factors[i]
                    .position(l)
                    .ok_or_else(|| Error::InvalidVertex(format!("{l} is not a vertex of factor {i}")))?,
            );
        }
        ProductVertex::new(&c)
    }

    /// Human-readable cube key, e.g. `0-1,1-2` using labels.
    pub fn format_cube(&self, cube: &CubeIndex) -> String {
        (0..self.dim())
            .map(|i| {
                let e = self.cube_edge(cube, i);
                format!("{}-{}", self.factors[i].label(e.lo), self.factors[i].label(e.hi))
            })
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_cube(&self, key: &str) -> Result<CubeIndex> {
        let bad = || Error::InvalidArgument(format!("malformed cube key {key:?}"));
        let parts: Vec<&str> = key.split(',').map(str::trim).collect();
        if parts.len() != self.dim() {
            return Err(bad());
        }
        let mut idx = Vec::with_capacity(parts.len());
        for (i, part) in parts.iter().enumerate() {
            let (a, b) = part.split_once('-').ok_or_else(bad)?;
            let a: Label = a.trim().parse().map_err(|_| bad())?;
            let b: Label = b.trim().parse().map_err(|_| bad())?;
            let g = &self.factors[i];
            let (pa, pb) = (g.position(a).ok_or_else(bad)?, g.position(b).ok_or_else(bad)?);
            idx.push(g.edge_index(Edge::new(pa, pb)).ok_or_else(bad)?);
        }
        Ok(CubeIndex(idx))
    }
}

pub(crate) fn mask_to_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(c: &[usize]) -> ProductVertex {
        ProductVertex::new(c).unwrap()
    }

    #[test]
    fn product_sizes() {
        let sq = ProductComplex::hypercube(3);
        assert_eq!((sq.vertex_count(), sq.cubes().len()), (8, 1));
        let g = ProductComplex::product(vec![OrderedGraph::complete(2), OrderedGraph::complete(3)]).unwrap();
        assert_eq!((g.vertex_count(), g.cubes().len()), (6, 3));
        let k3 = ProductComplex::product(vec![OrderedGraph::complete(3)]).unwrap();
        assert_eq!(k3.cubes().len(), 3);
        assert!(ProductComplex::product(vec![]).is_err());
    }

    #[test]
    fn simplex_predicate() {
        let k3 = ProductComplex::product(vec![OrderedGraph::complete(3)]).unwrap();
        assert!(!k3.is_simplex(&[pv(&[0]), pv(&[1]), pv(&[2])]));
        assert!(k3.is_simplex(&[pv(&[0]), pv(&[0]), pv(&[2])]));
        let sq = ProductComplex::hypercube(2);
        assert!(sq.is_simplex(&[pv(&[1, 1]), pv(&[0, 0]), pv(&[1, 0])]));
        assert!(!sq.is_simplex(&[pv(&[1, 0]), pv(&[0, 1])]));
    }

    #[test]
    fn interval_sets() {
        let sq = ProductComplex::hypercube(2);
        assert_eq!(sq.interval_set(&pv(&[0, 0]), &pv(&[1, 1])).unwrap(), vec![0, 1]);
        assert_eq!(sq.interval_set(&pv(&[1, 0]), &pv(&[1, 0])).unwrap(), Vec::<usize>::new());
        assert_eq!(sq.interval_set(&pv(&[0, 0]), &pv(&[1, 0])).unwrap(), vec![0]);
        assert!(sq.interval_set(&pv(&[1, 0]), &pv(&[0, 1])).is_err());
    }

    #[test]
    fn nondegenerate_counts() {
        for d in 1..=4 {
            let c = ProductComplex::hypercube(d);
            let top = c.enumerate_simplices(d, true);
            assert_eq!(top.len(), (1..=d).product::<usize>());
            assert!(c.enumerate_simplices(d + 1, true).is_empty());
        }
        let k2 = ProductComplex::hypercube(1);
        assert!(k2.enumerate_simplices(5, true).is_empty());
        assert_eq!(k2.enumerate_simplices(5, false).len(), 7);
        let g = ProductComplex::product(vec![OrderedGraph::complete(3), OrderedGraph::path(3)]).unwrap();
        assert_eq!(g.enumerate_simplices(2, true).len(), 2 * g.cubes().len());
    }

    #[test]
    fn enumeration_is_sorted_and_valid() {
        let g = ProductComplex::product(vec![OrderedGraph::complete(3), OrderedGraph::complete(2)]).unwrap();
        for k in 0..4 {
            for nd in [false, true] {
                let s = g.enumerate_simplices(k, nd);
                assert!(s.windows(2).all(|w| w[0] < w[1]));
                assert!(s.iter().all(|x| g.is_simplex(x.vertices())));
                assert!(s.iter().all(|x| !nd || x.is_nondegenerate()));
            }
        }
    }

    #[test]
    fn adjacencies() {
        let path = ProductComplex::product(vec![OrderedGraph::path(3)]).unwrap();
        let adj = path.cube_adjacencies();
        assert_eq!(adj.len(), 1);
        assert_eq!((adj[0].shared, adj[0].first_side, adj[0].second_side), (1, 1, 0));
        assert!(ProductComplex::hypercube(2).cube_adjacencies().is_empty());
        let k3 = ProductComplex::product(vec![OrderedGraph::complete(3)]).unwrap();
        assert_eq!(k3.cube_adjacencies().len(), 3);
    }

    #[test]
    fn local_global_round_trip() {
        let g = ProductComplex::product(vec![OrderedGraph::complete(3), OrderedGraph::path(3)]).unwrap();
        for cube in g.cubes() {
            for v in g.cube_vertices(cube) {
                let l = g.to_local(cube, &v).unwrap();
                assert_eq!(g.to_global(cube, &l), v);
                assert!(g.cubes_containing(&[v]).contains(cube));
            }
        }
    }

    #[test]
    fn cube_keys_round_trip() {
        let g = ProductComplex::product(vec![OrderedGraph::complete(3), OrderedGraph::path(3)]).unwrap();
        for cube in g.cubes() {
            assert_eq!(&g.parse_cube(&g.format_cube(cube)).unwrap(), cube);
        }
        assert!(g.parse_cube("0-2").is_err());
    }
}
