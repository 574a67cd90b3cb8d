//! Restriction to cubes and facets, gluing, and maps between Chow rings of products.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::chow_ring::{nd_part, ChowClass, ChowRing};
use crate::error::{Error, Result};
use crate::graph_complex::{Adjacency, CubeIndex, Edge, OrderedGraph, ProductComplex, ProductVertex, MAX_DIM};
use crate::poly::{Monomial, Polynomial};

/// Shared Chow ring of `□^d`.
pub fn hypercube_ring(d: usize) -> Arc<ChowRing> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<ChowRing>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    cache
        .lock()
        .expect("ring cache poisoned")
        .entry(d)
        .or_insert_with(|| Arc::new(ChowRing::new(ProductComplex::hypercube(d))))
        .clone()
}

/// `ι_e^*`: keeps monomials on the vertices of the cube, in local coordinates of `□^d`.
pub fn restrict(complex: &ProductComplex, p: &Polynomial, cube: &CubeIndex) -> Polynomial {
    p.map_monomials(|m| {
        let powers: Option<Vec<(ProductVertex, u32)>> =
            m.powers().iter().map(|&(v, e)| complex.to_local(cube, &v).map(|l| (l, e))).collect();
        powers.map(Monomial::from_powers)
    })
}

/// Restriction of a polynomial on `□^d` to the facet `{x_i = side}`, identified with `□^{d-1}`.
pub fn facet_restrict(p: &Polynomial, i: usize, side: u8) -> Result<Polynomial> {
    if let Some((m, _)) = p.terms().next() {
        let d = m.support().next().map_or(0, ProductVertex::dim);
        if i >= d {
            return Err(Error::InvalidArgument(format!("coordinate {i} out of range for dimension {d}")));
        }
    }
    Ok(p.map_monomials(|m| {
        if m.support().all(|v| v.coord(i) == usize::from(side)) {
            Some(m.map_vertices(|v| v.without(i)))
        } else {
            None
        }
    }))
}

/// One polynomial on `□^d` per cube, all of the same graded degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeTuple {
    degree: usize,
    parts: BTreeMap<CubeIndex, Polynomial>,
}

impl CubeTuple {
    /// Validates that the keys are exactly the cubes of `complex` and the degrees agree.
    pub fn new(complex: &ProductComplex, degree: usize, parts: BTreeMap<CubeIndex, Polynomial>) -> Result<CubeTuple> {
        if parts.len() != complex.cubes().len() || complex.cubes().iter().any(|c| !parts.contains_key(c)) {
            return Err(Error::InvalidArgument("a tuple needs exactly one entry per cube".into()));
        }
        let d = complex.dim();
        for p in parts.values() {
            p.expect_degree(degree)?;
            for (m, _) in p.terms() {
                if let Some(v) = m.support().find(|v| v.dim() != d || v.coords().iter().any(|&c| c > 1)) {
                    return Err(Error::InvalidVertex(format!("{v} is not a vertex of the cube")));
                }
            }
        }
        Ok(CubeTuple { degree, parts })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, cube: &CubeIndex) -> Option<&Polynomial> {
        self.parts.get(cube)
    }

    pub fn parts(&self) -> &BTreeMap<CubeIndex, Polynomial> {
        &self.parts
    }
}

/// `(ι_e^* p)_e` for a homogeneous `p`.
pub fn restrict_tuple(complex: &ProductComplex, p: &Polynomial) -> Result<CubeTuple> {
    let degree = p.homogeneous_degree()?.unwrap_or(0);
    let parts = complex.cubes().par_iter().map(|c| (c.clone(), restrict(complex, p, c))).collect();
    Ok(CubeTuple { degree, parts })
}

/// The two facet restrictions meeting at an adjacency, on `□^{d-1}`.
fn adjacency_sides(t: &CubeTuple, a: &Adjacency) -> Result<(Polynomial, Polynomial)> {
    let first = facet_restrict(&t.parts[&a.first], a.coordinate, a.first_side)?;
    let second = facet_restrict(&t.parts[&a.second], a.coordinate, a.second_side)?;
    Ok((first, second))
}

/// For each adjacency, the class of `ι_{x,1}^*(α_first) − ι_{x,2}^*(α_second)` on the shared facet.
pub fn j_map(complex: &ProductComplex, t: &CubeTuple) -> Result<Vec<(Adjacency, ChowClass)>> {
    let ring = hypercube_ring(complex.dim() - 1);
    complex
        .cube_adjacencies()
        .into_par_iter()
        .map(|a| {
            let (first, second) = adjacency_sides(t, &a)?;
            let class = ring.class_in_degree(&(&first - &second), t.degree)?;
            Ok((a, class))
        })
        .collect()
}

fn describe(complex: &ProductComplex, a: &Adjacency) -> String {
    format!(
        "[{}] | [{}] along coordinate {}",
        complex.format_cube(&a.first),
        complex.format_cube(&a.second),
        a.coordinate + 1
    )
}

/// The intersection of two cubes, as a product of edges and single vertices.
#[derive(Clone, Debug)]
enum Side {
    Edge(Edge),
    Point(usize),
}

fn intersection(complex: &ProductComplex, a: &CubeIndex, b: &CubeIndex) -> Option<Vec<Side>> {
    (0..complex.dim())
        .map(|i| {
            let (ea, eb) = (complex.cube_edge(a, i), complex.cube_edge(b, i));
            if ea == eb {
                Some(Side::Edge(ea))
            } else {
                ea.shared_vertex(&eb).map(Side::Point)
            }
        })
        .collect()
}

/// Coordinates of a vertex of the face in `□^r`, `r` the number of edge sides.
fn face_local(face: &[Side], v: &ProductVertex) -> Option<ProductVertex> {
    let mut c = Vec::with_capacity(MAX_DIM);
    for (i, side) in face.iter().enumerate() {
        let x = v.coord(i);
        match side {
            Side::Point(p) if *p == x => {}
            Side::Edge(e) if e.lo == x => c.push(0),
            Side::Edge(e) if e.hi == x => c.push(1),
            _ => return None,
        }
    }
    Some(ProductVertex::new(&c).expect("at most d coordinates"))
}

fn on_face(face: &[Side], p: &Polynomial) -> Polynomial {
    p.filter(|m| m.support().all(|v| face_local(face, v).is_some()))
}

fn face_polynomial(face: &[Side], p: &Polynomial) -> Polynomial {
    p.map_monomials(|m| {
        let powers: Option<Vec<_>> = m.powers().iter().map(|&(v, e)| face_local(face, &v).map(|l| (l, e))).collect();
        powers.map(Monomial::from_powers)
    })
}

/// Glues a tuple in the kernel of [`j_map`] into a polynomial on `𝒢` whose restriction to
/// every cube is rationally equivalent to the given entry.
///
/// Cubes are processed in their fixed order; each new entry is corrected on its
/// intersections with the earlier ones. Runs single-threaded by construction.
pub fn glue(complex: &ProductComplex, t: &CubeTuple) -> Result<Polynomial> {
    for (a, class) in j_map(complex, t)? {
        if !class.is_zero() {
            return Err(Error::NotInKernel(describe(complex, &a)));
        }
    }
    let d = complex.dim();
    let cube_ring = hypercube_ring(d);
    let cubes = complex.cubes();
    let mut glued: Vec<Polynomial> = Vec::with_capacity(cubes.len());
    for (l, cube) in cubes.iter().enumerate() {
        let local = nd_part(cube_ring.complex(), &t.parts[cube])?;
        let mut lambda = local.map_monomials(|m| Some(m.map_vertices(|v| complex.to_global(cube, v))));
        for (s, earlier) in cubes[..l].iter().enumerate() {
            let Some(face) = intersection(complex, cube, earlier) else {
                continue;
            };
            let delta = on_face(&face, &(&lambda - &glued[s]));
            if delta.is_zero() {
                continue;
            }
            let r = face.iter().filter(|s| matches!(s, Side::Edge(_))).count();
            if !hypercube_ring(r).class_in_degree(&face_polynomial(&face, &delta), t.degree)?.is_zero() {
                return Err(Error::NotInKernel(format!(
                    "[{}] and [{}] disagree on their intersection",
                    complex.format_cube(cube),
                    complex.format_cube(earlier)
                )));
            }
            lambda -= &delta;
        }
        glued.push(lambda);
    }
    let mut out: BTreeMap<Monomial, num_bigint::BigInt> = BTreeMap::new();
    for gamma in &glued {
        for (m, c) in gamma.terms() {
            if let Some(prev) = out.insert(m.clone(), c.clone()) {
                if &prev != c {
                    return Err(Error::NotInKernel(format!("inconsistent coefficient on {m:?}")));
                }
            }
        }
    }
    let mut gamma = Polynomial::zero();
    for (m, c) in out {
        gamma.add_term(m, c);
    }
    Ok(gamma)
}

/// An order-preserving graph homomorphism `ℋ → 𝒢`, factor by factor.
#[derive(Clone, Debug)]
pub struct GraphHom {
    source: ProductComplex,
    target: ProductComplex,
    maps: Vec<Vec<usize>>,
}

impl GraphHom {
    /// `maps[i][u]` is the image position of the vertex at position `u` of `H_i`.
    pub fn new(source: ProductComplex, target: ProductComplex, maps: Vec<Vec<usize>>) -> Result<GraphHom> {
        if source.dim() != target.dim() || maps.len() != source.dim() {
            return Err(Error::DimensionMismatch { expected: target.dim(), actual: maps.len() });
        }
        for (i, f) in maps.iter().enumerate() {
            let (h, g) = (source.factor(i), target.factor(i));
            if f.len() != h.vertex_count() {
                return Err(Error::InvalidHom(format!("factor {}: map has {} entries", i + 1, f.len())));
            }
            if let Some(&x) = f.iter().find(|&&x| x >= g.vertex_count()) {
                return Err(Error::InvalidHom(format!("factor {}: image {x} out of range", i + 1)));
            }
            if f.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidHom(format!("factor {}: map does not preserve the order", i + 1)));
            }
            for e in h.edges() {
                let (a, b) = (f[e.lo], f[e.hi]);
                if a != b && !g.is_adjacent(a, b) {
                    return Err(Error::InvalidHom(format!(
                        "factor {}: edge {}-{} is not sent to an edge or a vertex",
                        i + 1,
                        h.label(e.lo),
                        h.label(e.hi)
                    )));
                }
            }
        }
        Ok(GraphHom { source, target, maps })
    }

    pub fn identity(complex: ProductComplex) -> GraphHom {
        let maps = complex.factors().iter().map(|g| (0..g.vertex_count()).collect()).collect();
        GraphHom { source: complex.clone(), target: complex, maps }
    }

    pub fn source(&self) -> &ProductComplex {
        &self.source
    }

    pub fn target(&self) -> &ProductComplex {
        &self.target
    }

    pub fn apply(&self, u: &ProductVertex) -> ProductVertex {
        let c: Vec<usize> = (0..u.dim()).map(|i| self.maps[i][u.coord(i)]).collect();
        ProductVertex::new(&c).expect("same dimension")
    }

    /// `g ∘ self` for `g: 𝒢 → 𝒦`.
    pub fn then(&self, g: &GraphHom) -> Result<GraphHom> {
        if g.source != self.target {
            return Err(Error::InvalidHom("homomorphisms are not composable".into()));
        }
        let maps = self.maps.iter().zip(&g.maps).map(|(f, h)| f.iter().map(|&x| h[x]).collect()).collect();
        Ok(GraphHom { source: self.source.clone(), target: g.target.clone(), maps })
    }

    /// `f^*(C_v) = Σ_{f(u) = v} C_u`, extended as a ring map.
    pub fn pullback(&self, p: &Polynomial) -> Result<Polynomial> {
        let mut fibers: HashMap<ProductVertex, Vec<ProductVertex>> = HashMap::new();
        for u in self.source.vertices() {
            fibers.entry(self.apply(&u)).or_default().push(u);
        }
        for (m, _) in p.terms() {
            if let Some(v) = m.support().find(|v| !self.target.contains(v)) {
                return Err(Error::InvalidVertex(v.to_string()));
            }
        }
        Ok(p.substitute(|v| Polynomial::sum_of_vars(fibers.get(v).map(Vec::as_slice).unwrap_or(&[]))))
    }
}

/// The subdivision collapse `G^(n) → G` on every factor, sending each interior vertex of a
/// subdivided edge to the lower endpoint of that edge.
pub fn subdivision_collapse(complex: &ProductComplex, n: usize) -> Result<GraphHom> {
    let mut factors = Vec::with_capacity(complex.dim());
    let mut maps = Vec::with_capacity(complex.dim());
    for g in complex.factors() {
        let sub = g.subdivide(n)?;
        let map = sub
            .labels()
            .iter()
            .enumerate()
            .map(|(pos, label)| match g.position(*label) {
                Some(p) => p,
                None => {
                    // interior vertices sit after their edge's lower endpoint
                    let owner = (0..pos).rev().find_map(|q| g.position(sub.label(q)));
                    owner.expect("an original vertex precedes each interior vertex")
                }
            })
            .collect();
        factors.push(sub);
        maps.push(map);
    }
    GraphHom::new(ProductComplex::product(factors)?, complex.clone(), maps)
}

fn check_permutation(sigma: &[usize], d: usize) -> Result<()> {
    let mut seen = vec![false; d];
    if sigma.len() != d || sigma.iter().any(|&s| s >= d || std::mem::replace(&mut seen[s], true)) {
        return Err(Error::InvalidArgument(format!("{sigma:?} is not a permutation of {d} factors")));
    }
    Ok(())
}

/// `𝒢_σ = G_{σ(1)} × ⋯ × G_{σ(d)}`.
pub fn permute_complex(complex: &ProductComplex, sigma: &[usize]) -> Result<ProductComplex> {
    check_permutation(sigma, complex.dim())?;
    ProductComplex::product(sigma.iter().map(|&s| complex.factor(s).clone()).collect())
}

/// `η_σ(C_v) = C_{v_σ}` with `(v_σ)_j = v_{σ(j)}`.
///
/// With composition `(σ∘τ)(j) = σ(τ(j))` this satisfies `η_{σ∘τ} = η_τ ∘ η_σ`.
pub fn permute(sigma: &[usize], p: &Polynomial) -> Result<Polynomial> {
    let Some((m, _)) = p.terms().next() else {
        return Ok(Polynomial::zero());
    };
    let d = m.support().next().map_or(sigma.len(), ProductVertex::dim);
    check_permutation(sigma, d)?;
    Ok(p.map_monomials(|m| {
        Some(m.map_vertices(|v| {
            let c: Vec<usize> = sigma.iter().map(|&s| v.coord(s)).collect();
            ProductVertex::new(&c).expect("same dimension")
        }))
    }))
}

/// `𝒢_{v,k}`: `G_i[≤ v_i]` in every factor except `G_k[< v_k]`.
pub fn vertex_subcomplex(complex: &ProductComplex, v: &ProductVertex, k: usize) -> Result<ProductComplex> {
    if !complex.contains(v) {
        return Err(Error::InvalidVertex(v.to_string()));
    }
    if k >= complex.dim() {
        return Err(Error::InvalidArgument(format!("coordinate {k} out of range")));
    }
    let factors: Vec<OrderedGraph> = complex
        .factors()
        .iter()
        .enumerate()
        .map(|(i, g)| g.prefix(if i == k { v.coord(i) } else { v.coord(i) + 1 }))
        .collect();
    Ok(ProductComplex::from_factors(factors))
}

/// `β(p) = p · C_v` for `p` on `𝒢_{v,k}`.
pub fn multiply_by_vertex(complex: &ProductComplex, v: &ProductVertex, k: usize, p: &Polynomial) -> Result<Polynomial> {
    let sub = vertex_subcomplex(complex, v, k)?;
    for (m, _) in p.terms() {
        if let Some(w) = m.support().find(|w| !sub.contains(w)) {
            return Err(Error::OutsideSubcomplex(w.to_string()));
        }
    }
    Ok(p.mul_monomial(&Monomial::var(*v)))
}
