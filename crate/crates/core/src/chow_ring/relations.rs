use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph_complex::{mask_to_indices, ProductComplex, ProductVertex};
use crate::poly::{Monomial, Polynomial};

/// The three families of generators of `𝒥_rat`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationType {
    R1,
    R2,
    R3,
}

/// An element of `𝒥_rat` described by how it was built.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    /// A monomial whose support is not a simplex.
    R1(Monomial),
    /// `C_u · Σ_v C_v`.
    R2 { u: ProductVertex },
    /// `C_u C_w · Σ_{v_i = u_i} C_v` with `u_i ≠ w_i`.
    R3 { u: ProductVertex, w: ProductVertex, i: usize },
    /// `C_τ R^ε_{τ,i}`: `C_τ` times the sum of `C_v` with `v_i` equal to the lower (`ε = 0`)
    /// or upper (`ε = 1`) end of the edge of `τ` in coordinate `i`.
    REps { tau: Vec<ProductVertex>, i: usize, upper: bool },
    /// `C_σ R̃_{σ,i,j}` for `i, j` in the same step `I(u_t, u_{t+1})` of `σ`.
    RTilde { sigma: Vec<ProductVertex>, i: usize, j: usize },
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chain = |vs: &[ProductVertex]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("<");
        match self {
            RelationKind::R1(m) => write!(f, "R1[{m:?}]"),
            RelationKind::R2 { u } => write!(f, "R2[{u}]"),
            RelationKind::R3 { u, w, i } => write!(f, "R3[{u},{w},{i}]"),
            RelationKind::REps { tau, i, upper } => {
                write!(f, "Reps[{},{i},{}]", chain(tau), u8::from(*upper))
            }
            RelationKind::RTilde { sigma, i, j } => write!(f, "Rtilde[{},{i},{j}]", chain(sigma)),
        }
    }
}

/// A relation together with its expansion in `Z(𝒢)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationElement {
    pub kind: RelationKind,
    pub payload: Polynomial,
}

fn sorted_chain(complex: &ProductComplex, vs: &[ProductVertex]) -> Result<Vec<ProductVertex>> {
    let mut chain = vs.to_vec();
    chain.sort_unstable();
    if chain.is_empty() || !complex.is_simplex(&chain) {
        return Err(Error::InvalidArgument(format!("{vs:?} is not a simplex")));
    }
    Ok(chain)
}

fn check_vertex(complex: &ProductComplex, v: &ProductVertex) -> Result<()> {
    if complex.contains(v) {
        Ok(())
    } else {
        Err(Error::InvalidVertex(v.to_string()))
    }
}

fn fiber(complex: &ProductComplex, i: usize, value: usize) -> Polynomial {
    Polynomial::sum_of_vars(complex.vertices().iter().filter(|v| v.coord(i) == value))
}

impl RelationKind {
    /// The element of `Z(𝒢)` this relation stands for.
    pub fn expand(&self, complex: &ProductComplex) -> Result<Polynomial> {
        match self {
            RelationKind::R1(m) => {
                for v in m.support() {
                    check_vertex(complex, v)?;
                }
                if complex.is_sorted_chain(&m.support_vec()) {
                    return Err(Error::InvalidArgument(format!("{m:?} is supported on a simplex")));
                }
                Ok(Polynomial::monomial(m.clone()))
            }
            RelationKind::R2 { u } => {
                check_vertex(complex, u)?;
                Ok(Polynomial::sum_of_vars(&complex.vertices()).mul_monomial(&Monomial::var(*u)))
            }
            RelationKind::R3 { u, w, i } => {
                check_vertex(complex, u)?;
                check_vertex(complex, w)?;
                if *i >= complex.dim() || u.coord(*i) == w.coord(*i) {
                    return Err(Error::InvalidArgument(format!("R3 needs {u} and {w} to differ at {i}")));
                }
                Ok(fiber(complex, *i, u.coord(*i)).mul_monomial(&Monomial::from_vertices(&[*u, *w])))
            }
            RelationKind::REps { tau, i, upper } => {
                let chain = sorted_chain(complex, tau)?;
                let (first, last) = (chain[0], chain[chain.len() - 1]);
                if *i >= complex.dim() || first.coord(*i) == last.coord(*i) {
                    return Err(Error::InvalidArgument(format!("{i} is not in I(τ)")));
                }
                let end = if *upper { last } else { first };
                Ok(fiber(complex, *i, end.coord(*i)).mul_monomial(&Monomial::from_vertices(&chain)))
            }
            RelationKind::RTilde { sigma, i, j } => {
                let chain = sorted_chain(complex, sigma)?;
                let t = step_containing(complex, &chain, *i, *j)?;
                Ok(rtilde_row(&chain, t, *i, *j))
            }
        }
    }

    pub fn element(self, complex: &ProductComplex) -> Result<RelationElement> {
        let payload = self.expand(complex)?;
        Ok(RelationElement { kind: self, payload })
    }
}

/// The step `t` with `i, j ∈ I(u_t, u_{t+1})`.
fn step_containing(complex: &ProductComplex, chain: &[ProductVertex], i: usize, j: usize) -> Result<usize> {
    for (t, w) in chain.windows(2).enumerate() {
        let mask = complex.one_simplex_mask(&w[0], &w[1]).expect("chain of 1-simplices");
        if mask & (1 << i) != 0 {
            return if j < complex.dim() && mask & (1 << j) != 0 {
                Ok(t)
            } else {
                Err(Error::InvalidArgument(format!("{i} and {j} lie in different steps")))
            };
        }
    }
    Err(Error::InvalidArgument(format!("{i} is not in I(σ)")))
}

/// `C_σ R̃_{σ,i,j}` written over non-degenerate simplices: the vertices `w` of the cube
/// `e_{u_t,u_{t+1}}` strictly between `u_t` and `u_{t+1}` are inserted into `σ`.
pub(crate) fn rtilde_row(chain: &[ProductVertex], t: usize, i: usize, j: usize) -> Polynomial {
    let (lo, hi) = (chain[t], chain[t + 1]);
    let free: Vec<usize> = (0..lo.dim()).filter(|&l| lo.coord(l) != hi.coord(l)).collect();
    let base = Monomial::from_vertices(chain);
    let mut out = Polynomial::zero();
    for bits in 1..(1u32 << free.len()) - 1 {
        let mut w = lo;
        for (b, &l) in free.iter().enumerate() {
            if bits & (1 << b) != 0 {
                w = w.with_coord(l, hi.coord(l));
            }
        }
        let m = base.mul_var(w);
        if w.coord(i) == lo.coord(i) {
            out.add_term(m.clone(), BigInt::one());
        }
        if w.coord(j) == lo.coord(j) {
            out.add_term(m, -BigInt::one());
        }
    }
    out
}

/// All multisets of vertices of size `1..=bound` whose support is not a simplex.
fn non_simplex_monomials(complex: &ProductComplex, bound: usize) -> Vec<Monomial> {
    let vertices = complex.vertices();
    let mut out = Vec::new();
    let mut current: Vec<(ProductVertex, u32)> = Vec::new();
    fn walk(
        complex: &ProductComplex,
        vertices: &[ProductVertex],
        start: usize,
        remaining: usize,
        current: &mut Vec<(ProductVertex, u32)>,
        out: &mut Vec<Monomial>,
    ) {
        for idx in start..vertices.len() {
            for e in 1..=remaining as u32 {
                current.push((vertices[idx], e));
                let support: Vec<ProductVertex> = current.iter().map(|&(v, _)| v).collect();
                if !complex.is_sorted_chain(&support) {
                    out.push(Monomial::from_powers(current.iter().copied()));
                }
                walk(complex, vertices, idx + 1, remaining - e as usize, current, out);
                current.pop();
            }
        }
    }
    walk(complex, &vertices, 0, bound, &mut current, &mut out);
    out.sort();
    out
}

/// Exhaustive generator lists: `R1` up to degree `degree_bound`, and `R2`/`R3` when
/// their degree (2 or 3) is within the bound.
pub fn relation_generators(complex: &ProductComplex, kind: RelationType, degree_bound: usize) -> Vec<RelationElement> {
    let vertices = complex.vertices();
    let kinds: Vec<RelationKind> = match kind {
        RelationType::R1 => non_simplex_monomials(complex, degree_bound).into_iter().map(RelationKind::R1).collect(),
        RelationType::R2 if degree_bound >= 2 => vertices.iter().map(|&u| RelationKind::R2 { u }).collect(),
        RelationType::R3 if degree_bound >= 3 => {
            let mut out = Vec::new();
            for &u in &vertices {
                for &w in &vertices {
                    for i in 0..complex.dim() {
                        if u.coord(i) != w.coord(i) {
                            out.push(RelationKind::R3 { u, w, i });
                        }
                    }
                }
            }
            out
        }
        _ => Vec::new(),
    };
    kinds.into_iter().map(|k| k.element(complex).expect("generated relations are well formed")).collect()
}

/// Every `C_σ R̃_{σ,i,j}` with `σ ∈ 𝒢_k^nd` and `i < j` in a common step.
pub fn rtilde_generators(complex: &ProductComplex, k: usize) -> Vec<RelationElement> {
    let mut out = Vec::new();
    for sigma in complex.enumerate_simplices(k, true) {
        let chain = sigma.vertices();
        for (t, w) in chain.windows(2).enumerate() {
            let idx = mask_to_indices(complex.one_simplex_mask(&w[0], &w[1]).expect("simplex step"));
            for (a, &i) in idx.iter().enumerate() {
                for &j in &idx[a + 1..] {
                    out.push(RelationElement {
                        kind: RelationKind::RTilde { sigma: chain.to_vec(), i, j },
                        payload: rtilde_row(chain, t, i, j),
                    });
                }
            }
        }
    }
    out
}

/// Drops every monomial whose support is not a simplex, i.e. reduces modulo `𝒥₁`.
pub fn reduce_mod_i1(complex: &ProductComplex, p: &Polynomial) -> Polynomial {
    p.filter(|m| m.support().all(|v| complex.contains(v)) && complex.is_sorted_chain(&m.support_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_complex::OrderedGraph;

    fn pv(c: &[usize]) -> ProductVertex {
        ProductVertex::new(c).unwrap()
    }

    #[test]
    fn edge_r2_generators() {
        let e = ProductComplex::hypercube(1);
        let (u, v) = (pv(&[0]), pv(&[1]));
        let gens = relation_generators(&e, RelationType::R2, 2);
        let sum: Polynomial = &Polynomial::var(u) + &Polynomial::var(v);
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].payload, &Polynomial::var(u) * &sum);
        assert_eq!(gens[1].payload, &Polynomial::var(v) * &sum);
        assert!(relation_generators(&e, RelationType::R2, 1).is_empty());
    }

    #[test]
    fn edge_r3_generators() {
        let e = ProductComplex::hypercube(1);
        let (u, v) = (pv(&[0]), pv(&[1]));
        let payloads: Vec<Polynomial> =
            relation_generators(&e, RelationType::R3, 3).into_iter().map(|g| g.payload).collect();
        let expected = vec![
            Polynomial::monomial(Monomial::from_powers([(u, 2), (v, 1)])),
            Polynomial::monomial(Monomial::from_powers([(u, 1), (v, 2)])),
        ];
        assert_eq!(payloads, expected);
    }

    #[test]
    fn triangle_r1_generators() {
        let k3 = ProductComplex::product(vec![OrderedGraph::complete(3)]).unwrap();
        assert!(relation_generators(&k3, RelationType::R1, 2).is_empty());
        let gens = relation_generators(&k3, RelationType::R1, 3);
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].kind, RelationKind::R1(Monomial::from_vertices(&[pv(&[0]), pv(&[1]), pv(&[2])])));
    }

    #[test]
    fn reduction_drops_non_faces() {
        let k3 = ProductComplex::product(vec![OrderedGraph::complete(3)]).unwrap();
        let tri = Polynomial::monomial(Monomial::from_vertices(&[pv(&[0]), pv(&[1]), pv(&[2])]));
        assert!(reduce_mod_i1(&k3, &tri).is_zero());
        let edge = Polynomial::monomial(Monomial::from_vertices(&[pv(&[0]), pv(&[2])]));
        assert_eq!(reduce_mod_i1(&k3, &edge), edge);
    }

    #[test]
    fn rtilde_matches_expansion_rule() {
        let sq = ProductComplex::hypercube(2);
        let sigma = vec![pv(&[0, 0]), pv(&[1, 1])];
        let p = RelationKind::RTilde { sigma: sigma.clone(), i: 0, j: 1 }.expand(&sq).unwrap();
        let mut expected = Polynomial::zero();
        expected.add_term(Monomial::from_vertices(&[pv(&[0, 0]), pv(&[0, 1]), pv(&[1, 1])]), BigInt::one());
        expected.add_term(Monomial::from_vertices(&[pv(&[0, 0]), pv(&[1, 0]), pv(&[1, 1])]), -BigInt::one());
        assert_eq!(p, expected);
        assert!(RelationKind::RTilde { sigma, i: 0, j: 0 }.expand(&sq).unwrap().is_zero());
    }
}
