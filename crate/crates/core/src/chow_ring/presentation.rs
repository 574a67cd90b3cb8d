use std::collections::{HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use super::relations::rtilde_row;
use super::rewrite::nd_part;
use crate::error::{Error, Result};
use crate::graph_complex::{mask_to_indices, ProductComplex};
use crate::oracle::{Lattice, SparseVec, DEFAULT_MAX_CELLS};
use crate::poly::{Monomial, Polynomial};

/// `ℤ⟨𝒢_k^nd⟩ / 𝒥_k^nd`, the graded piece of degree `k+1`.
///
/// The relations are `C_τ R̃_{τ,i,j}` for `τ ∈ 𝒢_{k-1}^nd`, which are the ones whose
/// expansion lies in degree `k+1`.
#[derive(Debug)]
pub struct NdPresentation {
    k: usize,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    relation_count: usize,
    lattice: Lattice,
}

impl NdPresentation {
    /// Simplicial index `k`; the graded degree is `k + 1`.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.k + 1
    }

    /// `C_σ` for `σ ∈ 𝒢_k^nd`, in lexicographic order of chains.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn relation_count(&self) -> usize {
        self.relation_count
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.quotient_rank()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.lattice.torsion()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a polynomial supported on the basis.
    pub fn vector(&self, p: &Polynomial) -> Result<Vec<BigInt>> {
        let mut x = vec![BigInt::zero(); self.basis.len()];
        for (m, c) in p.terms() {
            let i = self
                .index_of(m)
                .ok_or_else(|| Error::InvalidArgument(format!("{m:?} is not a non-degenerate {}-simplex", self.k)))?;
            x[i] += c;
        }
        Ok(x)
    }

    pub fn polynomial(&self, coords: &[BigInt]) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in self.basis.iter().zip(coords) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn canonical(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.lattice.canonical(coords)
    }
}

/// Builds the presentation of `Chow^{k+1}`; an error if `𝒢_k^nd` exceeds `max_cells`.
pub fn nd_presentation_with_limit(complex: &ProductComplex, k: usize, max_cells: usize) -> Result<NdPresentation> {
    let basis: Vec<Monomial> =
        complex.enumerate_simplices(k, true).iter().map(|s| Monomial::from_vertices(s.vertices())).collect();
    if basis.len() > max_cells {
        return Err(Error::SizeLimit { size: basis.len(), limit: max_cells });
    }
    let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let mut rows: Vec<SparseVec> = Vec::new();
    let mut seen = HashSet::new();
    if k >= 1 {
        for tau in complex.enumerate_simplices(k - 1, true) {
            let chain = tau.vertices();
            for (t, w) in chain.windows(2).enumerate() {
                let idx = mask_to_indices(complex.one_simplex_mask(&w[0], &w[1]).expect("simplex step"));
                for (a, &i) in idx.iter().enumerate() {
                    for &j in &idx[a + 1..] {
                        let mut row: SparseVec =
                            rtilde_row(chain, t, i, j).into_terms().map(|(m, c)| (index[&m], c)).collect();
                        row.sort_by_key(|(c, _)| *c);
                        if !row.is_empty() && seen.insert(row.clone()) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    let relation_count = rows.len();
    let lattice = Lattice::new(basis.len(), rows);
    Ok(NdPresentation { k, basis, index, relation_count, lattice })
}

pub fn nd_presentation(complex: &ProductComplex, k: usize) -> Result<NdPresentation> {
    nd_presentation_with_limit(complex, k, DEFAULT_MAX_CELLS)
}

/// A class in `Chow^n_GS`, stored as the canonical coordinate vector over the basis of
/// the presentation of that degree. Degree 0 has the single coordinate of `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChowClass {
    degree: usize,
    coords: Vec<BigInt>,
}

impl ChowClass {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// The Chow ring of one complex with lazily built graded presentations.
pub struct ChowRing {
    complex: ProductComplex,
    max_cells: usize,
    pieces: Vec<OnceLock<Arc<NdPresentation>>>,
}

impl ChowRing {
    pub fn new(complex: ProductComplex) -> ChowRing {
        ChowRing::with_limit(complex, DEFAULT_MAX_CELLS)
    }

    pub fn with_limit(complex: ProductComplex, max_cells: usize) -> ChowRing {
        let pieces = (0..=complex.dim()).map(|_| OnceLock::new()).collect();
        ChowRing { complex, max_cells, pieces }
    }

    pub fn complex(&self) -> &ProductComplex {
        &self.complex
    }

    /// Presentation of `Chow^{k+1}` for `0 ≤ k ≤ d`; above that the group is zero.
    pub fn presentation(&self, k: usize) -> Result<Arc<NdPresentation>> {
        let slot =
            self.pieces.get(k).ok_or_else(|| Error::InvalidArgument(format!("no non-degenerate {k}-simplices")))?;
        if let Some(p) = slot.get() {
            return Ok(p.clone());
        }
        let built = Arc::new(nd_presentation_with_limit(&self.complex, k, self.max_cells)?);
        Ok(slot.get_or_init(|| built).clone())
    }

    /// Basis monomials for classes of the given degree.
    pub fn basis(&self, degree: usize) -> Result<Vec<Monomial>> {
        match degree {
            0 => Ok(vec![Monomial::one()]),
            n if n - 1 <= self.complex.dim() => Ok(self.presentation(n - 1)?.basis().to_vec()),
            _ => Ok(Vec::new()),
        }
    }

    /// Free rank and torsion of `Chow^degree`.
    pub fn structure(&self, degree: usize) -> Result<(usize, Vec<BigInt>)> {
        match degree {
            0 => Ok((1, Vec::new())),
            n if n - 1 <= self.complex.dim() => {
                let p = self.presentation(n - 1)?;
                Ok((p.rank(), p.torsion()))
            }
            _ => Ok((0, Vec::new())),
        }
    }

    /// The class of a homogeneous polynomial of the given degree.
    pub fn class_in_degree(&self, p: &Polynomial, degree: usize) -> Result<ChowClass> {
        p.expect_degree(degree)?;
        if degree == 0 {
            return Ok(ChowClass { degree, coords: vec![p.coefficient(&Monomial::one())] });
        }
        if degree - 1 > self.complex.dim() {
            return Ok(ChowClass { degree, coords: Vec::new() });
        }
        let pres = self.presentation(degree - 1)?;
        let x = pres.vector(&nd_part(&self.complex, p)?)?;
        Ok(ChowClass { degree, coords: pres.canonical(&x) })
    }

    /// The class of a homogeneous polynomial; the zero polynomial gets degree 0.
    pub fn chow_class(&self, p: &Polynomial) -> Result<ChowClass> {
        let degree = p.homogeneous_degree()?.unwrap_or(0);
        self.class_in_degree(p, degree)
    }

    pub fn is_rationally_zero(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.chow_class(p)?.is_zero())
    }

    /// The canonical representative of a class, supported on non-degenerate simplices.
    pub fn representative(&self, class: &ChowClass) -> Result<Polynomial> {
        match class.degree {
            0 => Ok(Polynomial::constant(class.coords[0].clone())),
            n if n - 1 <= self.complex.dim() => Ok(self.presentation(n - 1)?.polynomial(&class.coords)),
            _ => Ok(Polynomial::zero()),
        }
    }

    pub fn multiply(&self, a: &ChowClass, b: &ChowClass) -> Result<ChowClass> {
        let p = &self.representative(a)? * &self.representative(b)?;
        self.class_in_degree(&p, a.degree + b.degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_complex::{OrderedGraph, ProductVertex};
    use crate::oracle::graded_quotient;

    fn pv(c: &[usize]) -> ProductVertex {
        ProductVertex::new(c).unwrap()
    }

    #[test]
    fn top_degree_ranks() {
        for d in 1..=4 {
            let p = nd_presentation(&ProductComplex::hypercube(d), d).unwrap();
            assert_eq!((p.rank(), p.torsion().len()), (1, 0));
        }
        let g = ProductComplex::product(vec![OrderedGraph::complete(3), OrderedGraph::path(3)]).unwrap();
        let p = nd_presentation(&g, 2).unwrap();
        assert_eq!((p.rank(), p.torsion().len()), (g.cubes().len(), 0));
    }

    #[test]
    fn edge_ring() {
        let ring = ChowRing::new(ProductComplex::hypercube(1));
        let ranks: Vec<usize> = (0..4).map(|n| ring.structure(n).unwrap().0).collect();
        assert_eq!(ranks, vec![1, 2, 1, 0]);
        let (u, v) = (pv(&[0]), pv(&[1]));
        let mut p = Polynomial::monomial(Monomial::from_powers([(u, 2)]));
        p += &Polynomial::monomial(Monomial::from_vertices(&[u, v]));
        assert!(ring.is_rationally_zero(&p).unwrap());
        assert!(!ring.is_rationally_zero(&Polynomial::var(u)).unwrap());
    }

    #[test]
    fn square_staircases_agree() {
        let ring = ChowRing::new(ProductComplex::hypercube(2));
        let s1 = Polynomial::monomial(Monomial::from_vertices(&[pv(&[0, 0]), pv(&[0, 1]), pv(&[1, 1])]));
        let s2 = Polynomial::monomial(Monomial::from_vertices(&[pv(&[0, 0]), pv(&[1, 0]), pv(&[1, 1])]));
        assert_eq!(ring.chow_class(&s1).unwrap(), ring.chow_class(&s2).unwrap());
        assert!(!ring.chow_class(&s1).unwrap().is_zero());
    }

    #[test]
    fn ranks_match_oracle() {
        let complexes = vec![
            ProductComplex::hypercube(2),
            ProductComplex::hypercube(3),
            ProductComplex::product(vec![OrderedGraph::complete(3), OrderedGraph::complete(2)]).unwrap(),
        ];
        for c in &complexes {
            let ring = ChowRing::new(c.clone());
            for n in 0..=c.dim() + 2 {
                let q = graded_quotient(c, n, DEFAULT_MAX_CELLS).unwrap();
                assert_eq!(ring.structure(n).unwrap(), (q.rank(), q.torsion()), "degree {n} of {c:?}");
            }
        }
    }
}
