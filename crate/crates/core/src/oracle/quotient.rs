use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::lattice::{Lattice, SparseVec};
use crate::error::{Error, Result};
use crate::graph_complex::{ProductComplex, ProductVertex};
use crate::poly::{Monomial, Polynomial};

/// Default bound on the number of basis monomials of a graded piece.
pub const DEFAULT_MAX_CELLS: usize = 20_000;

/// `Z^k / 𝒥_rat^k` computed from scratch: simplex-supported monomials of degree `k` against
/// all multiples of the second and third relation types.
#[derive(Debug)]
pub struct GradedQuotient {
    degree: usize,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    lattice: Lattice,
}

impl GradedQuotient {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Free rank of the graded piece.
    pub fn rank(&self) -> usize {
        self.lattice.quotient_rank()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.lattice.torsion()
    }

    /// Coordinates over the basis; monomials whose support is not a simplex are dropped.
    pub fn vector(&self, p: &Polynomial) -> Result<Vec<BigInt>> {
        p.expect_degree(self.degree)?;
        let mut x = vec![BigInt::zero(); self.basis.len()];
        for (m, c) in p.terms() {
            if let Some(&i) = self.index.get(m) {
                x[i] += c;
            }
        }
        Ok(x)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.lattice.contains(&self.vector(p)?))
    }

    pub fn canonical(&self, p: &Polynomial) -> Result<Polynomial> {
        let x = self.lattice.canonical(&self.vector(p)?);
        let mut out = Polynomial::zero();
        for (i, c) in x.into_iter().enumerate() {
            out.add_term(self.basis[i].clone(), c);
        }
        Ok(out)
    }
}

fn simplex_monomials(complex: &ProductComplex, degree: usize) -> Vec<Monomial> {
    if degree == 0 {
        return vec![Monomial::one()];
    }
    complex.enumerate_simplices(degree - 1, false).iter().map(|s| Monomial::from_vertices(s.vertices())).collect()
}

/// Builds the graded piece of degree `k`; fails if its basis exceeds `max_cells`.
pub fn graded_quotient(complex: &ProductComplex, k: usize, max_cells: usize) -> Result<GradedQuotient> {
    let basis = simplex_monomials(complex, k);
    if basis.len() > max_cells {
        return Err(Error::SizeLimit { size: basis.len(), limit: max_cells });
    }
    let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let vertices = complex.vertices();
    let row_of = |terms: &mut dyn Iterator<Item = Monomial>| -> SparseVec {
        let mut cols: Vec<usize> = terms.filter_map(|m| index.get(&m).copied()).collect();
        cols.sort_unstable();
        let mut row: SparseVec = Vec::new();
        for c in cols {
            match row.last_mut() {
                Some((last, x)) if *last == c => *x += 1,
                _ => row.push((c, BigInt::one())),
            }
        }
        row
    };

    let mut rows: Vec<SparseVec> = Vec::new();
    if k >= 2 {
        // C_u · (Σ_v C_v) · m
        let mults = simplex_monomials(complex, k - 2);
        let part: Vec<SparseVec> = mults
            .par_iter()
            .flat_map_iter(|m| {
                let mut out = Vec::new();
                for u in &vertices {
                    let mu = m.mul_var(*u);
                    if !complex.is_sorted_chain(&mu.support_vec()) {
                        continue;
                    }
                    out.push(row_of(&mut vertices.iter().map(|v| mu.mul_var(*v))));
                }
                out
            })
            .collect();
        rows.extend(part);
    }
    if k >= 3 {
        // C_u · C_w · (Σ_{v_i = u_i} C_v) · m  for u_i ≠ w_i
        let mults = simplex_monomials(complex, k - 3);
        let part: Vec<SparseVec> = mults
            .par_iter()
            .flat_map_iter(|m| {
                let mut out = Vec::new();
                for u in &vertices {
                    for w in &vertices {
                        let muw = m.mul_var(*u).mul_var(*w);
                        if !complex.is_sorted_chain(&muw.support_vec()) {
                            continue;
                        }
                        for i in 0..complex.dim() {
                            if u.coord(i) == w.coord(i) {
                                continue;
                            }
                            let fiber = vertices.iter().filter(|v| v.coord(i) == u.coord(i));
                            out.push(row_of(&mut fiber.map(|v| muw.mul_var(*v))));
                        }
                    }
                }
                out
            })
            .collect();
        rows.extend(part);
    }
    let mut seen = HashSet::new();
    rows.retain(|r| !r.is_empty() && seen.insert(r.clone()));
    let lattice = Lattice::new(basis.len(), rows);
    Ok(GradedQuotient { degree: k, basis, index, lattice })
}

/// Caches graded pieces of one complex.
pub struct Oracle {
    complex: ProductComplex,
    max_cells: usize,
    cache: Mutex<HashMap<usize, Arc<GradedQuotient>>>,
}

impl Oracle {
    pub fn new(complex: ProductComplex) -> Oracle {
        Oracle::with_limit(complex, DEFAULT_MAX_CELLS)
    }

    pub fn with_limit(complex: ProductComplex, max_cells: usize) -> Oracle {
        Oracle { complex, max_cells, cache: Mutex::new(HashMap::new()) }
    }

    pub fn complex(&self) -> &ProductComplex {
        &self.complex
    }

    pub fn graded_quotient(&self, k: usize) -> Result<Arc<GradedQuotient>> {
        if let Some(q) = self.cache.lock().expect("oracle cache poisoned").get(&k) {
            return Ok(q.clone());
        }
        let q = Arc::new(graded_quotient(&self.complex, k, self.max_cells)?);
        self.cache.lock().expect("oracle cache poisoned").insert(k, q.clone());
        Ok(q)
    }

    /// Whether a homogeneous `p` lies in `𝒥_rat`.
    pub fn ideal_membership(&self, p: &Polynomial) -> Result<bool> {
        match p.homogeneous_degree()? {
            None => Ok(true),
            Some(k) => self.graded_quotient(k)?.contains(p),
        }
    }
}

/// Degree on `□^d` by solving `m ≡ c·C_{σ₀}` in the top graded piece.
pub struct DegreeOracle {
    d: usize,
    quotient: GradedQuotient,
    unit: BigInt,
}

/// The staircase `0 < e_1 < e_1+e_2 < … < 1` of `□^d`.
pub fn identity_staircase(d: usize) -> Monomial {
    Monomial::from_vertices(&(0..=d).map(|j| ProductVertex::from_bits(d, (1u32 << j) - 1)).collect::<Vec<_>>())
}

impl DegreeOracle {
    pub fn new(d: usize) -> Result<DegreeOracle> {
        let quotient = graded_quotient(&ProductComplex::hypercube(d), d + 1, DEFAULT_MAX_CELLS)?;
        if quotient.rank() != 1 || !quotient.torsion().is_empty() {
            return Err(Error::NotRankOne(format!(
                "rank {} with torsion {:?} in degree {}",
                quotient.rank(),
                quotient.torsion(),
                d + 1
            )));
        }
        let x = quotient.vector(&Polynomial::monomial(identity_staircase(d)))?;
        let (_, free) = quotient.lattice.quotient_coordinates(&x);
        let unit = free[0].clone();
        if !unit.abs().is_one() {
            return Err(Error::NotRankOne(format!("staircase has free coordinate {unit}")));
        }
        Ok(DegreeOracle { d, quotient, unit })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn quotient(&self) -> &GradedQuotient {
        &self.quotient
    }

    pub fn degree(&self, p: &Polynomial) -> Result<BigInt> {
        let x = self.quotient.vector(p)?;
        let (_, free) = self.quotient.lattice.quotient_coordinates(&x);
        Ok(&free[0] * &self.unit)
    }
}

/// Shared oracle for `□^d`, built on first use.
pub fn degree_oracle_for(d: usize) -> Result<Arc<DegreeOracle>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<DegreeOracle>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(o) = cache.lock().expect("degree cache poisoned").get(&d) {
        return Ok(o.clone());
    }
    let o = Arc::new(DegreeOracle::new(d)?);
    cache.lock().expect("degree cache poisoned").insert(d, o.clone());
    Ok(o)
}

/// The degree of a monomial of degree `d+1` on `□^d`, by lattice solve.
pub fn degree_oracle(d: usize, m: &Monomial) -> Result<BigInt> {
    if m.degree() != d + 1 {
        return Err(Error::WrongDegree { expected: d + 1, actual: m.degree() });
    }
    degree_oracle_for(d)?.degree(&Polynomial::monomial(m.clone()))
}

pub fn ideal_membership(complex: &ProductComplex, p: &Polynomial) -> Result<bool> {
    Oracle::new(complex.clone()).ideal_membership(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_complex::OrderedGraph;

    fn pv(c: &[usize]) -> ProductVertex {
        ProductVertex::new(c).unwrap()
    }

    #[test]
    fn single_edge_pieces() {
        let e = ProductComplex::hypercube(1);
        let ranks: Vec<usize> = (0..5).map(|k| graded_quotient(&e, k, 100).unwrap().rank()).collect();
        assert_eq!(ranks, vec![1, 2, 1, 0, 0]);
    }

    #[test]
    fn hypercube_top_and_above() {
        for d in 1..=3 {
            let c = ProductComplex::hypercube(d);
            let top = graded_quotient(&c, d + 1, DEFAULT_MAX_CELLS).unwrap();
            assert_eq!((top.rank(), top.torsion().len()), (1, 0));
            assert!(top.lattice().verify());
            assert_eq!(graded_quotient(&c, d + 2, DEFAULT_MAX_CELLS).unwrap().rank(), 0);
        }
    }

    #[test]
    fn oracle_degrees() {
        for d in 1..=3 {
            assert!(degree_oracle(d, &identity_staircase(d)).unwrap().is_one());
            let zero = Monomial::from_powers([(ProductVertex::from_bits(d, 0), d as u32 + 1)]);
            let expected = if d % 2 == 0 { 1 } else { -1 };
            assert_eq!(degree_oracle(d, &zero).unwrap(), BigInt::from(expected));
        }
        let m = Monomial::from_powers([(pv(&[0, 0]), 2), (pv(&[1, 1]), 1)]);
        assert_eq!(degree_oracle(2, &m).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn size_limit_is_reported() {
        let c = ProductComplex::hypercube(3);
        assert!(matches!(graded_quotient(&c, 4, 10), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn membership_examples() {
        let e = ProductComplex::hypercube(1);
        let (u, v) = (pv(&[0]), pv(&[1]));
        // C_u² + C_u C_v
        let mut p: Polynomial = Polynomial::monomial(Monomial::from_powers([(u, 2)]));
        p += &Polynomial::monomial(Monomial::from_vertices(&[u, v]));
        assert!(ideal_membership(&e, &p).unwrap());
        assert!(!ideal_membership(&e, &Polynomial::monomial(Monomial::from_vertices(&[u, v]))).unwrap());
        let g = ProductComplex::product(vec![OrderedGraph::complete(3)]).unwrap();
        let t = Polynomial::monomial(Monomial::from_vertices(&[pv(&[0]), pv(&[1]), pv(&[2])]));
        assert!(ideal_membership(&g, &t).unwrap());
    }
}
