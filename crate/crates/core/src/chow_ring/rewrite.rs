use std::cmp::Reverse;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::relations::RelationKind;
use crate::error::Result;
use crate::graph_complex::{ProductComplex, ProductVertex};
use crate::poly::{Monomial, Polynomial};

/// One summand `coeff · multiplier · relation` of a rewriting certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateTerm {
    pub coeff: BigInt,
    pub multiplier: Monomial,
    pub relation: RelationKind,
}

/// Result of the moving lemma: `input = nd_part + Σ certificate`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewrite {
    pub nd_part: Polynomial,
    pub certificate: Vec<CertificateTerm>,
}

impl Rewrite {
    /// The certificate as an element of `Z(𝒢)`.
    pub fn certificate_polynomial(&self, complex: &ProductComplex) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        for t in &self.certificate {
            out += &t.relation.expand(complex)?.mul_monomial(&t.multiplier).scale(&t.coeff);
        }
        Ok(out)
    }
}

/// Processing order: fewer distinct vertices first, then larger multiplicity vectors.
/// Every rewriting step strictly increases this key, which bounds the work.
type WorkKey = (usize, Reverse<Vec<u32>>, Monomial);

fn key(m: Monomial) -> WorkKey {
    (m.distinct(), Reverse(m.multiplicities()), m)
}

/// A single rewriting step of a monomial on a simplex that is not yet non-degenerate.
struct Step {
    multiplier: Monomial,
    relation: RelationKind,
    /// Monomials `n` with `m = multiplier · relation − Σ n`.
    children: Vec<Monomial>,
}

fn step(complex: &ProductComplex, vertices: &[ProductVertex], m: &Monomial) -> Step {
    let powers = m.powers();
    if powers.len() == 1 {
        let (u, n) = powers[0];
        let multiplier = Monomial::from_powers([(u, n - 2)]);
        let base = Monomial::from_powers([(u, n - 1)]);
        let children = vertices.iter().filter(|v| **v != u).map(|v| base.mul_var(*v)).collect();
        return Step { multiplier, relation: RelationKind::R2 { u }, children };
    }
    // The first repeated vertex after the minimum pairs with its predecessor; if only the
    // minimum repeats, it pairs with its successor.
    let (high, low) = match (1..powers.len()).find(|&h| powers[h].1 >= 2) {
        Some(h) => (h, h - 1),
        None => (0, 1),
    };
    let (u, w) = (powers[high].0, powers[low].0);
    let (a, b) = if high > low { (w, u) } else { (u, w) };
    let mask = complex.one_simplex_mask(&a, &b).expect("support is a chain");
    let i = mask.trailing_zeros() as usize;
    let multiplier = m.div(&Monomial::from_powers([(u, 2), (w, 1)])).expect("exponents checked");
    let base = m.div(&Monomial::var(u)).expect("u divides m");
    let children = vertices.iter().filter(|v| **v != u && v.coord(i) == u.coord(i)).map(|v| base.mul_var(*v)).collect();
    Step { multiplier, relation: RelationKind::R3 { u, w, i }, children }
}

fn is_face(complex: &ProductComplex, m: &Monomial) -> bool {
    m.support().all(|v| complex.contains(v)) && complex.is_sorted_chain(&m.support_vec())
}

fn run(complex: &ProductComplex, p: &Polynomial, mut certificate: Option<&mut Vec<CertificateTerm>>) -> Polynomial {
    let vertices = complex.vertices();
    let mut work: BTreeMap<WorkKey, BigInt> = BTreeMap::new();
    let push = |work: &mut BTreeMap<WorkKey, BigInt>, m: Monomial, c: BigInt| {
        let e = work.entry(key(m)).or_insert_with(BigInt::zero);
        *e += c;
    };
    let mut nd = Polynomial::zero();
    let record = |cert: &mut Option<&mut Vec<CertificateTerm>>, coeff: BigInt, multiplier, relation| {
        if let Some(c) = cert.as_deref_mut() {
            c.push(CertificateTerm { coeff, multiplier, relation });
        }
    };
    for (m, c) in p.terms() {
        if is_face(complex, m) {
            push(&mut work, m.clone(), c.clone());
        } else {
            record(&mut certificate, c.clone(), Monomial::one(), RelationKind::R1(m.clone()));
        }
    }
    while let Some(((_, _, m), c)) = work.pop_first() {
        if c.is_zero() {
            continue;
        }
        if m.is_square_free() {
            nd.add_term(m, c);
            continue;
        }
        let s = step(complex, &vertices, &m);
        record(&mut certificate, c.clone(), s.multiplier, s.relation);
        let neg = -c;
        for child in s.children {
            if is_face(complex, &child) {
                push(&mut work, child, neg.clone());
            } else {
                record(&mut certificate, neg.clone(), Monomial::one(), RelationKind::R1(child));
            }
        }
    }
    nd
}

/// Rewrites `p` onto square-free simplex monomials modulo `𝒥_rat`, with a certificate.
///
/// Choices of index are always the smallest available, so the output is deterministic.
pub fn rewrite_to_nd(complex: &ProductComplex, p: &Polynomial) -> Result<Rewrite> {
    p.homogeneous_degree()?;
    let mut certificate = Vec::new();
    let nd_part = run(complex, p, Some(&mut certificate));
    Ok(Rewrite { nd_part, certificate })
}

/// [`rewrite_to_nd`] without recording the certificate.
pub fn nd_part(complex: &ProductComplex, p: &Polynomial) -> Result<Polynomial> {
    p.homogeneous_degree()?;
    Ok(run(complex, p, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_complex::OrderedGraph;
    use crate::oracle::ideal_membership;

    fn pv(c: &[usize]) -> ProductVertex {
        ProductVertex::new(c).unwrap()
    }

    fn check(complex: &ProductComplex, p: &Polynomial) -> Polynomial {
        let r = rewrite_to_nd(complex, p).unwrap();
        assert!(r.nd_part.terms().all(|(m, _)| m.is_square_free() && complex.is_simplex(&m.expanded())));
        let diff = p - &r.nd_part;
        assert_eq!(r.certificate_polynomial(complex).unwrap(), diff);
        assert!(ideal_membership(complex, &diff).unwrap());
        assert_eq!(nd_part(complex, p).unwrap(), r.nd_part);
        r.nd_part
    }

    #[test]
    fn edge_examples() {
        let e = ProductComplex::hypercube(1);
        let (u, v) = (pv(&[0]), pv(&[1]));
        let sq = Polynomial::monomial(Monomial::from_powers([(u, 2)]));
        let expected = Polynomial::term(Monomial::from_vertices(&[u, v]), BigInt::from(-1));
        assert_eq!(check(&e, &sq), expected);
        assert!(check(&e, &Polynomial::monomial(Monomial::from_powers([(u, 3)]))).is_zero());
        let nd = Polynomial::monomial(Monomial::from_vertices(&[u, v]));
        let r = rewrite_to_nd(&e, &nd).unwrap();
        assert_eq!((r.nd_part, r.certificate.len()), (nd, 0));
    }

    #[test]
    fn all_monomials_of_small_products() {
        let complexes = vec![
            ProductComplex::hypercube(2),
            ProductComplex::product(vec![OrderedGraph::complete(3)]).unwrap(),
            ProductComplex::product(vec![OrderedGraph::path(3), OrderedGraph::complete(2)]).unwrap(),
        ];
        for c in &complexes {
            let vs = c.vertices();
            for deg in 1..=3 {
                let mut stack = vec![(Monomial::one(), 0usize)];
                while let Some((m, start)) = stack.pop() {
                    if m.degree() == deg {
                        check(c, &Polynomial::monomial(m));
                        continue;
                    }
                    for (idx, v) in vs.iter().enumerate().skip(start) {
                        stack.push((m.mul_var(*v), idx));
                    }
                }
            }
        }
    }
}
