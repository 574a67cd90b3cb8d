#![allow(dead_code)]

use gschow::graph_complex::{OrderedGraph, ProductComplex, ProductVertex};
use gschow::poly::{Monomial, Polynomial};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The products used by the structure, localization and rewriting checks.
pub fn product_list() -> Vec<(&'static str, ProductComplex)> {
    let k = OrderedGraph::complete;
    let build = |fs: Vec<OrderedGraph>| ProductComplex::product(fs).expect("valid product");
    vec![
        ("K2xK2", build(vec![k(2), k(2)])),
        ("K2xK3", build(vec![k(2), k(3)])),
        ("K3xK3", build(vec![k(3), k(3)])),
        ("P3xK3", build(vec![OrderedGraph::path(3), k(3)])),
        ("K2xK2xK2", build(vec![k(2), k(2), k(2)])),
    ]
}

/// A connected graph on `n` vertices: a random tree plus extra edges.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize) -> OrderedGraph {
    let mut edges = Vec::new();
    for i in 1..n as u32 {
        edges.push((rng.gen_range(0..i), i));
    }
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if !edges.contains(&(a, b)) && rng.gen_bool(0.3) {
                edges.push((a, b));
            }
        }
    }
    OrderedGraph::new((0..n as u32).collect(), &edges).expect("connected simple graph")
}

/// A random monomial of the given degree. Half of the draws are supported on a simplex
/// (so that they survive reduction modulo non-faces); the rest are uniform multisets.
pub fn random_monomial(rng: &mut impl Rng, complex: &ProductComplex, degree: usize) -> Monomial {
    let vertices = complex.vertices();
    if degree == 0 {
        return Monomial::one();
    }
    if rng.gen_bool(0.5) {
        let mut k = rng.gen_range(0..=complex.dim().min(degree - 1));
        let mut simplices = complex.enumerate_simplices(k, true);
        while simplices.is_empty() {
            k -= 1;
            simplices = complex.enumerate_simplices(k, true);
        }
        let s = simplices.choose(rng).expect("nonempty complex");
        let support = s.vertices();
        let mut m = Monomial::from_vertices(support);
        for _ in support.len()..degree {
            m = m.mul_var(*support.choose(rng).expect("nonempty simplex"));
        }
        m
    } else {
        let mut m = Monomial::one();
        for _ in 0..degree {
            m = m.mul_var(*vertices.choose(rng).expect("nonempty complex"));
        }
        m
    }
}

pub fn random_polynomial(rng: &mut impl Rng, complex: &ProductComplex, degree: usize, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero();
    for _ in 0..terms {
        let c = rng.gen_range(-3i64..=3);
        if c != 0 {
            p.add_term(random_monomial(rng, complex, degree), BigInt::from(c));
        }
    }
    p
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

pub fn all_monomials(vertices: &[ProductVertex], degree: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut stack = vec![(Monomial::one(), 0usize)];
    while let Some((m, start)) = stack.pop() {
        if m.degree() == degree {
            out.push(m);
            continue;
        }
        for (idx, v) in vertices.iter().enumerate().skip(start) {
            stack.push((m.mul_var(*v), idx));
        }
    }
    out
}
