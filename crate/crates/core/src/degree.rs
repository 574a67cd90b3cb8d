//! The degree map: closed formula on hypercubes, global degree, and pairings of vertex functions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::chow_ring::{ChowClass, ChowRing};
use crate::error::{Error, Result};
use crate::graph_complex::{OrderedGraph, ProductComplex, ProductVertex};
use crate::poly::{Monomial, Polynomial};

/// `C_{v_1}^{n_1} ⋯ C_{v_k}^{n_k}` on `□^d` with `v_1 < ⋯ < v_k` a chain and `Σ n_i = d+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMonomial {
    d: usize,
    chain: Vec<ProductVertex>,
    exponents: Vec<u32>,
}

impl ChainMonomial {
    /// Validates a monomial of `□^d` as a chain monomial of degree `d+1`.
    pub fn new(d: usize, m: &Monomial) -> Result<ChainMonomial> {
        if m.degree() != d + 1 {
            return Err(Error::WrongDegree { expected: d + 1, actual: m.degree() });
        }
        let chain = m.support_vec();
        if let Some(v) = chain.iter().find(|v| v.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, actual: v.dim() });
        }
        if let Some(w) = chain.windows(2).find(|w| !(w[0].le(&w[1]))) {
            return Err(Error::NotOneSimplex(w[0].to_string(), w[1].to_string()));
        }
        Ok(ChainMonomial { d, chain, exponents: m.multiplicities() })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn chain(&self) -> &[ProductVertex] {
        &self.chain
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Number of distinct vertices `k`.
    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn monomial(&self) -> Monomial {
        Monomial::from_powers(self.chain.iter().copied().zip(self.exponents.iter().copied()))
    }

    /// Image under `v ↦ 1 − v`, which reverses the chain.
    pub fn complement(&self) -> ChainMonomial {
        let full = (1u32 << self.d) - 1;
        let chain = self.chain.iter().rev().map(|v| ProductVertex::from_bits(self.d, full ^ v.bits())).collect();
        let exponents = self.exponents.iter().rev().copied().collect();
        ChainMonomial { d: self.d, chain, exponents }
    }

    /// Signed `(y_0, x_1, y_1, …, x_k)` before the nonnegativity check.
    fn raw_xy(&self) -> (Vec<i64>, Vec<i64>) {
        let k = self.len();
        let weight = |i: usize| self.chain[i].weight() as i64;
        let mut partial = 0i64;
        let mut xs = Vec::with_capacity(k);
        let mut ys = vec![weight(0)];
        for i in 0..k {
            partial += i64::from(self.exponents[i]);
            xs.push(partial - weight(i) - 1);
            if i + 1 < k {
                ys.push(weight(i + 1) - partial);
            }
        }
        (ys, xs)
    }
}

/// `y_0, x_1, y_1, …, y_{k-1}, x_k` with `n_i = y_{i-1} + x_i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XySequence {
    /// `y_0, …, y_{k-1}`.
    pub ys: Vec<usize>,
    /// `x_1, …, x_k`.
    pub xs: Vec<usize>,
}

/// Whether one of the two families of inequalities forces the monomial to vanish.
pub fn vanishes_by_criterion(m: &ChainMonomial) -> bool {
    let k = m.len();
    let d = m.d as i64;
    let mut prefix = vec![0i64; k + 1];
    for i in 0..k {
        prefix[i + 1] = prefix[i] + i64::from(m.exponents[i]);
    }
    let weight = |i: usize| m.chain[i].weight() as i64;
    // n_1 + ⋯ + n_i > |v_{i+1}| for some 1 ≤ i < k
    let forward = (1..k).any(|i| prefix[i] > weight(i));
    // n_i + ⋯ + n_k > d − |v_{i-1}| for some 2 ≤ i ≤ k
    let backward = (2..=k).any(|i| prefix[k] - prefix[i - 1] > d - weight(i - 2));
    forward || backward
}

pub fn xy_sequence(m: &ChainMonomial) -> Option<XySequence> {
    if vanishes_by_criterion(m) {
        return None;
    }
    let (ys, xs) = m.raw_xy();
    let cast = |v: Vec<i64>| v.into_iter().map(|a| usize::try_from(a).ok()).collect::<Option<Vec<_>>>();
    Some(XySequence { ys: cast(ys)?, xs: cast(xs)? })
}

/// The closed-form degree of a chain monomial of `□^d`.
pub fn hypercube_degree(m: &ChainMonomial) -> BigInt {
    let Some(xy) = xy_sequence(m) else {
        return BigInt::zero();
    };
    let k = m.len();
    let mut acc = BigInt::one();
    for i in 0..k {
        let (y, x) = (xy.ys[i], xy.xs[i]);
        acc *= binomial(BigInt::from(y + x), BigInt::from(y));
        if i + 1 < k {
            let y_next = xy.ys[i + 1];
            acc *= binomial(BigInt::from(x + y_next), BigInt::from(x));
        }
    }
    if (m.d + 1 - k) % 2 == 1 {
        -acc
    } else {
        acc
    }
}

/// `deg C_v^{d+1} = (−1)^d · binom(d, |v|)`.
pub fn power_degree(v: &ProductVertex) -> BigInt {
    let d = v.dim();
    let b = binomial(BigInt::from(d), BigInt::from(v.weight()));
    if d % 2 == 1 {
        -b
    } else {
        b
    }
}

/// Degree of an arbitrary monomial of degree `d+1` on `□^d`; zero off chains.
pub fn hypercube_monomial_degree(d: usize, m: &Monomial) -> Result<BigInt> {
    if m.degree() != d + 1 {
        return Err(Error::WrongDegree { expected: d + 1, actual: m.degree() });
    }
    match ChainMonomial::new(d, m) {
        Ok(c) => Ok(hypercube_degree(&c)),
        Err(Error::NotOneSimplex(..)) => Ok(BigInt::zero()),
        Err(e) => Err(e),
    }
}

/// `Σ_e deg_e(ι_e^* p)` for a polynomial of degree `d+1` on `𝒢`.
pub fn total_degree(complex: &ProductComplex, p: &Polynomial) -> Result<BigInt> {
    let d = complex.dim();
    p.expect_degree(d + 1)?;
    let terms: Vec<(&Monomial, &BigInt)> = p.terms().collect();
    let parts: Vec<BigInt> = terms
        .par_iter()
        .map(|(m, c)| {
            let support = m.support_vec();
            if !support.iter().all(|v| complex.contains(v)) || !complex.is_sorted_chain(&support) {
                return BigInt::zero();
            }
            let mut sum = BigInt::zero();
            for cube in complex.cubes_containing(&support) {
                let local = m.map_vertices(|v| complex.to_local(&cube, v).expect("cube contains support"));
                let chain = ChainMonomial::new(d, &local).expect("local image of a simplex is a chain");
                sum += hypercube_degree(&chain);
            }
            sum * *c
        })
        .collect();
    Ok(parts.into_iter().sum())
}

/// The degree of a class of graded degree `d+1`.
pub fn class_degree(ring: &ChowRing, class: &ChowClass) -> Result<BigInt> {
    let d = ring.complex().dim();
    if class.degree() != d + 1 {
        return Err(Error::WrongDegree { expected: d + 1, actual: class.degree() });
    }
    total_degree(ring.complex(), &ring.representative(class)?)
}

/// A function on the vertices, standing for the divisor `Σ_v f(v) C_v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DivisorFunction(BTreeMap<ProductVertex, BigRational>);

impl DivisorFunction {
    pub fn new() -> DivisorFunction {
        DivisorFunction::default()
    }

    pub fn constant(complex: &ProductComplex, c: BigRational) -> DivisorFunction {
        DivisorFunction(complex.vertices().into_iter().map(|v| (v, c.clone())).collect())
    }

    pub fn indicator(v: ProductVertex) -> DivisorFunction {
        let mut f = DivisorFunction::new();
        f.set(v, BigRational::one());
        f
    }

    pub fn set(&mut self, v: ProductVertex, value: BigRational) {
        if value.is_zero() {
            self.0.remove(&v);
        } else {
            self.0.insert(v, value);
        }
    }

    pub fn value(&self, v: &ProductVertex) -> BigRational {
        self.0.get(v).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (&ProductVertex, &BigRational)> + '_ {
        self.0.iter()
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: &BigRational, other: &DivisorFunction, b: &BigRational) -> DivisorFunction {
        let mut out = DivisorFunction::new();
        for v in self.0.keys().chain(other.0.keys()) {
            out.set(*v, a * self.value(v) + b * other.value(v));
        }
        out
    }
}

impl FromIterator<(ProductVertex, BigRational)> for DivisorFunction {
    fn from_iter<I: IntoIterator<Item = (ProductVertex, BigRational)>>(iter: I) -> Self {
        let mut f = DivisorFunction::new();
        for (v, c) in iter {
            f.set(v, c);
        }
        f
    }
}

/// `deg(D_0 ⋯ D_d)` for divisors given by vertex functions, computed cube by cube.
pub fn pairing(complex: &ProductComplex, fs: &[DivisorFunction]) -> Result<BigRational> {
    let d = complex.dim();
    if fs.len() != d + 1 {
        return Err(Error::InvalidArgument(format!("expected {} functions, got {}", d + 1, fs.len())));
    }
    let parts: Vec<BigRational> = complex
        .cubes()
        .par_iter()
        .map(|cube| {
            let corners = complex.cube_vertices(cube);
            let mut acc: Polynomial<BigRational> = Polynomial::one();
            for f in fs {
                let mut next = Polynomial::zero();
                for (m, c) in acc.terms() {
                    for corner in &corners {
                        let value = f.value(corner);
                        if value.is_zero() {
                            continue;
                        }
                        let local = complex.to_local(cube, corner).expect("corner of cube");
                        let n = m.mul_var(local);
                        let support = n.support_vec();
                        if support.windows(2).all(|w| w[0].le(&w[1])) {
                            next.add_term(n, c * &value);
                        }
                    }
                }
                acc = next;
            }
            let mut sum = BigRational::zero();
            for (m, c) in acc.terms() {
                let deg = hypercube_monomial_degree(d, m).expect("degree d+1 on the cube");
                sum += c * BigRational::from_integer(deg);
            }
            sum
        })
        .collect();
    Ok(parts.into_iter().fold(BigRational::zero(), |a, b| a + b))
}

/// `−Σ_{edges uv} (f(v) − f(u))(g(v) − g(u))` on a single graph.
pub fn dirichlet_pairing_d1(complex: &ProductComplex, f: &DivisorFunction, g: &DivisorFunction) -> Result<BigRational> {
    if complex.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, actual: complex.dim() });
    }
    let graph: &OrderedGraph = complex.factor(0);
    let mut sum = BigRational::zero();
    for e in graph.edges() {
        let (u, v) = (ProductVertex::new(&[e.lo])?, ProductVertex::new(&[e.hi])?);
        sum -= (f.value(&v) - f.value(&u)) * (g.value(&v) - g.value(&u));
    }
    Ok(sum)
}
