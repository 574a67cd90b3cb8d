//! The Fourier dual generators `F_w = Σ_v (-1)^{⟨v,w⟩} C_v` of `Chow(□^d)[1/2]`.
//!
//! Words `w ∈ 𝔽₂^d` are represented as [`ProductVertex`] values with 0/1 coordinates, so a
//! polynomial in the `F_w` reuses [`Monomial`] with the basis recorded separately.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::chow_ring::RelationKind;
use crate::degree::total_degree;
use crate::error::{Error, Result};
use crate::graph_complex::{ProductComplex, ProductVertex, MAX_DIM};
use crate::localization::hypercube_ring;
use crate::oracle::{Lattice, SparseVec};
use crate::poly::{to_integer, to_rational, Monomial, Polynomial};

/// Which generators the monomials of a [`DyadicPolynomial`] are written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// The vertex generators `C_v`.
    C,
    /// The characters `F_w`.
    F,
}

/// A polynomial on `□^d` with coefficients in `ℤ[1/2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicPolynomial {
    dim: usize,
    basis: Basis,
    poly: Polynomial<BigRational>,
}

fn is_power_of_two(n: &BigInt) -> bool {
    n.is_positive() && (n & (n - BigInt::one())).is_zero()
}

impl DyadicPolynomial {
    /// Checks that every variable is a word of length `dim` and every denominator a power of 2.
    pub fn new(dim: usize, basis: Basis, poly: Polynomial<BigRational>) -> Result<DyadicPolynomial> {
        if dim > MAX_DIM {
            return Err(Error::InvalidArgument(format!("dimension {dim} exceeds {MAX_DIM}")));
        }
        for (m, c) in poly.terms() {
            if let Some(v) = m.support().find(|v| !is_word(dim, v)) {
                return Err(Error::InvalidVertex(format!("{v} is not a word of length {dim}")));
            }
            if !is_power_of_two(c.denom()) {
                return Err(Error::NonDyadic(c.to_string()));
            }
        }
        Ok(DyadicPolynomial { dim, basis, poly })
    }

    pub fn from_integer(dim: usize, basis: Basis, p: &Polynomial) -> Result<DyadicPolynomial> {
        DyadicPolynomial::new(dim, basis, to_rational(p))
    }

    /// A single product `X_{w_0} ⋯ X_{w_n}` in the given basis.
    pub fn product(dim: usize, basis: Basis, words: &[ProductVertex]) -> Result<DyadicPolynomial> {
        DyadicPolynomial::new(dim, basis, Polynomial::monomial(Monomial::from_vertices(words)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn poly(&self) -> &Polynomial<BigRational> {
        &self.poly
    }

    /// The integer polynomial, if no coefficient has a denominator.
    pub fn to_integer(&self) -> Option<Polynomial> {
        to_integer(&self.poly)
    }

    fn expect_basis(&self, basis: Basis) -> Result<()> {
        if self.basis == basis {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("expected a polynomial in the {basis:?} basis")))
        }
    }
}

fn is_word(d: usize, v: &ProductVertex) -> bool {
    v.dim() == d && v.coords().iter().all(|&c| c <= 1)
}

/// All words of `𝔽₂^d` in increasing order of their bit encoding.
pub fn words(d: usize) -> Vec<ProductVertex> {
    (0..1u32 << d).map(|b| ProductVertex::from_bits(d, b)).collect()
}

/// The unit word `e_i` (0-based).
pub fn unit_word(d: usize, i: usize) -> ProductVertex {
    ProductVertex::from_bits(d, 1 << i)
}

/// `w + z` in `𝔽₂^d`.
pub fn add_words(w: &ProductVertex, z: &ProductVertex) -> ProductVertex {
    ProductVertex::from_bits(w.dim(), w.bits() ^ z.bits())
}

/// `(-1)^{⟨v,w⟩}`.
pub fn character(v: &ProductVertex, w: &ProductVertex) -> i32 {
    if (v.bits() & w.bits()).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Parses a bitstring such as `"101"`; character `i` is coordinate `i`.
pub fn parse_word(s: &str) -> Result<ProductVertex> {
    let coords: Vec<usize> = s
        .chars()
        .enumerate()
        .map(|(pos, ch)| match ch {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse { pos, msg: format!("expected 0 or 1, found {ch:?}") }),
        })
        .collect::<Result<_>>()?;
    ProductVertex::new(&coords)
}

pub fn format_word(w: &ProductVertex) -> String {
    w.coords().iter().map(|c| if *c == 0 { '0' } else { '1' }).collect()
}

fn check_words(d: usize, ws: &[ProductVertex]) -> Result<()> {
    match ws.iter().find(|w| !is_word(d, w)) {
        Some(w) => Err(Error::InvalidVertex(format!("{w} is not a word of length {d}"))),
        None => Ok(()),
    }
}

/// `C_v ↦ 2^{-d} Σ_w (-1)^{⟨v,w⟩} F_w`.
pub fn to_fourier(p: &DyadicPolynomial) -> Result<DyadicPolynomial> {
    p.expect_basis(Basis::C)?;
    let d = p.dim;
    let scale = BigRational::new(BigInt::one(), BigInt::one() << d);
    let all = words(d);
    let poly = p.poly.substitute(|v| {
        let mut image = Polynomial::zero();
        for w in &all {
            image.add_term(Monomial::var(*w), &scale * BigInt::from(character(v, w)));
        }
        image
    });
    DyadicPolynomial::new(d, Basis::F, poly)
}

/// `F_w ↦ Σ_v (-1)^{⟨v,w⟩} C_v`.
pub fn from_fourier(p: &DyadicPolynomial) -> Result<DyadicPolynomial> {
    p.expect_basis(Basis::F)?;
    let d = p.dim;
    let all = words(d);
    let poly = p.poly.substitute(|w| {
        let mut image = Polynomial::zero();
        for v in &all {
            image.add_term(Monomial::var(*v), BigRational::from_integer(character(v, w).into()));
        }
        image
    });
    DyadicPolynomial::new(d, Basis::C, poly)
}

/// `F_w` expanded in the vertex basis; the coefficients are `±1`.
fn fourier_generator(d: usize, w: &ProductVertex) -> Polynomial {
    let mut out = Polynomial::zero();
    for v in words(d) {
        out.add_term(Monomial::var(v), BigInt::from(character(&v, w)));
    }
    out
}

/// `F_{w_0} ⋯ F_{w_n}` in the vertex basis, dropping monomials whose support is not a simplex
/// of `□^d` (those lie in `𝒥₁`). The coefficients are integers.
pub fn expand_fourier_monomial(d: usize, ws: &[ProductVertex]) -> Result<Polynomial> {
    check_words(d, ws)?;
    let cube = ProductComplex::hypercube(d);
    let mut acc = Polynomial::one();
    for w in ws {
        let next = &acc * &fourier_generator(d, w);
        acc = next.filter(|m| cube.is_simplex(&m.support_vec()));
    }
    Ok(acc)
}

/// An element of the Fourier-dual relation families. Indices are 0-based coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StarRelation {
    /// `F_0 F_w`.
    R1 { w: ProductVertex },
    /// `F_{e_i} (F_w − F_{w+e_i}) (F_z + F_{z+e_i})`.
    R2 { i: usize, w: ProductVertex, z: ProductVertex },
    /// `(F_{w+e_i+e_j} − F_w)(F_{z+e_i+e_j} − F_z) − (F_{w+e_i} − F_{w+e_j})(F_{z+e_i} − F_{z+e_j})`.
    R3 { i: usize, j: usize, w: ProductVertex, z: ProductVertex },
}

impl StarRelation {
    pub fn kind(&self) -> u8 {
        match self {
            StarRelation::R1 { .. } => 1,
            StarRelation::R2 { .. } => 2,
            StarRelation::R3 { .. } => 3,
        }
    }

    /// Graded degree of the relation.
    pub fn degree(&self) -> usize {
        if self.kind() == 2 {
            3
        } else {
            2
        }
    }
}

impl std::fmt::Display for StarRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StarRelation::R1 { w } => write!(f, "R*1[{}]", format_word(w)),
            StarRelation::R2 { i, w, z } => write!(f, "R*2[{i},{},{}]", format_word(w), format_word(z)),
            StarRelation::R3 { i, j, w, z } => {
                write!(f, "R*3[{i},{j},{},{}]", format_word(w), format_word(z))
            }
        }
    }
}

fn f_linear(terms: &[(ProductVertex, i32)]) -> Polynomial {
    let mut out = Polynomial::zero();
    for (w, c) in terms {
        out.add_term(Monomial::var(*w), BigInt::from(*c));
    }
    out
}

/// The relation element in the `F` basis (integer coefficients).
pub fn star_relation(d: usize, rel: &StarRelation) -> Result<DyadicPolynomial> {
    let check_index = |i: usize| {
        if i < d {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("coordinate {i} out of range for d = {d}")))
        }
    };
    let e = |i: usize| unit_word(d, i);
    let poly = match rel {
        StarRelation::R1 { w } => {
            check_words(d, &[*w])?;
            Polynomial::monomial(Monomial::from_vertices(&[ProductVertex::from_bits(d, 0), *w]))
        }
        StarRelation::R2 { i, w, z } => {
            check_index(*i)?;
            check_words(d, &[*w, *z])?;
            let a = f_linear(&[(e(*i), 1)]);
            let b = f_linear(&[(*w, 1), (add_words(w, &e(*i)), -1)]);
            let c = f_linear(&[(*z, 1), (add_words(z, &e(*i)), 1)]);
            &(&a * &b) * &c
        }
        StarRelation::R3 { i, j, w, z } => {
            check_index(*i)?;
            check_index(*j)?;
            if i == j {
                return Err(Error::InvalidArgument("R*3 needs two distinct coordinates".into()));
            }
            check_words(d, &[*w, *z])?;
            let (ei, ej) = (e(*i), e(*j));
            let eij = add_words(&ei, &ej);
            let lhs = &f_linear(&[(add_words(w, &eij), 1), (*w, -1)]) * &f_linear(&[(add_words(z, &eij), 1), (*z, -1)]);
            let rhs = &f_linear(&[(add_words(w, &ei), 1), (add_words(w, &ej), -1)])
                * &f_linear(&[(add_words(z, &ei), 1), (add_words(z, &ej), -1)]);
            &lhs - &rhs
        }
    };
    DyadicPolynomial::from_integer(d, Basis::F, &poly)
}

/// Every star relation on `□^d`: all words `w, z`, all `i`, and `i < j` for the third family.
pub fn star_relation_grid(d: usize) -> Vec<StarRelation> {
    let ws = words(d);
    let mut out: Vec<StarRelation> = ws.iter().map(|&w| StarRelation::R1 { w }).collect();
    for i in 0..d {
        for &w in &ws {
            for &z in &ws {
                out.push(StarRelation::R2 { i, w, z });
            }
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            for &w in &ws {
                for &z in &ws {
                    out.push(StarRelation::R3 { i, j, w, z });
                }
            }
        }
    }
    out
}

/// Whether an `F`- or `C`-basis polynomial with integer coefficients is zero in `Chow(□^d)`.
pub fn is_class_zero(p: &DyadicPolynomial) -> Result<bool> {
    let c = match p.basis {
        Basis::C => p.clone(),
        Basis::F => from_fourier(p)?,
    };
    let integral =
        c.to_integer().ok_or_else(|| Error::InvalidArgument("class test needs integer coefficients".into()))?;
    hypercube_ring(p.dim).is_rationally_zero(&integral)
}

/// Comparison of the two relation lattices of `□^d` in one graded degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoReport {
    pub dim: usize,
    pub degree: usize,
    /// Number of monomials of this degree in the `C_v`.
    pub columns: usize,
    pub classic_rank: usize,
    pub star_rank: usize,
    /// Invariant factors (other than 1) of the two quotients.
    pub classic_torsion: Vec<BigInt>,
    pub star_torsion: Vec<BigInt>,
    /// Containments after inverting 2.
    pub star_in_classic: bool,
    pub classic_in_star: bool,
    /// Whether the lattices agree without inverting 2 (reported, not a claim).
    pub equal_over_z: bool,
}

impl IsoReport {
    pub fn equal_after_inverting_two(&self) -> bool {
        self.star_in_classic && self.classic_in_star
    }
}

fn all_monomials(vertices: &[ProductVertex], degree: usize) -> Vec<Monomial> {
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
    out.sort();
    out
}

struct RowBuilder<'a> {
    index: &'a HashMap<Monomial, usize>,
    seen: HashSet<SparseVec>,
    rows: Vec<SparseVec>,
}

impl RowBuilder<'_> {
    fn push(&mut self, p: &Polynomial) {
        let mut row: SparseVec = p.terms().map(|(m, c)| (self.index[m], c.clone())).collect();
        row.sort_by_key(|(c, _)| *c);
        if !row.is_empty() && self.seen.insert(row.clone()) {
            self.rows.push(row);
        }
    }

    fn push_multiples(&mut self, rel: &Polynomial, multipliers: &[Monomial]) {
        for m in multipliers {
            self.push(&rel.mul_monomial(m));
        }
    }
}

fn dense(ncols: usize, row: &SparseVec) -> Vec<BigInt> {
    let mut x = vec![BigInt::zero(); ncols];
    for (c, v) in row {
        x[*c] = v.clone();
    }
    x
}

/// Compares, in graded degree `degree` of `ℤ[C_v : v ∈ □^d]`, the lattice spanned by multiples
/// of the vertex relations with the one spanned by multiples of the star relations (expanded
/// in the vertex basis). Containment after inverting 2 is tested against the saturation at 2.
pub fn presentation_equality_check(d: usize, degree: usize) -> Result<IsoReport> {
    if d == 0 || d > 3 {
        return Err(Error::InvalidArgument(format!("presentation check supports 1 ≤ d ≤ 3, got {d}")));
    }
    let cube = ProductComplex::hypercube(d);
    let vertices = cube.vertices();
    let basis = all_monomials(&vertices, degree);
    let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let multipliers = |k: usize| if degree >= k { all_monomials(&vertices, degree - k) } else { Vec::new() };

    let mut classic = RowBuilder { index: &index, seen: HashSet::new(), rows: Vec::new() };
    for m in &basis {
        if !cube.is_simplex(&m.support_vec()) {
            classic.push(&Polynomial::monomial(m.clone()));
        }
    }
    let (deg2, deg1) = (multipliers(2), multipliers(3));
    for &u in &vertices {
        classic.push_multiples(&RelationKind::R2 { u }.expand(&cube)?, &deg2);
        for &w in &vertices {
            for i in 0..d {
                if u.coord(i) != w.coord(i) {
                    classic.push_multiples(&RelationKind::R3 { u, w, i }.expand(&cube)?, &deg1);
                }
            }
        }
    }

    let mut star = RowBuilder { index: &index, seen: HashSet::new(), rows: Vec::new() };
    for rel in star_relation_grid(d) {
        let expanded =
            from_fourier(&star_relation(d, &rel)?)?.to_integer().expect("F to C conversion keeps integer coefficients");
        let mult = if rel.degree() == 2 { &deg2 } else { &deg1 };
        star.push_multiples(&expanded, mult);
    }

    let n = basis.len();
    let classic_rows = classic.rows;
    let star_rows = star.rows;
    let (cl, st) = rayon::join(|| Lattice::new(n, classic_rows.clone()), || Lattice::new(n, star_rows.clone()));
    let inside = |lat: &Lattice, rows: &[SparseVec], prime: Option<u32>| {
        rows.par_iter().all(|r| {
            let x = dense(n, r);
            match prime {
                Some(p) => lat.contains_saturated(&x, p),
                None => lat.contains(&x),
            }
        })
    };
    let star_in_classic = inside(&cl, &star_rows, Some(2));
    let classic_in_star = inside(&st, &classic_rows, Some(2));
    let equal_over_z = inside(&cl, &star_rows, None) && inside(&st, &classic_rows, None);
    Ok(IsoReport {
        dim: d,
        degree,
        columns: n,
        classic_rank: n - cl.quotient_rank(),
        star_rank: n - st.quotient_rank(),
        classic_torsion: cl.torsion(),
        star_torsion: st.torsion(),
        star_in_classic,
        classic_in_star,
        equal_over_z,
    })
}

/// A set partition `{P_1, …, P_k}` of the 0-based coordinates `0..d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    dim: usize,
    blocks: Vec<u32>,
}

impl Partition {
    /// Blocks are given as coordinate lists; they must be nonempty, disjoint and cover `0..d`.
    pub fn new(dim: usize, blocks: &[Vec<usize>]) -> Result<Partition> {
        let mut seen = 0u32;
        let mut masks = Vec::with_capacity(blocks.len());
        for b in blocks {
            if b.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            let mut mask = 0u32;
            for &i in b {
                if i >= dim || (seen | mask) & (1 << i) != 0 {
                    return Err(Error::InvalidArgument(format!("coordinate {i} is out of range or repeated")));
                }
                mask |= 1 << i;
            }
            seen |= mask;
            masks.push(mask);
        }
        if seen.count_ones() as usize != dim {
            return Err(Error::InvalidArgument("blocks do not cover every coordinate".into()));
        }
        Ok(Partition { dim, blocks: masks })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of blocks `k`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|&m| (0..self.dim).filter(|i| m & (1 << i) != 0).collect()).collect()
    }
}

/// Every set partition of `0..d`, via restricted growth strings.
pub fn set_partitions(d: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; d];
    fn go(pos: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Partition>) {
        let d = labels.len();
        if pos == d {
            let k = if d == 0 { 0 } else { max + 1 };
            let mut blocks = vec![0u32; k];
            for (i, &l) in labels.iter().enumerate() {
                blocks[l] |= 1 << i;
            }
            out.push(Partition { dim: d, blocks });
            return;
        }
        let top = if pos == 0 { 0 } else { max + 1 };
        for l in 0..=top {
            labels[pos] = l;
            go(pos + 1, max.max(l), labels, out);
        }
    }
    go(0, 0, &mut labels, &mut out);
    out
}

/// `α(w, 𝒫)`: the number of blocks containing a coordinate where `w` is 1.
pub fn alpha(w: &ProductVertex, partition: &Partition) -> usize {
    partition.blocks.iter().filter(|&&b| b & w.bits() != 0).count()
}

/// The partition statistic of a word tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStat {
    pub partition: Partition,
    pub alphas: Vec<usize>,
}

impl PartitionStat {
    pub fn new(partition: &Partition, ws: &[ProductVertex]) -> Result<PartitionStat> {
        check_words(partition.dim, ws)?;
        let alphas = ws.iter().map(|w| alpha(w, partition)).collect();
        Ok(PartitionStat { partition: partition.clone(), alphas })
    }

    pub fn total(&self) -> usize {
        self.alphas.iter().sum()
    }

    /// `Σ α(w_i, 𝒫) < d + k`.
    pub fn forces_vanishing(&self) -> bool {
        self.total() < self.partition.dim + self.partition.len()
    }
}

fn check_tuple(ws: &[ProductVertex]) -> Result<usize> {
    let d = ws.len().checked_sub(1).ok_or_else(|| Error::InvalidArgument("no words given".into()))?;
    check_words(d, ws)?;
    Ok(d)
}

/// Whether one partition certifies that `F_{w_0} ⋯ F_{w_d}` vanishes.
pub fn vanishing_criterion(partition: &Partition, ws: &[ProductVertex]) -> Result<bool> {
    let d = check_tuple(ws)?;
    if partition.dim != d {
        return Err(Error::DimensionMismatch { expected: d, actual: partition.dim });
    }
    Ok(PartitionStat::new(partition, ws)?.forces_vanishing())
}

/// The bipartite graph on word nodes `ω_0..ω_d` and coordinate nodes `0..d`, with `ω_i`
/// joined to coordinate `j` when `w_i` has a 1 there.
#[derive(Clone, Debug)]
pub struct WitnessGraph {
    words: Vec<ProductVertex>,
}

impl WitnessGraph {
    pub fn new(ws: &[ProductVertex]) -> Result<WitnessGraph> {
        check_tuple(ws)?;
        Ok(WitnessGraph { words: ws.to_vec() })
    }

    pub fn dim(&self) -> usize {
        self.words.len() - 1
    }

    /// Edges `(word index, coordinate)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let d = self.dim();
        let mut out = Vec::new();
        for (a, w) in self.words.iter().enumerate() {
            out.extend((0..d).filter(|&j| w.coord(j) == 1).map(|j| (a, j)));
        }
        out
    }

    /// Connected components, each as (word indices, coordinates).
    pub fn components(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let n = self.words.len();
        let d = self.dim();
        let mut uf = UnionFind::<usize>::new(n + d);
        for (a, j) in self.edges() {
            uf.union(a, n + j);
        }
        let mut roots: Vec<usize> = Vec::new();
        let mut comps: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for node in 0..n + d {
            let root = uf.find(node);
            let slot = match roots.iter().position(|r| *r == root) {
                Some(p) => p,
                None => {
                    roots.push(root);
                    comps.push((Vec::new(), Vec::new()));
                    comps.len() - 1
                }
            };
            if node < n {
                comps[slot].0.push(node);
            } else {
                comps[slot].1.push(node - n);
            }
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }
}

/// Whether `F_{w_0} ⋯ F_{w_d}` is forced to vanish, decided by disconnection of the
/// [`WitnessGraph`].
pub fn vanishes(ws: &[ProductVertex]) -> Result<bool> {
    Ok(!WitnessGraph::new(ws)?.is_connected())
}

/// Whether some partition with at most `max_blocks` blocks satisfies the criterion.
pub fn vanishes_by_partitions(ws: &[ProductVertex], max_blocks: Option<usize>) -> Result<bool> {
    let d = check_tuple(ws)?;
    let limit = max_blocks.unwrap_or(usize::MAX);
    Ok(set_partitions(d)
        .iter()
        .filter(|p| p.len() <= limit)
        .any(|p| PartitionStat::new(p, ws).map(|s| s.forces_vanishing()).unwrap_or(false)))
}

/// The three equivalent vanishing tests on one word tuple: disconnection of the witness
/// graph, a partition with at most two blocks, and an arbitrary partition.
pub fn vanishing_tests(ws: &[ProductVertex]) -> Result<[bool; 3]> {
    Ok([vanishes(ws)?, vanishes_by_partitions(ws, Some(2))?, vanishes_by_partitions(ws, None)?])
}

/// `deg(F_{w_0} ⋯ F_{w_d})`, by expansion in the vertex basis.
pub fn fourier_degree(ws: &[ProductVertex]) -> Result<BigInt> {
    let d = check_tuple(ws)?;
    total_degree(&ProductComplex::hypercube(d), &expand_fourier_monomial(d, ws)?)
}

/// The words `e_1, …, e_d, e_1 + ⋯ + e_d`.
pub fn u1_words(d: usize) -> Vec<ProductVertex> {
    let mut ws: Vec<ProductVertex> = (0..d).map(|i| unit_word(d, i)).collect();
    ws.push(ProductVertex::from_bits(d, (1u32 << d) - 1));
    ws
}

/// Outcome of comparing `F_{e_1} ⋯ F_{e_d} F_{e_1+⋯+e_d}` with `(-4)^d C_0 C_{e_1} C_{e_1+e_2} ⋯`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct U1Report {
    pub dim: usize,
    pub identity_holds: bool,
    pub degree: BigInt,
}

impl U1Report {
    pub fn passes(&self) -> bool {
        self.identity_holds && self.degree == BigInt::from(-4).pow(self.dim as u32)
    }
}

pub fn u1_check(d: usize) -> Result<U1Report> {
    if d == 0 || d > 4 {
        return Err(Error::InvalidArgument(format!("u1 check supports 1 ≤ d ≤ 4, got {d}")));
    }
    let lhs = expand_fourier_monomial(d, &u1_words(d))?;
    let staircase: Vec<ProductVertex> = (0..=d).map(|k| ProductVertex::from_bits(d, (1u32 << k) - 1)).collect();
    let rhs = Polynomial::term(Monomial::from_vertices(&staircase), BigInt::from(-4).pow(d as u32));
    let identity_holds = hypercube_ring(d).is_rationally_zero(&(&lhs - &rhs))?;
    let degree = total_degree(&ProductComplex::hypercube(d), &lhs)?;
    Ok(U1Report { dim: d, identity_holds, degree })
}

/// A coordinate embedding `η: 𝔽₂^r → 𝔽₂^d` placing coordinate `k` at `indices[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inclusion {
    dim: usize,
    indices: Vec<usize>,
}

impl Inclusion {
    /// `indices` must be strictly increasing and below `dim`.
    pub fn new(dim: usize, indices: &[usize]) -> Result<Inclusion> {
        if dim > MAX_DIM || indices.windows(2).any(|w| w[0] >= w[1]) || indices.iter().any(|&i| i >= dim) {
            return Err(Error::InvalidArgument(format!("{indices:?} is not an increasing subset of 0..{dim}")));
        }
        Ok(Inclusion { dim, indices: indices.to_vec() })
    }

    pub fn source_dim(&self) -> usize {
        self.indices.len()
    }

    pub fn target_dim(&self) -> usize {
        self.dim
    }

    /// `η(w)`.
    pub fn apply(&self, w: &ProductVertex) -> ProductVertex {
        let bits =
            self.indices.iter().enumerate().filter(|(k, _)| w.coord(*k) == 1).fold(0u32, |acc, (_, &i)| acc | 1 << i);
        ProductVertex::from_bits(self.dim, bits)
    }

    /// The restriction of a word of `𝔽₂^d` to the chosen coordinates.
    pub fn project(&self, v: &ProductVertex) -> ProductVertex {
        let bits =
            self.indices.iter().enumerate().filter(|(_, &i)| v.coord(i) == 1).fold(0u32, |acc, (k, _)| acc | 1 << k);
        ProductVertex::from_bits(self.indices.len(), bits)
    }

    fn mask(&self) -> u32 {
        self.indices.iter().fold(0, |acc, &i| acc | 1 << i)
    }
}

/// `η_*`: relabels `F̃_w` as `F_{η(w)}`.
pub fn inclusion_pushforward(eta: &Inclusion, p: &DyadicPolynomial) -> Result<DyadicPolynomial> {
    p.expect_basis(Basis::F)?;
    if p.dim != eta.source_dim() {
        return Err(Error::DimensionMismatch { expected: eta.source_dim(), actual: p.dim });
    }
    let poly = p.poly.map_monomials(|m| Some(m.map_vertices(|w| eta.apply(w))));
    DyadicPolynomial::new(eta.dim, Basis::F, poly)
}

/// `η^*`: pullback along the face `□^r → □^d` through the origin spanned by the chosen
/// coordinates, `C_v ↦ C_{v|_I}` when `v` vanishes off `I` and `0` otherwise. `F`-basis input is
/// converted to the vertex basis and back.
pub fn inclusion_pullback(eta: &Inclusion, p: &DyadicPolynomial) -> Result<DyadicPolynomial> {
    if p.dim != eta.dim {
        return Err(Error::DimensionMismatch { expected: eta.dim, actual: p.dim });
    }
    let c = match p.basis {
        Basis::C => p.clone(),
        Basis::F => from_fourier(p)?,
    };
    let off = !eta.mask();
    let poly = c.poly.map_monomials(|m| {
        if m.support().any(|v| v.bits() & off != 0) {
            None
        } else {
            Some(m.map_vertices(|v| eta.project(v)))
        }
    });
    let pulled = DyadicPolynomial::new(eta.source_dim(), Basis::C, poly)?;
    match p.basis {
        Basis::C => Ok(pulled),
        Basis::F => to_fourier(&pulled),
    }
}

/// Word tuples of length `d+1` up to reordering, as sorted tuples.
pub fn sorted_word_tuples(d: usize) -> Vec<Vec<ProductVertex>> {
    let ws = words(d);
    let mut out = Vec::new();
    let mut stack = vec![(Vec::new(), 0usize)];
    while let Some((t, start)) = stack.pop() {
        if t.len() == d + 1 {
            out.push(t);
            continue;
        }
        for (idx, w) in ws.iter().enumerate().skip(start) {
            let mut next: Vec<ProductVertex> = t.clone();
            next.push(*w);
            stack.push((next, idx));
        }
    }
    out.sort();
    out
}

/// Every ordered `(d+1)`-tuple of words.
pub fn all_word_tuples(d: usize) -> Vec<Vec<ProductVertex>> {
    let n = 1usize << d;
    let total = n.pow(d as u32 + 1);
    (0..total)
        .map(|mut code| {
            (0..=d)
                .map(|_| {
                    let w = ProductVertex::from_bits(d, (code % n) as u32);
                    code /= n;
                    w
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ProductVertex {
        parse_word(s).unwrap()
    }

    #[test]
    fn conversions() {
        let f0 = DyadicPolynomial::product(2, Basis::F, &[w("00")]).unwrap();
        let c = from_fourier(&f0).unwrap();
        let expected: Polynomial = Polynomial::sum_of_vars(&words(2));
        assert_eq!(c.to_integer().unwrap(), expected);
        let fe = from_fourier(&DyadicPolynomial::product(1, Basis::F, &[w("1")]).unwrap()).unwrap();
        let mut e = Polynomial::var(w("0"));
        e.add_term(Monomial::var(w("1")), BigInt::from(-1));
        assert_eq!(fe.to_integer().unwrap(), e);
        let p = DyadicPolynomial::product(2, Basis::C, &[w("01"), w("01"), w("11")]).unwrap();
        assert_eq!(from_fourier(&to_fourier(&p).unwrap()).unwrap(), p);
        assert!(to_fourier(&f0).is_err());
        let half = Polynomial::term(Monomial::var(w("1")), BigRational::new(1.into(), 3.into()));
        assert!(matches!(DyadicPolynomial::new(1, Basis::C, half), Err(Error::NonDyadic(_))));
    }

    #[test]
    fn star_relations_are_class_zero() {
        for d in 1..=2 {
            for rel in star_relation_grid(d) {
                assert!(is_class_zero(&star_relation(d, &rel).unwrap()).unwrap(), "{rel}");
            }
        }
    }

    #[test]
    fn presentation_equality_small() {
        for (d, n) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
            let r = presentation_equality_check(d, n).unwrap();
            assert!(r.equal_after_inverting_two(), "{r:?}");
        }
    }

    #[test]
    fn alpha_examples() {
        let p = Partition::new(3, &[vec![0, 1], vec![2]]).unwrap();
        assert_eq!(alpha(&w("110"), &p), 1);
        assert_eq!(alpha(&w("000"), &p), 0);
        assert_eq!(alpha(&w("111"), &p), 2);
        assert!(Partition::new(3, &[vec![0], vec![0, 1, 2]]).is_err());
        assert!(Partition::new(3, &[vec![0, 1]]).is_err());
        let bell: Vec<usize> = (0..6).map(|d| set_partitions(d).len()).collect();
        assert_eq!(bell, vec![1, 1, 2, 5, 15, 52]);
    }

    #[test]
    fn vanishing_examples() {
        assert!(vanishes(&[w("00"), w("11"), w("11")]).unwrap());
        assert!(vanishes(&[w("10"), w("10"), w("10")]).unwrap());
        assert!(fourier_degree(&[w("10"), w("10"), w("10")]).unwrap().is_zero());
        let f = DyadicPolynomial::product(2, Basis::F, &[w("10"), w("10"), w("10")]).unwrap();
        assert!(is_class_zero(&f).unwrap());
        assert!(!vanishes(&[w("10"), w("01"), w("11")]).unwrap());
        // Only the one-block partition certifies this tuple.
        assert!(vanishes_by_partitions(&[w("00"), w("11"), w("11")], Some(2)).unwrap());
        assert!(!set_partitions(2).iter().filter(|p| p.len() == 2).any(|p| vanishing_criterion(
            p,
            &[w("00"), w("11"), w("11")]
        )
        .unwrap()));
        for d in 1..=2 {
            for t in all_word_tuples(d) {
                let [a, b, c] = vanishing_tests(&t).unwrap();
                assert!(a == b && b == c, "{t:?}");
            }
        }
    }

    #[test]
    fn u1_identity() {
        for d in 1..=3 {
            let r = u1_check(d).unwrap();
            assert!(r.passes(), "{r:?}");
        }
        assert_eq!(fourier_degree(&u1_words(2)).unwrap(), BigInt::from(16));
        assert_eq!(fourier_degree(&u1_words(3)).unwrap(), BigInt::from(-64));
    }

    #[test]
    fn inclusion_round_trip() {
        for d in 1..=3 {
            for mask in 0..1u32 << d {
                let idx: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).collect();
                let eta = Inclusion::new(d, &idx).unwrap();
                for v in words(idx.len()) {
                    let f = DyadicPolynomial::product(idx.len(), Basis::F, &[v]).unwrap();
                    let back = inclusion_pullback(&eta, &inclusion_pushforward(&eta, &f).unwrap()).unwrap();
                    assert_eq!(back, f);
                }
            }
        }
        let eta = Inclusion::new(3, &[0, 2]).unwrap();
        let rel = star_relation(2, &StarRelation::R1 { w: w("11") }).unwrap();
        let pushed = inclusion_pushforward(&eta, &rel).unwrap();
        assert_eq!(pushed, star_relation(3, &StarRelation::R1 { w: w("101") }).unwrap());
        assert!(Inclusion::new(3, &[2, 1]).is_err());
    }

    #[test]
    fn supported_products_vanish() {
        // Products of r+2 characters supported on r coordinates are zero.
        let d = 3;
        for mask in [0b001u32, 0b011] {
            let r = mask.count_ones() as usize;
            let supported: Vec<ProductVertex> = words(d).into_iter().filter(|v| v.bits() & !mask == 0).collect();
            for extra in words(d) {
                let mut ws: Vec<ProductVertex> = (0..r + 2).map(|k| supported[k % supported.len()]).collect();
                ws.push(extra);
                ws.truncate(d + 1);
                let p = DyadicPolynomial::product(d, Basis::F, &ws).unwrap();
                assert!(is_class_zero(&p).unwrap(), "{ws:?}");
            }
        }
    }
}
