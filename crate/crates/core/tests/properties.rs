//! Property tests over randomly drawn polynomials, graphs and maps.

mod common;

use common::{product_list, random_connected_graph, random_polynomial, rng};
use gschow::chow_ring::{nd_part, reduce_mod_i1, rewrite_to_nd, ChowRing};
use gschow::degree::{hypercube_monomial_degree, pairing, total_degree, DivisorFunction};
use gschow::fourier::{
    from_fourier, inclusion_pullback, inclusion_pushforward, to_fourier, vanishes, vanishing_tests, words, Basis,
    DyadicPolynomial, Inclusion,
};
use gschow::graph_complex::{OrderedGraph, ProductComplex, ProductVertex};
use gschow::localization::{permute, permute_complex, restrict, GraphHom};
use gschow::oracle::ideal_membership;
use gschow::poly::{to_rational, Monomial, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn pick_product(seed: u64) -> (&'static str, ProductComplex) {
    let list = product_list();
    list[(seed % list.len() as u64) as usize].clone()
}

fn random_divisor(r: &mut impl Rng, c: &ProductComplex) -> DivisorFunction {
    c.vertices()
        .into_iter()
        .map(|v| (v, BigRational::new(r.gen_range(-4i64..=4).into(), r.gen_range(1i64..=3).into())))
        .collect()
}

/// A random non-decreasing map between complete graphs, which is always a homomorphism.
fn random_monotone(r: &mut impl Rng, from: usize, to: usize) -> Vec<usize> {
    let mut m: Vec<usize> = (0..from).map(|_| r.gen_range(0..to)).collect();
    m.sort_unstable();
    m
}

fn complete_product(sizes: &[usize]) -> ProductComplex {
    ProductComplex::product(sizes.iter().map(|&n| OrderedGraph::complete(n)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduction_mod_nonfaces_is_idempotent_and_multiplicative(seed in any::<u64>()) {
        let (_, c) = pick_product(seed);
        let mut r = rng(seed);
        let p = random_polynomial(&mut r, &c, 2, 4);
        let q = random_polynomial(&mut r, &c, 1, 3);
        let rp = reduce_mod_i1(&c, &p);
        prop_assert_eq!(reduce_mod_i1(&c, &rp), rp.clone());
        let rq = reduce_mod_i1(&c, &q);
        prop_assert_eq!(reduce_mod_i1(&c, &(&p * &q)), reduce_mod_i1(&c, &(&rp * &rq)));
    }

    #[test]
    fn class_zero_matches_oracle(seed in any::<u64>()) {
        let (name, c) = pick_product(seed);
        let mut r = rng(seed);
        let degree = r.gen_range(1..=c.dim() + 1);
        let ring = ChowRing::new(c.clone());
        // Bias toward zero classes by subtracting the normal form.
        let p = random_polynomial(&mut r, &c, degree, 4);
        let candidates = [p.clone(), &p - &nd_part(&c, &p).unwrap()];
        for x in candidates {
            let fast = ring.class_in_degree(&x, degree).unwrap().is_zero();
            prop_assert_eq!(fast, ideal_membership(&c, &x).unwrap(), "{} {}", name, x);
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_certified(seed in any::<u64>()) {
        let (_, c) = pick_product(seed);
        let mut r = rng(seed);
        let degree = r.gen_range(1..=c.dim() + 2);
        let p = random_polynomial(&mut r, &c, degree, 5);
        let rw = rewrite_to_nd(&c, &p).unwrap();
        prop_assert_eq!(nd_part(&c, &rw.nd_part).unwrap(), rw.nd_part.clone());
        prop_assert_eq!(rw.certificate_polynomial(&c).unwrap(), &p - &rw.nd_part);
    }

    #[test]
    fn multiplication_of_classes_matches_products(seed in any::<u64>()) {
        let (_, c) = pick_product(seed);
        let mut r = rng(seed);
        let ring = ChowRing::new(c.clone());
        let a = r.gen_range(1..=c.dim());
        let b = r.gen_range(1..=c.dim() + 1 - a);
        let p = random_polynomial(&mut r, &c, a, 3);
        let q = random_polynomial(&mut r, &c, b, 3);
        let (cp, cq) = (ring.class_in_degree(&p, a).unwrap(), ring.class_in_degree(&q, b).unwrap());
        prop_assert_eq!(ring.multiply(&cp, &cq).unwrap(), ring.class_in_degree(&(&p * &q), a + b).unwrap());
    }

    #[test]
    fn restriction_is_a_ring_map(seed in any::<u64>()) {
        let (_, c) = pick_product(seed);
        let mut r = rng(seed);
        let p = random_polynomial(&mut r, &c, 2, 4);
        let q = random_polynomial(&mut r, &c, 1, 4);
        let cube = c.cubes().choose(&mut r).unwrap().clone();
        prop_assert_eq!(restrict(&c, &(&p * &q), &cube), &restrict(&c, &p, &cube) * &restrict(&c, &q, &cube));
        prop_assert_eq!(restrict(&c, &(&p + &q.mul_monomial(&Monomial::var(c.vertices()[0]))), &cube),
            &restrict(&c, &p, &cube) + &restrict(&c, &q.mul_monomial(&Monomial::var(c.vertices()[0])), &cube));
    }

    #[test]
    fn total_degree_is_class_invariant(seed in any::<u64>()) {
        let (_, c) = pick_product(seed);
        let mut r = rng(seed);
        let p = random_polynomial(&mut r, &c, c.dim() + 1, 5);
        prop_assert_eq!(total_degree(&c, &p).unwrap(), total_degree(&c, &nd_part(&c, &p).unwrap()).unwrap());
    }

    #[test]
    fn pairing_is_symmetric_and_multilinear(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = if seed % 2 == 0 {
            let n = r.gen_range(3..=6);
            ProductComplex::product(vec![random_connected_graph(&mut r, n)]).unwrap()
        } else {
            pick_product(seed / 2).1
        };
        let mut fs: Vec<DivisorFunction> = (0..=c.dim()).map(|_| random_divisor(&mut r, &c)).collect();
        let base = pairing(&c, &fs).unwrap();
        let mut shuffled = fs.clone();
        shuffled.shuffle(&mut r);
        prop_assert_eq!(pairing(&c, &shuffled).unwrap(), base.clone());
        let g = random_divisor(&mut r, &c);
        let (a, b) = (BigRational::from_integer(r.gen_range(-3..=3).into()), BigRational::from_integer(r.gen_range(-3..=3).into()));
        let first = fs[0].clone();
        fs[0] = first.combine(&a, &g, &b);
        let combined = pairing(&c, &fs).unwrap();
        fs[0] = g;
        let other = pairing(&c, &fs).unwrap();
        prop_assert_eq!(combined, a * base + b * other);
    }

    #[test]
    fn pullback_is_functorial_and_preserves_the_ideal(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sizes: Vec<[usize; 3]> = (0..2).map(|_| [r.gen_range(1..=3), r.gen_range(1..=3), r.gen_range(1..=3)]).collect();
        let [a, b, k] = [0, 1, 2].map(|j| complete_product(&[sizes[0][j], sizes[1][j]]));
        let f_maps = (0..2).map(|i| random_monotone(&mut r, sizes[i][0], sizes[i][1])).collect();
        let g_maps = (0..2).map(|i| random_monotone(&mut r, sizes[i][1], sizes[i][2])).collect();
        let f = GraphHom::new(a, b.clone(), f_maps).unwrap();
        let g = GraphHom::new(b, k.clone(), g_maps).unwrap();
        let degree = r.gen_range(1..=3);
        let p = random_polynomial(&mut r, &k, degree, 4);
        let composite = f.then(&g).unwrap();
        prop_assert_eq!(composite.pullback(&p).unwrap(), f.pullback(&g.pullback(&p).unwrap()).unwrap());
        let rel = &p - &nd_part(&k, &p).unwrap();
        prop_assert!(ideal_membership(composite.source(), &composite.pullback(&rel).unwrap()).unwrap());
    }

    #[test]
    fn permutation_preserves_classes_and_degrees(seed in any::<u64>()) {
        let (_, c) = pick_product(seed);
        let mut r = rng(seed);
        let mut sigma: Vec<usize> = (0..c.dim()).collect();
        sigma.shuffle(&mut r);
        let target = permute_complex(&c, &sigma).unwrap();
        let p = random_polynomial(&mut r, &c, c.dim() + 1, 4);
        let moved = permute(&sigma, &p).unwrap();
        prop_assert_eq!(total_degree(&target, &moved).unwrap(), total_degree(&c, &p).unwrap());
        let rel = &p - &nd_part(&c, &p).unwrap();
        prop_assert!(ideal_membership(&target, &permute(&sigma, &rel).unwrap()).unwrap());
    }

    #[test]
    fn fourier_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(1..=3);
        let cube = ProductComplex::hypercube(d);
        let degree = r.gen_range(1..=3);
        let p = random_polynomial(&mut r, &cube, degree, 4);
        let c = DyadicPolynomial::new(d, Basis::C, to_rational(&p)).unwrap();
        prop_assert_eq!(from_fourier(&to_fourier(&c).unwrap()).unwrap(), c);
    }

    #[test]
    fn inclusion_composite_is_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(1..=3);
        let mask = r.gen_range(0..1u32 << d);
        let idx: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).collect();
        let eta = Inclusion::new(d, &idx).unwrap();
        let source = words(idx.len());
        let chosen: Vec<ProductVertex> = (0..2).map(|_| *source.choose(&mut r).unwrap()).collect();
        let mut p = Polynomial::zero();
        p.add_term(Monomial::var(chosen[0]), BigRational::from_integer(BigInt::from(3)));
        p.add_term(Monomial::var(chosen[1]), BigRational::from_integer(BigInt::from(-1)));
        let f = DyadicPolynomial::new(idx.len(), Basis::F, p).unwrap();
        prop_assert_eq!(inclusion_pullback(&eta, &inclusion_pushforward(&eta, &f).unwrap()).unwrap(), f);
    }

    #[test]
    fn vanishing_criteria_agree_in_dimension_four(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ws: Vec<ProductVertex> = (0..5).map(|_| ProductVertex::from_bits(4, r.gen_range(0..16))).collect();
        let [a, b, c] = vanishing_tests(&ws).unwrap();
        prop_assert!(a == b && b == c, "{:?}", ws);
        prop_assert_eq!(a, vanishes(&ws).unwrap());
    }

    #[test]
    fn degree_of_non_chains_is_zero(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(1..=5);
        let cube = ProductComplex::hypercube(d);
        let m = common::random_monomial(&mut r, &cube, d + 1);
        let deg = hypercube_monomial_degree(d, &m).unwrap();
        if !cube.is_simplex(&m.support_vec()) {
            prop_assert_eq!(deg, BigInt::from(0));
        }
    }
}
