//! Cross-check suites behind `gschow verify`: each check compares a fast path with the
//! lattice oracle or with a closed formula, at sizes that run in seconds.

use gschow::chow_ring::{nd_part, nd_presentation, rewrite_to_nd, ChowRing};
use gschow::degree::{
    dirichlet_pairing_d1, hypercube_degree, hypercube_monomial_degree, pairing, total_degree, ChainMonomial,
    DivisorFunction,
};
use gschow::fourier::{
    all_word_tuples, fourier_degree, is_class_zero, presentation_equality_check, star_relation, star_relation_grid,
    u1_check, vanishing_tests,
};
use gschow::graph_complex::{OrderedGraph, ProductComplex, ProductVertex};
use gschow::localization::{glue, j_map, restrict_tuple};
use gschow::oracle::{degree_oracle, graded_quotient, ideal_membership};
use gschow::poly::{Monomial, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::Suite;
use crate::commands::Outcome;

type Check = std::result::Result<String, String>;

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn products() -> Vec<(&'static str, ProductComplex)> {
    let k = OrderedGraph::complete;
    vec![
        ("K2xK2", ProductComplex::product(vec![k(2), k(2)]).expect("valid")),
        ("K2xK3", ProductComplex::product(vec![k(2), k(3)]).expect("valid")),
        ("P3xK2", ProductComplex::product(vec![OrderedGraph::path(3), k(2)]).expect("valid")),
    ]
}

fn random_polynomial(r: &mut impl Rng, c: &ProductComplex, degree: usize, terms: usize) -> Polynomial {
    let vs = c.vertices();
    let mut p = Polynomial::zero();
    for _ in 0..terms {
        let mut m = Monomial::one();
        for _ in 0..degree {
            m = m.mul_var(*vs.choose(r).expect("nonempty"));
        }
        p.add_term(m, BigInt::from(r.gen_range(-3i64..=3)));
    }
    p
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

fn all_monomials(vs: &[ProductVertex], degree: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut stack = vec![(Monomial::one(), 0usize)];
    while let Some((m, start)) = stack.pop() {
        if m.degree() == degree {
            out.push(m);
            continue;
        }
        for (i, v) in vs.iter().enumerate().skip(start) {
            stack.push((m.mul_var(*v), i));
        }
    }
    out
}

fn power_degrees() -> Check {
    for d in 0..=4 {
        for bits in 0..1u32 << d {
            let v = ProductVertex::from_bits(d, bits);
            let m = Monomial::from_powers([(v, d as u32 + 1)]);
            let got = hypercube_degree(&ChainMonomial::new(d, &m).map_err(fail)?);
            let expected = binomial(d, v.weight()) * if d % 2 == 0 { 1 } else { -1 };
            ensure(got == expected, || format!("C_{v}^{}: {got} vs {expected}", d + 1))?;
            if d <= 3 {
                ensure(degree_oracle(d, &m).map_err(fail)? == got, || format!("oracle disagrees on C_{v}"))?;
            }
        }
    }
    Ok("d <= 4".into())
}

fn formula_vs_oracle(seed: u64) -> Check {
    let mut n = 0;
    for d in 0..=3 {
        for m in all_monomials(&ProductComplex::hypercube(d).vertices(), d + 1) {
            let (a, b) = (hypercube_monomial_degree(d, &m).map_err(fail)?, degree_oracle(d, &m).map_err(fail)?);
            ensure(a == b, || format!("{m:?}: {a} vs {b}"))?;
            n += 1;
        }
    }
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        // A random staircase from 0000 to 1111, sampled with repetition.
        let mut order: Vec<usize> = (0..4).collect();
        order.shuffle(&mut r);
        let chain: Vec<ProductVertex> =
            (0..=4).map(|k| ProductVertex::from_bits(4, order[..k].iter().fold(0, |acc, &i| acc | 1 << i))).collect();
        let picks: Vec<ProductVertex> = (0..5).map(|_| *chain.choose(&mut r).expect("nonempty")).collect();
        let m = Monomial::from_vertices(&picks);
        let (a, b) = (hypercube_monomial_degree(4, &m).map_err(fail)?, degree_oracle(4, &m).map_err(fail)?);
        ensure(a == b, || format!("{m:?}: {a} vs {b}"))?;
    }
    Ok(format!("{n} exhaustive monomials for d <= 3, 100 random staircase monomials at d = 4"))
}

fn structure_vs_oracle() -> Check {
    for (name, c) in products() {
        for k in 0..=c.dim() {
            let nd = nd_presentation(&c, k).map_err(fail)?;
            let q = graded_quotient(&c, k + 1, gschow::oracle::DEFAULT_MAX_CELLS).map_err(fail)?;
            ensure((nd.rank(), nd.torsion()) == (q.rank(), q.torsion()), || format!("{name} k={k}"))?;
        }
        let top = nd_presentation(&c, c.dim()).map_err(fail)?;
        ensure(top.rank() == c.cubes().len(), || format!("{name}: top rank {}", top.rank()))?;
    }
    Ok("all graded pieces of 3 products".into())
}

fn localization(seed: u64) -> Check {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    for (name, c) in products() {
        let ring = ChowRing::new(c.clone());
        for _ in 0..30 {
            let degree = r.gen_range(1..=c.dim() + 1);
            let p = random_polynomial(&mut r, &c, degree, 3);
            let t = restrict_tuple(&c, &p).map_err(fail)?;
            ensure(j_map(&c, &t).map_err(fail)?.iter().all(|(_, cl)| cl.is_zero()), || format!("{name}: j_map {p}"))?;
            let g = glue(&c, &t).map_err(fail)?;
            let same =
                ring.class_in_degree(&g, degree).map_err(fail)? == ring.class_in_degree(&p, degree).map_err(fail)?;
            ensure(same, || format!("{name}: glue(restrict {p})"))?;
        }
    }
    Ok("30 random polynomials per product".into())
}

fn certificates(seed: u64) -> Check {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let ps = products();
    for _ in 0..60 {
        let (name, c) = ps.choose(&mut r).expect("nonempty");
        let degree = r.gen_range(1..=c.dim() + 2);
        let p = random_polynomial(&mut r, c, degree, 4);
        let rw = rewrite_to_nd(c, &p).map_err(fail)?;
        let diff = &p - &rw.nd_part;
        ensure(rw.certificate_polynomial(c).map_err(fail)? == diff, || format!("{name}: certificate of {p}"))?;
        ensure(ideal_membership(c, &diff).map_err(fail)?, || format!("{name}: membership for {p}"))?;
        ensure(nd_part(c, &rw.nd_part).map_err(fail)? == rw.nd_part, || format!("{name}: normal form not stable"))?;
    }
    Ok("60 random polynomials".into())
}

fn graph_pairing(seed: u64) -> Check {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    for g in [OrderedGraph::complete(3), OrderedGraph::complete(4), OrderedGraph::star(3), OrderedGraph::path(5)] {
        let c = ProductComplex::product(vec![g.clone()]).map_err(fail)?;
        let vs = c.vertices();
        for (a, u) in vs.iter().enumerate() {
            for (b, v) in vs.iter().enumerate() {
                let got = total_degree(&c, &Polynomial::monomial(Monomial::from_vertices(&[*u, *v]))).map_err(fail)?;
                let want =
                    if a == b { -BigInt::from(g.valence(a)) } else { BigInt::from(usize::from(g.is_adjacent(a, b))) };
                ensure(got == want, || format!("{g:?}: deg(C_{u} C_{v}) = {got}"))?;
            }
        }
        for _ in 0..10 {
            let mut draw = || -> DivisorFunction {
                vs.iter()
                    .map(|v| (*v, BigRational::new(r.gen_range(-5i64..=5).into(), r.gen_range(1i64..=4).into())))
                    .collect()
            };
            let (f, h) = (draw(), draw());
            let a = dirichlet_pairing_d1(&c, &f, &h).map_err(fail)?;
            let b = pairing(&c, &[f, h]).map_err(fail)?;
            ensure(a == b, || format!("{g:?}: {a} vs {b}"))?;
        }
    }
    Ok("K3, K4, star, path".into())
}

fn fourier_iso() -> Check {
    for d in 1..=2 {
        for n in 1..=d + 1 {
            let rep = presentation_equality_check(d, n).map_err(fail)?;
            ensure(rep.equal_after_inverting_two(), || format!("d={d} degree {n}"))?;
        }
    }
    Ok("d <= 2, degrees 1..=d+1".into())
}

fn fourier_relations() -> Check {
    let mut n = 0;
    for d in 1..=2 {
        for rel in star_relation_grid(d) {
            ensure(is_class_zero(&star_relation(d, &rel).map_err(fail)?).map_err(fail)?, || format!("{rel}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} relations"))
}

fn fourier_vanishing() -> Check {
    let mut n = 0;
    for d in 1..=2 {
        for t in all_word_tuples(d) {
            let [a, b, c] = vanishing_tests(&t).map_err(fail)?;
            ensure(a == b && b == c, || format!("{t:?}: {a} {b} {c}"))?;
            if a {
                ensure(fourier_degree(&t).map_err(fail)? == BigInt::from(0), || format!("{t:?}: nonzero degree"))?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} word tuples"))
}

fn fourier_u1() -> Check {
    for d in 1..=3 {
        let rep = u1_check(d).map_err(fail)?;
        ensure(rep.passes(), || format!("{rep:?}"))?;
    }
    Ok("d <= 3".into())
}

fn run_suite(suite: Suite, seed: u64) -> Vec<(&'static str, Check)> {
    match suite {
        Suite::Degree => vec![("power_degrees", power_degrees()), ("formula_vs_oracle", formula_vs_oracle(seed))],
        Suite::Structure => vec![("nd_presentation_vs_oracle", structure_vs_oracle())],
        Suite::Localization => vec![("glue_restrict_and_kernel", localization(seed))],
        Suite::Rewrite => vec![("certificates", certificates(seed))],
        Suite::Pairing => vec![("graph_pairing_and_dirichlet", graph_pairing(seed))],
        Suite::Fourier => vec![
            ("presentation_after_inverting_2", fourier_iso()),
            ("star_relations_class_zero", fourier_relations()),
            ("vanishing_criteria", fourier_vanishing()),
            ("u1_identity", fourier_u1()),
        ],
    }
}

pub fn verify(suite: Option<Suite>, seed: u64) -> Outcome {
    let suites: Vec<Suite> = suite.map_or_else(|| Suite::ALL.to_vec(), |s| vec![s]);
    let mut passed = true;
    let mut report = Vec::new();
    for s in suites {
        let checks: Vec<Value> = run_suite(s, seed)
            .into_iter()
            .map(|(name, res)| {
                passed &= res.is_ok();
                match res {
                    Ok(detail) => json!({ "check": name, "pass": true, "detail": detail }),
                    Err(detail) => json!({ "check": name, "pass": false, "detail": detail }),
                }
            })
            .collect();
        report.push(json!({ "suite": s.name(), "checks": checks }));
    }
    Outcome { value: json!({ "seed": seed, "pass": passed, "suites": report }), passed }
}
