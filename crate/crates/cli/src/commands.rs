//! One function per subcommand, each producing a JSON report.

use std::collections::BTreeMap;
use std::path::Path;

use gschow::chow_ring::{rewrite_to_nd, ChowRing};
use gschow::degree::{pairing, total_degree, DivisorFunction};
use gschow::fourier::{
    format_word, fourier_degree, from_fourier, is_class_zero, parse_word, presentation_equality_check, star_relation,
    star_relation_grid, to_fourier, vanishes, vanishing_tests, Basis, DyadicPolynomial, WitnessGraph,
};
use gschow::graph_complex::{ProductComplex, ProductVertex};
use gschow::localization::{glue, restrict_tuple, CubeTuple};
use gschow::poly::Polynomial;
use serde_json::{json, Value};

use crate::args::{BasisArg, ExprArg, ProductArg};
use crate::error::{CliError, CliResult};
use crate::input::{
    expression_text, format_product_polynomial, load_product, parse_cube_integer_polynomial, parse_cube_polynomial,
    parse_function, parse_product_polynomial, read_text,
};
use crate::output::{int, ints, rational};

/// A report, and whether the checks it describes passed.
#[derive(Debug)]
pub struct Outcome {
    pub value: Value,
    pub passed: bool,
}

impl From<Value> for Outcome {
    fn from(value: Value) -> Outcome {
        Outcome { value, passed: true }
    }
}

fn load_expr(complex: &ProductComplex, expr: &ExprArg) -> CliResult<Polynomial> {
    let text = expression_text(expr.expr.as_deref(), expr.expr_file.as_deref())?;
    parse_product_polynomial(complex, &text)
}

pub fn deg(product: &ProductArg, expr: &ExprArg) -> CliResult<Outcome> {
    let complex = load_product(&product.product)?;
    let p = load_expr(&complex, expr)?;
    let degree = total_degree(&complex, &p)?;
    Ok(json!({ "degree": int(&degree) }).into())
}

pub fn basis(product: &ProductArg, k: Option<usize>, list: bool, max_cells: usize) -> CliResult<Outcome> {
    let complex = load_product(&product.product)?;
    let d = complex.dim();
    let ks: Vec<usize> = match k {
        Some(k) if k > d => return Err(CliError::Domain(format!("k = {k} exceeds the dimension {d}"))),
        Some(k) => vec![k],
        None => (0..=d).collect(),
    };
    let ring = ChowRing::with_limit(complex.clone(), max_cells);
    let mut pieces = Vec::new();
    for k in ks {
        let pres = ring.presentation(k)?;
        let mut piece = json!({
            "k": k,
            "degree": k + 1,
            "generators": pres.basis().len(),
            "relations": pres.relation_count(),
            "rank": pres.rank(),
            "invariant_factors": ints(&pres.torsion()),
        });
        if list {
            let names: Vec<String> =
                pres.basis().iter().map(|m| m.format_with("C", &|v| complex.format_vertex(v))).collect();
            piece["basis"] = json!(names);
        }
        pieces.push(piece);
    }
    Ok(json!({ "dim": d, "cubes": complex.cubes().len(), "pieces": pieces }).into())
}

pub fn reduce(product: &ProductArg, expr: &ExprArg, certificate: bool, max_cells: usize) -> CliResult<Outcome> {
    let complex = load_product(&product.product)?;
    let p = load_expr(&complex, expr)?;
    let degree = p.homogeneous_degree()?.unwrap_or(0);
    let rw = rewrite_to_nd(&complex, &p)?;
    let ring = ChowRing::with_limit(complex.clone(), max_cells);
    let class = ring.class_in_degree(&p, degree)?;
    let mut out = json!({
        "degree": degree,
        "nd_part": format_product_polynomial(&complex, &rw.nd_part),
        "class": ints(class.coords()),
        "class_is_zero": class.is_zero(),
        "certificate_terms": rw.certificate.len(),
    });
    if certificate {
        let terms: Vec<Value> = rw
            .certificate
            .iter()
            .map(|t| {
                json!({
                    "coeff": int(&t.coeff),
                    "multiplier": t.multiplier.format_with("C", &|v| complex.format_vertex(v)),
                    "relation": t.relation.to_string(),
                })
            })
            .collect();
        out["certificate"] = Value::Array(terms);
    }
    Ok(out.into())
}

pub fn restrict(product: &ProductArg, expr: &ExprArg) -> CliResult<Outcome> {
    let complex = load_product(&product.product)?;
    let p = load_expr(&complex, expr)?;
    let tuple = restrict_tuple(&complex, &p)?;
    let parts: serde_json::Map<String, Value> =
        tuple.parts().iter().map(|(cube, q)| (complex.format_cube(cube), Value::String(q.to_string()))).collect();
    Ok(json!({ "degree": tuple.degree(), "parts": parts }).into())
}

pub fn glue_tuple(product: &ProductArg, tuple: &Path) -> CliResult<Outcome> {
    let complex = load_product(&product.product)?;
    let v: Value = serde_json::from_str(&read_text(tuple)?)?;
    let degree =
        v["degree"].as_u64().ok_or_else(|| CliError::Json("missing integer field \"degree\"".into()))? as usize;
    let obj = v["parts"].as_object().ok_or_else(|| CliError::Json("missing object field \"parts\"".into()))?;
    let mut parts = BTreeMap::new();
    for (key, text) in obj {
        let text = text.as_str().ok_or_else(|| CliError::Json(format!("part {key:?} must be a string")))?;
        parts.insert(complex.parse_cube(key)?, parse_cube_integer_polynomial(complex.dim(), text)?);
    }
    let t = CubeTuple::new(&complex, degree, parts)?;
    let glued = glue(&complex, &t)?;
    Ok(json!({ "degree": degree, "glued": format_product_polynomial(&complex, &glued) }).into())
}

pub fn pairing_cmd(product: &ProductArg, functions: &Path) -> CliResult<Outcome> {
    let complex = load_product(&product.product)?;
    let v: Value = serde_json::from_str(&read_text(functions)?)?;
    let items = v.as_array().ok_or_else(|| CliError::Json("expected a list of vertex functions".into()))?;
    let fs = items
        .iter()
        .map(|f| parse_function(&complex, f).map(|m| m.into_iter().collect::<DivisorFunction>()))
        .collect::<CliResult<Vec<_>>>()?;
    let value = pairing(&complex, &fs)?;
    Ok(json!({ "pairing": rational(&value) }).into())
}

fn format_dyadic(p: &DyadicPolynomial) -> String {
    let var = match p.basis() {
        Basis::C => "C",
        Basis::F => "F",
    };
    p.poly().format_with(var, &|v| v.to_string())
}

pub fn fourier_convert(d: usize, from: BasisArg, expr: &ExprArg) -> CliResult<Outcome> {
    let text = expression_text(expr.expr.as_deref(), expr.expr_file.as_deref())?;
    let (var, basis) = match from {
        BasisArg::C => ("C", Basis::C),
        BasisArg::F => ("F", Basis::F),
    };
    let p = DyadicPolynomial::new(d, basis, parse_cube_polynomial(d, var, &text)?)?;
    let converted = match basis {
        Basis::C => to_fourier(&p)?,
        Basis::F => from_fourier(&p)?,
    };
    Ok(json!({ "input": format_dyadic(&p), "output": format_dyadic(&converted) }).into())
}

fn parse_words(words: &[String]) -> CliResult<Vec<ProductVertex>> {
    let ws = words.iter().map(|w| parse_word(w)).collect::<gschow::Result<Vec<_>>>()?;
    let d = ws.len() - 1;
    if let Some(w) = ws.iter().find(|w| w.dim() != d) {
        return Err(CliError::Domain(format!("{} words need length {d}, found {}", ws.len(), format_word(w))));
    }
    Ok(ws)
}

pub fn fourier_deg(words: &[String]) -> CliResult<Outcome> {
    let ws = parse_words(words)?;
    let degree = fourier_degree(&ws)?;
    Ok(json!({ "degree": int(&degree), "vanishes": vanishes(&ws)? }).into())
}

pub fn fourier_vanish(words: &[String]) -> CliResult<Outcome> {
    let ws = parse_words(words)?;
    let [disconnected, two_blocks, any_partition] = vanishing_tests(&ws)?;
    let components: Vec<Value> = WitnessGraph::new(&ws)?
        .components()
        .into_iter()
        .map(|(w, c)| json!({ "words": w, "coordinates": c }))
        .collect();
    Ok(json!({
        "vanishes": disconnected,
        "partition_with_at_most_two_blocks": two_blocks,
        "any_partition": any_partition,
        "components": components,
    })
    .into())
}

pub fn fourier_check_relations(d: usize) -> CliResult<Outcome> {
    if d == 0 || d > 3 {
        return Err(CliError::Domain(format!("relation check supports 1 <= d <= 3, got {d}")));
    }
    let mut failures = Vec::new();
    let grid = star_relation_grid(d);
    for rel in &grid {
        if !is_class_zero(&star_relation(d, rel)?)? {
            failures.push(rel.to_string());
        }
    }
    let passed = failures.is_empty();
    let value = json!({ "d": d, "relations": grid.len(), "failures": failures });
    Ok(Outcome { value, passed })
}

pub fn fourier_check_iso(d: usize, degree: Option<usize>) -> CliResult<Outcome> {
    let degrees: Vec<usize> = match degree {
        Some(n) => vec![n],
        None => (1..=d + 1).collect(),
    };
    let mut passed = true;
    let mut reports = Vec::new();
    for n in degrees {
        let r = presentation_equality_check(d, n)?;
        passed &= r.equal_after_inverting_two();
        reports.push(json!({
            "degree": n,
            "monomials": r.columns,
            "classic_rank": r.classic_rank,
            "star_rank": r.star_rank,
            "classic_invariant_factors": ints(&r.classic_torsion),
            "star_invariant_factors": ints(&r.star_torsion),
            "equal_after_inverting_2": r.equal_after_inverting_two(),
            "equal_over_z": r.equal_over_z,
        }));
    }
    Ok(Outcome { value: json!({ "d": d, "degrees": reports }), passed })
}
