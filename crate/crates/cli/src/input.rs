//! Reading products, polynomials, cube tuples and vertex functions.

use std::collections::BTreeMap;
use std::path::Path;

use gschow::graph_complex::{Label, OrderedGraph, ProductComplex, ProductVertex};
use gschow::poly::{parse_polynomial, to_integer, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{CliError, CliResult};

/// One factor as written in a product file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub vertices: Vec<Label>,
    pub edges: Vec<[Label; 2]>,
}

/// A product file holds a list of graphs; a single graph object is read as a one-factor product.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum ProductSpec {
    Many(Vec<GraphSpec>),
    One(GraphSpec),
}

pub fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn parse_product(text: &str) -> CliResult<ProductComplex> {
    let spec: ProductSpec = serde_json::from_str(text)?;
    let graphs = match spec {
        ProductSpec::Many(gs) => gs,
        ProductSpec::One(g) => vec![g],
    };
    let factors = graphs
        .into_iter()
        .map(|g| {
            let edges: Vec<(Label, Label)> = g.edges.iter().map(|[a, b]| (*a, *b)).collect();
            OrderedGraph::new(g.vertices, &edges)
        })
        .collect::<gschow::Result<Vec<_>>>()?;
    Ok(ProductComplex::product(factors)?)
}

pub fn load_product(path: &Path) -> CliResult<ProductComplex> {
    parse_product(&read_text(path)?)
}

/// The expression from `--expr` or `--expr-file`.
pub fn expression_text(expr: Option<&str>, expr_file: Option<&Path>) -> CliResult<String> {
    match (expr, expr_file) {
        (Some(e), None) => Ok(e.to_string()),
        (None, Some(p)) => Ok(read_text(p)?.trim().to_string()),
        _ => Err(CliError::Usage("give exactly one of --expr and --expr-file".into())),
    }
}

fn integral(p: Polynomial<BigRational>) -> CliResult<Polynomial> {
    to_integer(&p).ok_or_else(|| CliError::Domain("coefficients must be integers".into()))
}

/// An integer polynomial in `C(labels…)` notation on a product.
pub fn parse_product_polynomial(complex: &ProductComplex, text: &str) -> CliResult<Polynomial> {
    integral(parse_polynomial(text, "C", &|labels| complex.vertex_from_labels(labels))?)
}

fn resolve_word(d: usize, labels: &[Label]) -> gschow::Result<ProductVertex> {
    if labels.len() != d || labels.iter().any(|&l| l > 1) {
        return Err(gschow::Error::InvalidVertex(format!("{labels:?} is not a 0/1 word of length {d}")));
    }
    ProductVertex::new(&labels.iter().map(|&l| l as usize).collect::<Vec<_>>())
}

/// A rational polynomial on `□^d` in the variable `var`, with 0/1 coordinates.
pub fn parse_cube_polynomial(d: usize, var: &str, text: &str) -> CliResult<Polynomial<BigRational>> {
    Ok(parse_polynomial(text, var, &|labels| resolve_word(d, labels))?)
}

pub fn parse_cube_integer_polynomial(d: usize, text: &str) -> CliResult<Polynomial> {
    integral(parse_cube_polynomial(d, "C", text)?)
}

/// Formats a polynomial on a product with vertex labels, in the syntax accepted by the parser.
pub fn format_product_polynomial(complex: &ProductComplex, p: &Polynomial) -> String {
    p.format_with("C", &|v| complex.format_vertex(v))
}

pub fn parse_rational(v: &Value) -> CliResult<BigRational> {
    let bad = || CliError::Json(format!("expected an integer or a \"p/q\" string, found {v}"));
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        _ => return Err(bad()),
    };
    let (num, den) = text.split_once('/').unwrap_or((&text, "1"));
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(CliError::Domain("zero denominator".into()));
    }
    Ok(BigRational::new(num, den))
}

/// Parses a vertex key written as comma-separated labels, e.g. `"0,1"` or `"(0,1)"`.
pub fn parse_vertex_key(complex: &ProductComplex, key: &str) -> CliResult<ProductVertex> {
    let inner = key.trim().trim_start_matches('(').trim_end_matches(')');
    let labels = inner
        .split(',')
        .map(|s| s.trim().parse::<Label>().map_err(|_| CliError::Json(format!("malformed vertex key {key:?}"))))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(complex.vertex_from_labels(&labels)?)
}

/// A vertex-value table `{"a,b": value, …}`; missing vertices are zero.
pub fn parse_function(complex: &ProductComplex, v: &Value) -> CliResult<BTreeMap<ProductVertex, BigRational>> {
    let obj = v.as_object().ok_or_else(|| CliError::Json("a vertex function must be a JSON object".into()))?;
    obj.iter().map(|(k, x)| Ok((parse_vertex_key(complex, k)?, parse_rational(x)?))).collect()
}
