//! Python bindings for `gschow`.

use std::collections::HashMap;

use gschow::chow_ring::{rewrite_to_nd, ChowRing};
use gschow::degree::{pairing, total_degree, DivisorFunction};
use gschow::fourier::{self, Basis, DyadicPolynomial};
use gschow::graph_complex::{Label, OrderedGraph, ProductComplex, ProductVertex};
use gschow::poly::{parse_polynomial, to_integer, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(gschow, GschowError, PyValueError, "Raised for invalid input or unsupported sizes.");

fn err(e: gschow::Error) -> PyErr {
    GschowError::new_err(e.to_string())
}

type Graph = (Vec<Label>, Vec<(Label, Label)>);

/// A product of ordered graphs together with its Chow ring.
#[pyclass(frozen, module = "gschow")]
struct Product {
    ring: ChowRing,
}

impl Product {
    fn complex(&self) -> &ProductComplex {
        self.ring.complex()
    }

    fn parse(&self, expr: &str) -> PyResult<Polynomial> {
        let c = self.complex();
        let p = parse_polynomial(expr, "C", &|labels| c.vertex_from_labels(labels)).map_err(err)?;
        to_integer(&p).ok_or_else(|| GschowError::new_err("coefficients must be integers"))
    }

    fn format(&self, p: &Polynomial) -> String {
        p.format_with("C", &|v| self.complex().format_vertex(v))
    }

    fn labels(&self, v: &ProductVertex) -> Vec<Label> {
        self.complex().factors().iter().enumerate().map(|(i, g)| g.label(v.coord(i))).collect()
    }
}

#[pymethods]
impl Product {
    /// `graphs` is a list of `(vertices, edges)` pairs, vertices listed in their order.
    #[new]
    fn new(graphs: Vec<Graph>) -> PyResult<Product> {
        let factors = graphs
            .into_iter()
            .map(|(vertices, edges)| OrderedGraph::new(vertices, &edges))
            .collect::<gschow::Result<Vec<_>>>()
            .map_err(err)?;
        let complex = ProductComplex::product(factors).map_err(err)?;
        Ok(Product { ring: ChowRing::new(complex) })
    }

    /// The product of `d` copies of the single edge.
    #[staticmethod]
    fn hypercube(d: usize) -> Product {
        Product { ring: ChowRing::new(ProductComplex::hypercube(d)) }
    }

    #[getter]
    fn dim(&self) -> usize {
        self.complex().dim()
    }

    #[getter]
    fn cube_count(&self) -> usize {
        self.complex().cubes().len()
    }

    /// Vertices as tuples of labels.
    fn vertices(&self) -> Vec<Vec<Label>> {
        self.complex().vertices().iter().map(|v| self.labels(v)).collect()
    }

    /// Total degree of a polynomial of degree `dim + 1`, e.g. `"C(0,0)^3"`.
    fn degree(&self, expr: &str) -> PyResult<BigInt> {
        total_degree(self.complex(), &self.parse(expr)?).map_err(err)
    }

    /// Rank and invariant factors of the piece of the given degree.
    fn structure(&self, degree: usize) -> PyResult<(usize, Vec<BigInt>)> {
        self.ring.structure(degree).map_err(err)
    }

    /// Basis monomials of the free presentation in the given degree.
    fn basis(&self, degree: usize) -> PyResult<Vec<String>> {
        let ms = self.ring.basis(degree).map_err(err)?;
        Ok(ms.iter().map(|m| m.format_with("C", &|v| self.complex().format_vertex(v))).collect())
    }

    /// The polynomial rewritten onto non-degenerate simplices.
    fn normal_form(&self, expr: &str) -> PyResult<String> {
        let rw = rewrite_to_nd(self.complex(), &self.parse(expr)?).map_err(err)?;
        Ok(self.format(&rw.nd_part))
    }

    /// Coordinates of the class of a homogeneous polynomial.
    fn class_coordinates(&self, expr: &str) -> PyResult<Vec<BigInt>> {
        let p = self.parse(expr)?;
        let degree = p.homogeneous_degree().map_err(err)?.unwrap_or(0);
        Ok(self.ring.class_in_degree(&p, degree).map_err(err)?.coords().to_vec())
    }

    /// Whether a homogeneous polynomial is zero in the Chow ring.
    fn is_zero(&self, expr: &str) -> PyResult<bool> {
        let p = self.parse(expr)?;
        let degree = p.homogeneous_degree().map_err(err)?.unwrap_or(0);
        Ok(self.ring.class_in_degree(&p, degree).map_err(err)?.is_zero())
    }

    /// Degree pairing of `dim + 1` vertex functions given as `{label tuple: number}` dicts.
    fn pairing(&self, functions: Vec<HashMap<Vec<Label>, BigRational>>) -> PyResult<BigRational> {
        let c = self.complex();
        let fs = functions
            .into_iter()
            .map(|f| {
                f.into_iter()
                    .map(|(labels, x)| Ok((c.vertex_from_labels(&labels)?, x)))
                    .collect::<gschow::Result<DivisorFunction>>()
            })
            .collect::<gschow::Result<Vec<_>>>()
            .map_err(err)?;
        pairing(c, &fs).map_err(err)
    }

    fn __repr__(&self) -> String {
        let shape: Vec<String> = self.complex().factors().iter().map(|g| g.labels().len().to_string()).collect();
        format!("Product(dim={}, vertices per factor=[{}])", self.dim(), shape.join(", "))
    }
}

fn words(ws: &[String]) -> PyResult<Vec<ProductVertex>> {
    ws.iter().map(|w| fourier::parse_word(w)).collect::<gschow::Result<_>>().map_err(err)
}

/// Degree of a product of characters given as bitstrings, e.g. `["00", "11", "11"]`.
#[pyfunction]
fn fourier_degree(ws: Vec<String>) -> PyResult<BigInt> {
    fourier::fourier_degree(&words(&ws)?).map_err(err)
}

/// Whether the witness graph of the words is disconnected, which forces degree zero.
#[pyfunction]
fn vanishes(ws: Vec<String>) -> PyResult<bool> {
    fourier::vanishes(&words(&ws)?).map_err(err)
}

fn convert(d: usize, expr: &str, from: Basis) -> PyResult<String> {
    let (var, target) = match from {
        Basis::C => ("C", "F"),
        Basis::F => ("F", "C"),
    };
    let resolve = |labels: &[Label]| {
        if labels.len() != d || labels.iter().any(|&l| l > 1) {
            return Err(gschow::Error::InvalidVertex(format!("{labels:?} is not a 0/1 word of length {d}")));
        }
        ProductVertex::new(&labels.iter().map(|&l| l as usize).collect::<Vec<_>>())
    };
    let p = DyadicPolynomial::new(d, from, parse_polynomial(expr, var, &resolve).map_err(err)?).map_err(err)?;
    let q = match from {
        Basis::C => fourier::to_fourier(&p),
        Basis::F => fourier::from_fourier(&p),
    }
    .map_err(err)?;
    Ok(q.poly().format_with(target, &|v| v.to_string()))
}

/// Rewrites a polynomial in the vertex variables `C(..)` of the d-cube in the characters `F(..)`.
#[pyfunction]
fn to_fourier(d: usize, expr: &str) -> PyResult<String> {
    convert(d, expr, Basis::C)
}

/// Rewrites a polynomial in the characters `F(..)` in the vertex variables `C(..)`.
#[pyfunction]
fn from_fourier(d: usize, expr: &str) -> PyResult<String> {
    convert(d, expr, Basis::F)
}

#[pymodule]
#[pyo3(name = "gschow")]
fn gschow_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("GschowError", m.py().get_type::<GschowError>())?;
    m.add_class::<Product>()?;
    m.add_function(wrap_pyfunction!(fourier_degree, m)?)?;
    m.add_function(wrap_pyfunction!(vanishes, m)?)?;
    m.add_function(wrap_pyfunction!(to_fourier, m)?)?;
    m.add_function(wrap_pyfunction!(from_fourier, m)?)?;
    Ok(())
}
