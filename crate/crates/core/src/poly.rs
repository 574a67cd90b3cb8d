//! Sparse polynomials in the vertex variables `C_v` with exact coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::graph_complex::{Label, ProductVertex};

/// Exact coefficient ring (integers or rationals).
pub trait Coefficient:
    Clone
    + PartialEq
    + Zero
    + One
    + Signed
    + fmt::Display
    + fmt::Debug
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
}

impl<T> Coefficient for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Signed
        + fmt::Display
        + fmt::Debug
        + for<'a> AddAssign<&'a T>
        + for<'a> SubAssign<&'a T>
        + for<'a> MulAssign<&'a T>
{
}

/// A product of vertex variables, stored as sorted `(vertex, exponent)` pairs.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(SmallVec<[(ProductVertex, u32); 4]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(v: ProductVertex) -> Monomial {
        let mut s = SmallVec::new();
        s.push((v, 1));
        Monomial(s)
    }

    /// The monomial of a multiset of vertices.
    pub fn from_vertices<'a>(vs: impl IntoIterator<Item = &'a ProductVertex>) -> Monomial {
        Monomial::from_powers(vs.into_iter().map(|v| (*v, 1)))
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (ProductVertex, u32)>) -> Monomial {
        let mut s: SmallVec<[(ProductVertex, u32); 4]> = powers.into_iter().filter(|&(_, e)| e > 0).collect();
        s.sort_unstable_by_key(|&(v, _)| v);
        let mut out: SmallVec<[(ProductVertex, u32); 4]> = SmallVec::with_capacity(s.len());
        for (v, e) in s {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn powers(&self) -> &[(ProductVertex, u32)] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&(_, e)| e as usize).sum()
    }

    /// Distinct vertices in increasing order.
    pub fn support(&self) -> impl Iterator<Item = &ProductVertex> + '_ {
        self.0.iter().map(|(v, _)| v)
    }

    pub fn support_vec(&self) -> Vec<ProductVertex> {
        self.support().copied().collect()
    }

    pub fn distinct(&self) -> usize {
        self.0.len()
    }

    pub fn multiplicities(&self) -> Vec<u32> {
        self.0.iter().map(|&(_, e)| e).collect()
    }

    /// Vertices repeated according to multiplicity.
    pub fn expanded(&self) -> Vec<ProductVertex> {
        self.0.iter().flat_map(|&(v, e)| std::iter::repeat_n(v, e as usize)).collect()
    }

    pub fn exponent(&self, v: &ProductVertex) -> u32 {
        self.0.binary_search_by(|(w, _)| w.cmp(v)).map_or(0, |i| self.0[i].1)
    }

    /// Square-free, i.e. the monomial of a set.
    pub fn is_square_free(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn mul_var(&self, v: ProductVertex) -> Monomial {
        self.mul(&Monomial::var(v))
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = self.0.clone();
        for &(v, e) in other.0.iter() {
            let i = out.binary_search_by(|(w, _)| w.cmp(&v)).ok()?;
            if out[i].1 < e {
                return None;
            }
            out[i].1 -= e;
        }
        out.retain(|(_, e)| *e > 0);
        Some(Monomial(out))
    }

    pub fn map_vertices(&self, f: impl Fn(&ProductVertex) -> ProductVertex) -> Monomial {
        Monomial::from_powers(self.0.iter().map(|(v, e)| (f(v), *e)))
    }

    pub fn format_with(&self, var: &str, fmt_vertex: &dyn Fn(&ProductVertex) -> String) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(
                |(v, e)| {
                    if *e == 1 {
                        format!("{var}{}", fmt_vertex(v))
                    } else {
                        format!("{var}{}^{e}", fmt_vertex(v))
                    }
                },
            )
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with("C", &|v| v.to_string()))
    }
}

/// A finite sum of monomials with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<C = BigInt> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> Default for Polynomial<C> {
    fn default() -> Self {
        Polynomial::zero()
    }
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Polynomial::term(Monomial::one(), C::one())
    }

    pub fn constant(c: C) -> Self {
        Polynomial::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Polynomial::term(m, C::one())
    }

    pub fn var(v: ProductVertex) -> Self {
        Polynomial::monomial(Monomial::var(v))
    }

    /// `Σ_v C_v` over the given vertices.
    pub fn sum_of_vars<'a>(vs: impl IntoIterator<Item = &'a ProductVertex>) -> Self {
        let mut p = Polynomial::zero();
        for v in vs {
            p.add_term(Monomial::var(*v), C::one());
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Common degree of all terms; `None` for the zero polynomial.
    pub fn homogeneous_degree(&self) -> Result<Option<usize>> {
        let mut deg = None;
        for m in self.terms.keys() {
            let k = m.degree();
            match deg {
                None => deg = Some(k),
                Some(d) if d != k => return Err(Error::NotHomogeneous(d, k)),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Checks homogeneity of degree `k` (the zero polynomial qualifies).
    pub fn expect_degree(&self, k: usize) -> Result<()> {
        match self.homogeneous_degree()? {
            Some(d) if d != k => Err(Error::WrongDegree { expected: k, actual: d }),
            _ => Ok(()),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| {
                let mut a = a.clone();
                a *= c;
                (m.clone(), a)
            })
            .collect();
        Polynomial { terms }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial { terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Polynomial::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Polynomial { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Applies a partial map on monomials; dropped monomials vanish, images are summed.
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Option<Monomial>) -> Self {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if let Some(n) = f(m) {
                out.add_term(n, c.clone());
            }
        }
        out
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// The ring map sending `C_v` to `image(v)`.
    pub fn substitute(&self, image: impl Fn(&ProductVertex) -> Polynomial<C>) -> Self {
        let mut cache: HashMap<(ProductVertex, u32), Polynomial<C>> = HashMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(c.clone());
            for &(v, e) in m.powers() {
                let p = cache.entry((v, e)).or_insert_with(|| image(&v).pow(e));
                acc = &acc * &*p;
                if acc.is_zero() {
                    break;
                }
            }
            out += &acc;
        }
        out
    }

    pub fn format_with(&self, var: &str, fmt_vertex: &dyn Fn(&ProductVertex) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.degree() == 0 {
                s.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    s.push_str(&format!("{a}*"));
                }
                s.push_str(&m.format_with(var, fmt_vertex));
            }
        }
        s
    }
}

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with("C", &|v| v.to_string()))
    }
}

impl<C: Coefficient> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Coefficient> AddAssign<&Polynomial<C>> for Polynomial<C> {
    fn add_assign(&mut self, rhs: &Polynomial<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<C: Coefficient> SubAssign<&Polynomial<C>> for Polynomial<C> {
    fn sub_assign(&mut self, rhs: &Polynomial<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<C: Coefficient> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Coefficient> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Coefficient> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl<C: Coefficient> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut c = x.clone();
                c *= y;
                out.add_term(a.mul(b), c);
            }
        }
        out
    }
}

pub fn to_rational(p: &Polynomial<BigInt>) -> Polynomial<BigRational> {
    p.map_coefficients(|c| BigRational::from_integer(c.clone()))
}

/// `None` if some coefficient is not an integer.
pub fn to_integer(p: &Polynomial<BigRational>) -> Option<Polynomial<BigInt>> {
    let mut out = Polynomial::zero();
    for (m, c) in p.terms() {
        if !c.is_integer() {
            return None;
        }
        out.add_term(m.clone(), c.to_integer());
    }
    Some(out)
}

/// Parses the text syntax, e.g. `3*C(0,1)*C(1,1)^2 - C(0,0)^3`.
///
/// `var` is the variable name (`C` or `F`); `resolve` turns a coordinate tuple into a vertex.
/// Parentheses, rational coefficients `a/b` and integer powers of any factor are accepted.
pub fn parse_polynomial(
    input: &str,
    var: &str,
    resolve: &dyn Fn(&[Label]) -> Result<ProductVertex>,
) -> Result<Polynomial<BigRational>> {
    let mut p = Parser { s: input.as_bytes(), pos: 0, var: var.as_bytes(), resolve };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    var: &'a [u8],
    resolve: &'a dyn Fn(&[Label]) -> Result<ProductVertex>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn expr(&mut self) -> Result<Polynomial<BigRational>> {
        let mut out = Polynomial::zero();
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            if negate {
                out -= &t;
            } else {
                out += &t;
            }
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(out);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<BigRational>> {
        let mut out = self.power()?;
        while self.eat(b'*') {
            out = &out * &self.power()?;
        }
        Ok(out)
    }

    fn power(&mut self) -> Result<Polynomial<BigRational>> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.number()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial<BigRational>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let d = if self.eat(b'/') { self.number()? } else { BigInt::one() };
                if d.is_zero() {
                    return Err(self.error("zero denominator"));
                }
                Ok(Polynomial::constant(BigRational::new(n, d)))
            }
            Some(_) if self.s[self.pos..].starts_with(self.var) => {
                self.pos += self.var.len();
                self.expect(b'(')?;
                let mut labels = Vec::new();
                if self.peek() != Some(b')') {
                    loop {
                        let n = self.number()?;
                        labels.push(Label::try_from(n).map_err(|_| self.error("label out of range"))?);
                        if !self.eat(b',') {
                            break;
                        }
                    }
                }
                self.expect(b')')?;
                let at = self.pos;
                let v = (self.resolve)(&labels).map_err(|e| Error::Parse { pos: at, msg: e.to_string() })?;
                Ok(Polynomial::var(v))
            }
            _ => Err(self.error("expected a coefficient, a variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(c: &[usize]) -> ProductVertex {
        ProductVertex::new(c).unwrap()
    }

    fn raw(labels: &[Label]) -> Result<ProductVertex> {
        ProductVertex::new(&labels.iter().map(|&l| l as usize).collect::<Vec<_>>())
    }

    #[test]
    fn monomial_arithmetic() {
        let a = Monomial::from_vertices(&[pv(&[0, 1]), pv(&[0, 0]), pv(&[0, 1])]);
        assert_eq!(a.degree(), 3);
        assert_eq!(a.distinct(), 2);
        assert_eq!(a.exponent(&pv(&[0, 1])), 2);
        let b = Monomial::var(pv(&[0, 1]));
        assert_eq!(a.div(&b).unwrap().degree(), 2);
        assert_eq!(a.div(&b).unwrap().mul(&b), a);
        assert!(b.div(&a).is_none());
    }

    #[test]
    fn parse_print_round_trip() {
        let text = "3*C(0,1)*C(1,1)^2 - C(0,0)^3";
        let p = parse_polynomial(text, "C", &raw).unwrap();
        assert_eq!(p.len(), 2);
        let printed = p.to_string();
        assert_eq!(parse_polynomial(&printed, "C", &raw).unwrap(), p);
        let q = parse_polynomial("(C(0)+C(1))^2 - 1/2*C(0)*C(1) + 7", "C", &raw).unwrap();
        assert_eq!(parse_polynomial(&q.to_string(), "C", &raw).unwrap(), q);
        assert_eq!(parse_polynomial("0", "C", &raw).unwrap(), Polynomial::zero());
    }

    #[test]
    fn parse_errors() {
        assert!(parse_polynomial("3*", "C", &raw).is_err());
        assert!(parse_polynomial("C(0", "C", &raw).is_err());
        assert!(parse_polynomial("F(0)", "C", &raw).is_err());
        assert!(parse_polynomial("1/0", "C", &raw).is_err());
        assert!(parse_polynomial("C(0) C(1)", "C", &raw).is_err());
    }

    #[test]
    fn homogeneity() {
        let p = parse_polynomial("C(0)*C(1) + C(1)", "C", &raw).unwrap();
        assert!(p.homogeneous_degree().is_err());
        assert_eq!(Polynomial::<BigInt>::zero().homogeneous_degree().unwrap(), None);
    }
}
