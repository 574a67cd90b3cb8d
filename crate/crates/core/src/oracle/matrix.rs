use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect();
        write!(f, "{rows:?}")
    }
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntegerMatrix {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> IntegerMatrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        IntegerMatrix { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> IntegerMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        IntegerMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), cols)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Determinant by fraction-free elimination (Bareiss).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        if n == 0 {
            BigInt::one()
        } else {
            sign * a.get(n - 1, n - 1)
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * q;
            if !v.is_zero() {
                self.data[dst * self.cols + j] -= v;
            }
        }
    }

    /// col[dst] -= q * col[src]
    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * q;
            if !v.is_zero() {
                self.data[i * self.cols + dst] -= v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }
}

/// Row-style Hermite normal form `U·A = H`.
///
/// Pivots are positive, entries above a pivot lie in `[0, pivot)`, zero rows come last.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: IntegerMatrix,
    pub u: IntegerMatrix,
    /// Column of the pivot in each nonzero row.
    pub pivots: Vec<usize>,
}

impl Hermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn hermite_normal_form(a: &IntegerMatrix) -> Hermite {
    let mut h = a.clone();
    let mut u = IntegerMatrix::identity(a.nrows());
    let pivots = hermite_in_place(&mut h, Some(&mut u));
    Hermite { h, u, pivots }
}

/// Hermite reduction of `h`, mirroring row operations onto `u` when given.
pub(crate) fn hermite_in_place(h: &mut IntegerMatrix, mut u: Option<&mut IntegerMatrix>) -> Vec<usize> {
    let (m, n) = (h.nrows(), h.ncols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !h.get(i, col).is_zero())
                .min_by(|&x, &y| h.get(x, col).abs().cmp(&h.get(y, col).abs()));
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            if let Some(u) = u.as_deref_mut() {
                u.swap_rows(r, p);
            }
            let mut clean = true;
            for i in r + 1..m {
                if h.get(i, col).is_zero() {
                    continue;
                }
                let q = h.get(i, col).div_floor(h.get(r, col));
                h.sub_row(i, r, &q);
                if let Some(u) = u.as_deref_mut() {
                    u.sub_row(i, r, &q);
                }
                if !h.get(i, col).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(r, col).is_zero() {
            continue;
        }
        if h.get(r, col).is_negative() {
            h.negate_row(r);
            if let Some(u) = u.as_deref_mut() {
                u.negate_row(r);
            }
        }
        for i in 0..r {
            let q = h.get(i, col).div_floor(h.get(r, col));
            h.sub_row(i, r, &q);
            if let Some(u) = u.as_deref_mut() {
                u.sub_row(i, r, &q);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Smith normal form `U·A·V = D` with `d_1 | d_2 | …` on the diagonal.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl Smith {
    /// The nonzero diagonal entries.
    pub fn invariants(&self) -> Vec<BigInt> {
        (0..self.d.nrows().min(self.d.ncols())).map(|i| self.d.get(i, i).clone()).take_while(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().len()
    }

    /// Checks `U·A·V = D`, diagonality and the divisibility chain.
    pub fn verify(&self, a: &IntegerMatrix) -> bool {
        if self.u.mul(a).mul(&self.v) != self.d {
            return false;
        }
        for i in 0..self.d.nrows() {
            for j in 0..self.d.ncols() {
                if i != j && !self.d.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        let inv = self.invariants();
        let n = self.d.nrows().min(self.d.ncols());
        (inv.len()..n).all(|i| self.d.get(i, i).is_zero())
            && inv.iter().all(|x| x.is_positive())
            && inv.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }
}

pub fn smith_normal_form(a: &IntegerMatrix) -> Smith {
    let (m, n) = (a.nrows(), a.ncols());
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);
    for t in 0..m.min(n) {
        let best = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !d.get(i, j).is_zero())
            .min_by(|&(a1, b1), &(a2, b2)| d.get(a1, b1).abs().cmp(&d.get(a2, b2).abs()));
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if !d.get(i, t).is_zero() {
                    let q = d.get(i, t).div_floor(d.get(t, t));
                    d.sub_row(i, t, &q);
                    u.sub_row(i, t, &q);
                    dirty |= !d.get(i, t).is_zero();
                }
            }
            for j in t + 1..n {
                if !d.get(t, j).is_zero() {
                    let q = d.get(t, j).div_floor(d.get(t, t));
                    d.sub_col(j, t, &q);
                    v.sub_col(j, t, &q);
                    dirty |= !d.get(t, j).is_zero();
                }
            }
            if dirty {
                // move the smallest remainder in row/column t onto the diagonal
                let col_best = (t + 1..m)
                    .filter(|&i| !d.get(i, t).is_zero())
                    .min_by(|&x, &y| d.get(x, t).abs().cmp(&d.get(y, t).abs()));
                let row_best = (t + 1..n)
                    .filter(|&j| !d.get(t, j).is_zero())
                    .min_by(|&x, &y| d.get(t, x).abs().cmp(&d.get(t, y).abs()));
                let col_val = col_best.map(|i| d.get(i, t).abs());
                let row_val = row_best.map(|j| d.get(t, j).abs());
                let use_col = match (&col_val, &row_val) {
                    (Some(a), Some(b)) => a <= b,
                    (Some(_), None) => true,
                    _ => false,
                };
                if use_col {
                    let i = col_best.expect("checked");
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                } else {
                    let j = row_best.expect("dirty implies a remainder");
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                }
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(d.get(t, t))));
            match bad {
                Some(i) => {
                    // row_t += row_i
                    let minus_one = -BigInt::one();
                    d.sub_row(t, i, &minus_one);
                    u.sub_row(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { d, u, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_hermite(a: &IntegerMatrix) -> Hermite {
        let h = hermite_normal_form(a);
        assert_eq!(h.u.mul(a), h.h);
        assert!(h.u.determinant().abs().is_one());
        for (r, &c) in h.pivots.iter().enumerate() {
            let p = h.h.get(r, c);
            assert!(p.is_positive());
            for i in 0..r {
                assert!(!h.h.get(i, c).is_negative() && h.h.get(i, c) < p);
            }
            for i in r + 1..a.nrows() {
                assert!(h.h.get(i, c).is_zero());
            }
        }
        h
    }

    #[test]
    fn identity_is_fixed() {
        let i = IntegerMatrix::identity(3);
        let h = check_hermite(&i);
        assert_eq!(h.h, i);
        assert_eq!(h.u, i);
        let s = smith_normal_form(&i);
        assert!(s.verify(&i));
        assert_eq!(s.invariants(), vec![BigInt::one(); 3]);
    }

    #[test]
    fn two_by_two_invariants() {
        let a = IntegerMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&a);
        assert!(s.verify(&a));
        assert_eq!(s.invariants(), vec![BigInt::from(2), BigInt::from(4)]);
        check_hermite(&a);
    }

    #[test]
    fn zero_matrix() {
        let z = IntegerMatrix::zeros(2, 3);
        let h = check_hermite(&z);
        assert_eq!(h.rank(), 0);
        let s = smith_normal_form(&z);
        assert!(s.verify(&z));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn rectangular_examples() {
        let a = IntegerMatrix::from_i64(&[&[4, 6, 10], &[6, 9, 15], &[2, 3, 5], &[0, 0, 7]]);
        let s = smith_normal_form(&a);
        assert!(s.verify(&a));
        assert_eq!(s.invariants(), vec![BigInt::one(), BigInt::from(7)]);
        check_hermite(&a);
        let b = IntegerMatrix::from_i64(&[&[3, -5, 7, 11], &[-2, 4, 0, 6]]);
        assert!(smith_normal_form(&b).verify(&b));
        check_hermite(&b);
    }

    #[test]
    fn determinant_small() {
        let a = IntegerMatrix::from_i64(&[&[2, 1, 0], &[1, 3, 4], &[0, 5, 6]]);
        assert_eq!(a.determinant(), BigInt::from(2 * (18 - 20) - (6)));
    }
}
