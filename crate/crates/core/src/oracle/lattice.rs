use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{hermite_in_place, smith_normal_form, IntegerMatrix, Smith};

/// Sparse integer vector: `(column, value)` sorted by column, no zero values.
pub type SparseVec = Vec<(usize, BigInt)>;

/// A sublattice of `ℤ^n` given by generators, prepared for coset and membership queries.
///
/// Generators are first eliminated along unit entries; the rows that survive form a small
/// residual block which gets a dense Hermite form (canonical representatives) and a Smith
/// form (invariant factors and quotient coordinates).
#[derive(Clone, Debug)]
pub struct Lattice {
    ncols: usize,
    /// `(column, row)` with the row's entry at `column` equal to 1, in elimination order.
    pivots: Vec<(usize, SparseVec)>,
    /// Non-pivot columns in increasing order.
    residual_cols: Vec<usize>,
    /// Nonzero rows of the Hermite form of the residual block, with their pivot columns.
    hermite: Vec<Vec<BigInt>>,
    hermite_pivots: Vec<usize>,
    /// Smith data of the residual Hermite block.
    smith: Smith,
    residual_block: IntegerMatrix,
}

impl Lattice {
    pub fn new(ncols: usize, rows: Vec<SparseVec>) -> Lattice {
        let mut store: Vec<Option<SparseVec>> = Vec::with_capacity(rows.len());
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
        let mut heap = BinaryHeap::new();
        for r in rows {
            let r: SparseVec = r.into_iter().filter(|(_, x)| !x.is_zero()).collect();
            if r.is_empty() {
                continue;
            }
            let id = store.len();
            for (c, _) in &r {
                col_rows[*c].insert(id);
            }
            heap.push(Reverse((r.len(), id)));
            store.push(Some(r));
        }

        let mut pivots = Vec::new();
        while let Some(Reverse((len, id))) = heap.pop() {
            let Some(row) = store[id].as_ref() else { continue };
            if row.len() != len {
                continue;
            }
            let choice = row
                .iter()
                .filter(|(_, x)| x.abs().is_one())
                .min_by_key(|(c, _)| (col_rows[*c].len(), *c))
                .map(|(c, x)| (*c, x.is_negative()));
            let Some((col, negative)) = choice else { continue };
            let mut prow = store[id].take().expect("row present");
            for (c, _) in &prow {
                col_rows[*c].remove(&id);
            }
            if negative {
                for (_, x) in prow.iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
            let others: Vec<usize> = col_rows[col].iter().copied().collect();
            for other in others {
                let orow = store[other].take().expect("indexed row present");
                let a = orow.iter().find(|(c, _)| *c == col).map(|(_, x)| x.clone()).expect("column indexed");
                let merged = axpy(&orow, &prow, &a);
                for (c, _) in &orow {
                    col_rows[*c].remove(&other);
                }
                for (c, _) in &merged {
                    col_rows[*c].insert(other);
                }
                if !merged.is_empty() {
                    heap.push(Reverse((merged.len(), other)));
                    store[other] = Some(merged);
                }
            }
            pivots.push((col, prow));
        }

        let mut is_pivot = vec![false; ncols];
        for (c, _) in &pivots {
            is_pivot[*c] = true;
        }
        let residual_cols: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
        let mut residual_index = vec![None; ncols];
        for (i, &c) in residual_cols.iter().enumerate() {
            residual_index[c] = Some(i);
        }
        let m = residual_cols.len();
        let dense_rows: Vec<Vec<BigInt>> = store
            .into_iter()
            .flatten()
            .map(|r| {
                let mut d = vec![BigInt::zero(); m];
                for (c, x) in r {
                    d[residual_index[c].expect("residual rows avoid pivot columns")] = x;
                }
                d
            })
            .collect();
        let mut h = IntegerMatrix::from_rows(dense_rows, m);
        let hermite_pivots = hermite_in_place(&mut h, None);
        let hermite: Vec<Vec<BigInt>> = (0..hermite_pivots.len()).map(|i| h.row(i).to_vec()).collect();
        let residual_block = IntegerMatrix::from_rows(hermite.clone(), m);
        let smith = smith_normal_form(&residual_block);
        Lattice { ncols, pivots, residual_cols, hermite, hermite_pivots, smith, residual_block }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Rank of the lattice.
    pub fn rank(&self) -> usize {
        self.pivots.len() + self.hermite.len()
    }

    /// Free rank of `ℤ^n / L`.
    pub fn quotient_rank(&self) -> usize {
        self.ncols - self.rank()
    }

    /// Invariant factors of the lattice (including the units from elimination).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::one(); self.pivots.len()];
        out.extend(self.smith.invariants());
        out
    }

    /// Invariant factors greater than one, i.e. the torsion of the quotient.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.smith.invariants().into_iter().filter(|x| !x.is_one()).collect()
    }

    pub fn pivot_count(&self) -> usize {
        self.pivots.len()
    }

    pub fn residual_size(&self) -> (usize, usize) {
        (self.hermite.len(), self.residual_cols.len())
    }

    /// Checks the stored Smith transformation by multiplication.
    pub fn verify(&self) -> bool {
        self.smith.verify(&self.residual_block)
    }

    /// Subtracts pivot rows until `x` is supported on non-pivot columns.
    fn eliminate(&self, x: &mut [BigInt]) {
        for (c, row) in &self.pivots {
            if x[*c].is_zero() {
                continue;
            }
            let a = x[*c].clone();
            for (j, v) in row {
                x[*j] -= &a * v;
            }
        }
    }

    fn residual_vector(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ncols, "vector length does not match the lattice");
        let mut y = x.to_vec();
        self.eliminate(&mut y);
        self.residual_cols.iter().map(|&c| std::mem::take(&mut y[c])).collect()
    }

    /// The canonical representative of `x + L`.
    pub fn canonical(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.residual_vector(x);
        for (row, &p) in self.hermite.iter().zip(&self.hermite_pivots) {
            if y[p].is_zero() {
                continue;
            }
            let q = y[p].div_floor(&row[p]);
            if q.is_zero() {
                continue;
            }
            for (t, v) in y.iter_mut().zip(row) {
                if !v.is_zero() {
                    *t -= &q * v;
                }
            }
        }
        let mut out = vec![BigInt::zero(); self.ncols];
        for (i, v) in y.into_iter().enumerate() {
            out[self.residual_cols[i]] = v;
        }
        out
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.canonical(x).iter().all(Zero::is_zero)
    }

    /// Coordinates of `x` in `ℤ^n / L ≅ ⊕ ℤ/d_i ⊕ ℤ^r`: the torsion part (reduced modulo each
    /// invariant factor, units included) and the free part.
    pub fn quotient_coordinates(&self, x: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let y = self.residual_vector(x);
        let v = &self.smith.v;
        let z: Vec<BigInt> = (0..v.ncols())
            .map(|j| y.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(i, a)| a * v.get(i, j)).sum())
            .collect();
        let inv = self.smith.invariants();
        let torsion = inv.iter().zip(&z).map(|(d, zi)| zi.mod_floor(d)).collect();
        let free = z[inv.len()..].to_vec();
        (torsion, free)
    }

    /// Membership of `x` in the saturation of `L` at `prime`, i.e. in `L ⊗ ℤ[1/p] ∩ ℤ^n`.
    pub fn contains_saturated(&self, x: &[BigInt], prime: u32) -> bool {
        let p = BigInt::from(prime);
        let (_, free) = self.quotient_coordinates(x);
        if free.iter().any(|f| !f.is_zero()) {
            return false;
        }
        let y = self.residual_vector(x);
        let v = &self.smith.v;
        self.smith.invariants().iter().enumerate().all(|(j, d)| {
            let mut odd = d.clone();
            while odd.is_multiple_of(&p) {
                odd /= &p;
            }
            let zj: BigInt = y.iter().enumerate().map(|(i, a)| a * v.get(i, j)).sum();
            zj.is_multiple_of(&odd)
        })
    }

    /// The residual Hermite rows re-expanded to full length (a generating set for the
    /// residual part of the lattice).
    pub fn residual_generators(&self) -> Vec<Vec<BigInt>> {
        self.hermite
            .iter()
            .map(|r| {
                let mut out = vec![BigInt::zero(); self.ncols];
                for (i, v) in r.iter().enumerate() {
                    out[self.residual_cols[i]] = v.clone();
                }
                out
            })
            .collect()
    }
}

/// `x - a·y` for sparse vectors.
fn axpy(x: &SparseVec, y: &SparseVec, a: &BigInt) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(a * &y[j].1)));
            j += 1;
        } else {
            let v = &x[i].1 - a * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(c, x)| (c, BigInt::from(x))).collect()
    }

    fn dv(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn unit_rows_and_torsion() {
        // ℤ^3 / <e0 - e1, 2 e1, 3 e2> ≅ ℤ/2 ⊕ ℤ/3 ≅ ℤ/6
        let l = Lattice::new(3, vec![sv(&[(0, 1), (1, -1)]), sv(&[(1, 2)]), sv(&[(2, 3)])]);
        assert_eq!(l.quotient_rank(), 0);
        assert!(l.verify());
        let t: Vec<BigInt> = l.torsion();
        assert_eq!(t.iter().product::<BigInt>(), BigInt::from(6));
        assert!(l.contains(&dv(&[2, 0, 0])));
        assert!(!l.contains(&dv(&[1, 0, 0])));
        assert!(l.contains_saturated(&dv(&[1, 0, 0]), 2));
        assert!(!l.contains_saturated(&dv(&[0, 0, 1]), 2));
        assert_eq!(l.canonical(&dv(&[1, 0, 0])), l.canonical(&dv(&[0, 1, 0])));
    }

    #[test]
    fn free_quotient_coordinates() {
        let l = Lattice::new(3, vec![sv(&[(0, 1), (1, 1)]), sv(&[(1, 1), (2, 1)])]);
        assert_eq!(l.quotient_rank(), 1);
        let (_, f0) = l.quotient_coordinates(&dv(&[1, 0, 0]));
        let (_, f1) = l.quotient_coordinates(&dv(&[0, 1, 0]));
        assert_eq!(f0.len(), 1);
        assert_eq!(&f0[0] + &f1[0], BigInt::zero());
        assert!(f0[0].abs().is_one());
    }

    #[test]
    fn empty_lattice() {
        let l = Lattice::new(2, vec![]);
        assert_eq!(l.quotient_rank(), 2);
        assert_eq!(l.canonical(&dv(&[3, -1])), dv(&[3, -1]));
        assert!(l.contains(&dv(&[0, 0])));
    }

    #[test]
    fn canonical_is_coset_invariant() {
        let rows = vec![sv(&[(0, 2), (1, 4)]), sv(&[(0, 6), (1, 8), (2, 2)]), sv(&[(2, 4), (3, 1)])];
        let l = Lattice::new(4, rows.clone());
        let x = dv(&[5, -3, 7, 2]);
        let mut y = x.clone();
        for (r, k) in rows.iter().zip([3, -2, 5]) {
            for (c, v) in r {
                y[*c] += v * BigInt::from(k);
            }
        }
        assert_eq!(l.canonical(&x), l.canonical(&y));
    }
}
