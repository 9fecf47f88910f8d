//! Dense matrices over a single local component `Z/p^s`.
//!
//! Everything over a product ring is assembled from these per-component
//! routines: residue-field rank, unit-pivot Gauss-Jordan inversion, the
//! column-operation completion `AS = (I_m | 0)`, and Howell normal forms for
//! arbitrary row modules.

use crate::error::{Error, Result};
use crate::ring::LocalRingSpec;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComponentMatrix {
    local: LocalRingSpec,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ComponentMatrix {
    pub fn new(local: LocalRingSpec, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&v) = data.iter().find(|&&v| v >= local.order()) {
            return Err(Error::ResidueOutOfRange {
                value: v,
                order: local.order(),
            });
        }
        Ok(ComponentMatrix {
            local,
            rows,
            cols,
            data,
        })
    }

    pub fn from_ints(
        local: LocalRingSpec,
        rows: usize,
        cols: usize,
        values: &[i64],
    ) -> Result<Self> {
        Self::new(
            local,
            rows,
            cols,
            values.iter().map(|&v| local.reduce(v)).collect(),
        )
    }

    pub(crate) fn from_rows(local: LocalRingSpec, cols: usize, rows: Vec<Vec<u64>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            debug_assert_eq!(r.len(), cols);
            data.extend(r);
        }
        ComponentMatrix {
            local,
            rows: n,
            cols,
            data,
        }
    }

    pub fn zeros(local: LocalRingSpec, rows: usize, cols: usize) -> Self {
        ComponentMatrix {
            local,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(local: LocalRingSpec, n: usize) -> Self {
        let mut m = Self::zeros(local, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % local.order();
        }
        m
    }

    pub fn local(&self) -> LocalRingSpec {
        self.local
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &ComponentMatrix) -> Result<ComponentMatrix> {
        if self.local != other.local {
            return Err(Error::RingMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let q = self.local.order() as u128;
        let mut out = Self::zeros(self.local, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: u128 = 0;
                for k in 0..self.cols {
                    acc += self.get(i, k) as u128 * other.get(k, j) as u128;
                }
                out.set(i, j, (acc % q) as u64);
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> ComponentMatrix {
        let mut out = Self::zeros(self.local, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn stack(&self, other: &ComponentMatrix) -> Result<ComponentMatrix> {
        if self.local != other.local {
            return Err(Error::RingMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} over {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(ComponentMatrix {
            local: self.local,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn select_rows(&self, rows: &[usize]) -> ComponentMatrix {
        let data = rows
            .iter()
            .flat_map(|&r| self.row(r).iter().copied())
            .collect();
        ComponentMatrix {
            local: self.local,
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> ComponentMatrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            data.extend(cols.iter().map(|&c| self.get(i, c)));
        }
        ComponentMatrix {
            local: self.local,
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    /// Entrywise image in the residue field `Z/p`.
    pub fn residue(&self) -> ComponentMatrix {
        let p = self.local.prime();
        ComponentMatrix {
            local: self.local.residue_field(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v % p).collect(),
        }
    }

    /// Reduced row echelon form of the residue image over `F_p`, with the
    /// pivot columns.
    pub fn residue_rref(&self) -> (ComponentMatrix, Vec<usize>) {
        let mut m = self.residue();
        let f = m.local;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("nonzero in a field");
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r {
                    let factor = m.get(i, c);
                    if factor != 0 {
                        m.add_row_multiple(i, r, f.neg(factor));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Row rank of the residue image over `F_p`.
    pub fn rank_residue(&self) -> usize {
        self.residue_rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn scale_row(&mut self, r: usize, k: u64) {
        for j in 0..self.cols {
            let v = self.get(r, j);
            self.set(r, j, self.local.mul(v, k));
        }
    }

    fn scale_col(&mut self, c: usize, k: u64) {
        for i in 0..self.rows {
            let v = self.get(i, c);
            self.set(i, c, self.local.mul(v, k));
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: u64) {
        for j in 0..self.cols {
            let v = self
                .local
                .add(self.get(dst, j), self.local.mul(k, self.get(src, j)));
            self.set(dst, j, v);
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: u64) {
        for i in 0..self.rows {
            let v = self
                .local
                .add(self.get(i, dst), self.local.mul(k, self.get(i, src)));
            self.set(i, dst, v);
        }
    }

    /// Two-sided inverse by unit-pivot Gauss-Jordan, or `None` when the
    /// residue image is singular.
    pub fn inverse(&self) -> Option<ComponentMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(self.local, n);
        for c in 0..n {
            let pr = (c..n).find(|&i| self.local.is_unit(a.get(i, c)))?;
            a.swap_rows(c, pr);
            inv.swap_rows(c, pr);
            let u = self.local.inv(a.get(c, c))?;
            a.scale_row(c, u);
            inv.scale_row(c, u);
            for i in 0..n {
                if i != c {
                    let factor = a.get(i, c);
                    if factor != 0 {
                        let k = self.local.neg(factor);
                        a.add_row_multiple(i, c, k);
                        inv.add_row_multiple(i, c, k);
                    }
                }
            }
        }
        Some(inv)
    }

    /// Some invertible `S` with `self * S = (I_m | 0)`, built from column
    /// operations only. At step `r` the first unit of row `r` at or right of
    /// column `r` becomes the pivot; it is swapped into place, scaled to 1,
    /// and used to clear the rest of its row. The unit lower-triangular block
    /// left on the first `m` columns is cleared last. `None` when the rows
    /// are not unimodular.
    pub fn completion(&self) -> Option<ComponentMatrix> {
        let (m, n) = (self.rows, self.cols);
        if m > n {
            return None;
        }
        let f = self.local;
        let mut w = self.clone();
        let mut s = Self::identity(f, n);
        for r in 0..m {
            let c = (r..n).find(|&j| f.is_unit(w.get(r, j)))?;
            w.swap_cols(r, c);
            s.swap_cols(r, c);
            let u = f.inv(w.get(r, r))?;
            w.scale_col(r, u);
            s.scale_col(r, u);
            for j in 0..n {
                if j != r {
                    let a = w.get(r, j);
                    if a != 0 {
                        let k = f.neg(a);
                        w.add_col_multiple(j, r, k);
                        s.add_col_multiple(j, r, k);
                    }
                }
            }
        }
        // w is now (L | 0) with L unit lower triangular.
        for i in 1..m {
            for j in 0..i {
                let a = w.get(i, j);
                if a != 0 {
                    let k = f.neg(a);
                    w.add_col_multiple(j, i, k);
                    s.add_col_multiple(j, i, k);
                }
            }
        }
        debug_assert!((0..m).all(|i| (0..n).all(|j| w.get(i, j) == u64::from(i == j))));
        Some(s)
    }

    /// Howell normal form of the row module: echelon, pivots equal to
    /// `p^e`, entries above each pivot reduced below it, zero rows dropped,
    /// and closed under the Howell property (the rows whose first `j`
    /// entries vanish span every module element whose first `j` entries
    /// vanish). Two matrices span the same module iff their forms agree.
    pub fn howell_form(&self) -> ComponentMatrix {
        let f = self.local;
        let n = self.cols;
        let mut pending: Vec<Vec<u64>> = self
            .row_vecs()
            .into_iter()
            .filter(|r| r.iter().any(|&v| v != 0))
            .collect();
        let mut basis: Vec<(usize, u32, Vec<u64>)> = Vec::new();
        for j in 0..n {
            let best = pending
                .iter()
                .enumerate()
                .filter(|(_, r)| r[j] != 0)
                .min_by_key(|(_, r)| f.valuation(r[j]))
                .map(|(i, _)| i);
            let Some(idx) = best else {
                continue;
            };
            let mut piv = pending.swap_remove(idx);
            let e = f.valuation(piv[j]);
            let pe = f.pow_p(e);
            let unit = f.inv(piv[j] / pe).expect("cofactor of p^e is a unit");
            for v in piv.iter_mut() {
                *v = f.mul(*v, unit);
            }
            debug_assert_eq!(piv[j], pe);
            for row in pending.iter_mut() {
                if row[j] != 0 {
                    let k = f.neg(row[j] / pe);
                    for (x, &y) in row.iter_mut().zip(&piv) {
                        *x = f.add(*x, f.mul(k, y));
                    }
                }
            }
            if e > 0 {
                let kill = f.pow_p(f.exponent() - e);
                let extra: Vec<u64> = piv.iter().map(|&v| f.mul(v, kill)).collect();
                pending.push(extra);
            }
            pending.retain(|r| r.iter().any(|&v| v != 0));
            basis.push((j, e, piv));
        }
        for i in 0..basis.len() {
            let (j, e) = (basis[i].0, basis[i].1);
            let pe = f.pow_p(e);
            let (upper, lower) = basis.split_at_mut(i);
            let piv = &lower[0].2;
            for (_, _, row) in upper.iter_mut() {
                let quot = row[j] / pe;
                if quot != 0 {
                    let k = f.neg(quot % f.order());
                    for (x, &y) in row.iter_mut().zip(piv) {
                        *x = f.add(*x, f.mul(k, y));
                    }
                }
            }
        }
        Self::from_rows(f, n, basis.into_iter().map(|b| b.2).collect())
    }

    /// Pivot columns and pivot entries of a matrix already in Howell form.
    pub fn howell_pivots(&self) -> Vec<(usize, u64)> {
        (0..self.rows)
            .filter_map(|i| {
                self.row(i)
                    .iter()
                    .position(|&v| v != 0)
                    .map(|j| (j, self.get(i, j)))
            })
            .collect()
    }

    /// Howell-form generators of `{x : x * self = 0}`.
    pub fn left_kernel(&self) -> ComponentMatrix {
        let (m, n) = (self.rows, self.cols);
        let width = n + m;
        let mut aug = Self::zeros(self.local, m, width);
        for i in 0..m {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1 % self.local.order());
        }
        let h = aug.howell_form();
        let rows: Vec<Vec<u64>> = (0..h.rows)
            .filter(|&i| h.row(i)[..n].iter().all(|&v| v == 0))
            .map(|i| h.row(i)[n..].to_vec())
            .collect();
        Self::from_rows(self.local, m, rows).howell_form()
    }
}
