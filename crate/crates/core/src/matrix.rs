//! Matrices over a product ring `R = R_1 x ... x R_l`.
//!
//! A matrix is stored as its tuple of component images `rho_i(A)`; the
//! entry-level view as ring elements is reconstructed on demand. Rank,
//! completion and inversion all run per component and are recombined, which
//! is exactly the CRT isomorphism `R^{m x n} = R_1^{m x n} x ... x R_l^{m x n}`.

use crate::error::{Error, Result};
use crate::local::ComponentMatrix;
use crate::ring::{Element, RingSpec};
use crate::util::k_subsets;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    parts: Vec<ComponentMatrix>,
}

/// Largest ring order `mccoy_rank_oracle` will scan.
pub const ORACLE_MAX_RING_ORDER: u64 = 64;
/// Largest `min(m, n)` `mccoy_rank_oracle` will expand minors for.
pub const ORACLE_MAX_MINOR: usize = 3;

impl Matrix {
    pub fn from_parts(ring: &RingSpec, parts: Vec<ComponentMatrix>) -> Result<Self> {
        if parts.len() != ring.len() {
            return Err(Error::RingMismatch);
        }
        let (rows, cols) = (parts[0].rows(), parts[0].cols());
        for (p, c) in parts.iter().zip(ring.components()) {
            if p.local() != *c {
                return Err(Error::RingMismatch);
            }
            if p.rows() != rows || p.cols() != cols {
                return Err(Error::DimensionMismatch("component shapes differ".into()));
            }
        }
        Ok(Matrix {
            ring: ring.clone(),
            rows,
            cols,
            parts,
        })
    }

    /// Like [`Matrix::from_parts`] but pads shorter components with zero
    /// rows, for generator sets whose size differs per component.
    pub fn from_component_rows(
        ring: &RingSpec,
        cols: usize,
        parts: Vec<ComponentMatrix>,
    ) -> Result<Self> {
        let rows = parts.iter().map(ComponentMatrix::rows).max().unwrap_or(0);
        let padded = parts
            .into_iter()
            .map(|p| {
                let pad = ComponentMatrix::zeros(p.local(), rows - p.rows(), cols);
                p.stack(&pad)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(ring, padded)
    }

    pub fn from_elements(
        ring: &RingSpec,
        rows: usize,
        cols: usize,
        entries: &[Element],
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for e in entries {
            ring.check(e)?;
        }
        let parts = ring
            .components()
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                ComponentMatrix::new(
                    c,
                    rows,
                    cols,
                    entries.iter().map(|e| e.residues()[i]).collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(ring, parts)
    }

    /// Entries given as integers, mapped through `Z -> R`.
    pub fn from_ints(ring: &RingSpec, rows: usize, cols: usize, values: &[i64]) -> Result<Self> {
        let parts = ring
            .components()
            .iter()
            .map(|&c| ComponentMatrix::from_ints(c, rows, cols, values))
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(ring, parts)
    }

    pub fn zeros(ring: &RingSpec, rows: usize, cols: usize) -> Self {
        let parts = ring
            .components()
            .iter()
            .map(|&c| ComponentMatrix::zeros(c, rows, cols))
            .collect();
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            parts,
        }
    }

    pub fn identity(ring: &RingSpec, n: usize) -> Self {
        let parts = ring
            .components()
            .iter()
            .map(|&c| ComponentMatrix::identity(c, n))
            .collect();
        Matrix {
            ring: ring.clone(),
            rows: n,
            cols: n,
            parts,
        }
    }

    /// `(I_m | 0_{m, n-m})`.
    pub fn leading_identity(ring: &RingSpec, m: usize, n: usize) -> Self {
        let mut values = vec![0i64; m * n];
        for i in 0..m.min(n) {
            values[i * n + i] = 1;
        }
        Self::from_ints(ring, m, n, &values).expect("shape is consistent")
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn parts(&self) -> &[ComponentMatrix] {
        &self.parts
    }

    pub fn get(&self, i: usize, j: usize) -> Element {
        let residues: Vec<u64> = self.parts.iter().map(|p| p.get(i, j)).collect();
        self.ring
            .crt_combine(&residues)
            .expect("entries are reduced")
    }

    pub fn row(&self, i: usize) -> Vec<Element> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn entries(&self) -> Vec<Element> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(ComponentMatrix::is_zero)
    }

    fn same_ring(&self, other: &Matrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    fn map_parts(&self, f: impl Fn(&ComponentMatrix) -> ComponentMatrix) -> Matrix {
        let parts: Vec<_> = self.parts.iter().map(f).collect();
        let (rows, cols) = (parts[0].rows(), parts[0].cols());
        Matrix {
            ring: self.ring.clone(),
            rows,
            cols,
            parts,
        }
    }

    pub fn mat_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| a.mul(b))
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(&self.ring, parts)
    }

    pub fn transpose(&self) -> Matrix {
        self.map_parts(ComponentMatrix::transpose)
    }

    /// `(self; other)`.
    pub fn stack_rows(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| a.stack(b))
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(&self.ring, parts)
    }

    /// `(self | other)`.
    pub fn stack_cols(&self, other: &Matrix) -> Result<Matrix> {
        self.transpose()
            .stack_rows(&other.transpose())
            .map(|m| m.transpose())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        self.map_parts(|p| p.select_rows(rows))
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        self.map_parts(|p| p.select_cols(cols))
    }

    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let r: Vec<usize> = rows.collect();
        let c: Vec<usize> = cols.collect();
        self.select_rows(&r).select_cols(&c)
    }

    /// `rho_i(A)`.
    pub fn project_matrix(&self, i: usize) -> Result<ComponentMatrix> {
        self.ring.component(i)?;
        Ok(self.parts[i].clone())
    }

    /// `pi_i(rho_i(A))` over `F_{p_i}`.
    pub fn residue_matrix(&self, i: usize) -> Result<ComponentMatrix> {
        Ok(self.project_matrix(i)?.residue())
    }

    /// McCoy rank as the minimum residue-field rank over the components.
    pub fn mccoy_rank(&self) -> usize {
        self.parts
            .iter()
            .map(ComponentMatrix::rank_residue)
            .min()
            .unwrap_or(0)
    }

    /// McCoy rank straight from its definition: the largest `k` whose ideal
    /// of `k x k` minors has trivial annihilator. Minors are expanded with
    /// ring arithmetic and the annihilator is found by scanning all of `R`.
    pub fn mccoy_rank_oracle(&self) -> Result<usize> {
        let order = self.ring.order();
        let kmax = self.rows.min(self.cols);
        if order > ORACLE_MAX_RING_ORDER || kmax > ORACLE_MAX_MINOR {
            return Err(Error::InvalidArgument(format!(
                "oracle limited to |R| <= {ORACLE_MAX_RING_ORDER} and min(m, n) <= {ORACLE_MAX_MINOR}"
            )));
        }
        let entries: Vec<Vec<Element>> = (0..self.rows).map(|i| self.row(i)).collect();
        for k in (1..=kmax).rev() {
            let mut minors = Vec::new();
            for rs in k_subsets(self.rows, k) {
                for cs in k_subsets(self.cols, k) {
                    let sub: Vec<Vec<Element>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| entries[r][c].clone()).collect())
                        .collect();
                    minors.push(laplace_det(&self.ring, &sub));
                }
            }
            let annihilated = self
                .ring
                .elements()
                .filter(|x| !self.ring.is_zero(x))
                .any(|x| {
                    minors
                        .iter()
                        .all(|d| self.ring.is_zero(&self.ring.mul(&x, d).unwrap()))
                });
            if !annihilated {
                return Ok(k);
            }
        }
        Ok(0)
    }

    pub fn is_unimodular_rows(&self) -> Result<bool> {
        if self.rows > self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{} rows exceed {} columns",
                self.rows, self.cols
            )));
        }
        Ok(self.mccoy_rank() == self.rows)
    }

    fn not_full_rank(&self) -> Error {
        Error::NotFullRank {
            rank: self.mccoy_rank(),
            rows: self.rows,
        }
    }

    /// Some `S` in `GL_n(R)` with `A S = (I_m | 0)`; the per-component
    /// transforms are CRT-combined.
    pub fn completion(&self) -> Result<Matrix> {
        let parts = self
            .parts
            .iter()
            .map(|p| p.completion().ok_or_else(|| self.not_full_rank()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(&self.ring, parts)
    }

    /// `B = S (I_m; 0)` with `A B = I_m`.
    pub fn right_inverse(&self) -> Result<Matrix> {
        let s = self.completion()?;
        Ok(s.block(0..self.cols, 0..self.rows))
    }

    /// `S^{-1}`, whose first `m` rows are the rows of `A`.
    pub fn extend_to_basis(&self) -> Result<Matrix> {
        let s = self.completion()?;
        s.gl_inverse()
    }

    pub fn gl_inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} is not square",
                self.rows, self.cols
            )));
        }
        let parts = self
            .parts
            .iter()
            .map(|p| p.inverse().ok_or(Error::NotInvertible))
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(&self.ring, parts)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.mccoy_rank() == self.rows
    }
}

/// Determinant by cofactor expansion along the first row.
pub(crate) fn laplace_det(ring: &RingSpec, m: &[Vec<Element>]) -> Element {
    let n = m.len();
    match n {
        0 => ring.one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = ring.zero();
            for j in 0..n {
                let minor: Vec<Vec<Element>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = ring.mul(&m[0][j], &laplace_det(ring, &minor)).unwrap();
                acc = if j % 2 == 0 {
                    ring.add(&acc, &term)
                } else {
                    ring.sub(&acc, &term)
                }
                .unwrap();
            }
            acc
        }
    }
}
