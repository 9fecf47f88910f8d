//! Free subspaces of `R^n` and arbitrary submodules ("linear subsets").
//!
//! An `m`-subspace is stored per component as the unit-pivot reduced echelon
//! matrix `(A_P)^{-1} A`, where `P` are the pivot columns of the residue-field
//! RREF of `A`. That matrix depends only on the row module, so equality of
//! subspaces is equality of these canonical forms. Arbitrary submodules are
//! carried by per-component Howell forms instead.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::local::ComponentMatrix;
use crate::matrix::Matrix;
use crate::ring::{Element, RingSpec};

#[derive(Debug, Clone)]
pub struct Subspace {
    ring: RingSpec,
    ambient: usize,
    dim: usize,
    canon: Vec<ComponentMatrix>,
    pivots: Vec<Vec<usize>>,
    key: Vec<u64>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.dim == other.dim
            && self.key == other.key
            && self.ring == other.ring
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.dim.hash(state);
        self.key.hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by ambient dimension, then dimension, then the canonical display
/// matrix read row-major with each entry's ring ordinal.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, self.dim, &self.key).cmp(&(other.ambient, other.dim, &other.key))
    }
}

fn check_shape(
    ring: &RingSpec,
    ambient: usize,
    other_ring: &RingSpec,
    other_ambient: usize,
) -> Result<()> {
    if ring != other_ring {
        return Err(Error::RingMismatch);
    }
    if ambient != other_ambient {
        return Err(Error::DimensionMismatch(format!(
            "ambient R^{ambient} vs R^{other_ambient}"
        )));
    }
    Ok(())
}

impl Subspace {
    /// The subspace spanned by the rows of `a`, which must be unimodular.
    pub fn from_matrix(a: &Matrix) -> Result<Subspace> {
        let m = a.rows();
        if m > a.cols() || a.mccoy_rank() != m {
            return Err(Error::NotFullRank {
                rank: a.mccoy_rank(),
                rows: m,
            });
        }
        let mut canon = Vec::with_capacity(a.ring().len());
        let mut pivots = Vec::with_capacity(a.ring().len());
        for part in a.parts() {
            let (_, piv) = part.residue_rref();
            debug_assert_eq!(piv.len(), m);
            let inv = part
                .select_cols(&piv)
                .inverse()
                .expect("pivot block is invertible mod p");
            canon.push(inv.mul(part)?);
            pivots.push(piv);
        }
        Ok(Self::assemble(a.ring().clone(), a.cols(), m, canon, pivots))
    }

    fn assemble(
        ring: RingSpec,
        ambient: usize,
        dim: usize,
        canon: Vec<ComponentMatrix>,
        pivots: Vec<Vec<usize>>,
    ) -> Subspace {
        let mut key = Vec::with_capacity(dim * ambient);
        let mut residues = vec![0u64; ring.len()];
        for i in 0..dim {
            for j in 0..ambient {
                for (slot, c) in residues.iter_mut().zip(&canon) {
                    *slot = c.get(i, j);
                }
                key.push(ring.ordinal(&ring.crt_combine(&residues).expect("reduced")));
            }
        }
        Subspace {
            ring,
            ambient,
            dim,
            canon,
            pivots,
            key,
        }
    }

    pub fn zero(ring: &RingSpec, n: usize) -> Subspace {
        Self::from_matrix(&Matrix::zeros(ring, 0, n)).expect("empty matrix has full rank")
    }

    pub fn full(ring: &RingSpec, n: usize) -> Subspace {
        Self::from_matrix(&Matrix::identity(ring, n)).expect("identity has full rank")
    }

    /// `<e_i : i in indices>` (0-based).
    pub fn coordinate(ring: &RingSpec, n: usize, indices: &[usize]) -> Result<Subspace> {
        let mut values = vec![0i64; indices.len() * n];
        for (r, &i) in indices.iter().enumerate() {
            if i >= n {
                return Err(Error::InvalidArgument(format!(
                    "coordinate {i} outside R^{n}"
                )));
            }
            values[r * n + i] = 1;
        }
        Self::from_matrix(&Matrix::from_ints(ring, indices.len(), n, &values)?)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn canon(&self) -> &[ComponentMatrix] {
        &self.canon
    }

    pub fn pivots(&self) -> &[Vec<usize>] {
        &self.pivots
    }

    /// The CRT-combined canonical matrix.
    pub fn display(&self) -> Matrix {
        Matrix::from_parts(&self.ring, self.canon.clone()).expect("components agree")
    }

    fn check_pair(&self, other: &Subspace) -> Result<()> {
        check_shape(&self.ring, self.ambient, &other.ring, other.ambient)
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool> {
        self.check_pair(other)?;
        Ok(self == other)
    }

    /// Coefficients `x` with `x * display = v`, when `v` lies in the span.
    /// Read off per component at the pivot columns, then verified.
    pub fn coordinates(&self, v: &Matrix) -> Result<Option<Matrix>> {
        if v.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if v.cols() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} in R^{}",
                v.cols(),
                self.ambient
            )));
        }
        let mut parts = Vec::with_capacity(self.ring.len());
        for ((vp, canon), piv) in v.parts().iter().zip(&self.canon).zip(&self.pivots) {
            let x = vp.select_cols(piv);
            if &x.mul(canon)? != vp {
                return Ok(None);
            }
            parts.push(x);
        }
        Matrix::from_parts(&self.ring, parts).map(Some)
    }

    pub fn contains_vector(&self, v: &[Element]) -> Result<bool> {
        let row = Matrix::from_elements(&self.ring, 1, v.len(), v)?;
        Ok(self.coordinates(&row)?.is_some())
    }

    pub fn contains_rows(&self, rows: &Matrix) -> Result<bool> {
        Ok(self.coordinates(rows)?.is_some())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_pair(other)?;
        self.contains_rows(&other.display())
    }

    /// The row module as a linear subset.
    pub fn span(&self) -> LinearSubset {
        LinearSubset::from_generators(&self.display())
    }

    pub fn meet(&self, other: &Subspace) -> Result<LinearSubset> {
        self.check_pair(other)?;
        let mut gens = Vec::with_capacity(self.ring.len());
        for (a, b) in self.canon.iter().zip(&other.canon) {
            let kernel = a.stack(b)?.left_kernel();
            let x: Vec<usize> = (0..a.rows()).collect();
            gens.push(kernel.select_cols(&x).mul(a)?);
        }
        let gens = Matrix::from_component_rows(&self.ring, self.ambient, gens)?;
        Ok(LinearSubset::from_generators(&gens))
    }

    pub fn join(&self, other: &Subspace) -> Result<LinearSubset> {
        self.check_pair(other)?;
        Ok(LinearSubset::from_generators(
            &self.display().stack_rows(&other.display())?,
        ))
    }

    /// `A^perp = (0, I_{n-m}) (S^{-1})^T` where `A = (I_m, 0) S`; with
    /// `A C = (I_m, 0)` from the completion this is the transpose of the
    /// last `n - m` columns of `C`.
    pub fn dual(&self) -> Subspace {
        let tail: Vec<usize> = (self.dim..self.ambient).collect();
        let parts: Vec<ComponentMatrix> = self
            .canon
            .iter()
            .map(|c| {
                c.completion()
                    .expect("canonical rows are unimodular")
                    .select_cols(&tail)
                    .transpose()
            })
            .collect();
        let m = Matrix::from_parts(&self.ring, parts).expect("components agree");
        Subspace::from_matrix(&m).expect("dual rows are unimodular")
    }

    /// The image `P T` under a right action by `T`, which must be invertible.
    pub fn apply(&self, t: &Matrix) -> Result<Subspace> {
        if !t.is_invertible() {
            return Err(Error::NotInvertible);
        }
        Subspace::from_matrix(&self.display().mat_mul(t)?)
    }
}

/// A submodule of `R^n` given by generators.
#[derive(Debug, Clone)]
pub struct LinearSubset {
    ring: RingSpec,
    ambient: usize,
    generators: Matrix,
    howell: Vec<ComponentMatrix>,
    dim: usize,
}

impl PartialEq for LinearSubset {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.ambient == other.ambient && self.howell == other.howell
    }
}

impl Eq for LinearSubset {}

impl LinearSubset {
    pub fn from_generators(gens: &Matrix) -> LinearSubset {
        LinearSubset {
            ring: gens.ring().clone(),
            ambient: gens.cols(),
            generators: gens.clone(),
            howell: gens
                .parts()
                .iter()
                .map(ComponentMatrix::howell_form)
                .collect(),
            dim: dim_linear_subset(gens),
        }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &Matrix {
        &self.generators
    }

    pub fn howell(&self) -> &[ComponentMatrix] {
        &self.howell
    }

    /// Size of a largest unimodular subset.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.howell.iter().all(|h| h.rows() == 0)
    }

    pub fn contains_vector(&self, v: &[Element]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} in R^{}",
                v.len(),
                self.ambient
            )));
        }
        let row = Matrix::from_elements(&self.ring, 1, v.len(), v)?;
        for (h, r) in self.howell.iter().zip(row.parts()) {
            if &h.stack(r)?.howell_form() != h {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Promotes the module to a subspace when it is free with a unimodular
    /// basis. Per component, a module whose residue image has rank `d`
    /// contains a unimodular `d`-set, whose span has `p^{sd}` elements; the
    /// module is that span iff it has exactly that many elements.
    pub fn as_subspace(&self) -> Result<Subspace> {
        let mut parts = Vec::with_capacity(self.howell.len());
        for h in &self.howell {
            parts.push(free_basis(h, self.dim).ok_or(Error::NotASubspace)?);
        }
        Subspace::from_matrix(&Matrix::from_parts(&self.ring, parts)?)
    }

    pub fn is_subspace(&self) -> bool {
        self.as_subspace().is_ok()
    }
}

/// A unimodular basis of the row module of a Howell form, when the module
/// is free of rank `d`.
fn free_basis(h: &ComponentMatrix, d: usize) -> Option<ComponentMatrix> {
    let local = h.local();
    let s = local.exponent() as usize;
    let log_size: usize = h
        .howell_pivots()
        .iter()
        .map(|&(_, v)| s - local.valuation(v) as usize)
        .sum();
    if h.rank_residue() != d || log_size != s * d {
        return None;
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    for i in 0..h.rows() {
        let mut trial = chosen.clone();
        trial.push(i);
        if h.select_rows(&trial).rank_residue() == trial.len() {
            chosen = trial;
        }
    }
    Some(h.select_rows(&chosen))
}

/// Dimension of the module spanned by the rows of `gens`: the minimum over
/// components of the residue-field rank. Over a local component a set is
/// unimodular iff its residue image is independent, so the local dimension
/// is the rank of the residue image; over the product a unimodular set of
/// size `d` exists iff one exists in every component.
pub fn dim_linear_subset(gens: &Matrix) -> usize {
    gens.mccoy_rank()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_join: usize,
    pub dim_meet: usize,
    pub ambient: usize,
    pub formula_holds: bool,
    pub join_is_subspace: bool,
    pub meet_is_subspace: bool,
}

impl DimensionReport {
    /// `max(dim A, dim B) <= dim(A+B) <= min(n, dim A + dim B - dim(A meet B))`.
    pub fn inequalities_hold(&self) -> bool {
        let upper = (self.dim_a + self.dim_b).checked_sub(self.dim_meet);
        self.dim_a.max(self.dim_b) <= self.dim_join
            && upper.is_some_and(|u| self.dim_join <= u.min(self.ambient))
    }

    pub fn conditions_agree(&self) -> bool {
        self.formula_holds == self.join_is_subspace
            && self.join_is_subspace == self.meet_is_subspace
    }
}

/// Dimensions of a pair, whether `dim(A+B) = dim A + dim B - dim(A meet B)`,
/// and whether join and meet are free subspaces.
pub fn dimension_formula_status(a: &Subspace, b: &Subspace) -> Result<DimensionReport> {
    let join = a.join(b)?;
    let meet = a.meet(b)?;
    let formula_holds = join.dim() + meet.dim() == a.dim() + b.dim();
    Ok(DimensionReport {
        dim_a: a.dim(),
        dim_b: b.dim(),
        dim_join: join.dim(),
        dim_meet: meet.dim(),
        ambient: a.ambient(),
        formula_holds,
        join_is_subspace: join.is_subspace(),
        meet_is_subspace: meet.is_subspace(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    /// `(A meet B)^perp = A^perp + B^perp`.
    pub dual_of_meet_is_join_of_duals: bool,
    /// `(A + B)^perp = A^perp meet B^perp`.
    pub dual_of_join_is_meet_of_duals: bool,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.dual_of_meet_is_join_of_duals && self.dual_of_join_is_meet_of_duals
    }
}

/// Checks both duality identities; requires the dimension formula.
pub fn duality_laws(a: &Subspace, b: &Subspace) -> Result<DualityReport> {
    if !dimension_formula_status(a, b)?.formula_holds {
        return Err(Error::HypothesisNotMet);
    }
    let meet = a.meet(b)?.as_subspace()?;
    let join = a.join(b)?.as_subspace()?;
    let (da, db) = (a.dual(), b.dual());
    let same = |lhs: Subspace, rhs: LinearSubset| rhs.as_subspace().is_ok_and(|r| r == lhs);
    Ok(DualityReport {
        dual_of_meet_is_join_of_duals: same(meet.dual(), da.join(&db)?),
        dual_of_join_is_meet_of_duals: same(join.dual(), da.meet(&db)?),
    })
}
