//! The singular linear space `R^{n+k}` with distinguished subspace
//! `E = <e_{n+1}, ..., e_{n+k}>` and its group `GL_{n+k,n}(R)` of invertible
//! matrices `[[T11, T12], [0, T22]]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::RingSpec;
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularSpace {
    ring: RingSpec,
    n: usize,
    k: usize,
    e: Subspace,
}

/// A subspace together with its `(m, t)` type. `typed` is false when the
/// intersection with `E` is not free, in which case `t` is still the
/// dimension of that intersection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypedSubspace {
    #[serde(skip)]
    pub subspace: Subspace,
    pub m: usize,
    pub t: usize,
    pub typed: bool,
}

impl SingularSpace {
    pub fn new(ring: &RingSpec, n: usize, k: usize) -> SingularSpace {
        let tail: Vec<usize> = (n..n + k).collect();
        let e = Subspace::coordinate(ring, n + k, &tail).expect("coordinates in range");
        SingularSpace {
            ring: ring.clone(),
            n,
            k,
            e,
        }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ambient(&self) -> usize {
        self.n + self.k
    }

    pub fn e(&self) -> &Subspace {
        &self.e
    }

    fn check(&self, p: &Subspace) -> Result<()> {
        if p.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if p.ambient() != self.ambient() {
            return Err(Error::DimensionMismatch(format!(
                "subspace of R^{} in R^{}+{}",
                p.ambient(),
                self.n,
                self.k
            )));
        }
        Ok(())
    }

    pub fn is_in_gl_nk(&self, t: &Matrix) -> Result<bool> {
        let size = self.ambient();
        if t.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if t.rows() != size || t.cols() != size {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix, expected {size}x{size}",
                t.rows(),
                t.cols()
            )));
        }
        Ok(t.block(self.n..size, 0..self.n).is_zero() && t.is_invertible())
    }

    pub fn type_of(&self, p: &Subspace) -> Result<TypedSubspace> {
        self.check(p)?;
        let meet = p.meet(&self.e)?;
        Ok(TypedSubspace {
            subspace: p.clone(),
            m: p.dim(),
            t: meet.dim(),
            typed: meet.is_subspace(),
        })
    }

    /// The standard `(m, t)`-subspace with rows `(I_{m-t}, 0, 0, 0)` and
    /// `(0, 0, I_t, 0)`.
    pub fn standard_mt(&self, m: usize, t: usize) -> Result<Subspace> {
        if t > self.k || t > m || m - t > self.n {
            return Err(Error::InvalidArgument(format!(
                "no ({m},{t})-subspace in R^{}+{}",
                self.n, self.k
            )));
        }
        let idx: Vec<usize> = (0..m - t).chain(self.n..self.n + t).collect();
        Subspace::coordinate(&self.ring, self.ambient(), &idx)
    }

    /// A `T` in `GL_{n+k,n}(R)` with `P T` equal to the standard subspace of
    /// the same type, together with that standard subspace.
    pub fn canonical_mt_transform(&self, p: &TypedSubspace) -> Result<(Matrix, Subspace)> {
        self.check(&p.subspace)?;
        if !p.typed {
            return Err(Error::Untyped);
        }
        let (n, k, m, t) = (self.n, self.k, p.m, p.t);
        let ring = &self.ring;
        let a = p.subspace.display();

        // Re-base P so that its last t rows span P meet E.
        let w = p.subspace.meet(&self.e)?.as_subspace()?;
        let coords = p
            .subspace
            .coordinates(&w.display())?
            .expect("meet lies in P");
        let ext = coords.extend_to_basis()?;
        let order: Vec<usize> = (t..m).chain(0..t).collect();
        let based = ext.select_rows(&order).mat_mul(&a)?;

        let p11 = based.block(0..m - t, 0..n);
        let p12 = based.block(0..m - t, n..n + k);
        let p22 = based.block(m - t..m, n..n + k);
        let s11 = p11.completion()?;
        let s22 = p22.completion()?;
        let t1 = block_matrix(&s11, &Matrix::zeros(ring, n, k), &s22)?;

        // Clear the top-right block left behind by S22.
        let x = p12.mat_mul(&s22)?;
        let nblock = negate(&x).stack_rows(&Matrix::zeros(ring, n - (m - t), k))?;
        let t2 = block_matrix(
            &Matrix::identity(ring, n),
            &nblock,
            &Matrix::identity(ring, k),
        )?;

        let transform = t1.mat_mul(&t2)?;
        Ok((transform, self.standard_mt(m, t)?))
    }
}

fn negate(a: &Matrix) -> Matrix {
    let ring = a.ring();
    let entries: Vec<_> = a
        .entries()
        .iter()
        .map(|e| ring.neg(e).expect("same ring"))
        .collect();
    Matrix::from_elements(ring, a.rows(), a.cols(), &entries).expect("shape preserved")
}

/// `[[a, b], [0, d]]`.
fn block_matrix(a: &Matrix, b: &Matrix, d: &Matrix) -> Result<Matrix> {
    let top = a.stack_cols(b)?;
    let bottom = Matrix::zeros(a.ring(), d.rows(), a.cols()).stack_cols(d)?;
    top.stack_rows(&bottom)
}
