//! Exact subspace and matrix counts over `R = R_1 x ... x R_l`.
//!
//! Every count depends only on the component orders `|R_j|` and `|M_j|`.
//! Parameters outside a formula's range give 0.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::ring::RingSpec;

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn pow(base: u64, exp: usize) -> BigUint {
    num_traits::pow(big(base), exp)
}

/// `|R_j|^e - |M_j|^e` for one component.
fn gap(order: u64, ideal: u64, e: usize) -> BigUint {
    pow(order, e) - pow(ideal, e)
}

/// `prod_j prod_{i=lo}^{m-1} (|R_j|^{n-i} - |M_j|^{n-i})`.
fn gap_product(ring: &RingSpec, lo: usize, m: usize, n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for c in ring.components() {
        for i in lo..m {
            acc *= gap(c.order(), c.maximal_ideal_order(), n - i);
        }
    }
    acc
}

/// Number of `m x n` matrices of McCoy rank `m`.
pub fn count_full_rank(m: usize, n: usize, ring: &RingSpec) -> BigUint {
    if m > n {
        return BigUint::zero();
    }
    pow(ring.order(), m * m.saturating_sub(1) / 2) * gap_product(ring, 0, m, n)
}

pub fn count_gl(n: usize, ring: &RingSpec) -> BigUint {
    count_full_rank(n, n, ring)
}

/// Number of ways to append `m - m1` rows to a fixed full-rank `m1 x n`
/// matrix so that the result has rank `m`.
pub fn count_full_rank_extension(m1: usize, m: usize, n: usize, ring: &RingSpec) -> BigUint {
    if m1 > m || m > n {
        return BigUint::zero();
    }
    let e = (m - m1) * (m + m1).saturating_sub(1) / 2;
    pow(ring.order(), e) * gap_product(ring, m1, m, n)
}

/// Number of `m`-subspaces of `R^n`.
pub fn count_subspaces(m: usize, n: usize, ring: &RingSpec) -> BigUint {
    if m > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for c in ring.components() {
        let (order, ideal) = (c.order(), c.maximal_ideal_order());
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for i in 0..m {
            num *= gap(order, ideal, n - i);
            den *= gap(order, ideal, m - i);
        }
        assert!(
            (&num % &den).is_zero(),
            "inexact division in subspace count"
        );
        let local = num / den;
        acc *= local;
    }
    acc
}

/// `m1`-subspaces inside a fixed `m`-subspace of `R^n`.
pub fn count_subspaces_in(m1: usize, m: usize, n: usize, ring: &RingSpec) -> BigUint {
    if m1 > m || m > n {
        return BigUint::zero();
    }
    count_subspaces(m1, m, ring)
}

/// `m`-subspaces of `R^n` containing a fixed `m1`-subspace.
pub fn count_subspaces_over(m1: usize, m: usize, n: usize, ring: &RingSpec) -> BigUint {
    if m1 > m || m > n {
        return BigUint::zero();
    }
    count_subspaces(m - m1, n - m1, ring)
}

fn mt_valid(m: usize, t: usize, n: usize, k: usize) -> bool {
    t <= k && t <= m && m - t <= n
}

/// `(m,t)`-subspaces of the singular space `R^{n+k}`.
pub fn count_mt_subspaces(m: usize, t: usize, n: usize, k: usize, ring: &RingSpec) -> BigUint {
    if !mt_valid(m, t, n, k) {
        return BigUint::zero();
    }
    pow(ring.order(), (m - t) * (k - t))
        * count_subspaces(m - t, n, ring)
        * count_subspaces(t, k, ring)
}

fn nested_valid(m1: usize, t1: usize, m: usize, t: usize, n: usize, k: usize) -> bool {
    t1 <= t && t <= k && t1 <= m1 && t <= m && m1 - t1 <= m - t && m - t <= n
}

/// `(m1,t1)`-subspaces inside a fixed `(m,t)`-subspace.
pub fn count_mt_in(
    m1: usize,
    t1: usize,
    m: usize,
    t: usize,
    n: usize,
    k: usize,
    ring: &RingSpec,
) -> BigUint {
    if !nested_valid(m1, t1, m, t, n, k) {
        return BigUint::zero();
    }
    pow(ring.order(), (m1 - t1) * (t - t1))
        * count_subspaces(m1 - t1, m - t, ring)
        * count_subspaces(t1, t, ring)
}

/// `(m,t)`-subspaces containing a fixed `(m1,t1)`-subspace.
pub fn count_mt_over(
    m1: usize,
    t1: usize,
    m: usize,
    t: usize,
    n: usize,
    k: usize,
    ring: &RingSpec,
) -> BigUint {
    if !nested_valid(m1, t1, m, t, n, k) {
        return BigUint::zero();
    }
    let free = m - t - (m1 - t1);
    pow(ring.order(), (k - t) * free)
        * count_subspaces(free, n - (m1 - t1), ring)
        * count_subspaces(t - t1, k - t1, ring)
}

/// A named count, used by the verification harness and the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CountQuery {
    FullRank {
        ring: RingSpec,
        m: usize,
        n: usize,
    },
    Gl {
        ring: RingSpec,
        n: usize,
    },
    FullRankExtension {
        ring: RingSpec,
        m1: usize,
        m: usize,
        n: usize,
    },
    Subspaces {
        ring: RingSpec,
        m: usize,
        n: usize,
    },
    SubspacesIn {
        ring: RingSpec,
        m1: usize,
        m: usize,
        n: usize,
    },
    SubspacesOver {
        ring: RingSpec,
        m1: usize,
        m: usize,
        n: usize,
    },
    Mt {
        ring: RingSpec,
        m: usize,
        t: usize,
        n: usize,
        k: usize,
    },
    MtIn {
        ring: RingSpec,
        m1: usize,
        t1: usize,
        m: usize,
        t: usize,
        n: usize,
        k: usize,
    },
    MtOver {
        ring: RingSpec,
        m1: usize,
        t1: usize,
        m: usize,
        t: usize,
        n: usize,
        k: usize,
    },
}

impl CountQuery {
    pub fn ring(&self) -> &RingSpec {
        match self {
            CountQuery::FullRank { ring, .. }
            | CountQuery::Gl { ring, .. }
            | CountQuery::FullRankExtension { ring, .. }
            | CountQuery::Subspaces { ring, .. }
            | CountQuery::SubspacesIn { ring, .. }
            | CountQuery::SubspacesOver { ring, .. }
            | CountQuery::Mt { ring, .. }
            | CountQuery::MtIn { ring, .. }
            | CountQuery::MtOver { ring, .. } => ring,
        }
    }

    pub fn formula(&self) -> BigUint {
        match *self {
            CountQuery::FullRank { ref ring, m, n } => count_full_rank(m, n, ring),
            CountQuery::Gl { ref ring, n } => count_gl(n, ring),
            CountQuery::FullRankExtension { ref ring, m1, m, n } => {
                count_full_rank_extension(m1, m, n, ring)
            }
            CountQuery::Subspaces { ref ring, m, n } => count_subspaces(m, n, ring),
            CountQuery::SubspacesIn { ref ring, m1, m, n } => count_subspaces_in(m1, m, n, ring),
            CountQuery::SubspacesOver { ref ring, m1, m, n } => {
                count_subspaces_over(m1, m, n, ring)
            }
            CountQuery::Mt {
                ref ring,
                m,
                t,
                n,
                k,
            } => count_mt_subspaces(m, t, n, k, ring),
            CountQuery::MtIn {
                ref ring,
                m1,
                t1,
                m,
                t,
                n,
                k,
            } => count_mt_in(m1, t1, m, t, n, k, ring),
            CountQuery::MtOver {
                ref ring,
                m1,
                t1,
                m,
                t,
                n,
                k,
            } => count_mt_over(m1, t1, m, t, n, k, ring),
        }
    }
}

impl std::fmt::Display for CountQuery {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CountQuery::FullRank { ring, m, n } => write!(f, "fullrank({m},{n}) over {ring}"),
            CountQuery::Gl { ring, n } => write!(f, "GL({n}) over {ring}"),
            CountQuery::FullRankExtension { ring, m1, m, n } => {
                write!(f, "extension({m1},{m},{n}) over {ring}")
            }
            CountQuery::Subspaces { ring, m, n } => write!(f, "N({m},{n}) over {ring}"),
            CountQuery::SubspacesIn { ring, m1, m, n } => write!(f, "N({m1},{m},{n}) over {ring}"),
            CountQuery::SubspacesOver { ring, m1, m, n } => {
                write!(f, "N'({m1},{m},{n}) over {ring}")
            }
            CountQuery::Mt { ring, m, t, n, k } => write!(f, "N({m},{t};{n}+{k},{n}) over {ring}"),
            CountQuery::MtIn {
                ring,
                m1,
                t1,
                m,
                t,
                n,
                k,
            } => {
                write!(f, "N({m1},{t1};{m},{t};{n}+{k},{n}) over {ring}")
            }
            CountQuery::MtOver {
                ring,
                m1,
                t1,
                m,
                t,
                n,
                k,
            } => {
                write!(f, "N'({m1},{t1};{m},{t};{n}+{k},{n}) over {ring}")
            }
        }
    }
}
