//! Brute-force enumeration used as ground truth for the closed-form counts
//! and the algebraic operations.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::Serialize;

use crate::counting::CountQuery;
use crate::error::{Error, Result};
use crate::geometry::{self, Kind};
use crate::matrix::Matrix;
use crate::ring::{Element, RingSpec};
use crate::singular::{SingularSpace, TypedSubspace};
use crate::subspace::{self, Subspace};
use crate::wire::decimal;

/// Default cap on vectors scanned or canonical forms produced.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

fn guard(needed: u128, budget: u64) -> Result<()> {
    if needed > budget as u128 {
        Err(Error::BudgetExceeded(budget))
    } else {
        Ok(())
    }
}

/// `|R|^e`, saturating.
fn power(ring: &RingSpec, e: usize) -> u128 {
    (ring.order() as u128)
        .checked_pow(e as u32)
        .unwrap_or(u128::MAX)
}

/// Calls `f` with every `rows x cols` matrix over `ring`.
pub fn for_each_matrix(
    ring: &RingSpec,
    rows: usize,
    cols: usize,
    budget: u64,
    mut f: impl FnMut(&Matrix),
) -> Result<()> {
    let total = power(ring, rows * cols);
    guard(total, budget)?;
    let q = ring.order();
    let mut entries = vec![ring.zero(); rows * cols];
    for code in 0..total as u64 {
        let mut c = code;
        for e in entries.iter_mut() {
            *e = ring.from_ordinal(c % q);
            c /= q;
        }
        f(&Matrix::from_elements(ring, rows, cols, &entries)?);
    }
    Ok(())
}

/// All points of `R^n`, found by canonicalising every unimodular vector.
pub fn enumerate_points(n: usize, ring: &RingSpec, budget: u64) -> Result<Vec<Subspace>> {
    let mut seen = BTreeSet::new();
    for_each_matrix(ring, 1, n, budget, |v| {
        if let Ok(s) = Subspace::from_matrix(v) {
            seen.insert(s);
        }
    })?;
    Ok(seen.into_iter().collect())
}

/// All `m`-subspaces of `R^n`, grown one dimension at a time: an
/// `(j+1)`-subspace is the join of a `j`-subspace and a point whenever the
/// stacked rows stay unimodular.
pub fn enumerate_subspaces(
    m: usize,
    n: usize,
    ring: &RingSpec,
    budget: u64,
) -> Result<Vec<Subspace>> {
    if m > n {
        return Ok(Vec::new());
    }
    let points = enumerate_points(n, ring, budget)?;
    let mut level = vec![Subspace::zero(ring, n)];
    let mut produced = 0u64;
    for j in 0..m {
        let mut next = BTreeSet::new();
        for s in &level {
            for p in &points {
                let stacked = s.display().stack_rows(&p.display())?;
                if stacked.mccoy_rank() == j + 1 {
                    produced += 1;
                    guard(produced as u128, budget)?;
                    next.insert(Subspace::from_matrix(&stacked)?);
                }
            }
        }
        level = next.into_iter().collect();
    }
    Ok(level)
}

/// Typed `(m, t)`-subspaces of `R^{n+k}`.
pub fn enumerate_mt_subspaces(
    m: usize,
    t: usize,
    n: usize,
    k: usize,
    ring: &RingSpec,
    budget: u64,
) -> Result<Vec<TypedSubspace>> {
    let space = SingularSpace::new(ring, n, k);
    let mut out = Vec::new();
    for p in enumerate_subspaces(m, n + k, ring, budget)? {
        let typed = space.type_of(&p)?;
        if typed.typed && typed.t == t {
            out.push(typed);
        }
    }
    Ok(out)
}

/// How the `m`-subspaces of `R^{n+k}` split by type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeCensus {
    pub m: usize,
    /// `typed[t]` counts the `(m, t)`-subspaces.
    pub typed: Vec<usize>,
    pub untyped: usize,
    pub total: usize,
}

pub fn type_census(
    m: usize,
    n: usize,
    k: usize,
    ring: &RingSpec,
    budget: u64,
) -> Result<TypeCensus> {
    let space = SingularSpace::new(ring, n, k);
    let all = enumerate_subspaces(m, n + k, ring, budget)?;
    let mut typed = vec![0; m.min(k) + 1];
    let mut untyped = 0;
    for p in &all {
        let ty = space.type_of(p)?;
        if ty.typed {
            typed[ty.t] += 1;
        } else {
            untyped += 1;
        }
    }
    Ok(TypeCensus {
        m,
        typed,
        untyped,
        total: all.len(),
    })
}

/// Every element of the row module of `gens`.
pub fn module_elements(gens: &Matrix, budget: u64) -> Result<Vec<Vec<Element>>> {
    let ring = gens.ring();
    let mut seen = BTreeSet::new();
    for_each_matrix(ring, 1, gens.rows(), budget, |x| {
        let v = x.mat_mul(gens).expect("conforming");
        seen.insert(v.row(0));
    })?;
    Ok(seen.into_iter().collect())
}

/// Size of a largest unimodular subset of the row module, by exhaustive
/// search over its elements.
pub fn brute_force_dim(gens: &Matrix, budget: u64) -> Result<usize> {
    let ring = gens.ring();
    let n = gens.cols();
    let rows: Vec<Matrix> = module_elements(gens, budget)?
        .into_iter()
        .map(|v| Matrix::from_elements(ring, 1, n, &v).expect("row"))
        .filter(|r| r.mccoy_rank() == 1)
        .collect();
    let mut best = 0;
    let mut stack: Vec<(Matrix, usize)> = vec![(Matrix::zeros(ring, 0, n), 0)];
    while let Some((set, from)) = stack.pop() {
        best = best.max(set.rows());
        if best == n {
            break;
        }
        for (i, r) in rows.iter().enumerate().skip(from) {
            if set.rows() + 1 + (rows.len() - i - 1) <= best {
                break;
            }
            let grown = set.stack_rows(r)?;
            if grown.mccoy_rank() == grown.rows() {
                stack.push((grown, i + 1));
            }
        }
    }
    Ok(best)
}

/// Formula value against enumeration for one count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationReport {
    pub query: String,
    #[serde(with = "decimal")]
    pub formula_value: BigUint,
    #[serde(with = "decimal::option")]
    pub enumerated_value: Option<BigUint>,
    #[serde(rename = "match")]
    pub matched: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

fn full_rank_count(m: usize, n: usize, ring: &RingSpec, budget: u64) -> Result<BigUint> {
    if m > n {
        return Ok(BigUint::from(0u8));
    }
    let mut count = 0u64;
    for_each_matrix(ring, m, n, budget, |a| {
        if a.mccoy_rank() == m {
            count += 1;
        }
    })?;
    Ok(count.into())
}

fn extension_count(m1: usize, m: usize, n: usize, ring: &RingSpec, budget: u64) -> Result<BigUint> {
    if m1 > m || m > n {
        return Ok(BigUint::from(0u8));
    }
    let fixed = Matrix::leading_identity(ring, m1, n);
    let mut count = 0u64;
    for_each_matrix(ring, m - m1, n, budget, |b| {
        if fixed.stack_rows(b).expect("same width").mccoy_rank() == m {
            count += 1;
        }
    })?;
    Ok(count.into())
}

fn count_where(
    items: &[Subspace],
    mut pred: impl FnMut(&Subspace) -> Result<bool>,
) -> Result<BigUint> {
    let mut c = 0u64;
    for s in items {
        if pred(s)? {
            c += 1;
        }
    }
    Ok(c.into())
}

/// The enumerated value of a count. Nested counts fix the last subspace of
/// the relevant kind in canonical order.
pub fn enumerate_count(query: &CountQuery, budget: u64) -> Result<BigUint> {
    let zero = || BigUint::from(0u8);
    match *query {
        CountQuery::FullRank { ref ring, m, n } => full_rank_count(m, n, ring, budget),
        CountQuery::Gl { ref ring, n } => full_rank_count(n, n, ring, budget),
        CountQuery::FullRankExtension { ref ring, m1, m, n } => {
            extension_count(m1, m, n, ring, budget)
        }
        CountQuery::Subspaces { ref ring, m, n } => {
            Ok(enumerate_subspaces(m, n, ring, budget)?.len().into())
        }
        CountQuery::SubspacesIn { ref ring, m1, m, n } => {
            let Some(fixed) = enumerate_subspaces(m, n, ring, budget)?.pop() else {
                return Ok(zero());
            };
            count_where(&enumerate_subspaces(m1, n, ring, budget)?, |s| {
                fixed.contains_subspace(s)
            })
        }
        CountQuery::SubspacesOver { ref ring, m1, m, n } => {
            let Some(fixed) = enumerate_subspaces(m1, n, ring, budget)?.pop() else {
                return Ok(zero());
            };
            count_where(&enumerate_subspaces(m, n, ring, budget)?, |s| {
                s.contains_subspace(&fixed)
            })
        }
        CountQuery::Mt {
            ref ring,
            m,
            t,
            n,
            k,
        } => Ok(enumerate_mt_subspaces(m, t, n, k, ring, budget)?
            .len()
            .into()),
        CountQuery::MtIn {
            ref ring,
            m1,
            t1,
            m,
            t,
            n,
            k,
        } => {
            let Some(fixed) = enumerate_mt_subspaces(m, t, n, k, ring, budget)?.pop() else {
                return Ok(zero());
            };
            let inner: Vec<Subspace> = enumerate_mt_subspaces(m1, t1, n, k, ring, budget)?
                .into_iter()
                .map(|p| p.subspace)
                .collect();
            count_where(&inner, |s| fixed.subspace.contains_subspace(s))
        }
        CountQuery::MtOver {
            ref ring,
            m1,
            t1,
            m,
            t,
            n,
            k,
        } => {
            let Some(fixed) = enumerate_mt_subspaces(m1, t1, n, k, ring, budget)?.pop() else {
                return Ok(zero());
            };
            let outer: Vec<Subspace> = enumerate_mt_subspaces(m, t, n, k, ring, budget)?
                .into_iter()
                .map(|p| p.subspace)
                .collect();
            count_where(&outer, |s| s.contains_subspace(&fixed.subspace))
        }
    }
}

pub fn verify_counts(suite: &[CountQuery], budget: u64) -> Vec<EnumerationReport> {
    verify_counts_with(suite, budget, CountQuery::formula)
}

/// As [`verify_counts`], with the closed form supplied by the caller.
pub fn verify_counts_with(
    suite: &[CountQuery],
    budget: u64,
    formula: impl Fn(&CountQuery) -> BigUint,
) -> Vec<EnumerationReport> {
    suite
        .iter()
        .map(|q| {
            let start = Instant::now();
            let formula_value = formula(q);
            let enumerated = enumerate_count(q, budget);
            let elapsed = start.elapsed();
            let (enumerated_value, error) = match enumerated {
                Ok(v) => (Some(v), None),
                Err(e) => (None, Some(e.to_string())),
            };
            EnumerationReport {
                query: q.to_string(),
                matched: enumerated_value.as_ref() == Some(&formula_value),
                formula_value,
                enumerated_value,
                error,
                elapsed,
            }
        })
        .collect()
}

fn rings(specs: &[&str]) -> Vec<RingSpec> {
    specs
        .iter()
        .map(|s| RingSpec::parse(s).expect("valid spec"))
        .collect()
}

/// The census grid: subspace counts, nested counts, matrix counts and the
/// singular-space counts at desk scale.
pub fn count_suite() -> Vec<CountQuery> {
    let mut suite = Vec::new();
    for ring in rings(&["Z2", "Z3", "Z4", "Z6", "Z8", "Z9", "Z2xZ2", "Z12"]) {
        for n in 0..=3 {
            for m in 0..=n {
                suite.push(CountQuery::Subspaces {
                    ring: ring.clone(),
                    m,
                    n,
                });
            }
        }
    }
    for ring in rings(&["Z4", "Z6"]) {
        for n in 0..=3 {
            for m in 0..=n {
                for m1 in 0..=m {
                    suite.push(CountQuery::SubspacesIn {
                        ring: ring.clone(),
                        m1,
                        m,
                        n,
                    });
                    suite.push(CountQuery::SubspacesOver {
                        ring: ring.clone(),
                        m1,
                        m,
                        n,
                    });
                }
            }
        }
        for n in 0..=2 {
            for m in 0..=n {
                suite.push(CountQuery::FullRank {
                    ring: ring.clone(),
                    m,
                    n,
                });
                for m1 in 0..=m {
                    suite.push(CountQuery::FullRankExtension {
                        ring: ring.clone(),
                        m1,
                        m,
                        n,
                    });
                }
            }
            suite.push(CountQuery::Gl {
                ring: ring.clone(),
                n,
            });
        }
    }
    let z2 = RingSpec::zm(2).expect("valid");
    for m in 0..=3 {
        suite.push(CountQuery::FullRank {
            ring: z2.clone(),
            m,
            n: 3,
        });
    }
    suite.push(CountQuery::Gl { ring: z2, n: 3 });
    suite.extend(singular_suite());
    suite
}

/// `(m, t)` counts, plus nested counts inside and above, for `Z2` and `Z4`
/// with `n + k <= 4`, `k >= 1`.
pub fn singular_suite() -> Vec<CountQuery> {
    let mut suite = Vec::new();
    for ring in rings(&["Z2", "Z4"]) {
        for total in 1..=4 {
            for k in 1..=total {
                let n = total - k;
                for m in 0..=total {
                    for t in 0..=m.min(k) {
                        suite.push(CountQuery::Mt {
                            ring: ring.clone(),
                            m,
                            t,
                            n,
                            k,
                        });
                    }
                }
            }
        }
        // Nested counts inside and above every type in R^{2+1} and R^{1+2}.
        for (n, k) in [(2, 1), (1, 2)] {
            for m in 0..=n + k {
                for t in 0..=m.min(k) {
                    for m1 in 0..=m {
                        for t1 in 0..=m1.min(t) {
                            suite.push(CountQuery::MtIn {
                                ring: ring.clone(),
                                m1,
                                t1,
                                m,
                                t,
                                n,
                                k,
                            });
                            suite.push(CountQuery::MtOver {
                                ring: ring.clone(),
                                m1,
                                t1,
                                m,
                                t,
                                n,
                                k,
                            });
                        }
                    }
                }
            }
        }
    }
    suite
}

/// Outcome of one structural check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckReport {
    fn new(name: impl Into<String>, failures: usize, cases: usize) -> CheckReport {
        CheckReport {
            name: name.into(),
            passed: failures == 0,
            detail: format!("{failures} failures in {cases} cases"),
        }
    }
}

/// Rank oracle, completions, dimension formula and duality on
/// small rings.
pub fn algebra_checks(budget: u64) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for ring in rings(&["Z4", "Z6"]) {
        let (mut cases, mut bad) = (0, 0);
        for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            for_each_matrix(&ring, m, n, budget, |a| {
                cases += 1;
                if a.mccoy_rank_oracle().ok() != Some(a.mccoy_rank()) {
                    bad += 1;
                }
            })?;
        }
        out.push(CheckReport::new(
            format!("rank oracle over {ring}"),
            bad,
            cases,
        ));

        let (mut cases, mut bad) = (0, 0);
        for n in 1..=2 {
            for m in 0..=n {
                for_each_matrix(&ring, m, n, budget, |a| {
                    if a.mccoy_rank() != m {
                        return;
                    }
                    cases += 1;
                    let ok = a.completion().is_ok_and(|s| {
                        a.mat_mul(&s).ok() == Some(Matrix::leading_identity(&ring, m, n))
                            && s.is_invertible()
                    }) && a
                        .right_inverse()
                        .is_ok_and(|b| a.mat_mul(&b).ok() == Some(Matrix::identity(&ring, m)))
                        && a.extend_to_basis().is_ok_and(|g| {
                            g.is_invertible() && g.select_rows(&(0..m).collect::<Vec<_>>()) == *a
                        });
                    if !ok {
                        bad += 1;
                    }
                })?;
            }
        }
        out.push(CheckReport::new(
            format!("completion over {ring}"),
            bad,
            cases,
        ));

        let all: Vec<Subspace> = (0..=2)
            .map(|m| enumerate_subspaces(m, 2, &ring, budget))
            .collect::<Result<Vec<_>>>()?
            .concat();
        let (mut cases, mut bad_dim, mut bad_dual) = (0, 0, 0);
        for a in &all {
            for b in &all {
                cases += 1;
                let r = subspace::dimension_formula_status(a, b)?;
                if !r.conditions_agree() || !r.inequalities_hold() {
                    bad_dim += 1;
                }
                if r.formula_holds && !subspace::duality_laws(a, b)?.holds() {
                    bad_dual += 1;
                }
            }
        }
        out.push(CheckReport::new(
            format!("dimension formula over {ring}^2"),
            bad_dim,
            cases,
        ));
        out.push(CheckReport::new(
            format!("duality over {ring}^2"),
            bad_dual,
            cases,
        ));
    }
    Ok(out)
}

/// Maximum arcs and caps against the closed forms, and the two completeness
/// criteria on every arc of `Z4^2`.
pub fn geometry_checks(budget: u64) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let cases = [
        (Kind::Arc, 2, "Z4"),
        (Kind::Arc, 2, "Z6"),
        (Kind::Arc, 3, "Z4"),
        (Kind::Arc, 3, "Z6"),
        (Kind::Cap, 3, "Z4"),
        (Kind::Cap, 3, "Z6"),
        (Kind::Cap, 4, "Z2"),
    ];
    for (kind, n, spec) in cases {
        let ring = RingSpec::parse(spec)?;
        let (found, formula) = match kind {
            Kind::Arc => (
                geometry::search_max_arc(n, &ring, budget)?,
                geometry::max_arc_size_formula(n, &ring)?,
            ),
            Kind::Cap => (
                geometry::search_max_cap(n, &ring, budget)?,
                geometry::max_cap_size_formula(n, &ring)?,
            ),
        };
        let size = BigUint::from(found.set.len());
        out.push(CheckReport {
            name: format!("max {kind:?} n={n} over {ring}").to_lowercase(),
            passed: formula.as_ref() == Some(&size),
            detail: format!(
                "search {size}, formula {}",
                formula.map_or_else(|| "unknown".to_string(), |f| f.to_string())
            ),
        });
    }
    let ring = RingSpec::parse("Z4")?;
    let arcs = geometry::all_sets(Kind::Arc, 2, &ring, budget)?;
    let mut bad = 0;
    for a in &arcs {
        let c = geometry::completeness(Kind::Arc, a)?;
        if c.direct != c.via_projection {
            bad += 1;
        }
    }
    out.push(CheckReport::new(
        "completeness criteria over Z4^2",
        bad,
        arcs.len(),
    ));
    Ok(out)
}
