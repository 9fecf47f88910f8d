//! Arcs and caps in `R^n`.
//!
//! A set of points is an arc when any `n` of them span `R^n`, and a cap when
//! any 3 of them span a 3-subspace. Both conditions are "every subset of a
//! given size is unimodular", which holds over `R` iff it holds over every
//! residue field, so all checks run on residue vectors over `F_p`.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{Element, RingSpec};
use crate::subspace::Subspace;
use crate::util::k_subsets;

/// Default node budget for the maximum-size search.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Arc,
    Cap,
}

impl Kind {
    /// Size of the subsets that must be unimodular.
    fn span(self, n: usize) -> usize {
        match self {
            Kind::Arc => n,
            Kind::Cap => 3,
        }
    }

    fn check_ambient(self, n: usize) -> Result<()> {
        match self {
            Kind::Arc if n < 2 => Err(Error::InvalidArgument(format!("arcs need n >= 2, got {n}"))),
            Kind::Cap if n < 3 => Err(Error::InvalidArgument(format!("caps need n >= 3, got {n}"))),
            _ => Ok(()),
        }
    }

    fn not_one(self) -> Error {
        match self {
            Kind::Arc => Error::NotAnArc,
            Kind::Cap => Error::NotACap,
        }
    }
}

/// Distinct points of `R^n`, kept in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    ring: RingSpec,
    ambient: usize,
    points: Vec<Subspace>,
}

impl PointSet {
    pub fn new(ring: &RingSpec, ambient: usize, mut points: Vec<Subspace>) -> Result<PointSet> {
        for p in &points {
            if p.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if p.ambient() != ambient || p.dim() != 1 {
                return Err(Error::DimensionMismatch(format!(
                    "{}-subspace of R^{} is not a point of R^{ambient}",
                    p.dim(),
                    p.ambient()
                )));
            }
        }
        points.sort();
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("repeated point".into()));
        }
        Ok(PointSet {
            ring: ring.clone(),
            ambient,
            points,
        })
    }

    /// Points spanned by the given unimodular vectors.
    pub fn from_vectors(
        ring: &RingSpec,
        ambient: usize,
        vectors: &[Vec<Element>],
    ) -> Result<PointSet> {
        let points = vectors
            .iter()
            .map(|v| Subspace::from_matrix(&Matrix::from_elements(ring, 1, ambient, v)?))
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(ring, ambient, points)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn points(&self) -> &[Subspace] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The canonical representatives stacked as rows.
    pub fn matrix(&self) -> Matrix {
        self.points
            .iter()
            .fold(Matrix::zeros(&self.ring, 0, self.ambient), |acc, p| {
                acc.stack_rows(&p.display()).expect("same shape")
            })
    }
}

/// Rank over `F_p` of a few short vectors.
fn field_rank(p: u64, rows: &[&[u64]]) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.to_vec()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = crate::ring::mod_inverse(m[rank][c], p).expect("nonzero mod p");
        for v in m[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Points with their residue vectors, indexed for fast rank tests.
struct Pool {
    primes: Vec<u64>,
    /// `residues[point][component]`.
    residues: Vec<Vec<Vec<u64>>>,
}

impl Pool {
    fn new(ring: &RingSpec, points: &[Subspace]) -> Pool {
        let primes = ring.components().iter().map(|c| c.prime()).collect();
        let residues = points
            .iter()
            .map(|pt| {
                pt.canon()
                    .iter()
                    .map(|c| c.residue().row(0).to_vec())
                    .collect()
            })
            .collect();
        Pool { primes, residues }
    }

    fn unimodular(&self, idx: &[usize]) -> bool {
        self.primes.iter().enumerate().all(|(c, &p)| {
            let rows: Vec<&[u64]> = idx
                .iter()
                .map(|&i| self.residues[i][c].as_slice())
                .collect();
            field_rank(p, &rows) == idx.len()
        })
    }

    /// Whether `set` (already valid) stays valid with `extra` added: every
    /// subset of the critical size that contains `extra` must be unimodular.
    fn accepts(&self, kind: Kind, n: usize, set: &[usize], extra: usize) -> bool {
        let size = kind.span(n).min(set.len() + 1);
        let mut idx = Vec::with_capacity(size);
        k_subsets(set.len(), size - 1).into_iter().all(|sub| {
            idx.clear();
            idx.extend(sub.iter().map(|&i| set[i]));
            idx.push(extra);
            self.unimodular(&idx)
        })
    }

    fn valid(&self, kind: Kind, n: usize, set: &[usize]) -> bool {
        let size = kind.span(n).min(set.len());
        k_subsets(set.len(), size).into_iter().all(|sub| {
            let idx: Vec<usize> = sub.iter().map(|&i| set[i]).collect();
            self.unimodular(&idx)
        })
    }
}

/// Every point of `R^n` in canonical order, built directly from the
/// per-component canonical vectors `(p*, ..., p*, 1, *, ..., *)`.
pub fn all_points(ring: &RingSpec, n: usize) -> Vec<Subspace> {
    let per_component: Vec<Vec<Vec<u64>>> = ring
        .components()
        .iter()
        .map(|c| {
            let (q, p) = (c.order(), c.prime());
            let mut out = Vec::new();
            for lead in 0..n {
                let before = (q / p).pow(lead as u32);
                let after = q.pow((n - lead - 1) as u32);
                for code_b in 0..before {
                    for code_a in 0..after {
                        let mut v = Vec::with_capacity(n);
                        let mut cb = code_b;
                        for _ in 0..lead {
                            v.push(cb % (q / p) * p);
                            cb /= q / p;
                        }
                        v.push(1);
                        let mut ca = code_a;
                        for _ in lead + 1..n {
                            v.push(ca % q);
                            ca /= q;
                        }
                        out.push(v);
                    }
                }
            }
            out
        })
        .collect();
    let mut points = Vec::new();
    let mut choice = vec![0usize; per_component.len()];
    if per_component.iter().any(Vec::is_empty) {
        return points;
    }
    loop {
        let entries: Vec<Element> = (0..n)
            .map(|j| {
                let parts: Vec<u64> = choice
                    .iter()
                    .enumerate()
                    .map(|(c, &i)| per_component[c][i][j])
                    .collect();
                ring.crt_combine(&parts).expect("reduced")
            })
            .collect();
        let row = Matrix::from_elements(ring, 1, n, &entries).expect("shape");
        points.push(Subspace::from_matrix(&row).expect("unimodular by construction"));
        let mut c = 0;
        loop {
            if c == choice.len() {
                points.sort();
                return points;
            }
            choice[c] += 1;
            if choice[c] < per_component[c].len() {
                break;
            }
            choice[c] = 0;
            c += 1;
        }
    }
}

fn is_kind(kind: Kind, ps: &PointSet) -> Result<bool> {
    kind.check_ambient(ps.ambient())?;
    let pool = Pool::new(ps.ring(), ps.points());
    let idx: Vec<usize> = (0..ps.len()).collect();
    Ok(pool.valid(kind, ps.ambient(), &idx))
}

/// Any `n` points span `R^n`; fewer than `n` points must be in general
/// position.
pub fn is_arc(ps: &PointSet) -> Result<bool> {
    is_kind(Kind::Arc, ps)
}

/// Any 3 points span a 3-subspace.
pub fn is_cap(ps: &PointSet) -> Result<bool> {
    is_kind(Kind::Cap, ps)
}

/// The image of the set over the residue field of component `i`.
pub fn project_point_set(ps: &PointSet, i: usize) -> Result<PointSet> {
    let local = ps.ring().component(i)?;
    let field = RingSpec::local(local.residue_field());
    let points = ps
        .points()
        .iter()
        .map(|pt| {
            let v: Vec<i64> = pt.canon()[i]
                .residue()
                .row(0)
                .iter()
                .map(|&x| x as i64)
                .collect();
            Subspace::from_matrix(&Matrix::from_ints(&field, 1, ps.ambient(), &v)?)
        })
        .collect::<Result<Vec<_>>>()?;
    PointSet::new(&field, ps.ambient(), points).map_err(|_| Error::PointCollision(i))
}

fn extend(kind: Kind, ps: &PointSet) -> Result<Vec<Subspace>> {
    if !is_kind(kind, ps)? {
        return Err(kind.not_one());
    }
    let n = ps.ambient();
    let mut pool_points = ps.points().to_vec();
    let candidates: Vec<Subspace> = all_points(ps.ring(), n)
        .into_iter()
        .filter(|p| !ps.points().contains(p))
        .collect();
    pool_points.extend(candidates.iter().cloned());
    let pool = Pool::new(ps.ring(), &pool_points);
    let set: Vec<usize> = (0..ps.len()).collect();
    Ok(candidates
        .into_iter()
        .enumerate()
        .filter(|(j, _)| pool.accepts(kind, n, &set, ps.len() + j))
        .map(|(_, p)| p)
        .collect())
}

pub fn extend_arc(ps: &PointSet) -> Result<Vec<Subspace>> {
    extend(Kind::Arc, ps)
}

pub fn extend_cap(ps: &PointSet) -> Result<Vec<Subspace>> {
    extend(Kind::Cap, ps)
}

/// Completeness decided two ways: directly over `R^n`, and by asking
/// whether some residue-field image is complete.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Completeness {
    pub direct: bool,
    pub via_projection: bool,
}

pub fn completeness(kind: Kind, ps: &PointSet) -> Result<Completeness> {
    let direct = extend(kind, ps)?.is_empty();
    let mut via_projection = false;
    for i in 0..ps.ring().len() {
        if extend(kind, &project_point_set(ps, i)?)?.is_empty() {
            via_projection = true;
            break;
        }
    }
    Ok(Completeness {
        direct,
        via_projection,
    })
}

fn is_complete(kind: Kind, ps: &PointSet) -> Result<bool> {
    let c = completeness(kind, ps)?;
    assert_eq!(c.direct, c.via_projection, "completeness criteria disagree");
    Ok(c.direct)
}

pub fn is_complete_arc(ps: &PointSet) -> Result<bool> {
    is_complete(Kind::Arc, ps)
}

pub fn is_complete_cap(ps: &PointSet) -> Result<bool> {
    is_complete(Kind::Cap, ps)
}

/// Largest arc in `F_q^n` where the classical value is known.
pub fn field_arc_size(n: usize, q: u64) -> Option<u64> {
    let n64 = n as u64;
    match n {
        2 => Some(q + 1),
        3 => Some(if q.is_multiple_of(2) { q + 2 } else { q + 1 }),
        4 if q > 3 => Some(q + 1),
        5 if q >= 5 => Some(q + 1),
        _ if n >= 2 && q <= n64 => Some(n64 + 1),
        _ => None,
    }
}

/// Largest cap in `F_q^n` where the classical value is known.
pub fn field_cap_size(n: usize, q: u64) -> Option<BigUint> {
    match (n, q) {
        (n, 2) if n >= 1 => Some(BigUint::from(2u8).pow(n as u32 - 1)),
        (3, q) => Some(BigUint::from(if q % 2 == 0 { q + 2 } else { q + 1 })),
        (4, q) if q > 2 => Some(BigUint::from(q * q + 1)),
        (5, 3) => Some(BigUint::from(20u8)),
        (6, 3) => Some(BigUint::from(56u8)),
        (5, 4) => Some(BigUint::from(41u8)),
        _ => None,
    }
}

/// `m(n, R)`: the minimum of the residue-field values, or `None` when some
/// component falls outside the known table.
pub fn max_arc_size_formula(n: usize, ring: &RingSpec) -> Result<Option<BigUint>> {
    Kind::Arc.check_ambient(n)?;
    Ok(min_known(ring.components().iter().map(|c| {
        field_arc_size(n, c.residue_order()).map(BigUint::from)
    })))
}

/// `m_2(n, R)`, as for arcs.
pub fn max_cap_size_formula(n: usize, ring: &RingSpec) -> Result<Option<BigUint>> {
    Kind::Cap.check_ambient(n)?;
    Ok(min_known(
        ring.components()
            .iter()
            .map(|c| field_cap_size(n, c.residue_order())),
    ))
}

/// The minimum if every value is known.
fn min_known(values: impl Iterator<Item = Option<BigUint>>) -> Option<BigUint> {
    values.collect::<Option<Vec<_>>>()?.into_iter().min()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub set: PointSet,
    pub nodes: u64,
}

struct Search<'a> {
    pool: &'a Pool,
    kind: Kind,
    n: usize,
    budget: u64,
    nodes: u64,
    best: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, set: &mut Vec<usize>, candidates: &[usize]) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        if set.len() > self.best.len() {
            self.best = set.clone();
        }
        for (pos, &c) in candidates.iter().enumerate() {
            if set.len() + candidates.len() - pos <= self.best.len() {
                break;
            }
            set.push(c);
            let next: Vec<usize> = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|&d| self.pool.accepts(self.kind, self.n, set, d))
                .collect();
            self.run(set, &next)?;
            set.pop();
        }
        Ok(())
    }
}

/// Branch and bound over canonically ordered points. Returns the
/// lexicographically least set of maximum size.
///
/// The group `GL_n(R)` acts transitively on pairs of independent points, so
/// some maximum set contains the first point and the first point
/// independent of it; the search starts from that pair.
fn search_max(kind: Kind, n: usize, ring: &RingSpec, budget: u64) -> Result<SearchOutcome> {
    kind.check_ambient(n)?;
    let points = all_points(ring, n);
    if points.len() as u64 > budget {
        return Err(Error::BudgetExceeded(budget));
    }
    let pool = Pool::new(ring, &points);
    let mut search = Search {
        pool: &pool,
        kind,
        n,
        budget,
        nodes: 0,
        best: Vec::new(),
    };
    let mut set = vec![0];
    if let Some(second) = (1..points.len()).find(|&j| pool.accepts(kind, n, &set, j)) {
        set.push(second);
    }
    let start = *set.last().expect("non-empty");
    let candidates: Vec<usize> = (start + 1..points.len())
        .filter(|&d| pool.accepts(kind, n, &set, d))
        .collect();
    search.run(&mut set, &candidates)?;
    let chosen = search.best.iter().map(|&i| points[i].clone()).collect();
    Ok(SearchOutcome {
        set: PointSet::new(ring, n, chosen)?,
        nodes: search.nodes,
    })
}

pub fn search_max_arc(n: usize, ring: &RingSpec, budget: u64) -> Result<SearchOutcome> {
    search_max(Kind::Arc, n, ring, budget)
}

pub fn search_max_cap(n: usize, ring: &RingSpec, budget: u64) -> Result<SearchOutcome> {
    search_max(Kind::Cap, n, ring, budget)
}

/// Every arc (or cap) of `R^n`, including the empty set.
pub fn all_sets(kind: Kind, n: usize, ring: &RingSpec, budget: u64) -> Result<Vec<PointSet>> {
    kind.check_ambient(n)?;
    let points = all_points(ring, n);
    let pool = Pool::new(ring, &points);
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<(Vec<usize>, Vec<usize>)> = vec![(Vec::new(), (0..points.len()).collect())];
    while let Some((set, candidates)) = stack.pop() {
        if out.len() as u64 >= budget {
            return Err(Error::BudgetExceeded(budget));
        }
        for (pos, &c) in candidates.iter().enumerate() {
            let mut next_set = set.clone();
            next_set.push(c);
            let next: Vec<usize> = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|&d| pool.accepts(kind, n, &next_set, d))
                .collect();
            stack.push((next_set, next));
        }
        out.push(set);
    }
    out.sort();
    out.into_iter()
        .map(|idx| PointSet::new(ring, n, idx.iter().map(|&i| points[i].clone()).collect()))
        .collect()
}
