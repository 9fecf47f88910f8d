//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. All tolerances are exact (zero mismatches) apart from the
//! wall-clock limits below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use anzahl::counting::{
    count_full_rank, count_full_rank_extension, count_gl, count_mt_in, count_mt_over,
    count_mt_subspaces, count_subspaces, count_subspaces_in, count_subspaces_over,
};
use anzahl::geometry::{self, Kind, DEFAULT_BUDGET as SEARCH_BUDGET};
use anzahl::oracle::{self, enumerate_subspaces, for_each_matrix, DEFAULT_BUDGET};
use anzahl::singular::SingularSpace;
use anzahl::subspace::{dimension_formula_status, duality_laws};
use anzahl::{Element, Matrix, RingSpec, Subspace};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CENSUS_LIMIT: Duration = Duration::from_secs(120);
const SEARCH_LIMIT: Duration = Duration::from_secs(60);
const RANDOM_PAIRS: usize = 10_000;
const SAMPLES: usize = 10_000;
/// Matrix spaces up to this size are scanned exhaustively; larger ones are
/// sampled.
const EXHAUSTIVE_LIMIT: u64 = 50_000;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn from_failures(failures: &[String], cases: usize, extra: &str) -> Outcome {
        let mut detail = format!("{} failures in {cases} cases{extra}", failures.len());
        if let Some(first) = failures.first() {
            detail.push_str(&format!("; first: {first}"));
        }
        Outcome {
            passed: failures.is_empty(),
            detail,
        }
    }
}

fn ring(s: &str) -> RingSpec {
    RingSpec::parse(s).unwrap()
}

fn big(v: usize) -> BigUint {
    BigUint::from(v)
}

fn all_subspaces(n: usize, r: &RingSpec) -> Vec<Subspace> {
    (0..=n)
        .flat_map(|m| enumerate_subspaces(m, n, r, DEFAULT_BUDGET).unwrap())
        .collect()
}

fn random_matrix(r: &RingSpec, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let entries: Vec<Element> = (0..rows * cols)
        .map(|_| r.from_ordinal(rng.gen_range(0..r.order())))
        .collect();
    Matrix::from_elements(r, rows, cols, &entries).unwrap()
}

fn random_subspace(r: &RingSpec, n: usize, rng: &mut ChaCha8Rng) -> Subspace {
    let m = rng.gen_range(0..=n);
    loop {
        if let Ok(s) = Subspace::from_matrix(&random_matrix(r, m, n, rng)) {
            return s;
        }
    }
}

/// Runs `f` on every `rows x cols` matrix, or on `SAMPLES` random ones when
/// the space is too large.
fn scan_or_sample(
    r: &RingSpec,
    rows: usize,
    cols: usize,
    rng: &mut ChaCha8Rng,
    mut f: impl FnMut(&Matrix),
) -> bool {
    let total = (r.order() as u128).pow((rows * cols) as u32);
    if total <= EXHAUSTIVE_LIMIT as u128 {
        for_each_matrix(r, rows, cols, EXHAUSTIVE_LIMIT, &mut f).unwrap();
        true
    } else {
        for _ in 0..SAMPLES {
            f(&random_matrix(r, rows, cols, rng));
        }
        false
    }
}

fn subspace_census() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    for spec in ["Z2", "Z3", "Z4", "Z6", "Z8", "Z9", "Z2xZ2", "Z12"] {
        let r = ring(spec);
        for n in 0..=3 {
            for m in 0..=n {
                cases += 1;
                let found = big(enumerate_subspaces(m, n, &r, DEFAULT_BUDGET).unwrap().len());
                let formula = count_subspaces(m, n, &r);
                if found != formula {
                    failures.push(format!(
                        "N({m},{n}) over {r}: enumerated {found}, formula {formula}"
                    ));
                }
            }
        }
    }
    // Anchors; the n = 4 value is checked against the two residue-field
    // counts, each enumerated.
    let anchors = [
        (count_subspaces(1, 2, &ring("Z4")), big(6)),
        (count_subspaces(1, 2, &ring("Z6")), big(12)),
        (count_subspaces(2, 4, &ring("Z6")), big(4550)),
        (
            count_subspaces(2, 4, &ring("Z6")),
            big(enumerate_subspaces(2, 4, &ring("Z2"), DEFAULT_BUDGET)
                .unwrap()
                .len()
                * enumerate_subspaces(2, 4, &ring("Z3"), DEFAULT_BUDGET)
                    .unwrap()
                    .len()),
        ),
    ];
    for (got, want) in anchors {
        cases += 1;
        if got != want {
            failures.push(format!("anchor {got} != {want}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > CENSUS_LIMIT {
        failures.push(format!("took {elapsed:?}, limit {CENSUS_LIMIT:?}"));
    }
    Outcome::from_failures(
        &failures,
        cases,
        &format!(" in {:.1}s", elapsed.as_secs_f64()),
    )
}

/// Every fixed subspace is used, not just one.
fn nested_counts() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for spec in ["Z4", "Z6"] {
        let r = ring(spec);
        for n in 0..=3 {
            let by_dim: Vec<Vec<Subspace>> = (0..=n)
                .map(|m| enumerate_subspaces(m, n, &r, DEFAULT_BUDGET).unwrap())
                .collect();
            for m in 0..=n {
                for m1 in 0..=m {
                    let inside = count_subspaces_in(m1, m, n, &r);
                    let above = count_subspaces_over(m1, m, n, &r);
                    for x in &by_dim[m] {
                        cases += 1;
                        let c = by_dim[m1]
                            .iter()
                            .filter(|s| x.contains_subspace(s).unwrap())
                            .count();
                        if big(c) != inside {
                            failures.push(format!(
                                "{m1}-subspaces in a {m}-subspace of {r}^{n}: {c} vs {inside}"
                            ));
                        }
                    }
                    for y in &by_dim[m1] {
                        cases += 1;
                        let c = by_dim[m]
                            .iter()
                            .filter(|s| s.contains_subspace(y).unwrap())
                            .count();
                        if big(c) != above {
                            failures.push(format!(
                                "{m}-subspaces over a {m1}-subspace of {r}^{n}: {c} vs {above}"
                            ));
                        }
                    }
                }
            }
        }
    }
    cases += 1;
    if count_subspaces_over(1, 2, 3, &ring("Z4")) != big(6) {
        failures.push("N'(1,2,3) over Z4 != 6".into());
    }
    Outcome::from_failures(&failures, cases, "")
}

fn matrix_counts() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    let mut grid: Vec<(RingSpec, usize, usize)> = Vec::new();
    for spec in ["Z4", "Z6"] {
        for n in 0..=2 {
            for m in 0..=n {
                grid.push((ring(spec), m, n));
            }
        }
    }
    for m in 0..=3 {
        grid.push((ring("Z2"), m, 3));
    }
    for (r, m, n) in grid {
        cases += 1;
        let mut full = 0usize;
        for_each_matrix(&r, m, n, DEFAULT_BUDGET, |a| {
            if a.mccoy_rank() == m {
                full += 1;
            }
        })
        .unwrap();
        let formula = count_full_rank(m, n, &r);
        if big(full) != formula {
            failures.push(format!("full rank {m}x{n} over {r}: {full} vs {formula}"));
        }
        if m == n && big(full) != count_gl(n, &r) {
            failures.push(format!("GL_{n}({r}): {full} vs {}", count_gl(n, &r)));
        }
        // Completions of every fixed full-rank top block.
        for m1 in 0..=m {
            let formula = count_full_rank_extension(m1, m, n, &r);
            let mut tops = Vec::new();
            for_each_matrix(&r, m1, n, DEFAULT_BUDGET, |a| {
                if a.mccoy_rank() == m1 {
                    tops.push(a.clone());
                }
            })
            .unwrap();
            for top in tops {
                cases += 1;
                let mut c = 0usize;
                for_each_matrix(&r, m - m1, n, DEFAULT_BUDGET, |b| {
                    if top.stack_rows(b).unwrap().mccoy_rank() == m {
                        c += 1;
                    }
                })
                .unwrap();
                if big(c) != formula {
                    failures.push(format!(
                        "extensions of a {m1}x{n} block to {m}x{n} over {r}: {c} vs {formula}"
                    ));
                }
            }
        }
    }
    cases += 1;
    if count_gl(2, &ring("Z4")) != big(96) {
        failures.push("|GL_2(Z4)| != 96".into());
    }
    Outcome::from_failures(&failures, cases, "")
}

fn rank_oracle() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut note = String::new();
    for (spec, rows, cols) in [
        ("Z4", 2, 2),
        ("Z4", 2, 3),
        ("Z4", 3, 2),
        ("Z6", 2, 2),
        ("Z4", 3, 3),
        ("Z6", 2, 3),
    ] {
        let r = ring(spec);
        let exhaustive = scan_or_sample(&r, rows, cols, &mut rng, |a| {
            cases += 1;
            let oracle = a.mccoy_rank_oracle().unwrap();
            if oracle != a.mccoy_rank() {
                failures.push(format!("{a:?}: fast {} oracle {oracle}", a.mccoy_rank()));
            }
        });
        if !exhaustive {
            note.push_str(&format!(" ({rows}x{cols} over {spec} sampled)"));
        }
    }
    Outcome::from_failures(&failures, cases, &note)
}

fn dimension_formula() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    let mut check = |a: &Subspace, b: &Subspace, failures: &mut Vec<String>| {
        cases += 1;
        let r = dimension_formula_status(a, b).unwrap();
        if !r.conditions_agree() || !r.inequalities_hold() {
            failures.push(format!("{r:?}"));
        }
    };
    for spec in ["Z4", "Z6"] {
        let all = all_subspaces(2, &ring(spec));
        for a in &all {
            for b in &all {
                check(a, b, &mut failures);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for spec in ["Z4", "Z12"] {
        let r = ring(spec);
        for _ in 0..RANDOM_PAIRS / 2 {
            let (a, b) = (
                random_subspace(&r, 3, &mut rng),
                random_subspace(&r, 3, &mut rng),
            );
            check(&a, &b, &mut failures);
        }
    }
    let z4 = ring("Z4");
    let a = Subspace::from_matrix(&Matrix::from_ints(&z4, 1, 2, &[2, 1]).unwrap()).unwrap();
    let b = Subspace::from_matrix(&Matrix::from_ints(&z4, 1, 2, &[0, 1]).unwrap()).unwrap();
    let r = dimension_formula_status(&a, &b).unwrap();
    cases += 1;
    if r.dim_join != 1 || r.formula_holds || r.join_is_subspace || r.meet_is_subspace {
        failures.push(format!("<(2,1)>, <(0,1)> over Z4: {r:?}"));
    }
    Outcome::from_failures(&failures, cases, "")
}

fn duality() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for (spec, n) in [("Z4", 2), ("Z6", 2), ("Z4", 3)] {
        let r = ring(spec);
        let all = all_subspaces(n, &r);
        let duals: Vec<Subspace> = all.iter().map(Subspace::dual).collect();
        for (s, d) in all.iter().zip(&duals) {
            cases += 1;
            if s.dim() + d.dim() != n || &d.dual() != s {
                failures.push(format!("dual of {s:?}"));
            }
        }
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                cases += 1;
                if a.contains_subspace(b).unwrap() != duals[j].contains_subspace(&duals[i]).unwrap()
                {
                    failures.push(format!("containment reversal for {a:?}, {b:?}"));
                }
                if dimension_formula_status(a, b).unwrap().formula_holds
                    && !duality_laws(a, b).unwrap().holds()
                {
                    failures.push(format!("duality identities for {a:?}, {b:?}"));
                }
            }
        }
    }
    Outcome::from_failures(&failures, cases, "")
}

fn singular_census() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    let mut untyped = 0;
    for spec in ["Z2", "Z4"] {
        let r = ring(spec);
        for total in 1..=4 {
            for k in 1..=total {
                let n = total - k;
                let space = SingularSpace::new(&r, n, k);
                let typed: Vec<_> = all_subspaces(total, &r)
                    .into_iter()
                    .map(|p| space.type_of(&p).unwrap())
                    .filter(|p| p.typed)
                    .collect();
                for m in 0..=total {
                    let census = oracle::type_census(m, n, k, &r, DEFAULT_BUDGET).unwrap();
                    untyped += census.untyped;
                    for t in 0..=m.min(k) {
                        cases += 1;
                        if big(census.typed[t]) != count_mt_subspaces(m, t, n, k, &r) {
                            failures.push(format!(
                                "census ({m},{t}) in {r}^{n}+{k}: {}",
                                census.typed[t]
                            ));
                        }
                        let of_type: Vec<&Subspace> = typed
                            .iter()
                            .filter(|p| p.m == m && p.t == t)
                            .map(|p| &p.subspace)
                            .collect();
                        let formula = count_mt_subspaces(m, t, n, k, &r);
                        if big(of_type.len()) != formula {
                            failures.push(format!(
                                "({m},{t}) in {r}^{n}+{k}: {} vs {formula}",
                                of_type.len()
                            ));
                        }
                        // Subspaces inside one fixed (m,t)-subspace, using all
                        // of them in small spaces and two otherwise.
                        let fixed: Vec<&Subspace> = if total <= 3 {
                            of_type.clone()
                        } else {
                            of_type
                                .first()
                                .into_iter()
                                .chain(of_type.last())
                                .copied()
                                .collect()
                        };
                        for x in fixed {
                            for m1 in 0..=m {
                                for t1 in 0..=m1.min(t) {
                                    cases += 1;
                                    let c = typed
                                        .iter()
                                        .filter(|p| p.m == m1 && p.t == t1)
                                        .filter(|p| x.contains_subspace(&p.subspace).unwrap())
                                        .count();
                                    if big(c) != count_mt_in(m1, t1, m, t, n, k, &r) {
                                        failures.push(format!(
                                            "({m1},{t1}) inside ({m},{t}) in {r}^{n}+{k}: {c}"
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    // Subspaces above a fixed one: the double-count identity on a grid and
    // one direct enumeration.
    for spec in ["Z2", "Z4", "Z6", "Z9"] {
        let r = ring(spec);
        for (n, k) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2)] {
            for m in 0..=n + k {
                for t in 0..=m {
                    for m1 in 0..=m {
                        for t1 in 0..=m1 {
                            cases += 1;
                            let lhs = count_mt_subspaces(m, t, n, k, &r)
                                * count_mt_in(m1, t1, m, t, n, k, &r);
                            let rhs = count_mt_subspaces(m1, t1, n, k, &r)
                                * count_mt_over(m1, t1, m, t, n, k, &r);
                            if lhs != rhs {
                                failures.push(format!(
                                    "double count ({m1},{t1};{m},{t}) in {r}^{n}+{k}"
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    let z2 = ring("Z2");
    let space = SingularSpace::new(&z2, 2, 1);
    let e1 = Subspace::coordinate(&z2, 3, &[0]).unwrap();
    let above = enumerate_subspaces(2, 3, &z2, DEFAULT_BUDGET)
        .unwrap()
        .into_iter()
        .filter(|p| {
            let ty = space.type_of(p).unwrap();
            ty.typed && ty.t == 1 && p.contains_subspace(&e1).unwrap()
        })
        .count();
    cases += 2;
    if above != 1 || count_mt_over(1, 0, 2, 1, 2, 1, &z2) != big(1) {
        failures.push(format!("(2,1)-subspaces of Z2^2+1 over <e1>: {above}"));
    }
    if count_mt_subspaces(1, 0, 2, 1, &z2) != big(6) {
        failures.push("N(1,0;3,2) over Z2 != 6".into());
    }
    Outcome::from_failures(
        &failures,
        cases,
        &format!(", {untyped} untyped subspaces seen"),
    )
}

fn arc_cap_maxima() -> Outcome {
    let mut failures = Vec::new();
    let mut detail = String::new();
    let cases = [
        (Kind::Arc, 2, "Z4", 3usize),
        (Kind::Arc, 2, "Z6", 3),
        (Kind::Arc, 3, "Z4", 4),
        (Kind::Arc, 3, "Z6", 4),
        (Kind::Cap, 3, "Z4", 4),
        (Kind::Cap, 3, "Z6", 4),
        (Kind::Cap, 4, "Z2", 8),
    ];
    let mut slowest = Duration::ZERO;
    for (kind, n, spec, expected) in cases {
        let r = ring(spec);
        let start = Instant::now();
        let (found, formula) = match kind {
            Kind::Arc => (
                geometry::search_max_arc(n, &r, SEARCH_BUDGET).map(|o| o.set),
                geometry::max_arc_size_formula(n, &r).unwrap(),
            ),
            Kind::Cap => (
                geometry::search_max_cap(n, &r, SEARCH_BUDGET).map(|o| o.set),
                geometry::max_cap_size_formula(n, &r).unwrap(),
            ),
        };
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        let label = format!("{kind:?} n={n} over {spec}");
        match found {
            Ok(set) => {
                let valid = match kind {
                    Kind::Arc => geometry::is_arc(&set).unwrap(),
                    Kind::Cap => geometry::is_cap(&set).unwrap(),
                };
                if set.len() != expected || formula != Some(big(expected)) || !valid {
                    failures.push(format!(
                        "{label}: search {}, formula {formula:?}",
                        set.len()
                    ));
                }
            }
            Err(e) => failures.push(format!("{label}: {e}")),
        }
        if elapsed > SEARCH_LIMIT {
            failures.push(format!("{label}: took {elapsed:?}"));
        }
    }
    detail.push_str(&format!(", slowest search {:.2}s", slowest.as_secs_f64()));
    Outcome::from_failures(&failures, cases.len(), &detail)
}

fn completeness_criteria() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for (kind, n, spec) in [
        (Kind::Arc, 2, "Z4"),
        (Kind::Arc, 2, "Z6"),
        (Kind::Cap, 3, "Z4"),
    ] {
        let r = ring(spec);
        let sets = geometry::all_sets(kind, n, &r, SEARCH_BUDGET).unwrap();
        for s in &sets {
            cases += 1;
            let c = geometry::completeness(kind, s).unwrap();
            if c.direct != c.via_projection {
                failures.push(format!("{kind:?} {s:?}: {c:?}"));
            }
        }
    }
    Outcome::from_failures(&failures, cases, "")
}

fn constructive() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    let mut note = String::new();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for spec in ["Z4", "Z6"] {
        let r = ring(spec);
        for n in 0..=3 {
            for m in 0..=n {
                let exhaustive = scan_or_sample(&r, m, n, &mut rng, |a| {
                    if a.mccoy_rank() != m {
                        return;
                    }
                    cases += 1;
                    let s = a.completion().unwrap();
                    let ok_completion = a.mat_mul(&s).unwrap()
                        == Matrix::leading_identity(&r, m, n)
                        && s.gl_inverse().is_ok();
                    let g = a.extend_to_basis().unwrap();
                    let ok_basis = g.is_invertible() && g.block(0..m, 0..n) == *a;
                    let b = a.right_inverse().unwrap();
                    let ok_inverse = a.mat_mul(&b).unwrap() == Matrix::identity(&r, m);
                    if !(ok_completion && ok_basis && ok_inverse) {
                        failures.push(format!("{a:?}"));
                    }
                });
                if !exhaustive {
                    note.push_str(&format!(" ({m}x{n} over {spec} sampled)"));
                }
            }
        }
    }
    Outcome::from_failures(&failures, cases, &note)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("subspace census matches the closed form", subspace_census),
        ("subspaces inside and above fixed subspaces", nested_counts),
        ("full-rank and invertible matrix counts", matrix_counts),
        (
            "McCoy rank agrees with the annihilator definition",
            rank_oracle,
        ),
        (
            "dimension formula, free join and free meet are equivalent",
            dimension_formula,
        ),
        ("duals and duality identities", duality),
        ("singular space type census", singular_census),
        ("maximum arcs and caps", arc_cap_maxima),
        (
            "direct and projected completeness agree",
            completeness_criteria,
        ),
        (
            "completion, basis extension and right inverse",
            constructive,
        ),
    ];
    let mut all_passed = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        all_passed &= outcome.passed;
        println!(
            "{} [{:>2}] {name}: {} ({:.1}s)",
            if outcome.passed { "PASS" } else { "FAIL" },
            i + 1,
            outcome.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
