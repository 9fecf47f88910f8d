//! Randomised algebraic properties, each checked against an independent
//! computation.

use std::collections::BTreeSet;

use anzahl::counting::{count_full_rank, count_subspaces};
use anzahl::oracle::{self, module_elements};
use anzahl::subspace::{dim_linear_subset, dimension_formula_status};
use anzahl::{ComponentMatrix, Element, LocalRingSpec, Matrix, RingSpec, Subspace};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RINGS: &[&str] = &["Z2", "Z4", "Z6", "Z8", "Z9", "Z12", "Z2xZ2", "Z4xZ2", "Z5"];

fn ring_strategy() -> impl Strategy<Value = RingSpec> {
    prop::sample::select(RINGS).prop_map(|s| RingSpec::parse(s).unwrap())
}

fn random_matrix(r: &RingSpec, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let entries: Vec<Element> = (0..rows * cols)
        .map(|_| r.from_ordinal(rng.gen_range(0..r.order())))
        .collect();
    Matrix::from_elements(r, rows, cols, &entries).unwrap()
}

fn random_full_rank(r: &RingSpec, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = random_matrix(r, rows, cols, rng);
        if m.mccoy_rank() == rows {
            return m;
        }
    }
}

fn span(m: &Matrix) -> BTreeSet<Vec<Element>> {
    module_elements(m, oracle::DEFAULT_BUDGET)
        .unwrap()
        .into_iter()
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn projections_are_ring_homomorphisms(r in ring_strategy(), a in any::<i64>(), b in any::<i64>()) {
        let (x, y) = (r.from_int(a), r.from_int(b));
        let sum = r.add(&x, &y).unwrap();
        let prod = r.mul(&x, &y).unwrap();
        for (i, c) in r.components().iter().enumerate() {
            let (xi, yi) = (r.project(&x, i).unwrap(), r.project(&y, i).unwrap());
            prop_assert_eq!(r.project(&sum, i).unwrap(), c.add(xi, yi));
            prop_assert_eq!(r.project(&prod, i).unwrap(), c.mul(xi, yi));
        }
        prop_assert_eq!(r.crt_combine(x.residues()).unwrap(), x.clone());
        prop_assert_eq!(r.is_unit(&x), r.inverse(&x).is_ok());
    }

    #[test]
    fn rank_is_invariant_under_equivalence(
        spec in prop::sample::select(&["Z4", "Z6", "Z12"][..]),
        m in 1usize..=3, n in 1usize..=3, seed in any::<u64>(),
    ) {
        let r = RingSpec::parse(spec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&r, m, n, &mut rng);
        let p = random_full_rank(&r, m, m, &mut rng);
        let q = random_full_rank(&r, n, n, &mut rng);
        prop_assert_eq!(p.mat_mul(&a).unwrap().mat_mul(&q).unwrap().mccoy_rank(), a.mccoy_rank());
    }

    #[test]
    fn completion_postconditions(r in ring_strategy(), n in 1usize..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(0..=n);
        let a = random_full_rank(&r, m, n, &mut rng);
        let s = a.completion().unwrap();
        prop_assert_eq!(a.mat_mul(&s).unwrap(), Matrix::leading_identity(&r, m, n));
        let inv = s.gl_inverse().unwrap();
        prop_assert_eq!(s.mat_mul(&inv).unwrap(), Matrix::identity(&r, n));
        prop_assert_eq!(a.mat_mul(&a.right_inverse().unwrap()).unwrap(), Matrix::identity(&r, m));
        let basis = a.extend_to_basis().unwrap();
        prop_assert!(basis.is_invertible());
        prop_assert_eq!(basis.block(0..m, 0..n), a);
    }

    #[test]
    fn canonical_form_is_orbit_invariant(r in ring_strategy(), n in 1usize..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(0..=n);
        let a = random_full_rank(&r, m, n, &mut rng);
        let t = random_full_rank(&r, m, m, &mut rng);
        let s = Subspace::from_matrix(&a).unwrap();
        prop_assert_eq!(Subspace::from_matrix(&t.mat_mul(&a).unwrap()).unwrap(), s.clone());
        // The canonical matrix spans the same module.
        prop_assert_eq!(span(&s.display()), span(&a));
    }

    #[test]
    fn meet_is_the_set_intersection(
        spec in prop::sample::select(&["Z4", "Z6", "Z8", "Z2xZ2"][..]),
        seed in any::<u64>(),
    ) {
        let r = RingSpec::parse(spec).unwrap();
        let n = if r.order() <= 4 { 3 } else { 2 };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (ma, mb) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
        let a = Subspace::from_matrix(&random_full_rank(&r, ma, n, &mut rng)).unwrap();
        let b = Subspace::from_matrix(&random_full_rank(&r, mb, n, &mut rng)).unwrap();
        let meet = a.meet(&b).unwrap();
        let expected: BTreeSet<_> = span(&a.display()).intersection(&span(&b.display())).cloned().collect();
        prop_assert_eq!(span(meet.generators()), expected);
        let join = a.join(&b).unwrap();
        let (sa, sb) = (span(&a.display()), span(&b.display()));
        let mut sums = BTreeSet::new();
        for x in &sa {
            for y in &sb {
                sums.insert(x.iter().zip(y).map(|(u, v)| r.add(u, v).unwrap()).collect::<Vec<_>>());
            }
        }
        prop_assert_eq!(span(join.generators()), sums);
    }

    #[test]
    fn dimension_formula_equivalence(
        spec in prop::sample::select(&["Z4", "Z12", "Z8", "Z9"][..]),
        seed in any::<u64>(),
    ) {
        let r = RingSpec::parse(spec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 3;
        let (ma, mb) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
        let a = Subspace::from_matrix(&random_full_rank(&r, ma, n, &mut rng)).unwrap();
        let b = Subspace::from_matrix(&random_full_rank(&r, mb, n, &mut rng)).unwrap();
        let report = dimension_formula_status(&a, &b).unwrap();
        prop_assert!(report.conditions_agree(), "{:?}", report);
        prop_assert!(report.inequalities_hold(), "{:?}", report);
    }

    #[test]
    fn duals_reverse_containment(r in ring_strategy(), n in 1usize..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(0..=n);
        let a = random_full_rank(&r, m, n, &mut rng);
        let s = Subspace::from_matrix(&a).unwrap();
        let d = s.dual();
        prop_assert_eq!(d.dim() + s.dim(), n);
        prop_assert!(a.mat_mul(&d.display().transpose()).unwrap().is_zero());
        prop_assert_eq!(d.dual(), s.clone());
        // Any subspace spanned by some of the rows of `a` lies in `s`, and its
        // dual contains the dual of `s`.
        let k = rng.gen_range(0..=m);
        let rows: Vec<usize> = (0..k).collect();
        let smaller = Subspace::from_matrix(&a.select_rows(&rows)).unwrap();
        prop_assert!(s.contains_subspace(&smaller).unwrap());
        prop_assert!(smaller.dual().contains_subspace(&d).unwrap());
    }

    #[test]
    fn dimension_matches_brute_force(spec in prop::sample::select(&["Z12", "Z4", "Z6"][..]), g in 0usize..=2, seed in any::<u64>()) {
        let r = RingSpec::parse(spec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = random_matrix(&r, g, 2, &mut rng);
        prop_assert_eq!(dim_linear_subset(&gens), oracle::brute_force_dim(&gens, oracle::DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn howell_form_is_canonical(
        (p, s) in prop::sample::select(&[(2u64, 2u32), (2, 3), (3, 2), (5, 1)][..]),
        rows in 0usize..=3, seed in any::<u64>(),
    ) {
        let local = LocalRingSpec::new(p, s).unwrap();
        let ring = RingSpec::local(local);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&ring, rows, 3, &mut rng);
        let t = random_full_rank(&ring, rows, rows, &mut rng);
        let h: ComponentMatrix = a.parts()[0].howell_form();
        prop_assert_eq!(t.mat_mul(&a).unwrap().parts()[0].howell_form(), h.clone());
        let hm = Matrix::from_parts(&ring, vec![h]).unwrap();
        prop_assert_eq!(span(&hm), span(&a));
    }

    #[test]
    fn counts_are_multiplicative(r in ring_strategy(), n in 0usize..=5, m in 0usize..=5) {
        let parts: Vec<RingSpec> = r.components().iter().map(|&c| RingSpec::local(c)).collect();
        let product: num_bigint::BigUint = parts.iter().map(|p| count_subspaces(m, n, p)).product();
        prop_assert_eq!(count_subspaces(m, n, &r), product);
        let product: num_bigint::BigUint = parts.iter().map(|p| count_full_rank(m, n, p)).product();
        prop_assert_eq!(count_full_rank(m, n, &r), product);
    }
}

/// Trivial meet iff the join is a subspace of the summed dimension; join
/// equal to `R^n` iff the meet is a subspace of dimension `a + b - n`.
#[test]
fn meet_and_join_predicates_exhaustive() {
    for spec in ["Z4", "Z6"] {
        let r = RingSpec::parse(spec).unwrap();
        let n = 2;
        let all: Vec<Subspace> = (0..=n)
            .flat_map(|m| oracle::enumerate_subspaces(m, n, &r, oracle::DEFAULT_BUDGET).unwrap())
            .collect();
        let full = Subspace::full(&r, n);
        for a in &all {
            for b in &all {
                let meet = a.meet(b).unwrap();
                let join = a.join(b).unwrap();
                let join_sub = join.as_subspace().ok();
                let meet_sub = meet.as_subspace().ok();
                assert_eq!(
                    meet.is_zero(),
                    join_sub
                        .as_ref()
                        .is_some_and(|j| j.dim() == a.dim() + b.dim())
                );
                let expected = (a.dim() + b.dim()).checked_sub(n);
                assert_eq!(
                    join_sub.as_ref() == Some(&full),
                    meet_sub.is_some_and(|m| Some(m.dim()) == expected),
                    "{a:?} {b:?}"
                );
            }
        }
    }
}
