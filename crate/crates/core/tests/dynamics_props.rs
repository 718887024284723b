mod common;

use std::collections::BTreeSet;

use comdyn_core::dynamics::{
    bounded_height_points, build_catalog, orbit, verify_invariance, weil_height, CatalogConfig, CatalogStrategy,
    HeightValue, OrbitStatus,
};
use comdyn_core::{FieldElement, FieldSpec, Point, PolyMap, Polynomial};
use common::{map, mat_pow, monomial_map, q, r};
use num_bigint::BigUint;
use proptest::prelude::*;

fn naive_iterate(f: &PolyMap, p: &[FieldElement], k: usize) -> Point {
    let mut x = p.to_vec();
    for _ in 0..k {
        x = f.evaluate(&x).unwrap();
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn orbits_over_f7_are_exact_and_minimal(f in map(2, 2, 6), a in 0i64..7, b in 0i64..7) {
        let f7 = FieldSpec::prime_field(7).unwrap();
        let f = f.change_field(f7).unwrap();
        let p = vec![FieldElement::from_int(f7, a), FieldElement::from_int(f7, b)];
        let rec = orbit(&f, &p, 60, None).unwrap();
        let OrbitStatus::Preperiodic { m, l } = rec.status else { panic!("finite orbit must repeat") };
        let iters: Vec<Point> = (0..=m).map(|k| naive_iterate(&f, &p, k)).collect();
        prop_assert_eq!(&iters[m], &iters[l]);
        for m2 in 1..=m {
            for l2 in 0..m2 {
                if (m2, l2) < (m, l) {
                    prop_assert_ne!(&iters[m2], &iters[l2]);
                }
            }
        }
    }

    #[test]
    fn height_doubles_under_squaring(a in -50i64..=50, b in 1i64..=50, c in -50i64..=50, d in 1i64..=50) {
        let v = |i| Polynomial::var(2, q(), i);
        let f = PolyMap::new(vec![v(0).pow(2), v(1).pow(2)]).unwrap();
        let p = vec![FieldElement::rational(a, b), FieldElement::rational(c, d)];
        let h = weil_height(&p).unwrap();
        prop_assume!(h.log() > 0.0);
        let h2 = weil_height(&f.evaluate(&p).unwrap()).unwrap();
        prop_assert_eq!(h2.max_abs(), &(h.max_abs() * h.max_abs()));
        prop_assert!((h2.log() - 2.0 * h.log()).abs() < 1e-9);
    }
}

/// All points with coordinates `a_i / c`, `|a_i| ≤ H`, `1 ≤ c ≤ H`, filtered by exact height.
fn brute_box(n: usize, h: i64) -> BTreeSet<Point> {
    let mut out = BTreeSet::new();
    let mut tuple = vec![-h; n];
    loop {
        for c in 1..=h {
            let p: Point = tuple.iter().map(|&a| FieldElement::rational(a, c)).collect();
            if weil_height(&p).unwrap().max_abs() <= &BigUint::from(h as u64) {
                out.insert(p);
            }
        }
        let mut i = 0;
        while i < n {
            tuple[i] += 1;
            if tuple[i] <= h {
                break;
            }
            tuple[i] = -h;
            i += 1;
        }
        if i == n {
            return out;
        }
    }
}

#[test]
fn bounded_height_enumeration_matches_brute_force() {
    for (n, hmax) in [(1usize, 6i64), (2, 3), (3, 2)] {
        for h in 1..=hmax {
            let b = HeightValue::from_int(BigUint::from(h as u64));
            let listed: Vec<Point> = bounded_height_points(n, &b, 1 << 30).unwrap().collect();
            let set: BTreeSet<Point> = listed.iter().cloned().collect();
            assert_eq!(set.len(), listed.len(), "duplicates for n={n} H={h}");
            assert_eq!(set, brute_box(n, h), "n={n} H={h}");
        }
    }
}

#[test]
fn catalogs_are_closed_and_verified() {
    let f5 = FieldSpec::prime_field(5).unwrap();
    let v = |i| Polynomial::var(2, f5, i);
    let f = PolyMap::new(vec![v(0).pow(2).add(&v(1)), v(1).pow(3)]).unwrap();
    let cat = build_catalog(&f, &CatalogStrategy::FiniteFieldFull, &CatalogConfig::default()).unwrap();
    assert_eq!(cat.len(), 25);
    assert!(cat.is_closed().unwrap());
    for (&(m, l), pts) in cat.strata() {
        for p in pts {
            assert_eq!(naive_iterate(&f, p, m), naive_iterate(&f, p, l));
        }
    }
    let rebuilt = comdyn_core::dynamics::PreperiodicCatalog::from_strata(
        f.clone(),
        String::from("copy"),
        cat.certification().clone(),
        cat.strata().clone(),
    )
    .unwrap();
    assert_eq!(rebuilt.len(), cat.len());
}

#[test]
fn x_xy_orbit_against_naive_iteration() {
    let v = |i| Polynomial::var(2, q(), i);
    let g = PolyMap::new(vec![v(0), v(0).mul(&v(1))]).unwrap();
    let p = vec![r(0), r(2)];
    let rec = orbit(&g, &p, 10, None).unwrap();
    assert_eq!(rec.status, OrbitStatus::Preperiodic { m: 2, l: 1 });
    for (k, pt) in rec.points.iter().enumerate() {
        assert_eq!(pt, &naive_iterate(&g, &p, k));
    }
    assert_eq!(naive_iterate(&g, &p, 2), naive_iterate(&g, &p, 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn commuting_monomial_pairs_preserve_strata(
        a in proptest::collection::vec(proptest::collection::vec(0u32..3, 2), 2),
        i in 1u32..=2,
        j in 1u32..=2,
        order in prop::sample::select(vec![3u64, 5, 7]),
    ) {
        let f = monomial_map(&mat_pow(&a, i), q());
        let g = monomial_map(&mat_pow(&a, j), q());
        let cat = build_catalog(&f, &CatalogStrategy::MonomialExact(order), &CatalogConfig::default()).unwrap();
        prop_assert_eq!(cat.len() as u64, order * order);
        let rep = verify_invariance(&g, &cat).unwrap();
        prop_assert!(rep.containment, "violations: {:?}", rep.violations);
        prop_assert!(rep.pre_f_in_pre_g);
    }
}
