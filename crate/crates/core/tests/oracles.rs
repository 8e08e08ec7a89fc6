mod support;

use rand::Rng;
use setopt_core::convex::{self, HullFrontier};
use setopt_core::duality;
use setopt_core::problem::fixtures;
use setopt_core::random::{self, InstanceParams};
use setopt_core::rational::{int, ratio, vector, Rational, Vector};
use setopt_core::{lp_solve, lp_solve_nonneg, Frontier, LpOutcome, Orientation, Sense};

use support::*;

fn random_lp(rng: &mut impl Rng) -> (Vec<Vector>, Vector, Vector) {
    let n = rng.gen_range(1..=4);
    let rows = rng.gen_range(1..=8);
    let a = (0..rows).map(|_| (0..n).map(|_| int(rng.gen_range(-3..=3))).collect()).collect();
    let b = (0..rows).map(|_| int(rng.gen_range(-5..=5))).collect();
    let obj = (0..n).map(|_| int(rng.gen_range(-3..=3))).collect();
    (a, b, obj)
}

fn expected(a: &[Vector], b: &[Rational], obj: &[Rational], sense: Sense) -> LpOutcome {
    let max = sense == Sense::Maximize;
    let r = int(1_000_000);
    match (boxed_lp(a, b, obj, max, &r), boxed_lp(a, b, obj, max, &(&r * int(2)))) {
        (None, _) => LpOutcome::Infeasible,
        (Some(v1), Some(v2)) if v1 == v2 => LpOutcome::Optimal { point: Vec::new(), value: v1 },
        _ => LpOutcome::Unbounded,
    }
}

fn same(got: &LpOutcome, want: &LpOutcome) -> bool {
    match (got, want) {
        (LpOutcome::Optimal { value: a, .. }, LpOutcome::Optimal { value: b, .. }) => a == b,
        (g, w) => g == w,
    }
}

#[test]
fn simplex_matches_vertex_enumeration() {
    let mut rng = random::rng(11);
    for _ in 0..120 {
        let (a, b, obj) = random_lp(&mut rng);
        for sense in [Sense::Maximize, Sense::Minimize] {
            let got = lp_solve(&a, &b, &obj, sense).unwrap();
            let want = expected(&a, &b, &obj, sense);
            assert!(same(&got, &want), "{a:?} {b:?} {obj:?} {sense:?}: {got:?} vs {want:?}");
            if let LpOutcome::Optimal { point, value } = &got {
                assert!(a.iter().zip(&b).all(|(row, bi)| setopt_core::rational::dot(row, point) <= *bi));
                assert_eq!(setopt_core::rational::dot(&obj, point), *value);
            }
        }
    }
}

#[test]
fn nonnegative_simplex_matches_explicit_bounds() {
    let mut rng = random::rng(12);
    for _ in 0..120 {
        let (mut a, mut b, obj) = random_lp(&mut rng);
        let got = lp_solve_nonneg(&a, &b, &obj, Sense::Minimize).unwrap();
        for i in 0..obj.len() {
            let mut r = vec![int(0); obj.len()];
            r[i] = int(-1);
            a.push(r);
            b.push(int(0));
        }
        let want = expected(&a, &b, &obj, Sense::Minimize);
        assert!(same(&got, &want), "{got:?} vs {want:?}");
    }
}

#[test]
fn convexified_primal_matches_weight_vertex_enumeration() {
    let mut rng = random::rng(13);
    let mut proper = 0;
    for _ in 0..150 {
        let params = InstanceParams { q: 2, m: rng.gen_range(1..=2), decisions: rng.gen_range(1..=3), max_points: 2 };
        let inst = random::random_instance(&mut rng, &params).unwrap();
        let Ok(cv) = convex::convexify(&inst) else { continue };
        let got = convex::primal_value_conv(&cv).unwrap();
        let images = primal_conv_by_vertices(&cv);
        let want = if images.is_empty() {
            HullFrontier::top(inst.cone_c()).unwrap()
        } else {
            proper += 1;
            HullFrontier::from_points(inst.cone_c(), &images).unwrap()
        };
        assert_eq!(got, want, "{}", inst.to_json());
    }
    assert!(proper > 40, "only {proper} instances had a nonempty weight polytope");
}

#[test]
fn gap_fixture_values_by_hand() {
    let inst = fixtures::gap_instance();
    // φ(u) is a single point for this instance; the Sup of single points in
    // the orthant is their componentwise maximum.
    let grid = [int(0), ratio(1, 2), int(1), ratio(3, 2), int(2)];
    let mut best: Option<Vector> = None;
    for u in &grid {
        let mut pts = Vec::new();
        for d in inst.decisions() {
            let t = d.g.iter().map(|g| u * &g[0]).min().unwrap();
            pts.extend(d.f.iter().map(|f| vec![&f[0] + &t, &f[1] + &t]));
        }
        let low = minimal_points(inst.cone_c(), &pts);
        assert_eq!(low.len(), 1);
        best = Some(match best {
            None => low[0].clone(),
            Some(b) => b.iter().zip(&low[0]).map(|(x, y)| x.max(y).clone()).collect(),
        });
    }
    assert_eq!(best.unwrap(), vector(&[1, 1]));
    let duals: Vec<Vector> = grid.iter().map(|u| vec![u.clone()]).collect();
    let report = duality::gap_report(&inst, &duals, &[]).unwrap();
    assert_eq!(report.dual_finite.generators().unwrap(), &[vector(&[1, 1])]);
    assert_eq!(minimal_points(inst.cone_c(), &[vector(&[2, 2])]), report.primal.generators().unwrap());
}

#[test]
fn sup_lagrangian_matches_dual_grid_brute_force() {
    let mut rng = random::rng(14);
    let (radius, step) = (int(4), ratio(1, 2));
    let mut rising_seen = 0;
    for _ in 0..60 {
        let params = InstanceParams { q: 2, m: rng.gen_range(1..=2), decisions: 3, max_points: 3 };
        let inst = random::random_instance(&mut rng, &params).unwrap();
        let feasible = inst.feasible_set();
        for d in inst.decisions() {
            if d.f.is_empty() || d.g.is_empty() {
                continue;
            }
            let value = duality::sup_lagrangian_over_duals(&inst, &d.name).unwrap();
            let (brute, rising) = brute_sup_lagrangian(&inst, &d.name, &radius, &step);
            if rising {
                rising_seen += 1;
                assert!(value.is_top(), "{}: {}", inst.to_json(), d.name);
            } else if feasible.contains(&d.name.as_str()) {
                assert_eq!(value, brute);
            }
            if value.is_top() {
                assert!(!feasible.contains(&d.name.as_str()));
            } else {
                assert_eq!(value, Frontier::sup_of(inst.cone_c(), &d.f).unwrap());
                assert!(!rising);
            }
        }
    }
    assert!(rising_seen > 10);
}

#[test]
fn caveat_fixture_stays_bounded_on_growing_grids() {
    let inst = fixtures::caveat_instance();
    let (small, r1) = brute_sup_lagrangian(&inst, "x0", &int(2), &ratio(1, 2));
    let (large, r2) = brute_sup_lagrangian(&inst, "x0", &int(6), &ratio(1, 4));
    assert!(!r1 && !r2);
    assert_eq!(small, large);
    assert_eq!(small.to_string(), "SUP {(0,0)}");
    let value = duality::sup_lagrangian_over_duals(&inst, "x0").unwrap();
    assert_eq!(value, small);
    assert!(inst.feasible_set().is_empty());
    assert_ne!(value, Frontier::top(inst.cone_c(), Orientation::Sup));
}
