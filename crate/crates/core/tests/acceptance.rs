//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit status
//! if any criterion fails.

mod support;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use setopt_core::convex::{self, Verdict};
use setopt_core::duality::{self, Relation, Stability};
use setopt_core::grid::{self, GridOracle};
use setopt_core::lattice::classify_point;
use setopt_core::laws::{self, Mutation};
use setopt_core::problem::fixtures;
use setopt_core::random::{self, InstanceParams};
use setopt_core::rational::{int, ratio, vector, Vector};
use setopt_core::{Frontier, PointClass};

const SEED: u64 = 20_240_607;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn laws_clean(names: &[&str], trials: usize) -> Outcome {
    let mut done = Vec::new();
    for name in names {
        let r = laws::run_law(name, SEED, trials, Mutation::None).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(r.to_string());
        }
        done.push(format!("{name}×{}", r.trials));
    }
    Ok(done.join(", "))
}

fn oracle_equivalence() -> Outcome {
    let cases: Vec<(usize, u64)> = (0..200).map(|i| (2, i)).chain((0..50).map(|i| (3, 1000 + i))).collect();
    let results: Vec<Result<usize, String>> = cases
        .par_iter()
        .map(|&(dim, i)| {
            let mut rng = random::rng(SEED ^ i);
            let cone = Arc::new(random::random_cone(&mut rng, dim));
            let pts = random::random_point_set(&mut rng, dim, 5);
            let g = grid::default_grid(dim);
            let s = Frontier::inf_of(&cone, &pts).map_err(|e| e.to_string())?;
            let oracle = GridOracle::new(&pts, &cone, &g).map_err(|e| e.to_string())?;
            for (flat, class) in oracle.classify_all().into_iter().enumerate() {
                let y = g.point(flat);
                let exact = classify_point(&s, &y).map_err(|e| e.to_string())?;
                if exact != class {
                    return Err(format!("case {i}: {s} at {y:?}: lattice {exact:?}, grid {class:?}"));
                }
            }
            Ok(g.len())
        })
        .collect();
    let mut points = 0;
    for r in results {
        points += r?;
    }
    Ok(format!("250 cases, {points} grid points, 0 mismatches"))
}

fn weak_duality() -> Outcome {
    let results: Vec<Result<(), String>> = (0..200u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = random::rng(SEED.wrapping_add(i));
            let params = InstanceParams {
                q: if rng.gen_ratio(3, 4) { 2 } else { 3 },
                m: rng.gen_range(1..=3),
                decisions: rng.gen_range(1..=6),
                max_points: 3,
            };
            let inst = random::random_instance(&mut rng, &params).map_err(|e| e.to_string())?;
            let duals = random::random_duals(&mut rng, &inst, 20);
            let primal = inst.primal_value();
            for u in &duals {
                let value = duality::dual_value(&inst, std::slice::from_ref(u)).map_err(|e| e.to_string())?;
                if !value.leq(&primal).map_err(|e| e.to_string())? {
                    return Err(format!("instance {i}, dual {u:?}"));
                }
            }
            match duality::weak_duality_check(&inst, &duals) {
                Ok(true) => Ok(()),
                Ok(false) => Err(format!("instance {i}: dual set value above primal")),
                Err(e) => Err(format!("instance {i}: {e}")),
            }
        })
        .collect();
    for r in results {
        r?;
    }
    Ok("200 instances × 20 duals".into())
}

fn sup_lagrangian() -> Outcome {
    let laws = laws_clean(&["sup-lagrangian"], 200)?;
    let inst = fixtures::caveat_instance();
    if !inst.feasible_set().is_empty() {
        return Err("caveat fixture has a feasible decision".into());
    }
    let value = duality::sup_lagrangian_over_duals(&inst, "x0").map_err(|e| e.to_string())?;
    if value.is_top() || value.to_string() != "SUP {(0,0)}" {
        return Err(format!("caveat fixture gave {value}"));
    }
    Ok(format!("{laws}; caveat x0 -> {value}"))
}

fn strong_duality() -> Outcome {
    let mut rng = random::rng(SEED);
    let mut certified = 0;
    let mut facets = 0;
    while certified < 50 {
        let params = InstanceParams { q: 2, m: rng.gen_range(1..=3), decisions: rng.gen_range(1..=6), max_points: 3 };
        let inst = random::random_slater_instance(&mut rng, &params).map_err(|e| e.to_string())?;
        let cv = convex::convexify(&inst).map_err(|e| e.to_string())?;
        let cert = convex::certify_strong_duality(&cv).map_err(|e| format!("{e}: {}", inst.to_json()))?;
        let primal = convex::primal_value_conv(&cv).map_err(|e| e.to_string())?;
        if cert.verdict != Verdict::Certified || cert.dual_set_value.as_ref() != Some(&primal) {
            return Err(format!("{}: {}", cert.verdict, inst.to_json()));
        }
        for f in &cert.facets {
            let value = convex::phi_conv(&cv, &f.u_star).map_err(|e| e.to_string())?;
            for y in &f.supported {
                if value.classify(y).map_err(|e| e.to_string())? != PointClass::OnFrontier {
                    return Err(format!("dual {:?} does not support {:?}", f.u_star, y));
                }
            }
        }
        facets += cert.facets.len();
        certified += 1;
    }
    Ok(format!("50/50 certified, {facets} facet duals checked"))
}

fn gap_fixture() -> Outcome {
    let inst = fixtures::gap_instance();
    let duals: Vec<Vector> = [int(0), ratio(1, 2), int(1), ratio(3, 2), int(2)].into_iter().map(|u| vec![u]).collect();
    let report = duality::gap_report(&inst, &duals, &[]).map_err(|e| e.to_string())?;
    let primal = report.primal.to_string();
    let dual = report.dual_finite.to_string();
    if primal != "INF {(2,2)}" || dual != "INF {(1,1)}" || report.relation != Relation::StrictlyBelow {
        return Err(format!("primal {primal}, dual {dual}, relation {:?}", report.relation));
    }
    // Independent re-derivation: each φ(u) is one point, and their Sup in the
    // orthant is the componentwise maximum.
    let mut best = vector(&[i64::MIN / 4, i64::MIN / 4]);
    for u in &duals {
        let mut pts = Vec::new();
        for d in inst.decisions() {
            let t = d.g.iter().map(|g| &u[0] * &g[0]).min().expect("nonempty G");
            pts.extend(d.f.iter().map(|f| vec![&f[0] + &t, &f[1] + &t]));
        }
        let low = support::minimal_points(inst.cone_c(), &pts);
        best = best.iter().zip(&low[0]).map(|(a, b)| a.max(b).clone()).collect();
    }
    if best != vector(&[1, 1]) {
        return Err(format!("brute force gave {best:?}"));
    }
    let probes = duality::default_probes(&report.primal);
    let stability = duality::stability_check(&inst, &probes, &duals).map_err(|e| e.to_string())?;
    if stability != Stability::UnstableAt(vector(&[2, 2])) {
        return Err(format!("stability {stability}"));
    }
    let cv = convex::convexify(&inst).map_err(|e| e.to_string())?;
    let cert = convex::certify_strong_duality(&cv).map_err(|e| e.to_string())?;
    let conv = cert.primal_conv.as_ref().map(|p| p.to_string()).unwrap_or_default();
    if !cert.is_certified() || conv != "CONV {(1,1)}" {
        return Err(format!("convexified: {} {conv}", cert.verdict));
    }
    Ok(format!("p = {primal}, d = {dual} (StrictlyBelow), {stability}, convexified {conv} Certified"))
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("oracle equivalence", oracle_equivalence),
        ("lattice laws", || {
            laws_clean(
                &[
                    "inf-sum",
                    "inf-scaling",
                    "inf-idempotent",
                    "inf-union",
                    "family-sum-inf",
                    "family-sum-sup",
                    "strict-order",
                ],
                500,
            )
        }),
        ("complete lattice", || laws_clean(&["complete-lattice", "partial-order"], 200)),
        ("weak duality", weak_duality),
        ("operator layer", || laws_clean(&["phi-decomposition", "operator-chain"], 200)),
        ("sup-Lagrangian dichotomy", sup_lagrangian),
        ("strong duality (convex, q=2)", strong_duality),
        ("gap fixture", gap_fixture),
        ("subgradient oracle", || laws_clean(&["subgradient-oracle"], 20)),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (status, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{status} [{}] {name}: {detail} ({:.1}s)", i + 1, t.elapsed().as_secs_f64());
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
