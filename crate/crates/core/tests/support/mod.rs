//! Brute-force oracles shared by the integration tests. None of them call
//! the solver paths they are compared against.
#![allow(dead_code)]

use std::sync::Arc;

use setopt_core::cone::SimplicialCone;
use setopt_core::convex::ConvexifiedInstance;
use setopt_core::linalg;
use setopt_core::problem::Instance;
use setopt_core::rational::{self, dot, int, Rational, Vector};
use setopt_core::Frontier;

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Vertices of `{x : A x ≤ b, E x = e}`, found by solving every square
/// subsystem of active rows.
pub fn polytope_vertices(a: &[Vector], b: &[Rational], eq: &[Vector], e: &[Rational], n: usize) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    if eq.len() > n {
        return out;
    }
    for rows in subsets(a.len(), n - eq.len()) {
        let mut m: Vec<Vector> = eq.to_vec();
        let mut rhs: Vector = e.to_vec();
        for &r in &rows {
            m.push(a[r].clone());
            rhs.push(b[r].clone());
        }
        let Some(x) = linalg::solve(&m, &rhs) else { continue };
        let feasible = a.iter().zip(b).all(|(row, bi)| dot(row, &x) <= *bi);
        if feasible && !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// Optimum of `objᵀx` over `A x ≤ b` intersected with the box `|xᵢ| ≤ bound`,
/// by vertex enumeration. `None` when the boxed region is empty.
pub fn boxed_lp(a: &[Vector], b: &[Rational], obj: &[Rational], maximize: bool, bound: &Rational) -> Option<Rational> {
    let n = obj.len();
    let mut rows = a.to_vec();
    let mut rhs = b.to_vec();
    for i in 0..n {
        for s in [1, -1] {
            let mut r = vec![int(0); n];
            r[i] = int(s);
            rows.push(r);
            rhs.push(bound.clone());
        }
    }
    let values = polytope_vertices(&rows, &rhs, &[], &[], n).into_iter().map(|x| dot(obj, &x));
    if maximize {
        values.max()
    } else {
        values.min()
    }
}

/// Convexified primal value by enumerating the vertices of the weight
/// polytope and taking the hull of their images.
pub fn primal_conv_by_vertices(cv: &ConvexifiedInstance) -> Vec<Vector> {
    let inst = cv.base();
    let k = cv.vertices().len();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in 0..k {
        let mut r = vec![int(0); k];
        r[i] = int(-1);
        a.push(r);
        b.push(int(0));
    }
    // Σ λᵢ gᵢ ∈ −D, written in the coordinates of D.
    let minv = inst.cone_d().inverse_matrix();
    for row in minv {
        a.push(cv.vertices().iter().map(|(_, g)| dot(row, g)).collect());
        b.push(int(0));
    }
    let lambdas = polytope_vertices(&a, &b, &[vec![int(1); k]], &[int(1)], k);
    lambdas
        .iter()
        .map(|l| {
            let mut y = vec![int(0); inst.q()];
            for (li, (f, _)) in l.iter().zip(cv.vertices()) {
                y = rational::axpy(&y, li, f);
            }
            y
        })
        .collect()
}

/// Minimal elements of `points` under the order of `cone`, by pairwise
/// comparison of raw differences.
pub fn minimal_points(cone: &SimplicialCone, points: &[Vector]) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for p in points {
        let dominated = points.iter().any(|q| q != p && cone.contains(&rational::sub(p, q)).unwrap());
        if !dominated && !out.contains(p) {
            out.push(p.clone());
        }
    }
    out.sort();
    out
}

/// Points of `⋃_{u*} L(x, u*)` over the admissible duals with dual-basis
/// weights on the grid `{0, step, …, radius}^m`, together with whether any
/// of them pushed the decision strictly upward.
pub fn lagrangian_points(inst: &Instance, x: &str, radius: &Rational, step: &Rational) -> (Vec<Vector>, bool) {
    let d = inst.decision(x).unwrap();
    let mut levels = Vec::new();
    let mut v = int(0);
    while v <= *radius {
        levels.push(v.clone());
        v += step;
    }
    let mut mus: Vec<Vector> = vec![Vec::new()];
    for _ in 0..inst.m() {
        mus = mus.into_iter().flat_map(|m| levels.iter().map(move |l| [m.clone(), vec![l.clone()]].concat())).collect();
    }
    let mut pts = Vec::new();
    let mut rising = false;
    for mu in mus {
        let u = inst.cone_d().neg_polar_point(&mu);
        let Some(t) = d.g.iter().map(|g| dot(&u, g)).min() else { continue };
        rising |= t > int(0);
        for f in &d.f {
            pts.push(rational::axpy(f, &t, inst.c()));
        }
    }
    (pts, rising)
}

/// `Sup` of the brute-force Lagrangian points.
pub fn brute_sup_lagrangian(inst: &Instance, x: &str, radius: &Rational, step: &Rational) -> (Frontier, bool) {
    let (pts, rising) = lagrangian_points(inst, x, radius, step);
    (Frontier::sup_of(inst.cone_c(), &pts).unwrap(), rising)
}

pub fn orthant(dim: usize) -> Arc<SimplicialCone> {
    Arc::new(SimplicialCone::orthant(dim))
}
