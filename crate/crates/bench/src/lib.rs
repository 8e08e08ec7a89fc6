//! Seeded workloads shared by the criterion benches.

use std::sync::Arc;

use setopt_core::convex::{self, ConvexifiedInstance};
use setopt_core::problem::Instance;
use setopt_core::random::{self, InstanceParams};
use setopt_core::rational::{int, Vector};
use setopt_core::{Frontier, SimplicialCone};

/// A skewed planar cone and `n` random half-integer points.
pub fn point_cloud(seed: u64, dim: usize, n: usize) -> (Arc<SimplicialCone>, Vec<Vector>) {
    let mut rng = random::rng(seed);
    let cone = Arc::new(random::random_cone(&mut rng, dim));
    let pts = (0..n).map(|_| random::random_half_point(&mut rng, dim)).collect();
    (cone, pts)
}

/// `count` infimal elements over one cone, each from `per` points.
pub fn family(seed: u64, count: usize, per: usize) -> Vec<Frontier> {
    let (cone, pts) = point_cloud(seed, 2, count * per);
    pts.chunks(per).map(|c| Frontier::inf_of(&cone, c).expect("nonempty chunk")).collect()
}

pub fn instance(seed: u64, q: usize, m: usize, decisions: usize) -> Instance {
    let params = InstanceParams { q, m, decisions, max_points: 4 };
    random::gen_instance(seed, &params).expect("valid parameters")
}

/// A planar Slater instance, convexified.
pub fn convex_instance(seed: u64, decisions: usize) -> ConvexifiedInstance {
    let params = InstanceParams { q: 2, m: 2, decisions, max_points: 4 };
    let inst = random::random_slater_instance(&mut random::rng(seed), &params).expect("valid parameters");
    convex::convexify(&inst).expect("Slater decision has F and G values")
}

/// An LP `max 1ᵀx s.t. A x ≤ b` with a bounded feasible region.
pub fn bounded_lp(seed: u64, n: usize, rows: usize) -> (Vec<Vector>, Vector, Vector) {
    use rand::Rng;
    let mut rng = random::rng(seed);
    let mut a: Vec<Vector> = (0..rows).map(|_| (0..n).map(|_| int(rng.gen_range(-3..=3))).collect()).collect();
    let mut b: Vector = (0..rows).map(|_| int(rng.gen_range(1..=9))).collect();
    for i in 0..n {
        let mut r = vec![int(0); n];
        r[i] = int(1);
        a.push(r);
        b.push(int(10));
    }
    (a, b, vec![int(1); n])
}
