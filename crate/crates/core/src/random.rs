//! Seeded generators for cones, point sets, instances, dual variables and
//! positive operators. Everything is driven by `ChaCha8Rng`, so a seed
//! reproduces the same objects on every platform.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cone::SimplicialCone;
use crate::duality::PositiveOperator;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::problem::{Decision, Instance};
use crate::rational::{self, int, ratio, Rational, Vector};

pub use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// A simplicial cone whose generator columns have entries in `-1..=2`,
/// resampled until the generator matrix is invertible. The diagonal is
/// kept positive so that cones stay reasonably wide.
pub fn random_cone<R: Rng>(rng: &mut R, dim: usize) -> SimplicialCone {
    loop {
        let cols: Vec<Vector> = (0..dim)
            .map(|j| {
                (0..dim).map(|i| if i == j { int(rng.gen_range(1..=2)) } else { int(rng.gen_range(-1..=1)) }).collect()
            })
            .collect();
        if let Ok(cone) = SimplicialCone::from_columns(&cols) {
            return cone;
        }
    }
}

/// A point whose coordinates are multiples of `1/2` in `[-5, 5]`.
pub fn random_half_point<R: Rng>(rng: &mut R, dim: usize) -> Vector {
    (0..dim).map(|_| ratio(rng.gen_range(-10..=10), 2)).collect()
}

pub fn random_int_point<R: Rng>(rng: &mut R, dim: usize, bound: i64) -> Vector {
    (0..dim).map(|_| int(rng.gen_range(-bound..=bound))).collect()
}

/// Between `1` and `max` half-integer points.
pub fn random_point_set<R: Rng>(rng: &mut R, dim: usize, max: usize) -> Vec<Vector> {
    let n = rng.gen_range(1..=max);
    (0..n).map(|_| random_half_point(rng, dim)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceParams {
    pub q: usize,
    pub m: usize,
    pub decisions: usize,
    /// Largest `F(x)` and `G(x)` list length.
    pub max_points: usize,
}

impl Default for InstanceParams {
    fn default() -> Self {
        Self { q: 2, m: 1, decisions: 5, max_points: 4 }
    }
}

impl InstanceParams {
    pub fn validate(&self) -> Result<()> {
        if !(2..=3).contains(&self.q) {
            return Err(Error::input("q must be 2 or 3"));
        }
        if !(1..=3).contains(&self.m) {
            return Err(Error::input("m must be between 1 and 3"));
        }
        if !(1..=20).contains(&self.decisions) {
            return Err(Error::input("decisions must be between 1 and 20"));
        }
        if !(1..=4).contains(&self.max_points) {
            return Err(Error::input("point counts must be between 1 and 4"));
        }
        Ok(())
    }
}

/// A random instance with integer data in `[-5, 5]` and `c` the sum of the
/// generators of `C`. About one decision in ten has an empty `F` or `G`.
pub fn random_instance<R: Rng>(rng: &mut R, params: &InstanceParams) -> Result<Instance> {
    params.validate()?;
    let cone_c = random_cone(rng, params.q);
    let cone_d = random_cone(rng, params.m);
    let c = cone_c.interior_point();
    let count = |rng: &mut R| if rng.gen_ratio(1, 10) { 0 } else { rng.gen_range(1..=params.max_points) };
    let decisions = (0..params.decisions)
        .map(|i| {
            let nf = count(rng);
            let ng = count(rng);
            Decision::new(
                format!("x{}", i + 1),
                (0..nf).map(|_| random_int_point(rng, params.q, 5)).collect(),
                (0..ng).map(|_| random_int_point(rng, params.m, 5)).collect(),
            )
        })
        .collect();
    Instance::new(cone_c, cone_d, c, decisions)
}

/// The instance written by `setopt gen`.
pub fn gen_instance(seed: u64, params: &InstanceParams) -> Result<Instance> {
    random_instance(&mut rng(seed), params)
}

/// A random instance satisfying the Slater condition, drawn by rejection.
pub fn random_slater_instance<R: Rng>(rng: &mut R, params: &InstanceParams) -> Result<Instance> {
    loop {
        let inst = random_instance(rng, params)?;
        if inst.slater_check() {
            return Ok(inst);
        }
    }
}

fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3))
}

/// A dual variable of `−D°` built from nonnegative dual-basis weights.
pub fn random_admissible_dual<R: Rng>(rng: &mut R, cone_d: &SimplicialCone) -> Vector {
    let mu: Vector = (0..cone_d.dim()).map(|_| ratio(rng.gen_range(0..=6), rng.gen_range(1..=3))).collect();
    cone_d.neg_polar_point(&mu)
}

/// Half admissible, half arbitrary dual variables.
pub fn random_duals<R: Rng>(rng: &mut R, inst: &Instance, count: usize) -> Vec<Vector> {
    (0..count)
        .map(|i| {
            if i % 2 == 0 {
                random_admissible_dual(rng, inst.cone_d())
            } else {
                (0..inst.m()).map(|_| small_rational(rng)).collect()
            }
        })
        .collect()
}

/// `T = Σ cᵢ vᵢᵀ` with `cᵢ ∈ C` and `vᵢ ∈ −D°`, so `T(D) ⊆ C` by
/// construction.
pub fn random_positive_operator<R: Rng>(rng: &mut R, inst: &Instance) -> Result<PositiveOperator> {
    let (q, m) = (inst.q(), inst.m());
    let mut t: Matrix = vec![vec![int(0); m]; q];
    for _ in 0..rng.gen_range(1..=2) {
        let zc: Vector = (0..q).map(|_| ratio(rng.gen_range(0..=3), rng.gen_range(1..=2))).collect();
        let c = inst.cone_c().from_coords(&zc);
        let v = random_admissible_dual(rng, inst.cone_d());
        for (row, ci) in t.iter_mut().zip(&c) {
            for (x, vj) in row.iter_mut().zip(&v) {
                *x += ci * vj;
            }
        }
    }
    PositiveOperator::for_instance(t, inst)
}

/// A family of `1..=max` infimal elements over one cone.
pub fn random_family<R: Rng>(
    rng: &mut R,
    cone: &Arc<SimplicialCone>,
    max: usize,
    max_points: usize,
) -> Result<Vec<crate::lattice::Frontier>> {
    let n = rng.gen_range(1..=max);
    (0..n).map(|_| crate::lattice::Frontier::inf_of(cone, &random_point_set(rng, cone.dim(), max_points))).collect()
}

/// Picks one element uniformly.
pub fn pick<'a, R: Rng, T>(rng: &mut R, items: &'a [T]) -> &'a T {
    items.choose(rng).expect("nonempty slice")
}

/// A random positive scalar `p/q` with small numerator and denominator.
pub fn random_positive_scalar<R: Rng>(rng: &mut R) -> Rational {
    ratio(rng.gen_range(1..=6), rng.gen_range(1..=3))
}

/// Coordinates halved toward zero, for shrinking witnesses.
pub fn halve(v: &[Rational]) -> Vector {
    v.iter().map(|x| (x * rational::half()).trunc()).collect()
}
