//! Brute-force reference for the lattice operations.
//!
//! The oracle never prunes or canonicalizes anything. It works directly from
//! the definitions on a finite grid of sample points: a sample lies in the
//! upper closure when it dominates one of the raw input points, and it lies
//! strictly above the infimal set when some other sampled point of the upper
//! closure is strictly below it. Cone tests are exact integer comparisons in
//! scaled cone coordinates, so agreement with the lattice code is asserted
//! without any tolerance.
//!
//! When every input point is itself a grid point inside the box, the strict
//! dominance witness can always be taken to be a grid point, and the oracle
//! agrees with the exact classification everywhere on the grid.

use num::{BigInt, Integer, One, Signed, ToPrimitive};

use crate::cone::SimplicialCone;
use crate::error::{check_dim, Error, Result};
use crate::lattice::{Frontier, PointClass};
use crate::problem::Instance;
use crate::rational::{self, Rational, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    lo: Vector,
    hi: Vector,
    step: Rational,
    counts: Vec<usize>,
}

impl Grid {
    pub fn new(lo: Vector, hi: Vector, step: Rational) -> Result<Self> {
        check_dim(lo.len(), hi.len())?;
        if lo.is_empty() {
            return Err(Error::input("grid needs at least one dimension"));
        }
        if !step.is_positive() {
            return Err(Error::input("grid step must be positive"));
        }
        let mut counts = Vec::with_capacity(lo.len());
        for (l, h) in lo.iter().zip(&hi) {
            if l >= h {
                return Err(Error::input("grid requires lo < hi componentwise"));
            }
            let k = (h - l) / &step;
            if !k.is_integer() {
                return Err(Error::input("grid extent must be a multiple of the step"));
            }
            let k = k.to_integer().to_usize().ok_or_else(|| Error::input("grid too large"))?;
            counts.push(k + 1);
        }
        Ok(Self { lo, hi, step, counts })
    }

    /// The cube `[lo, hi]^dim`.
    pub fn cube(dim: usize, lo: Rational, hi: Rational, step: Rational) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim], step)
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn lo(&self) -> &[Rational] {
        &self.lo
    }

    pub fn hi(&self) -> &[Rational] {
        &self.hi
    }

    pub fn step(&self) -> &Rational {
        &self.step
    }

    fn index_of(&self, flat: usize) -> Vec<usize> {
        let mut rest = flat;
        self.counts
            .iter()
            .map(|&c| {
                let i = rest % c;
                rest /= c;
                i
            })
            .collect()
    }

    pub fn point(&self, flat: usize) -> Vector {
        self.index_of(flat)
            .iter()
            .zip(&self.lo)
            .map(|(&i, l)| l + &self.step * Rational::from_integer(BigInt::from(i)))
            .collect()
    }

    pub fn points(&self) -> impl Iterator<Item = Vector> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }

    /// Flat index of an on-grid point.
    pub fn locate(&self, y: &[Rational]) -> Result<usize> {
        check_dim(self.dim(), y.len())?;
        let mut flat = 0usize;
        let mut stride = 1usize;
        for ((yi, l), &c) in y.iter().zip(&self.lo).zip(&self.counts) {
            let k = (yi - l) / &self.step;
            let off_grid = || Error::input(format!("{} is not a grid point", rational::format_vector(y)));
            if !k.is_integer() || k.is_negative() {
                return Err(off_grid());
            }
            let k = k.to_integer().to_usize().filter(|&k| k < c).ok_or_else(off_grid)?;
            flat += k * stride;
            stride *= c;
        }
        Ok(flat)
    }
}

/// Precomputed oracle for one point set on one grid.
pub struct GridOracle {
    /// Scaled integer cone coordinates of every grid point.
    grid_coords: Vec<Vec<i128>>,
    inside: Vec<bool>,
    /// Indices of grid points in the upper closure, by ascending coordinate sum.
    inside_sorted: Vec<usize>,
    sums: Vec<i128>,
    grid: Grid,
}

impl GridOracle {
    pub fn new(points: &[Vector], cone: &SimplicialCone, grid: &Grid) -> Result<Self> {
        check_dim(cone.dim(), grid.dim())?;
        for p in points {
            check_dim(cone.dim(), p.len())?;
        }
        let grid_z: Vec<Vector> = grid.points().map(|y| cone.coords(&y)).collect::<Result<_>>()?;
        let point_z: Vec<Vector> = points.iter().map(|p| cone.coords(p)).collect::<Result<_>>()?;
        let mut scale = BigInt::one();
        for z in grid_z.iter().chain(&point_z) {
            for x in z {
                scale = scale.lcm(x.denom());
            }
        }
        let to_int = |z: &Vector| -> Result<Vec<i128>> {
            z.iter()
                .map(|x| {
                    (x.numer() * (&scale / x.denom()))
                        .to_i128()
                        .ok_or_else(|| Error::Unsupported("grid coordinates overflow i128".into()))
                })
                .collect()
        };
        let grid_coords: Vec<Vec<i128>> = grid_z.iter().map(to_int).collect::<Result<_>>()?;
        let point_coords: Vec<Vec<i128>> = point_z.iter().map(to_int).collect::<Result<_>>()?;
        let inside: Vec<bool> =
            grid_coords.iter().map(|zy| point_coords.iter().any(|za| weakly_above(zy, za))).collect();
        let sums: Vec<i128> = grid_coords.iter().map(|z| z.iter().sum()).collect();
        let mut inside_sorted: Vec<usize> = (0..inside.len()).filter(|&i| inside[i]).collect();
        inside_sorted.sort_by_key(|&i| sums[i]);
        Ok(Self { grid_coords, inside, inside_sorted, sums, grid: grid.clone() })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn in_closure(&self, flat: usize) -> bool {
        self.inside[flat]
    }

    pub fn classify_index(&self, flat: usize) -> PointClass {
        if !self.inside[flat] {
            return PointClass::Below;
        }
        let zy = &self.grid_coords[flat];
        // A point strictly below has a strictly smaller coordinate sum.
        let strictly_above = self
            .inside_sorted
            .iter()
            .take_while(|&&j| self.sums[j] < self.sums[flat])
            .any(|&j| strictly_above(zy, &self.grid_coords[j]));
        if strictly_above {
            PointClass::Above
        } else {
            PointClass::OnFrontier
        }
    }

    pub fn classify(&self, y: &[Rational]) -> Result<PointClass> {
        Ok(self.classify_index(self.grid.locate(y)?))
    }

    pub fn classify_all(&self) -> Vec<PointClass> {
        (0..self.grid.len()).map(|i| self.classify_index(i)).collect()
    }
}

fn weakly_above(a: &[i128], b: &[i128]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

fn strictly_above(a: &[i128], b: &[i128]) -> bool {
    a.iter().zip(b).all(|(x, y)| x > y)
}

pub fn grid_classify(points: &[Vector], cone: &SimplicialCone, grid: &Grid, y: &[Rational]) -> Result<PointClass> {
    GridOracle::new(points, cone, grid)?.classify(y)
}

/// One-sided falsifier for the lattice order: checks `Cl₊ points2 ⊆ Cl₊
/// points1` on every grid point.
pub fn grid_leq(points1: &[Vector], points2: &[Vector], cone: &SimplicialCone, grid: &Grid) -> Result<bool> {
    let a = GridOracle::new(points1, cone, grid)?;
    let b = GridOracle::new(points2, cone, grid)?;
    Ok((0..grid.len()).all(|i| !b.in_closure(i) || a.in_closure(i)))
}

/// The first grid point inside `Cl₊ points2` but outside `Cl₊ points1`.
pub fn grid_leq_witness(
    points1: &[Vector],
    points2: &[Vector],
    cone: &SimplicialCone,
    grid: &Grid,
) -> Result<Option<Vector>> {
    let a = GridOracle::new(points1, cone, grid)?;
    let b = GridOracle::new(points2, cone, grid)?;
    Ok((0..grid.len()).find(|&i| b.in_closure(i) && !a.in_closure(i)).map(|i| grid.point(i)))
}

/// Classifies `y` against `Inf ⋃_{u ∈ samples} (W(u) − ⟨u*, u⟩c)`, the
/// discretized form of the subgradient definition. The finite union has a
/// smaller upper closure than the full one, so a `y` on the true frontier is
/// never reported `Above`.
pub fn grid_subgradient_class(
    inst: &Instance,
    u_star: &[Rational],
    y: &[Rational],
    samples: &[Vector],
) -> Result<PointClass> {
    check_dim(inst.m(), u_star.len())?;
    let mut pts = Vec::new();
    for u in samples {
        let shift = rational::scaled(inst.c(), &rational::dot(u_star, u));
        if let Some(gens) = inst.perturbation_value(u)?.generators() {
            pts.extend(gens.iter().map(|g| rational::sub(g, &shift)));
        }
    }
    let value = Frontier::inf_of(inst.cone_c(), &pts)?;
    if value.generators().is_none() {
        return Ok(PointClass::Below);
    }
    value.classify(y)
}

/// The default validation box `[−5, 5]^dim` with step `1/2`.
pub fn default_grid(dim: usize) -> Grid {
    Grid::cube(dim, rational::int(-5), rational::int(5), rational::half()).expect("valid default grid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::fixtures::{gap_instance, single_feasible};
    use crate::rational::{int, ratio, vector};
    use std::sync::Arc;

    fn quarter_grid() -> Grid {
        Grid::cube(2, int(-5), int(5), ratio(1, 4)).unwrap()
    }

    #[test]
    fn classify_examples() {
        let c = SimplicialCone::orthant(2);
        let pts = [vector(&[0, 1]), vector(&[1, 0])];
        let g = quarter_grid();
        assert_eq!(grid_classify(&pts, &c, &g, &[ratio(1, 2), int(1)]).unwrap(), PointClass::OnFrontier);
        assert_eq!(grid_classify(&pts, &c, &g, &vector(&[2, 2])).unwrap(), PointClass::Above);
        assert_eq!(grid_classify(&pts, &c, &g, &vector(&[-1, -1])).unwrap(), PointClass::Below);
        assert!(grid_classify(&pts, &c, &g, &[ratio(1, 3), int(0)]).is_err());
        assert!(grid_classify(&pts, &c, &g, &vector(&[6, 0])).is_err());
    }

    #[test]
    fn leq_examples() {
        let c = SimplicialCone::orthant(2);
        let g = default_grid(2);
        assert!(grid_leq(&[vector(&[0, 0])], &[vector(&[1, 1])], &c, &g).unwrap());
        let boxed = Grid::cube(2, int(-2), int(3), rational::half()).unwrap();
        let a = [vector(&[0, 1])];
        let b = [vector(&[1, 0])];
        assert!(!grid_leq(&a, &b, &c, &boxed).unwrap());
        assert_eq!(grid_leq_witness(&a, &b, &c, &boxed).unwrap(), Some(vector(&[1, 0])));
        assert!(grid_leq(&a, &a, &c, &boxed).unwrap());
    }

    #[test]
    fn grid_validation() {
        assert!(Grid::new(vector(&[0]), vector(&[0]), int(1)).is_err());
        assert!(Grid::new(vector(&[0]), vector(&[1]), ratio(2, 3)).is_err());
        assert!(Grid::new(vector(&[0]), vector(&[1]), int(0)).is_err());
        let g = Grid::new(vector(&[0, 0]), vector(&[1, 2]), ratio(1, 2)).unwrap();
        assert_eq!(g.len(), 15);
        for i in 0..g.len() {
            assert_eq!(g.locate(&g.point(i)).unwrap(), i);
        }
    }

    #[test]
    fn discretized_subgradient() {
        let samples: Vec<Vector> = (-4..=4).map(|k| vector(&[k])).collect();
        let y = vector(&[2, 2]);
        let single = grid_subgradient_class(&single_feasible(), &vector(&[0]), &y, &samples).unwrap();
        assert_eq!(single, PointClass::OnFrontier);
        // At u* = 1 the gap instance has (1,1) below (2,2).
        let gap = grid_subgradient_class(&gap_instance(), &vector(&[1]), &y, &samples).unwrap();
        assert_eq!(gap, PointClass::Above);
    }

    #[test]
    fn agrees_with_lattice_on_skew_cone() {
        let cone = Arc::new(SimplicialCone::from_columns(&[vector(&[2, -1]), vector(&[1, 1])]).unwrap());
        let pts = vec![vector(&[0, 1]), vector(&[1, -2]), vec![ratio(-3, 2), int(3)], vector(&[2, 2])];
        let g = default_grid(2);
        let oracle = GridOracle::new(&pts, &cone, &g).unwrap();
        let s = Frontier::inf_of(&cone, &pts).unwrap();
        for (i, y) in g.points().enumerate() {
            assert_eq!(oracle.classify_index(i), s.classify(&y).unwrap(), "at {y:?}");
        }
    }
}
