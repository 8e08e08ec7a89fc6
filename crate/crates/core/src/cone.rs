//! Simplicial ordering cones.
//!
//! A cone is stored by its generator matrix `M` (columns are the extreme
//! rays) together with `M⁻¹`. Every order query reduces to the sign pattern
//! of the cone coordinates `z = M⁻¹ y`.

use num::{Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{self, Rational, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConeClass {
    Interior,
    Boundary,
    Outside,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialCone {
    dim: usize,
    generators: Matrix,
    inverse: Matrix,
}

impl SimplicialCone {
    /// Builds the cone from its generator columns.
    pub fn from_columns(columns: &[Vector]) -> Result<Self> {
        let dim = columns.len();
        if dim == 0 {
            return Err(Error::input("a cone needs at least one generator"));
        }
        for col in columns {
            check_dim(dim, col.len())?;
        }
        let generators = linalg::transpose(&columns.to_vec());
        Self::from_matrix(generators)
    }

    pub fn from_matrix(generators: Matrix) -> Result<Self> {
        let dim = generators.len();
        if dim == 0 || generators.iter().any(|r| r.len() != dim) {
            return Err(Error::input("generator matrix must be square and nonempty"));
        }
        let inverse = linalg::inverse(&generators).ok_or_else(|| Error::input("generator matrix is singular"))?;
        Ok(Self { dim, generators, inverse })
    }

    /// The nonnegative orthant of the given dimension.
    pub fn orthant(dim: usize) -> Self {
        let id = linalg::identity(dim);
        Self { dim, generators: id.clone(), inverse: id }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_matrix(&self) -> &Matrix {
        &self.generators
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.inverse
    }

    pub fn generator(&self, j: usize) -> Vector {
        linalg::column(&self.generators, j)
    }

    pub fn generators(&self) -> Vec<Vector> {
        (0..self.dim).map(|j| self.generator(j)).collect()
    }

    /// Sum of the generators; always an interior point.
    pub fn interior_point(&self) -> Vector {
        self.generators.iter().map(|row| row.iter().sum()).collect()
    }

    /// `M⁻¹ y`.
    pub fn coords(&self, y: &[Rational]) -> Result<Vector> {
        check_dim(self.dim, y.len())?;
        Ok(linalg::mat_vec(&self.inverse, y))
    }

    /// `M z`.
    pub fn from_coords(&self, z: &[Rational]) -> Vector {
        linalg::mat_vec(&self.generators, z)
    }

    pub fn classify(&self, y: &[Rational]) -> Result<ConeClass> {
        Ok(classify_coords(&self.coords(y)?))
    }

    pub fn contains(&self, y: &[Rational]) -> Result<bool> {
        Ok(self.classify(y)? != ConeClass::Outside)
    }

    pub fn contains_interior(&self, y: &[Rational]) -> Result<bool> {
        Ok(self.classify(y)? == ConeClass::Interior)
    }

    /// Membership of `u_star` in the dual cone `−D°`, i.e. `⟨u*, d⟩ ≥ 0` for
    /// every generator `d`.
    pub fn in_neg_polar(&self, u_star: &[Rational]) -> Result<bool> {
        check_dim(self.dim, u_star.len())?;
        Ok((0..self.dim).all(|j| {
            let s: Rational = self.generators.iter().zip(u_star).map(|(row, u)| &row[j] * u).sum();
            !s.is_negative()
        }))
    }

    /// Maps cone coordinates `μ ≥ 0` of the dual basis to a point of `−D°`.
    /// Every point of `−D°` arises this way.
    pub fn neg_polar_point(&self, mu: &[Rational]) -> Vector {
        linalg::mat_vec(&linalg::transpose(&self.inverse), mu)
    }

    /// The negated cone `−C`, represented with generators `−M`.
    pub fn negated(&self) -> Self {
        let neg = |m: &Matrix| -> Matrix { m.iter().map(|r| r.iter().map(|x| -x).collect()).collect() };
        Self { dim: self.dim, generators: neg(&self.generators), inverse: neg(&self.inverse) }
    }
}

pub fn classify_coords(z: &[Rational]) -> ConeClass {
    if z.iter().any(Signed::is_negative) {
        ConeClass::Outside
    } else if z.iter().any(Zero::is_zero) {
        ConeClass::Boundary
    } else {
        ConeClass::Interior
    }
}

/// `a − b ∈ C` given cone coordinates of `a` and `b`.
pub(crate) fn coords_dominate(za: &[Rational], zb: &[Rational]) -> bool {
    za.iter().zip(zb).all(|(a, b)| a >= b)
}

/// `a − b ∈ Int C` given cone coordinates.
pub(crate) fn coords_dominate_strictly(za: &[Rational], zb: &[Rational]) -> bool {
    za.iter().zip(zb).all(|(a, b)| a > b)
}

pub fn cone_classify(cone: &SimplicialCone, y: &[Rational]) -> Result<ConeClass> {
    cone.classify(y)
}

pub fn in_neg_polar(d: &SimplicialCone, u_star: &[Rational]) -> Result<bool> {
    d.in_neg_polar(u_star)
}

/// Componentwise maximum in cone coordinates: `(a + C) ∩ (b + C) = join(a, b) + C`.
pub(crate) fn join_coords(za: &[Rational], zb: &[Rational]) -> Vector {
    za.iter().zip(zb).map(|(a, b)| a.max(b).clone()).collect()
}

pub(crate) fn dominates(cone: &SimplicialCone, a: &[Rational], b: &[Rational]) -> Result<bool> {
    cone.contains(&rational::sub(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, vector};
    use proptest::prelude::*;

    fn skew() -> SimplicialCone {
        SimplicialCone::from_columns(&[vector(&[1, 0]), vector(&[1, 1])]).unwrap()
    }

    #[test]
    fn classify_examples() {
        let c = SimplicialCone::orthant(2);
        assert_eq!(c.classify(&vector(&[1, 2])).unwrap(), ConeClass::Interior);
        assert_eq!(c.classify(&vector(&[0, 3])).unwrap(), ConeClass::Boundary);
        assert_eq!(skew().classify(&vector(&[0, 1])).unwrap(), ConeClass::Outside);
        assert!(matches!(c.classify(&vector(&[1])), Err(Error::Dimension { .. })));
    }

    #[test]
    fn neg_polar_examples() {
        let ray = SimplicialCone::orthant(1);
        assert!(ray.in_neg_polar(&vector(&[1])).unwrap());
        assert!(!ray.in_neg_polar(&vector(&[-1])).unwrap());
        assert!(!SimplicialCone::orthant(2).in_neg_polar(&vector(&[1, -1])).unwrap());
        assert!(ray.in_neg_polar(&vector(&[1, 1])).is_err());
    }

    #[test]
    fn singular_generators_rejected() {
        let err = SimplicialCone::from_columns(&[vector(&[1, 2]), vector(&[2, 4])]);
        assert!(matches!(err, Err(Error::Input(_))));
    }

    #[test]
    fn neg_polar_points_are_admissible() {
        let d = skew();
        let u = d.neg_polar_point(&vector(&[2, 3]));
        assert!(d.in_neg_polar(&u).unwrap());
        for j in 0..2 {
            assert!(crate::rational::dot(&u, &d.generator(j)) >= int(0));
        }
    }

    fn small_cone(dim: usize) -> impl Strategy<Value = SimplicialCone> {
        proptest::collection::vec(-3i64..=3, dim * dim).prop_filter_map("singular", move |xs| {
            let cols: Vec<Vector> = xs.chunks(dim).map(vector).collect();
            SimplicialCone::from_columns(&cols).ok()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn coordinate_transform_is_exact(
            cone in small_cone(2),
            z in proptest::collection::vec((-4i64..=4, 1i64..=3), 2),
        ) {
            let z: Vector = z.iter().map(|&(n, d)| crate::rational::ratio(n, d)).collect();
            let y = cone.from_coords(&z);
            let interior = z.iter().all(|x| x.is_positive());
            prop_assert_eq!(cone.classify(&y).unwrap() == ConeClass::Interior, interior);
            prop_assert_eq!(cone.coords(&y).unwrap(), z);
        }

        #[test]
        fn interior_absorbs_cone(
            cone in small_cone(2),
            a in proptest::collection::vec(1i64..=5, 2),
            b in proptest::collection::vec(0i64..=5, 2),
        ) {
            let y = cone.from_coords(&vector(&a));
            let y2 = cone.from_coords(&vector(&b));
            prop_assert_eq!(cone.classify(&y).unwrap(), ConeClass::Interior);
            prop_assert!(cone.contains(&y2).unwrap());
            let sum = crate::rational::add(&y, &y2);
            prop_assert_eq!(cone.classify(&sum).unwrap(), ConeClass::Interior);
        }

        #[test]
        fn neg_polar_is_convex_cone(
            cone in small_cone(3),
            u in proptest::collection::vec(-4i64..=4, 3),
            v in proptest::collection::vec(-4i64..=4, 3),
        ) {
            let (u, v) = (vector(&u), vector(&v));
            if cone.in_neg_polar(&u).unwrap() && cone.in_neg_polar(&v).unwrap() {
                prop_assert!(cone.in_neg_polar(&crate::rational::add(&u, &v)).unwrap());
            }
        }
    }
}
