//! Exact two-phase simplex over the rationals.
//!
//! Solves `max / min objᵀx  s.t.  A x ≤ b` with `x` free ([`lp_solve`]) or
//! `x ≥ 0` ([`lp_solve_nonneg`]). Free variables are split as `x = x⁺ − x⁻`,
//! each row gets a slack, and rows with negative right-hand side get an
//! artificial variable for phase one. Pivoting uses
//! Bland's rule, so the method terminates on degenerate problems.

use num::{Signed, Zero};

use crate::error::{check_dim, Result};
use crate::rational::{dot, Rational, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { point: Vector, value: Rational },
    Unbounded,
    Infeasible,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&Vector> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

pub fn lp_solve(a: &[Vector], b: &[Rational], obj: &[Rational], sense: Sense) -> Result<LpOutcome> {
    solve_with(a, b, obj, sense, true)
}

/// As [`lp_solve`] with the implicit bounds `x ≥ 0`.
pub fn lp_solve_nonneg(a: &[Vector], b: &[Rational], obj: &[Rational], sense: Sense) -> Result<LpOutcome> {
    solve_with(a, b, obj, sense, false)
}

fn solve_with(a: &[Vector], b: &[Rational], obj: &[Rational], sense: Sense, free: bool) -> Result<LpOutcome> {
    let n = obj.len();
    check_dim(a.len(), b.len())?;
    for row in a {
        check_dim(n, row.len())?;
    }
    let mut cost: Vector = obj.to_vec();
    if sense == Sense::Minimize {
        cost.iter_mut().for_each(|c| *c = -c.clone());
    }
    let outcome = Tableau::build(a, b, n, free).solve(&cost);
    Ok(match outcome {
        Solved::Optimal(point) => {
            let value = dot(obj, &point);
            LpOutcome::Optimal { point, value }
        }
        Solved::Unbounded => LpOutcome::Unbounded,
        Solved::Infeasible => LpOutcome::Infeasible,
    })
}

enum Solved {
    Optimal(Vector),
    Unbounded,
    Infeasible,
}

struct Tableau {
    /// Number of original variables.
    n: usize,
    /// Whether the originals are free and therefore split into two columns.
    split: bool,
    /// Constraint rows; the last entry of each row is the right-hand side.
    rows: Vec<Vector>,
    basis: Vec<usize>,
    /// Columns that may never enter the basis (dropped artificials).
    banned: Vec<bool>,
    first_artificial: usize,
    ncols: usize,
}

impl Tableau {
    fn build(a: &[Vector], b: &[Rational], n: usize, split: bool) -> Self {
        let m = a.len();
        let artificial_rows: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
        let first_slack = if split { 2 * n } else { n };
        let first_artificial = first_slack + m;
        let ncols = first_artificial + artificial_rows.len();
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        for i in 0..m {
            let mut row = vec![Rational::zero(); ncols + 1];
            let flip = b[i].is_negative();
            for j in 0..n {
                let v = if flip { -a[i][j].clone() } else { a[i][j].clone() };
                if split {
                    row[n + j] = -v.clone();
                }
                row[j] = v;
            }
            let one = Rational::from_integer(1.into());
            row[first_slack + i] = if flip { -one.clone() } else { one.clone() };
            row[ncols] = if flip { -b[i].clone() } else { b[i].clone() };
            if flip {
                let k = artificial_rows.iter().position(|&r| r == i).unwrap();
                row[first_artificial + k] = one;
                basis.push(first_artificial + k);
            } else {
                basis.push(first_slack + i);
            }
            rows.push(row);
        }
        Self { n, split, rows, basis, banned: vec![false; ncols], first_artificial, ncols }
    }

    fn solve(mut self, cost: &[Rational]) -> Solved {
        if self.first_artificial < self.ncols {
            let mut phase1 = vec![Rational::zero(); self.ncols];
            for c in phase1.iter_mut().skip(self.first_artificial) {
                *c = Rational::from_integer((-1).into());
            }
            match self.optimize(&phase1) {
                Some(value) if value.is_zero() => {}
                // Phase one is bounded above by zero.
                _ => return Solved::Infeasible,
            }
            self.drop_artificials();
        }
        let mut full = vec![Rational::zero(); self.ncols];
        for j in 0..self.n {
            full[j] = cost[j].clone();
            if self.split {
                full[self.n + j] = -cost[j].clone();
            }
        }
        match self.optimize(&full) {
            None => Solved::Unbounded,
            Some(_) => {
                let mut x = vec![Rational::zero(); self.n];
                for (i, &bv) in self.basis.iter().enumerate() {
                    let rhs = &self.rows[i][self.ncols];
                    if bv < self.n {
                        x[bv] += rhs;
                    } else if self.split && bv < 2 * self.n {
                        x[bv - self.n] -= rhs;
                    }
                }
                Solved::Optimal(x)
            }
        }
    }

    /// Maximizes `costᵀ·(columns)` from the current feasible basis. Returns
    /// the optimal value, or `None` when unbounded.
    fn optimize(&mut self, cost: &[Rational]) -> Option<Rational> {
        loop {
            let reduced = self.reduced_costs(cost);
            let entering =
                (0..self.ncols).find(|&j| !self.banned[j] && !self.basis.contains(&j) && reduced[j].is_positive());
            let Some(q) = entering else {
                return Some(self.basis.iter().enumerate().map(|(i, &bv)| &cost[bv] * &self.rows[i][self.ncols]).sum());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[q].is_positive() {
                    continue;
                }
                let ratio = &row[self.ncols] / &row[q];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (p, _) = leave?;
            self.pivot(p, q);
        }
    }

    fn reduced_costs(&self, cost: &[Rational]) -> Vector {
        let mut reduced = cost.to_vec();
        for (i, &bv) in self.basis.iter().enumerate() {
            if cost[bv].is_zero() {
                continue;
            }
            for (j, r) in reduced.iter_mut().enumerate() {
                if !self.rows[i][j].is_zero() {
                    *r -= &cost[bv] * &self.rows[i][j];
                }
            }
        }
        reduced
    }

    fn pivot(&mut self, p: usize, q: usize) {
        let pv = self.rows[p][q].clone();
        for x in self.rows[p].iter_mut() {
            *x /= &pv;
        }
        let pivot_row = self.rows[p].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == p || row[q].is_zero() {
                continue;
            }
            let f = row[q].clone();
            for (x, s) in row.iter_mut().zip(&pivot_row) {
                if !s.is_zero() {
                    *x -= &f * s;
                }
            }
        }
        self.basis[p] = q;
    }

    /// After a successful phase one every artificial sits at zero. Pivot
    /// them out of the basis, dropping rows that turn out to be redundant.
    fn drop_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.first_artificial {
                let col = (0..self.first_artificial).find(|&j| !self.rows[i][j].is_zero());
                match col {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        for j in self.first_artificial..self.ncols {
            self.banned[j] = true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio, vector};

    #[test]
    fn single_upper_bound() {
        let out = lp_solve(&[vector(&[1])], &[int(3)], &[int(1)], Sense::Maximize).unwrap();
        assert_eq!(out, LpOutcome::Optimal { point: vector(&[3]), value: int(3) });
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let out = lp_solve(&[vector(&[1]), vector(&[-1])], &[int(-1), int(-1)], &[int(1)], Sense::Maximize).unwrap();
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn free_ascent_is_unbounded() {
        let out =
            lp_solve(&[vector(&[-1, 0]), vector(&[0, -1])], &[int(0), int(0)], &[int(1), int(1)], Sense::Maximize)
                .unwrap();
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn minimize_with_negative_rhs() {
        // min x + y s.t. x + 2y >= 1, 3x + y >= 1  (written as <=)
        let a = vec![vector(&[-1, -2]), vector(&[-3, -1]), vector(&[-1, 0]), vector(&[0, -1])];
        let b = vec![int(-1), int(-1), int(0), int(0)];
        let out = lp_solve(&a, &b, &vector(&[1, 1]), Sense::Minimize).unwrap();
        assert_eq!(out, LpOutcome::Optimal { point: vec![ratio(1, 5), ratio(2, 5)], value: ratio(3, 5) });
    }

    #[test]
    fn equality_pairs_and_redundant_rows() {
        // x + y = 1 twice (redundant), maximize x with x <= 2/3
        let a = vec![vector(&[1, 1]), vector(&[-1, -1]), vector(&[2, 2]), vector(&[-2, -2]), vector(&[1, 0])];
        let b = vec![int(1), int(-1), int(2), int(-2), ratio(2, 3)];
        let out = lp_solve(&a, &b, &vector(&[1, 0]), Sense::Maximize).unwrap();
        assert_eq!(out.value(), Some(&ratio(2, 3)));
        assert_eq!(out.point().unwrap()[1], ratio(1, 3));
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's classic cycling example, stated as a maximization.
        let a = vec![
            vec![ratio(1, 4), int(-60), ratio(-1, 25), int(9)],
            vec![ratio(1, 2), int(-90), ratio(-1, 50), int(3)],
            vec![int(0), int(0), int(1), int(0)],
            vec![int(-1), int(0), int(0), int(0)],
            vec![int(0), int(-1), int(0), int(0)],
            vec![int(0), int(0), int(-1), int(0)],
            vec![int(0), int(0), int(0), int(-1)],
        ];
        let b = vec![int(0), int(0), int(1), int(0), int(0), int(0), int(0)];
        let obj = vec![ratio(3, 4), int(-150), ratio(1, 50), int(-6)];
        let out = lp_solve(&a, &b, &obj, Sense::Maximize).unwrap();
        assert_eq!(out.value(), Some(&ratio(1, 20)));
    }

    #[test]
    fn dimension_mismatch() {
        assert!(lp_solve(&[vector(&[1, 1])], &[int(1)], &[int(1)], Sense::Maximize).is_err());
        assert!(lp_solve(&[vector(&[1])], &[], &[int(1)], Sense::Maximize).is_err());
    }

    #[test]
    fn nonnegative_variables() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x, y >= 0
        let a = vec![vector(&[1, 2]), vector(&[3, 1])];
        let b = vec![int(4), int(6)];
        let out = lp_solve_nonneg(&a, &b, &vector(&[1, 1]), Sense::Maximize).unwrap();
        assert_eq!(out, LpOutcome::Optimal { point: vec![ratio(8, 5), ratio(6, 5)], value: ratio(14, 5) });
        let min = lp_solve_nonneg(&a, &b, &vector(&[1, 1]), Sense::Minimize).unwrap();
        assert_eq!(min.value(), Some(&int(0)));
        let eq = lp_solve_nonneg(
            &[vector(&[1, 1]), vector(&[-1, -1])],
            &[int(1), int(-1)],
            &vector(&[-1, 2]),
            Sense::Minimize,
        )
        .unwrap();
        assert_eq!(eq.point(), Some(&vector(&[1, 0])));
        assert_eq!(lp_solve_nonneg(&[], &[], &[int(1)], Sense::Maximize).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn no_constraints() {
        assert_eq!(lp_solve(&[], &[], &[int(0)], Sense::Maximize).unwrap().value(), Some(&int(0)));
        assert_eq!(lp_solve(&[], &[], &[int(1)], Sense::Maximize).unwrap(), LpOutcome::Unbounded);
    }
}
