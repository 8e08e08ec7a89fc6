//! Dense exact linear algebra on small rational matrices.

use num::{Signed, Zero};

use crate::rational::{Rational, Vector};

/// Row-major dense matrix.
pub type Matrix = Vec<Vector>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }).collect())
        .collect()
}

pub fn mat_vec(m: &Matrix, v: &[Rational]) -> Vector {
    m.iter().map(|row| crate::rational::dot(row, v)).collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn column(m: &Matrix, j: usize) -> Vector {
    m.iter().map(|row| row[j].clone()).collect()
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut a: Vec<Vector> =
        m.iter().zip(identity(n)).map(|(row, id)| row.iter().cloned().chain(id).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let factor = row[col].clone();
                for (d, s) in row.iter_mut().zip(&pivot_row) {
                    *d -= &factor * s;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solves the square system `m x = b`; `None` when `m` is singular.
pub fn solve(m: &Matrix, b: &[Rational]) -> Option<Vector> {
    inverse(m).map(|inv| mat_vec(&inv, b))
}

pub fn determinant_sign(m: &Matrix) -> i8 {
    let n = m.len();
    let mut a = m.clone();
    let mut sign = 1i8;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return 0;
        };
        if pivot != col {
            a.swap(col, pivot);
            sign = -sign;
        }
        if a[col][col].is_negative() {
            sign = -sign;
        }
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest.iter_mut() {
            if !row[col].is_zero() {
                let f = &row[col] / &pivot_row[col];
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &f * p;
                }
            }
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn inverse_of_skew_basis() {
        // columns (1,0) and (1,1)
        let m = vec![vec![int(1), int(1)], vec![int(0), int(1)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![int(1), int(-1)], vec![int(0), int(1)]]);
        assert_eq!(mat_vec(&inv, &[int(0), int(1)]), vec![int(-1), int(1)]);
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(inverse(&m).is_none());
        assert_eq!(determinant_sign(&m), 0);
    }

    #[test]
    fn solve_three_by_three() {
        let m = vec![vec![int(2), int(0), int(1)], vec![int(1), int(3), int(0)], vec![int(0), int(1), int(1)]];
        let x = vec![ratio(1, 2), int(-1), int(3)];
        let b = mat_vec(&m, &x);
        assert_eq!(solve(&m, &b).unwrap(), x);
        assert_eq!(determinant_sign(&m), 1);
    }
}
