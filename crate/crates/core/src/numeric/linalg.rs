use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Matrix, Rational, Scalar};
use crate::error::{Error, Result};

/// Relative pivot threshold below which a float system counts as singular.
pub const DEFAULT_PIVOT_TOL: f64 = 1e-12;

/// Determinant of a square matrix.
///
/// Rationals go through fraction-free Bareiss elimination on an integer
/// rescaling of the rows; floats use LU with partial pivoting.
pub fn determinant<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("determinant of a non-square {}x{} matrix", m.rows(), m.cols())));
    }
    let det = T::square_determinant(m);
    det.check_finite()?;
    Ok(det)
}

pub(crate) fn bareiss_determinant(m: &Matrix<Rational>) -> Rational {
    let n = m.rows();
    // Clear denominators row by row; det(m) = det(scaled) / prod(row lcm).
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            scale *= &lcm;
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect();
    Rational::new(bareiss_integer(&mut a), scale)
}

/// Bareiss elimination in place; every division is exact.
fn bareiss_integer(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

pub(crate) fn lu_determinant(m: &Matrix<f64>) -> f64 {
    let n = m.rows();
    let mut a = m.clone();
    let mut det = 1.0;
    for k in 0..n {
        let pivot = (k..n).max_by(|&i, &j| a[(i, k)].abs().total_cmp(&a[(j, k)].abs())).unwrap_or(k);
        if a[(pivot, k)] == 0.0 {
            return 0.0;
        }
        if pivot != k {
            a.swap_rows(pivot, k);
            det = -det;
        }
        let p = a[(k, k)];
        det *= p;
        for i in k + 1..n {
            let f = a[(i, k)] / p;
            if f != 0.0 {
                for j in k + 1..n {
                    a[(i, j)] -= f * a[(k, j)];
                }
            }
        }
    }
    det
}

/// Solves `a x = b` with the default float pivot threshold.
pub fn linear_solve<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Result<Vec<T>> {
    linear_solve_with_tol(a, b, DEFAULT_PIVOT_TOL)
}

/// Gaussian elimination with partial pivoting.
///
/// A pivot counts as zero when it is exactly zero (rationals) or smaller
/// than `pivot_tol` times the largest entry of `a` (floats).
pub fn linear_solve_with_tol<T: Scalar>(a: &Matrix<T>, b: &[T], pivot_tol: f64) -> Result<Vec<T>> {
    let n = a.rows();
    if !a.is_square() || b.len() != n {
        return Err(Error::Dimension(format!(
            "cannot solve a {}x{} system with a right-hand side of length {}",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    let scale = a.max_abs();
    // Augmented working copy.
    let mut w = Matrix::from_fn(n, n + 1, |i, j| if j < n { a[(i, j)].clone() } else { b[i].clone() });
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| w[(i, k)].abs().partial_cmp(&w[(j, k)].abs()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(k);
        if w[(pivot, k)].is_negligible(scale, pivot_tol) {
            return Err(Error::Singular);
        }
        w.swap_rows(pivot, k);
        let p = w[(k, k)].clone();
        for i in k + 1..n {
            let f = w[(i, k)].clone() / p.clone();
            if !f.is_zero() {
                for j in k..=n {
                    let v = w[(i, j)].clone() - f.clone() * w[(k, j)].clone();
                    w[(i, j)] = v;
                }
            }
        }
    }
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut acc = w[(i, n)].clone();
        for j in i + 1..n {
            acc = acc - w[(i, j)].clone() * x[j].clone();
        }
        x[i] = acc / w[(i, i)].clone();
        x[i].check_finite()?;
    }
    Ok(x)
}

/// Inverse by solving against each column of the identity.
pub fn inverse<T: Scalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<T> = (0..n).map(|i| if i == j { T::one() } else { T::zero() }).collect();
        cols.push(linear_solve(a, &e)?);
    }
    Ok(Matrix::from_fn(n, n, |i, j| cols[j][i].clone()))
}
