//! Cayley-Menger matrices and squared simplex content.
//!
//! For `m` points with squared pairwise distances `d²`, the bordered
//! `(m+1)×(m+1)` matrix
//!
//! ```text
//! | 0  1     1    ...  1    |
//! | 1  0     d²12 ...  d²1m |
//! | .  .     .         .    |
//! | 1  d²m1  d²m2 ...  0    |
//! ```
//!
//! has determinant `(-1)^m · 2^(m-1) · ((m-1)!)² · V²` where `V` is the
//! `(m-1)`-dimensional content of the simplex on those points.

use crate::error::{Error, Result};
use crate::numeric::scalar::{factorial, powi, sign_power};
use crate::numeric::{determinant, Matrix, Scalar};

/// Symmetric, zero-diagonal matrix of squared pairwise distances.
#[derive(Debug, Clone, PartialEq)]
pub struct SquaredDistanceMatrix<T> {
    entries: Matrix<T>,
}

impl<T: Scalar> SquaredDistanceMatrix<T> {
    /// Validates `entries`. Floats must additionally be nonnegative; exact
    /// entries may be any rational.
    pub fn new(entries: Matrix<T>) -> Result<Self> {
        let m = entries.rows();
        if !entries.is_square() {
            return Err(Error::InvalidDistanceMatrix(format!(
                "matrix is {}x{}, not square",
                entries.rows(),
                entries.cols()
            )));
        }
        if m < 2 {
            return Err(Error::InvalidDistanceMatrix("need at least two points".into()));
        }
        for i in 0..m {
            if !entries[(i, i)].is_zero() {
                return Err(Error::InvalidDistanceMatrix(format!("diagonal entry {i} is {}, not 0", entries[(i, i)])));
            }
            for j in 0..i {
                if entries[(i, j)] != entries[(j, i)] {
                    return Err(Error::InvalidDistanceMatrix(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
                if !T::EXACT && entries[(i, j)].is_negative() {
                    return Err(Error::InvalidDistanceMatrix(format!("entry ({i},{j}) is negative")));
                }
            }
        }
        Ok(SquaredDistanceMatrix { entries })
    }

    /// Builds the matrix from the strict upper triangle supplied by `f(i, j)`
    /// for `i < j`.
    pub fn from_pairs(m: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        let mut entries = Matrix::zeros(m, m);
        for i in 0..m {
            for j in i + 1..m {
                let v = f(i, j);
                v.check_finite()?;
                entries[(i, j)] = v.clone();
                entries[(j, i)] = v;
            }
        }
        Self::new(entries)
    }

    /// Squared distances between the given points.
    pub fn from_points(points: &[Vec<T>]) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::Dimension("points have differing dimensions".into()));
        }
        Self::from_pairs(points.len(), |i, j| squared_distance(&points[i], &points[j]))
    }

    pub fn point_count(&self) -> usize {
        self.entries.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[(i, j)]
    }

    pub fn as_matrix(&self) -> &Matrix<T> {
        &self.entries
    }

    /// Largest entry as `f64`; used to scale float tolerances.
    pub fn max_entry(&self) -> f64 {
        self.entries.max_abs()
    }

    /// Same configuration with every label moved by `perm` (point `i`
    /// becomes point `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let m = self.point_count();
        let mut seen = vec![false; m];
        if perm.len() != m || perm.iter().any(|&p| p >= m || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidInput("not a permutation".into()));
        }
        let mut inv = vec![0; m];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        Self::new(Matrix::from_fn(m, m, |i, j| self.entries[(inv[i], inv[j])].clone()))
    }
}

pub(crate) fn squared_distance<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| {
        let d = x.clone() - y.clone();
        acc + d.clone() * d
    })
}

/// The bordered Cayley-Menger matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CmMatrix<T>(pub Matrix<T>);

impl<T> CmMatrix<T> {
    pub fn matrix(&self) -> &Matrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.0
    }
}

/// Squared content of a simplex, tagged with the simplex dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct VolumeSquared<T> {
    pub value: T,
    pub dim: usize,
}

pub fn build_cm_matrix<T: Scalar>(d: &SquaredDistanceMatrix<T>) -> CmMatrix<T> {
    let m = d.point_count();
    CmMatrix(Matrix::from_fn(m + 1, m + 1, |i, j| match (i, j) {
        (0, 0) => T::zero(),
        (0, _) | (_, 0) => T::one(),
        _ => d.get(i - 1, j - 1).clone(),
    }))
}

pub fn cm_determinant<T: Scalar>(d: &SquaredDistanceMatrix<T>) -> Result<T> {
    determinant(build_cm_matrix(d).matrix())
}

/// `(-1)^m · 2^(m-1) · ((m-1)!)²`, the factor relating the Cayley-Menger
/// determinant of `m` points to the squared content.
pub(crate) fn cm_volume_factor<T: Scalar>(m: usize) -> T {
    let f: T = factorial(m - 1);
    sign_power::<T>(m) * powi(&T::from_i64(2), m - 1) * f.clone() * f
}

pub fn volume_squared<T: Scalar>(d: &SquaredDistanceMatrix<T>) -> Result<VolumeSquared<T>> {
    let m = d.point_count();
    let det = cm_determinant(d)?;
    Ok(VolumeSquared { value: det / cm_volume_factor(m), dim: m - 1 })
}

/// Squared triangle area from side lengths via the 3-point Cayley-Menger
/// determinant (`-16 A²`).
pub fn heron_area_squared<T: Scalar>(a: &T, b: &T, c: &T) -> Result<T> {
    for side in [a, b, c] {
        side.check_finite()?;
        if side.is_negative() {
            return Err(Error::InvalidInput(format!("side length {side} is negative")));
        }
    }
    let sq = |x: &T| x.clone() * x.clone();
    // Points ordered so that side a is opposite the first vertex.
    let (a2, b2, c2) = (sq(a), sq(b), sq(c));
    let d = SquaredDistanceMatrix::from_pairs(3, |i, j| match (i, j) {
        (0, 1) => c2.clone(),
        (0, 2) => b2.clone(),
        _ => a2.clone(),
    })?;
    Ok(-cm_determinant(&d)? / T::from_i64(16))
}

/// Whether the points span less than `m - 1` dimensions.
///
/// Exact inputs are tested for an exactly zero volume; `tol` is then
/// ignored. Floats compare `|V²|` against `tol · (max d²)^(m-1)`.
pub fn is_degenerate<T: Scalar>(d: &SquaredDistanceMatrix<T>, tol: f64) -> Result<bool> {
    let v = volume_squared(d)?;
    let scale = d.max_entry().powi(v.dim as i32);
    Ok(v.value.is_negligible(scale, tol))
}

/// Squared content from coordinates: `|det [1 ... 1; x_1 ... x_m]| / (m-1)!`.
///
/// Independent of the distance route, so it doubles as an oracle.
pub fn volume_squared_from_coordinates<T: Scalar>(points: &[Vec<T>]) -> Result<VolumeSquared<T>> {
    let m = points.len();
    if m < 2 {
        return Err(Error::Dimension("need at least two points".into()));
    }
    if let Some(p) = points.iter().find(|p| p.len() != m - 1) {
        return Err(Error::Dimension(format!("{m} points must have dimension {}, found {}", m - 1, p.len())));
    }
    let u = Matrix::from_fn(m, m, |i, j| if i == 0 { T::one() } else { points[j][i - 1].clone() });
    let det = determinant(&u)?;
    let f: T = factorial(m - 1);
    Ok(VolumeSquared { value: det.clone() * det / (f.clone() * f), dim: m - 1 })
}
