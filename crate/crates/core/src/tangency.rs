//! Signed radii, curvatures and the Descartes / Soddy-Gosset identity.
//!
//! `n + 2` mutually tangent spheres in `n` dimensions have centers whose
//! squared distances are `(r_i + r_j)²`, with the radius of an enclosing
//! sphere taken negative. Their Cayley-Menger determinant factors as
//!
//! ```text
//! CM = (-1)^n · 2^(2n+1) · (Π r_i)² · [(Σ k_i)² - n Σ k_i²],   k_i = 1 / r_i
//! ```
//!
//! so the centers are flat exactly when the bracket (the residual) vanishes.

use crate::cayley_menger::{SquaredDistanceMatrix, VolumeSquared};
use crate::error::{Error, Result};
use crate::numeric::scalar::{factorial, powi, sign_power};
use crate::numeric::Scalar;

/// Relative tolerance for float residual checks.
pub const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RadiusValidation {
    /// Nonzero radii, correct count, at most one negative (enclosing) radius.
    #[default]
    Strict,
    /// Nonzero radii and correct count only; the identity is purely
    /// algebraic and holds for any sign pattern.
    Lenient,
}

/// Signed radii of `n + 2` mutually tangent `n`-spheres.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedRadii<T> {
    radii: Vec<T>,
    dim: usize,
}

impl<T: Scalar> SignedRadii<T> {
    pub fn values(&self) -> &[T] {
        &self.radii
    }

    /// Sphere dimension `n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn product(&self) -> T {
        self.radii.iter().fold(T::one(), |acc, r| acc * r.clone())
    }

    /// Every radius multiplied by `s`.
    pub fn scaled(&self, s: &T) -> Result<Self> {
        validate_radii(self.radii.iter().map(|r| r.clone() * s.clone()).collect(), self.dim, RadiusValidation::Lenient)
    }
}

/// Reciprocal radii.
#[derive(Debug, Clone, PartialEq)]
pub struct Curvatures<T> {
    values: Vec<T>,
    dim: usize,
}

impl<T: Scalar> Curvatures<T> {
    /// `n + 2` nonzero curvatures for sphere dimension `n`.
    pub fn new(values: Vec<T>, dim: usize) -> Result<Self> {
        check_dim(dim)?;
        if values.len() != dim + 2 {
            return Err(Error::WrongLength { expected: dim + 2, got: values.len() });
        }
        check_nonzero_curvatures(&values)?;
        Ok(Curvatures { values, dim })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn to_radii(&self) -> SignedRadii<T> {
        SignedRadii { radii: self.values.iter().map(|k| T::one() / k.clone()).collect(), dim: self.dim }
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidInput("sphere dimension must be at least 1".into()));
    }
    Ok(())
}

fn check_nonzero_curvatures<T: Scalar>(values: &[T]) -> Result<()> {
    for (index, k) in values.iter().enumerate() {
        k.check_finite()?;
        if k.is_zero() {
            return Err(Error::ZeroCurvature { index });
        }
    }
    Ok(())
}

pub fn validate_radii<T: Scalar>(raw: Vec<T>, dim: usize, mode: RadiusValidation) -> Result<SignedRadii<T>> {
    check_dim(dim)?;
    if raw.len() != dim + 2 {
        return Err(Error::WrongLength { expected: dim + 2, got: raw.len() });
    }
    for (index, r) in raw.iter().enumerate() {
        r.check_finite()?;
        if r.is_zero() {
            return Err(Error::ZeroRadius { index });
        }
    }
    if mode == RadiusValidation::Strict {
        let count = raw.iter().filter(|r| r.is_negative()).count();
        if count > 1 {
            return Err(Error::MultipleNegative { count });
        }
    }
    Ok(SignedRadii { radii: raw, dim })
}

pub fn curvatures_from_radii<T: Scalar>(r: &SignedRadii<T>) -> Curvatures<T> {
    Curvatures { values: r.radii.iter().map(|v| T::one() / v.clone()).collect(), dim: r.dim }
}

/// `d²_ij = (r_i + r_j)²`.
pub fn tangency_squared_distances<T: Scalar>(r: &SignedRadii<T>) -> Result<SquaredDistanceMatrix<T>> {
    let v = &r.radii;
    SquaredDistanceMatrix::from_pairs(v.len(), |i, j| {
        let s = v[i].clone() + v[j].clone();
        s.clone() * s
    })
}

/// `(Σ k)² - n Σ k²`; zero exactly when the curvatures satisfy the
/// Soddy-Gosset identity (Descartes for `n = 2`).
pub fn descartes_residual<T: Scalar>(k: &Curvatures<T>) -> T {
    residual_of(&k.values, k.dim)
}

pub(crate) fn residual_of<T: Scalar>(values: &[T], dim: usize) -> T {
    let (sum, sum_sq) =
        values.iter().fold((T::zero(), T::zero()), |(s, q), v| (s + v.clone(), q + v.clone() * v.clone()));
    sum.clone() * sum - T::from_i64(dim as i64) * sum_sq
}

/// Scale against which a float residual is judged negligible.
pub(crate) fn residual_scale<T: Scalar>(values: &[T], dim: usize) -> f64 {
    let sum_sq: f64 = values.iter().map(|v| v.to_f64().powi(2)).sum();
    (dim as f64 * sum_sq).max(1.0)
}

/// `(-1)^n · 2^(2n+1) · (Π r)² · residual`, the closed form of the
/// Cayley-Menger determinant of the tangency distances.
pub fn factored_cm_determinant<T: Scalar>(r: &SignedRadii<T>) -> T {
    let n = r.dim;
    let p = r.product();
    sign_power::<T>(n)
        * powi(&T::from_i64(2), 2 * n + 1)
        * p.clone()
        * p
        * descartes_residual(&curvatures_from_radii(r))
}

/// `2^n · (Π r / (n+1)!)² · residual`: squared volume of the simplex of
/// centers without forming the determinant.
pub fn factored_volume_squared<T: Scalar>(r: &SignedRadii<T>) -> VolumeSquared<T> {
    let n = r.dim;
    let q = r.product() / factorial::<T>(n + 1);
    VolumeSquared {
        value: powi(&T::from_i64(2), n) * q.clone() * q * descartes_residual(&curvatures_from_radii(r)),
        dim: n + 1,
    }
}

/// Solutions for the last curvature of a tangent configuration.
#[derive(Debug, Clone, PartialEq)]
pub enum CurvatureRoots<T> {
    /// Both roots of the quadratic, larger first. May coincide.
    Pair { larger: T, smaller: T },
    /// `n = 1` collapses the quadratic to a linear equation.
    Single(T),
}

impl<T: Scalar> CurvatureRoots<T> {
    pub fn larger(&self) -> &T {
        match self {
            CurvatureRoots::Pair { larger, .. } => larger,
            CurvatureRoots::Single(k) => k,
        }
    }

    pub fn smaller(&self) -> &T {
        match self {
            CurvatureRoots::Pair { smaller, .. } => smaller,
            CurvatureRoots::Single(k) => k,
        }
    }

    pub fn to_vec(&self) -> Vec<T> {
        match self {
            CurvatureRoots::Pair { larger, smaller } => vec![larger.clone(), smaller.clone()],
            CurvatureRoots::Single(k) => vec![k.clone()],
        }
    }
}

/// Given `n + 1` curvatures, finds the curvature(s) completing a tangent
/// configuration of `n + 2` spheres.
///
/// With `S = Σ known` and `Q = Σ known²` the roots are
/// `(S ± √(n(S² - (n-1)Q))) / (n-1)`. Exact scalars only succeed when the
/// discriminant is the square of a rational; otherwise the caller gets
/// [`Error::FloatModeRequired`].
pub fn solve_missing_curvature<T: Scalar>(known: &[T], dim: usize) -> Result<CurvatureRoots<T>> {
    check_dim(dim)?;
    if known.len() != dim + 1 {
        return Err(Error::WrongLength { expected: dim + 1, got: known.len() });
    }
    check_nonzero_curvatures(known)?;
    let (s, q) = known.iter().fold((T::zero(), T::zero()), |(s, q), v| (s + v.clone(), q + v.clone() * v.clone()));
    let two = T::from_i64(2);
    if dim == 1 {
        // (S + x)² - (Q + x²) = 0  =>  2 S x = Q - S²
        if s.is_zero() {
            return Err(Error::NoRealSolution("linear equation has a vanishing coefficient".into()));
        }
        return Ok(CurvatureRoots::Single((q - s.clone() * s.clone()) / (two * s)));
    }
    let nm1 = T::from_i64(dim as i64 - 1);
    let mut disc = T::from_i64(dim as i64) * (s.clone() * s.clone() - nm1.clone() * q.clone());
    if disc.is_negative() {
        // Floats within roundoff of a double root are treated as one.
        let scale = dim as f64 * (s.to_f64().powi(2) + dim as f64 * q.to_f64());
        if disc.is_negligible(scale, 1e-14) {
            disc = T::zero();
        } else {
            return Err(Error::NoRealSolution(disc.to_string()));
        }
    }
    let root = disc.checked_sqrt().ok_or(Error::FloatModeRequired)?;
    Ok(CurvatureRoots::Pair { larger: (s.clone() + root.clone()) / nm1.clone(), smaller: (s - root) / nm1 })
}

/// Second root of the quadratic for position `index`:
/// `2 Σ_{j≠index} k_j / (n-1) - k_index`.
///
/// Fails when `k` does not already satisfy the identity.
pub fn vieta_partner<T: Scalar>(k: &Curvatures<T>, index: usize) -> Result<T> {
    let values = &k.values;
    if index >= values.len() {
        return Err(Error::InvalidInput(format!("index {index} out of range for {} curvatures", values.len())));
    }
    if k.dim < 2 {
        return Err(Error::InvalidInput("partner is undefined when the quadratic degenerates (n = 1)".into()));
    }
    let residual = descartes_residual(k);
    if !residual.is_negligible(residual_scale(values, k.dim), RESIDUAL_TOL) {
        return Err(Error::InconsistentConfiguration(residual.to_string()));
    }
    let others = values.iter().enumerate().filter(|&(j, _)| j != index).fold(T::zero(), |acc, (_, v)| acc + v.clone());
    Ok(T::from_i64(2) * others / T::from_i64(k.dim as i64 - 1) - values[index].clone())
}
