//! Coordinates from squared distances.
//!
//! [`realize_points`] recovers a point set from its squared-distance matrix
//! through the Gram matrix relative to point 0; [`append_point`] places one
//! more point by trilateration. Both work in `f64`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::cayley_menger::{squared_distance, SquaredDistanceMatrix};
use crate::error::{Error, Result};
use crate::numeric::{linear_solve, Matrix};

/// Relative tolerance used when the caller has no better estimate.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Relative accuracy every returned configuration is checked against.
const ROUND_TRIP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedPoints {
    points: Vec<Vec<f64>>,
    dim: usize,
}

impl EmbeddedPoints {
    pub fn new(points: Vec<Vec<f64>>, dim: usize) -> Result<Self> {
        for p in &points {
            if p.len() != dim {
                return Err(Error::Dimension(format!("point has {} coordinates, expected {dim}", p.len())));
            }
            if let Some(v) = p.iter().find(|v| !v.is_finite()) {
                return Err(Error::NonFinite(v.to_string()));
            }
        }
        Ok(EmbeddedPoints { points, dim })
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn squared_distances(&self) -> Result<SquaredDistanceMatrix<f64>> {
        SquaredDistanceMatrix::from_points(&self.points)
    }

    pub fn push(&mut self, p: Vec<f64>) -> Result<()> {
        if p.len() != self.dim {
            return Err(Error::Dimension(format!("point has {} coordinates, expected {}", p.len(), self.dim)));
        }
        self.points.push(p);
        Ok(())
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Removes the components of `v` along the orthonormal `basis`, twice for
/// stability.
fn orthogonalize(v: &[f64], basis: &[Vec<f64>]) -> Vec<f64> {
    let mut r = v.to_vec();
    for _ in 0..2 {
        for b in basis {
            let c = dot(&r, b);
            r.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
        }
    }
    r
}

/// Extends `basis` to `dim` orthonormal vectors with standard unit vectors.
fn complete_basis(basis: &mut Vec<Vec<f64>>, dim: usize) {
    for axis in 0..dim {
        if basis.len() == dim {
            break;
        }
        let mut e = vec![0.0; dim];
        e[axis] = 1.0;
        let r = orthogonalize(&e, basis);
        let norm = dot(&r, &r).sqrt();
        if norm > 1e-6 {
            basis.push(r.into_iter().map(|x| x / norm).collect());
        }
    }
}

/// Rotates points (with point 0 at the origin) so point 1 lies on the
/// positive first axis, point 2 has a nonnegative second coordinate, etc.
fn canonical_frame(points: &[Vec<f64>], dim: usize, min_sq_norm: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(dim);
    for p in points.iter().skip(1) {
        if basis.len() == dim {
            break;
        }
        let r = orthogonalize(p, &basis);
        let sq = dot(&r, &r);
        if sq > min_sq_norm {
            let norm = sq.sqrt();
            basis.push(r.into_iter().map(|x| x / norm).collect());
        }
    }
    complete_basis(&mut basis, dim);
    points.iter().map(|p| basis.iter().map(|b| dot(p, b)).collect()).collect()
}

fn check_round_trip(points: &[Vec<f64>], d: &SquaredDistanceMatrix<f64>, rel_tol: f64) -> Result<()> {
    let scale = d.max_entry().max(f64::MIN_POSITIVE);
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let err = (squared_distance(&points[i], &points[j]) - d.get(i, j)).abs();
            if err > rel_tol * scale {
                return Err(Error::NoSolution(format!("recovered distance ({i},{j}) is off by {err:e}")));
            }
        }
    }
    Ok(())
}

/// Coordinates in `dim` dimensions reproducing `d`.
///
/// Eigenvalues of the Gram matrix are compared against `tol · max d²`:
/// more than `dim` non-negligible eigenvalues is a rank error, and a
/// significantly negative one means the distances are not Euclidean.
/// Point 0 lands at the origin and the frame is normalized as described in
/// [`canonical_frame`].
pub fn realize_points(d: &SquaredDistanceMatrix<f64>, dim: usize, tol: f64) -> Result<EmbeddedPoints> {
    if dim == 0 {
        return Err(Error::InvalidInput("target dimension must be at least 1".into()));
    }
    let m = d.point_count();
    let scale = d.max_entry();
    let k = m - 1;
    let gram = DMatrix::from_fn(k, k, |i, j| (d.get(0, i + 1) + d.get(0, j + 1) - d.get(i + 1, j + 1)) / 2.0);
    let eig = SymmetricEigen::new(gram);
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let threshold = tol * scale;
    let rank = order.iter().filter(|&&c| eig.eigenvalues[c].abs() > threshold).count();
    if rank > dim {
        return Err(Error::RankExceedsDim { rank, dim });
    }
    if let Some(&c) = order.iter().find(|&&c| eig.eigenvalues[c] < -threshold) {
        return Err(Error::NonEuclidean(format!("{:e}", eig.eigenvalues[c])));
    }

    let mut points = vec![vec![0.0; dim]; m];
    for (slot, &c) in order.iter().take(dim).enumerate() {
        let root = eig.eigenvalues[c].max(0.0).sqrt();
        for i in 0..k {
            points[i + 1][slot] = eig.eigenvectors[(i, c)] * root;
        }
    }
    let points = canonical_frame(&points, dim, threshold);
    check_round_trip(&points, d, ROUND_TRIP_TOL.max(4.0 * tol))?;
    EmbeddedPoints::new(points, dim)
}

/// Every point at the given squared distances from `existing`: one point
/// when it is determined, or the mirror pair when the existing points span
/// a hyperplane and the new point lies off it.
pub fn append_point_candidates(existing: &EmbeddedPoints, sq_dists: &[f64], tol: f64) -> Result<Vec<Vec<f64>>> {
    let pts = existing.points();
    let dim = existing.dim();
    if pts.is_empty() {
        return Err(Error::InvalidInput("need at least one existing point".into()));
    }
    if sq_dists.len() != pts.len() {
        return Err(Error::WrongLength { expected: pts.len(), got: sq_dists.len() });
    }
    for s in sq_dists {
        if !s.is_finite() {
            return Err(Error::NonFinite(s.to_string()));
        }
        if *s < 0.0 {
            return Err(Error::InvalidInput(format!("squared distance {s} is negative")));
        }
    }

    let origin = &pts[0];
    let offsets: Vec<Vec<f64>> = pts.iter().map(|p| p.iter().zip(origin).map(|(a, b)| a - b).collect()).collect();
    let scale =
        offsets.iter().map(|o| dot(o, o)).chain(sq_dists.iter().copied()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);

    // Orthonormal basis of the affine hull of the existing points.
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for o in offsets.iter().skip(1) {
        let r = orthogonalize(o, &basis);
        let sq = dot(&r, &r);
        if sq > tol * scale {
            let norm = sq.sqrt();
            basis.push(r.into_iter().map(|x| x / norm).collect());
        }
    }
    let rank = basis.len();

    // 2 (Eᵀ o_i) · y = s_0 - s_i + |o_i|², solved in the least-squares sense.
    let y = if rank == 0 {
        Vec::new()
    } else {
        let rows: Vec<Vec<f64>> =
            offsets.iter().skip(1).map(|o| basis.iter().map(|b| 2.0 * dot(o, b)).collect()).collect();
        let rhs: Vec<f64> = offsets.iter().zip(sq_dists).skip(1).map(|(o, s)| sq_dists[0] - s + dot(o, o)).collect();
        let normal = Matrix::from_fn(rank, rank, |i, j| rows.iter().map(|r| r[i] * r[j]).sum());
        let normal_rhs: Vec<f64> = (0..rank).map(|i| rows.iter().zip(&rhs).map(|(r, b)| r[i] * b).sum()).collect();
        linear_solve(&normal, &normal_rhs)?
    };

    let base: Vec<f64> =
        (0..dim).map(|c| origin[c] + basis.iter().zip(&y).map(|(b, yi)| b[c] * yi).sum::<f64>()).collect();
    let height_sq = sq_dists[0] - dot(&y, &y);
    if height_sq < -tol * scale {
        return Err(Error::NoSolution(format!("distances are inconsistent (height² = {height_sq:e})")));
    }
    // Heights within tolerance of zero are snapped: the square root would
    // otherwise turn roundoff in height² into a visible offset.
    let height = if height_sq <= tol * scale { 0.0 } else { height_sq.sqrt() };

    let candidates = match dim - rank {
        0 => vec![base],
        1 if height > 0.0 => {
            let mut full = basis.clone();
            complete_basis(&mut full, dim);
            let normal = &full[rank];
            let shift =
                |sign: f64| -> Vec<f64> { base.iter().zip(normal).map(|(b, u)| b + sign * height * u).collect() };
            vec![shift(1.0), shift(-1.0)]
        }
        _ if height == 0.0 => vec![base],
        free => return Err(Error::Ambiguous(format!("{free} free directions for the new point"))),
    };

    let verify_tol = ROUND_TRIP_TOL.max(tol) * scale;
    for c in &candidates {
        for (i, (p, s)) in pts.iter().zip(sq_dists).enumerate() {
            let err = (squared_distance(c, p) - s).abs();
            if err > verify_tol {
                return Err(Error::NoSolution(format!("distance to point {i} is off by {err:e}")));
            }
        }
    }
    Ok(candidates)
}

/// Trilaterates a new point. When two mirror-image solutions exist the one
/// with the nonnegative final coordinate is returned.
pub fn append_point(existing: &EmbeddedPoints, sq_dists: &[f64], tol: f64) -> Result<Vec<f64>> {
    let candidates = append_point_candidates(existing, sq_dists, tol)?;
    Ok(candidates
        .into_iter()
        .max_by(|a, b| {
            a.iter()
                .rev()
                .zip(b.iter().rev())
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .expect("at least one candidate"))
}
