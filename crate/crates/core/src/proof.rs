//! Executable re-check of the matrix identities linking Cayley-Menger
//! determinants to the Descartes / Soddy-Gosset identity.
//!
//! Everything here runs over exact rationals. Each check records both
//! sides so a failing entry can be re-examined independently.
//!
//! The chain for radii `r_1..r_{n+2}` with Cayley-Menger matrix `D`:
//!
//! 1. `P` (identity with row 0 set to `(1, -r_1², ...)`) strips the `r_i²`
//!    terms: `PᵀDP` has `-2r_i²` on the diagonal and `2r_ir_j` elsewhere.
//! 2. `Q = diag(1, 1/r_1, ...)` factors out the radii, leaving the block
//!    form `[[0, Rᵀ], [R, S]]` with `R = (1/r_i)` and `S = 2·11ᵀ - 4I`.
//! 3. The block determinant rule gives `-|S| RᵀS⁻¹R`, which equals
//!    `(-1)^n 2^(2n+1) [(Σk)² - nΣk²]`.
//! 4. Congruence: `|QᵀPᵀDPQ| = |P|²|Q|²|D|`.

use std::fmt;

use num_traits::{One, Zero};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cayley_menger::{build_cm_matrix, volume_squared_from_coordinates, SquaredDistanceMatrix};
use crate::error::{Error, Result};
use crate::json::{JsonRational, JsonRationalMatrix};
use crate::numeric::scalar::{factorial, powi, sign_power};
use crate::numeric::{determinant, inverse, Matrix, Rational, Scalar};
use crate::tangency::{curvatures_from_radii, descartes_residual, tangency_squared_distances, SignedRadii};

/// One side of an identity.
#[derive(Debug, Clone, PartialEq)]
pub enum ProofValue {
    Scalar(Rational),
    Matrix(Matrix<Rational>),
}

impl fmt::Display for ProofValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofValue::Scalar(v) => write!(f, "{v}"),
            ProofValue::Matrix(m) => write!(f, "{m}"),
        }
    }
}

impl Serialize for ProofValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ProofValue::Scalar(v) => JsonRational(v).serialize(s),
            ProofValue::Matrix(m) => JsonRationalMatrix(m).serialize(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    /// Dimension the identity was instantiated in: the sphere dimension `n`
    /// for radius-based checks, the ambient dimension for coordinate checks.
    pub dim: usize,
    pub passed: bool,
    pub lhs: ProofValue,
    pub rhs: ProofValue,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ProofReport {
    pub checks: Vec<IdentityCheck>,
}

impl ProofReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn extend(&mut self, other: ProofReport) {
        self.checks.extend(other.checks);
    }

    fn scalar(&mut self, name: &str, dim: usize, lhs: Rational, rhs: Rational) {
        self.checks.push(IdentityCheck {
            name: name.to_string(),
            dim,
            passed: lhs == rhs,
            lhs: ProofValue::Scalar(lhs),
            rhs: ProofValue::Scalar(rhs),
        });
    }

    fn matrix(&mut self, name: &str, dim: usize, lhs: Matrix<Rational>, rhs: Matrix<Rational>) {
        self.checks.push(IdentityCheck {
            name: name.to_string(),
            dim,
            passed: lhs == rhs,
            lhs: ProofValue::Matrix(lhs),
            rhs: ProofValue::Matrix(rhs),
        });
    }

    /// One line per check: `PASS|FAIL <tab> n=<dim> <tab> name <tab> lhs <tab> rhs`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status}\tn={}\t{}\t{}\t{}\n", c.dim, c.name, c.lhs, c.rhs));
        }
        out
    }
}

impl Serialize for ProofReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ProofReport", 3)?;
        st.serialize_field("passed", &self.all_passed())?;
        st.serialize_field("count", &self.checks.len())?;
        st.serialize_field("checks", &self.checks)?;
        st.end()
    }
}

fn check_point_dims<T: Scalar>(points: &[Vec<T>]) -> Result<usize> {
    let m = points.len();
    if m < 2 {
        return Err(Error::Dimension("need at least two points".into()));
    }
    match points.iter().find(|p| p.len() != m - 1) {
        Some(p) => Err(Error::Dimension(format!("{m} points must have dimension {}, found {}", m - 1, p.len()))),
        None => Ok(m),
    }
}

/// `U` with top row `(1, |x_1|², ..., |x_m|²)`, a row of ones under a
/// leading zero, then one row per coordinate.
pub fn build_u<T: Scalar>(points: &[Vec<T>]) -> Result<Matrix<T>> {
    let m = check_point_dims(points)?;
    Ok(Matrix::from_fn(m + 1, m + 1, |i, j| match (i, j) {
        (0, 0) => T::one(),
        (0, j) => points[j - 1].iter().fold(T::zero(), |acc, x| acc + x.clone() * x.clone()),
        (_, 0) => T::zero(),
        (1, _) => T::one(),
        (i, j) => points[j - 1][i - 2].clone(),
    }))
}

/// `W` = `[[0,1],[1,0]]` followed by `-2` on the remaining diagonal.
pub fn build_w<T: Scalar>(m: usize) -> Matrix<T> {
    Matrix::from_fn(m + 1, m + 1, |i, j| match (i, j) {
        (0, 1) | (1, 0) => T::one(),
        (i, j) if i == j && i >= 2 => T::from_i64(-2),
        _ => T::zero(),
    })
}

/// Checks `UᵀWU = D` and the determinant bookkeeping around it for the
/// given points (`m` points in `m - 1` dimensions).
pub fn check_uwu_congruence(points: &[Vec<Rational>]) -> Result<ProofReport> {
    let m = check_point_dims(points)?;
    let dim = m - 1;
    let u = build_u(points)?;
    let w = build_w::<Rational>(m);
    let d = build_cm_matrix(&SquaredDistanceMatrix::from_points(points)?).into_matrix();
    let mut report = ProofReport::new();

    report.matrix("UtWU=D", dim, &(&u.transpose() * &w) * &u, d.clone());

    let det_w = determinant(&w)?;
    report.scalar("det(W)=-(-2)^(m-1)", dim, det_w.clone(), -powi(&Rational::from_i64(-2), m - 1));

    let det_u = determinant(&u)?;
    let det_d = determinant(&d)?;
    report.scalar("det(D)=det(U)^2*det(W)", dim, det_d, det_u.clone() * det_u.clone() * det_w);

    let f: Rational = factorial(m - 1);
    let v2 = volume_squared_from_coordinates(points)?.value;
    report.scalar("det(U)^2=((m-1)!)^2*V^2", dim, det_u.clone() * det_u, f.clone() * f * v2);
    Ok(report)
}

/// Identity with row 0 replaced by `(1, -r_1², ..., -r_{n+2}²)`.
pub fn build_p<T: Scalar>(r: &SignedRadii<T>) -> Matrix<T> {
    let v = r.values();
    let size = v.len() + 1;
    Matrix::from_fn(size, size, |i, j| match (i, j) {
        (0, 0) => T::one(),
        (0, j) => -(v[j - 1].clone() * v[j - 1].clone()),
        (i, j) if i == j => T::one(),
        _ => T::zero(),
    })
}

/// `diag(1, 1/r_1, ..., 1/r_{n+2})`.
pub fn build_q<T: Scalar>(r: &SignedRadii<T>) -> Matrix<T> {
    let diag: Vec<T> = std::iter::once(T::one()).chain(r.values().iter().map(|x| T::one() / x.clone())).collect();
    Matrix::diagonal(&diag)
}

/// `S = 2·11ᵀ - 4I` of size `n + 2`.
pub fn build_s<T: Scalar>(n: usize) -> Matrix<T> {
    let size = n + 2;
    Matrix::from_fn(size, size, |i, j| T::from_i64(if i == j { -2 } else { 2 }))
}

/// Closed form `(-1)^(n+1) · 2^(2n+3) · n`.
pub fn s_determinant_formula<T: Scalar>(n: usize) -> T {
    sign_power::<T>(n + 1) * powi(&T::from_i64(2), 2 * n + 3) * T::from_i64(n as i64)
}

/// Closed form `11ᵀ/(4n) - I/4`.
pub fn s_inverse_formula<T: Scalar>(n: usize) -> Matrix<T> {
    let size = n + 2;
    let a = T::one() / T::from_i64(4 * n as i64);
    let b = T::one() / T::from_i64(4);
    Matrix::from_fn(size, size, |i, j| if i == j { a.clone() - b.clone() } else { a.clone() })
}

pub fn check_s_properties(n: usize) -> Result<ProofReport> {
    if n == 0 {
        return Err(Error::InvalidInput("sphere dimension must be at least 1".into()));
    }
    let s = build_s::<Rational>(n);
    let s_inv = s_inverse_formula::<Rational>(n);
    let size = n + 2;
    let mut report = ProofReport::new();
    report.scalar("det(S)=(-1)^(n+1)*2^(2n+3)*n", n, determinant(&s)?, s_determinant_formula(n));
    report.matrix("S*Sinv=I", n, &s * &s_inv, Matrix::identity(size));
    if n == 2 {
        let sixteen = Rational::from_i64(16);
        report.matrix("S^2=16I", n, &s * &s, Matrix::identity(size).scale(&sixteen));
        report.scalar("det(S)=-256", n, determinant(&s)?, Rational::from_i64(-256));
        report.matrix("Sinv=S/16", n, s_inv, s.scale(&(Rational::one() / sixteen)));
    }
    Ok(report)
}

/// `|A| = |A22| · |A11 - A12 A22⁻¹ A21|` with `A11` the leading
/// `split × split` block.
pub fn block_rule_determinant<T: Scalar>(a: &Matrix<T>, split: usize) -> Result<T> {
    let n = a.rows();
    if !a.is_square() || split == 0 || split >= n {
        return Err(Error::Dimension(format!("cannot partition a {}x{} matrix at {split}", n, a.cols())));
    }
    let rest = n - split;
    let a11 = a.submatrix(0, 0, split, split);
    let a12 = a.submatrix(0, split, split, rest);
    let a21 = a.submatrix(split, 0, rest, split);
    let a22 = a.submatrix(split, split, rest, rest);
    let correction = &(&a12 * &inverse(&a22)?) * &a21;
    let schur = Matrix::from_fn(split, split, |i, j| a11[(i, j)].clone() - correction[(i, j)].clone());
    Ok(determinant(&a22)? * determinant(&schur)?)
}

/// Runs every step of the reduction from the Cayley-Menger determinant of
/// the tangency distances to the curvature residual.
pub fn check_reduction_chain(r: &SignedRadii<Rational>) -> Result<ProofReport> {
    let n = r.dim();
    let radii = r.values();
    let size = radii.len() + 1;
    let two = Rational::from_i64(2);
    let mut report = ProofReport::new();

    let d = build_cm_matrix(&tangency_squared_distances(r)?).into_matrix();
    let p = build_p(r);
    let q = build_q(r);
    let s = build_s::<Rational>(n);

    let ptdp = &(&p.transpose() * &d) * &p;
    let expected_ptdp = Matrix::from_fn(size, size, |i, j| match (i, j) {
        (0, 0) => Rational::zero(),
        (0, _) | (_, 0) => Rational::one(),
        (i, j) if i == j => -(two.clone() * radii[i - 1].clone() * radii[i - 1].clone()),
        (i, j) => two.clone() * radii[i - 1].clone() * radii[j - 1].clone(),
    });
    report.matrix("PtDP", n, ptdp.clone(), expected_ptdp);

    let block = &(&q.transpose() * &ptdp) * &q;
    let recip: Vec<Rational> = radii.iter().map(|x| Rational::one() / x.clone()).collect();
    let expected_block = Matrix::from_fn(size, size, |i, j| match (i, j) {
        (0, 0) => Rational::zero(),
        (0, j) => recip[j - 1].clone(),
        (i, 0) => recip[i - 1].clone(),
        (i, j) => s[(i - 1, j - 1)].clone(),
    });
    report.matrix("QtPtDPQ=[[0,Rt],[R,S]]", n, block.clone(), expected_block);

    // Quadratic form RᵀS⁻¹R with the closed-form inverse.
    let s_inv = s_inverse_formula::<Rational>(n);
    let s_inv_r = s_inv.mul_vec(&recip)?;
    let form = recip.iter().zip(&s_inv_r).fold(Rational::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
    let det_s = determinant(&s)?;
    let chain_value = -(det_s.clone() * form);

    let det_block = determinant(&block)?;
    report.scalar("det(block)=-det(S)*Rt*Sinv*R", n, det_block.clone(), chain_value.clone());
    report.scalar("det(block)=block rule", n, det_block.clone(), block_rule_determinant(&block, 1)?);

    let residual = descartes_residual(&curvatures_from_radii(r));
    let closed = sign_power::<Rational>(n) * powi(&two, 2 * n + 1) * residual;
    report.scalar("-det(S)*Rt*Sinv*R=(-1)^n*2^(2n+1)*residual", n, chain_value.clone(), closed);

    if n == 2 {
        let s_r = s.mul_vec(&recip)?;
        let rsr = recip.iter().zip(&s_r).fold(Rational::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
        report.scalar("-det(S)*Rt*Sinv*R=16*Rt*S*R", n, chain_value.clone(), Rational::from_i64(16) * rsr);
    }

    let det_p = determinant(&p)?;
    let det_q = determinant(&q)?;
    let det_d = determinant(&d)?;
    report.scalar("det(P)=1", n, det_p.clone(), Rational::one());
    report.scalar("det(Q)=prod(1/r)", n, det_q.clone(), Rational::one() / r.product());
    report.scalar(
        "det(QtPtDPQ)=det(P)^2*det(Q)^2*det(D)",
        n,
        det_block,
        det_p.clone() * det_p * det_q.clone() * det_q * det_d.clone(),
    );

    let prod = r.product();
    report.scalar("det(D)=(prod r)^2*chain", n, det_d, prod.clone() * prod * chain_value);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;
    use crate::tangency::{validate_radii, RadiusValidation};

    fn pts(coords: &[&[i64]]) -> Vec<Vec<Rational>> {
        coords.iter().map(|p| p.iter().map(|&v| rat(v, 1)).collect()).collect()
    }

    fn radii(v: &[(i64, i64)], n: usize) -> SignedRadii<Rational> {
        validate_radii(v.iter().map(|&(a, b)| rat(a, b)).collect(), n, RadiusValidation::Strict).unwrap()
    }

    fn find<'a>(r: &'a ProofReport, name: &str) -> &'a IdentityCheck {
        r.checks.iter().find(|c| c.name == name).unwrap()
    }

    #[test]
    fn u_layout() {
        let u = build_u(&pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(u.row(0), &[rat(1, 1), rat(0, 1), rat(1, 1), rat(1, 1), rat(1, 1)]);
        assert!((1..5).all(|i| u[(i, 0)] == rat(0, 1)));
        let u = build_u(&pts(&[&[0, 0], &[3, 0], &[0, 4]])).unwrap();
        assert_eq!(u.row(0), &[rat(1, 1), rat(0, 1), rat(9, 1), rat(16, 1)]);
        assert_eq!(u.row(2), &[rat(0, 1), rat(0, 1), rat(3, 1), rat(0, 1)]);
        assert!(build_u(&pts(&[&[0, 0], &[1, 1]])).is_err());
    }

    #[test]
    fn w_determinants() {
        assert_eq!(determinant(&build_w::<Rational>(4)).unwrap(), rat(8, 1));
        assert_eq!(determinant(&build_w::<Rational>(3)).unwrap(), rat(-4, 1));
        assert_eq!(determinant(&build_w::<Rational>(5)).unwrap(), rat(-16, 1));
    }

    #[test]
    fn corner_tetrahedron_congruence() {
        let report = check_uwu_congruence(&pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert!(report.all_passed(), "{}", report.to_text());
        assert_eq!(find(&report, "det(D)=det(U)^2*det(W)").lhs, ProofValue::Scalar(rat(8, 1)));
    }

    #[test]
    fn coplanar_congruence() {
        let report = check_uwu_congruence(&pts(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[1, 1, 0]])).unwrap();
        assert!(report.all_passed());
        assert_eq!(find(&report, "det(D)=det(U)^2*det(W)").lhs, ProofValue::Scalar(rat(0, 1)));
    }

    #[test]
    fn p_and_q() {
        let r = radii(&[(-1, 1), (2, 1), (2, 1), (3, 1)], 2);
        let p = build_p(&r);
        assert_eq!(p.row(0), &[rat(1, 1), rat(-1, 1), rat(-4, 1), rat(-4, 1), rat(-9, 1)]);
        assert_eq!(determinant(&p).unwrap(), rat(1, 1));
        let q = build_q(&r);
        assert_eq!(q, Matrix::diagonal(&[rat(1, 1), rat(-1, 1), rat(1, 2), rat(1, 2), rat(1, 3)]));
        assert_eq!(determinant(&q).unwrap(), rat(-1, 12));
        assert_eq!(build_q(&radii(&[(1, 1); 4], 2)), Matrix::identity(5));
        assert_eq!(
            build_p(&radii(&[(1, 1); 4], 2)).row(0),
            &[rat(1, 1), rat(-1, 1), rat(-1, 1), rat(-1, 1), rat(-1, 1)]
        );
        assert_eq!(determinant(&build_q(&radii(&[(2, 1); 4], 2))).unwrap(), rat(1, 16));
    }

    #[test]
    fn s_properties() {
        let s = build_s::<Rational>(2);
        assert_eq!(s[(0, 0)], rat(-2, 1));
        assert_eq!(s[(0, 3)], rat(2, 1));
        let report = check_s_properties(2).unwrap();
        assert!(report.all_passed(), "{}", report.to_text());
        assert_eq!(report.len(), 5);
        assert_eq!(find(&report, "det(S)=-256").lhs, ProofValue::Scalar(rat(-256, 1)));
        let r3 = check_s_properties(3).unwrap();
        assert!(r3.all_passed());
        assert_eq!(s_determinant_formula::<Rational>(3), rat(1536, 1));
        assert!(check_s_properties(0).is_err());
    }

    #[test]
    fn chain_unit_radii() {
        let report = check_reduction_chain(&radii(&[(1, 1); 4], 2)).unwrap();
        assert!(report.all_passed(), "{}", report.to_text());
        let c = find(&report, "det(D)=(prod r)^2*chain");
        assert_eq!(c.lhs, ProofValue::Scalar(rat(256, 1)));
    }

    #[test]
    fn chain_flat_configuration() {
        let report = check_reduction_chain(&radii(&[(-1, 1), (1, 2), (1, 2), (1, 3)], 2)).unwrap();
        assert!(report.all_passed());
        assert_eq!(find(&report, "det(D)=(prod r)^2*chain").lhs, ProofValue::Scalar(rat(0, 1)));
    }

    #[test]
    fn chain_three_dimensions() {
        let report = check_reduction_chain(&radii(&[(1, 1); 5], 3)).unwrap();
        assert!(report.all_passed());
        assert_eq!(find(&report, "det(D)=(prod r)^2*chain").lhs, ProofValue::Scalar(rat(-1280, 1)));
    }

    #[test]
    fn text_format() {
        let text = check_s_properties(1).unwrap().to_text();
        let first = text.lines().next().unwrap();
        assert_eq!(first, "PASS\tn=1\tdet(S)=(-1)^(n+1)*2^(2n+3)*n\t32\t32");
    }

    #[test]
    fn json_format() {
        let report = check_s_properties(1).unwrap();
        let v: serde_json::Value = serde_json::to_value(&report).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(v["checks"][0]["lhs"]["num"], "32");
        assert_eq!(v["checks"][1]["lhs"][0][0]["den"], "1");
    }
}
