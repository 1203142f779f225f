//! Cholesky-based kernels for Hermitian positive definite matrices over
//! ℝ, ℂ and ℍ. The determinant of a Hermitian PD matrix is the squared
//! product of its Cholesky pivots, which for ℍ is the Moore determinant.

use serde::{Deserialize, Serialize};

use super::matrix::DivMatrix;
use super::scalar::{AlgebraTag, DivScalar};
use crate::error::{Error, Result};

/// Coefficient-wise tolerance (relative to the largest coefficient, floored
/// at 1) for accepting a matrix as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// A Hermitian positive definite matrix together with its Cholesky factor.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DivMatrix", into = "DivMatrix")]
pub struct HermitianPD {
    mat: DivMatrix,
    chol: DivMatrix,
}

impl std::fmt::Debug for HermitianPD {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HermitianPD({:?})", self.mat)
    }
}

impl TryFrom<DivMatrix> for HermitianPD {
    type Error = Error;

    fn try_from(m: DivMatrix) -> Result<Self> {
        HermitianPD::new(m)
    }
}

impl From<HermitianPD> for DivMatrix {
    fn from(h: HermitianPD) -> DivMatrix {
        h.mat
    }
}

impl HermitianPD {
    /// Validates symmetry, symmetrizes, and factors.
    pub fn new(mat: DivMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "Hermitian matrix must be square, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        let defect = mat.hermitian_defect();
        if defect > HERMITIAN_TOL * mat.max_abs_coeff().max(1.0) {
            return Err(Error::NotHermitian(defect));
        }
        Self::from_hermitian(mat.symmetrized())
    }

    /// Skips the symmetry check; used for matrices Hermitian by construction.
    pub(crate) fn from_hermitian(mat: DivMatrix) -> Result<Self> {
        let chol = cholesky_factor(&mat)?;
        Ok(HermitianPD { mat, chol })
    }

    pub fn identity(tag: AlgebraTag, n: usize) -> Result<Self> {
        Self::from_hermitian(DivMatrix::identity(tag, n)?)
    }

    pub fn diagonal(tag: AlgebraTag, diag: &[f64]) -> Result<Self> {
        Self::from_hermitian(DivMatrix::diagonal(tag, diag)?)
    }

    /// X X*, symmetrized against round-off.
    pub fn gram_of(x: &DivMatrix) -> Result<Self> {
        Self::from_hermitian(x.gram())
    }

    pub fn matrix(&self) -> &DivMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> DivMatrix {
        self.mat
    }

    /// Lower-triangular L with L L* = A and real positive diagonal.
    pub fn cholesky(&self) -> &DivMatrix {
        &self.chol
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn tag(&self) -> AlgebraTag {
        self.mat.tag()
    }

    pub fn logdet(&self) -> f64 {
        (0..self.dim()).map(|i| self.chol.get(i, i).re().ln()).sum::<f64>() * 2.0
    }

    pub fn inverse(&self) -> Result<HermitianPD> {
        let w = solve_lower(&self.chol, &DivMatrix::identity(self.tag(), self.dim())?)?;
        HermitianPD::from_hermitian(w.conj_transpose().gram())
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity(0.0)
    }
}

fn cholesky_factor(a: &DivMatrix) -> Result<DivMatrix> {
    let n = a.rows();
    let tag = a.tag();
    if !tag.is_associative() && n > 1 {
        return Err(Error::OctonionRestriction(
            "Cholesky factorization requires beta <= 4 for m > 1".into(),
        ));
    }
    let mut l = DivMatrix::zeros(tag, n, n)?;
    for j in 0..n {
        let mut d = a.get(j, j).re();
        for k in 0..j {
            d -= l.get(j, k).norm_sqr();
        }
        if !(d > 0.0) || !d.is_finite() {
            return Err(Error::NotPositiveDefinite { row: j, pivot: d });
        }
        let ljj = d.sqrt();
        l.set(j, j, DivScalar::real(tag, ljj));
        for i in j + 1..n {
            let mut s = a.get(i, j);
            for k in 0..j {
                s = s - l.get(i, k).mul_same(&l.get(j, k).conj());
            }
            l.set(i, j, s.scale(1.0 / ljj));
        }
    }
    Ok(l)
}

/// Lower Cholesky factor L (LL* = A) of a Hermitian PD matrix.
pub fn cholesky_hpd(a: &HermitianPD) -> Result<DivMatrix> {
    if !a.tag().is_associative() && a.dim() > 1 {
        return Err(Error::OctonionRestriction("cholesky_hpd".into()));
    }
    Ok(a.cholesky().clone())
}

/// log |A| = 2 Σ log lᵢᵢ.
pub fn logdet_hpd(a: &HermitianPD) -> Result<f64> {
    Ok(a.logdet())
}

/// L⁻¹ B by forward substitution, L lower triangular with real diagonal.
pub fn solve_lower(l: &DivMatrix, b: &DivMatrix) -> Result<DivMatrix> {
    check_triangular_system(l, b)?;
    let (n, k) = (l.rows(), b.cols());
    let mut x = b.clone();
    for c in 0..k {
        for i in 0..n {
            let mut s = b.get(i, c);
            for j in 0..i {
                s = s - l.get(i, j).mul_same(&x.get(j, c));
            }
            x.set(i, c, s.scale(1.0 / l.get(i, i).re()));
        }
    }
    Ok(x)
}

/// (L*)⁻¹ B by back substitution against the upper-triangular L*.
pub fn solve_lower_adjoint(l: &DivMatrix, b: &DivMatrix) -> Result<DivMatrix> {
    check_triangular_system(l, b)?;
    let (n, k) = (l.rows(), b.cols());
    let mut x = b.clone();
    for c in 0..k {
        for i in (0..n).rev() {
            let mut s = b.get(i, c);
            for j in i + 1..n {
                s = s - l.get(j, i).conj().mul_same(&x.get(j, c));
            }
            x.set(i, c, s.scale(1.0 / l.get(i, i).re()));
        }
    }
    Ok(x)
}

/// B L⁻¹, via (L⁻¹)* B* = (L*)⁻¹ B*.
pub fn solve_right_lower(b: &DivMatrix, l: &DivMatrix) -> Result<DivMatrix> {
    Ok(solve_lower_adjoint(l, &b.conj_transpose())?.conj_transpose())
}

fn check_triangular_system(l: &DivMatrix, b: &DivMatrix) -> Result<()> {
    l.check_tag(b)?;
    if !l.is_square() || l.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "triangular system {}x{} with right-hand side {}x{}",
            l.rows(),
            l.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if !l.tag().is_associative() && l.rows() > 1 {
        return Err(Error::OctonionRestriction("triangular solve".into()));
    }
    Ok(())
}

/// L X L* for a Hermitian X, re-symmetrized.
pub fn congruence(l: &DivMatrix, x: &HermitianPD) -> Result<HermitianPD> {
    let lx = l.matmul(x.matrix())?;
    let out = lx.matmul(&l.conj_transpose())?;
    HermitianPD::from_hermitian(out.symmetrized())
}
