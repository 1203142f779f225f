use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Real dimension of one of the four normed division algebras:
/// 1 (reals), 2 (complex), 4 (quaternions) or 8 (octonions).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct AlgebraTag(u8);

impl AlgebraTag {
    pub const REAL: AlgebraTag = AlgebraTag(1);
    pub const COMPLEX: AlgebraTag = AlgebraTag(2);
    pub const QUATERNION: AlgebraTag = AlgebraTag(4);
    pub const OCTONION: AlgebraTag = AlgebraTag(8);

    pub const ALL: [AlgebraTag; 4] = [Self::REAL, Self::COMPLEX, Self::QUATERNION, Self::OCTONION];

    pub fn new(beta: u32) -> Result<Self> {
        match beta {
            1 | 2 | 4 | 8 => Ok(AlgebraTag(beta as u8)),
            other => Err(Error::InvalidBeta(other)),
        }
    }

    pub fn beta(self) -> u32 {
        self.0 as u32
    }

    pub fn dim(self) -> usize {
        self.0 as usize
    }

    /// β as a float, the form every density formula consumes.
    pub fn b(self) -> f64 {
        self.0 as f64
    }

    pub fn is_associative(self) -> bool {
        self.0 <= 4
    }

    pub fn name(self) -> &'static str {
        match self.0 {
            1 => "real",
            2 => "complex",
            4 => "quaternion",
            _ => "octonion",
        }
    }
}

impl TryFrom<u32> for AlgebraTag {
    type Error = Error;

    fn try_from(beta: u32) -> Result<Self> {
        AlgebraTag::new(beta)
    }
}

impl From<AlgebraTag> for u32 {
    fn from(tag: AlgebraTag) -> u32 {
        tag.beta()
    }
}

impl fmt::Display for AlgebraTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "beta={}", self.0)
    }
}

/// An element of ℝ, ℂ, ℍ or 𝕆 stored as β real coefficients in the
/// Cayley–Dickson basis (1, e₁, …, e_{β−1}). Coefficients past β are kept at
/// zero so the fixed-size buffer can be compared and copied freely.
#[derive(Clone, Copy, PartialEq)]
pub struct DivScalar {
    tag: AlgebraTag,
    c: [f64; 8],
}

impl DivScalar {
    pub fn zero(tag: AlgebraTag) -> Self {
        DivScalar { tag, c: [0.0; 8] }
    }

    pub fn one(tag: AlgebraTag) -> Self {
        Self::real(tag, 1.0)
    }

    pub fn real(tag: AlgebraTag, x: f64) -> Self {
        let mut c = [0.0; 8];
        c[0] = x;
        DivScalar { tag, c }
    }

    /// The basis unit e_k (e₀ = 1).
    pub fn unit(tag: AlgebraTag, k: usize) -> Result<Self> {
        if k >= tag.dim() {
            return Err(Error::DimensionMismatch(format!(
                "basis index {k} out of range for {tag}"
            )));
        }
        let mut c = [0.0; 8];
        c[k] = 1.0;
        Ok(DivScalar { tag, c })
    }

    pub fn from_coeffs(tag: AlgebraTag, coeffs: &[f64]) -> Result<Self> {
        if coeffs.len() != tag.dim() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coefficients for {tag}, got {}",
                tag.dim(),
                coeffs.len()
            )));
        }
        let mut c = [0.0; 8];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Ok(DivScalar { tag, c })
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c[..self.tag.dim()]
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [f64] {
        let d = self.tag.dim();
        &mut self.c[..d]
    }

    pub fn re(&self) -> f64 {
        self.c[0]
    }

    /// Largest absolute imaginary coefficient.
    pub fn imag_max(&self) -> f64 {
        self.coeffs()[1..].iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs().iter().map(|x| x * x).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn conj(&self) -> Self {
        let mut out = *self;
        for x in &mut out.coeffs_mut()[1..] {
            *x = -*x;
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        for x in out.coeffs_mut() {
            *x *= s;
        }
        out
    }

    pub fn inverse(&self) -> Self {
        self.conj().scale(1.0 / self.norm_sqr())
    }

    /// Cayley–Dickson product; fails only on mixed algebras.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch {
                left: self.tag.beta(),
                right: other.tag.beta(),
            });
        }
        Ok(self.mul_same(other))
    }

    #[inline]
    pub(crate) fn mul_same(&self, other: &Self) -> Self {
        let mut out = DivScalar::zero(self.tag);
        match self.tag.dim() {
            1 => out.c[0] = self.c[0] * other.c[0],
            2 => complex_mul(&self.c, &other.c, &mut out.c),
            4 => hamilton_mul(&self.c, &other.c, &mut out.c),
            d => cayley_dickson_mul(&self.c[..d], &other.c[..d], &mut out.c[..d]),
        }
        out
    }

    /// Maximum absolute coefficient difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.c
            .iter()
            .zip(other.c.iter())
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }
}

impl fmt::Debug for DivScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs()).finish()
    }
}

impl Add for DivScalar {
    type Output = DivScalar;

    fn add(self, rhs: DivScalar) -> DivScalar {
        debug_assert_eq!(self.tag, rhs.tag);
        let mut out = self;
        for (a, b) in out.c.iter_mut().zip(rhs.c.iter()) {
            *a += b;
        }
        out
    }
}

impl Sub for DivScalar {
    type Output = DivScalar;

    fn sub(self, rhs: DivScalar) -> DivScalar {
        debug_assert_eq!(self.tag, rhs.tag);
        let mut out = self;
        for (a, b) in out.c.iter_mut().zip(rhs.c.iter()) {
            *a -= b;
        }
        out
    }
}

impl Neg for DivScalar {
    type Output = DivScalar;

    fn neg(self) -> DivScalar {
        self.scale(-1.0)
    }
}

impl Mul for DivScalar {
    type Output = DivScalar;

    /// Panics on mixed algebras; use [`DivScalar::try_mul`] for a checked product.
    fn mul(self, rhs: DivScalar) -> DivScalar {
        assert_eq!(self.tag, rhs.tag, "multiplying elements of different algebras");
        self.mul_same(&rhs)
    }
}

/// Multiplies two Cayley–Dickson elements of equal power-of-two length:
/// (a, b)(c, d) = (ac − d̄b, da + bc̄).
pub fn cayley_dickson_mul(x: &[f64], y: &[f64], out: &mut [f64]) {
    let n = x.len();
    debug_assert!(n.is_power_of_two() && y.len() == n && out.len() == n);
    if n == 1 {
        out[0] = x[0] * y[0];
        return;
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let mut cbar = [0.0; 4];
    let mut dbar = [0.0; 4];
    conj_into(c, &mut cbar[..h]);
    conj_into(d, &mut dbar[..h]);

    let mut t1 = [0.0; 4];
    let mut t2 = [0.0; 4];
    cayley_dickson_mul(a, c, &mut t1[..h]);
    cayley_dickson_mul(&dbar[..h], b, &mut t2[..h]);
    for i in 0..h {
        out[i] = t1[i] - t2[i];
    }
    cayley_dickson_mul(d, a, &mut t1[..h]);
    cayley_dickson_mul(b, &cbar[..h], &mut t2[..h]);
    for i in 0..h {
        out[h + i] = t1[i] + t2[i];
    }
}

fn conj_into(x: &[f64], out: &mut [f64]) {
    out[0] = x[0];
    for i in 1..x.len() {
        out[i] = -x[i];
    }
}

#[inline]
fn complex_mul(x: &[f64; 8], y: &[f64; 8], out: &mut [f64; 8]) {
    out[0] = x[0] * y[0] - x[1] * y[1];
    out[1] = x[0] * y[1] + x[1] * y[0];
}

// Same table as the doubling recursion at length 4 (e₁e₂ = e₃).
#[inline]
fn hamilton_mul(x: &[f64; 8], y: &[f64; 8], out: &mut [f64; 8]) {
    let (a0, a1, a2, a3) = (x[0], x[1], x[2], x[3]);
    let (b0, b1, b2, b3) = (y[0], y[1], y[2], y[3]);
    out[0] = a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3;
    out[1] = a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2;
    out[2] = a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1;
    out[3] = a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0;
}

/// Free-function form of the algebra product.
pub fn scalar_mul(a: &DivScalar, b: &DivScalar) -> Result<DivScalar> {
    a.try_mul(b)
}
