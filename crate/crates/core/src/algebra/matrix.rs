use std::fmt;

use serde::{Deserialize, Serialize};

use super::scalar::{AlgebraTag, DivScalar};
use crate::error::{Error, Result};

/// Dense m×n matrix over one of the division algebras, stored row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct DivMatrix {
    tag: AlgebraTag,
    rows: usize,
    cols: usize,
    data: Vec<DivScalar>,
}

/// Wire form: `{"beta": B, "rows": m, "cols": n, "data": [[[c0, …], …], …]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    beta: u32,
    rows: usize,
    cols: usize,
    data: Vec<Vec<Vec<f64>>>,
}

impl TryFrom<MatrixJson> for DivMatrix {
    type Error = Error;

    fn try_from(raw: MatrixJson) -> Result<Self> {
        let tag = AlgebraTag::new(raw.beta)?;
        if raw.rows == 0 || raw.cols == 0 {
            return Err(Error::Parse("matrix dimensions must be positive".into()));
        }
        if raw.data.len() != raw.rows {
            return Err(Error::Parse(format!(
                "expected {} rows, found {}",
                raw.rows,
                raw.data.len()
            )));
        }
        let mut data = Vec::with_capacity(raw.rows.saturating_mul(raw.cols).min(1 << 20));
        for (i, row) in raw.data.iter().enumerate() {
            if row.len() != raw.cols {
                return Err(Error::Parse(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    raw.cols
                )));
            }
            for entry in row {
                if entry.iter().any(|x| !x.is_finite()) {
                    return Err(Error::Parse(format!("non-finite coefficient in row {i}")));
                }
                data.push(
                    DivScalar::from_coeffs(tag, entry).map_err(|e| Error::Parse(e.to_string()))?,
                );
            }
        }
        Ok(DivMatrix {
            tag,
            rows: raw.rows,
            cols: raw.cols,
            data,
        })
    }
}

impl From<DivMatrix> for MatrixJson {
    fn from(m: DivMatrix) -> Self {
        let data = (0..m.rows)
            .map(|i| {
                (0..m.cols)
                    .map(|j| m.get(i, j).coeffs().to_vec())
                    .collect()
            })
            .collect();
        MatrixJson {
            beta: m.tag.beta(),
            rows: m.rows,
            cols: m.cols,
            data,
        }
    }
}

impl DivMatrix {
    pub fn zeros(tag: AlgebraTag, rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        Ok(DivMatrix {
            tag,
            rows,
            cols,
            data: vec![DivScalar::zero(tag); rows * cols],
        })
    }

    pub fn identity(tag: AlgebraTag, n: usize) -> Result<Self> {
        let mut m = Self::zeros(tag, n, n)?;
        for i in 0..n {
            m.set(i, i, DivScalar::one(tag));
        }
        Ok(m)
    }

    pub fn from_entries(tag: AlgebraTag, rows: usize, cols: usize, data: Vec<DivScalar>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries do not form a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.tag() != tag) {
            return Err(Error::TagMismatch {
                left: tag.beta(),
                right: bad.tag().beta(),
            });
        }
        Ok(DivMatrix { tag, rows, cols, data })
    }

    /// Builds a real-valued matrix of any algebra from row slices.
    pub fn from_real_rows(tag: AlgebraTag, rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| DivScalar::real(tag, x)))
            .collect();
        Self::from_entries(tag, r, c, data)
    }

    pub fn diagonal(tag: AlgebraTag, diag: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(tag, diag.len(), diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, DivScalar::real(tag, d));
        }
        Ok(m)
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[DivScalar] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> DivScalar {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: DivScalar) {
        debug_assert_eq!(v.tag(), self.tag);
        self.data[i * self.cols + j] = v;
    }

    pub fn conj_transpose(&self) -> DivMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).conj());
            }
        }
        DivMatrix {
            tag: self.tag,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Octonion matrices are only multiplied as 1×1 scalars.
    pub fn matmul(&self, other: &DivMatrix) -> Result<DivMatrix> {
        self.check_tag(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if !self.tag.is_associative() && !(self.rows == 1 && self.cols == 1 && other.cols == 1) {
            return Err(Error::OctonionRestriction(
                "matrix products with m > 1 are not defined over a non-associative algebra".into(),
            ));
        }
        Ok(self.matmul_unchecked(other))
    }

    pub(crate) fn matmul_unchecked(&self, other: &DivMatrix) -> DivMatrix {
        let (m, k, n) = (self.rows, self.cols, other.cols);
        let mut out = vec![DivScalar::zero(self.tag); m * n];
        for i in 0..m {
            for l in 0..k {
                let a = self.data[i * k + l];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = out[i * n + j] + a.mul_same(&other.data[l * n + j]);
                }
            }
        }
        DivMatrix {
            tag: self.tag,
            rows: m,
            cols: n,
            data: out,
        }
    }

    /// X X* for any algebra; the Gram form is unambiguous even for octonions
    /// because each entry is a sum of two-factor products.
    pub fn gram(&self) -> DivMatrix {
        let m = self.rows;
        let mut out = vec![DivScalar::zero(self.tag); m * m];
        for i in 0..m {
            for j in 0..=i {
                let mut acc = DivScalar::zero(self.tag);
                for l in 0..self.cols {
                    acc = acc + self.get(i, l).mul_same(&self.get(j, l).conj());
                }
                out[i * m + j] = acc;
                out[j * m + i] = acc.conj();
            }
        }
        DivMatrix {
            tag: self.tag,
            rows: m,
            cols: m,
            data: out,
        }
    }

    pub fn add(&self, other: &DivMatrix) -> Result<DivMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &DivMatrix) -> Result<DivMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &DivMatrix, f: impl Fn(DivScalar, DivScalar) -> DivScalar) -> Result<DivMatrix> {
        self.check_tag(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(DivMatrix {
            tag: self.tag,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, s: f64) -> DivMatrix {
        DivMatrix {
            tag: self.tag,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.scale(s)).collect(),
        }
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.frobenius_norm_sqr().sqrt()
    }

    /// Real part of the trace.
    pub fn real_trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).re()).sum()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.data
            .iter()
            .flat_map(|x| x.coeffs().iter())
            .fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &DivMatrix) -> f64 {
        self.data
            .iter()
            .zip(other.data.iter())
            .fold(0.0_f64, |m, (a, b)| m.max(a.max_abs_diff(b)))
    }

    /// Largest coefficient-wise deviation between A and A*.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0_f64;
        for i in 0..self.rows {
            for j in 0..=i {
                worst = worst.max(self.get(i, j).max_abs_diff(&self.get(j, i).conj()));
            }
        }
        worst
    }

    /// (A + A*)/2.
    pub fn symmetrized(&self) -> DivMatrix {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..=i {
                let v = (self.get(i, j) + self.get(j, i).conj()).scale(0.5);
                out.set(i, j, v);
                out.set(j, i, v.conj());
            }
        }
        out
    }

    /// Copies columns `[start, start + len)` into a new matrix.
    pub fn columns(&self, start: usize, len: usize) -> Result<DivMatrix> {
        if len == 0 || start + len > self.cols {
            return Err(Error::DimensionMismatch(format!(
                "column range {start}..{} out of {}",
                start + len,
                self.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * len);
        for i in 0..self.rows {
            data.extend_from_slice(&self.data[i * self.cols + start..i * self.cols + start + len]);
        }
        Ok(DivMatrix {
            tag: self.tag,
            rows: self.rows,
            cols: len,
            data,
        })
    }

    pub(crate) fn check_tag(&self, other: &DivMatrix) -> Result<()> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch {
                left: self.tag.beta(),
                right: other.tag.beta(),
            });
        }
        Ok(())
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let target = if i == j { 1.0 } else { 0.0 };
                    self.get(i, j)
                        .max_abs_diff(&DivScalar::real(self.tag, target))
                        <= tol
                })
            })
    }
}

impl fmt::Debug for DivMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DivMatrix({}, {}x{})", self.tag, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<_> = (0..self.cols).map(|j| self.get(i, j)).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

pub fn conj_transpose(x: &DivMatrix) -> DivMatrix {
    x.conj_transpose()
}

pub fn matmul(a: &DivMatrix, b: &DivMatrix) -> Result<DivMatrix> {
    a.matmul(b)
}
