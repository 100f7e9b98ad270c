use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense square complex matrix. Every parameter, coefficient and value in the
/// crate is one of these.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    /// Wraps a nalgebra matrix after checking it is square, non-empty and finite.
    pub fn new(inner: DMatrix<Complex64>) -> Result<Self> {
        if inner.nrows() != inner.ncols() {
            return Err(Error::NotSquare {
                rows: inner.nrows(),
                cols: inner.ncols(),
            });
        }
        if inner.nrows() == 0 {
            return Err(Error::Empty);
        }
        for j in 0..inner.ncols() {
            for i in 0..inner.nrows() {
                let z = inner[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self(inner))
    }

    pub(crate) fn from_inner(inner: DMatrix<Complex64>) -> Self {
        Self(inner)
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::Empty);
        }
        for row in rows {
            if row.len() != r {
                return Err(Error::NotSquare {
                    rows: r,
                    cols: row.len(),
                });
            }
        }
        Self::new(DMatrix::from_fn(r, r, |i, j| rows[i][j]))
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn identity(order: usize) -> Self {
        Self(DMatrix::identity(order, order))
    }

    pub fn zeros(order: usize) -> Self {
        Self(DMatrix::zeros(order, order))
    }

    /// `value * I` of the given order.
    pub fn scalar(order: usize, value: Complex64) -> Self {
        Self(DMatrix::from_diagonal_element(order, order, value))
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        Self(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                diag[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let diag: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diagonal(&diag)
    }

    pub fn order(&self) -> usize {
        self.0.nrows()
    }

    pub fn inner(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.order())
            .map(|i| (0..self.order()).map(|j| self.0[(i, j)]).collect())
            .collect()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.order()).map(|i| self.0[(i, i)]).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self(&self.0 * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    /// `self + k I`.
    pub fn shift(&self, k: f64) -> Self {
        let mut m = self.0.clone();
        for i in 0..m.nrows() {
            m[(i, i)] += k;
        }
        Self(m)
    }

    /// Accumulates `s * other` into `self`.
    pub fn add_scaled(&mut self, other: &ComplexMatrix, s: Complex64) {
        self.0.zip_apply(&other.0, |a, b| *a += b * s);
    }

    pub fn try_inverse(&self) -> Option<Self> {
        let lu = self.0.clone().lu();
        // LU succeeds on numerically singular input, so check the pivots.
        let u = lu.u();
        let scale = self.frobenius_norm().max(f64::MIN_POSITIVE);
        let smallest = (0..u.nrows())
            .map(|i| u[(i, i)].norm())
            .fold(f64::INFINITY, f64::min);
        if !(smallest > scale * 1e-14) {
            return None;
        }
        lu.try_inverse().map(Self).filter(|m| m.is_finite())
    }

    pub fn inverse(&self, context: impl FnOnce() -> String) -> Result<Self> {
        self.try_inverse()
            .ok_or_else(|| Error::Singular { context: context() })
    }

    pub fn check_same_order(&self, other: &ComplexMatrix) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    /// Frobenius distance.
    pub fn distance(&self, other: &ComplexMatrix) -> f64 {
        (self - other).frobenius_norm()
    }

    /// Conjugates by `v`: returns `v * self * v_inv`.
    pub fn conjugate_by(&self, v: &ComplexMatrix, v_inv: &ComplexMatrix) -> Self {
        Self(&v.0 * &self.0 * &v_inv.0)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{:?}", self.to_rows())
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = f.precision().unwrap_or(10);
        for i in 0..self.order() {
            write!(f, "[")?;
            for j in 0..self.order() {
                let z = self.0[(i, j)];
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:.*}{:+.*}i", prec, z.re, prec, z.im)?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Mul<ComplexMatrix> for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a ComplexMatrix> for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(self.0 * &rhs.0)
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Add<ComplexMatrix> for ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(self.0 + rhs.0)
    }
}

impl<'a> AddAssign<&'a ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &'a ComplexMatrix) {
        self.0 += &rhs.0;
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Sub<ComplexMatrix> for ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(self.0 - rhs.0)
    }
}

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix(-self.0)
    }
}

/// Frobenius norm of `m1 m2 - m2 m1`.
pub fn commute_residual(m1: &ComplexMatrix, m2: &ComplexMatrix) -> Result<f64> {
    m1.check_same_order(m2)?;
    Ok((&(m1 * m2) - &(m2 * m1)).frobenius_norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn rejects_non_square_and_non_finite() {
        let m = DMatrix::<Complex64>::zeros(2, 3);
        assert!(matches!(
            ComplexMatrix::new(m),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
        let mut m = DMatrix::<Complex64>::zeros(2, 2);
        m[(1, 0)] = c(f64::NAN);
        assert!(matches!(
            ComplexMatrix::new(m),
            Err(Error::NonFinite { row: 1, col: 0 })
        ));
        assert!(matches!(ComplexMatrix::from_rows(&[]), Err(Error::Empty)));
    }

    #[test]
    fn commutator_examples() {
        let d1 = ComplexMatrix::from_real_diagonal(&[1.0, 2.0]);
        let d2 = ComplexMatrix::from_real_diagonal(&[-3.0, 0.5]);
        assert_eq!(commute_residual(&d1, &d2).unwrap(), 0.0);

        let n = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let id = ComplexMatrix::identity(2);
        assert_eq!(commute_residual(&id, &n).unwrap(), 0.0);
        // [N, D] = [[0, 2-1], [0, 0]] has Frobenius norm 1.
        assert!((commute_residual(&n, &d1).unwrap() - 1.0).abs() < 1e-15);

        let three = ComplexMatrix::identity(3);
        assert!(matches!(
            commute_residual(&three, &id),
            Err(Error::OrderMismatch { left: 3, right: 2 })
        ));
    }

    #[test]
    fn singular_inverse_is_reported() {
        let n = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(n.try_inverse().is_none());
        let err = n.inverse(|| "N".into()).unwrap_err();
        assert_eq!(
            err,
            Error::Singular {
                context: "N".into()
            }
        );
        let d = ComplexMatrix::from_real_diagonal(&[2.0, 4.0]);
        let inv = d.try_inverse().unwrap();
        assert!(inv.distance(&ComplexMatrix::from_real_diagonal(&[0.5, 0.25])) < 1e-15);
    }
}
