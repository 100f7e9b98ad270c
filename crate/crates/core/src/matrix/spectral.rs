use nalgebra::DMatrix;
use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

const SCHUR_MAX_ITER: usize = 10_000;

/// Eigenvalues with multiplicity plus the spectral abscissas α (largest real
/// part) and β (smallest real part).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSummary {
    pub eigenvalues: Vec<Complex64>,
    pub alpha: f64,
    pub beta: f64,
    /// 2-norm condition number of the eigenvector matrix; infinite when it
    /// is numerically singular.
    pub eigcond: f64,
    pub defective: bool,
}

/// `M = V diag(λ) V⁻¹`, obtained from the complex Schur form.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<Complex64>,
    pub vectors: DMatrix<Complex64>,
    pub inverse: Option<DMatrix<Complex64>>,
    pub eigcond: f64,
}

impl EigenDecomposition {
    pub fn new(m: &ComplexMatrix, name: &str) -> Result<Self> {
        let r = m.order();
        let eps = f64::EPSILON * m.frobenius_norm().max(1.0);
        let schur = nalgebra::linalg::Schur::try_new(m.inner().clone(), eps * 1e-2, SCHUR_MAX_ITER)
            .ok_or_else(|| Error::EigenSolver {
                name: name.to_string(),
            })?;
        let (q, t) = schur.unpack();

        let values: Vec<Complex64> = (0..r).map(|i| t[(i, i)]).collect();
        if values
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::EigenSolver {
                name: name.to_string(),
            });
        }

        // Eigenvectors of the triangular factor by back substitution; nearly
        // equal diagonal entries are separated by `smin` as in LAPACK's trevc.
        let tnorm = t.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let smin = (f64::EPSILON * tnorm).max(f64::MIN_POSITIVE * 1e10);
        let mut y = DMatrix::<Complex64>::zeros(r, r);
        for k in 0..r {
            y[(k, k)] = Complex64::new(1.0, 0.0);
            for j in (0..k).rev() {
                let mut s = Complex64::new(0.0, 0.0);
                for l in (j + 1)..=k {
                    s += t[(j, l)] * y[(l, k)];
                }
                if s == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let mut d = t[(j, j)] - t[(k, k)];
                if d.norm() < smin {
                    d = Complex64::new(smin, 0.0);
                }
                y[(j, k)] = -s / d;
            }
            let norm = y.column(k).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm.is_finite() && norm > 0.0 {
                let inv = 1.0 / norm;
                y.column_mut(k).iter_mut().for_each(|z| *z *= inv);
            }
        }
        let vectors = &q * &y;

        let sv = vectors.clone().singular_values();
        let smax = sv.iter().cloned().fold(0.0, f64::max);
        let smin_v = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        let eigcond = if smin_v > 0.0 && smax.is_finite() {
            smax / smin_v
        } else {
            f64::INFINITY
        };
        let inverse = if eigcond.is_finite() && eigcond < 1e15 {
            vectors.clone().try_inverse()
        } else {
            None
        };
        Ok(Self {
            values,
            vectors,
            inverse,
            eigcond,
        })
    }

    pub fn summary(&self, tol: &Tolerances) -> SpectralSummary {
        let alpha = self
            .values
            .iter()
            .map(|z| z.re)
            .fold(f64::NEG_INFINITY, f64::max);
        let beta = self
            .values
            .iter()
            .map(|z| z.re)
            .fold(f64::INFINITY, f64::min);
        SpectralSummary {
            eigenvalues: self.values.clone(),
            alpha,
            beta,
            eigcond: self.eigcond,
            defective: self.is_defective(tol),
        }
    }

    pub fn is_defective(&self, tol: &Tolerances) -> bool {
        self.inverse.is_none() || !(self.eigcond <= tol.eigcond_cap)
    }

    /// `V diag(f(λ)) V⁻¹`. Requires a non-defective decomposition.
    pub fn apply(&self, f: impl Fn(Complex64) -> Complex64) -> Option<ComplexMatrix> {
        let inv = self.inverse.as_ref()?;
        let mut scaled = self.vectors.clone();
        for (k, &lambda) in self.values.iter().enumerate() {
            let fk = f(lambda);
            scaled.column_mut(k).iter_mut().for_each(|z| *z *= fk);
        }
        Some(ComplexMatrix::from_inner(scaled * inv))
    }

    pub fn require_diagonalizable(&self, name: &str, tol: &Tolerances) -> Result<()> {
        if self.is_defective(tol) {
            return Err(Error::Defective {
                name: name.to_string(),
                eigcond: self.eigcond,
                cap: tol.eigcond_cap,
            });
        }
        Ok(())
    }
}

pub fn spectral_summary(m: &ComplexMatrix) -> Result<SpectralSummary> {
    spectral_summary_with(m, "matrix", &Tolerances::default())
}

pub fn spectral_summary_with(
    m: &ComplexMatrix,
    name: &str,
    tol: &Tolerances,
) -> Result<SpectralSummary> {
    Ok(EigenDecomposition::new(m, name)?.summary(tol))
}

/// β(M) > 0, strictly, with no tolerance slack.
pub fn is_positive_stable(m: &ComplexMatrix) -> Result<bool> {
    Ok(spectral_summary(m)?.beta > 0.0)
}
