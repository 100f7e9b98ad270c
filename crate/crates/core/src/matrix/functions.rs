//! Gamma-type matrix functions by eigendecomposition-based functional calculus.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::spectral::EigenDecomposition;
use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::special;
use crate::tolerances::Tolerances;

/// Precomputed data for evaluating `b^E = exp(E ln b)` at many scalar bases
/// `b` with a fixed exponent `E`.
#[derive(Debug, Clone)]
pub struct MatrixPower {
    order: usize,
    kind: PowerKind,
}

#[derive(Debug, Clone)]
enum PowerKind {
    Eigen {
        values: Vec<Complex64>,
        vectors: DMatrix<Complex64>,
        inverse: DMatrix<Complex64>,
    },
    /// Exponent too close to defective; every evaluation runs expm.
    Dense(ComplexMatrix),
}

impl MatrixPower {
    pub fn new(exponent: &ComplexMatrix, tol: &Tolerances) -> Self {
        let order = exponent.order();
        let kind = match EigenDecomposition::new(exponent, "exponent") {
            Ok(eig) if !eig.is_defective(tol) => PowerKind::Eigen {
                values: eig.values,
                vectors: eig.vectors,
                inverse: eig
                    .inverse
                    .expect("non-defective decomposition has an inverse"),
            },
            _ => PowerKind::Dense(exponent.clone()),
        };
        Self { order, kind }
    }

    pub fn uses_fallback(&self) -> bool {
        matches!(self.kind, PowerKind::Dense(_))
    }

    /// `base^E` on the principal branch of `ln base`.
    pub fn pow(&self, base: Complex64) -> ComplexMatrix {
        if base == Complex64::new(1.0, 0.0) {
            return ComplexMatrix::identity(self.order);
        }
        let log = base.ln();
        match &self.kind {
            PowerKind::Eigen {
                values,
                vectors,
                inverse,
            } => {
                let mut scaled = vectors.clone();
                for (k, &lambda) in values.iter().enumerate() {
                    let f = (lambda * log).exp();
                    scaled.column_mut(k).iter_mut().for_each(|z| *z *= f);
                }
                ComplexMatrix::from_inner(scaled * inverse)
            }
            PowerKind::Dense(e) => expm(&e.scale(log)),
        }
    }

    pub fn pow_real(&self, base: f64) -> ComplexMatrix {
        self.pow(Complex64::new(base, 0.0))
    }
}

/// Matrix exponential by scaling and squaring with a Taylor kernel.
pub fn expm(x: &ComplexMatrix) -> ComplexMatrix {
    let norm = x.frobenius_norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = x.scale_real(0.5f64.powi(squarings));
    let mut sum = ComplexMatrix::identity(x.order());
    let mut term = ComplexMatrix::identity(x.order());
    for k in 1..40 {
        term = (&term * &scaled).scale_real(1.0 / k as f64);
        sum += &term;
        if term.frobenius_norm() <= f64::EPSILON * 1e-2 * sum.frobenius_norm() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `t^E = exp(E ln t)` for `t > 0`.
pub fn scalar_power(t: f64, e: &ComplexMatrix) -> Result<ComplexMatrix> {
    scalar_power_with(t, e, &Tolerances::default())
}

pub fn scalar_power_with(t: f64, e: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "scalar power base must be positive and finite, got {t}"
        )));
    }
    Ok(MatrixPower::new(e, tol).pow_real(t))
}

fn check_poles(eig: &EigenDecomposition, name: &str, tol: &Tolerances) -> Result<()> {
    for &lambda in &eig.values {
        if let Some(d) = special::pole_distance(lambda) {
            if d <= tol.eig_tol {
                return Err(Error::GammaPole {
                    name: name.to_string(),
                    eigenvalue: lambda,
                });
            }
        }
    }
    Ok(())
}

pub fn matrix_gamma(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    matrix_gamma_with(a, "A", &Tolerances::default())
}

/// Γ(A) by applying the scalar gamma function to the spectrum.
pub fn matrix_gamma_with(a: &ComplexMatrix, name: &str, tol: &Tolerances) -> Result<ComplexMatrix> {
    let eig = EigenDecomposition::new(a, name)?;
    check_poles(&eig, name, tol)?;
    eig.require_diagonalizable(name, tol)?;
    let g = eig.apply(special::gamma).expect("diagonalizable");
    if !g.is_finite() {
        return Err(Error::InvalidArgument(format!("Γ({name}) overflows")));
    }
    Ok(g)
}

/// Shift count used by [`reciprocal_gamma`]: `max(0, ⌈1 − β(A)⌉ + 1)`.
pub fn reciprocal_gamma_shift(beta: f64) -> usize {
    let n = (1.0 - beta).ceil() + 1.0;
    if n > 0.0 {
        n as usize
    } else {
        0
    }
}

pub fn reciprocal_gamma(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    reciprocal_gamma_with(a, "A", &Tolerances::default())
}

/// Γ⁻¹(A) = A(A+I)⋯(A+(n−1)I) · Γ⁻¹(A+nI) with β(A+nI) > 0. Defined for
/// every diagonalizable A, including those with non-positive integer
/// eigenvalues.
pub fn reciprocal_gamma_with(
    a: &ComplexMatrix,
    name: &str,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    let eig = EigenDecomposition::new(a, name)?;
    let beta = eig
        .values
        .iter()
        .map(|z| z.re)
        .fold(f64::INFINITY, f64::min);
    let n = reciprocal_gamma_shift(beta);
    let shifted = a.shift(n as f64);
    let shifted_eig = if n == 0 {
        eig
    } else {
        EigenDecomposition::new(&shifted, name)?
    };
    shifted_eig.require_diagonalizable(name, tol)?;
    // Γ⁻¹ applied to the spectrum equals the inverse of Γ(A+nI).
    let rg = shifted_eig.apply(special::rgamma).expect("diagonalizable");
    Ok(pochhammer(a, n) * rg)
}

/// (A)_n with the factors multiplied left to right: A(A+I)⋯(A+(n−1)I).
pub fn pochhammer(a: &ComplexMatrix, n: usize) -> ComplexMatrix {
    let mut acc = ComplexMatrix::identity(a.order());
    for k in 0..n {
        acc = acc * a.shift(k as f64);
    }
    acc
}

/// `(n−1)! (A)_n⁻¹ n^A`, which tends to Γ(A) as n grows.
pub fn gamma_limit_approx(a: &ComplexMatrix, n: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("gamma limit needs n >= 1".into()));
    }
    // (A)_n / (n−1)! = A ∏_{k=1}^{n−1} (A/k + I), which stays representable.
    let mut p = a.clone();
    for k in 1..n {
        p = p * a.scale_real(1.0 / k as f64).shift(1.0);
    }
    let inv = p.inverse(|| format!("(A)_{n} in the gamma limit form"))?;
    let power = scalar_power(n as f64, a)?;
    Ok(inv * power)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn diag(d: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_real_diagonal(d)
    }

    #[test]
    fn scalar_power_examples() {
        let e = ComplexMatrix::from_rows(&[
            vec![Complex64::new(0.3, 0.1), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(-0.4, 0.0), Complex64::new(1.2, 0.0)],
        ])
        .unwrap();
        assert!(
            scalar_power(1.0, &e)
                .unwrap()
                .distance(&ComplexMatrix::identity(2))
                < 1e-15
        );
        let two = scalar_power(2.0, &ComplexMatrix::identity(2)).unwrap();
        assert!(two.distance(&diag(&[2.0, 2.0])) < 1e-14);
        let p = scalar_power(4.0, &diag(&[2.0, 3.0])).unwrap();
        assert!(p.distance(&diag(&[16.0, 64.0])) < 1e-12);
        assert!(scalar_power(0.0, &e).is_err());
        assert!(scalar_power(-1.0, &e).is_err());
    }

    #[test]
    fn defective_exponent_uses_expm() {
        // J = [[1,1],[0,1]]: t^J = t [[1, ln t],[0, 1]]
        let j = ComplexMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let power = MatrixPower::new(&j, &Tolerances::default());
        assert!(power.uses_fallback());
        let t: f64 = 3.0;
        let expected = ComplexMatrix::from_real_rows(&[vec![t, t * t.ln()], vec![0.0, t]]).unwrap();
        assert!(power.pow_real(t).distance(&expected) < 1e-13);
    }

    #[test]
    fn gamma_examples() {
        let id = ComplexMatrix::identity(2);
        assert!(matrix_gamma(&id).unwrap().distance(&id) < 1e-14);
        assert!(matrix_gamma(&id.scale_real(2.0)).unwrap().distance(&id) < 1e-14);
        let g = matrix_gamma(&diag(&[0.5, 1.5])).unwrap();
        let sp = PI.sqrt();
        assert!(g.distance(&diag(&[sp, sp / 2.0])) < 1e-14);
    }

    #[test]
    fn gamma_rejects_poles_and_defective_input() {
        let err = matrix_gamma(&diag(&[-2.0, 1.0])).unwrap_err();
        assert!(matches!(err, Error::GammaPole { .. }), "{err}");
        let j = ComplexMatrix::from_real_rows(&[vec![1.5, 1.0], vec![0.0, 1.5]]).unwrap();
        assert!(matches!(matrix_gamma(&j), Err(Error::Defective { .. })));
    }

    #[test]
    fn reciprocal_gamma_examples() {
        let id = ComplexMatrix::identity(2);
        assert!(reciprocal_gamma(&id).unwrap().distance(&id) < 1e-14);
        let d = diag(&[0.0, 1.0]);
        assert!(reciprocal_gamma(&d).unwrap().distance(&d) < 1e-14);
        let half = reciprocal_gamma(&diag(&[0.5])).unwrap();
        assert!((half.get(0, 0).re - 1.0 / PI.sqrt()).abs() < 1e-15);
        assert_eq!(reciprocal_gamma_shift(0.0), 2);
        assert_eq!(reciprocal_gamma_shift(1.0), 1);
        assert_eq!(reciprocal_gamma_shift(3.0), 0);
        assert_eq!(reciprocal_gamma_shift(-2.5), 5);
    }

    #[test]
    fn pochhammer_examples() {
        let a = ComplexMatrix::from_real_rows(&[vec![0.2, 1.0], vec![-0.5, 0.7]]).unwrap();
        assert_eq!(pochhammer(&a, 0), ComplexMatrix::identity(2));
        assert!(pochhammer(&a, 2).distance(&(&a * &a.shift(1.0))) < 1e-15);
        let five = pochhammer(&ComplexMatrix::identity(1), 5);
        assert_eq!(five.get(0, 0).re, 120.0);
    }

    #[test]
    fn gamma_limit_examples() {
        let id = ComplexMatrix::identity(2);
        for n in [1, 2, 7, 40] {
            assert!(gamma_limit_approx(&id, n).unwrap().distance(&id) < 1e-13);
        }
        // Γ(2)=1 and the scalar limit n!n²/(n+1)! = n/(n+1).
        let two = gamma_limit_approx(&id.scale_real(2.0), 50).unwrap();
        let expected = 50.0 / 51.0;
        assert!(two.distance(&id.scale_real(expected)) < 1e-12);
        assert!(two.distance(&id) < 0.02 * 2f64.sqrt());

        let mut last = f64::INFINITY;
        for n in [4, 16, 64, 256, 1024] {
            let approx = gamma_limit_approx(&diag(&[0.5]), n).unwrap();
            let err = (approx.get(0, 0).re - PI.sqrt()).abs();
            assert!(err < last, "n={n}");
            last = err;
        }
        assert!(gamma_limit_approx(&diag(&[-1.0, 2.0]), 4).is_err());
    }
}
