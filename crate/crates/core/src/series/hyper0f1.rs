use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

const MAX_TERMS: usize = 100_000;

/// Precomputed `(C + kI)⁻¹` for repeated evaluation of `₀F₁(−; C; z)`.
#[derive(Debug, Clone)]
pub struct Hyper0F1 {
    c: ComplexMatrix,
    inverses: Vec<ComplexMatrix>,
}

impl Hyper0F1 {
    pub fn new(c: &ComplexMatrix) -> Self {
        Self {
            c: c.clone(),
            inverses: Vec::new(),
        }
    }

    fn extend(&mut self, len: usize) -> Result<()> {
        while self.inverses.len() < len {
            let j = self.inverses.len();
            let inv = self
                .c
                .shift(j as f64)
                .try_inverse()
                .ok_or_else(|| Error::Singular {
                    context: format!("C + {j}I in ₀F₁"),
                })?;
            self.inverses.push(inv);
        }
        Ok(())
    }

    /// Makes `terms` inverses available to [`Hyper0F1::eval_ready`].
    pub fn prepare(&mut self, terms: usize) -> Result<()> {
        self.extend(terms.min(MAX_TERMS))
    }

    /// `Σ_k (C)_k⁻¹ z^k / k!`, stopping once a term falls below 1e-16 of the
    /// larger of the partial sum and the largest term seen.
    pub fn eval(&mut self, z: Complex64) -> Result<ComplexMatrix> {
        loop {
            match self.sum(z)? {
                Some(v) => return Ok(v),
                None if self.inverses.len() >= MAX_TERMS => {
                    return Err(Error::InvalidArgument(format!(
                        "₀F₁ did not converge at z = {z}"
                    )))
                }
                None => self.extend((2 * self.inverses.len()).max(64))?,
            }
        }
    }

    /// As [`Hyper0F1::eval`] without growing the inverse table; shareable
    /// across threads.
    pub fn eval_ready(&self, z: Complex64) -> Result<ComplexMatrix> {
        self.sum(z)?.ok_or_else(|| {
            Error::InvalidArgument(format!(
                "₀F₁ at z = {z} needs more than the {} prepared terms",
                self.inverses.len()
            ))
        })
    }

    fn sum(&self, z: Complex64) -> Result<Option<ComplexMatrix>> {
        let r = self.c.order();
        let mut sum = ComplexMatrix::identity(r);
        let mut term = ComplexMatrix::identity(r);
        let mut largest = 1.0f64;
        for (k, inv) in self.inverses.iter().enumerate() {
            // (C)_{k+1}⁻¹ = (C + kI)⁻¹ (C)_k⁻¹
            term = inv.scale(z / (k as f64 + 1.0)) * term;
            let t = term.frobenius_norm();
            if !t.is_finite() {
                return Err(Error::InvalidArgument(format!("₀F₁ overflows at z = {z}")));
            }
            sum += &term;
            largest = largest.max(t);
            if t <= 1e-16 * largest.max(sum.frobenius_norm()) {
                return Ok(Some(sum));
            }
        }
        Ok(None)
    }
}

/// `₀F₁(−; C; z)`.
pub fn hyper0f1(c: &ComplexMatrix, z: Complex64) -> Result<ComplexMatrix> {
    Hyper0F1::new(c).eval(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bessel_i0_2() -> f64 {
        // I₀(2) = Σ 1/(k!)²
        (0..30)
            .map(|k| 1.0 / crate::special::factorial(k).powi(2))
            .sum()
    }

    #[test]
    fn examples() {
        let c = ComplexMatrix::from_real_diagonal(&[1.0, 2.0]);
        let zero = hyper0f1(&c, Complex64::new(0.0, 0.0)).unwrap();
        assert!(zero.distance(&ComplexMatrix::identity(2)) < 1e-15);

        let one = hyper0f1(&ComplexMatrix::identity(1), Complex64::new(1.0, 0.0)).unwrap();
        assert!((one.get(0, 0).re - 2.279_585_302_336_067).abs() < 1e-14);
        assert!((one.get(0, 0).re - bessel_i0_2()).abs() < 1e-14);

        let d = hyper0f1(&c, Complex64::new(1.0, 0.0)).unwrap();
        let second: f64 = (0..30)
            .map(|k| {
                1.0 / (crate::special::pochhammer(Complex64::new(2.0, 0.0), k).re
                    * crate::special::factorial(k))
            })
            .sum();
        assert!((d.get(0, 0).re - bessel_i0_2()).abs() < 1e-14);
        assert!((d.get(1, 1).re - second).abs() < 1e-14);
        assert!(d.get(0, 1).norm() < 1e-15);
    }

    #[test]
    fn large_argument_matches_asymptotics() {
        // ₀F₁(; 1; z) = I₀(2√z) ~ e^{2√z} / √(4π√z)
        let z = 400.0;
        let v = hyper0f1(&ComplexMatrix::identity(1), Complex64::new(z, 0.0))
            .unwrap()
            .get(0, 0)
            .re;
        let s = 2.0 * z.sqrt();
        let approx = s.exp() / (2.0 * std::f64::consts::PI * s).sqrt()
            * (1.0 + 1.0 / (8.0 * s) + 9.0 / (128.0 * s * s));
        assert!((v / approx - 1.0).abs() < 1e-5, "{v} vs {approx}");
    }

    #[test]
    fn singular_parameter() {
        let c = ComplexMatrix::from_real_diagonal(&[-1.0, 2.0]);
        assert!(hyper0f1(&c, Complex64::new(0.5, 0.0)).is_err());
    }
}
