use super::functions::MatrixPower;
use super::spectral::EigenDecomposition;
use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::quadrature::rule::tanh_sinh_unit;
use crate::tolerances::Tolerances;

/// Tanh-sinh level used by [`beta_matrix`].
pub const BETA_LEVEL: usize = 8;

pub(crate) fn require_positive_stable(m: &ComplexMatrix, name: &str) -> Result<()> {
    let beta = EigenDecomposition::new(m, name)?
        .values
        .iter()
        .map(|z| z.re)
        .fold(f64::INFINITY, f64::min);
    if beta > 0.0 {
        Ok(())
    } else {
        Err(Error::NotPositiveStable {
            name: name.to_string(),
            beta,
        })
    }
}

/// 𝔅(A, B) = ∫₀¹ t^{A−I} (1−t)^{B−I} dt by tanh-sinh quadrature.
pub fn beta_matrix(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    beta_matrix_with(a, b, BETA_LEVEL, &Tolerances::default())
}

pub fn beta_matrix_with(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    level: usize,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    a.check_same_order(b)?;
    require_positive_stable(a, "A")?;
    require_positive_stable(b, "B")?;
    let pa = MatrixPower::new(&a.shift(-1.0), tol);
    let pb = MatrixPower::new(&b.shift(-1.0), tol);
    let mut sum = ComplexMatrix::zeros(a.order());
    for node in tanh_sinh_unit(level) {
        let term = pa.pow_real(node.x) * pb.pow_real(node.xc);
        sum.add_scaled(&term, node.weight.into());
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{matrix_gamma, reciprocal_gamma};

    #[test]
    fn spec_examples() {
        let i = ComplexMatrix::identity(2);
        assert!(beta_matrix(&i, &i).unwrap().distance(&i) < 1e-13);
        let half = beta_matrix(&i, &i.scale_real(2.0)).unwrap();
        assert!(half.distance(&i.scale_real(0.5)) < 1e-13);
        let d = beta_matrix(&ComplexMatrix::from_real_diagonal(&[2.0, 3.0]), &i).unwrap();
        assert!(d.distance(&ComplexMatrix::from_real_diagonal(&[0.5, 1.0 / 3.0])) < 1e-13);
    }

    #[test]
    fn commuting_pair_matches_gamma_form() {
        let a = ComplexMatrix::from_real_rows(&[vec![0.6, 0.2], vec![0.1, 0.9]]).unwrap();
        let b = a.scale_real(0.5).shift(0.4);
        let q = beta_matrix(&a, &b).unwrap();
        let g = matrix_gamma(&a).unwrap()
            * matrix_gamma(&b).unwrap()
            * reciprocal_gamma(&(&a + &b)).unwrap();
        assert!(q.distance(&g) < 1e-10 * g.frobenius_norm(), "{q} vs {g}");
    }

    #[test]
    fn rejects_unstable_input() {
        let bad = ComplexMatrix::from_real_diagonal(&[1.0, -0.5]);
        let err = beta_matrix(&bad, &ComplexMatrix::identity(2)).unwrap_err();
        assert!(matches!(err, Error::NotPositiveStable { .. }));
    }
}
