//! Seeded parameter draws for the verifiers.
//!
//! Matrices that must commute are built as `V D V⁻¹` with a shared unitary
//! `V` and diagonal `D`, so the commutation holds to rounding.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::matrix::ComplexMatrix;
use crate::series::{FunctionId, FunctionSpec, Hypothesis, Role};

/// Range of eigenvalues drawn for a role: real part in `re`, imaginary part
/// in `[-im, im]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRange {
    pub re: (f64, f64),
    pub im: f64,
}

impl SpectrumRange {
    pub const fn new(lo: f64, hi: f64, im: f64) -> Self {
        Self { re: (lo, hi), im }
    }
}

impl Default for SpectrumRange {
    fn default() -> Self {
        Self::new(0.5, 2.0, 0.3)
    }
}

#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        if hi <= lo {
            return lo;
        }
        self.rng.random_range(lo..hi)
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn complex_normal(&mut self) -> Complex64 {
        Complex64::new(self.normal(), self.normal()) / std::f64::consts::SQRT_2
    }

    pub fn gaussian_matrix(&mut self, r: usize) -> ComplexMatrix {
        ComplexMatrix::from_inner(DMatrix::from_fn(r, r, |_, _| self.complex_normal()))
    }

    /// Haar-like unitary from the QR factor of a Gaussian matrix.
    pub fn unitary(&mut self, r: usize) -> ComplexMatrix {
        let g = self.gaussian_matrix(r).into_inner();
        ComplexMatrix::from_inner(g.qr().q())
    }

    pub fn spectrum(&mut self, r: usize, range: SpectrumRange) -> Vec<Complex64> {
        (0..r)
            .map(|_| {
                Complex64::new(
                    self.uniform(range.re.0, range.re.1),
                    self.uniform(-range.im, range.im),
                )
            })
            .collect()
    }

    /// `V diag(spectrum) V^H`.
    pub fn in_basis(&mut self, v: &ComplexMatrix, range: SpectrumRange) -> ComplexMatrix {
        let d = ComplexMatrix::from_diagonal(&self.spectrum(v.order(), range));
        let vh = ComplexMatrix::from_inner(v.inner().adjoint());
        v * &d * vh
    }

    /// Non-normal matrix with eigenvalues near `shift`: `shift·I + scale·G/√r`.
    pub fn generic(&mut self, r: usize, shift: f64, scale: f64) -> ComplexMatrix {
        self.gaussian_matrix(r)
            .scale_real(scale / (r as f64).sqrt())
            .shift(shift)
    }

    /// Random strictly upper triangular matrix with Frobenius norm `norm`.
    pub fn strictly_upper(&mut self, r: usize, norm: f64) -> ComplexMatrix {
        let mut m = DMatrix::from_element(r, r, Complex64::new(0.0, 0.0));
        for i in 0..r {
            for j in i + 1..r {
                m[(i, j)] = self.complex_normal();
            }
        }
        let f = m.norm();
        if f > 0.0 {
            m /= Complex64::new(f / norm, 0.0);
        }
        ComplexMatrix::from_inner(m)
    }
}

/// Roles joined by commutation hypotheses, as connected components. Roles
/// that appear in no hypothesis come out as singletons.
pub fn commuting_groups(roles: &[Role], hypotheses: &[Hypothesis]) -> Vec<Vec<Role>> {
    let mut parent: BTreeMap<Role, Role> = roles.iter().map(|&r| (r, r)).collect();
    fn find(parent: &mut BTreeMap<Role, Role>, r: Role) -> Role {
        let p = parent[&r];
        if p == r {
            return r;
        }
        let root = find(parent, p);
        parent.insert(r, root);
        root
    }
    for h in hypotheses {
        let Hypothesis::Commute { left, right, .. } = h else {
            continue;
        };
        let members: Vec<Role> = left
            .terms
            .iter()
            .chain(&right.terms)
            .map(|(r, _)| *r)
            .filter(|r| parent.contains_key(r))
            .collect();
        for w in members.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent.insert(a, b);
            }
        }
    }
    let mut groups: BTreeMap<Role, Vec<Role>> = BTreeMap::new();
    for &r in roles {
        let root = find(&mut parent, r);
        groups.entry(root).or_default().push(r);
    }
    let mut out: Vec<Vec<Role>> = groups.into_values().collect();
    out.sort();
    out
}

/// Draws `r×r` parameters for `id` satisfying `hypotheses`: each commuting
/// group shares one unitary eigenbasis; roles outside every hypothesis are
/// generic non-normal matrices with spectrum near the middle of `range`.
pub fn draw_spec(
    id: FunctionId,
    n: usize,
    r: usize,
    hypotheses: &[Hypothesis],
    range: SpectrumRange,
    sampler: &mut Sampler,
) -> Result<FunctionSpec> {
    let roles = id.roles(n);
    let mut params = BTreeMap::new();
    for group in commuting_groups(&roles, hypotheses) {
        if group.len() == 1 && !mentioned(group[0], hypotheses) {
            let mid = 0.5 * (range.re.0 + range.re.1);
            let half = 0.5 * (range.re.1 - range.re.0);
            params.insert(group[0], sampler.generic(r, mid, 0.5 * half));
            continue;
        }
        let v = sampler.unitary(r);
        for role in group {
            params.insert(role, sampler.in_basis(&v, range));
        }
    }
    FunctionSpec::new(id, n, params)
}

fn mentioned(role: Role, hypotheses: &[Hypothesis]) -> bool {
    hypotheses.iter().any(|h| match h {
        Hypothesis::Commute { left, right, .. } => left
            .terms
            .iter()
            .chain(&right.terms)
            .any(|(r, _)| *r == role),
        Hypothesis::PositiveStable(_) => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{pde_hypotheses, validate_parameters};

    #[test]
    fn unitary_is_unitary() {
        let v = Sampler::new(1).unitary(4);
        let vh = ComplexMatrix::from_inner(v.inner().adjoint());
        assert!((&vh * &v).distance(&ComplexMatrix::identity(4)) < 1e-13);
    }

    #[test]
    fn same_seed_same_draw() {
        let a = Sampler::new(7).gaussian_matrix(3);
        let b = Sampler::new(7).gaussian_matrix(3);
        assert_eq!(a, b);
    }

    #[test]
    fn fb_groups_split() {
        let h = pde_hypotheses(FunctionId::FB, 2);
        let g = commuting_groups(&FunctionId::FB.roles(2), &h);
        assert_eq!(g.len(), 2);
        assert!(g.iter().any(|g| g == &vec![Role::Ai(1), Role::Ai(2)]));
    }

    #[test]
    fn draws_satisfy_hypotheses() {
        let mut s = Sampler::new(3);
        for id in FunctionId::DISTINCT {
            let n = id.fixed_variables().unwrap_or(3);
            let spec = draw_spec(
                id,
                n,
                3,
                &pde_hypotheses(id, n),
                SpectrumRange::default(),
                &mut s,
            )
            .unwrap();
            assert!(validate_parameters(&spec).is_empty(), "{id}");
        }
    }

    #[test]
    fn upper_perturbation_norm() {
        let p = Sampler::new(0).strictly_upper(3, 0.1);
        assert!((p.frobenius_norm() - 0.1).abs() < 1e-15);
        assert_eq!(p.get(1, 0), Complex64::new(0.0, 0.0));
    }
}
