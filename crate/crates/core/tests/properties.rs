use std::collections::BTreeMap;

use lmx_core::matrix::{matrix_gamma, pochhammer, reciprocal_gamma, scalar_power, ComplexMatrix};
use lmx_core::sampling::{draw_spec, Sampler, SpectrumRange};
use lmx_core::series::{
    evaluate, pde_hypotheses, term_coefficient, FunctionId, FunctionSpec, MultiIndex,
    TruncationPolicy,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn rel(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.distance(b) / b.frobenius_norm().max(1.0)
}

fn small_point(s: &mut Sampler, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::from_polar(s.uniform(0.01, 0.15), s.uniform(-3.0, 3.0)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn scalar_power_group_law(seed in any::<u64>(), s in 0.2f64..3.0, t in 0.2f64..3.0) {
        let mut rng = Sampler::new(seed);
        let shift = rng.uniform(0.5, 2.5);
        let e = rng.generic(3, shift, 0.6);
        let lhs = scalar_power(s, &e).unwrap() * scalar_power(t, &e).unwrap();
        let rhs = scalar_power(s * t, &e).unwrap();
        prop_assert!(rel(&lhs, &rhs) < 1e-10);
    }

    #[test]
    fn pochhammer_recurrence(seed in any::<u64>(), n in 0usize..12) {
        let mut rng = Sampler::new(seed);
        let shift = rng.uniform(0.5, 2.5);
        let a = rng.generic(3, shift, 0.8);
        let lhs = pochhammer(&a, n + 1);
        let rhs = pochhammer(&a, n) * a.shift(n as f64);
        prop_assert!(rel(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn gamma_functional_equation(seed in any::<u64>()) {
        let mut rng = Sampler::new(seed);
        let shift = rng.uniform(0.8, 3.0);
        let a = rng.generic(3, shift, 0.4);
        let g = matrix_gamma(&a).unwrap();
        let lhs = matrix_gamma(&a.shift(1.0)).unwrap();
        prop_assert!(rel(&lhs, &(&a * &g)) < 1e-9);
        let inv = reciprocal_gamma(&a).unwrap();
        prop_assert!((&inv * &g).distance(&ComplexMatrix::identity(3)) < 1e-9);
    }

    #[test]
    fn diagonal_parameters_decouple(seed in any::<u64>(), which in 0usize..21) {
        let id = FunctionId::ALL[which];
        let mut rng = Sampler::new(seed);
        let n = id.fixed_variables().unwrap_or(2);
        let mut params = BTreeMap::new();
        for role in id.roles(n) {
            let d = rng.spectrum(3, SpectrumRange::new(0.5, 2.5, 0.4));
            params.insert(role, ComplexMatrix::from_diagonal(&d));
        }
        let spec = FunctionSpec::new(id, n, params).unwrap();
        let p = small_point(&mut rng, n);
        let policy = TruncationPolicy::new(12).unwrap();
        let full = evaluate(&spec, &p, &policy).unwrap().value;
        for k in 0..3 {
            let single = evaluate(&spec.diagonal_entry(k), &p, &policy).unwrap().value.get(0, 0);
            prop_assert!((full.get(k, k) - single).norm() < 1e-12 * (1.0 + single.norm()));
        }
    }

    #[test]
    fn aliases_match_general_functions(seed in any::<u64>()) {
        let mut rng = Sampler::new(seed);
        for (alias, general) in [
            (FunctionId::F1, FunctionId::FA),
            (FunctionId::F2, FunctionId::FB),
            (FunctionId::F5, FunctionId::FC),
            (FunctionId::F9, FunctionId::FD),
        ] {
            let spec = draw_spec(general, 3, 2, &pde_hypotheses(general, 3), SpectrumRange::default(), &mut rng)
                .unwrap();
            let alias_spec = FunctionSpec::new(alias, 3, spec.params().clone()).unwrap();
            let p = small_point(&mut rng, 3);
            let policy = TruncationPolicy::new(10).unwrap();
            let a = evaluate(&alias_spec, &p, &policy).unwrap().value;
            let g = evaluate(&spec, &p, &policy).unwrap().value;
            prop_assert!(a.distance(&g) <= 1e-14 * (1.0 + g.frobenius_norm()));
        }
    }

    #[test]
    fn zero_index_term_is_identity(seed in any::<u64>(), which in 0usize..17) {
        let id = FunctionId::DISTINCT[which];
        let mut rng = Sampler::new(seed);
        let n = id.fixed_variables().unwrap_or(2);
        let spec = draw_spec(id, n, 2, &[], SpectrumRange::default(), &mut rng).unwrap();
        let t = term_coefficient(&spec, &MultiIndex::new(vec![0; n])).unwrap();
        prop_assert!(t.distance(&ComplexMatrix::identity(2)) < 1e-15);
    }
}
