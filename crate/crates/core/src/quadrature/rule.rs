//! Double-exponential node sets.
//!
//! The step is `h = 1 / level`; nodes with even index form the rule of step
//! `2h`, which the cubature uses for its error estimate.

use std::f64::consts::FRAC_PI_2;

/// Smallest distance to a finite endpoint kept in a rule.
const ENDPOINT_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    /// Abscissa.
    pub x: f64,
    /// `1 - x`, computed without cancellation (unused on the half-line).
    pub xc: f64,
    pub weight: f64,
    /// Node also belongs to the rule with twice the step.
    pub coarse: bool,
}

/// Tanh-sinh rule on `[0, 1]`: `x = (1 + tanh(π/2 sinh t)) / 2`.
pub fn tanh_sinh_unit(level: usize) -> Vec<Node> {
    let h = 1.0 / level.max(1) as f64;
    let node = |k: i64| {
        let t = k as f64 * h;
        let s = FRAC_PI_2 * t.sinh();
        let x = 1.0 / (1.0 + (-2.0 * s).exp());
        let xc = 1.0 / (1.0 + (2.0 * s).exp());
        // dx/dt = (π/2) cosh t · sech² s / 2 and sech² s = 4 x (1 − x)
        let weight = h * FRAC_PI_2 * t.cosh() * 2.0 * x * xc;
        Node {
            x,
            xc,
            weight,
            coarse: k % 2 == 0,
        }
    };
    let mut nodes = vec![node(0)];
    let mut k = 1i64;
    loop {
        let right = node(k);
        let left = node(-k);
        if right.xc < ENDPOINT_FLOOR || left.x < ENDPOINT_FLOOR || right.weight == 0.0 {
            break;
        }
        nodes.push(left);
        nodes.push(right);
        k += 1;
    }
    nodes.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap());
    nodes
}

/// Exp-sinh rule on `[0, ∞)`: `x = exp(π/2 sinh t)`, truncated at `cutoff`.
///
/// Exponentially decaying integrands converge more slowly under this map
/// than endpoint singularities do under tanh-sinh, so the step is halved:
/// `h = 1 / (2 level)`.
pub fn exp_sinh_half_line(level: usize, cutoff: f64) -> Vec<Node> {
    let h = 0.5 / level.max(1) as f64;
    let node = |k: i64| {
        let t = k as f64 * h;
        let x = (FRAC_PI_2 * t.sinh()).exp();
        Node {
            x,
            xc: 1.0 - x,
            weight: h * FRAC_PI_2 * t.cosh() * x,
            coarse: k % 2 == 0,
        }
    };
    let mut nodes = vec![node(0)];
    let mut k = 1i64;
    loop {
        let n = node(-k);
        if n.x < ENDPOINT_FLOOR {
            break;
        }
        nodes.push(n);
        k += 1;
    }
    let mut k = 1i64;
    loop {
        let n = node(k);
        if n.x > cutoff || !n.weight.is_finite() {
            break;
        }
        nodes.push(n);
        k += 1;
    }
    nodes.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap());
    nodes
}

/// 1-D convenience: `∫₀¹ f`, returned with the step-doubling difference.
pub fn integrate_unit(level: usize, f: impl Fn(f64, f64) -> f64) -> (f64, f64) {
    let mut fine = 0.0;
    let mut coarse = 0.0;
    for n in tanh_sinh_unit(level) {
        let v = f(n.x, n.xc) * n.weight;
        fine += v;
        if n.coarse {
            coarse += 2.0 * v;
        }
    }
    (fine, (fine - coarse).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_are_symmetric_and_sum_to_one() {
        let nodes = tanh_sinh_unit(8);
        let total: f64 = nodes.iter().map(|n| n.weight).sum();
        assert!((total - 1.0).abs() < 1e-14);
        for n in &nodes {
            assert!((n.x + n.xc - 1.0).abs() < 1e-15);
            assert!(n.x > 0.0 && n.xc > 0.0);
        }
    }

    #[test]
    fn algebraic_endpoint_singularity() {
        // ∫₀¹ x^{-1/2} (1-x)^{-1/3} dx = B(1/2, 2/3)
        let exact = statrs::function::beta::beta(0.5, 2.0 / 3.0);
        let (value, _) = integrate_unit(8, |x, xc| x.powf(-0.5) * xc.powf(-1.0 / 3.0));
        assert!((value - exact).abs() < 1e-12 * exact, "{value} vs {exact}");
    }

    #[test]
    fn refinement_shrinks_error() {
        let exact = statrs::function::beta::beta(0.7, 1.3);
        let err =
            |level| (integrate_unit(level, |x, xc| x.powf(-0.3) * xc.powf(0.3)).0 - exact).abs();
        let e3 = err(3);
        let e6 = err(6);
        assert!(e6 * 10.0 < e3 || e6 < 1e-14, "{e3} {e6}");
    }

    #[test]
    fn half_line_gamma_integral() {
        // ∫₀^∞ e^{-x} x^{1.5} dx = Γ(2.5)
        let nodes = exp_sinh_half_line(8, 200.0);
        let value: f64 = nodes
            .iter()
            .map(|n| n.weight * (-n.x).exp() * n.x.powf(1.5))
            .sum();
        let exact = statrs::function::gamma::gamma(2.5);
        assert!((value - exact).abs() < 1e-12, "{value} vs {exact}");
    }
}
