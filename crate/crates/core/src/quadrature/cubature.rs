//! Tensor-product double-exponential cubature over products of unit
//! intervals, simplices and half-lines.
//!
//! A simplex block of dimension k is reached from the unit cube by
//! `u₁ = s₁, u₂ = (1−s₁)s₂, u₃ = (1−s₁)(1−s₂)s₃`, so that
//! `1 − u₁ − … − u_k = ∏(1−s_j)` is formed from exact complements.

use rayon::prelude::*;

use super::rule::{exp_sinh_half_line, tanh_sinh_unit, Node};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

pub const MAX_DIM: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Block {
    /// `[0, 1]`
    Interval,
    /// `{u ≥ 0, u₁ + … + u_k ≤ 1}`
    Simplex(usize),
    /// `[0, cutoff]` sampled by exp-sinh.
    HalfLine { cutoff: f64 },
}

impl Block {
    fn dim(&self) -> usize {
        match self {
            Block::Interval | Block::HalfLine { .. } => 1,
            Block::Simplex(k) => *k,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    blocks: Vec<Block>,
}

impl Region {
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        let dim: usize = blocks.iter().map(Block::dim).sum();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidArgument(format!(
                "cubature dimension must be in 1..={MAX_DIM}, got {dim}"
            )));
        }
        if blocks.iter().any(|b| matches!(b, Block::Simplex(0))) {
            return Err(Error::InvalidArgument("empty simplex block".into()));
        }
        Ok(Self { blocks })
    }

    pub fn unit_cube(dim: usize) -> Result<Self> {
        Self::new(vec![Block::Interval; dim])
    }

    pub fn simplex(dim: usize) -> Result<Self> {
        Self::new(vec![Block::Simplex(dim)])
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(Block::dim).sum()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }
}

/// One cubature point, in region coordinates.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sample {
    pub x: [f64; MAX_DIM],
    /// `1 − x[i]`; exact for interval coordinates and the first coordinate of
    /// a simplex block.
    pub xc: [f64; MAX_DIM],
    /// Per block, `1 − (sum of the block's coordinates)`.
    pub rest: [f64; MAX_DIM],
    /// Index of the 1-D node used on each axis, for lookup tables.
    pub idx: [usize; MAX_DIM],
}

#[derive(Debug, Clone)]
pub struct CubatureResult {
    pub value: ComplexMatrix,
    /// Frobenius difference between the rule and its step-doubled subrule.
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// The 1-D node sets used on each axis of `region` at `level`.
pub fn axis_nodes(region: &Region, level: usize) -> Vec<Vec<Node>> {
    let unit = tanh_sinh_unit(level);
    let mut axes = Vec::with_capacity(region.dim());
    for block in &region.blocks {
        match block {
            Block::Interval => axes.push(unit.clone()),
            Block::Simplex(k) => axes.extend(std::iter::repeat_n(unit.clone(), *k)),
            Block::HalfLine { cutoff } => axes.push(exp_sinh_half_line(level, *cutoff)),
        }
    }
    axes
}

fn map_sample(region: &Region, axes: &[Vec<Node>], idx: &[usize; MAX_DIM]) -> (Sample, f64, bool) {
    let mut s = Sample {
        idx: *idx,
        ..Sample::default()
    };
    let mut weight = 1.0;
    let mut coarse = true;
    let mut axis = 0;
    for (b, block) in region.blocks.iter().enumerate() {
        match block {
            Block::Interval | Block::HalfLine { .. } => {
                let n = &axes[axis][idx[axis]];
                s.x[axis] = n.x;
                s.xc[axis] = n.xc;
                s.rest[b] = n.xc;
                weight *= n.weight;
                coarse &= n.coarse;
                axis += 1;
            }
            Block::Simplex(k) => {
                let mut rem = 1.0;
                for j in 0..*k {
                    let n = &axes[axis][idx[axis]];
                    s.x[axis] = rem * n.x;
                    s.xc[axis] = if j == 0 { n.xc } else { 1.0 - s.x[axis] };
                    // Jacobian factor of this coordinate
                    weight *= n.weight * rem;
                    coarse &= n.coarse;
                    rem *= n.xc;
                    axis += 1;
                }
                s.rest[b] = rem;
            }
        }
    }
    (s, weight, coarse)
}

/// Integrates a matrix-valued function over `region`.
pub fn integrate<F>(region: &Region, level: usize, order: usize, f: F) -> CubatureResult
where
    F: Fn(&Sample) -> ComplexMatrix + Sync,
{
    let axes = axis_nodes(region, level);
    integrate_on_axes(region, &axes, order, f)
}

/// As [`integrate`], with caller-supplied node sets (one per axis).
pub fn integrate_on_axes<F>(
    region: &Region,
    axes: &[Vec<Node>],
    order: usize,
    f: F,
) -> CubatureResult
where
    F: Fn(&Sample) -> ComplexMatrix + Sync,
{
    let dim = region.dim();
    assert_eq!(axes.len(), dim, "one node set per axis");
    let counts: Vec<usize> = axes.iter().map(Vec::len).collect();
    let inner: usize = counts[1..].iter().product();

    let (fine, coarse, evaluations) = (0..counts[0])
        .into_par_iter()
        .map(|i0| {
            let mut fine = ComplexMatrix::zeros(order);
            let mut coarse = ComplexMatrix::zeros(order);
            let mut evals = 0usize;
            for flat in 0..inner {
                let mut idx = [0usize; MAX_DIM];
                idx[0] = i0;
                let mut rem = flat;
                for a in (1..dim).rev() {
                    idx[a] = rem % counts[a];
                    rem /= counts[a];
                }
                let (sample, weight, is_coarse) = map_sample(region, axes, &idx);
                if weight == 0.0 || !weight.is_finite() {
                    continue;
                }
                let value = f(&sample);
                evals += 1;
                let w = num_complex::Complex64::new(weight, 0.0);
                fine.add_scaled(&value, w);
                if is_coarse {
                    coarse.add_scaled(&value, w * (1u64 << dim) as f64);
                }
            }
            (fine, coarse, evals)
        })
        .reduce(
            || (ComplexMatrix::zeros(order), ComplexMatrix::zeros(order), 0),
            |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2),
        );

    CubatureResult {
        error_estimate: fine.distance(&coarse),
        value: fine,
        evaluations,
    }
}
