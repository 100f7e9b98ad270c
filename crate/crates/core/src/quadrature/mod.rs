pub mod cubature;
pub mod representations;
pub mod rule;

pub use cubature::{integrate, Block, CubatureResult, Region, Sample, MAX_DIM};
pub use representations::{
    check_domain, dirichlet_closed_form, dirichlet_simplex_integral, integral_value,
    integral_value_with, representation_hypotheses, QuadratureSpec, RepresentationId,
};
