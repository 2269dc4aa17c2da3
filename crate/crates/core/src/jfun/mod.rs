//! Explicit J-function generators, their Adams twists, fixed-point
//! recursion checks and input extraction.

mod generators;
mod input;
mod recursion;

pub use generators::{
    bundle_series, bundle_series_gamma_route, complete_intersection_limit, cpn_coeff, cpn_component,
    cpn_component_adams, cpn_component_gamma_route, cpn_pform, cpn_pform_adams, cy_limit_route,
    cy_limit_route_symbolic, cy_local_series, euler_factor_negative, euler_factor_positive, formal_lambda, gamma_image,
    generate, pform_coeff, point_coeff, point_small_j, point_small_j_adams, sym_flow_image, BundleSign, BundleSpec,
    ClassRing, GeneratedSeries, Generator, LambdaParam, ToricSpec,
};
pub use input::{equivariant_factors, extract_input_t, nonzero_input_degrees, LaurentSplit};
pub use recursion::{deduce_recursion_coeff, max_pole_order, recursion_from_series, RecursionCertificate};
