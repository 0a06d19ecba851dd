//! Passage-time laws: exit and overshoot, infimum, point hitting, n-tuple laws, potentials.

mod exit;
mod points;
mod potential_kernel;
mod table;
mod tuple;

pub use exit::{
    blumenthal_exit_density, infimum_cdf, infimum_density, infimum_law, overshoot_cdf, overshoot_cdf_sweep,
    overshoot_density, overshoot_mass, undershoot_density, undershoot_mass,
};
pub use points::{
    hit_point_prob, hit_point_prob_with, multi_point_hitting, potential_density_u, potential_density_u_with,
    two_point_first, two_point_hitting, HittingMatrix, MultiPointHitting, TwoPointHitting, CONDITION_WARNING,
};
pub use potential_kernel::{
    expected_sigma_minus, expected_sigma_minus_quadrature, potential_kernel_r, potential_kernel_r_with,
};
pub use table::{DistributionTable, Grid, IncrementalCdf, TableKind};
pub use tuple::{
    quadruple_jump_integral, quadruple_law_last_passage, quadruple_law_marginal_v, quadruple_law_mass,
    quadruple_law_radial, triple_law_first_passage, triple_law_marginal_u, triple_law_mass, triple_law_radial,
};
