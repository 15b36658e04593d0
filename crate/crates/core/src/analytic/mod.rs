//! Archimedean side of the audit: Chebyshev theta sums, capacity bounds for
//! hedgehogs, and singular directions of reconstructed rational functions.

mod capacity;
mod roots;
mod singular;
mod theta;

pub use capacity::{
    bound_comparison, dubinin_bound, estimate_transfinite_diameter, polya_bound_for_series, BoundComparison,
    Hedgehog, ARG_TOLERANCE, HALF_E, SQRT_E,
};
pub use roots::{aberth_roots, RootsOutcome};
pub use singular::{singular_directions, singular_directions_default, SingularityReport, DEFAULT_ROOT_TOL};
pub use theta::{
    asymptotic_ratio, chebyshev_theta, exponent_identity_check, exponent_identity_check_with, theta_table,
    theta_table_csv, ExponentIdentityReport, ExponentRow, ThetaRow,
};
