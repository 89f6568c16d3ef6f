//! Structural series and characteristic subgroups.

mod basis;
mod series;
mod sylow;

pub use basis::{intersect_basis, permutable, sylow_basis, SylowBasis, MAX_BASIS_ATTEMPTS};
pub use series::{
    commutator_with, derived_series, derived_subgroup, gamma_infinity, is_metanilpotent,
    is_nilpotent, is_soluble, lower_central_series, lower_fitting_series, SeriesKind,
    SeriesReport, SeriesSummary,
};
pub use sylow::{
    core, fitting_subgroup, is_p_element, normal_subgroups, p_core, p_prime_core,
    sylow_subgroup, sylow_subgroups,
};
