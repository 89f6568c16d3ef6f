//! Permutation arithmetic and the group kernel.

mod chain;
mod elements;
mod group;
mod perm;
mod quotient;

pub use chain::StabChain;
pub use elements::{is_commutator_closed, is_symmetric, ElementSet, SetFlags};
pub use group::{
    centralizer, common_normalizer, conjugacy_classes, conjugate_subgroups,
    find_subgroup_conjugator, intersection, join, normal_closure, normalizer, product_order,
    subgroup_generated, PermGroup, DEFAULT_CAP,
};
pub use perm::{commutator, compose, element_order, Permutation};
pub use quotient::{quotient, Quotient};
