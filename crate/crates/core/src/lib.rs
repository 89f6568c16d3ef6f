//! Finite permutation groups and machine checks of coprime-order
//! nilpotency criteria for the terms of the derived and lower central
//! series.
//!
//! The crate is organised bottom-up:
//!
//! * [`permcore`]: permutations, stabilizer chains, element scans, quotients.
//! * [`structure`]: derived/lower central/lower Fitting series, Sylow
//!   subgroups, cores, the Fitting subgroup, Sylow bases and their
//!   normalizers.
//! * [`words`]: value sets of the iterated commutator words `δ_k` and
//!   `γ_k`, verbal subgroups, and commutator-closed generating sets.
//! * [`criterion`]: the coprime-order product condition and its agreement
//!   with nilpotency of `G^(k)` / `γ_k(G)`.
//! * [`verification`]: extensional checks of the supporting lemmas.
//!
//! Products are read left to right, `x^g = g⁻¹xg` and `[a,b] = a⁻¹b⁻¹ab`.

pub mod arith;
pub mod criterion;
pub mod error;
pub mod permcore;
pub mod structure;
pub mod verification;
pub mod words;

pub use error::{GroupError, Result};
pub use permcore::{ElementSet, PermGroup, Permutation, DEFAULT_CAP};
