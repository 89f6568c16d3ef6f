//! The coprime-order product condition on word values and its agreement
//! with nilpotency of the corresponding verbal subgroup.

use std::collections::HashSet;

use serde::Serialize;

use crate::arith::coprime;
use crate::error::{GroupError, Result};
use crate::permcore::{ElementSet, PermGroup, Permutation};
use crate::structure::{derived_series, is_nilpotent, is_soluble, lower_central_series};
use crate::words::{word_values, WordKind, WordValueSet};

/// How the pair scan visits `(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairScan {
    /// Every unordered pair of nontrivial values.
    Full,
    /// `a` over one representative per `G`-class inside the value set, `b`
    /// over all nontrivial values. Sound because `|a^g b^g| = |ab|`.
    ClassReduced,
}

/// A pair of coprime-order word values whose product has the wrong order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoprimeViolation {
    pub a: Permutation,
    pub b: Permutation,
    pub order_a: u64,
    pub order_b: u64,
    pub order_ab: u64,
}

impl CoprimeViolation {
    /// Recomputes every claim from the raw permutations: the orders,
    /// coprimality, the failed product order, and membership of `a` and `b`
    /// in `values`.
    pub fn replay(&self, values: &ElementSet) -> bool {
        let (oa, ob) = (self.a.order(), self.b.order());
        let oab = self.a.mul(&self.b).order();
        oa == self.order_a
            && ob == self.order_b
            && oab == self.order_ab
            && coprime(oa, ob)
            && oab != oa * ob
            && values.contains(&self.a)
            && values.contains(&self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub kind: WordKind,
    pub k: usize,
    pub holds: bool,
    pub witness: Option<CoprimeViolation>,
    /// Coprime pairs examined; on failure, up to and including the witness.
    pub pairs_checked: u64,
    pub value_count: usize,
    pub classes_reduced: bool,
    /// `k` exceeded the depth at which the value sets stabilized.
    pub saturated: bool,
}

fn scan_pairs(
    g: &PermGroup,
    values: &WordValueSet,
    scan: PairScan,
) -> (Option<CoprimeViolation>, u64) {
    let nontrivial: Vec<(&Permutation, u64)> = values
        .values
        .iter()
        .filter(|x| !x.is_identity())
        .map(|x| (x, x.order()))
        .collect();
    let mut pairs = 0u64;
    let mut check = |(a, oa): (&Permutation, u64), (b, ob): (&Permutation, u64)| {
        if !coprime(oa, ob) {
            return None;
        }
        pairs += 1;
        let oab = a.mul(b).order();
        (oab != oa * ob).then(|| CoprimeViolation {
            a: a.clone(),
            b: b.clone(),
            order_a: oa,
            order_b: ob,
            order_ab: oab,
        })
    };
    match scan {
        PairScan::Full => {
            for (i, &a) in nontrivial.iter().enumerate() {
                for &b in &nontrivial[i + 1..] {
                    if let Some(w) = check(a, b) {
                        return (Some(w), pairs);
                    }
                }
            }
        }
        PairScan::ClassReduced => {
            for a in class_representatives(g, &values.values) {
                let a = (a, a.order());
                for &b in &nontrivial {
                    if let Some(w) = check(a, b) {
                        return (Some(w), pairs);
                    }
                }
            }
        }
    }
    (None, pairs)
}

/// Least element of each `G`-class meeting `set`, excluding the identity.
/// `set` is assumed closed under conjugation.
fn class_representatives<'a>(g: &PermGroup, set: &'a ElementSet) -> Vec<&'a Permutation> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut reps = Vec::new();
    for x in set {
        if x.is_identity() || seen.contains(x) {
            continue;
        }
        reps.push(x);
        let mut stack = vec![x.clone()];
        seen.insert(x.clone());
        while let Some(y) = stack.pop() {
            for h in g.generators() {
                let z = y.conjugate(h);
                if seen.insert(z.clone()) {
                    stack.push(z);
                }
            }
        }
    }
    reps
}

/// Checks `|ab| = |a||b|` for word values `a, b` of coprime orders.
pub fn coprime_product_criterion(
    g: &PermGroup,
    k: usize,
    kind: WordKind,
    cap: usize,
) -> Result<CriterionReport> {
    coprime_product_criterion_with(g, k, kind, cap, PairScan::Full)
}

pub fn coprime_product_criterion_with(
    g: &PermGroup,
    k: usize,
    kind: WordKind,
    cap: usize,
    scan: PairScan,
) -> Result<CriterionReport> {
    let values = word_values(g, k, kind, cap)?;
    Ok(criterion_on_values(g, &values, scan))
}

/// The pair scan on an already computed value set.
pub fn criterion_on_values(g: &PermGroup, values: &WordValueSet, scan: PairScan) -> CriterionReport {
    let (witness, pairs_checked) = scan_pairs(g, values, scan);
    CriterionReport {
        kind: values.kind,
        k: values.k,
        holds: witness.is_none(),
        witness,
        pairs_checked,
        value_count: values.values.len(),
        classes_reduced: scan == PairScan::ClassReduced,
        saturated: values.saturated(),
    }
}

/// Criterion verdict beside nilpotency of the verbal subgroup; `consistent`
/// is the equivalence of the two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub report: CriterionReport,
    pub subgroup_order: u64,
    pub nilpotent: bool,
    pub consistent: bool,
}

fn check_against(g: &PermGroup, k: usize, kind: WordKind, sub: &PermGroup, cap: usize) -> Result<TheoremCheck> {
    let report = coprime_product_criterion(g, k, kind, cap)?;
    let nilpotent = is_nilpotent(sub)?;
    Ok(TheoremCheck {
        consistent: report.holds == nilpotent,
        subgroup_order: sub.order(),
        nilpotent,
        report,
    })
}

/// δ-criterion against nilpotency of `G^(k)`, for soluble `G`.
pub fn theorem_check(g: &PermGroup, k: usize, cap: usize) -> Result<TheoremCheck> {
    if !is_soluble(g)? {
        return Err(GroupError::NotSoluble);
    }
    let series = derived_series(g)?;
    check_against(g, k, WordKind::Delta, series.term(k), cap)
}

/// γ-criterion against nilpotency of `γ_k(G)`; any finite group.
pub fn gamma_theorem_check(g: &PermGroup, k: usize, cap: usize) -> Result<TheoremCheck> {
    if k == 0 {
        return Err(GroupError::InvalidDepth(0));
    }
    let series = lower_central_series(g)?;
    check_against(g, k, WordKind::Gamma, series.term(k - 1), cap)
}

/// Outcome of running the δ-criterion on a possibly insoluble group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub report: CriterionReport,
    pub soluble: bool,
    pub derived_term_nilpotent: bool,
    /// Insoluble, yet the criterion holds.
    pub is_candidate_counterexample: bool,
}

/// Runs the δ-criterion on any group and flags insoluble groups that
/// satisfy it. Reports only; draws no conclusion.
pub fn probe_insoluble(g: &PermGroup, k: usize, cap: usize) -> Result<ProbeReport> {
    let soluble = is_soluble(g)?;
    let report = coprime_product_criterion(g, k, WordKind::Delta, cap)?;
    let derived_term_nilpotent = is_nilpotent(derived_series(g)?.term(k))?;
    Ok(ProbeReport {
        is_candidate_counterexample: report.holds && !soluble,
        soluble,
        derived_term_nilpotent,
        report,
    })
}
