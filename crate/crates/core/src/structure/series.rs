use serde::Serialize;

use crate::error::Result;
use crate::permcore::{normal_closure, Permutation, PermGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    Derived,
    LowerCentral,
    /// `K_1 = G`, `K_{i+1} = γ∞(K_i)`.
    LowerFitting,
}

/// A descending series, iterated until it reaches the trivial group or
/// repeats a term.
///
/// `terms[0]` is the group itself. For the lower central series this is
/// `γ_1`, so `γ_k(G) = terms[k-1]`; for the derived series `G^(k) = terms[k]`.
#[derive(Clone, Debug)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<PermGroup>,
    /// The last term equals its predecessor and is nontrivial.
    pub stabilized: bool,
    /// Number of nontrivial terms, for a lower Fitting series that reaches 1.
    pub fitting_height: Option<usize>,
}

/// Serializable digest of a [`SeriesReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesSummary {
    pub kind: SeriesKind,
    pub orders: Vec<u64>,
    pub stabilized: bool,
    pub fitting_height: Option<usize>,
}

impl SeriesReport {
    pub fn orders(&self) -> Vec<u64> {
        self.terms.iter().map(PermGroup::order).collect()
    }

    /// Term at position `i`, clamped to the last term once the series has
    /// stopped changing.
    pub fn term(&self, i: usize) -> &PermGroup {
        &self.terms[i.min(self.terms.len() - 1)]
    }

    pub fn last(&self) -> &PermGroup {
        self.terms.last().expect("series has at least one term")
    }

    pub fn reaches_trivial(&self) -> bool {
        self.last().order() == 1
    }

    pub fn summary(&self) -> SeriesSummary {
        SeriesSummary {
            kind: self.kind,
            orders: self.orders(),
            stabilized: self.stabilized,
            fitting_height: self.fitting_height,
        }
    }
}

fn iterate<F>(g: &PermGroup, kind: SeriesKind, mut next: F) -> Result<SeriesReport>
where
    F: FnMut(&PermGroup) -> Result<PermGroup>,
{
    let mut terms = vec![g.clone()];
    let mut stabilized = false;
    loop {
        let last = terms.last().unwrap();
        if last.order() == 1 {
            break;
        }
        let n = next(last)?;
        let same = n.order() == last.order();
        terms.push(n);
        if same {
            stabilized = true;
            break;
        }
    }
    let fitting_height = (kind == SeriesKind::LowerFitting && !stabilized).then(|| terms.len() - 1);
    Ok(SeriesReport {
        kind,
        terms,
        stabilized,
        fitting_height,
    })
}

fn generator_commutators(a: &PermGroup, b: &PermGroup) -> Vec<Permutation> {
    let mut out = Vec::new();
    for x in a.generators() {
        for y in b.generators() {
            let c = x.comm(y);
            if !c.is_identity() {
                out.push(c);
            }
        }
    }
    out
}

/// `G' = [G, G]`.
pub fn derived_subgroup(g: &PermGroup) -> Result<PermGroup> {
    normal_closure(g, &generator_commutators(g, g))
}

/// `[H, G]` for `H ⊴ G`: the normal closure in `G` of the commutators of
/// generators.
pub fn commutator_with(h: &PermGroup, g: &PermGroup) -> Result<PermGroup> {
    normal_closure(g, &generator_commutators(h, g))
}

pub fn derived_series(g: &PermGroup) -> Result<SeriesReport> {
    iterate(g, SeriesKind::Derived, derived_subgroup)
}

pub fn lower_central_series(g: &PermGroup) -> Result<SeriesReport> {
    iterate(g, SeriesKind::LowerCentral, |h| commutator_with(h, g))
}

/// The nilpotent residual: the last term of the lower central series.
pub fn gamma_infinity(g: &PermGroup) -> Result<PermGroup> {
    Ok(lower_central_series(g)?.last().clone())
}

pub fn lower_fitting_series(g: &PermGroup) -> Result<SeriesReport> {
    iterate(g, SeriesKind::LowerFitting, gamma_infinity)
}

pub fn is_nilpotent(g: &PermGroup) -> Result<bool> {
    if g.is_p_group() {
        return Ok(true);
    }
    Ok(lower_central_series(g)?.reaches_trivial())
}

pub fn is_soluble(g: &PermGroup) -> Result<bool> {
    Ok(derived_series(g)?.reaches_trivial())
}

/// `γ∞(G)` is nilpotent.
pub fn is_metanilpotent(g: &PermGroup) -> Result<bool> {
    is_nilpotent(&gamma_infinity(g)?)
}
