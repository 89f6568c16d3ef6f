use std::collections::HashMap;

use super::elements::ElementSet;
use super::group::{subgroup_generated, PermGroup};
use super::perm::Permutation;
use crate::error::{GroupError, Result};

/// `G/N` realized as the action of `G` on the right cosets of `N`.
///
/// Coset `i` is `N·r_i`, with representatives `r_i` the least element of
/// each coset; cosets are numbered in canonical order of their
/// representatives, so coset 0 is `N` itself.
#[derive(Clone, Debug)]
pub struct Quotient {
    group: PermGroup,
    kernel: PermGroup,
    reps: Vec<Permutation>,
    coset_of: HashMap<Permutation, u32>,
}

impl Quotient {
    /// The image group, acting on `index()` points.
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn kernel(&self) -> &PermGroup {
        &self.kernel
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Coset number of `g`, or `None` when `g` is not in the ambient group.
    pub fn coset_index(&self, g: &Permutation) -> Option<usize> {
        self.coset_of.get(g).map(|&i| i as usize)
    }

    /// Image of an element of `G` as a permutation of the cosets.
    pub fn map(&self, g: &Permutation) -> Result<Permutation> {
        if !self.coset_of.contains_key(g) {
            return Err(GroupError::InvalidPermutation(format!(
                "{g} is not in the ambient group"
            )));
        }
        let images = self
            .reps
            .iter()
            .map(|r| self.coset_of[&r.mul(g)])
            .collect();
        Permutation::from_images0(images)
    }

    /// Image of a subgroup of `G`.
    pub fn image(&self, h: &PermGroup) -> Result<PermGroup> {
        let gens = h
            .generators()
            .iter()
            .map(|g| self.map(g))
            .collect::<Result<Vec<_>>>()?;
        subgroup_generated(self.index(), gens.iter())
    }

    /// Image of a set of elements of `G`.
    pub fn image_set(&self, set: &ElementSet) -> Result<ElementSet> {
        let imgs = set.iter().map(|g| self.map(g)).collect::<Result<Vec<_>>>()?;
        ElementSet::new(self.index(), imgs)
    }
}

/// Builds `G/N`. Fails with `NotNormal` unless `N ⊴ G`, and with
/// `OrderCapExceeded` when `G` cannot be enumerated under `cap`.
pub fn quotient(g: &PermGroup, n: &PermGroup, cap: usize) -> Result<Quotient> {
    if g.degree() != n.degree() {
        return Err(GroupError::DegreeMismatch {
            left: g.degree(),
            right: n.degree(),
        });
    }
    if !n.is_normal_in(g) {
        return Err(GroupError::NotNormal);
    }
    let all = g.elements(cap)?;
    let kernel_elems = n.elements(cap)?;
    let mut coset_of: HashMap<Permutation, u32> = HashMap::with_capacity(all.len());
    let mut reps = Vec::new();
    for x in all {
        if coset_of.contains_key(x) {
            continue;
        }
        let idx = reps.len() as u32;
        for k in kernel_elems {
            coset_of.insert(k.mul(x), idx);
        }
        reps.push(x.clone());
    }
    let mut q = Quotient {
        group: PermGroup::trivial(reps.len()),
        kernel: n.clone(),
        reps,
        coset_of,
    };
    let gens = g
        .generators()
        .iter()
        .map(|x| q.map(x))
        .collect::<Result<Vec<_>>>()?;
    q.group = PermGroup::new(q.index(), gens)?;
    Ok(q)
}
