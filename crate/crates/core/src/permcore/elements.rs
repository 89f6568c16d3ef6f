use serde::Serialize;

use super::group::PermGroup;
use super::perm::Permutation;
use crate::error::{GroupError, Result};

/// Closure properties of an [`ElementSet`]. A flag is only ever set by a
/// scan that verified it; `false` means "not verified", not "known false".
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SetFlags {
    pub symmetric: bool,
    pub conj_closed: bool,
    pub comm_closed: bool,
}

/// A duplicate-free set of permutations of one degree, kept sorted in the
/// canonical (lexicographic image-array) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementSet {
    degree: usize,
    elements: Vec<Permutation>,
    flags: SetFlags,
}

impl ElementSet {
    pub fn empty(degree: usize) -> Self {
        ElementSet {
            degree,
            elements: Vec::new(),
            flags: SetFlags::default(),
        }
    }

    pub fn new<I>(degree: usize, items: I) -> Result<Self>
    where
        I: IntoIterator<Item = Permutation>,
    {
        let mut elements: Vec<Permutation> = items.into_iter().collect();
        if let Some(bad) = elements.iter().find(|p| p.degree() != degree) {
            return Err(GroupError::DegreeMismatch {
                left: degree,
                right: bad.degree(),
            });
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(ElementSet {
            degree,
            elements,
            flags: SetFlags::default(),
        })
    }

    /// Wraps an already sorted, duplicate-free vector.
    pub(crate) fn from_sorted(degree: usize, elements: Vec<Permutation>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        ElementSet {
            degree,
            elements,
            flags: SetFlags::default(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn as_slice(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Permutation> {
        self.elements.iter()
    }

    pub fn into_vec(self) -> Vec<Permutation> {
        self.elements
    }

    pub fn flags(&self) -> SetFlags {
        self.flags
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.elements.iter().all(|x| other.contains(x))
    }

    pub fn filter<F: FnMut(&Permutation) -> bool>(&self, mut keep: F) -> ElementSet {
        ElementSet::from_sorted(
            self.degree,
            self.elements.iter().filter(|x| keep(x)).cloned().collect(),
        )
    }

    /// Members lying in the subgroup `h`.
    pub fn intersect_group(&self, h: &PermGroup) -> ElementSet {
        self.filter(|x| h.contains(x))
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut v = self.elements.clone();
        v.extend(other.elements.iter().cloned());
        v.sort_unstable();
        v.dedup();
        ElementSet::from_sorted(self.degree, v)
    }

    pub fn is_symmetric(&self) -> bool {
        self.elements.iter().all(|x| self.contains(&x.inverse()))
    }

    pub fn is_commutator_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|x| self.elements.iter().all(|y| self.contains(&x.comm(y))))
    }

    /// Closure under conjugation by `ambient`; checking its generators
    /// suffices for a finite set.
    pub fn is_conjugation_closed(&self, ambient: &PermGroup) -> bool {
        self.elements
            .iter()
            .all(|x| ambient.generators().iter().all(|g| self.contains(&x.conjugate(g))))
    }

    /// Union of the `ambient`-conjugacy classes of the members.
    pub fn conjugation_closure(&self, ambient: &PermGroup) -> ElementSet {
        let mut seen: std::collections::HashSet<Permutation> =
            self.elements.iter().cloned().collect();
        let mut stack: Vec<Permutation> = self.elements.clone();
        while let Some(x) = stack.pop() {
            for g in ambient.generators() {
                let y = x.conjugate(g);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        let mut v: Vec<Permutation> = seen.into_iter().collect();
        v.sort_unstable();
        ElementSet::from_sorted(self.degree, v)
    }

    /// Runs the closure scans and records the verdicts in [`SetFlags`].
    /// Conjugation closure is only scanned when an ambient group is given.
    pub fn scan_flags(&mut self, ambient: Option<&PermGroup>) -> SetFlags {
        self.flags = SetFlags {
            symmetric: self.is_symmetric(),
            conj_closed: ambient.is_some_and(|g| self.is_conjugation_closed(g)),
            comm_closed: self.is_commutator_closed(),
        };
        self.flags
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = &'a Permutation;
    type IntoIter = std::slice::Iter<'a, Permutation>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

pub fn is_symmetric(x: &ElementSet) -> bool {
    x.is_symmetric()
}

pub fn is_commutator_closed(x: &ElementSet) -> bool {
    x.is_commutator_closed()
}
