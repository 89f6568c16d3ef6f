use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use super::chain::StabChain;
use super::elements::ElementSet;
use super::perm::Permutation;
use crate::error::{GroupError, Result};

/// Default bound on full element enumeration.
pub const DEFAULT_CAP: usize = 200_000;

/// A permutation group given by generators.
///
/// The stabilizer chain is built on first use; the sorted element list is
/// built on first request that fits under the caller's cap. Both caches are
/// write-once, so a group can be shared freely between threads.
///
/// `PartialEq` compares groups as sets of permutations.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
    elements: OnceLock<ElementSet>,
}

impl PermGroup {
    /// Group generated by `generators`, kept as given. An empty list yields
    /// the trivial group, represented by the identity generator.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(GroupError::InvalidPermutation("degree must be at least 1".into()));
        }
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch {
                left: degree,
                right: bad.degree(),
            });
        }
        let generators = if generators.is_empty() {
            vec![Permutation::identity(degree)]
        } else {
            generators
        };
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
            elements: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("degree must be positive")
    }

    /// Group whose full element list is already known; primes the cache.
    pub(crate) fn with_elements(
        degree: usize,
        generators: Vec<Permutation>,
        elements: ElementSet,
    ) -> Self {
        let g = PermGroup::new(degree, generators).expect("valid generators");
        let _ = g.elements.set(elements);
        g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators))
    }

    pub fn order(&self) -> u64 {
        if let Some(e) = self.elements.get() {
            return e.len() as u64;
        }
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        if let Some(e) = self.elements.get() {
            return e.contains(g);
        }
        self.chain().contains(g)
    }

    /// All elements in canonical order, enumerated from the chain.
    pub fn elements(&self, cap: usize) -> Result<&ElementSet> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        let order = self.order();
        if order > cap as u64 {
            return Err(GroupError::OrderCapExceeded { order, cap });
        }
        let mut all = self.chain().all_elements();
        all.sort_unstable();
        let set = ElementSet::from_sorted(self.degree, all);
        let _ = self.elements.set(set);
        Ok(self.elements.get().unwrap())
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// `self` is normalized by every element of `by`.
    pub fn is_normalized_by(&self, by: &PermGroup) -> bool {
        by.generators
            .iter()
            .all(|g| self.generators.iter().all(|h| self.contains(&h.conjugate(g))))
    }

    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        self.is_subgroup_of(ambient) && self.is_normalized_by(ambient)
    }

    /// `H^g`.
    pub fn conjugate_by(&self, g: &Permutation) -> PermGroup {
        PermGroup::new(
            self.degree,
            self.generators.iter().map(|h| h.conjugate(g)).collect(),
        )
        .expect("conjugation preserves degree")
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// Order is a power of a single prime (the trivial group counts).
    pub fn is_p_group(&self) -> bool {
        crate::arith::is_prime_power(self.order())
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && other.generators.iter().all(|g| self.contains(g))
    }
}

impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Smallest subgroup containing `gens`. Redundant generators (already in
/// the span of the earlier ones) are dropped.
pub fn subgroup_generated<'a, I>(degree: usize, gens: I) -> Result<PermGroup>
where
    I: IntoIterator<Item = &'a Permutation>,
{
    let mut kept: Vec<Permutation> = Vec::new();
    let mut current = PermGroup::trivial(degree);
    for g in gens {
        if g.degree() != degree {
            return Err(GroupError::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        if g.is_identity() || current.contains(g) {
            continue;
        }
        kept.push(g.clone());
        current = PermGroup::new(degree, kept.clone())?;
    }
    Ok(current)
}

/// `⟨H, K⟩`.
pub fn join(h: &PermGroup, k: &PermGroup) -> Result<PermGroup> {
    subgroup_generated(h.degree(), h.generators().iter().chain(k.generators()))
}

/// `H ∩ K`, by scanning the smaller group.
pub fn intersection(h: &PermGroup, k: &PermGroup, cap: usize) -> Result<PermGroup> {
    if h.degree() != k.degree() {
        return Err(GroupError::DegreeMismatch {
            left: h.degree(),
            right: k.degree(),
        });
    }
    let (small, big) = if h.order() <= k.order() { (h, k) } else { (k, h) };
    let common = small.elements(cap)?.intersect_group(big);
    let gens = subgroup_generated(h.degree(), common.iter())?;
    Ok(PermGroup::with_elements(
        h.degree(),
        gens.generators().to_vec(),
        common,
    ))
}

/// Size of the product set `H·K`, i.e. `|H||K| / |H ∩ K|`.
pub fn product_order(h: &PermGroup, k: &PermGroup, cap: usize) -> Result<u64> {
    let meet = intersection(h, k, cap)?;
    Ok(h.order() * k.order() / meet.order())
}

/// Smallest normal subgroup of `g` containing `set`. Closes under
/// conjugation by the generators of `g` using membership tests only.
pub fn normal_closure<'a, I>(g: &PermGroup, set: I) -> Result<PermGroup>
where
    I: IntoIterator<Item = &'a Permutation>,
{
    let mut n = subgroup_generated(g.degree(), set)?;
    loop {
        let mut grew = false;
        let mut i = 0;
        while i < n.generators().len() {
            let h = n.generators()[i].clone();
            for x in g.generators() {
                let c = h.conjugate(x);
                if !n.contains(&c) {
                    let mut gens = n.generators().to_vec();
                    gens.push(c);
                    n = PermGroup::new(g.degree(), gens)?;
                    grew = true;
                }
            }
            i += 1;
        }
        if !grew {
            return Ok(n);
        }
    }
}

/// Conjugacy classes, ordered by their least element; the identity class
/// comes first.
pub fn conjugacy_classes(g: &PermGroup, cap: usize) -> Result<Vec<ElementSet>> {
    let all = g.elements(cap)?;
    let mut assigned: HashSet<Permutation> = HashSet::with_capacity(all.len());
    let mut classes = Vec::new();
    for x in all {
        if assigned.contains(x) {
            continue;
        }
        let single = ElementSet::from_sorted(g.degree(), vec![x.clone()]);
        let class = single.conjugation_closure(g);
        assigned.extend(class.iter().cloned());
        classes.push(class);
    }
    Ok(classes)
}

/// `C_G(a)` by element scan.
pub fn centralizer(g: &PermGroup, a: &Permutation, cap: usize) -> Result<PermGroup> {
    let all = g.elements(cap)?;
    let cent = all.filter(|x| x.mul(a) == a.mul(x));
    let gens = subgroup_generated(g.degree(), cent.iter())?;
    Ok(PermGroup::with_elements(g.degree(), gens.generators().to_vec(), cent))
}

/// `N_G(H) = { x ∈ G : H^x = H }` by element scan.
pub fn normalizer(g: &PermGroup, h: &PermGroup, cap: usize) -> Result<PermGroup> {
    let all = g.elements(cap)?;
    let norm = all.filter(|x| h.generators().iter().all(|y| h.contains(&y.conjugate(x))));
    let gens = subgroup_generated(g.degree(), norm.iter())?;
    Ok(PermGroup::with_elements(g.degree(), gens.generators().to_vec(), norm))
}

/// Elements of `g` normalizing every subgroup in `hs`.
pub fn common_normalizer(g: &PermGroup, hs: &[&PermGroup], cap: usize) -> Result<PermGroup> {
    let all = g.elements(cap)?;
    let norm = all.filter(|x| {
        hs.iter()
            .all(|h| h.generators().iter().all(|y| h.contains(&y.conjugate(x))))
    });
    let gens = subgroup_generated(g.degree(), norm.iter())?;
    Ok(PermGroup::with_elements(g.degree(), gens.generators().to_vec(), norm))
}

/// Distinct conjugates `H^x` for `x ∈ G`, in order of first appearance when
/// scanning `G` canonically.
pub fn conjugate_subgroups(g: &PermGroup, h: &PermGroup, cap: usize) -> Result<Vec<PermGroup>> {
    let all = g.elements(cap)?;
    let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
    let mut out = Vec::new();
    for x in all {
        let c = h.conjugate_by(x);
        let key = c.elements(cap)?.as_slice().to_vec();
        if seen.insert(key) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Whether two subgroups of `g` are conjugate in `g`; returns a conjugating
/// element `x` with `H^x = K`.
pub fn find_subgroup_conjugator(
    g: &PermGroup,
    h: &PermGroup,
    k: &PermGroup,
    cap: usize,
) -> Result<Option<Permutation>> {
    if h.order() != k.order() {
        return Ok(None);
    }
    for x in g.elements(cap)? {
        if h.generators().iter().all(|y| k.contains(&y.conjugate(x))) {
            return Ok(Some(x.clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, c).unwrap()
    }

    fn s4() -> PermGroup {
        PermGroup::new(4, vec![cyc(4, &[&[1, 2]]), cyc(4, &[&[1, 2, 3, 4]])]).unwrap()
    }

    fn s3() -> PermGroup {
        PermGroup::new(3, vec![cyc(3, &[&[1, 2]]), cyc(3, &[&[1, 2, 3]])]).unwrap()
    }

    #[test]
    fn trivial_group() {
        let t = PermGroup::trivial(5);
        assert_eq!(t.order(), 1);
        assert!(t.contains(&Permutation::identity(5)));
        assert_eq!(t.elements(10).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_cap() {
        let err = s4().elements(10).unwrap_err();
        assert_eq!(err, GroupError::OrderCapExceeded { order: 24, cap: 10 });
        assert_eq!(s3().elements(DEFAULT_CAP).unwrap().len(), 6);
    }

    #[test]
    fn generated_subgroups() {
        let empty: Vec<Permutation> = vec![];
        assert_eq!(subgroup_generated(4, &empty).unwrap().order(), 1);
        let c3 = subgroup_generated(4, &[cyc(4, &[&[1, 2, 3]])]).unwrap();
        assert_eq!(c3.order(), 3);
        let v4 = subgroup_generated(4, &[cyc(4, &[&[1, 2], &[3, 4]]), cyc(4, &[&[1, 3], &[2, 4]])])
            .unwrap();
        assert_eq!(v4.order(), 4);
        assert!(v4.is_normal_in(&s4()));
        let redundant = subgroup_generated(
            4,
            &[cyc(4, &[&[1, 2, 3]]), cyc(4, &[&[1, 3, 2]]), Permutation::identity(4)],
        )
        .unwrap();
        assert_eq!(redundant.generators().len(), 1);
    }

    #[test]
    fn s3_class_sizes() {
        let sizes: Vec<usize> = conjugacy_classes(&s3(), DEFAULT_CAP)
            .unwrap()
            .iter()
            .map(ElementSet::len)
            .collect();
        assert_eq!(sizes, vec![1, 3, 2]);
    }

    #[test]
    fn normalizers() {
        let g = s4();
        assert_eq!(normalizer(&g, &g, DEFAULT_CAP).unwrap(), g);
        let c3 = subgroup_generated(4, &[cyc(4, &[&[1, 2, 3]])]).unwrap();
        assert_eq!(normalizer(&g, &c3, DEFAULT_CAP).unwrap().order(), 6);
    }

    #[test]
    fn centralizer_of_transposition() {
        let c = centralizer(&s4(), &cyc(4, &[&[1, 2]]), DEFAULT_CAP).unwrap();
        assert_eq!(c.order(), 4);
    }

    #[test]
    fn normal_closure_of_three_cycle_is_a4() {
        let n = normal_closure(&s4(), &[cyc(4, &[&[1, 2, 3]])]).unwrap();
        assert_eq!(n.order(), 12);
        assert!(n.is_normal_in(&s4()));
    }

    #[test]
    fn intersections_and_products() {
        let g = s4();
        let a4 = normal_closure(&g, &[cyc(4, &[&[1, 2, 3]])]).unwrap();
        let d8 = subgroup_generated(4, &[cyc(4, &[&[1, 2, 3, 4]]), cyc(4, &[&[1, 3]])]).unwrap();
        assert_eq!(d8.order(), 8);
        assert_eq!(intersection(&a4, &d8, DEFAULT_CAP).unwrap().order(), 4);
        assert_eq!(product_order(&a4, &d8, DEFAULT_CAP).unwrap(), 24);
    }

    #[test]
    fn sylow_three_conjugates() {
        let c3 = subgroup_generated(4, &[cyc(4, &[&[1, 2, 3]])]).unwrap();
        let conj = conjugate_subgroups(&s4(), &c3, DEFAULT_CAP).unwrap();
        assert_eq!(conj.len(), 4);
        let other = subgroup_generated(4, &[cyc(4, &[&[2, 3, 4]])]).unwrap();
        let x = find_subgroup_conjugator(&s4(), &c3, &other, DEFAULT_CAP).unwrap().unwrap();
        assert_eq!(c3.conjugate_by(&x), other);
    }

    #[test]
    fn group_equality_is_set_equality() {
        let a = PermGroup::new(3, vec![cyc(3, &[&[1, 2, 3]])]).unwrap();
        let b = PermGroup::new(3, vec![cyc(3, &[&[1, 3, 2]])]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, s3());
    }
}
