//! Values of the iterated commutator words and the commutator-closed
//! generating sets built from them.
//!
//! `δ_0 = x_1`, `δ_k = [δ_{k-1}(x_1..x_{2^{k-1}}), δ_{k-1}(x_{2^{k-1}+1}..x_{2^k})]`;
//! `γ_1 = x_1`, `γ_k = [γ_{k-1}, x_k]`.

use std::collections::{BTreeMap, HashSet};

use rand::Rng;
use serde::Serialize;

use crate::arith::{is_power_of, is_prime_power, prime_divisors};
use crate::error::{GroupError, Result};
use crate::permcore::{subgroup_generated, ElementSet, PermGroup, Permutation};
use crate::structure::{
    derived_subgroup, intersect_basis, is_soluble, lower_fitting_series, sylow_basis, SylowBasis,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WordKind {
    Delta,
    Gamma,
}

impl std::fmt::Display for WordKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            WordKind::Delta => "delta",
            WordKind::Gamma => "gamma",
        })
    }
}

impl std::str::FromStr for WordKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "delta" => Ok(WordKind::Delta),
            "gamma" => Ok(WordKind::Gamma),
            other => Err(format!("unknown word kind {other:?} (expected delta or gamma)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueMethod {
    FullClosure,
    TupleBruteforce,
}

/// The set of values of `δ_k` or `γ_k` on a group.
#[derive(Clone, Debug)]
pub struct WordValueSet {
    pub kind: WordKind,
    pub k: usize,
    pub values: ElementSet,
    pub method: ValueMethod,
    /// First depth from which the value sets stop changing, if reached
    /// while computing up to `k`.
    pub stable_from: Option<usize>,
}

impl WordValueSet {
    /// `k` is past the depth at which the sets stabilized.
    pub fn saturated(&self) -> bool {
        self.stable_from.is_some_and(|s| self.k > s)
    }

    pub fn degree(&self) -> usize {
        self.values.degree()
    }
}

fn pairwise_commutators(left: &ElementSet, right: &ElementSet) -> ElementSet {
    let mut seen: HashSet<Permutation> = HashSet::new();
    for a in left {
        for b in right {
            seen.insert(a.comm(b));
        }
    }
    ElementSet::new(left.degree(), seen).expect("commutators preserve degree")
}

fn iterate_levels<F>(
    g: &PermGroup,
    kind: WordKind,
    start: usize,
    k: usize,
    first: ElementSet,
    mut step: F,
) -> WordValueSet
where
    F: FnMut(&ElementSet) -> ElementSet,
{
    let mut current = first;
    let mut stable_from = None;
    for depth in start..k {
        let next = step(&current);
        if next == current {
            stable_from = Some(depth);
            break;
        }
        current = next;
    }
    current.scan_flags(Some(g));
    WordValueSet {
        kind,
        k,
        values: current,
        method: ValueMethod::FullClosure,
        stable_from,
    }
}

/// `D_0 = G`, `D_j = { [a,b] : a, b ∈ D_{j-1} }`.
pub fn delta_values(g: &PermGroup, k: usize, cap: usize) -> Result<WordValueSet> {
    let all = g.elements(cap)?.clone();
    Ok(iterate_levels(g, WordKind::Delta, 0, k, all, |d| {
        pairwise_commutators(d, d)
    }))
}

/// `C_1 = G`, `C_j = { [c,g] : c ∈ C_{j-1}, g ∈ G }`.
pub fn gamma_values(g: &PermGroup, k: usize, cap: usize) -> Result<WordValueSet> {
    if k == 0 {
        return Err(GroupError::InvalidDepth(0));
    }
    let all = g.elements(cap)?.clone();
    let right = all.clone();
    Ok(iterate_levels(g, WordKind::Gamma, 1, k, all, |c| {
        pairwise_commutators(c, &right)
    }))
}

pub fn word_values(g: &PermGroup, k: usize, kind: WordKind, cap: usize) -> Result<WordValueSet> {
    match kind {
        WordKind::Delta => delta_values(g, k, cap),
        WordKind::Gamma => gamma_values(g, k, cap),
    }
}

/// `δ_k` evaluated on a tuple of length `2^k`.
pub fn delta_word(xs: &[Permutation]) -> Permutation {
    assert!(xs.len().is_power_of_two(), "δ_k takes 2^k arguments");
    if xs.len() == 1 {
        return xs[0].clone();
    }
    let (l, r) = xs.split_at(xs.len() / 2);
    delta_word(l).comm(&delta_word(r))
}

/// `γ_k = [x_1, ..., x_k]`, left-normed.
pub fn gamma_word(xs: &[Permutation]) -> Permutation {
    let (first, rest) = xs.split_first().expect("γ_k takes at least one argument");
    rest.iter().fold(first.clone(), |acc, x| acc.comm(x))
}

/// `δ_k` values by evaluating the word on every `2^k`-tuple of elements.
/// Exponential; fails with `OrderCapExceeded` when `|G|^(2^k)` exceeds
/// `max_tuples`.
pub fn delta_values_by_tuples(g: &PermGroup, k: usize, cap: usize, max_tuples: u64) -> Result<WordValueSet> {
    let all = g.elements(cap)?;
    let arity = 1usize << k;
    let count = (all.len() as u64).checked_pow(arity as u32).unwrap_or(u64::MAX);
    if count > max_tuples {
        return Err(GroupError::OrderCapExceeded {
            order: count,
            cap: max_tuples as usize,
        });
    }
    let elems = all.as_slice();
    let mut idx = vec![0usize; arity];
    let mut seen = HashSet::new();
    let mut tuple: Vec<Permutation> = vec![elems[0].clone(); arity];
    loop {
        for (slot, &i) in tuple.iter_mut().zip(&idx) {
            *slot = elems[i].clone();
        }
        seen.insert(delta_word(&tuple));
        let mut pos = 0;
        loop {
            if pos == arity {
                let mut values = ElementSet::new(g.degree(), seen)?;
                values.scan_flags(Some(g));
                return Ok(WordValueSet {
                    kind: WordKind::Delta,
                    k,
                    values,
                    method: ValueMethod::TupleBruteforce,
                    stable_from: None,
                });
            }
            idx[pos] += 1;
            if idx[pos] < elems.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// `⟨values⟩`.
pub fn verbal_subgroup(values: &WordValueSet) -> Result<PermGroup> {
    subgroup_generated(values.degree(), values.values.iter())
}

/// Smallest commutator-closed superset of `x`.
pub fn commutator_closure(x: &ElementSet) -> ElementSet {
    let mut members: HashSet<Permutation> = x.iter().cloned().collect();
    let mut list: Vec<Permutation> = x.iter().cloned().collect();
    let mut i = 0;
    while i < list.len() {
        for j in 0..=i {
            for c in [list[i].comm(&list[j]), list[j].comm(&list[i])] {
                if members.insert(c.clone()) {
                    list.push(c);
                }
            }
        }
        i += 1;
    }
    ElementSet::new(x.degree(), list).expect("commutators preserve degree")
}

/// Random elements of `g` drawn until they generate it, then closed under
/// commutators.
pub fn random_closed_generating_set<R: Rng>(g: &PermGroup, rng: &mut R, cap: usize) -> Result<ElementSet> {
    let all = g.elements(cap)?.as_slice();
    let mut picked: Vec<Permutation> = Vec::new();
    let mut span = PermGroup::trivial(g.degree());
    let extra = rng.gen_range(0..3);
    while span.order() < g.order() {
        let x = all[rng.gen_range(0..all.len())].clone();
        picked.push(x);
        span = subgroup_generated(g.degree(), picked.iter())?;
    }
    for _ in 0..extra {
        picked.push(all[rng.gen_range(0..all.len())].clone());
    }
    Ok(commutator_closure(&ElementSet::new(g.degree(), picked)?))
}

/// `H = ⟨[x_1, x_2] : x_i ∈ X⟩` for a commutator-closed generating set `X`
/// of `G`; checked to equal `G'`.
pub fn derived_from_closed_set(g: &PermGroup, x: &ElementSet) -> Result<PermGroup> {
    if !x.is_commutator_closed() {
        return Err(GroupError::NotCommutatorClosed);
    }
    if subgroup_generated(g.degree(), x.iter())? != *g {
        return Err(GroupError::NotGenerating);
    }
    let comms = pairwise_commutators(x, x);
    let h = subgroup_generated(g.degree(), comms.iter())?;
    if h != derived_subgroup(g)? {
        return Err(GroupError::InvariantViolated(
            "commutators of a closed generating set miss part of G'".into(),
        ));
    }
    Ok(h)
}

/// `X^(i)` and its prime-power parts `X_p^(i)`.
#[derive(Clone, Debug)]
pub struct DepthSets {
    pub depth: usize,
    pub values: ElementSet,
    pub by_prime: BTreeMap<u64, ElementSet>,
}

/// Record of the commutator-closed generating set construction.
#[derive(Clone, Debug)]
pub struct XcloTrace {
    pub seed: u64,
    pub basis: SylowBasis,
    /// `K_1 = G ⊇ K_2 ⊇ … ⊇ K_h`, each `K_{i+1} = γ∞(K_i)`.
    pub chain: Vec<PermGroup>,
    /// `T_i`, the basis normalizer of `K_i` for the intersected basis.
    pub normalizers: Vec<PermGroup>,
    /// Prime-power-order elements of each `T_i` (identity included).
    pub level_sets: Vec<ElementSet>,
    /// `X = ⋃ X_i`.
    pub x: ElementSet,
    /// `X^(0) = X`, `X^(i) = { [a,b] : a,b ∈ X^(i-1) }`, down to `{1}`.
    pub per_depth: Vec<DepthSets>,
}

/// Serializable digest of an [`XcloTrace`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XcloSummary {
    pub seed: u64,
    pub fitting_height: usize,
    pub chain_orders: Vec<u64>,
    pub normalizer_orders: Vec<u64>,
    pub level_set_sizes: Vec<usize>,
    pub x_size: usize,
    pub depth_sizes: Vec<usize>,
}

impl XcloTrace {
    pub fn fitting_height(&self) -> usize {
        self.chain.len()
    }

    pub fn depth(&self, i: usize) -> &DepthSets {
        &self.per_depth[i.min(self.per_depth.len() - 1)]
    }

    pub fn summary(&self) -> XcloSummary {
        XcloSummary {
            seed: self.seed,
            fitting_height: self.fitting_height(),
            chain_orders: self.chain.iter().map(PermGroup::order).collect(),
            normalizer_orders: self.normalizers.iter().map(PermGroup::order).collect(),
            level_set_sizes: self.level_sets.iter().map(ElementSet::len).collect(),
            x_size: self.x.len(),
            depth_sizes: self.per_depth.iter().map(|d| d.values.len()).collect(),
        }
    }
}

fn prime_power_elements(t: &PermGroup, cap: usize) -> Result<ElementSet> {
    Ok(t.elements(cap)?.filter(|x| is_prime_power(x.order())))
}

/// Size of the product set `T_1 T_2 ⋯ T_h`, by explicit multiplication.
pub fn product_set_size(degree: usize, factors: &[PermGroup], cap: usize) -> Result<usize> {
    let mut set: HashSet<Permutation> = HashSet::new();
    set.insert(Permutation::identity(degree));
    for t in factors {
        let elems = t.elements(cap)?;
        let mut next = HashSet::with_capacity(set.len() * elems.len());
        for s in &set {
            for x in elems {
                next.insert(s.mul(x));
            }
        }
        set = next;
    }
    Ok(set.len())
}

/// Builds the commutator-closed generating set of prime-power-order
/// elements from the basis normalizers of the lower Fitting chain, and
/// checks every property it is supposed to have.
pub fn construct_xclo(g: &PermGroup, seed: u64, cap: usize) -> Result<XcloTrace> {
    if !is_soluble(g)? {
        return Err(GroupError::NotSoluble);
    }
    let fitting = lower_fitting_series(g)?;
    let chain: Vec<PermGroup> = fitting
        .terms
        .iter()
        .filter(|k| k.order() > 1)
        .cloned()
        .collect();
    let basis = sylow_basis(g, seed, cap)?;
    let mut normalizers = Vec::with_capacity(chain.len());
    let mut level_sets = Vec::with_capacity(chain.len());
    for k in &chain {
        let t = intersect_basis(&basis, k, cap)?.normalizer;
        level_sets.push(prime_power_elements(&t, cap)?);
        normalizers.push(t);
    }
    let mut x = ElementSet::new(g.degree(), [g.identity()])?;
    for xi in &level_sets {
        x = x.union(xi);
    }
    x.scan_flags(Some(g));

    let fail = |msg: &str| Err(GroupError::InvariantViolated(msg.to_string()));
    if subgroup_generated(g.degree(), x.iter())? != *g {
        return fail("X does not generate G");
    }
    if !x.flags().comm_closed {
        return fail("X is not commutator-closed");
    }
    if !x.iter().all(|e| is_prime_power(e.order())) {
        return fail("X has an element whose order is not a prime power");
    }
    if product_set_size(g.degree(), &normalizers, cap)? as u64 != g.order() {
        return fail("T_1 T_2 ... T_h is not all of G");
    }
    for (j, tj) in normalizers.iter().enumerate() {
        for tk in &normalizers[j..] {
            if !tk.is_normalized_by(tj) {
                return fail("T_j does not normalize T_k for some j <= k");
            }
        }
    }

    let primes = prime_divisors(g.order());
    let split = |values: &ElementSet| -> BTreeMap<u64, ElementSet> {
        primes
            .iter()
            .map(|&p| (p, values.filter(|e| is_power_of(e.order(), p))))
            .collect()
    };
    let mut per_depth = vec![DepthSets {
        depth: 0,
        by_prime: split(&x),
        values: x.clone(),
    }];
    loop {
        let last = &per_depth.last().unwrap().values;
        if last.len() <= 1 {
            break;
        }
        let next = pairwise_commutators(last, last);
        if next == *last {
            break;
        }
        if !next.is_subset(&x) {
            return fail("X^(i) escaped X");
        }
        per_depth.push(DepthSets {
            depth: per_depth.len(),
            by_prime: split(&next),
            values: next,
        });
    }

    Ok(XcloTrace {
        seed,
        basis,
        chain,
        normalizers,
        level_sets,
        x,
        per_depth,
    })
}
