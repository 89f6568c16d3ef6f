//! Extensional checks of the supporting lemmas on concrete groups.
//!
//! Every check either returns a [`LemmaReport`] (with `holds = false` and a
//! replayable witness when the lemma's conclusion fails) or
//! `GroupError::HypothesisNotSatisfied` when the instance is inadmissible.
//! Since the lemmas are theorems, `holds = false` on an admissible instance
//! means a defect in this crate.

use std::collections::{BTreeMap, HashSet};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::arith::{coprime, is_power_of, is_prime, prime_divisors};
use crate::criterion::coprime_product_criterion;
use crate::error::{GroupError, Result};
use crate::permcore::{
    conjugacy_classes, conjugate_subgroups, intersection, quotient, subgroup_generated,
    ElementSet, PermGroup, Permutation,
};
use crate::structure::{
    derived_series, fitting_subgroup, is_metanilpotent, is_soluble, normal_subgroups,
    p_prime_core, sylow_subgroup,
};
use crate::words::{delta_values, WordKind, XcloTrace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    /// `XN ∩ PN = (X ∩ P)N`.
    Intersection,
    /// `P̄ ∩ L̄ = ⟨P̄ ∩ X̄⟩ ⟹ P ∩ L = ⟨P ∩ X, P ∩ N⟩`.
    From,
    /// `P ∩ G^(i) = ⟨δ_i-values in P⟩`.
    Foca,
    /// `[O_{p'}(F(G)), x] = 1 ⟹ x ∈ F(G)` for metanilpotent `G`.
    Meta,
    /// `(|N|, |x|) = 1 ⟹ [N, x] = 1` for `δ_k`-values `x` normalizing `N`.
    Bbb,
}

impl std::fmt::Display for LemmaId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LemmaId::Intersection => "intersection",
            LemmaId::From => "from",
            LemmaId::Foca => "foca",
            LemmaId::Meta => "meta",
            LemmaId::Bbb => "bbb",
        })
    }
}

/// Where the set `X` of an instance came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum XSource {
    /// `p`-elements among the `δ_i`-values.
    DeltaValues,
    /// `(X_p^(i))^G` from the commutator-closed generating set.
    XcloSets,
    /// One conjugacy class of `p`-elements.
    SingleClass,
    /// Supplied by the caller.
    Given,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LemmaParams {
    pub p: Option<u64>,
    pub k: Option<usize>,
    pub n_order: Option<u64>,
    pub l_order: Option<u64>,
    pub x_size: Option<usize>,
    pub x_source: Option<XSource>,
}

/// Counter-evidence, stated in terms of raw permutations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "lemma", rename_all = "snake_case")]
pub enum LemmaWitness {
    /// `element` lies in exactly one of `XN ∩ PN` and `(X ∩ P)N`.
    Intersection { element: Permutation },
    /// `element` lies in exactly one of `P ∩ L` and `⟨P ∩ X, P ∩ N⟩`.
    From { element: Permutation },
    /// `element` lies in `P ∩ G^(i)` but not in `⟨δ_i-values in P⟩`.
    Foca { element: Permutation },
    /// A `p`-element centralizing `O_{p'}(F(G))` outside `F(G)`.
    Meta { x: Permutation },
    /// `y ∈ N = ⟨n_generators⟩` with `[y, x] ≠ 1` although `N^x = N` and
    /// `(|N|, |x|) = 1`.
    Bbb {
        x: Permutation,
        y: Permutation,
        n_generators: Vec<Permutation>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub params: LemmaParams,
    pub holds: bool,
    pub witness: Option<LemmaWitness>,
    /// Elementary cases examined (elements, pairs or subgroups, per lemma).
    pub cases: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

fn report(
    lemma: LemmaId,
    params: LemmaParams,
    witness: Option<LemmaWitness>,
    cases: u64,
    started: Instant,
) -> LemmaReport {
    LemmaReport {
        lemma,
        params,
        holds: witness.is_none(),
        witness,
        cases,
        elapsed: started.elapsed(),
    }
}

fn hypothesis(msg: impl Into<String>) -> GroupError {
    GroupError::HypothesisNotSatisfied(msg.into())
}

fn require_p_elements(x: &ElementSet, p: u64) -> Result<()> {
    if x.iter().all(|e| is_power_of(e.order(), p)) {
        Ok(())
    } else {
        Err(GroupError::NotPElementSet { p })
    }
}

fn require_normal_subset(g: &PermGroup, x: &ElementSet) -> Result<()> {
    if x.iter().all(|e| g.contains(e)) && x.is_conjugation_closed(g) {
        Ok(())
    } else {
        Err(hypothesis("X is not a normal subset of G"))
    }
}

/// `{ s·m : s ∈ S, m ∈ N }`.
fn times_subgroup<'a, I>(set: I, n: &[Permutation]) -> HashSet<Permutation>
where
    I: IntoIterator<Item = &'a Permutation>,
{
    let mut out = HashSet::new();
    for s in set {
        for m in n {
            out.insert(s.mul(m));
        }
    }
    out
}

fn least<'a, I: IntoIterator<Item = &'a Permutation>>(it: I) -> Option<Permutation> {
    it.into_iter().min().cloned()
}

/// Core of the intersection lemma with `P` supplied: returns the least
/// element on which the two sides disagree.
pub(crate) fn intersection_equation(
    n: &PermGroup,
    sylow: &PermGroup,
    x: &ElementSet,
    cap: usize,
) -> Result<(Option<Permutation>, u64)> {
    let n_elems = n.elements(cap)?.as_slice();
    let p_elems = sylow.elements(cap)?.as_slice();
    let xn = times_subgroup(x.iter(), n_elems);
    let pn = times_subgroup(p_elems, n_elems);
    let lhs: HashSet<&Permutation> = xn.iter().filter(|e| pn.contains(*e)).collect();
    let x_in_p = x.intersect_group(sylow);
    let rhs = times_subgroup(x_in_p.iter(), n_elems);
    let diff = lhs
        .iter()
        .copied()
        .filter(|e| !rhs.contains(*e))
        .chain(rhs.iter().filter(|e| !lhs.contains(e)));
    Ok((least(diff), (lhs.len() + rhs.len()) as u64))
}

/// `XN ∩ PN = (X ∩ P)N` for `N ⊴ G`, `P` the Sylow `p`-subgroup and `X` a
/// normal subset of `p`-elements.
pub fn check_intersection_lemma(
    g: &PermGroup,
    n: &PermGroup,
    p: u64,
    x: &ElementSet,
    cap: usize,
) -> Result<LemmaReport> {
    let started = Instant::now();
    if !n.is_normal_in(g) {
        return Err(GroupError::NotNormal);
    }
    require_p_elements(x, p)?;
    require_normal_subset(g, x)?;
    let sylow = sylow_subgroup(g, p, cap)?;
    let (diff, cases) = intersection_equation(n, &sylow, x, cap)?;
    Ok(report(
        LemmaId::Intersection,
        LemmaParams {
            p: Some(p),
            n_order: Some(n.order()),
            x_size: Some(x.len()),
            ..Default::default()
        },
        diff.map(|element| LemmaWitness::Intersection { element }),
        cases,
        started,
    ))
}

/// `P ∩ L = ⟨P ∩ X, P ∩ N⟩` given `N ≤ L` normal and the same equation one
/// level up in `G/N`. A failed quotient hypothesis is reported as
/// `HypothesisNotSatisfied`.
pub fn check_from_lemma(
    g: &PermGroup,
    n: &PermGroup,
    l: &PermGroup,
    p: u64,
    x: &ElementSet,
    cap: usize,
) -> Result<LemmaReport> {
    let started = Instant::now();
    if !n.is_normal_in(g) || !l.is_normal_in(g) {
        return Err(GroupError::NotNormal);
    }
    if !n.is_subgroup_of(l) {
        return Err(hypothesis("N is not contained in L"));
    }
    require_p_elements(x, p)?;
    require_normal_subset(g, x)?;
    let sylow = sylow_subgroup(g, p, cap)?;

    let q = quotient(g, n, cap)?;
    let p_bar = q.image(&sylow)?;
    let l_bar = q.image(l)?;
    let x_bar = q.image_set(x)?;
    let lhs_bar = intersection(&p_bar, &l_bar, cap)?;
    let rhs_bar = subgroup_generated(q.index(), x_bar.intersect_group(&p_bar).iter())?;
    if lhs_bar != rhs_bar {
        return Err(hypothesis("quotient condition fails in G/N"));
    }

    let (diff, cases) = from_equation(&sylow, n, l, x, cap)?;
    Ok(report(
        LemmaId::From,
        LemmaParams {
            p: Some(p),
            n_order: Some(n.order()),
            l_order: Some(l.order()),
            x_size: Some(x.len()),
            ..Default::default()
        },
        diff.map(|element| LemmaWitness::From { element }),
        cases,
        started,
    ))
}

fn from_equation(
    sylow: &PermGroup,
    n: &PermGroup,
    l: &PermGroup,
    x: &ElementSet,
    cap: usize,
) -> Result<(Option<Permutation>, u64)> {
    let lhs = intersection(sylow, l, cap)?;
    let gens: Vec<Permutation> = x
        .intersect_group(sylow)
        .iter()
        .cloned()
        .chain(intersection(sylow, n, cap)?.generators().iter().cloned())
        .collect();
    let rhs = subgroup_generated(sylow.degree(), gens.iter())?;
    Ok((group_difference(&lhs, &rhs, cap)?, lhs.order()))
}

/// Least element in exactly one of two groups.
fn group_difference(a: &PermGroup, b: &PermGroup, cap: usize) -> Result<Option<Permutation>> {
    if a == b {
        return Ok(None);
    }
    let ea = a.elements(cap)?;
    let eb = b.elements(cap)?;
    Ok(least(
        ea.iter()
            .filter(|e| !b.contains(e))
            .chain(eb.iter().filter(|e| !a.contains(e))),
    ))
}

/// `⟨δ_i-values in P⟩ = P ∩ G^(i)`.
pub fn check_foca(g: &PermGroup, i: usize, p: u64, cap: usize) -> Result<LemmaReport> {
    let started = Instant::now();
    if !is_soluble(g)? {
        return Err(GroupError::NotSoluble);
    }
    let sylow = sylow_subgroup(g, p, cap)?;
    let values = delta_values(g, i, cap)?;
    let generated = subgroup_generated(g.degree(), values.values.intersect_group(&sylow).iter())?;
    let meet = intersection(&sylow, derived_series(g)?.term(i), cap)?;
    Ok(report(
        LemmaId::Foca,
        LemmaParams {
            p: Some(p),
            k: Some(i),
            x_size: Some(values.values.len()),
            x_source: Some(XSource::DeltaValues),
            ..Default::default()
        },
        group_difference(&meet, &generated, cap)?
            .map(|element| LemmaWitness::Foca { element }),
        meet.order(),
        started,
    ))
}

/// The generation statements inside the focal argument, on the sets of a
/// commutator-closed generating set: `G^(i) = ⟨X^(i)⟩` and
/// `P ∩ G^(i) = ⟨P ∩ Y_i⟩` with `Y_i = (X_p^(i))^G`.
pub fn check_foca_xclo(
    g: &PermGroup,
    trace: &XcloTrace,
    i: usize,
    p: u64,
    cap: usize,
) -> Result<LemmaReport> {
    let started = Instant::now();
    let derived = derived_series(g)?;
    let term = derived.term(i);
    let depth = trace.depth(i);
    let params = LemmaParams {
        p: Some(p),
        k: Some(i),
        x_size: Some(depth.values.len()),
        x_source: Some(XSource::XcloSets),
        ..Default::default()
    };
    let spanned = subgroup_generated(g.degree(), depth.values.iter())?;
    if let Some(element) = group_difference(term, &spanned, cap)? {
        return Ok(report(
            LemmaId::Foca,
            params,
            Some(LemmaWitness::Foca { element }),
            0,
            started,
        ));
    }
    let sylow = sylow_subgroup(g, p, cap)?;
    let xp = depth
        .by_prime
        .get(&p)
        .cloned()
        .unwrap_or_else(|| ElementSet::empty(g.degree()));
    let y = xp.conjugation_closure(g);
    let generated = subgroup_generated(g.degree(), y.intersect_group(&sylow).iter())?;
    let meet = intersection(&sylow, term, cap)?;
    Ok(report(
        LemmaId::Foca,
        params,
        group_difference(&meet, &generated, cap)?
            .map(|element| LemmaWitness::Foca { element }),
        meet.order(),
        started,
    ))
}

fn meta_witness(
    g: &PermGroup,
    p: u64,
    cap: usize,
) -> Result<(Option<Permutation>, u64)> {
    let fit = fitting_subgroup(g, cap)?;
    let opp = p_prime_core(&fit, p, cap)?;
    let mut cases = 0;
    for x in g.elements(cap)? {
        if !is_power_of(x.order(), p) {
            continue;
        }
        if opp.generators().iter().all(|o| o.comm(x).is_identity()) {
            cases += 1;
            if !fit.contains(x) {
                return Ok((Some(x.clone()), cases));
            }
        }
    }
    Ok((None, cases))
}

/// For metanilpotent `G`: every `p`-element centralizing `O_{p'}(F(G))`
/// lies in `F(G)`.
pub fn check_meta(g: &PermGroup, p: u64, cap: usize) -> Result<LemmaReport> {
    let started = Instant::now();
    if !is_prime(p) || g.order() % p != 0 {
        return Err(GroupError::NotPrimeDivisor { p, order: g.order() });
    }
    if !is_metanilpotent(g)? {
        return Err(GroupError::NotMetanilpotent);
    }
    let (x, cases) = meta_witness(g, p, cap)?;
    Ok(report(
        LemmaId::Meta,
        LemmaParams {
            p: Some(p),
            ..Default::default()
        },
        x.map(|x| LemmaWitness::Meta { x }),
        cases,
        started,
    ))
}

/// Subgroups tried against each `δ_k`-value: all cyclic subgroups, all
/// Sylow subgroups of all normal subgroups, and `O_{p'}(F(G))` for every
/// prime `p` dividing `|G|`. Deduplicated, in a deterministic order.
pub fn bbb_family(g: &PermGroup, cap: usize) -> Result<Vec<PermGroup>> {
    let mut by_key: BTreeMap<Vec<Permutation>, PermGroup> = BTreeMap::new();
    let mut add = |h: PermGroup| -> Result<()> {
        let key = h.elements(cap)?.as_slice().to_vec();
        by_key.entry(key).or_insert(h);
        Ok(())
    };
    for y in g.elements(cap)? {
        add(PermGroup::new(g.degree(), vec![y.clone()])?)?;
    }
    for m in normal_subgroups(g, cap)? {
        for p in prime_divisors(m.order()) {
            let s = sylow_subgroup(&m, p, cap)?;
            for c in conjugate_subgroups(&m, &s, cap)? {
                add(c)?;
            }
        }
    }
    let fit = fitting_subgroup(g, cap)?;
    for p in prime_divisors(g.order()) {
        add(p_prime_core(&fit, p, cap)?)?;
    }
    Ok(by_key.into_values().collect())
}

/// Outcome of the literal replay of the proof step for one `(y, x)`.
fn bbb_step_ok(g: &PermGroup, values: &ElementSet, x: &Permutation, y: &Permutation, cap: usize) -> Result<bool> {
    let yxx = y.comm(x).comm(x);
    let x_inv = x.inverse();
    // [y,x,x] = [x^{-y}, x]^x is a δ_k-value
    let alt = x_inv.conjugate(y).comm(x).conjugate(x);
    if alt != yxx || !values.contains(&yxx) {
        return Ok(false);
    }
    // [y,x,x]x⁻¹ = [x,y]x⁻¹[y,x], a conjugate of x⁻¹
    let lhs = yxx.mul(&x_inv);
    if lhs != x.comm(y).mul(&x_inv).mul(&y.comm(x)) {
        return Ok(false);
    }
    if find_element_conjugator(g, &x_inv, &lhs, Some(&y.comm(x)), cap)?.is_none() {
        return Ok(false);
    }
    // both factors have coprime orders, so |[y,x,x]x⁻¹| = |x| forces [y,x,x] = 1
    Ok(yxx.is_identity())
}

/// Some `c ∈ G` with `a^c = b`, trying `hint` before scanning `G`.
pub fn find_element_conjugator(
    g: &PermGroup,
    a: &Permutation,
    b: &Permutation,
    hint: Option<&Permutation>,
    cap: usize,
) -> Result<Option<Permutation>> {
    if let Some(c) = hint {
        if g.contains(c) && a.conjugate(c) == *b {
            return Ok(Some(c.clone()));
        }
    }
    if a.order() != b.order() {
        return Ok(None);
    }
    Ok(g.elements(cap)?.iter().find(|c| a.conjugate(c) == *b).cloned())
}

/// For `G` satisfying the `δ_k` coprime-product condition: every `δ_k`-value
/// `x` and every `x`-invariant `N` of coprime order from [`bbb_family`]
/// satisfy `[N, x] = 1`.
pub fn check_bbb(g: &PermGroup, k: usize, cap: usize) -> Result<LemmaReport> {
    let started = Instant::now();
    if !coprime_product_criterion(g, k, WordKind::Delta, cap)?.holds {
        return Err(hypothesis(format!(
            "coprime product condition fails for delta_{k}-values"
        )));
    }
    let values = delta_values(g, k, cap)?.values;
    let family = bbb_family(g, cap)?;
    let mut cases = 0u64;
    for x in values.iter().filter(|x| !x.is_identity()) {
        let ox = x.order();
        for n in &family {
            if !coprime(n.order(), ox) || n.order() == 1 {
                continue;
            }
            if !n.generators().iter().all(|h| n.contains(&h.conjugate(x))) {
                continue;
            }
            cases += 1;
            for y in n.elements(cap)? {
                let step = bbb_step_ok(g, &values, x, y, cap)?;
                if !step || !y.comm(x).is_identity() {
                    let w = LemmaWitness::Bbb {
                        x: x.clone(),
                        y: y.clone(),
                        n_generators: n.generators().to_vec(),
                    };
                    return Ok(report(
                        LemmaId::Bbb,
                        LemmaParams {
                            k: Some(k),
                            n_order: Some(n.order()),
                            ..Default::default()
                        },
                        Some(w),
                        cases,
                        started,
                    ));
                }
            }
        }
    }
    Ok(report(
        LemmaId::Bbb,
        LemmaParams {
            k: Some(k),
            x_size: Some(values.len()),
            ..Default::default()
        },
        None,
        cases,
        started,
    ))
}

/// Above this many tuples, witness replay falls back to the closure
/// computation of `δ_k`-values.
const REPLAY_TUPLE_BUDGET: u64 = 1_000_000;

/// Inputs of one lemma check, used to replay witnesses.
#[derive(Clone, Debug)]
pub enum LemmaInstance {
    Intersection { n: PermGroup, p: u64, x: ElementSet },
    From { n: PermGroup, l: PermGroup, p: u64, x: ElementSet },
    Foca { i: usize, p: u64 },
    Meta { p: u64 },
    Bbb { k: usize },
}

fn fresh(h: &PermGroup) -> PermGroup {
    PermGroup::new(h.degree(), h.generators().to_vec()).expect("valid group")
}

/// `e ∈ S·N`, by trying every `s ∈ S`.
fn in_coset_union<'a, I>(e: &Permutation, set: I, n: &PermGroup) -> bool
where
    I: IntoIterator<Item = &'a Permutation>,
{
    set.into_iter().any(|s| n.contains(&s.inverse().mul(e)))
}

/// Re-verifies a witness from raw permutations, rebuilding every group from
/// its generators so no cached state is reused. `true` means the witness is
/// genuine counter-evidence for the instance.
pub fn replay_witness(
    g: &PermGroup,
    instance: &LemmaInstance,
    witness: &LemmaWitness,
    cap: usize,
) -> Result<bool> {
    let g = fresh(g);
    match (instance, witness) {
        (LemmaInstance::Intersection { n, p, x }, LemmaWitness::Intersection { element }) => {
            let n = fresh(n);
            let sylow = sylow_subgroup(&g, *p, cap)?;
            let sylow_elems = sylow.elements(cap)?.clone();
            let left = in_coset_union(element, x, &n) && in_coset_union(element, &sylow_elems, &n);
            let x_in_p: Vec<&Permutation> = x.iter().filter(|e| sylow.contains(e)).collect();
            let right = in_coset_union(element, x_in_p, &n);
            Ok(left != right)
        }
        (LemmaInstance::From { n, l, p, x }, LemmaWitness::From { element }) => {
            let (n, l) = (fresh(n), fresh(l));
            let sylow = sylow_subgroup(&g, *p, cap)?;
            let left = sylow.contains(element) && l.contains(element);
            let mut gens: Vec<Permutation> =
                x.iter().filter(|e| sylow.contains(e)).cloned().collect();
            gens.extend(
                sylow
                    .elements(cap)?
                    .iter()
                    .filter(|e| n.contains(e))
                    .cloned(),
            );
            let right = subgroup_generated(g.degree(), gens.iter())?.contains(element);
            Ok(left != right)
        }
        (LemmaInstance::Foca { i, p }, LemmaWitness::Foca { element }) => {
            let sylow = sylow_subgroup(&g, *p, cap)?;
            let term = derived_series(&g)?.term(*i).clone();
            let left = sylow.contains(element) && term.contains(element);
            let values = delta_values(&g, *i, cap)?.values;
            let right = subgroup_generated(g.degree(), values.intersect_group(&sylow).iter())?
                .contains(element);
            Ok(left != right)
        }
        (LemmaInstance::Meta { p }, LemmaWitness::Meta { x }) => {
            let fit = fitting_subgroup(&g, cap)?;
            let opp = p_prime_core(&fit, *p, cap)?;
            let centralizes = opp
                .elements(cap)?
                .iter()
                .all(|o| o.mul(x) == x.mul(o));
            Ok(g.contains(x) && is_power_of(x.order(), *p) && centralizes && !fit.contains(x))
        }
        (LemmaInstance::Bbb { k }, LemmaWitness::Bbb { x, y, n_generators }) => {
            let n = PermGroup::new(g.degree(), n_generators.clone())?;
            let values = crate::words::delta_values_by_tuples(&g, *k, cap, REPLAY_TUPLE_BUDGET)
                .or_else(|_| delta_values(&g, *k, cap))?
                .values;
            let invariant = n_generators.iter().all(|h| n.contains(&h.conjugate(x)));
            Ok(values.contains(x)
                && n.is_subgroup_of(&g)
                && n.contains(y)
                && invariant
                && coprime(n.order(), x.order())
                && !y.comm(x).is_identity())
        }
        _ => Ok(false),
    }
}

/// Generated inputs for the intersection and from lemmas: normal subsets
/// of `p`-elements drawn from `δ_i`-values (`i ≤ max_depth`), from the
/// commutator-closed generating set when one is supplied, and from single
/// conjugacy classes of `p`-elements.
pub fn p_element_sets(
    g: &PermGroup,
    p: u64,
    max_depth: usize,
    trace: Option<&XcloTrace>,
    cap: usize,
) -> Result<Vec<(XSource, ElementSet)>> {
    let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
    let mut out = Vec::new();
    let mut push = |src: XSource, set: ElementSet, out: &mut Vec<(XSource, ElementSet)>| {
        if seen.insert(set.as_slice().to_vec()) {
            out.push((src, set));
        }
    };
    for i in 0..=max_depth {
        let values = delta_values(g, i, cap)?.values;
        push(XSource::DeltaValues, values.filter(|e| is_power_of(e.order(), p)), &mut out);
    }
    if let Some(trace) = trace {
        for depth in &trace.per_depth {
            if let Some(xp) = depth.by_prime.get(&p) {
                push(XSource::XcloSets, xp.conjugation_closure(g), &mut out);
            }
        }
    }
    for class in conjugacy_classes(g, cap)? {
        let rep = &class.as_slice()[0];
        if !rep.is_identity() && is_power_of(rep.order(), p) {
            push(XSource::SingleClass, class, &mut out);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::{normal_closure, DEFAULT_CAP};
    use crate::words::construct_xclo;

    fn cyc(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, c).unwrap()
    }

    fn group(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|c| cyc(n, c)).collect()).unwrap()
    }

    fn s3() -> PermGroup {
        group(3, &[&[&[1, 2]], &[&[1, 2, 3]]])
    }

    fn s4() -> PermGroup {
        group(4, &[&[&[1, 2]], &[&[1, 2, 3, 4]]])
    }

    fn v4_in(g: &PermGroup) -> PermGroup {
        normal_closure(g, &[cyc(4, &[&[1, 2], &[3, 4]])]).unwrap()
    }

    fn a4_in(g: &PermGroup) -> PermGroup {
        normal_closure(g, &[cyc(4, &[&[1, 2, 3]])]).unwrap()
    }

    fn two_elements_of_delta1(g: &PermGroup) -> ElementSet {
        delta_values(g, 1, DEFAULT_CAP)
            .unwrap()
            .values
            .filter(|e| is_power_of(e.order(), 2))
    }

    #[test]
    fn intersection_trivial_n() {
        let g = s4();
        let x = two_elements_of_delta1(&g);
        let r = check_intersection_lemma(&g, &PermGroup::trivial(4), 2, &x, DEFAULT_CAP).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn intersection_s4_mod_v4() {
        let g = s4();
        let x = two_elements_of_delta1(&g);
        let r = check_intersection_lemma(&g, &v4_in(&g), 2, &x, DEFAULT_CAP).unwrap();
        assert!(r.holds, "{r:?}");
    }

    #[test]
    fn intersection_s4_mod_a4_all_classes() {
        let g = s4();
        let a4 = a4_in(&g);
        let sets = p_element_sets(&g, 2, 0, None, DEFAULT_CAP).unwrap();
        assert!(sets.len() >= 3);
        for (_, x) in sets {
            assert!(check_intersection_lemma(&g, &a4, 2, &x, DEFAULT_CAP).unwrap().holds);
        }
    }

    #[test]
    fn intersection_rejects_bad_inputs() {
        let g = s4();
        let c3 = PermGroup::new(4, vec![cyc(4, &[&[1, 2, 3]])]).unwrap();
        let x = two_elements_of_delta1(&g);
        assert_eq!(
            check_intersection_lemma(&g, &c3, 2, &x, DEFAULT_CAP).unwrap_err(),
            GroupError::NotNormal
        );
        let threes = ElementSet::new(4, [cyc(4, &[&[1, 2, 3]])]).unwrap();
        assert_eq!(
            check_intersection_lemma(&g, &PermGroup::trivial(4), 2, &threes, DEFAULT_CAP).unwrap_err(),
            GroupError::NotPElementSet { p: 2 }
        );
        let lone = ElementSet::new(4, [cyc(4, &[&[1, 2]])]).unwrap();
        assert!(matches!(
            check_intersection_lemma(&g, &PermGroup::trivial(4), 2, &lone, DEFAULT_CAP),
            Err(GroupError::HypothesisNotSatisfied(_))
        ));
    }

    #[test]
    fn non_normal_subset_breaks_the_equation_and_replays() {
        // X = {(1 2)} is not closed under conjugation in S3, so the
        // equation may fail; the witness must replay.
        let g = s3();
        let a3 = normal_closure(&g, &[cyc(3, &[&[1, 2, 3]])]).unwrap();
        let sylow = sylow_subgroup(&g, 2, DEFAULT_CAP).unwrap();
        let x = ElementSet::new(3, [cyc(3, &[&[1, 2]])]).unwrap();
        let x = if sylow.contains(&x.as_slice()[0]) {
            ElementSet::new(3, [cyc(3, &[&[1, 3]])]).unwrap()
        } else {
            x
        };
        let (diff, _) = intersection_equation(&a3, &sylow, &x, DEFAULT_CAP).unwrap();
        let element = diff.expect("equation fails without the normality hypothesis");
        let inst = LemmaInstance::Intersection { n: a3, p: 2, x };
        let w = LemmaWitness::Intersection { element };
        assert!(replay_witness(&g, &inst, &w, DEFAULT_CAP).unwrap());
        let bogus = LemmaWitness::Intersection { element: Permutation::identity(3) };
        assert!(!replay_witness(&g, &inst, &bogus, DEFAULT_CAP).unwrap());
    }

    #[test]
    fn from_lemma_instances() {
        let g = s4();
        let v4 = v4_in(&g);
        let a4 = a4_in(&g);
        let x = two_elements_of_delta1(&g).conjugation_closure(&g);
        let r = check_from_lemma(&g, &v4, &a4, 2, &x, DEFAULT_CAP).unwrap();
        assert!(r.holds);
        assert_eq!(r.params.l_order, Some(12));
        // N = L
        assert!(check_from_lemma(&g, &a4, &a4, 2, &x, DEFAULT_CAP).unwrap().holds);
        // N trivial: hypothesis and conclusion coincide
        let triv = PermGroup::trivial(4);
        assert!(check_from_lemma(&g, &triv, &a4, 2, &x, DEFAULT_CAP).unwrap().holds);
        // L ⊉ N
        assert!(matches!(
            check_from_lemma(&g, &a4, &v4, 2, &x, DEFAULT_CAP),
            Err(GroupError::HypothesisNotSatisfied(_))
        ));
    }

    #[test]
    fn from_lemma_inadmissible_quotient() {
        // X empty of nontrivial elements: P̄ ∩ L̄ = ⟨∅⟩ fails when L̄ meets P̄.
        let g = s4();
        let a4 = a4_in(&g);
        let x = ElementSet::new(4, [Permutation::identity(4)]).unwrap();
        assert!(matches!(
            check_from_lemma(&g, &PermGroup::trivial(4), &a4, 2, &x, DEFAULT_CAP),
            Err(GroupError::HypothesisNotSatisfied(_))
        ));
    }

    #[test]
    fn foca_examples() {
        let g = s4();
        let r = check_foca(&g, 1, 2, DEFAULT_CAP).unwrap();
        assert!(r.holds);
        assert_eq!(r.cases, 4);
        let r = check_foca(&g, 2, 3, DEFAULT_CAP).unwrap();
        assert!(r.holds);
        assert_eq!(r.cases, 1);
        let r = check_foca(&g, 3, 2, DEFAULT_CAP).unwrap();
        assert!(r.holds);
        let a5 = group(5, &[&[&[1, 2, 3]], &[&[1, 2, 3, 4, 5]]]);
        assert_eq!(check_foca(&a5, 1, 2, DEFAULT_CAP).unwrap_err(), GroupError::NotSoluble);
    }

    #[test]
    fn foca_via_xclo() {
        let g = s4();
        let t = construct_xclo(&g, 3, DEFAULT_CAP).unwrap();
        for i in 0..=3 {
            for p in [2, 3] {
                assert!(check_foca_xclo(&g, &t, i, p, DEFAULT_CAP).unwrap().holds);
            }
        }
    }

    #[test]
    fn meta_examples() {
        let s3 = s3();
        let r = check_meta(&s3, 2, DEFAULT_CAP).unwrap();
        assert!(r.holds);
        assert_eq!(r.cases, 1, "only the identity qualifies");
        assert_eq!(check_meta(&s4(), 2, DEFAULT_CAP).unwrap_err(), GroupError::NotMetanilpotent);
        // C3 × S3: every 3-element qualifies and lies in F = C3 × A3
        let g = group(6, &[&[&[1, 2, 3]], &[&[4, 5]], &[&[4, 5, 6]]]);
        let r = check_meta(&g, 3, DEFAULT_CAP).unwrap();
        assert!(r.holds);
        assert_eq!(r.cases, 9);
    }

    #[test]
    fn meta_replay_on_non_metanilpotent_group() {
        // In S4, F = V4 and O_{2'}(F) = 1, so a transposition is a genuine
        // counterexample to the conclusion; the lemma needs metanilpotence.
        let g = s4();
        let inst = LemmaInstance::Meta { p: 2 };
        let w = LemmaWitness::Meta { x: cyc(4, &[&[1, 2]]) };
        assert!(replay_witness(&g, &inst, &w, DEFAULT_CAP).unwrap());
        let inside = LemmaWitness::Meta { x: cyc(4, &[&[1, 2], &[3, 4]]) };
        assert!(!replay_witness(&g, &inst, &inside, DEFAULT_CAP).unwrap());
        assert!(meta_witness(&g, 2, DEFAULT_CAP).unwrap().0.is_some());
    }

    #[test]
    fn bbb_examples() {
        let g = s4();
        let r = check_bbb(&g, 2, DEFAULT_CAP).unwrap();
        assert!(r.holds);
        assert!(matches!(
            check_bbb(&g, 1, DEFAULT_CAP),
            Err(GroupError::HypothesisNotSatisfied(_))
        ));
        let d8 = group(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]]);
        let r = check_bbb(&d8, 1, DEFAULT_CAP).unwrap();
        assert!(r.holds);
        assert_eq!(r.cases, 0);
    }

    #[test]
    fn bbb_replay_where_condition_fails() {
        // S4 with k = 1 violates the standing hypothesis: (1 2 3) is a
        // commutator normalizing V4, and it does not centralize it.
        let g = s4();
        let v4 = v4_in(&g);
        let inst = LemmaInstance::Bbb { k: 1 };
        let w = LemmaWitness::Bbb {
            x: cyc(4, &[&[1, 2, 3]]),
            y: cyc(4, &[&[1, 2], &[3, 4]]),
            n_generators: v4.generators().to_vec(),
        };
        assert!(replay_witness(&g, &inst, &w, DEFAULT_CAP).unwrap());
        let commuting = LemmaWitness::Bbb {
            x: cyc(4, &[&[1, 2, 3]]),
            y: Permutation::identity(4),
            n_generators: v4.generators().to_vec(),
        };
        assert!(!replay_witness(&g, &inst, &commuting, DEFAULT_CAP).unwrap());
    }

    #[test]
    fn bbb_family_contents() {
        let fam = bbb_family(&s4(), DEFAULT_CAP).unwrap();
        assert!(fam.iter().any(|h| h.order() == 8));
        assert!(fam.iter().any(|h| h.order() == 4 && h.is_normal_in(&s4())));
        let mut keys = HashSet::new();
        for h in &fam {
            assert!(keys.insert(h.elements(DEFAULT_CAP).unwrap().as_slice().to_vec()));
        }
    }

    #[test]
    fn mismatched_witness_kind_is_rejected() {
        let g = s4();
        let w = LemmaWitness::Meta { x: cyc(4, &[&[1, 2]]) };
        assert!(!replay_witness(&g, &LemmaInstance::Bbb { k: 1 }, &w, DEFAULT_CAP).unwrap());
    }
}
