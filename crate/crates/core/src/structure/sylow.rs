use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::arith::{coprime, is_power_of, is_prime, p_part, prime_divisors};
use crate::error::{GroupError, Result};
use crate::permcore::{
    conjugacy_classes, intersection, join, normal_closure, normalizer, subgroup_generated,
    PermGroup, Permutation,
};

fn require_prime(g: &PermGroup, p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(GroupError::NotPrimeDivisor { p, order: g.order() })
    }
}

fn require_prime_divisor(g: &PermGroup, p: u64) -> Result<()> {
    let order = g.order();
    if is_prime(p) && order % p == 0 {
        Ok(())
    } else {
        Err(GroupError::NotPrimeDivisor { p, order })
    }
}

/// Order is a power of `p`; the identity counts.
pub fn is_p_element(x: &Permutation, p: u64) -> bool {
    is_power_of(x.order(), p)
}

/// A Sylow `p`-subgroup, grown one normalizing `p`-element at a time: while
/// `|P|` is short of the `p`-part, the least `p`-element of `N_G(P) \ P` is
/// adjoined.
pub fn sylow_subgroup(g: &PermGroup, p: u64, cap: usize) -> Result<PermGroup> {
    require_prime_divisor(g, p)?;
    let target = p_part(g.order(), p);
    let mut sylow = PermGroup::trivial(g.degree());
    while sylow.order() < target {
        let norm = normalizer(g, &sylow, cap)?;
        let next = norm
            .elements(cap)?
            .iter()
            .find(|y| !y.is_identity() && is_p_element(y, p) && !sylow.contains(y))
            .cloned()
            .ok_or_else(|| {
                GroupError::InvariantViolated(format!(
                    "no {p}-element in N(P) \\ P with |P| = {}",
                    sylow.order()
                ))
            })?;
        sylow = subgroup_generated(g.degree(), sylow.generators().iter().chain([&next]))?;
    }
    if sylow.order() != target {
        return Err(GroupError::InvariantViolated(format!(
            "Sylow {p}-subgroup overshot: {} vs {target}",
            sylow.order()
        )));
    }
    Ok(sylow)
}

/// Sylow subgroups for every prime dividing `|G|`.
pub fn sylow_subgroups(g: &PermGroup, cap: usize) -> Result<BTreeMap<u64, PermGroup>> {
    prime_divisors(g.order())
        .into_iter()
        .map(|p| Ok((p, sylow_subgroup(g, p, cap)?)))
        .collect()
}

/// Largest normal subgroup of `g` contained in `h`.
pub fn core(g: &PermGroup, h: &PermGroup, cap: usize) -> Result<PermGroup> {
    let mut current = h.clone();
    loop {
        let before = current.order();
        for x in g.generators() {
            current = intersection(&current, &current.conjugate_by(x), cap)?;
        }
        if current.order() == before {
            return Ok(current);
        }
    }
}

/// `O_p(G)`: the core of a Sylow `p`-subgroup. Trivial when `p ∤ |G|`.
pub fn p_core(g: &PermGroup, p: u64, cap: usize) -> Result<PermGroup> {
    require_prime(g, p)?;
    if g.order() % p != 0 {
        return Ok(PermGroup::trivial(g.degree()));
    }
    core(g, &sylow_subgroup(g, p, cap)?, cap)
}

/// `O_{p'}(G)`: the join of the normal closures of those `p'`-classes whose
/// closure is a `p'`-group. Equals `G` when `p ∤ |G|`.
pub fn p_prime_core(g: &PermGroup, p: u64, cap: usize) -> Result<PermGroup> {
    require_prime(g, p)?;
    let mut gens: Vec<Permutation> = Vec::new();
    for class in conjugacy_classes(g, cap)? {
        let rep = &class.as_slice()[0];
        if rep.is_identity() || !coprime(rep.order(), p) {
            continue;
        }
        let closure = normal_closure(g, [rep])?;
        if coprime(closure.order(), p) {
            gens.extend(closure.generators().iter().cloned());
        }
    }
    subgroup_generated(g.degree(), gens.iter())
}

/// `F(G)`, the product of the `p`-cores.
pub fn fitting_subgroup(g: &PermGroup, cap: usize) -> Result<PermGroup> {
    let mut f = PermGroup::trivial(g.degree());
    for p in prime_divisors(g.order()) {
        f = join(&f, &p_core(g, p, cap)?)?;
    }
    Ok(f)
}

/// Every normal subgroup of `g`, ascending by order (ties broken by the
/// canonical element lists). Built as the join-closure of the normal
/// closures of single classes.
pub fn normal_subgroups(g: &PermGroup, cap: usize) -> Result<Vec<PermGroup>> {
    let mut by_key: BTreeMap<(u64, Vec<Permutation>), PermGroup> = BTreeMap::new();
    let key = |h: &PermGroup| -> Result<(u64, Vec<Permutation>)> {
        Ok((h.order(), h.elements(cap)?.as_slice().to_vec()))
    };
    let trivial = PermGroup::trivial(g.degree());
    by_key.insert(key(&trivial)?, trivial);
    let mut atoms: Vec<PermGroup> = Vec::new();
    for class in conjugacy_classes(g, cap)? {
        let rep = &class.as_slice()[0];
        if rep.is_identity() {
            continue;
        }
        let n = normal_closure(g, [rep])?;
        let k = key(&n)?;
        if let Entry::Vacant(slot) = by_key.entry(k) {
            slot.insert(n.clone());
            atoms.push(n);
        }
    }
    let mut frontier: Vec<PermGroup> = by_key.values().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for b in &atoms {
                if b.is_subgroup_of(a) {
                    continue;
                }
                let j = join(a, b)?;
                let k = key(&j)?;
                if let Entry::Vacant(slot) = by_key.entry(k) {
                    slot.insert(j.clone());
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    Ok(by_key.into_values().collect())
}
