use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::series::{gamma_infinity, is_nilpotent, is_soluble};
use super::sylow::sylow_subgroup;
use crate::arith::{p_part, prime_divisors};
use crate::error::{GroupError, Result};
use crate::permcore::{common_normalizer, conjugate_subgroups, intersection, join, PermGroup};

/// Upper bound on permutability tests during the basis search.
pub const MAX_BASIS_ATTEMPTS: usize = 1_000_000;

/// A Sylow basis (one Sylow subgroup per prime, pairwise permutable) of
/// `ambient`, with its basis normalizer `T = ⋂ N(P_p)`.
#[derive(Clone, Debug)]
pub struct SylowBasis {
    pub ambient: PermGroup,
    pub basis: BTreeMap<u64, PermGroup>,
    pub normalizer: PermGroup,
    /// Seed that ordered the conjugate search.
    pub seed: u64,
}

impl SylowBasis {
    pub fn primes(&self) -> Vec<u64> {
        self.basis.keys().copied().collect()
    }

    /// Re-checks that every member is a Sylow subgroup of the ambient group
    /// and that members for distinct primes permute.
    pub fn verify(&self, cap: usize) -> Result<()> {
        let order = self.ambient.order();
        for (&p, sub) in &self.basis {
            if sub.order() != p_part(order, p) || !sub.is_subgroup_of(&self.ambient) {
                return Err(GroupError::InvariantViolated(format!(
                    "basis member for {p} is not a Sylow subgroup"
                )));
            }
        }
        for (&p, a) in &self.basis {
            for (&q, b) in self.basis.range(p + 1..) {
                if !permutable(a, b, cap)? {
                    return Err(GroupError::PermutabilityViolated { p, q });
                }
            }
        }
        Ok(())
    }
}

/// `PQ = QP`, tested as `|⟨P,Q⟩| = |P||Q|/|P∩Q|`.
pub fn permutable(a: &PermGroup, b: &PermGroup, cap: usize) -> Result<bool> {
    let meet = intersection(a, b, cap)?;
    Ok(join(a, b)?.order() * meet.order() == a.order() * b.order())
}

fn basis_normalizer(ambient: &PermGroup, members: &BTreeMap<u64, PermGroup>, cap: usize) -> Result<PermGroup> {
    let refs: Vec<&PermGroup> = members.values().collect();
    common_normalizer(ambient, &refs, cap)
}

/// Finds a Sylow basis by depth-first search over conjugates of one Sylow
/// subgroup per prime (primes ascending, conjugates in an order shuffled by
/// `seed`). Postconditions: `T` nilpotent and `G = T·γ∞(G)`.
pub fn sylow_basis(g: &PermGroup, seed: u64, cap: usize) -> Result<SylowBasis> {
    if !is_soluble(g)? {
        return Err(GroupError::NotSoluble);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes = prime_divisors(g.order());
    let mut candidates: Vec<Vec<PermGroup>> = Vec::with_capacity(primes.len());
    for &p in &primes {
        let mut conj = conjugate_subgroups(g, &sylow_subgroup(g, p, cap)?, cap)?;
        conj.shuffle(&mut rng);
        candidates.push(conj);
    }

    let mut attempts = 0usize;
    let mut chosen: Vec<usize> = Vec::with_capacity(primes.len());
    let mut cursor = vec![0usize; primes.len()];
    while chosen.len() < primes.len() {
        let level = chosen.len();
        let mut found = None;
        while cursor[level] < candidates[level].len() {
            let idx = cursor[level];
            cursor[level] += 1;
            let cand = &candidates[level][idx];
            let mut ok = true;
            for (l, &c) in chosen.iter().enumerate() {
                attempts += 1;
                if attempts > MAX_BASIS_ATTEMPTS {
                    return Err(GroupError::SearchExhausted { attempts: MAX_BASIS_ATTEMPTS });
                }
                if !permutable(&candidates[l][c], cand, cap)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                found = Some(idx);
                break;
            }
        }
        match found {
            Some(idx) => chosen.push(idx),
            None => {
                cursor[level] = 0;
                if chosen.pop().is_none() {
                    return Err(GroupError::SearchExhausted { attempts });
                }
            }
        }
    }

    let basis: BTreeMap<u64, PermGroup> = primes
        .iter()
        .zip(&chosen)
        .enumerate()
        .map(|(l, (&p, &c))| (p, candidates[l][c].clone()))
        .collect();
    let normalizer = basis_normalizer(g, &basis, cap)?;
    let out = SylowBasis {
        ambient: g.clone(),
        basis,
        normalizer,
        seed,
    };
    check_normalizer_facts(&out, cap)?;
    Ok(out)
}

fn check_normalizer_facts(b: &SylowBasis, cap: usize) -> Result<()> {
    if !is_nilpotent(&b.normalizer)? {
        return Err(GroupError::InvariantViolated("basis normalizer is not nilpotent".into()));
    }
    let residual = gamma_infinity(&b.ambient)?;
    let meet = intersection(&b.normalizer, &residual, cap)?;
    if b.normalizer.order() * residual.order() != b.ambient.order() * meet.order() {
        return Err(GroupError::InvariantViolated(
            "basis normalizer and nilpotent residual do not cover the group".into(),
        ));
    }
    Ok(())
}

/// The basis `{P ∩ K}` of a normal subgroup `K`, with the basis normalizer
/// computed inside `K`. Primes not dividing `|K|` are dropped.
pub fn intersect_basis(b: &SylowBasis, k: &PermGroup, cap: usize) -> Result<SylowBasis> {
    if !k.is_normal_in(&b.ambient) {
        return Err(GroupError::NotNormal);
    }
    let mut basis = BTreeMap::new();
    for (&p, sub) in &b.basis {
        let meet = intersection(sub, k, cap)?;
        if meet.order() > 1 {
            basis.insert(p, meet);
        }
    }
    let normalizer = basis_normalizer(k, &basis, cap)?;
    let out = SylowBasis {
        ambient: k.clone(),
        basis,
        normalizer,
        seed: b.seed,
    };
    out.verify(cap)?;
    if prime_divisors(k.order()) != out.primes() {
        return Err(GroupError::InvariantViolated(
            "intersected basis misses a prime of |K|".into(),
        ));
    }
    check_normalizer_facts(&out, cap)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::{find_subgroup_conjugator, normal_closure, Permutation, DEFAULT_CAP};

    fn cyc(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, c).unwrap()
    }

    fn group(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|c| cyc(n, c)).collect()).unwrap()
    }

    fn s4() -> PermGroup {
        group(4, &[&[&[1, 2]], &[&[1, 2, 3, 4]]])
    }

    #[test]
    fn s4_basis() {
        let b = sylow_basis(&s4(), 7, DEFAULT_CAP).unwrap();
        b.verify(DEFAULT_CAP).unwrap();
        assert_eq!(b.basis[&2].order(), 8);
        assert_eq!(b.basis[&3].order(), 3);
        assert_eq!(b.normalizer.order(), 2);
    }

    #[test]
    fn s3_basis() {
        let s3 = group(3, &[&[&[1, 2]], &[&[1, 2, 3]]]);
        assert_eq!(sylow_basis(&s3, 0, DEFAULT_CAP).unwrap().normalizer.order(), 2);
    }

    #[test]
    fn nilpotent_basis_normalizer_is_group() {
        let c6 = group(6, &[&[&[1, 2, 3, 4, 5, 6]]]);
        let b = sylow_basis(&c6, 3, DEFAULT_CAP).unwrap();
        assert_eq!(b.normalizer, c6);
        assert_eq!(b.basis.len(), 2);
    }

    #[test]
    fn insoluble_rejected() {
        let a5 = group(5, &[&[&[1, 2, 3]], &[&[1, 2, 3, 4, 5]]]);
        assert_eq!(sylow_basis(&a5, 0, DEFAULT_CAP).unwrap_err(), GroupError::NotSoluble);
    }

    #[test]
    fn seeds_give_conjugate_normalizers() {
        let g = s4();
        let a = sylow_basis(&g, 1, DEFAULT_CAP).unwrap();
        for seed in 2..8 {
            let b = sylow_basis(&g, seed, DEFAULT_CAP).unwrap();
            assert!(find_subgroup_conjugator(&g, &a.normalizer, &b.normalizer, DEFAULT_CAP)
                .unwrap()
                .is_some());
        }
    }

    #[test]
    fn intersect_with_a4() {
        let g = s4();
        let b = sylow_basis(&g, 11, DEFAULT_CAP).unwrap();
        let a4 = normal_closure(&g, &[cyc(4, &[&[1, 2, 3]])]).unwrap();
        let ba = intersect_basis(&b, &a4, DEFAULT_CAP).unwrap();
        assert_eq!(ba.basis[&2].order(), 4);
        assert_eq!(ba.basis[&3].order(), 3);
        assert_eq!(ba.normalizer.order(), 3);

        let same = intersect_basis(&b, &g, DEFAULT_CAP).unwrap();
        assert_eq!(same.normalizer, b.normalizer);
        let triv = intersect_basis(&b, &PermGroup::trivial(4), DEFAULT_CAP).unwrap();
        assert!(triv.basis.is_empty());
        assert_eq!(triv.normalizer.order(), 1);

        let c3 = PermGroup::new(4, vec![cyc(4, &[&[1, 2, 3]])]).unwrap();
        assert_eq!(intersect_basis(&b, &c3, DEFAULT_CAP).unwrap_err(), GroupError::NotNormal);
    }
}
