//! Brute-force oracles over explicit element sets. Nothing here uses
//! stabilizer chains or the library's group algorithms; only
//! `Permutation` arithmetic.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use commcrit::{PermGroup, Permutation};

pub type Set = BTreeSet<Permutation>;

pub fn cyc(n: usize, c: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, c).unwrap()
}

pub fn group(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
    PermGroup::new(n, gens.iter().map(|c| cyc(n, c)).collect()).unwrap()
}

/// Hand-built test groups, with names.
pub fn zoo() -> Vec<(&'static str, PermGroup)> {
    vec![
        ("C6", group(6, &[&[&[1, 2, 3, 4, 5, 6]]])),
        ("S3", group(3, &[&[&[1, 2]], &[&[1, 2, 3]]])),
        ("D8", group(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]])),
        ("A4", group(4, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]])),
        ("D12", group(6, &[&[&[1, 2, 3, 4, 5, 6]], &[&[2, 6], &[3, 5]]])),
        ("C3sdC4", group(7, &[&[&[1, 2, 3]], &[&[2, 3], &[4, 5, 6, 7]]])),
        ("C3wrC2", group(6, &[&[&[1, 2, 3]], &[&[1, 4], &[2, 5], &[3, 6]]])),
        ("F20", group(5, &[&[&[1, 2, 3, 4, 5]], &[&[2, 3, 5, 4]]])),
        ("C7sdC3", group(7, &[&[&[1, 2, 3, 4, 5, 6, 7]], &[&[2, 3, 5], &[4, 7, 6]]])),
        ("S4", group(4, &[&[&[1, 2]], &[&[1, 2, 3, 4]]])),
        ("S3xS3", group(6, &[&[&[1, 2]], &[&[1, 2, 3]], &[&[4, 5]], &[&[4, 5, 6]]])),
        ("S4xC3", group(7, &[&[&[1, 2]], &[&[1, 2, 3, 4]], &[&[5, 6, 7]]])),
        ("A5", group(5, &[&[&[1, 2, 3]], &[&[1, 2, 3, 4, 5]]])),
    ]
}

/// Closure of `gens` under multiplication, by breadth-first search.
pub fn closure<'a, I: IntoIterator<Item = &'a Permutation>>(degree: usize, gens: I) -> Set {
    let gens: Vec<Permutation> = gens.into_iter().cloned().collect();
    let id = Permutation::identity(degree);
    let mut seen = Set::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

pub fn elements(g: &PermGroup) -> Set {
    closure(g.degree(), g.generators())
}

pub fn set_of(h: &PermGroup) -> Set {
    elements(h)
}

pub fn classes(all: &Set) -> Vec<Set> {
    let mut left = all.clone();
    let mut out = Vec::new();
    while let Some(x) = left.iter().next().cloned() {
        let class: Set = all.iter().map(|g| x.conjugate(g)).collect();
        for c in &class {
            left.remove(c);
        }
        out.push(class);
    }
    out
}

fn closed_under_mul(s: &Set) -> bool {
    s.iter().all(|a| s.iter().all(|b| s.contains(&a.mul(b))))
}

/// Normal subgroups as unions of conjugacy classes containing 1 that are
/// closed under multiplication.
pub fn normal_subgroups(all: &Set) -> Vec<Set> {
    let cls = classes(all);
    let (id_class, rest): (Vec<&Set>, Vec<&Set>) =
        cls.iter().partition(|c| c.iter().next().unwrap().is_identity());
    let mut out = Vec::new();
    for mask in 0u64..(1 << rest.len()) {
        let mut s = id_class[0].clone();
        let mut size = 1;
        for (i, c) in rest.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s.extend(c.iter().cloned());
                size += c.len();
            }
        }
        if all.len() % size == 0 && closed_under_mul(&s) {
            out.push(s);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// `⟨[a, b] : a ∈ A, b ∈ B⟩`.
pub fn commutator_subgroup(degree: usize, a: &Set, b: &Set) -> Set {
    let comms: Set = a.iter().flat_map(|x| b.iter().map(move |y| x.comm(y))).collect();
    closure(degree, &comms)
}

pub fn derived_series(degree: usize, all: &Set) -> Vec<Set> {
    let mut out = vec![all.clone()];
    loop {
        let last = out.last().unwrap();
        let next = commutator_subgroup(degree, last, last);
        if next == *last {
            return out;
        }
        let done = next.len() == 1;
        out.push(next);
        if done {
            return out;
        }
    }
}

pub fn is_nilpotent(degree: usize, h: &Set) -> bool {
    let mut c = h.clone();
    loop {
        if c.len() == 1 {
            return true;
        }
        let next = commutator_subgroup(degree, &c, h);
        if next == c {
            return false;
        }
        c = next;
    }
}

pub fn is_soluble(degree: usize, all: &Set) -> bool {
    derived_series(degree, all).last().unwrap().len() == 1
}

/// `M/N` nilpotent, for `N ≤ M` both normal in the ambient group:
/// iterate `C ↦ [C, M]N` from `M` and see whether it reaches `N`.
pub fn quotient_nilpotent(degree: usize, m: &Set, n: &Set) -> bool {
    let mut c = m.clone();
    loop {
        if c == *n {
            return true;
        }
        let mut gens = commutator_subgroup(degree, &c, m);
        gens.extend(n.iter().cloned());
        let next = closure(degree, &gens);
        if next == c {
            return false;
        }
        c = next;
    }
}

/// Shortest normal series `1 = N_0 < ... < N_h = G` with nilpotent factors.
pub fn fitting_height(degree: usize, all: &Set) -> Option<usize> {
    let normals = normal_subgroups(all);
    let mut dist: Vec<Option<usize>> = vec![None; normals.len()];
    dist[0] = Some(0);
    for j in 1..normals.len() {
        for i in 0..j {
            let (Some(d), true) = (dist[i], normals[i].is_subset(&normals[j])) else {
                continue;
            };
            if normals[i].len() < normals[j].len() && quotient_nilpotent(degree, &normals[j], &normals[i]) {
                dist[j] = Some(dist[j].map_or(d + 1, |x: usize| x.min(d + 1)));
            }
        }
    }
    *dist.last().unwrap()
}

pub fn largest_normal_where<F: Fn(&Set) -> bool>(all: &Set, pred: F) -> Set {
    normal_subgroups(all)
        .into_iter()
        .filter(|n| pred(n))
        .max_by_key(|n| n.len())
        .unwrap()
}

pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n % p == 0 {
        n /= p;
        out *= p;
    }
    out
}

pub fn is_p_power(n: u64, p: u64) -> bool {
    p_part(n, p) == n
}
