//! Stabilizer chain via the deterministic Schreier-Sims algorithm.
//!
//! Base points are chosen as the smallest point moved by the first strong
//! generator that fixes the current base, so two builds from the same
//! generator list produce identical chains.

use super::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Permutation>,
    /// Basic orbit, in discovery order.
    orbit: Vec<usize>,
    /// `transversal[pt]` maps the base point to `pt`.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
        }
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal[self.base] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let pt = self.orbit[i];
            for s in &self.gens {
                let q = s.image(pt);
                if self.transversal[q].is_none() {
                    let u = self.transversal[pt].as_ref().unwrap().mul(s);
                    self.transversal[q] = Some(u);
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }
}

/// Base and strong generating set with per-level transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn build(degree: usize, generators: &[Permutation]) -> Self {
        let strong: Vec<Permutation> =
            generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        let mut base: Vec<usize> = Vec::new();
        for g in &strong {
            if base.iter().all(|&b| g.image(b) == b) {
                base.push(g.first_moved_point().unwrap());
            }
        }
        for &b in &base {
            chain.levels.push(Level::new(b, degree));
        }
        for g in strong {
            chain.add_strong_generator(g, 0, chain.levels.len());
        }
        for l in 0..chain.levels.len() {
            chain.levels[l].rebuild_orbit(degree);
        }

        let mut i = chain.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let level = &chain.levels[lvl];
            for &beta in &level.orbit {
                let u_beta = level.transversal[beta].as_ref().unwrap();
                for s in &level.gens {
                    let image = s.image(beta);
                    let u_image = level.transversal[image].as_ref().unwrap();
                    let schreier = u_beta.mul(s).mul(&u_image.inverse());
                    let (residue, j) = chain.strip(schreier, lvl + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    if j == chain.levels.len() {
                        let b = residue.first_moved_point().unwrap();
                        chain.levels.push(Level::new(b, degree));
                    }
                    chain.add_strong_generator(residue, lvl + 1, j + 1);
                    for l in lvl + 1..=j {
                        chain.levels[l].rebuild_orbit(degree);
                    }
                    i = j as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
        chain
    }

    fn add_strong_generator(&mut self, g: Permutation, from: usize, to: usize) {
        for l in from..to {
            let fixes_prefix = self.levels[..l].iter().all(|lv| g.image(lv.base) == lv.base);
            if fixes_prefix {
                self.levels[l].gens.push(g.clone());
            }
        }
    }

    /// Sifts `g` starting at level `from`. Returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it passed every level).
    fn strip(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = g.image(level.base);
            match &level.transversal[beta] {
                Some(u) => g = g.mul(&u.inverse()),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Base points, 0-based.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Product of the basic orbit lengths.
    pub fn order(&self) -> u64 {
        self.levels.iter().fold(1u64, |acc, l| {
            acc.checked_mul(l.orbit.len() as u64)
                .expect("group order overflows u64")
        })
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.strip(g.clone(), 0);
        residue.is_identity()
    }

    /// Every element, as products of transversal elements; unsorted.
    pub fn all_elements(&self) -> Vec<Permutation> {
        let mut current = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let reps: Vec<&Permutation> = level
                .orbit
                .iter()
                .map(|&pt| level.transversal[pt].as_ref().unwrap())
                .collect();
            let mut next = Vec::with_capacity(current.len() * reps.len());
            for x in &current {
                for u in &reps {
                    next.push(x.mul(u));
                }
            }
            current = next;
        }
        current
    }
}
