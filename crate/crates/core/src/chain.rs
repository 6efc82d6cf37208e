//! Deterministic Schreier–Sims stabilizer chains.
//!
//! New base points are always the smallest point moved by the element that
//! forces the extension, so chains are reproducible run to run.

use num_bigint::BigUint;
use rand::Rng;

use crate::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[b]` maps `point` to `b`.
    transversal: Vec<Option<Permutation>>,
    inverses: Vec<Option<Permutation>>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        let mut level = Self {
            point,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
            inverses: vec![None; degree],
        };
        level.rebuild();
        level
    }

    fn rebuild(&mut self) {
        let n = self.transversal.len();
        self.transversal.iter_mut().for_each(|t| *t = None);
        self.inverses.iter_mut().for_each(|t| *t = None);
        self.orbit.clear();
        let id = Permutation::identity(n);
        self.transversal[self.point] = Some(id.clone());
        self.inverses[self.point] = Some(id);
        self.orbit.push(self.point);
        let mut head = 0;
        while head < self.orbit.len() {
            let beta = self.orbit[head];
            head += 1;
            for s in &self.gens {
                let gamma = s.apply(beta);
                if self.transversal[gamma].is_none() {
                    let u = self.transversal[beta].as_ref().unwrap().then(s);
                    self.inverses[gamma] = Some(u.inverse());
                    self.transversal[gamma] = Some(u);
                    self.orbit.push(gamma);
                }
            }
        }
    }
}

/// Base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Permutation]) -> Self {
        Self::with_base_prefix(degree, gens, &[])
    }

    /// Builds a chain whose base starts with `prefix` (levels with trivial
    /// orbits are kept so that level `i` always belongs to the pointwise
    /// stabilizer of `prefix[..i]`).
    pub fn with_base_prefix(degree: usize, gens: &[Permutation], prefix: &[usize]) -> Self {
        let mut chain = Self {
            degree,
            levels: prefix.iter().map(|&b| Level::new(b, degree)).collect(),
        };
        for g in gens {
            chain.extend(g);
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Adds `g` to the group; returns false when `g` was already a member.
    pub fn extend(&mut self, g: &Permutation) -> bool {
        assert_eq!(g.degree(), self.degree);
        let (y, j) = self.sift(g, 0);
        if j == self.levels.len() && y.is_identity() {
            return false;
        }
        self.insert_residue_from(y, 0, j);
        self.complete_from(j);
        true
    }

    fn insert_residue_from(&mut self, y: Permutation, from: usize, j: usize) {
        if j == self.levels.len() {
            let b = y.smallest_moved_point().expect("nontrivial residue");
            self.levels.push(Level::new(b, self.degree));
        }
        for l in from..=j {
            self.levels[l].gens.push(y.clone());
            self.levels[l].rebuild();
        }
    }

    /// Schreier generator test from level `start` downwards; levels above
    /// `start` are assumed complete.
    fn complete_from(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            let iu = i as usize;
            let mut restart = None;
            'scan: for idx in 0..self.levels[iu].orbit.len() {
                let beta = self.levels[iu].orbit[idx];
                for s_idx in 0..self.levels[iu].gens.len() {
                    let level = &self.levels[iu];
                    let s = &level.gens[s_idx];
                    let gamma = s.apply(beta);
                    let h = level.transversal[beta]
                        .as_ref()
                        .unwrap()
                        .then(s)
                        .then(level.inverses[gamma].as_ref().unwrap());
                    if h.is_identity() {
                        continue;
                    }
                    let (y, j) = self.sift(&h, iu + 1);
                    if j < self.levels.len() || !y.is_identity() {
                        self.insert_residue_from(y, iu + 1, j);
                        restart = Some(j);
                        break 'scan;
                    }
                }
            }
            match restart {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    /// Strips `g` through levels `from..`; returns the residue and the
    /// level where sifting stopped (`len` when it went all the way).
    pub fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for i in from..self.levels.len() {
            let level = &self.levels[i];
            let beta = h.apply(level.point);
            match &level.inverses[beta] {
                None => return (h, i),
                Some(inv) => h = h.then(inv),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (y, j) = self.sift(g, 0);
        j == self.levels.len() && y.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    /// Base points with nontrivial basic orbits.
    pub fn irredundant_base(&self) -> Vec<usize> {
        self.levels
            .iter()
            .filter(|l| l.orbit.len() > 1)
            .map(|l| l.point)
            .collect()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn orbit_at(&self, level: usize) -> &[usize] {
        &self.levels[level].orbit
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Strong generators of the stabilizer at `level` (the pointwise
    /// stabilizer of the first `level` base points).
    pub fn generators_at(&self, level: usize) -> &[Permutation] {
        if level < self.levels.len() {
            &self.levels[level].gens
        } else {
            &[]
        }
    }

    /// Coset representative at `level` mapping the base point to `point`.
    pub fn transversal_element(&self, level: usize, point: usize) -> Option<&Permutation> {
        self.levels[level].transversal[point].as_ref()
    }

    /// The element of the coset `K x` with lexicographically least images
    /// of the base points, `K` being the group of this chain.
    pub fn canonical_coset_rep(&self, x: &Permutation) -> Permutation {
        let mut y = x.clone();
        for level in &self.levels {
            let best = *level
                .orbit
                .iter()
                .min_by_key(|&&o| y.apply(o))
                .expect("orbits contain the base point");
            y = level.transversal[best].as_ref().unwrap().then(&y);
        }
        y
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Visits every element exactly once.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, mut f: F) {
        let id = Permutation::identity(self.degree);
        if self.levels.is_empty() {
            f(&id);
            return;
        }
        self.visit(self.levels.len() - 1, &id, &mut f);
    }

    fn visit<F: FnMut(&Permutation)>(&self, level: usize, acc: &Permutation, f: &mut F) {
        for &b in &self.levels[level].orbit {
            let next = acc.then(self.levels[level].transversal[b].as_ref().unwrap());
            if level == 0 {
                f(&next);
            } else {
                self.visit(level - 1, &next, f);
            }
        }
    }

    /// Uniformly distributed element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let b = level.orbit[rng.gen_range(0..level.orbit.len())];
            acc = acc.then(level.transversal[b].as_ref().unwrap());
        }
        acc
    }
}
