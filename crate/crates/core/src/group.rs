//! Finitely generated permutation groups.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A permutation group given by generators, with a stabilizer chain built
/// on first use. Immutable once built, so handles can be shared freely.
#[derive(Clone)]
pub struct Group {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl Group {
    /// Identity generators are dropped.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidParameter("degree must be positive".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(Self {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub(crate) fn from_parts(degree: usize, generators: Vec<Permutation>) -> Self {
        Self::new(degree, generators).expect("generators of matching degree")
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_parts(degree, vec![])
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).unwrap());
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        Self::from_parts(n, gens)
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (2..n)
            .map(|i| Permutation::from_cycles(n, &[vec![0, 1, i]]).unwrap())
            .collect();
        Self::from_parts(n, gens)
    }

    /// Regular cyclic group on `n` points.
    pub fn cyclic(n: usize) -> Self {
        let gens = if n >= 2 {
            vec![Permutation::from_cycles(n, &[(0..n).collect()]).unwrap()]
        } else {
            vec![]
        };
        Self::from_parts(n, gens)
    }

    /// Dihedral group of order `2n` on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let mut gens = Self::cyclic(n).generators;
        if n >= 3 {
            let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
            gens.push(Permutation::from_images(reflection).unwrap());
        }
        Self::from_parts(n, gens)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::new(self.degree, &self.generators))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// Order as `u64`, or `None` when it does not fit.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        self.check_degree(p.degree())?;
        Ok(self.chain().contains(p))
    }

    pub(crate) fn contains_unchecked(&self, p: &Permutation) -> bool {
        self.chain().contains(p)
    }

    fn check_degree(&self, found: usize) -> Result<()> {
        if found != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found,
            });
        }
        Ok(())
    }

    /// Greedy irredundant base from the deterministic chain.
    pub fn base(&self) -> Vec<usize> {
        self.chain().irredundant_base()
    }

    pub fn base_size(&self) -> usize {
        self.base().len()
    }

    /// Every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &Group) -> Result<bool> {
        other.check_degree(self.degree)?;
        Ok(self.generators.iter().all(|g| other.contains_unchecked(g)))
    }

    pub fn equals(&self, other: &Group) -> Result<bool> {
        Ok(self.is_subgroup_of(other)? && self.order() == other.order())
    }

    pub fn is_normal_in(&self, other: &Group) -> Result<bool> {
        if !self.is_subgroup_of(other)? {
            return Ok(false);
        }
        Ok(other
            .generators
            .iter()
            .all(|x| self.generators.iter().all(|n| self.contains_unchecked(&x.conjugate(n)))))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter()
            .enumerate()
            .all(|(i, a)| g[i + 1..].iter().all(|b| a.then(b) == b.then(a)))
    }

    /// Orbit of `point`, in breadth-first discovery order.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// Pointwise stabilizer of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Group {
        let chain = StabChain::with_base_prefix(self.degree, &self.generators, points);
        Group::from_parts(self.degree, chain.generators_at(points.len()).to_vec())
    }

    pub fn stabilizer(&self, point: usize) -> Group {
        self.pointwise_stabilizer(&[point])
    }

    /// Group generated by `self` and `extra`.
    pub fn join(&self, extra: &[Permutation]) -> Result<Group> {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(extra);
        Group::new(self.degree, gens)
    }

    /// Drops generators lying in the span of the earlier ones.
    pub fn reduced(&self) -> Group {
        let mut chain = StabChain::new(self.degree, &[]);
        let gens = self
            .generators
            .iter()
            .filter(|g| chain.extend(g))
            .cloned()
            .collect();
        let g = Group::from_parts(self.degree, gens);
        let _ = g.chain.set(chain);
        g
    }

    /// Sorted copy of the generators, for canonical output.
    pub fn sorted_generators(&self) -> Group {
        let mut gens = self.generators.clone();
        gens.sort();
        gens.dedup();
        Group::from_parts(self.degree, gens)
    }

    pub fn for_each_element<F: FnMut(&Permutation)>(&self, f: F) {
        self.chain().for_each_element(f)
    }

    /// All elements; refuses when the order exceeds `limit`.
    pub fn elements(&self, limit: u64) -> Result<Vec<Permutation>> {
        let order = self.order();
        match order.to_u64() {
            Some(o) if o <= limit => {
                let mut out = Vec::with_capacity(o as usize);
                self.for_each_element(|p| out.push(p.clone()));
                Ok(out)
            }
            _ => Err(Error::Budget {
                engine: "element enumeration",
                quantity: "group order".into(),
                needed: order.to_u128().unwrap_or(u128::MAX),
                limit: limit as u128,
            }),
        }
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain().random_element(rng)
    }

    /// Conjugate group `x^-1 G x`.
    pub fn conjugate_by(&self, x: &Permutation) -> Group {
        Group::from_parts(
            self.degree,
            self.generators.iter().map(|g| x.conjugate(g)).collect(),
        )
    }

    /// Restriction of every generator to an invariant set, relabeled in the
    /// order given.
    pub fn restrict_to(&self, points: &[usize]) -> Result<Group> {
        let mut index = vec![usize::MAX; self.degree];
        for (i, &p) in points.iter().enumerate() {
            index[p] = i;
        }
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let mut images = Vec::with_capacity(points.len());
            for &p in points {
                let j = index[g.apply(p)];
                if j == usize::MAX {
                    return Err(Error::NotInvariant);
                }
                images.push(j);
            }
            gens.push(Permutation::from_images_unchecked(images));
        }
        Group::new(points.len(), gens)
    }

    /// Normal closure of `elements` in `self`.
    pub fn normal_closure(&self, elements: &[Permutation]) -> Group {
        let mut chain = StabChain::new(self.degree, &[]);
        let mut gens: Vec<Permutation> = Vec::new();
        let mut queue: VecDeque<Permutation> = elements.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            if chain.extend(&x) {
                gens.push(x.clone());
                for g in &self.generators {
                    queue.push_back(g.conjugate(&x));
                }
            }
        }
        let n = Group::from_parts(self.degree, gens);
        let _ = n.chain.set(chain);
        n
    }

    pub fn derived_subgroup(&self) -> Group {
        let g = &self.generators;
        let mut comms = Vec::new();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let c = Permutation::commutator(&g[i], &g[j]);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// Generators of the stabilizer of `start` under an arbitrary right
    /// action, by Schreier's lemma over the orbit of `start`.
    pub fn stabilizer_in_action<S, F>(&self, start: S, act: F, max_orbit: usize) -> Result<(Group, Vec<S>)>
    where
        S: Clone + Eq + std::hash::Hash,
        F: Fn(&S, &Permutation) -> S,
    {
        let id = Permutation::identity(self.degree);
        let mut index: HashMap<S, usize> = HashMap::new();
        let mut orbit = vec![start.clone()];
        let mut reps = vec![id];
        index.insert(start, 0);
        let mut chain = StabChain::new(self.degree, &[]);
        let mut gens = Vec::new();
        let mut head = 0;
        while head < orbit.len() {
            let s = orbit[head].clone();
            let u = reps[head].clone();
            head += 1;
            for g in &self.generators {
                let t = act(&s, g);
                let ug = u.then(g);
                match index.get(&t) {
                    Some(&j) => {
                        let h = ug.then(&reps[j].inverse());
                        if !h.is_identity() && chain.extend(&h) {
                            gens.push(h);
                        }
                    }
                    None => {
                        if orbit.len() >= max_orbit {
                            return Err(Error::Budget {
                                engine: "stabilizer",
                                quantity: "orbit length".into(),
                                needed: (orbit.len() + 1) as u128,
                                limit: max_orbit as u128,
                            });
                        }
                        index.insert(t.clone(), orbit.len());
                        orbit.push(t);
                        reps.push(ug);
                    }
                }
            }
        }
        let stab = Group::from_parts(self.degree, gens);
        let _ = stab.chain.set(chain);
        Ok((stab, orbit))
    }
}
