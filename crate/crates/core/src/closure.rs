//! The k-closure `G^(k)`, k-equivalence and the partition closure `K^[r]`.

use serde::{Deserialize, Serialize};

use crate::actions::{self, OrbitColoring};
use crate::budget::Budget;
use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Engine {
    Exhaustive,
    Backtracking,
    TransitivityShortcut,
}

impl std::fmt::Display for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Engine::Exhaustive => "exhaustive",
            Engine::Backtracking => "backtracking",
            Engine::TransitivityShortcut => "transitivity-shortcut",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Engine::Exhaustive),
            "backtracking" => Ok(Engine::Backtracking),
            "shortcut" | "transitivity-shortcut" => Ok(Engine::TransitivityShortcut),
            _ => Err(Error::InvalidParameter(format!("unknown engine {s:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClosureResult {
    pub group: Group,
    pub k: usize,
    pub engine: Engine,
}

/// `G^(k)` with the engine picked automatically: the shortcut when `G` is
/// k-transitive, backtracking otherwise.
pub fn k_closure(g: &Group, k: usize, budget: &Budget) -> Result<ClosureResult> {
    let engine = if actions::transitivity_degree(g) >= k {
        Engine::TransitivityShortcut
    } else {
        Engine::Backtracking
    };
    k_closure_with(g, k, engine, budget)
}

pub fn k_closure_with(g: &Group, k: usize, engine: Engine, budget: &Budget) -> Result<ClosureResult> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let group = match engine {
        Engine::TransitivityShortcut => {
            let m = actions::transitivity_degree(g);
            if m < k {
                return Err(Error::Precondition(format!(
                    "transitivity shortcut needs a {k}-transitive group, this one is {m}-transitive"
                )));
            }
            Group::symmetric(g.degree())
        }
        Engine::Exhaustive => exhaustive(g, k, budget)?,
        Engine::Backtracking => backtrack(g, k, budget)?,
    };
    Ok(ClosureResult { group, k, engine })
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm).
pub(crate) fn for_each_permutation<F: FnMut(&[usize]) -> bool>(n: usize, mut f: F) {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    if !f(&a) {
        return;
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            if !f(&a) {
                return;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn preserves(col: &OrbitColoring, sigma: &[usize]) -> bool {
    let n = col.degree;
    let k = col.k;
    let mut digits = vec![0usize; k];
    for (t, &c) in col.colors.iter().enumerate() {
        // digits of t, least significant last
        let mut rest = t;
        for d in digits.iter_mut().rev() {
            *d = rest % n;
            rest /= n;
        }
        let img = digits.iter().fold(0, |acc, &x| acc * n + sigma[x]);
        if col.colors[img] != c {
            return false;
        }
    }
    true
}

fn colorings_up_to(g: &Group, k: usize, budget: &Budget) -> Result<Vec<OrbitColoring>> {
    (1..=k).map(|j| actions::orbit_coloring(g, j, budget)).collect()
}

/// Oracle engine: scans all of `Sym(n)`.
fn exhaustive(g: &Group, k: usize, budget: &Budget) -> Result<Group> {
    let n = g.degree();
    if n > budget.exhaustive_degree {
        return Err(Error::Budget {
            engine: "exhaustive closure",
            quantity: "degree".into(),
            needed: n as u128,
            limit: budget.exhaustive_degree as u128,
        });
    }
    let cols = colorings_up_to(g, k, budget)?;
    let mut chain = StabChain::new(n, g.generators());
    let mut found = Vec::new();
    for_each_permutation(n, |sigma| {
        // lower arities are implied by arity k; they only reject early
        if !preserves(&cols[0], sigma) {
            return true;
        }
        let p = Permutation::from_images_unchecked(sigma.to_vec());
        if chain.contains(&p) {
            return true;
        }
        if cols[1..].iter().all(|c| preserves(c, sigma)) {
            chain.extend(&p);
            found.push(p);
        }
        true
    });
    Ok(assemble(g, found))
}

fn assemble(g: &Group, found: Vec<Permutation>) -> Group {
    let mut gens = g.generators().to_vec();
    gens.extend(found);
    gens.sort();
    gens.dedup();
    Group::new(g.degree(), gens).expect("same degree").reduced()
}

const NONE: usize = usize::MAX;

/// Color tables used to prune partial assignments.
struct Tables {
    n: usize,
    /// `Ω^1` coloring when k = 1, otherwise the `Ω^2` coloring.
    low: Vec<u32>,
    high: Option<OrbitColoring>,
}

impl Tables {
    fn c2(&self, a: usize, b: usize) -> u32 {
        self.low[a * self.n + b]
    }
}

struct Search<'a> {
    t: &'a Tables,
    k: usize,
    img: Vec<usize>,
    assigned: Vec<usize>,
}

impl Search<'_> {
    fn new(t: &Tables, k: usize) -> Search<'_> {
        Search {
            t,
            k,
            img: vec![NONE; t.n],
            assigned: Vec::new(),
        }
    }

    fn initial_domains(&self) -> Vec<Vec<usize>> {
        let n = self.t.n;
        (0..n)
            .map(|z| {
                (0..n)
                    .filter(|&y| {
                        if self.k == 1 {
                            self.t.low[z] == self.t.low[y]
                        } else {
                            self.t.c2(z, z) == self.t.c2(y, y)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Arity-k check of all tuples over assigned points that involve `x`,
    /// with `x -> y` tentatively set.
    fn high_ok(&self, x: usize) -> bool {
        let Some(col) = &self.t.high else {
            return true;
        };
        fn rec(s: &Search, col: &OrbitColoring, x: usize, left: usize, src: usize, dst: usize, hit: bool) -> bool {
            let n = s.t.n;
            if left == 0 {
                return !hit || col.colors[src] == col.colors[dst];
            }
            for &z in s.assigned.iter().chain(std::iter::once(&x)) {
                let h = hit || z == x;
                // tuples not touching x were checked earlier
                if left == 1 && !h {
                    continue;
                }
                if !rec(s, col, x, left - 1, src * n + z, dst * n + s.img[z], h) {
                    return false;
                }
            }
            true
        }
        rec(self, col, x, self.k, 0, 0, false)
    }

    /// Sets `x -> y` and narrows the domains; `None` if some domain of an
    /// unassigned point empties or an arity-k constraint breaks.
    fn assign(&mut self, x: usize, y: usize, doms: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
        self.img[x] = y;
        if !self.high_ok(x) {
            self.img[x] = NONE;
            return None;
        }
        let mut next = Vec::with_capacity(doms.len());
        for (z, dom) in doms.iter().enumerate() {
            if self.img[z] != NONE {
                next.push(Vec::new());
                continue;
            }
            let d: Vec<usize> = if self.k == 1 {
                dom.iter().copied().filter(|&w| w != y).collect()
            } else {
                let (a, b) = (self.t.c2(x, z), self.t.c2(z, x));
                dom.iter()
                    .copied()
                    .filter(|&w| w != y && self.t.c2(y, w) == a && self.t.c2(w, y) == b)
                    .collect()
            };
            if d.is_empty() {
                self.img[x] = NONE;
                return None;
            }
            next.push(d);
        }
        self.assigned.push(x);
        Some(next)
    }

    fn unassign(&mut self, x: usize) {
        debug_assert_eq!(self.assigned.last(), Some(&x));
        self.assigned.pop();
        self.img[x] = NONE;
    }

    /// Depth-first completion; most constrained point first.
    fn complete(&mut self, doms: &[Vec<usize>]) -> Option<Vec<usize>> {
        let next = (0..self.t.n)
            .filter(|&z| self.img[z] == NONE)
            .min_by_key(|&z| (doms[z].len(), z));
        let Some(z) = next else {
            return Some(self.img.clone());
        };
        for &w in &doms[z] {
            if let Some(nd) = self.assign(z, w, doms) {
                let r = self.complete(&nd);
                self.unassign(z);
                if r.is_some() {
                    return r;
                }
            }
        }
        None
    }
}

/// Backtracking over point images. Level `i` fixes points `0..i` and looks
/// for one element per missing coset of the current stabilizer, starting
/// from the deepest level so that each level is complete once left.
fn backtrack(g: &Group, k: usize, budget: &Budget) -> Result<Group> {
    let n = g.degree();
    budget.check_tuples("backtracking closure", n, k)?;
    let tables = if k == 1 {
        Tables {
            n,
            low: actions::orbit_coloring(g, 1, budget)?.colors,
            high: None,
        }
    } else {
        Tables {
            n,
            low: actions::orbit_coloring(g, 2, budget)?.colors,
            high: if k >= 3 {
                Some(actions::orbit_coloring(g, k, budget)?)
            } else {
                None
            },
        }
    };
    let order: Vec<usize> = (0..n).collect();
    let mut chain = StabChain::with_base_prefix(n, g.generators(), &order);
    let mut found = Vec::new();
    for i in (0..n).rev() {
        let mut s = Search::new(&tables, k);
        let mut doms = s.initial_domains();
        for &b in &order[..i] {
            doms = s.assign(b, b, &doms).expect("identity is consistent");
        }
        let beta = order[i];
        let mut dead = vec![false; n];
        for &gamma in &doms[beta].clone() {
            if dead[gamma] || chain.transversal_element(i, gamma).is_some() {
                continue;
            }
            let hit = match s.assign(beta, gamma, &doms) {
                Some(nd) => {
                    let r = s.complete(&nd);
                    s.unassign(beta);
                    r
                }
                None => None,
            };
            match hit {
                Some(images) => {
                    let p = Permutation::from_images_unchecked(images);
                    chain.extend(&p);
                    found.push(p);
                }
                None => {
                    let stab = Group::new(n, chain.generators_at(i).to_vec()).expect("same degree");
                    for x in stab.orbit(gamma) {
                        dead[x] = true;
                    }
                }
            }
        }
    }
    Ok(assemble(g, found))
}

/// Witness that two groups are not k-equivalent: tuples `first` and
/// `second` lie in one orbit of `together_in` and in different orbits of
/// the other group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceWitness {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    /// 0 for the first group, 1 for the second.
    pub together_in: usize,
}

pub fn are_k_equivalent(g: &Group, h: &Group, k: usize, budget: &Budget) -> Result<Option<EquivalenceWitness>> {
    if g.degree() != h.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: h.degree(),
        });
    }
    let cg = actions::orbit_coloring(g, k, budget)?;
    let ch = actions::orbit_coloring(h, k, budget)?;
    Ok(coloring_witness(&cg, &ch))
}

/// `None` when the colorings are the same partition.
pub fn coloring_witness(cg: &OrbitColoring, ch: &OrbitColoring) -> Option<EquivalenceWitness> {
    let t = cg.partition_difference(ch)?;
    let n = cg.degree;
    let rep = |c: &OrbitColoring| c.colors.iter().position(|&x| x == c.colors[t]).unwrap();
    let (s, together_in) = if rep(cg) < t { (rep(cg), 0) } else { (rep(ch), 1) };
    Some(EquivalenceWitness {
        first: actions::decode_tuple(n, cg.k, s),
        second: actions::decode_tuple(n, cg.k, t),
        together_in,
    })
}

pub fn is_k_closed(g: &Group, k: usize, budget: &Budget) -> Result<bool> {
    Ok(k_closure(g, k, budget)?.group.order() == g.order())
}

/// Least `k` with `G^(k) = G`; at most one more than the base size.
pub fn stabilization_index(g: &Group, budget: &Budget) -> Result<usize> {
    let bound = g.base_size() + 1;
    for k in 1..bound {
        if is_k_closed(g, k, budget)? {
            return Ok(k);
        }
    }
    Ok(bound)
}

/// How ordered partitions into at most `r` parts are modeled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionReading {
    /// All colorings `Γ -> {0..r-1}`.
    LabeledWithEmpty,
    /// Colorings whose image is an initial segment `{0..j-1}`, `j <= r`.
    Surjective,
}

fn coloring_space(n: usize, r: usize, reading: PartitionReading, budget: &Budget) -> Result<Vec<Vec<u8>>> {
    let total = budget.check_tuples("partition closure", r, n)? as usize;
    let mut out = Vec::new();
    for idx in 0..total {
        let c: Vec<u8> = actions::decode_tuple(r, n, idx).into_iter().map(|x| x as u8).collect();
        if reading == PartitionReading::Surjective {
            let max = *c.iter().max().unwrap() as usize;
            if (0..=max).any(|v| !c.contains(&(v as u8))) {
                continue;
            }
        }
        out.push(c);
    }
    Ok(out)
}

/// `K^[r]` under the labeled reading.
pub fn partition_r_closure(kg: &Group, r: usize, budget: &Budget) -> Result<Group> {
    partition_r_closure_with(kg, r, PartitionReading::LabeledWithEmpty, budget)
}

/// Scans `Sym(Γ)` for permutations mapping every `K`-orbit of
/// partitions to itself. With empty parts allowed, `r > |Γ|` adds nothing
/// new, so `r` is capped at `|Γ|`.
pub fn partition_r_closure_with(
    kg: &Group,
    r: usize,
    reading: PartitionReading,
    budget: &Budget,
) -> Result<Group> {
    let n = kg.degree();
    if r == 0 {
        return Err(Error::InvalidParameter("r must be positive".into()));
    }
    if n > budget.partition_degree {
        return Err(Error::Budget {
            engine: "partition closure",
            quantity: "degree".into(),
            needed: n as u128,
            limit: budget.partition_degree as u128,
        });
    }
    let r = r.min(n);
    let space = coloring_space(n, r, reading, budget)?;
    let index: std::collections::HashMap<&[u8], usize> =
        space.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    // (c^σ)(x^σ) = c(x)
    let act = |c: &[u8], images: &[usize]| -> Vec<u8> {
        let mut out = vec![0u8; n];
        for (x, &v) in c.iter().enumerate() {
            out[images[x]] = v;
        }
        out
    };
    let mut parent: Vec<usize> = (0..space.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for gen in kg.generators() {
        for (i, c) in space.iter().enumerate() {
            let j = index[act(c, gen.images()).as_slice()];
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        }
    }
    let class: Vec<usize> = (0..space.len()).map(|i| find(&mut parent, i)).collect();
    let mut chain = StabChain::new(n, kg.generators());
    let mut found = Vec::new();
    for_each_permutation(n, |sigma| {
        let p = Permutation::from_images_unchecked(sigma.to_vec());
        if chain.contains(&p) {
            return true;
        }
        let ok = space
            .iter()
            .enumerate()
            .all(|(i, c)| class[index[act(c, sigma).as_slice()]] == class[i]);
        if ok {
            chain.extend(&p);
            found.push(p);
        }
        true
    });
    Ok(assemble(kg, found))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        let c: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &c).unwrap()
    }

    fn random_group(rng: &mut ChaCha8Rng, n: usize) -> Group {
        let gens = (0..rng.gen_range(1..=2))
            .map(|_| {
                let mut v: Vec<usize> = (0..n).collect();
                // short random products keep most groups proper
                v.partial_shuffle(rng, 3);
                Permutation::from_images(v).unwrap()
            })
            .collect();
        Group::new(n, gens).unwrap()
    }

    use rand::Rng;

    #[test]
    fn heap_enumerates_everything() {
        let mut seen = std::collections::HashSet::new();
        for_each_permutation(5, |p| {
            seen.insert(p.to_vec());
            true
        });
        assert_eq!(seen.len(), 120);
    }

    #[test]
    fn regular_c4() {
        let b = Budget::default();
        let c4 = Group::cyclic(4);
        for engine in [Engine::Exhaustive, Engine::Backtracking] {
            let c = k_closure_with(&c4, 2, engine, &b).unwrap();
            assert!(c.group.equals(&c4).unwrap());
            let c = k_closure_with(&c4, 1, engine, &b).unwrap();
            assert_eq!(c.group.order(), 24u32.into());
        }
        assert_eq!(stabilization_index(&c4, &b).unwrap(), 2);
        assert_eq!(stabilization_index(&Group::symmetric(5), &b).unwrap(), 1);
    }

    #[test]
    fn engines_agree_on_random_groups() {
        let b = Budget::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.gen_range(2..=7);
            let g = random_group(&mut rng, n);
            for k in 1..=3 {
                let e = k_closure_with(&g, k, Engine::Exhaustive, &b).unwrap().group;
                let t = k_closure_with(&g, k, Engine::Backtracking, &b).unwrap().group;
                assert!(e.equals(&t).unwrap(), "{g:?} k={k}");
                assert!(g.is_subgroup_of(&e).unwrap());
            }
        }
    }

    #[test]
    fn shortcut_matches_exhaustive() {
        let b = Budget::default();
        let groups = [
            Group::alternating(5),
            Group::alternating(6),
            Group::dihedral(5),
            Group::new(7, vec![perm(7, &[&[0, 1, 2, 3, 4, 5, 6]]), perm(7, &[&[1, 2, 4], &[3, 6, 5]])]).unwrap(),
        ];
        for g in &groups {
            let m = actions::transitivity_degree(g);
            for k in 1..=m {
                let s = k_closure_with(g, k, Engine::TransitivityShortcut, &b).unwrap().group;
                let e = k_closure_with(g, k, Engine::Exhaustive, &b).unwrap().group;
                assert!(s.equals(&e).unwrap());
            }
            assert!(k_closure_with(g, m + 1, Engine::TransitivityShortcut, &b).is_err());
        }
    }

    #[test]
    fn witness_separates_orbits() {
        let b = Budget::default();
        let c4 = Group::cyclic(4);
        let s4 = Group::symmetric(4);
        assert!(are_k_equivalent(&c4, &c4, 3, &b).unwrap().is_none());
        let w = are_k_equivalent(&c4, &s4, 2, &b).unwrap().unwrap();
        let cg = actions::orbit_coloring(&c4, 2, &b).unwrap();
        let ch = actions::orbit_coloring(&s4, 2, &b).unwrap();
        let same = |c: &OrbitColoring| c.color(&w.first) == c.color(&w.second);
        assert_eq!(same(&cg), w.together_in == 0);
        assert_eq!(same(&ch), w.together_in == 1);
        assert!(are_k_equivalent(&c4, &Group::symmetric(5), 2, &b).is_err());
    }

    #[test]
    fn partition_closure_examples() {
        let b = Budget::default();
        let a4 = Group::alternating(4);
        assert_eq!(partition_r_closure(&a4, 2, &b).unwrap().order(), 24u32.into());
        assert!(partition_r_closure(&a4, 4, &b).unwrap().equals(&a4).unwrap());
        let s4 = Group::symmetric(4);
        assert_eq!(partition_r_closure(&s4, 3, &b).unwrap().order(), 24u32.into());
        let c5 = Group::cyclic(5);
        assert!(partition_r_closure(&c5, 7, &b).unwrap().equals(&c5).unwrap());
    }

    #[test]
    fn partition_readings_agree_for_r_at_most_degree() {
        let b = Budget::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let n = rng.gen_range(2..=5);
            let g = random_group(&mut rng, n);
            for r in 1..=n {
                let a = partition_r_closure_with(&g, r, PartitionReading::LabeledWithEmpty, &b).unwrap();
                let s = partition_r_closure_with(&g, r, PartitionReading::Surjective, &b).unwrap();
                assert!(a.equals(&s).unwrap(), "{g:?} r={r}");
            }
        }
    }
}
