//! Subgroup lattices of small groups, for exhaustive test grids.
//!
//! Elements are listed once and subgroups are bitsets over them. Every
//! subgroup is generated by its cyclic subgroups of prime-power order, so
//! the lattice is the closure of the trivial group under joins with those.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;

type Bits = Vec<u64>;

fn has(bits: &Bits, i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

fn set(bits: &mut Bits, i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

struct Table {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    mul: Vec<u32>,
    words: usize,
}

impl Table {
    fn new(g: &Group, limit: u64) -> Result<Self> {
        let mut elements = g.elements(limit)?;
        elements.sort();
        let index: HashMap<Permutation, usize> =
            elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = index[&elements[i].then(&elements[j])] as u32;
            }
        }
        Ok(Self {
            elements,
            index,
            mul,
            words: n.div_ceil(64),
        })
    }

    fn len(&self) -> usize {
        self.elements.len()
    }

    fn generate(&self, gens: &[usize]) -> Bits {
        let n = self.len();
        let id = self.index[&Permutation::identity(self.elements[0].degree())];
        let mut bits = vec![0u64; self.words];
        set(&mut bits, id);
        let mut list = vec![id];
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &s in gens {
                let y = self.mul[x * n + s] as usize;
                if !has(&bits, y) {
                    set(&mut bits, y);
                    list.push(y);
                }
            }
        }
        bits
    }
}

/// All subgroups of a small group with their conjugacy classes.
pub struct SubgroupCatalog {
    pub subgroups: Vec<Group>,
    /// Class id per subgroup; ids follow the first member's position.
    pub class_of: Vec<usize>,
    pub num_classes: usize,
}

impl SubgroupCatalog {
    /// One subgroup per conjugacy class, the first found in each.
    pub fn representatives(&self) -> Vec<Group> {
        let mut seen = HashSet::new();
        self.subgroups
            .iter()
            .zip(&self.class_of)
            .filter(|(_, c)| seen.insert(**c))
            .map(|(g, _)| g.clone())
            .collect()
    }
}

/// Enumerates every subgroup of `g`, which may have at most `limit`
/// elements.
pub fn subgroup_catalog(g: &Group, limit: u64) -> Result<SubgroupCatalog> {
    if g.order() > limit.into() {
        return Err(Error::Budget {
            engine: "subgroup lattice",
            quantity: "group order".into(),
            needed: g.order_u64().map(u128::from).unwrap_or(u128::MAX),
            limit: limit as u128,
        });
    }
    let t = Table::new(g, limit)?;
    let n = t.len();

    // one generator per cyclic subgroup of prime-power order
    let mut cyclic: Vec<(usize, Bits)> = Vec::new();
    let mut cyclic_seen = HashSet::new();
    for (i, e) in t.elements.iter().enumerate() {
        let o = e.order();
        if o == 1 || !is_prime_power(o) {
            continue;
        }
        let bits = t.generate(&[i]);
        if cyclic_seen.insert(bits.clone()) {
            cyclic.push((i, bits));
        }
    }

    let trivial = t.generate(&[]);
    let mut found: Vec<(Bits, Vec<usize>)> = vec![(trivial.clone(), vec![])];
    let mut ids: HashMap<Bits, usize> = HashMap::from([(trivial, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(h) = queue.pop_front() {
        for (c, _) in &cyclic {
            if has(&found[h].0, *c) {
                continue;
            }
            let mut gens = found[h].1.clone();
            gens.push(*c);
            let bits = t.generate(&gens);
            if !ids.contains_key(&bits) {
                ids.insert(bits.clone(), found.len());
                queue.push_back(found.len());
                found.push((bits, gens));
            }
        }
    }

    // conjugacy classes by union-find under the generators of g
    let mut parent: Vec<usize> = (0..found.len()).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for tau in g.generators() {
        let map: Vec<usize> = t.elements.iter().map(|e| t.index[&tau.conjugate(e)]).collect();
        for (i, (bits, _)) in found.iter().enumerate() {
            let mut img = vec![0u64; t.words];
            for x in 0..n {
                if has(bits, x) {
                    set(&mut img, map[x]);
                }
            }
            let j = ids[&img];
            let (a, b) = (root(&mut parent, i), root(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut class_ids = HashMap::new();
    let class_of: Vec<usize> = (0..found.len())
        .map(|i| {
            let r = root(&mut parent, i);
            let next = class_ids.len();
            *class_ids.entry(r).or_insert(next)
        })
        .collect();

    let subgroups = found
        .iter()
        .map(|(_, gens)| {
            let perms = gens.iter().map(|&i| t.elements[i].clone()).collect();
            Group::new(g.degree(), perms).expect("same degree").reduced()
        })
        .collect();
    Ok(SubgroupCatalog {
        subgroups,
        class_of,
        num_classes: class_ids.len(),
    })
}

/// Every subgroup of `Sym(n)`, `n <= 6`.
pub fn subgroups_of_symmetric(n: usize) -> Result<SubgroupCatalog> {
    if n > 6 {
        return Err(Error::Budget {
            engine: "subgroup lattice",
            quantity: "degree".into(),
            needed: n as u128,
            limit: 6,
        });
    }
    subgroup_catalog(&Group::symmetric(n), 720)
}

fn is_prime_power(mut o: u64) -> bool {
    let mut p = 2;
    while p * p <= o && o % p != 0 {
        p += 1;
    }
    if o % p != 0 {
        return true;
    }
    while o % p == 0 {
        o /= p;
    }
    o == 1
}
