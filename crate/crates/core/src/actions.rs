//! Orbits on points and tuples, block systems and induced actions.

use std::io::{Read, Write};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;

/// Orbits sorted by smallest point, each sorted.
pub fn orbits(g: &Group) -> Vec<Vec<usize>> {
    let n = g.degree();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for p in 0..n {
        if seen[p] {
            continue;
        }
        let mut orbit = g.orbit(p);
        for &x in &orbit {
            seen[x] = true;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Mixed-radix tuple index, first coordinate most significant.
pub fn encode_tuple(degree: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * degree + x)
}

pub fn decode_tuple(degree: usize, k: usize, mut index: usize) -> Vec<usize> {
    let mut t = vec![0; k];
    for slot in t.iter_mut().rev() {
        *slot = index % degree;
        index /= degree;
    }
    t
}

pub(crate) fn tuple_image(degree: usize, k: usize, index: usize, g: &Permutation) -> usize {
    let mut rest = index;
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..k {
        out += g.apply(rest % degree) * scale;
        rest /= degree;
        scale *= degree;
    }
    out
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n as u32).collect())
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.0[x as usize] != x {
            let parent = self.0[x as usize];
            self.0[x as usize] = self.0[parent as usize];
            x = parent;
        }
        x
    }

    /// The smaller root survives, so roots are orbit minima.
    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.0[rb as usize] = ra;
        } else if rb < ra {
            self.0[ra as usize] = rb;
        }
    }
}

/// Partition of `Ω^k` into orbits, labeled canonically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitColoring {
    pub degree: usize,
    pub k: usize,
    pub colors: Vec<u32>,
    pub num_colors: usize,
}

impl OrbitColoring {
    pub fn color(&self, tuple: &[usize]) -> u32 {
        self.colors[encode_tuple(self.degree, tuple)]
    }

    /// Relabels an arbitrary labeling so ids increase with the smallest
    /// index of each class.
    pub fn canonical(degree: usize, k: usize, labels: &[u32]) -> Self {
        let mut map = std::collections::HashMap::new();
        let colors: Vec<u32> = labels
            .iter()
            .map(|&l| {
                let next = map.len() as u32;
                *map.entry(l).or_insert(next)
            })
            .collect();
        Self {
            degree,
            k,
            colors,
            num_colors: map.len(),
        }
    }

    /// Some tuple whose class differs between the two colorings, if the
    /// partitions differ.
    pub fn partition_difference(&self, other: &Self) -> Option<usize> {
        // canonical labels make partition equality coincide with label equality
        self.colors
            .iter()
            .zip(&other.colors)
            .position(|(a, b)| a != b)
    }

    pub fn write_binary<W: Write>(&self, mut w: W) -> Result<()> {
        for v in [self.degree, self.k, self.num_colors] {
            w.write_all(&(v as u32).to_le_bytes())?;
        }
        for &c in &self.colors {
            w.write_all(&c.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(mut r: R) -> Result<Self> {
        let mut word = [0u8; 4];
        let mut next = |r: &mut R| -> Result<u32> {
            r.read_exact(&mut word)?;
            Ok(u32::from_le_bytes(word))
        };
        let degree = next(&mut r)? as usize;
        let k = next(&mut r)? as usize;
        let num_colors = next(&mut r)? as usize;
        let len = degree
            .checked_pow(k as u32)
            .ok_or_else(|| Error::Parse("coloring header overflows".into()))?;
        let colors = (0..len).map(|_| next(&mut r)).collect::<Result<Vec<_>>>()?;
        let c = Self::canonical(degree, k, &colors);
        if c.colors != colors || c.num_colors != num_colors {
            return Err(Error::Parse("coloring is not canonical".into()));
        }
        Ok(c)
    }
}

pub fn orbit_coloring(g: &Group, k: usize, budget: &Budget) -> Result<OrbitColoring> {
    let n = g.degree();
    let size = budget.check_tuples("orbit coloring", n, k)? as usize;
    if size > u32::MAX as usize {
        return Err(Error::Budget {
            engine: "orbit coloring",
            quantity: format!("degree^k = {n}^{k}"),
            needed: size as u128,
            limit: u32::MAX as u128,
        });
    }
    let mut uf = UnionFind::new(size);
    for gen in g.generators() {
        for t in 0..size {
            uf.union(t as u32, tuple_image(n, k, t, gen) as u32);
        }
    }
    let roots: Vec<u32> = (0..size as u32).map(|t| uf.find(t)).collect();
    Ok(OrbitColoring::canonical(n, k, &roots))
}

/// Largest `m` such that `g` is transitive on distinct `m`-tuples; 0 when
/// intransitive.
pub fn transitivity_degree(g: &Group) -> usize {
    let n = g.degree();
    let prefix: Vec<usize> = (0..n).collect();
    let chain = crate::chain::StabChain::with_base_prefix(n, g.generators(), &prefix);
    // level i is the stabilizer of 0..i, so G is m-transitive iff level i
    // has orbit of size n - i for every i < m
    let sizes = chain.transversal_sizes();
    let mut m = 0;
    while m < n && sizes[m] == n - m {
        m += 1;
    }
    m
}

/// Size of the orbit of a tuple of distinct points, by breadth-first search
/// over a bitset of `degree^k` slots.
pub fn tuple_orbit_size(g: &Group, seed: &[usize], budget: &Budget) -> Result<u64> {
    let n = g.degree();
    let k = seed.len();
    let size = budget.check_tuples("tuple orbit", n, k)? as usize;
    let mut seen = vec![0u64; size.div_ceil(64)];
    let start = encode_tuple(n, seed);
    seen[start / 64] |= 1 << (start % 64);
    let mut queue = vec![start as u32];
    let mut head = 0;
    while head < queue.len() {
        let t = queue[head] as usize;
        head += 1;
        for gen in g.generators() {
            let u = tuple_image(n, k, t, gen);
            if seen[u / 64] & (1 << (u % 64)) == 0 {
                seen[u / 64] |= 1 << (u % 64);
                queue.push(u as u32);
            }
        }
    }
    Ok(queue.len() as u64)
}

/// A `G`-invariant partition into equal cells, sorted by smallest point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<usize>>,
    pub block_of: Vec<usize>,
}

impl BlockSystem {
    pub fn from_cells(degree: usize, cells: Vec<Vec<usize>>) -> Result<Self> {
        let mut blocks: Vec<Vec<usize>> = cells
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        blocks.sort();
        let mut block_of = vec![usize::MAX; degree];
        for (i, c) in blocks.iter().enumerate() {
            if c.is_empty() || c.len() != blocks[0].len() {
                return Err(Error::InvalidParameter("cells must have equal positive size".into()));
            }
            for &x in c {
                if x >= degree || block_of[x] != usize::MAX {
                    return Err(Error::InvalidParameter("cells must partition the points".into()));
                }
                block_of[x] = i;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(Error::InvalidParameter("cells must cover every point".into()));
        }
        Ok(Self { blocks, block_of })
    }

    pub fn is_invariant(&self, g: &Group) -> bool {
        g.generators().iter().all(|p| {
            self.blocks.iter().all(|c| {
                let target = self.block_of[p.apply(c[0])];
                c.iter().all(|&x| self.block_of[p.apply(x)] == target)
            })
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == 1 || self.blocks[0].len() == 1
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }
}

/// Finest `G`-invariant partition (not necessarily of equal cells for
/// intransitive `G`) in which all of `seed` lie in one cell.
fn block_closure(g: &Group, seed: &[usize]) -> Vec<usize> {
    let n = g.degree();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut queue = Vec::new();
    for &s in &seed[1..] {
        let (a, b) = (find(&mut parent, seed[0]), find(&mut parent, s));
        if a != b {
            parent[a.max(b)] = a.min(b);
            queue.push((seed[0], s));
        }
    }
    while let Some((x, y)) = queue.pop() {
        for p in g.generators() {
            let (a, b) = (find(&mut parent, p.apply(x)), find(&mut parent, p.apply(y)));
            if a != b {
                parent[a.max(b)] = a.min(b);
                queue.push((p.apply(x), p.apply(y)));
            }
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

fn system_from_roots(roots: &[usize]) -> BlockSystem {
    let n = roots.len();
    let mut cells: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for x in 0..n {
        cells.entry(roots[x]).or_default().push(x);
    }
    BlockSystem::from_cells(n, cells.into_values().collect()).expect("transitive closure has equal cells")
}

pub fn minimal_block_system(g: &Group, a: usize, b: usize) -> Result<Option<BlockSystem>> {
    if !g.is_transitive() {
        return Err(Error::Intransitive);
    }
    if a == b || a >= g.degree() || b >= g.degree() {
        return Err(Error::InvalidParameter("need two distinct points".into()));
    }
    let sys = system_from_roots(&block_closure(g, &[a, b]));
    Ok(if sys.blocks.len() == 1 { None } else { Some(sys) })
}

/// Every nontrivial block system of a transitive group.
pub fn block_systems(g: &Group) -> Result<Vec<BlockSystem>> {
    if !g.is_transitive() {
        return Err(Error::Intransitive);
    }
    let n = g.degree();
    let mut found: Vec<BlockSystem> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = vec![vec![0]];
    // each block through 0 is the closure of a smaller block and one point
    while let Some(block) = frontier.pop() {
        for c in 0..n {
            if block.contains(&c) {
                continue;
            }
            let mut seed = block.clone();
            seed.push(c);
            let sys = system_from_roots(&block_closure(g, &seed));
            if sys.blocks.len() == 1 || found.contains(&sys) {
                continue;
            }
            frontier.push(sys.blocks[sys.block_of[0]].clone());
            found.push(sys);
        }
    }
    found.sort_by_key(|s| (s.block_size(), s.blocks.clone()));
    Ok(found)
}

pub fn is_primitive(g: &Group) -> bool {
    if !g.is_transitive() {
        return false;
    }
    let n = g.degree();
    (1..n).all(|b| matches!(minimal_block_system(g, 0, b), Ok(None)))
}

/// Setwise stabilizer of `set` together with its orbit of images.
pub fn set_stabilizer(g: &Group, set: &[usize]) -> Result<(Group, Vec<Vec<usize>>)> {
    let mut start = set.to_vec();
    start.sort_unstable();
    g.stabilizer_in_action(
        start,
        |s, p| {
            let mut v: Vec<usize> = s.iter().map(|&x| p.apply(x)).collect();
            v.sort_unstable();
            v
        },
        usize::MAX,
    )
}

/// `G^Δ`: the action of the setwise stabilizer of the block `Δ` on `Δ`,
/// with points relabeled in increasing order.
pub fn induced_on_block(g: &Group, delta: &[usize]) -> Result<Group> {
    let (stab, images) = set_stabilizer(g, delta)?;
    let mut mark = vec![usize::MAX; g.degree()];
    for (i, img) in images.iter().enumerate() {
        for &x in img {
            if mark[x] != usize::MAX {
                return Err(Error::NotABlock(format!("{delta:?}")));
            }
            mark[x] = i;
        }
    }
    let mut d = delta.to_vec();
    d.sort_unstable();
    stab.restrict_to(&d)
}

/// `G^{Ω/B}`: the action on block indices.
pub fn induced_on_quotient(g: &Group, b: &BlockSystem) -> Result<Group> {
    if b.block_of.len() != g.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: b.block_of.len(),
        });
    }
    if !b.is_invariant(g) {
        return Err(Error::NotInvariant);
    }
    let gens = g
        .generators()
        .iter()
        .map(|p| {
            Permutation::from_images_unchecked(
                b.blocks.iter().map(|c| b.block_of[p.apply(c[0])]).collect(),
            )
        })
        .collect();
    Group::new(b.blocks.len(), gens)
}
