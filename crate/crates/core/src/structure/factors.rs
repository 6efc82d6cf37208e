//! Composition factors.
//!
//! The search works on pairs `(A, K)` with `K` normal in `A`, standing for
//! the quotient `A/K`. A non-perfect pair splits through `A'K`. A perfect
//! pair splits through the normal closure of `K` and an element of prime
//! order modulo `K`. Quotients are only built as permutation groups when a
//! label needs a faithful action.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{alt_order, class_representatives};
use crate::actions;
use crate::budget::Budget;
use crate::group::Group;
use crate::perm::Permutation;

/// Random elements tried before an exhaustive class search.
const SPLIT_TRIES: usize = 24;
/// Largest quotient realized by its regular coset action.
const COSET_DEGREE: usize = 360;
/// Largest orbit searched for block systems.
const BLOCK_DEGREE: usize = 720;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", content = "value")]
pub enum FactorLabel {
    Cyclic(u64),
    Alt(usize),
    Simple(#[serde(serialize_with = "crate::io::decimal::serialize")] BigUint),
    /// No proper normal subgroup was found, but simplicity is unproven.
    Unidentified(#[serde(serialize_with = "crate::io::decimal::serialize")] BigUint),
}

impl fmt::Display for FactorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorLabel::Cyclic(p) => write!(f, "C{p}"),
            FactorLabel::Alt(m) => write!(f, "Alt({m})"),
            FactorLabel::Simple(o) => write!(f, "Simple({o})"),
            FactorLabel::Unidentified(o) => write!(f, "Unidentified({o})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factor {
    #[serde(serialize_with = "crate::io::decimal::serialize")]
    pub order: BigUint,
    pub label: FactorLabel,
}

/// Where a factor was found: `top/bottom` has the factor as its top
/// composition factor. For `Alt(m)` factors `action` holds the images of
/// `top`'s generators in a faithful action of `top/bottom` on `m` points.
#[derive(Debug, Clone)]
pub struct Section {
    pub top: Group,
    pub bottom: Group,
    pub factor: Factor,
    pub action: Option<Vec<Permutation>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorReport {
    pub factors: Vec<Factor>,
    pub solvable: bool,
    /// False when some factor is `Unidentified`.
    pub complete: bool,
    #[serde(skip)]
    pub sections: Vec<Section>,
}

impl FactorReport {
    pub fn order(&self) -> BigUint {
        self.factors.iter().map(|f| &f.order).product()
    }

    /// The labels as a sorted multiset.
    pub fn sorted_labels(&self) -> Vec<FactorLabel> {
        let mut v: Vec<FactorLabel> = self.factors.iter().map(|f| f.label.clone()).collect();
        v.sort();
        v
    }
}

pub fn composition_factors(g: &Group, budget: &Budget) -> FactorReport {
    composition_factors_seeded(g, 0, budget)
}

/// The seed drives the random choice of splitting elements, so different
/// seeds usually walk different composition series.
pub fn composition_factors_seeded(g: &Group, seed: u64, budget: &Budget) -> FactorReport {
    let mut search = Search {
        rng: ChaCha8Rng::seed_from_u64(seed),
        budget,
        sections: Vec::new(),
    };
    search.run(g.clone(), Group::trivial(g.degree()));
    let factors: Vec<Factor> = search.sections.iter().map(|s| s.factor.clone()).collect();
    FactorReport {
        solvable: factors.iter().all(|f| matches!(f.label, FactorLabel::Cyclic(_))),
        complete: !factors.iter().any(|f| matches!(f.label, FactorLabel::Unidentified(_))),
        factors,
        sections: search.sections,
    }
}

struct Search<'a> {
    rng: ChaCha8Rng,
    budget: &'a Budget,
    sections: Vec<Section>,
}

impl Search<'_> {
    fn push(&mut self, top: &Group, bottom: &Group, order: BigUint, label: FactorLabel, action: Option<Vec<Permutation>>) {
        self.sections.push(Section {
            top: top.clone(),
            bottom: bottom.clone(),
            factor: Factor { order, label },
            action,
        });
    }

    fn run(&mut self, a: Group, k: Group) {
        let (oa, ok) = (a.order(), k.order());
        if oa == ok {
            return;
        }
        let index = &oa / &ok;
        if let Some(p) = index.to_u64().filter(|&p| is_prime(p)) {
            self.push(&a, &k, index, FactorLabel::Cyclic(p), None);
            return;
        }
        let mut seeds = commutators(&a);
        seeds.extend(k.generators().iter().cloned());
        let m = a.normal_closure(&seeds);
        let om = m.order();
        if om < oa {
            for p in prime_factors(&oa / &om) {
                self.push(&a, &m, p.into(), FactorLabel::Cyclic(p), None);
            }
            self.run(m, k);
            return;
        }
        for _ in 0..SPLIT_TRIES {
            let x = a.random_element(&mut self.rng);
            if let Some(n) = proper_closure(&a, &k, &x) {
                self.run(a, n.clone());
                self.run(n, k);
                return;
            }
        }
        if let Some(m) = alt_degree(&index) {
            if let Some(action) = alt_action(&a, &k, m, &index) {
                self.push(&a, &k, index, FactorLabel::Alt(m), Some(action));
                return;
            }
        }
        match class_representatives(&a, self.budget.elements) {
            Ok(reps) => {
                for x in reps {
                    if let Some(n) = proper_closure(&a, &k, &x) {
                        self.run(a, n.clone());
                        self.run(n, k);
                        return;
                    }
                }
                self.push(&a, &k, index.clone(), FactorLabel::Simple(index), None);
            }
            Err(_) => self.push(&a, &k, index.clone(), FactorLabel::Unidentified(index), None),
        }
    }
}

fn commutators(a: &Group) -> Vec<Permutation> {
    let g = a.generators();
    let mut out = Vec::new();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let c = Permutation::commutator(&g[i], &g[j]);
            if !c.is_identity() {
                out.push(c);
            }
        }
    }
    out
}

/// The normal closure of `K` and a power of `x` of prime order modulo `K`,
/// when that is a proper subgroup of `A`.
fn proper_closure(a: &Group, k: &Group, x: &Permutation) -> Option<Group> {
    if k.contains_unchecked(x) {
        return None;
    }
    let mut o = x.order();
    for r in prime_factors(o.into()) {
        while o % r == 0 && k.contains_unchecked(&x.pow(o / r)) {
            o /= r;
        }
    }
    let r = prime_factors(o.into())[0];
    let mut seeds = k.generators().to_vec();
    seeds.push(x.pow(o / r));
    let n = a.normal_closure(&seeds);
    (n.order() < a.order()).then_some(n)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Prime factors with multiplicity, in increasing order.
pub(crate) fn prime_factors(mut x: BigUint) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while x > BigUint::from(1u32) {
        if BigUint::from(p) * BigUint::from(p) > x {
            out.push(x.to_u64().expect("group orders have small prime factors"));
            break;
        }
        while (&x % p).to_u64() == Some(0) {
            x /= p;
            out.push(p);
        }
        p += 1;
    }
    out
}

fn alt_degree(order: &BigUint) -> Option<usize> {
    let mut m = 5;
    loop {
        let a = alt_order(m);
        if &a == order {
            return Some(m);
        }
        if &a > order {
            return None;
        }
        m += 1;
    }
}

/// Images of `gens` on `points`, relabeled in the order given. Identity
/// images are kept so the result stays parallel to `gens`.
fn restrict_images(gens: &[Permutation], points: &[usize], degree: usize) -> Vec<Permutation> {
    let mut index = vec![usize::MAX; degree];
    for (i, &p) in points.iter().enumerate() {
        index[p] = i;
    }
    gens.iter()
        .map(|g| Permutation::from_images_unchecked(points.iter().map(|&p| index[g.apply(p)]).collect()))
        .collect()
}

/// A faithful action of `A/K` on `m` points, where `|A/K| = m!/2`.
fn alt_action(a: &Group, k: &Group, m: usize, target: &BigUint) -> Option<Vec<Permutation>> {
    for orbit in actions::orbits(a) {
        if orbit.len() < m || !k.generators().iter().all(|g| orbit.iter().all(|&x| g.apply(x) == x)) {
            continue;
        }
        let images = restrict_images(a.generators(), &orbit, a.degree());
        if let Some(act) = action_on_m_points(images, m, target) {
            return Some(act);
        }
    }
    if target.to_usize().is_some_and(|t| t <= COSET_DEGREE) {
        return action_on_m_points(coset_images(a, k), m, target);
    }
    None
}

/// Given generator images of a transitive faithful action of the quotient,
/// finds one on `m` points directly or through a block system.
fn action_on_m_points(images: Vec<Permutation>, m: usize, target: &BigUint) -> Option<Vec<Permutation>> {
    let d = images.first()?.degree();
    let img = Group::new(d, images.clone()).ok()?;
    if img.order() != *target {
        return None;
    }
    if d == m {
        return Some(images);
    }
    if d > BLOCK_DEGREE {
        return None;
    }
    for sys in actions::block_systems(&img).ok()? {
        if sys.blocks.len() != m {
            continue;
        }
        let on_blocks: Vec<Permutation> = images
            .iter()
            .map(|p| {
                Permutation::from_images_unchecked(sys.blocks.iter().map(|c| sys.block_of[p.apply(c[0])]).collect())
            })
            .collect();
        if Group::new(m, on_blocks.clone()).ok()?.order() == *target {
            return Some(on_blocks);
        }
    }
    None
}

/// Images of `A`'s generators acting on the right cosets of `K`.
fn coset_images(a: &Group, k: &Group) -> Vec<Permutation> {
    let chain = k.chain();
    let start = chain.canonical_coset_rep(&Permutation::identity(a.degree()));
    let mut index: HashMap<Permutation, usize> = HashMap::from([(start.clone(), 0)]);
    let mut reps = vec![start];
    let mut images: Vec<Vec<usize>> = vec![Vec::new(); a.generators().len()];
    let mut head = 0;
    while head < reps.len() {
        let y = reps[head].clone();
        head += 1;
        for (i, g) in a.generators().iter().enumerate() {
            let z = chain.canonical_coset_rep(&y.then(g));
            let next = index.len();
            let j = *index.entry(z.clone()).or_insert_with(|| {
                reps.push(z);
                next
            });
            images[i].push(j);
        }
    }
    images.into_iter().map(Permutation::from_images_unchecked).collect()
}
