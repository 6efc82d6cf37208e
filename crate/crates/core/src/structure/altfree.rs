//! Deciding whether `Alt(d)` is a section of a group.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::alt_order;
use super::factors::{composition_factors, FactorLabel, FactorReport, Section};
use crate::actions::transitivity_degree;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;
use crate::subgroups::subgroup_catalog;

const FACTS: &str = include_str!("../../data/facts.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Computed,
    FactTable,
}

/// `subgroup / normal ≅ Alt(d)`, certified by `action`: the images of
/// `subgroup`'s generators on `d` points.
#[derive(Debug, Clone)]
pub struct AltWitness {
    pub d: usize,
    pub subgroup: Group,
    pub normal: Group,
    pub action: Vec<Permutation>,
}

impl AltWitness {
    /// Checks that `action` defines a homomorphism onto `Alt(d)` whose
    /// kernel is `normal`. The map is well defined exactly when the graph
    /// `{(t, t^action)}` has the order of `subgroup`.
    pub fn verify(&self) -> bool {
        let n = self.subgroup.degree();
        let d = self.d;
        if self.action.len() != self.subgroup.generators().len() || self.action.iter().any(|p| p.degree() != d) {
            return false;
        }
        let graph = match Group::new(n + d, graph_generators(self.subgroup.generators(), &self.action)) {
            Ok(g) => g,
            Err(_) => return false,
        };
        let image = match Group::new(d, self.action.clone()) {
            Ok(g) => g,
            Err(_) => return false,
        };
        let target = alt_order(d);
        graph.order() == self.subgroup.order()
            && image.order() == target
            && self.normal.is_normal_in(&self.subgroup).unwrap_or(false)
            && self.subgroup.order() == self.normal.order() * &target
            && self
                .normal
                .generators()
                .iter()
                .all(|x| graph.contains(&x.extend(n + d)).unwrap_or(false))
    }
}

fn graph_generators(gens: &[Permutation], images: &[Permutation]) -> Vec<Permutation> {
    let n = gens.first().map_or(0, |g| g.degree());
    gens.iter()
        .zip(images)
        .map(|(g, r)| {
            let mut v = g.images().to_vec();
            v.extend(r.images().iter().map(|&x| n + x));
            Permutation::from_images(v).expect("disjoint union of permutations")
        })
        .collect()
}

/// Restricts an `Alt(m)` section to `Alt(d)`, `d <= m`, by fixing the
/// first `m - d` action points.
fn witness_from(section: &Section, d: usize) -> Option<AltWitness> {
    let action = section.action.as_ref()?;
    let a = &section.top;
    let n = a.degree();
    let m = action.first()?.degree();
    let graph = Group::new(n + m, graph_generators(a.generators(), action)).ok()?;
    let fixed: Vec<usize> = (n..n + m - d).collect();
    let stab = graph.pointwise_stabilizer(&fixed);
    let rest: Vec<usize> = (n + m - d..n + m).collect();
    let mut gens = Vec::new();
    let mut images = Vec::new();
    for g in stab.generators() {
        let t = Permutation::from_images(g.images()[..n].to_vec()).ok()?;
        if t.is_identity() {
            continue;
        }
        images.push(Permutation::from_images(rest.iter().map(|&x| g.apply(x) - (n + m - d)).collect()).ok()?);
        gens.push(t);
    }
    Some(AltWitness {
        d,
        subgroup: Group::new(n, gens).ok()?,
        normal: section.bottom.clone(),
        action: images,
    })
}

#[derive(Debug, Clone)]
pub enum AltFreeVerdict {
    Free,
    NotFree(Box<AltWitness>),
    Unknown(String),
}

#[derive(Debug, Clone)]
pub struct AltFreeReport {
    pub d: usize,
    pub verdict: AltFreeVerdict,
    pub provenance: Provenance,
    pub reason: String,
}

impl AltFreeReport {
    fn new(d: usize, verdict: AltFreeVerdict, provenance: Provenance, reason: impl Into<String>) -> Self {
        Self {
            d,
            verdict,
            provenance,
            reason: reason.into(),
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self.verdict, AltFreeVerdict::Free)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (verdict, witness) = match &self.verdict {
            AltFreeVerdict::Free => ("free", None),
            AltFreeVerdict::NotFree(w) => (
                "not-free",
                Some(serde_json::json!({
                    "subgroup": crate::io::GroupJson::from_group(&w.subgroup),
                    "normal": crate::io::GroupJson::from_group(&w.normal),
                    "action": w.action.iter().map(|p| p.images().to_vec()).collect::<Vec<_>>(),
                    "verified": w.verify(),
                })),
            ),
            AltFreeVerdict::Unknown(_) => ("unknown", None),
        };
        serde_json::json!({
            "d": self.d,
            "verdict": verdict,
            "provenance": self.provenance,
            "reason": self.reason,
            "witness": witness,
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AltFreeOptions {
    /// Consult the curated fact table.
    pub facts: bool,
    /// `a` when the group is known to embed in some `GL_a(q)`.
    pub linear_dimension: Option<usize>,
    /// Largest group order for the exhaustive subgroup search.
    pub search_order: u64,
}

impl Default for AltFreeOptions {
    fn default() -> Self {
        Self {
            facts: false,
            linear_dimension: None,
            search_order: 2000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub name: String,
    pub degree: usize,
    pub order: String,
    pub transitivity: usize,
    /// The group is `Alt(d)`-free for every `d` from here on.
    pub alt_free_from: usize,
    pub citation: String,
}

#[derive(Deserialize)]
struct FactFile {
    #[allow(dead_code)]
    version: u32,
    entries: Vec<Fact>,
}

/// The shipped fact table.
pub fn facts() -> Vec<Fact> {
    serde_json::from_str::<FactFile>(FACTS).expect("shipped fact table parses").entries
}

fn alt_section(report: &FactorReport, d: usize) -> Option<AltWitness> {
    report
        .sections
        .iter()
        .filter(|s| matches!(s.factor.label, FactorLabel::Alt(m) if m >= d))
        .find_map(|s| witness_from(s, d))
}

pub fn alt_section_free(g: &Group, d: usize, opts: &AltFreeOptions, budget: &Budget) -> Result<AltFreeReport> {
    use AltFreeVerdict::*;
    use Provenance::*;
    if d < 5 {
        return Err(Error::InvalidParameter(format!("Alt({d})-freeness needs d >= 5")));
    }
    let report = composition_factors(g, budget);
    if report.solvable {
        return Ok(AltFreeReport::new(d, Free, Computed, "solvable"));
    }
    if let Some(w) = alt_section(&report, d) {
        return Ok(AltFreeReport::new(d, NotFree(Box::new(w)), Computed, "alternating composition factor"));
    }
    let target = alt_order(d);
    if report.factors.iter().all(|f| f.order < target) {
        return Ok(AltFreeReport::new(d, Free, Computed, "every composition factor is smaller than Alt(d)"));
    }
    if let Some(a) = opts.linear_dimension {
        if d >= 9 && a + 2 < d {
            return Ok(AltFreeReport::new(d, Free, Computed, format!("linear of dimension {a} < d - 2")));
        }
    }
    if g.order() <= BigUint::from(opts.search_order) {
        let catalog = subgroup_catalog(g, opts.search_order)?;
        let mut undecided = false;
        for h in catalog.representatives() {
            let r = composition_factors(&h, budget);
            if let Some(w) = alt_section(&r, d) {
                return Ok(AltFreeReport::new(d, NotFree(Box::new(w)), Computed, "alternating factor of a subgroup"));
            }
            undecided |= r.factors.iter().any(|f| {
                matches!(f.label, FactorLabel::Unidentified(_)) || (matches!(f.label, FactorLabel::Simple(_)) && f.order == target)
            });
        }
        if !undecided {
            return Ok(AltFreeReport::new(d, Free, Computed, "no subgroup has an Alt(d) composition factor"));
        }
    }
    if opts.facts {
        let order = g.order().to_string();
        let t = transitivity_degree(g);
        if let Some(f) = facts()
            .into_iter()
            .find(|f| f.degree == g.degree() && f.order == order && f.transitivity == t && d >= f.alt_free_from)
        {
            return Ok(AltFreeReport::new(d, Free, FactTable, format!("{}: {}", f.name, f.citation)));
        }
    }
    Ok(AltFreeReport::new(
        d,
        Unknown(format!("group of order {} exceeds the subgroup search cap {}", g.order(), opts.search_order)),
        Computed,
        "undecided",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solvable_groups_are_free() {
        let r = alt_section_free(&Group::symmetric(4), 5, &AltFreeOptions::default(), &Budget::default()).unwrap();
        assert!(r.is_free());
        assert_eq!(r.provenance, Provenance::Computed);
    }

    #[test]
    fn alt6_contains_alt5() {
        let r = alt_section_free(&Group::alternating(6), 5, &AltFreeOptions::default(), &Budget::default()).unwrap();
        let AltFreeVerdict::NotFree(w) = &r.verdict else {
            panic!("expected a witness, got {r:?}");
        };
        assert!(w.verify());
        assert_eq!(w.subgroup.order_u64(), Some(60));
        assert_eq!(w.subgroup.orbit(1).len(), 5);
        assert!(w.normal.is_trivial());
        assert_eq!(r.to_json()["witness"]["verified"], true);
    }

    #[test]
    fn witness_through_a_kernel() {
        // Sym(5) x Sym(2) on 7 points: the factor Alt(5) sits above C2 terms
        let g = Group::new(7, vec![
            Permutation::from_cycles(7, &[vec![0, 1, 2, 3, 4]]).unwrap(),
            Permutation::from_cycles(7, &[vec![0, 1]]).unwrap(),
            Permutation::from_cycles(7, &[vec![5, 6]]).unwrap(),
        ])
        .unwrap();
        let r = alt_section_free(&g, 5, &AltFreeOptions::default(), &Budget::default()).unwrap();
        let AltFreeVerdict::NotFree(w) = &r.verdict else {
            panic!("expected a witness");
        };
        assert!(w.verify());
    }

    #[test]
    fn forged_witnesses_fail() {
        let a5 = Group::alternating(5);
        let good = AltWitness {
            d: 5,
            subgroup: a5.clone(),
            normal: Group::trivial(5),
            action: a5.generators().to_vec(),
        };
        assert!(good.verify());
        let mut bad = good.clone();
        bad.action.reverse();
        bad.action.push(Permutation::identity(5));
        assert!(!bad.verify());
        let swapped = AltWitness {
            action: good.action.iter().rev().cloned().collect(),
            ..good.clone()
        };
        // swapping the images of the two generators is not a homomorphism
        if a5.generators().len() == 2 && a5.generators()[0].order() != a5.generators()[1].order() {
            assert!(!swapped.verify());
        }
    }

    #[test]
    fn psl27_is_alt5_free_by_search() {
        let g = Group::new(7, vec![
            Permutation::from_cycles(7, &[vec![0, 1, 2, 3, 4, 5, 6]]).unwrap(),
            Permutation::from_cycles(7, &[vec![1, 2, 4], vec![3, 6, 5]]).unwrap(),
            Permutation::from_cycles(7, &[vec![0, 1], vec![4, 6]]).unwrap(),
        ])
        .unwrap();
        let r = alt_section_free(&g, 5, &AltFreeOptions::default(), &Budget::default()).unwrap();
        assert!(r.is_free(), "{r:?}");
        assert!(r.reason.contains("subgroup"));
    }

    #[test]
    fn order_bound() {
        let r = alt_section_free(&Group::symmetric(6), 7, &AltFreeOptions::default(), &Budget::default()).unwrap();
        assert!(r.is_free());
        assert!(r.reason.contains("smaller"));
        assert!(alt_section_free(&Group::symmetric(4), 4, &AltFreeOptions::default(), &Budget::default()).is_err());
    }

    #[test]
    fn fact_table_parses() {
        let f = facts();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].order, "244823040");
        assert!(!f[0].citation.is_empty());
    }
}
