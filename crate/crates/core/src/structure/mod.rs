//! Solvability, composition factors, socles and alternating sections.

mod altfree;
mod audit;
mod factors;
mod regorb;
mod socle;

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::error::Result;
use crate::group::Group;
use crate::perm::Permutation;

pub use altfree::{alt_section_free, facts, AltFreeOptions, AltFreeReport, AltFreeVerdict, AltWitness, Fact, Provenance};
pub use audit::{audit_c6, AuditCheck, AuditReport};
pub use factors::{composition_factors, composition_factors_seeded, Factor, FactorLabel, FactorReport, Section};
pub use regorb::{regular_orbit_check, RegularOrbitReport};
pub use socle::{minimal_normal_subgroups, socle};

/// `G, G', G'', ...` ending at the first repeated term.
pub fn derived_series(g: &Group) -> Vec<Group> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().unwrap();
        let next = last.derived_subgroup();
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

pub fn is_solvable(g: &Group) -> bool {
    derived_series(g).last().unwrap().is_trivial()
}

/// `|Alt(d)| = d!/2`.
pub fn alt_order(d: usize) -> BigUint {
    let f: BigUint = (1..=d as u64).product();
    if d >= 2 {
        f / 2u32
    } else {
        f
    }
}

/// One element from each conjugacy class, by listing all elements.
pub fn class_representatives(g: &Group, limit: u64) -> Result<Vec<Permutation>> {
    let elements = g.elements(limit)?;
    let mut seen: HashSet<Permutation> = HashSet::with_capacity(elements.len());
    let mut reps = Vec::new();
    for x in elements {
        if seen.contains(&x) {
            continue;
        }
        seen.insert(x.clone());
        let mut stack = vec![x.clone()];
        while let Some(y) = stack.pop() {
            for s in g.generators() {
                let z = s.conjugate(&y);
                if !seen.contains(&z) {
                    seen.insert(z.clone());
                    stack.push(z);
                }
            }
        }
        reps.push(x);
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::wreath_imprimitive;

    #[test]
    fn derived_series_of_sym4() {
        let orders: Vec<u64> = derived_series(&Group::symmetric(4))
            .iter()
            .map(|h| h.order_u64().unwrap())
            .collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        assert!(is_solvable(&Group::symmetric(4)));
        assert!(is_solvable(&Group::trivial(3)));
        assert!(!is_solvable(&Group::alternating(5)));
        assert_eq!(derived_series(&Group::alternating(5)).len(), 1);
    }

    #[test]
    fn class_counts() {
        // partitions of n for Sym(n), and Alt(5) splits one class
        for (n, classes) in [(3, 3), (4, 5), (5, 7), (6, 11)] {
            assert_eq!(class_representatives(&Group::symmetric(n), 1000).unwrap().len(), classes);
        }
        assert_eq!(class_representatives(&Group::alternating(5), 100).unwrap().len(), 5);
        let w = wreath_imprimitive(&Group::symmetric(2), &Group::symmetric(2));
        assert_eq!(class_representatives(&w, 100).unwrap().len(), 5);
    }

    #[test]
    fn alt_orders() {
        assert_eq!(alt_order(5), BigUint::from(60u32));
        assert_eq!(alt_order(9), BigUint::from(181440u32));
    }
}
