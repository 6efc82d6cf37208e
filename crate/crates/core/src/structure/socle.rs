//! Minimal normal subgroups and the socle.

use num_bigint::BigUint;

use super::class_representatives;
use super::factors::prime_factors;
use crate::budget::Budget;
use crate::error::Result;
use crate::group::Group;

/// Every minimal normal subgroup is the normal closure of any of its
/// elements of prime order, so the minimal members among those closures
/// are exactly the minimal normal subgroups.
pub fn minimal_normal_subgroups(g: &Group, budget: &Budget) -> Result<Vec<Group>> {
    let mut candidates: Vec<Group> = Vec::new();
    for x in class_representatives(g, budget.elements)? {
        let o = x.order();
        if o == 1 || prime_factors(BigUint::from(o)).len() != 1 {
            continue;
        }
        let n = g.normal_closure(&[x]);
        if !candidates.iter().any(|c| c.order() == n.order() && c.is_subgroup_of(&n).unwrap_or(false)) {
            candidates.push(n);
        }
    }
    let minimal = candidates
        .iter()
        .filter(|n| {
            !candidates
                .iter()
                .any(|c| c.order() < n.order() && c.is_subgroup_of(n).unwrap_or(false))
        })
        .cloned()
        .collect();
    Ok(minimal)
}

/// The subgroup generated by all minimal normal subgroups.
pub fn socle(g: &Group, budget: &Budget) -> Result<Group> {
    let gens: Vec<_> = minimal_normal_subgroups(g, budget)?
        .iter()
        .flat_map(|n| n.generators().to_vec())
        .collect();
    Ok(Group::new(g.degree(), gens)?.reduced())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn socles_of_small_groups() {
        let b = Budget::default();
        assert_eq!(socle(&Group::symmetric(5), &b).unwrap().order_u64(), Some(60));
        assert_eq!(socle(&Group::alternating(4), &b).unwrap().order_u64(), Some(4));
        assert_eq!(socle(&Group::symmetric(4), &b).unwrap().order_u64(), Some(4));
        assert_eq!(socle(&Group::cyclic(6), &b).unwrap().order_u64(), Some(6));
        assert_eq!(minimal_normal_subgroups(&Group::cyclic(6), &b).unwrap().len(), 2);
        assert!(socle(&Group::trivial(3), &b).unwrap().is_trivial());
        // C4: the unique subgroup of order 2
        assert_eq!(socle(&Group::cyclic(4), &b).unwrap().order_u64(), Some(2));
    }

    #[test]
    fn refuses_large_groups() {
        let b = Budget {
            elements: 100,
            ..Budget::default()
        };
        assert!(socle(&Group::symmetric(6), &b).is_err());
    }
}
