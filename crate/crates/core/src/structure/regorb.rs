//! Regular orbits of small matrix groups.

use std::collections::HashSet;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg::field::FieldCtx;
use crate::linalg::matrix::{vector_count, vector_of, Matrix};

/// Largest vector space scanned.
const VECTOR_LIMIT: usize = 100_000;

#[derive(Debug, Clone, Serialize)]
pub struct RegularOrbitReport {
    pub group_order: u64,
    pub space_size: u64,
    /// First vector, in index order, with trivial stabilizer.
    pub regular_vector: Option<Vec<u32>>,
    /// `Σ_{x ≠ 1} |C_V(x)|`, from ranks of `x - 1`.
    pub fixed_point_sum: u64,
    /// `Σ_{x ≠ 1} |C_V(x)| < |R| |V|^{1/2}`.
    pub counting_bound: bool,
    /// `|R| <= |V|^{1/2}`.
    pub small_order: bool,
    pub class_at_most_two: bool,
    pub irreducible: bool,
}

impl RegularOrbitReport {
    pub fn hypothesis(&self) -> bool {
        self.small_order && self.class_at_most_two && self.irreducible
    }

    pub fn conclusion(&self) -> bool {
        self.regular_vector.is_some()
    }
}

fn elements(f: &FieldCtx, gens: &[Matrix], limit: u64) -> Result<Vec<Matrix>> {
    let id = Matrix::identity(gens[0].n);
    let mut seen: HashSet<Matrix> = HashSet::from([id.clone()]);
    let mut list = vec![id];
    let mut head = 0;
    while head < list.len() {
        let x = list[head].clone();
        head += 1;
        for g in gens {
            let y = x.mul(f, g);
            if seen.insert(y.clone()) {
                if list.len() as u64 >= limit {
                    return Err(Error::Budget {
                        engine: "matrix group enumeration",
                        quantity: "group order".into(),
                        needed: list.len() as u128 + 1,
                        limit: limit as u128,
                    });
                }
                list.push(y);
            }
        }
    }
    Ok(list)
}

/// Dimension of the span of `rows`.
fn span_dim(f: &FieldCtx, rows: impl IntoIterator<Item = Vec<u32>>, a: usize) -> usize {
    // echelon basis keyed by pivot column
    let mut basis: Vec<Option<Vec<u32>>> = vec![None; a];
    let mut dim = 0;
    for mut v in rows {
        for c in 0..a {
            if v[c] == 0 {
                continue;
            }
            match &basis[c] {
                Some(b) => {
                    let s = v[c];
                    for j in 0..a {
                        v[j] = f.sub(v[j], f.mul(s, b[j]));
                    }
                }
                None => {
                    let inv = f.inv(v[c]).unwrap();
                    basis[c] = Some(v.iter().map(|&x| f.mul(x, inv)).collect());
                    dim += 1;
                    if dim == a {
                        return a;
                    }
                    break;
                }
            }
        }
    }
    dim
}

fn minus_identity(f: &FieldCtx, x: &Matrix) -> Matrix {
    let mut m = x.clone();
    for i in 0..m.n {
        m.set(i, i, f.sub(m.get(i, i), 1));
    }
    m
}

/// Scans `F_q^a` for a vector with trivial stabilizer in `⟨gens⟩` and
/// checks the counting argument for regular orbits.
pub fn regular_orbit_check(f: &FieldCtx, gens: &[Matrix], budget: &Budget) -> Result<RegularOrbitReport> {
    let a = gens.first().ok_or_else(|| Error::InvalidParameter("need at least one generator".into()))?.n;
    if gens.iter().any(|g| g.n != a) {
        return Err(Error::InvalidParameter("generators must share a dimension".into()));
    }
    if gens.iter().any(|g| !g.is_invertible(f)) {
        return Err(Error::Singular);
    }
    let nv = vector_count(f, a)?;
    if nv > VECTOR_LIMIT {
        return Err(Error::Budget {
            engine: "regular orbit scan",
            quantity: "|V|".into(),
            needed: nv as u128,
            limit: VECTOR_LIMIT as u128,
        });
    }
    let group = elements(f, gens, budget.elements)?;
    let id = Matrix::identity(a);
    let nontrivial: Vec<&Matrix> = group.iter().filter(|x| **x != id).collect();
    let r = group.len() as u64;

    let regular_vector = (1..nv).map(|i| vector_of(f, a, i)).find(|v| nontrivial.iter().all(|x| x.apply_row(f, v) != *v));

    let q = f.q() as u64;
    let fixed_point_sum: u64 = nontrivial.iter().map(|x| q.pow((a - minus_identity(f, x).rank(f)) as u32)).sum();
    let counting_bound = (fixed_point_sum as u128).pow(2) < (r as u128).pow(2) * nv as u128;
    let small_order = (r as u128).pow(2) <= nv as u128;

    let inverses: Vec<Matrix> = group.iter().map(|x| x.inverse(f).expect("group elements are invertible")).collect();
    let mut commutators: HashSet<Matrix> = HashSet::new();
    for (x, xi) in group.iter().zip(&inverses) {
        for (y, yi) in group.iter().zip(&inverses) {
            commutators.insert(xi.mul(f, yi).mul(f, x).mul(f, y));
        }
    }
    let class_at_most_two = commutators
        .iter()
        .all(|c| gens.iter().all(|g| c.mul(f, g) == g.mul(f, c)));

    let irreducible = (1..nv).all(|i| {
        let v = vector_of(f, a, i);
        span_dim(f, group.iter().map(|x| x.apply_row(f, &v)), a) == a
    });

    Ok(RegularOrbitReport {
        group_order: r,
        space_size: nv as u64,
        regular_vector,
        fixed_point_sum,
        counting_bound,
        small_order,
        class_at_most_two,
        irreducible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u32]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn quaternions_over_f11() {
        let f = FieldCtx::new(11, 1).unwrap();
        let r = regular_orbit_check(&f, &[m(&[&[0, 1], &[10, 0]]), m(&[&[1, 3], &[3, 10]])], &Budget::default()).unwrap();
        assert_eq!(r.group_order, 8);
        assert!(r.hypothesis() && r.conclusion() && r.counting_bound);
    }

    #[test]
    fn quaternions_over_f3() {
        let f = FieldCtx::new(3, 1).unwrap();
        let r = regular_orbit_check(&f, &[m(&[&[0, 1], &[2, 0]]), m(&[&[1, 1], &[1, 2]])], &Budget::default()).unwrap();
        assert_eq!(r.group_order, 8);
        assert!(!r.small_order && r.class_at_most_two && r.irreducible);
        assert!(r.conclusion());
        // only the zero vector is fixed by a nontrivial element
        assert_eq!(r.fixed_point_sum, 7);
    }

    #[test]
    fn sign_on_a_line() {
        let f = FieldCtx::new(5, 1).unwrap();
        let r = regular_orbit_check(&f, &[Matrix::scalar(1, 4)], &Budget::default()).unwrap();
        assert_eq!(r.group_order, 2);
        assert!(r.hypothesis());
        assert_eq!(r.regular_vector, Some(vec![1]));
    }

    #[test]
    fn reducible_groups_are_flagged() {
        let f = FieldCtx::new(5, 1).unwrap();
        let r = regular_orbit_check(&f, &[m(&[&[1, 0], &[0, 4]])], &Budget::default()).unwrap();
        assert!(!r.irreducible);
        assert!(r.class_at_most_two);
    }

    #[test]
    fn class_three_is_flagged() {
        // D16 inside GL_2(17): rotation of order 8 and a reflection
        let f = FieldCtx::new(17, 1).unwrap();
        let w = (1..17).find(|&x| f.element_order(x) == 8).unwrap();
        let rot = m(&[&[w, 0], &[0, f.inv(w).unwrap()]]);
        let refl = m(&[&[0, 1], &[1, 0]]);
        let r = regular_orbit_check(&f, &[rot, refl], &Budget::default()).unwrap();
        assert_eq!(r.group_order, 16);
        assert!(!r.class_at_most_two);
    }

    #[test]
    fn spans() {
        let f = FieldCtx::new(3, 1).unwrap();
        assert_eq!(span_dim(&f, vec![vec![1, 2, 0], vec![2, 1, 0]], 3), 1);
        assert_eq!(span_dim(&f, vec![vec![1, 2, 0], vec![0, 1, 0], vec![1, 1, 1]], 3), 3);
    }
}
