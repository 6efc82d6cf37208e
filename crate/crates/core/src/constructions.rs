//! Direct products, wreath products and product decompositions.
//!
//! Imprimitive wreath products live on `Δ × Γ` with `(δ, γ) -> γ|Δ| + δ`.
//! Product actions live on `Δ^Γ` with the first coordinate most
//! significant.

use serde::Serialize;

use crate::actions;
use crate::budget::Budget;
use crate::closure::{self, Engine};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;

/// `A × B` on the disjoint union, `A`'s points first.
pub fn direct_product_disjoint(a: &Group, b: &Group) -> Group {
    let (na, nb) = (a.degree(), b.degree());
    let mut gens: Vec<Permutation> = a.generators().iter().map(|g| g.extend(na + nb)).collect();
    for g in b.generators() {
        let mut images: Vec<usize> = (0..na).collect();
        images.extend(g.images().iter().map(|&x| x + na));
        gens.push(Permutation::from_images_unchecked(images));
    }
    Group::new(na + nb, gens).expect("degrees agree")
}

/// `L ≀ K` in imprimitive action; blocks are `Δ × {γ}`.
pub fn wreath_imprimitive(l: &Group, k: &Group) -> Group {
    let (d, m) = (l.degree(), k.degree());
    let n = d * m;
    let mut gens = Vec::new();
    for gamma in 0..m {
        for g in l.generators() {
            let mut images: Vec<usize> = (0..n).collect();
            for delta in 0..d {
                images[gamma * d + delta] = gamma * d + g.apply(delta);
            }
            gens.push(Permutation::from_images_unchecked(images));
        }
    }
    for t in k.generators() {
        let images = (0..n).map(|x| t.apply(x / d) * d + x % d).collect();
        gens.push(Permutation::from_images_unchecked(images));
    }
    Group::new(n, gens).expect("degrees agree")
}

/// `Ω ≅ Δ^Γ` by mixed radix, coordinate 0 most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProductDecomposition {
    pub delta_size: usize,
    pub gamma_size: usize,
}

impl ProductDecomposition {
    pub fn new(delta_size: usize, gamma_size: usize) -> Result<Self> {
        if delta_size < 2 || gamma_size < 1 {
            return Err(Error::InvalidParameter("need |Δ| >= 2 and |Γ| >= 1".into()));
        }
        Ok(Self {
            delta_size,
            gamma_size,
        })
    }

    pub fn degree(&self) -> usize {
        self.delta_size.pow(self.gamma_size as u32)
    }

    fn place(&self, gamma: usize) -> usize {
        self.delta_size.pow((self.gamma_size - 1 - gamma) as u32)
    }

    pub fn coordinates(&self, x: usize) -> Vec<usize> {
        actions::decode_tuple(self.delta_size, self.gamma_size, x)
    }

    pub fn point(&self, coords: &[usize]) -> usize {
        actions::encode_tuple(self.delta_size, coords)
    }

    /// The `γ` with `Δ_γ^g = Δ_{γ'}` for each `γ`, checking that `g`
    /// permutes the partitions.
    pub fn induced_on_coordinates(&self, g: &Permutation) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(self.gamma_size);
        for gamma in 0..self.gamma_size {
            // points differing only in coordinate γ must map to points
            // differing only in one coordinate, the same for every pair
            let a = self.coordinates(g.apply(0));
            let b = self.coordinates(g.apply(self.place(gamma)));
            let diff: Vec<usize> = (0..self.gamma_size).filter(|&i| a[i] != b[i]).collect();
            if diff.len() != 1 {
                return Err(Error::NotInvariant);
            }
            out.push(diff[0]);
        }
        let mut seen = vec![false; self.gamma_size];
        for &t in &out {
            if std::mem::replace(&mut seen[t], true) {
                return Err(Error::NotInvariant);
            }
        }
        // full check: g maps each partition cell onto a cell
        for (gamma, &target) in out.iter().enumerate() {
            for x in 0..self.degree() {
                let cx = self.coordinates(x)[gamma];
                let cell_rep = cx * self.place(gamma);
                if self.coordinates(g.apply(x))[target] != self.coordinates(g.apply(cell_rep))[target] {
                    return Err(Error::NotInvariant);
                }
            }
        }
        Ok(out)
    }
}

/// `L ↑ K` on `Δ^Γ`: `L^Γ` coordinatewise and `K` moving coordinate `γ`
/// to position `γ^τ`.
pub fn wreath_product_action(l: &Group, k: &Group, budget: &Budget) -> Result<Group> {
    let (d, m) = (l.degree(), k.degree());
    let dec = ProductDecomposition::new(d, m)?;
    let n = d
        .checked_pow(m as u32)
        .filter(|&n| n <= budget.points)
        .ok_or_else(|| Error::Budget {
            engine: "product action",
            quantity: format!("|Δ|^|Γ| = {d}^{m}"),
            needed: (d as u128).saturating_pow(m as u32),
            limit: budget.points as u128,
        })?;
    let mut gens = Vec::new();
    for gamma in 0..m {
        for g in l.generators() {
            let images = (0..n)
                .map(|x| {
                    let mut c = dec.coordinates(x);
                    c[gamma] = g.apply(c[gamma]);
                    dec.point(&c)
                })
                .collect();
            gens.push(Permutation::from_images_unchecked(images));
        }
    }
    for t in k.generators() {
        let images = (0..n)
            .map(|x| {
                let c = dec.coordinates(x);
                let mut out = vec![0; m];
                for (gamma, &v) in c.iter().enumerate() {
                    out[t.apply(gamma)] = v;
                }
                dec.point(&out)
            })
            .collect();
        gens.push(Permutation::from_images_unchecked(images));
    }
    Group::new(n, gens)
}

/// `(G^{Δ_0}, G^Γ)`: the component at coordinate 0 and the action on the
/// coordinates.
pub fn components_of_product_decomposition(g: &Group, dec: &ProductDecomposition) -> Result<(Group, Group)> {
    if g.degree() != dec.degree() {
        return Err(Error::DegreeMismatch {
            expected: dec.degree(),
            found: g.degree(),
        });
    }
    let mut top = Vec::new();
    for p in g.generators() {
        top.push(Permutation::from_images_unchecked(dec.induced_on_coordinates(p)?));
    }
    let top = Group::new(dec.gamma_size, top)?;
    let (stab, _) = g.stabilizer_in_action(
        0usize,
        |&gamma, p| dec.induced_on_coordinates(p).expect("checked on generators")[gamma],
        dec.gamma_size,
    )?;
    let d = dec.delta_size;
    let place0 = dec.place(0);
    let comp = stab
        .generators()
        .iter()
        .map(|p| {
            Permutation::from_images_unchecked((0..d).map(|a| dec.coordinates(p.apply(a * place0))[0]).collect())
        })
        .collect();
    Ok((Group::new(d, comp)?, top))
}

/// Both sides of a closure formula, for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaCheck {
    pub holds: bool,
    pub lhs_order: String,
    pub rhs_order: String,
    /// Partition parameter `r`, for the product action formula.
    pub r: Option<usize>,
}

fn compare(lhs: Group, rhs: Group, r: Option<usize>) -> Result<FormulaCheck> {
    Ok(FormulaCheck {
        holds: lhs.equals(&rhs)?,
        lhs_order: lhs.order().to_string(),
        rhs_order: rhs.order().to_string(),
        r,
    })
}

/// `(L ≀ K)^(k)` against `L^(k) ≀ K^(k)`, both sides exhaustive.
pub fn check_imprimitive_closure_formula(l: &Group, kg: &Group, k: usize, budget: &Budget) -> Result<FormulaCheck> {
    let w = wreath_imprimitive(l, kg);
    let (lhs, rhs) = std::thread::scope(|s| {
        let lhs = s.spawn(|| closure::k_closure_with(&w, k, Engine::Exhaustive, budget));
        let rhs = s.spawn(|| -> Result<Group> {
            let lc = closure::k_closure_with(l, k, Engine::Exhaustive, budget)?.group;
            let kc = closure::k_closure_with(kg, k, Engine::Exhaustive, budget)?.group;
            Ok(wreath_imprimitive(&lc, &kc))
        });
        (lhs.join().expect("closure thread"), rhs.join().expect("closure thread"))
    });
    compare(lhs?.group, rhs?, None)
}

/// `(L ↑ K)^(k)` against `L^(k) ↑ K^[r]` with `r = min(|Orb_k(L)|, |Γ|)`.
pub fn check_product_action_closure_formula(l: &Group, kg: &Group, k: usize, budget: &Budget) -> Result<FormulaCheck> {
    let w = wreath_product_action(l, kg, budget)?;
    let r = actions::orbit_coloring(l, k, budget)?.num_colors.min(kg.degree());
    let (lhs, rhs) = std::thread::scope(|s| {
        let lhs = s.spawn(|| closure::k_closure_with(&w, k, Engine::Exhaustive, budget));
        let rhs = s.spawn(|| -> Result<Group> {
            let lc = closure::k_closure_with(l, k, Engine::Exhaustive, budget)?.group;
            let kc = closure::partition_r_closure(kg, r, budget)?;
            wreath_product_action(&lc, &kc, budget)
        });
        (lhs.join().expect("closure thread"), rhs.join().expect("closure thread"))
    });
    compare(lhs?.group, rhs?, Some(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        let c: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &c).unwrap()
    }

    #[test]
    fn direct_products() {
        let g = direct_product_disjoint(&Group::symmetric(2), &Group::symmetric(3));
        assert_eq!((g.degree(), g.order()), (5, 12u32.into()));
        let c5 = Group::cyclic(5);
        let g = direct_product_disjoint(&Group::trivial(2), &c5);
        assert_eq!(g.order(), 5u32.into());
        assert!(g.orbit(0).len() == 1 && g.orbit(2).len() == 5);
        let c2 = Group::symmetric(2);
        assert_eq!(direct_product_disjoint(&c2, &c2).order(), 4u32.into());
    }

    #[test]
    fn imprimitive_wreath_orders() {
        let s2 = Group::symmetric(2);
        let w = wreath_imprimitive(&s2, &s2);
        assert!(w.equals(&Group::dihedral(4).conjugate_by(&perm(4, &[&[1, 2]]))).unwrap());
        assert_eq!(wreath_imprimitive(&s2, &Group::symmetric(3)).order(), 48u32.into());
        let l = Group::dihedral(5);
        assert!(wreath_imprimitive(&l, &Group::trivial(1)).equals(&l).unwrap());
        let sys = actions::BlockSystem::from_cells(6, vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        assert!(sys.is_invariant(&wreath_imprimitive(&s2, &Group::cyclic(3))));
    }

    #[test]
    fn product_action_orders() {
        let b = Budget::default();
        let w = wreath_product_action(&Group::symmetric(3), &Group::symmetric(2), &b).unwrap();
        assert_eq!((w.degree(), w.order()), (9, 72u32.into()));
        let s2 = Group::symmetric(2);
        assert_eq!(wreath_product_action(&s2, &s2, &b).unwrap().order(), 8u32.into());
        let l = Group::cyclic(4);
        assert!(wreath_product_action(&l, &Group::trivial(1), &b).unwrap().equals(&l).unwrap());
    }

    #[test]
    fn components() {
        let b = Budget::default();
        let s3 = Group::symmetric(3);
        let s2 = Group::symmetric(2);
        let w = wreath_product_action(&s3, &s2, &b).unwrap();
        let dec = ProductDecomposition::new(3, 2).unwrap();
        let (c, top) = components_of_product_decomposition(&w, &dec).unwrap();
        assert!(c.equals(&s3).unwrap());
        assert!(top.equals(&s2).unwrap());

        let base = wreath_product_action(&s3, &Group::trivial(2), &b).unwrap();
        let (_, top) = components_of_product_decomposition(&base, &dec).unwrap();
        assert!(top.is_trivial());

        // diagonal copy of C3 together with the swap
        let l = Group::cyclic(3);
        let diag: Vec<usize> = (0..9)
            .map(|x| {
                let c = dec.coordinates(x);
                dec.point(&[l.generators()[0].apply(c[0]), l.generators()[0].apply(c[1])])
            })
            .collect();
        let swap: Vec<usize> = (0..9).map(|x| (x % 3) * 3 + x / 3).collect();
        let g = Group::new(9, vec![Permutation::from_images(diag).unwrap(), Permutation::from_images(swap).unwrap()]).unwrap();
        let (c, top) = components_of_product_decomposition(&g, &dec).unwrap();
        assert!(c.equals(&l).unwrap());
        assert_eq!(top.order(), 2u32.into());

        let bad = Group::new(9, vec![perm(9, &[&[0, 1]])]).unwrap();
        assert_eq!(components_of_product_decomposition(&bad, &dec).unwrap_err(), Error::NotInvariant);
    }

    #[test]
    fn formula_examples() {
        let b = Budget::default();
        let s2 = Group::symmetric(2);
        let c = check_imprimitive_closure_formula(&s2, &s2, 2, &b).unwrap();
        assert!(c.holds);
        assert_eq!(c.lhs_order, "8");
        assert!(check_imprimitive_closure_formula(&Group::cyclic(3), &s2, 2, &b).unwrap().holds);
        assert!(check_imprimitive_closure_formula(&s2, &Group::cyclic(3), 3, &b).unwrap().holds);
        assert!(check_product_action_closure_formula(&Group::symmetric(3), &s2, 2, &b).unwrap().holds);
        assert!(check_product_action_closure_formula(&Group::cyclic(3), &s2, 2, &b).unwrap().holds);
        let c = check_product_action_closure_formula(&s2, &s2, 3, &b).unwrap();
        assert!(c.holds);
        assert_eq!(c.r, Some(2));
    }
}
