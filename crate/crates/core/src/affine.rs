//! Affine groups `V ⋊ G_0` on the vectors of `F_q^a`.
//!
//! Points are vector indices, little-endian base `q`. Since field elements
//! are little-endian base `p`, the same index is the vector of `F_p^{ae}`,
//! which is how extension-field zero stabilizers are seen over the prime
//! field.

use crate::actions::is_primitive;
use crate::budget::Budget;
use crate::closure::k_closure;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::linalg::field::FieldCtx;
use crate::linalg::matrix::{
    gl_group, index_of, permutation_is_semilinear, semilinear_to_permutation, vector_count, vector_of, Matrix,
    SemilinearMap,
};
use crate::perm::Permutation;
use crate::structure::socle;

#[derive(Debug, Clone)]
pub struct AffineSpec {
    pub field: FieldCtx,
    pub a: usize,
    pub zero_stabilizer: Vec<SemilinearMap>,
}

impl AffineSpec {
    pub fn new(field: FieldCtx, a: usize, zero_stabilizer: Vec<SemilinearMap>) -> Result<Self> {
        for g in &zero_stabilizer {
            if g.matrix.n != a {
                return Err(Error::InvalidParameter(format!("{}x{} matrix in dimension {a}", g.matrix.n, g.matrix.n)));
            }
            if !g.matrix.is_invertible(&field) {
                return Err(Error::Singular);
            }
        }
        vector_count(&field, a)?;
        Ok(Self { field, a, zero_stabilizer })
    }

    /// `AGL_a(p)`.
    pub fn agl(p: u32, a: usize) -> Result<Self> {
        let f = FieldCtx::new(p, 1)?;
        let gens = crate::linalg::matrix::gl_generators(&f, a).into_iter().map(SemilinearMap::linear).collect();
        Self::new(f, a, gens)
    }

    /// Reads the zero stabilizer off a permutation group on the vectors,
    /// whose generators must all be semilinear.
    pub fn from_permutations(field: FieldCtx, a: usize, g0: &Group) -> Result<Self> {
        let gens = g0
            .generators()
            .iter()
            .map(|p| {
                permutation_is_semilinear(&field, a, p)
                    .ok_or_else(|| Error::InvalidParameter(format!("{} is not semilinear", p.to_cycle_string())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, a, gens)
    }

    pub fn degree(&self) -> usize {
        vector_count(&self.field, self.a).expect("checked in new")
    }

    /// Dimension over the prime field.
    pub fn prime_dimension(&self) -> usize {
        self.a * self.field.e() as usize
    }

    pub fn zero_stabilizer_group(&self) -> Group {
        let perms = self
            .zero_stabilizer
            .iter()
            .map(|g| semilinear_to_permutation(&self.field, g).expect("checked in new"))
            .collect();
        Group::new(self.degree(), perms).expect("same degree")
    }

    /// Translations by the prime-field basis vectors.
    pub fn translations(&self) -> Group {
        let f = &self.field;
        let n = self.degree();
        let gens = (0..self.prime_dimension())
            .map(|j| {
                let u = vector_of(f, self.a, (f.p() as usize).pow(j as u32));
                let images = (0..n)
                    .map(|i| {
                        let v = vector_of(f, self.a, i);
                        let w: Vec<u32> = v.iter().zip(&u).map(|(&x, &y)| f.add(x, y)).collect();
                        index_of(f, &w)
                    })
                    .collect();
                Permutation::from_images(images).expect("translations are bijective")
            })
            .collect();
        Group::new(n, gens).expect("same degree")
    }
}

pub fn affine_group(spec: &AffineSpec) -> Group {
    let mut gens = spec.translations().generators().to_vec();
    gens.extend(spec.zero_stabilizer_group().generators().iter().cloned());
    Group::new(spec.degree(), gens).expect("same degree")
}

pub fn translation_subgroup(spec: &AffineSpec) -> Group {
    spec.translations()
}

/// `G_0^{(k-1)} ∩ GL(V)` over the prime field, by filtering the elements
/// of `GL_{ae}(p)`.
pub fn affcl_rhs(spec: &AffineSpec, k: usize, budget: &Budget) -> Result<Group> {
    if k < 2 {
        return Err(Error::InvalidParameter("need k >= 2".into()));
    }
    let closure = k_closure(&spec.zero_stabilizer_group(), k - 1, budget)?.group;
    let fp = FieldCtx::new(spec.field.p(), 1)?;
    let gl = gl_group(&fp, spec.prime_dimension())?;
    if gl.order() > budget.gl_elements.into() {
        return Err(Error::Budget {
            engine: "linear intersection",
            quantity: format!("|GL_{}({})|", spec.prime_dimension(), fp.p()),
            needed: gl.order_u64().map_or(u128::MAX, u128::from),
            limit: budget.gl_elements as u128,
        });
    }
    let mut kept = Vec::new();
    gl.for_each_element(|x| {
        if !x.is_identity() && closure.contains_unchecked(x) {
            kept.push(x.clone());
        }
    });
    Ok(Group::new(spec.degree(), kept)?.reduced())
}

#[derive(Debug, Clone)]
pub enum AffclOutcome {
    /// Both sides agree; the common order of the zero stabilizer.
    Holds { order: String },
    Fails { lhs: Group, rhs: Group },
    /// The closure is not affine with socle `V`.
    Inapplicable(String),
}

impl AffclOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, AffclOutcome::Holds { .. })
    }
}

/// Whether `V` is a normal subgroup of `h` equal to its socle.
fn has_socle(h: &Group, v: &Group, budget: &Budget) -> Result<Option<String>> {
    if !v.is_normal_in(h)? {
        return Ok(Some("translations are not normal in the closure".into()));
    }
    let s = socle(h, budget)?;
    if !s.equals(v)? {
        return Ok(Some(format!("socle of the closure has order {}, not {}", s.order(), v.order())));
    }
    Ok(None)
}

/// Compares the zero stabilizer of `G^{(k)}` with [`affcl_rhs`], after
/// checking that `G` and `G^{(k)}` both have socle `V`.
pub fn check_affcl(spec: &AffineSpec, k: usize, budget: &Budget) -> Result<AffclOutcome> {
    let g = affine_group(spec);
    let v = spec.translations();
    if let Some(why) = has_socle(&g, &v, budget)? {
        return Ok(AffclOutcome::Inapplicable(format!("group: {why}")));
    }
    let gk = k_closure(&g, k, budget)?.group;
    if let Some(why) = has_socle(&gk, &v, budget)? {
        return Ok(AffclOutcome::Inapplicable(format!("closure of order {}: {why}", gk.order())));
    }
    let lhs = gk.stabilizer(0);
    let rhs = affcl_rhs(spec, k, budget)?;
    Ok(if lhs.equals(&rhs)? {
        AffclOutcome::Holds {
            order: lhs.order().to_string(),
        }
    } else {
        AffclOutcome::Fails { lhs, rhs }
    })
}

/// `soc(G^{(k)}) = V` for a primitive affine group and `k >= 4`.
pub fn check_socle_preservation(spec: &AffineSpec, k: usize, budget: &Budget) -> Result<bool> {
    if k < 4 {
        return Err(Error::Precondition(format!("socle preservation needs k >= 4, got {k}")));
    }
    let g = affine_group(spec);
    if !is_primitive(&g) {
        return Err(Error::Precondition("the affine group is not primitive".into()));
    }
    let gk = k_closure(&g, k, budget)?.group;
    socle(&gk, budget)?.equals(&spec.translations())
}

/// Zero stabilizers for a grid: one subgroup per conjugacy class of
/// `ΓL_1(q)` or `GL_a(p)`, as semilinear generators.
pub fn linear_subgroup_specs(field: &FieldCtx, a: usize) -> Result<Vec<AffineSpec>> {
    let ambient = if a == 1 && field.e() > 1 {
        let f = field;
        let w = f.primitive_element();
        let gens = [SemilinearMap::linear(Matrix::scalar(1, w)), crate::linalg::matrix::frobenius_map(1)];
        let perms = gens.iter().map(|g| semilinear_to_permutation(f, g)).collect::<Result<Vec<_>>>()?;
        Group::new(vector_count(f, 1)?, perms)?
    } else {
        gl_group(field, a)?
    };
    let catalog = crate::subgroups::subgroup_catalog(&ambient, 20_000)?;
    catalog
        .representatives()
        .iter()
        .map(|h| AffineSpec::from_permutations(field.clone(), a, h))
        .collect()
}
