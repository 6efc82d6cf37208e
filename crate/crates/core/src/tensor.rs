//! Stabilizers of tensor decompositions, their projections onto the
//! factors, and the lines spanned by simple tensors.
//!
//! A coordinate of `V = X_1 ⊗ ⋯ ⊗ X_m` is a multi-index read in mixed
//! radix with the first factor most significant, as in
//! [`Matrix::kronecker`]. Points of `V` are vectors indexed by
//! [`index_of`].

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::actions::{orbit_coloring, tuple_image};
use crate::budget::Budget;
use crate::closure::{are_k_equivalent, partition_r_closure};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::linalg::field::FieldCtx;
use crate::linalg::matrix::{
    frobenius_map, gl_generators, index_of, matrix_to_permutation, permutation_is_semilinear,
    semilinear_to_permutation, vector_count, vector_of, Matrix, SemilinearMap,
};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorFrame {
    ctx: FieldCtx,
    dims: Vec<usize>,
    power: bool,
}

impl TensorFrame {
    /// `X ⊗ Y` with `dim X = dx` and `dim Y = dy`.
    pub fn product(ctx: FieldCtx, dx: usize, dy: usize) -> Result<Self> {
        if dx == 0 || dy == 0 {
            return Err(Error::InvalidParameter("factor dimensions must be positive".into()));
        }
        Ok(Self {
            ctx,
            dims: vec![dx, dy],
            power: false,
        })
    }

    /// `X ⊗ ⋯ ⊗ X` with `m` factors of dimension `d`. Its stabilizer
    /// also permutes the factors.
    pub fn power(ctx: FieldCtx, d: usize, m: usize) -> Result<Self> {
        if d == 0 || m < 2 {
            return Err(Error::InvalidParameter("a tensor power needs d >= 1 and m >= 2".into()));
        }
        Ok(Self {
            ctx,
            dims: vec![d; m],
            power: true,
        })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn factors(&self) -> usize {
        self.dims.len()
    }

    pub fn is_power(&self) -> bool {
        self.power
    }

    /// `dim V`.
    pub fn dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// `|V|`, checked against the point budget.
    pub fn points(&self, budget: &Budget) -> Result<usize> {
        let n = vector_count(&self.ctx, self.dim())?;
        if n > budget.points {
            return Err(Error::Budget {
                engine: "tensor frame",
                quantity: "|V|".into(),
                needed: n as u128,
                limit: budget.points as u128,
            });
        }
        Ok(n)
    }

    pub fn coordinate(&self, multi: &[usize]) -> usize {
        multi.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| acc * d + i)
    }

    pub fn multi_index(&self, mut c: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            out[k] = c % self.dims[k];
            c /= self.dims[k];
        }
        out
    }

    /// `x_1 ⊗ ⋯ ⊗ x_m`.
    pub fn tensor(&self, xs: &[Vec<u32>]) -> Vec<u32> {
        let f = &self.ctx;
        (0..self.dim())
            .map(|c| {
                self.multi_index(c)
                    .iter()
                    .zip(xs)
                    .fold(1, |acc, (&i, x)| f.mul(acc, x[i]))
            })
            .collect()
    }

    pub fn kronecker(&self, comps: &[Matrix]) -> Matrix {
        comps[1..]
            .iter()
            .fold(comps[0].clone(), |acc, m| acc.kronecker(&self.ctx, m))
    }

    /// Matrix of `x_1 ⊗ ⋯ ⊗ x_m -> x_{τ^{-1}(1)} ⊗ ⋯ ⊗ x_{τ^{-1}(m)}`.
    pub fn position_matrix(&self, tau: &Permutation) -> Matrix {
        let n = self.dim();
        let mut p = Matrix::zero(n);
        for c in 0..n {
            let i = self.multi_index(c);
            let mut j = vec![0; i.len()];
            for (k, &ik) in i.iter().enumerate() {
                j[tau.apply(k)] = ik;
            }
            p.set(c, self.coordinate(&j), 1);
        }
        p
    }

    /// Factors a nonzero `v` as `x_1 ⊗ ⋯ ⊗ x_m`, the product being exactly
    /// `v`.
    pub fn factor_simple(&self, v: &[u32]) -> Option<Vec<Vec<u32>>> {
        let f = &self.ctx;
        let lead = v.iter().position(|&x| x != 0)?;
        let star = self.multi_index(lead);
        let inv = f.inv(v[lead]).unwrap();
        let xs: Vec<Vec<u32>> = (0..self.dims.len())
            .map(|k| {
                (0..self.dims[k])
                    .map(|i| {
                        let mut j = star.clone();
                        j[k] = i;
                        let x = v[self.coordinate(&j)];
                        if k == 0 {
                            x
                        } else {
                            f.mul(x, inv)
                        }
                    })
                    .collect()
            })
            .collect();
        (self.tensor(&xs) == v).then_some(xs)
    }
}

/// Scales a nonzero vector so its first nonzero coordinate is 1.
pub fn normalize(f: &FieldCtx, v: &[u32]) -> Vec<u32> {
    match v.iter().find(|&&x| x != 0) {
        Some(&lead) => {
            let inv = f.inv(lead).unwrap();
            v.iter().map(|&x| f.mul(x, inv)).collect()
        }
        None => v.to_vec(),
    }
}

/// Representatives of the lines of `F_q^d`, in index order.
pub fn canonical_vectors(f: &FieldCtx, d: usize) -> Result<Vec<Vec<u32>>> {
    let n = vector_count(f, d)?;
    Ok((1..n)
        .map(|i| vector_of(f, d, i))
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .collect())
}

fn cyclic_shift(m: usize) -> Permutation {
    Permutation::from_images((0..m).map(|i| (i + 1) % m).collect()).unwrap()
}

fn transposition(m: usize) -> Permutation {
    let mut im: Vec<usize> = (0..m).collect();
    im.swap(0, 1);
    Permutation::from_images(im).unwrap()
}

/// Kronecker lifts of GL generators of each factor, the Frobenius map,
/// and for powers the position permutations.
pub fn stabilizer_generators(frame: &TensorFrame) -> Vec<SemilinearMap> {
    let f = &frame.ctx;
    let m = frame.factors();
    let mut gens = Vec::new();
    // for powers, lifts at the first position are spread by Sym(m)
    let lifted = if frame.power { 1 } else { m };
    for k in 0..lifted {
        for g in gl_generators(f, frame.dims[k]) {
            let comps: Vec<Matrix> = (0..m)
                .map(|j| if j == k { g.clone() } else { Matrix::identity(frame.dims[j]) })
                .collect();
            gens.push(SemilinearMap::linear(frame.kronecker(&comps)));
        }
    }
    if f.e() > 1 {
        gens.push(frobenius_map(frame.dim()));
    }
    if frame.power {
        gens.push(SemilinearMap::linear(frame.position_matrix(&transposition(m))));
        if m > 2 {
            gens.push(SemilinearMap::linear(frame.position_matrix(&cyclic_shift(m))));
        }
    }
    gens.retain(|g| *g != SemilinearMap::linear(Matrix::identity(frame.dim())));
    gens
}

/// The stabilizer of the decomposition as a group on `|V|` points.
pub fn stabilizer_group(frame: &TensorFrame, budget: &Budget) -> Result<Group> {
    let n = frame.points(budget)?;
    let perms = stabilizer_generators(frame)
        .iter()
        .map(|g| semilinear_to_permutation(&frame.ctx, g))
        .collect::<Result<Vec<_>>>()?;
    Group::new(n, perms)
}

/// The scalar map by a primitive element.
pub fn scalar_permutation(frame: &TensorFrame, budget: &Budget) -> Result<Permutation> {
    frame.points(budget)?;
    matrix_to_permutation(&frame.ctx, &Matrix::scalar(frame.dim(), frame.ctx.primitive_element()))
}

/// `g = λ · (v -> v^σ (g_1 ⊗ ⋯ ⊗ g_m) P_τ)` with each `g_i` scaled so its
/// first nonzero entry is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub components: Vec<Matrix>,
    pub scalar: u32,
    pub frob: u32,
    /// Factor `i` of the input lands in position `tau(i)`.
    pub tau: Permutation,
}

impl Decomposition {
    pub fn semilinear(&self, frame: &TensorFrame) -> SemilinearMap {
        let f = &frame.ctx;
        let matrix = frame
            .kronecker(&self.components)
            .scale(f, self.scalar)
            .mul(f, &frame.position_matrix(&self.tau));
        SemilinearMap {
            matrix,
            frob: self.frob,
        }
    }

    pub fn recompose(&self, frame: &TensorFrame) -> Result<Permutation> {
        semilinear_to_permutation(&frame.ctx, &self.semilinear(frame))
    }

    /// `g_i σ`, a representative of the coset `π_i(g)`.
    pub fn component_map(&self, i: usize) -> SemilinearMap {
        SemilinearMap {
            matrix: self.components[i].clone(),
            frob: self.frob,
        }
    }

    /// The action of `Π(g)` on a tuple of lines of the factors: factor `i`
    /// is moved by `π_i(g)` and placed in position `τ(i)`.
    pub fn act_on_lines(&self, frame: &TensorFrame, lines: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let f = &frame.ctx;
        let mut out = vec![Vec::new(); lines.len()];
        for (i, x) in lines.iter().enumerate() {
            out[self.tau.apply(i)] = normalize(f, &self.component_map(i).apply(f, x));
        }
        out
    }
}

/// A simple tensor whose image under `g` is not simple.
fn non_simple_image(frame: &TensorFrame, g: &Permutation, budget: &Budget) -> Option<(usize, usize)> {
    let lines = simple_tensor_lines(frame, budget).ok()?;
    lines
        .lines
        .iter()
        .map(|&s| (s, g.apply(s)))
        .find(|&(_, t)| !lines.is_simple(t))
}

fn not_decomposable(frame: &TensorFrame, g: &Permutation, budget: &Budget) -> Error {
    match non_simple_image(frame, g, budget) {
        Some((witness, image)) => Error::NotDecomposable { witness, image },
        None => Error::Precondition("the permutation does not preserve the tensor decomposition".into()),
    }
}

fn proportional(f: &FieldCtx, a: &[u32], b: &[u32]) -> bool {
    normalize(f, a) == normalize(f, b)
}

/// Splits an element of the stabilizer into its factor cosets, Frobenius
/// power and position permutation.
pub fn decompose(frame: &TensorFrame, g: &Permutation, budget: &Budget) -> Result<Decomposition> {
    let f = &frame.ctx;
    let n = frame.points(budget)?;
    if g.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: g.degree(),
        });
    }
    let fail = || not_decomposable(frame, g, budget);
    let dim = frame.dim();
    let m = frame.factors();
    let sl = permutation_is_semilinear(f, dim, g).ok_or_else(fail)?;
    let images: Vec<Vec<Vec<u32>>> = (0..dim)
        .map(|c| frame.factor_simple(sl.matrix.row(c)))
        .collect::<Option<_>>()
        .ok_or_else(fail)?;

    // moving the k-th input index changes only the τ(k)-th output factor
    let base = &images[0];
    let mut tau_images = vec![0; m];
    for k in 0..m {
        if frame.dims[k] < 2 {
            tau_images[k] = k;
            continue;
        }
        let mut e = vec![0; m];
        e[k] = 1;
        let moved = &images[frame.coordinate(&e)];
        let changed: Vec<usize> = (0..m).filter(|&j| !proportional(f, &base[j], &moved[j])).collect();
        if changed.len() != 1 {
            return Err(fail());
        }
        tau_images[k] = changed[0];
    }
    let tau = Permutation::from_images(tau_images).map_err(|_| fail())?;
    if !frame.power && !tau.is_identity() {
        return Err(Error::Precondition("the element exchanges the tensor factors".into()));
    }

    let kron = sl.matrix.mul(f, &frame.position_matrix(&tau.inverse()));
    let lead = kron.data.iter().position(|&x| x != 0).expect("invertible");
    let (is, js) = (frame.multi_index(lead / dim), frame.multi_index(lead % dim));
    let c_inv = f.inv(kron.data[lead]).unwrap();
    let comps: Vec<Matrix> = (0..m)
        .map(|k| {
            let d = frame.dims[k];
            let mut h = Matrix::zero(d);
            for a in 0..d {
                for b in 0..d {
                    let (mut ii, mut jj) = (is.clone(), js.clone());
                    ii[k] = a;
                    jj[k] = b;
                    let x = kron.get(frame.coordinate(&ii), frame.coordinate(&jj));
                    h.set(a, b, if k == 0 { x } else { f.mul(x, c_inv) });
                }
            }
            h
        })
        .collect();
    if frame.kronecker(&comps) != kron {
        return Err(fail());
    }
    let mut scalar = 1;
    let components = comps
        .iter()
        .map(|h| {
            let (normal, s) = h.normalize_scalar(f);
            scalar = f.mul(scalar, s);
            normal
        })
        .collect();
    let d = Decomposition {
        components,
        scalar,
        frob: sl.frob,
        tau,
    };
    if d.recompose(frame)? != *g {
        return Err(Error::Precondition("recomposition does not reproduce the element".into()));
    }
    Ok(d)
}

/// Lines of `V` spanned by simple tensors.
#[derive(Debug, Clone)]
pub struct LineSet {
    /// Representatives with first nonzero coordinate 1, as increasing
    /// point indices.
    pub lines: Vec<usize>,
    simple: HashSet<usize>,
}

impl LineSet {
    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Whether a point is a nonzero simple tensor.
    pub fn is_simple(&self, point: usize) -> bool {
        self.simple.contains(&point)
    }

    /// Number of nonzero simple tensors.
    pub fn simple_count(&self) -> usize {
        self.simple.len()
    }

    pub fn preserved_by(&self, p: &Permutation) -> bool {
        self.simple.iter().all(|&s| self.simple.contains(&p.apply(s)))
    }
}

pub fn simple_tensor_lines(frame: &TensorFrame, budget: &Budget) -> Result<LineSet> {
    frame.points(budget)?;
    let f = &frame.ctx;
    let reps = frame
        .dims
        .iter()
        .map(|&d| canonical_vectors(f, d))
        .collect::<Result<Vec<_>>>()?;
    let mut lines = Vec::new();
    let mut simple = HashSet::new();
    let mut odometer = vec![0usize; reps.len()];
    loop {
        let xs: Vec<Vec<u32>> = odometer.iter().zip(&reps).map(|(&i, r)| r[i].clone()).collect();
        let v = frame.tensor(&xs);
        lines.push(index_of(f, &v));
        for s in 1..f.q() {
            simple.insert(index_of(f, &v.iter().map(|&x| f.mul(x, s)).collect::<Vec<_>>()));
        }
        let Some(k) = (0..reps.len()).rev().find(|&k| odometer[k] + 1 < reps[k].len()) else {
            break;
        };
        odometer[k] += 1;
        for o in &mut odometer[k + 1..] {
            *o = 0;
        }
    }
    lines.sort_unstable();
    Ok(LineSet { lines, simple })
}

pub fn preserves_simple_tensors(frame: &TensorFrame, g: &Group, budget: &Budget) -> Result<bool> {
    let lines = simple_tensor_lines(frame, budget)?;
    if g.degree() != frame.points(budget)? {
        return Err(Error::DegreeMismatch {
            expected: frame.points(budget)?,
            found: g.degree(),
        });
    }
    Ok(g.generators().iter().all(|p| lines.preserved_by(p)))
}

/// The projections of a group containing the scalars.
#[derive(Debug, Clone)]
pub enum Projections {
    /// Full preimages `G_X` and `G_Y` of `π_X(G)` and `π_Y(G)`.
    Product { x: Group, y: Group },
    /// `G_X` from the elements fixing the first position, and `π(G)`.
    Power { x: Group, top: Group },
}

fn require_scalars(frame: &TensorFrame, g: &Group, budget: &Budget) -> Result<()> {
    let n = frame.points(budget)?;
    if g.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: g.degree(),
        });
    }
    if !g.contains(&scalar_permutation(frame, budget)?)? {
        return Err(Error::Precondition("the group does not contain the scalars".into()));
    }
    Ok(())
}

/// The group on `F_q^d` generated by the scalars and `maps`.
fn factor_group(f: &FieldCtx, d: usize, maps: &[SemilinearMap]) -> Result<Group> {
    let mut perms = vec![matrix_to_permutation(f, &Matrix::scalar(d, f.primitive_element()))?];
    for m in maps {
        perms.push(semilinear_to_permutation(f, m)?);
    }
    Group::new(vector_count(f, d)?, perms)
}

/// `π(G)` on the tensor positions.
pub fn position_group(frame: &TensorFrame, g: &Group, budget: &Budget) -> Result<Group> {
    let taus = g
        .generators()
        .iter()
        .map(|p| Ok(decompose(frame, p, budget)?.tau))
        .collect::<Result<Vec<_>>>()?;
    Group::new(frame.factors(), taus)
}

pub fn projection_groups(frame: &TensorFrame, g: &Group, budget: &Budget) -> Result<Projections> {
    require_scalars(frame, g, budget)?;
    let f = &frame.ctx;
    if !frame.power {
        let ds = g
            .generators()
            .iter()
            .map(|p| decompose(frame, p, budget))
            .collect::<Result<Vec<_>>>()?;
        let side = |i: usize| {
            let maps: Vec<SemilinearMap> = ds.iter().map(|d| d.component_map(i)).collect();
            factor_group(f, frame.dims[i], &maps)
        };
        return Ok(Projections::Product { x: side(0)?, y: side(1)? });
    }
    let gens: Vec<(Permutation, Permutation)> = g
        .generators()
        .iter()
        .map(|p| Ok((p.clone(), decompose(frame, p, budget)?.tau)))
        .collect::<Result<_>>()?;
    let top = Group::new(frame.factors(), gens.iter().map(|(_, t)| t.clone()).collect())?;
    if !top.is_transitive() {
        return Err(Error::Intransitive);
    }
    let position = |s: &usize, p: &Permutation| {
        let (_, t) = gens.iter().find(|(q, _)| q == p).expect("acting by generators");
        t.apply(*s)
    };
    let (first, _) = g.stabilizer_in_action(0usize, position, frame.factors())?;
    let maps = first
        .generators()
        .iter()
        .map(|p| Ok(decompose(frame, p, budget)?.component_map(0)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Projections::Power {
        x: factor_group(f, frame.dims[0], &maps)?,
        top,
    })
}

/// The action on the lines of `F_q^d` induced by a group on its vectors.
pub fn line_action(f: &FieldCtx, d: usize, g: &Group) -> Result<Group> {
    let reps = canonical_vectors(f, d)?;
    let mut line_of = vec![usize::MAX; vector_count(f, d)?];
    for (i, v) in reps.iter().enumerate() {
        line_of[index_of(f, v)] = i;
    }
    let perms = g
        .generators()
        .iter()
        .map(|p| {
            let images = reps
                .iter()
                .map(|v| line_of[index_of(f, &normalize(f, &vector_of(f, d, p.apply(index_of(f, v)))))])
                .collect();
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    Group::new(reps.len().max(1), perms)
}

/// `G^(k) ∩ L` for the stabilizer `L` of the frame: the elements of `L`
/// fixing every `k`-orbit of `G`.
pub fn closure_in_stabilizer(frame: &TensorFrame, g: &Group, k: usize, budget: &Budget) -> Result<Group> {
    let n = frame.points(budget)?;
    let coloring = orbit_coloring(g, k, budget)?;
    let mut h = g.clone();
    for x in stabilizer_group(frame, budget)?.elements(budget.elements)? {
        if h.contains(&x)? {
            continue;
        }
        if (0..coloring.colors.len()).all(|t| coloring.colors[tuple_image(n, k, t, &x)] == coloring.colors[t]) {
            h = h.join(&[x])?;
        }
    }
    Ok(h)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "reason", rename_all = "snake_case")]
pub enum TensorCheck {
    Holds,
    /// The hypotheses do not hold, so nothing was tested.
    HypothesisFailed(String),
    ConclusionFailed(String),
}

impl TensorCheck {
    pub fn holds(&self) -> bool {
        *self == TensorCheck::Holds
    }

    pub fn refuted(&self) -> bool {
        matches!(self, TensorCheck::ConclusionFailed(_))
    }
}

/// Scalars, decomposability, and `τ` trivial unless `any_tau`.
fn hypothesis_failure(frame: &TensorFrame, g: &Group, name: &str, any_tau: bool, budget: &Budget) -> Result<Option<String>> {
    match require_scalars(frame, g, budget) {
        Err(Error::Precondition(_)) => return Ok(Some(format!("{name} does not contain the scalars"))),
        Err(e) => return Err(e),
        Ok(()) => {}
    }
    for p in g.generators() {
        match decompose(frame, p, budget) {
            Ok(d) if any_tau || d.tau.is_identity() => {}
            Ok(_) => return Ok(Some(format!("{name} permutes the tensor factors"))),
            Err(Error::NotDecomposable { .. }) | Err(Error::Precondition(_)) => {
                return Ok(Some(format!("{name} does not preserve the decomposition")))
            }
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

fn equivalence_failure(a: &Group, b: &Group, k: usize, what: &str, budget: &Budget) -> Result<Option<String>> {
    Ok(are_k_equivalent(a, b, k, budget)?
        .map(|w| format!("{what} are not {k}-equivalent: {:?} and {:?}", w.first, w.second)))
}

/// Whether `G ~_k H` forces `G_X ~_k H_X` and `G_Y ~_k H_Y`.
pub fn check_twotens(frame: &TensorFrame, g: &Group, h: &Group, k: usize, budget: &Budget) -> Result<TensorCheck> {
    if frame.factors() != 2 || k == 0 {
        return Err(Error::InvalidParameter("needs a two-factor frame and k >= 1".into()));
    }
    for (grp, name) in [(g, "G"), (h, "H")] {
        if let Some(why) = hypothesis_failure(frame, grp, name, false, budget)? {
            return Ok(TensorCheck::HypothesisFailed(why));
        }
    }
    if let Some(why) = equivalence_failure(g, h, k, "G and H", budget)? {
        return Ok(TensorCheck::HypothesisFailed(why));
    }
    let sides = |grp: &Group| -> Result<(Group, Group)> {
        let ds = grp
            .generators()
            .iter()
            .map(|p| decompose(frame, p, budget))
            .collect::<Result<Vec<_>>>()?;
        let side = |i: usize| {
            let maps: Vec<SemilinearMap> = ds.iter().map(|d| d.component_map(i)).collect();
            factor_group(&frame.ctx, frame.dims[i], &maps)
        };
        Ok((side(0)?, side(1)?))
    };
    let (gx, gy) = sides(g)?;
    let (hx, hy) = sides(h)?;
    for (a, b, what) in [(&gx, &hx, "G_X and H_X"), (&gy, &hy, "G_Y and H_Y")] {
        if let Some(why) = equivalence_failure(a, b, k, what, budget)? {
            return Ok(TensorCheck::ConclusionFailed(why));
        }
    }
    Ok(TensorCheck::Holds)
}

/// Whether `G ~_k H` on an `m`-fold power forces `G_X ~_k H_X` and
/// `π(G)^[r] = π(H)^[r]` for `r = min(|Orb_k(G_X/F^×)|, m)`.
pub fn check_manytens(frame: &TensorFrame, g: &Group, h: &Group, k: usize, budget: &Budget) -> Result<TensorCheck> {
    if !frame.power || frame.dims[0] < 2 || k < 3 {
        return Err(Error::InvalidParameter("needs a tensor power of dimension >= 2 and k >= 3".into()));
    }
    let mut parts = Vec::new();
    for (grp, name) in [(g, "G"), (h, "H")] {
        if let Some(why) = hypothesis_failure(frame, grp, name, true, budget)? {
            return Ok(TensorCheck::HypothesisFailed(why));
        }
        match projection_groups(frame, grp, budget) {
            Ok(Projections::Power { x, top }) => parts.push((x, top)),
            Ok(Projections::Product { .. }) => unreachable!("power frame"),
            Err(Error::Intransitive) => {
                return Ok(TensorCheck::HypothesisFailed(format!("π({name}) is intransitive")))
            }
            Err(e) => return Err(e),
        }
    }
    if let Some(why) = equivalence_failure(g, h, k, "G and H", budget)? {
        return Ok(TensorCheck::HypothesisFailed(why));
    }
    let (gx, pg) = &parts[0];
    let (hx, ph) = &parts[1];
    if let Some(why) = equivalence_failure(gx, hx, k, "G_X and H_X", budget)? {
        return Ok(TensorCheck::ConclusionFailed(why));
    }
    let lines = line_action(&frame.ctx, frame.dims[0], gx)?;
    let r = orbit_coloring(&lines, k, budget)?.num_colors.min(frame.factors());
    let (cg, ch) = (partition_r_closure(pg, r, budget)?, partition_r_closure(ph, r, budget)?);
    if !cg.equals(&ch)? {
        return Ok(TensorCheck::ConclusionFailed(format!(
            "π(G)^[{r}] has order {} and π(H)^[{r}] has order {}",
            cg.order(),
            ch.order()
        )));
    }
    Ok(TensorCheck::Holds)
}

/// `F_q^a` seen as `V_0 ⊗ F_q` over a proper subfield `F_{q0}`.
#[derive(Debug, Clone)]
pub struct SubfieldFrame {
    /// Factors `V_0 = F_{q0}^a` and `F_q` of dimension `[F_q : F_{q0}]`.
    pub frame: TensorFrame,
    pub field: FieldCtx,
    pub a: usize,
    /// Point of the frame to the matching point of `F_q^a`.
    pub embedding: Vec<usize>,
}

impl SubfieldFrame {
    /// Nonzero points `λv` of `F_q^a` with `λ ∈ F_q` and `v ∈ V_0`.
    pub fn subfield_points(&self) -> Result<BTreeSet<usize>> {
        let f = &self.field;
        let d = self.frame.field().e();
        let sub: HashSet<u32> = f.subfield(d)?.into_iter().collect();
        let mut out = BTreeSet::new();
        for i in 1..vector_count(f, self.a)? {
            let v = vector_of(f, self.a, i);
            if v.iter().all(|x| sub.contains(x)) {
                for s in 1..f.q() {
                    out.insert(index_of(f, &v.iter().map(|&x| f.mul(x, s)).collect::<Vec<_>>()));
                }
            }
        }
        Ok(out)
    }

    /// A permutation of `F_q^a` in frame coordinates.
    pub fn pull_back(&self, p: &Permutation) -> Permutation {
        let mut back = vec![0; self.embedding.len()];
        for (i, &e) in self.embedding.iter().enumerate() {
            back[e] = i;
        }
        Permutation::from_images(self.embedding.iter().map(|&e| back[p.apply(e)]).collect())
            .expect("embedding is a bijection")
    }
}

pub fn subfield_frame(field: &FieldCtx, q0: u32, a: usize, budget: &Budget) -> Result<SubfieldFrame> {
    let (p, e) = (field.p(), field.e());
    let d = (1..e)
        .find(|&d| p.pow(d) == q0 && e % d == 0)
        .ok_or_else(|| Error::InvalidParameter(format!("F_{q0} is not a proper subfield of F_{}", field.q())))?;
    if a == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let small = FieldCtx::new(p, d)?;
    let degree = (e / d) as usize;
    // a root in F_q of the modulus of F_{q0} fixes the embedding
    let modulus = small.modulus().to_vec();
    let beta = if d == 1 {
        1
    } else {
        *field
            .subfield(d)?
            .iter()
            .find(|&&b| {
                let low = modulus
                    .iter()
                    .enumerate()
                    .fold(0, |acc, (i, &c)| field.add(acc, field.mul(c, field.pow(b, i as u64))));
                field.add(low, field.pow(b, d as u64)) == 0
            })
            .expect("the subfield contains a root")
    };
    let embed = |x: u32| -> u32 {
        (0..d).fold(0, |acc, i| {
            let digit = x / p.pow(i) % p;
            field.add(acc, field.mul(digit, field.pow(beta, i as u64)))
        })
    };
    let alpha = field.primitive_element();
    let frame = TensorFrame::product(small.clone(), a, degree)?;
    let n = frame.points(budget)?;
    let embedding: Vec<usize> = (0..n)
        .map(|idx| {
            let w = vector_of(&small, a * degree, idx);
            let v: Vec<u32> = (0..a)
                .map(|i| {
                    (0..degree).fold(0, |acc, j| {
                        field.add(acc, field.mul(embed(w[i * degree + j]), field.pow(alpha, j as u64)))
                    })
                })
                .collect();
            index_of(field, &v)
        })
        .collect();
    let sf = SubfieldFrame {
        frame,
        field: field.clone(),
        a,
        embedding,
    };
    let lines = simple_tensor_lines(&sf.frame, budget)?;
    let image: BTreeSet<usize> = (0..n).filter(|&i| lines.is_simple(i)).map(|i| sf.embedding[i]).collect();
    let distinct: HashSet<usize> = sf.embedding.iter().copied().collect();
    if distinct.len() != n || image != sf.subfield_points()? {
        return Err(Error::Precondition("simple tensors do not match the subfield lines".into()));
    }
    Ok(sf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn b() -> Budget {
        Budget::default()
    }

    fn f(q: u32) -> FieldCtx {
        FieldCtx::of_order(q).unwrap()
    }

    #[test]
    fn stabilizer_orders() {
        let fr = TensorFrame::product(f(2), 2, 3).unwrap();
        assert_eq!(stabilizer_group(&fr, &b()).unwrap().order_u64(), Some(1008));
        let fr = TensorFrame::power(f(3), 2, 2).unwrap();
        assert_eq!(stabilizer_group(&fr, &b()).unwrap().order_u64(), Some(48 * 48));
        let fr = TensorFrame::product(f(5), 1, 1).unwrap();
        assert_eq!(stabilizer_group(&fr, &b()).unwrap().order_u64(), Some(4));
    }

    #[test]
    fn kronecker_acts_on_simple_tensors() {
        let fq = f(3);
        let fr = TensorFrame::product(fq.clone(), 2, 2).unwrap();
        let gx = Matrix::from_rows(vec![vec![1, 2], vec![0, 1]]).unwrap();
        let gy = Matrix::from_rows(vec![vec![0, 1], vec![2, 2]]).unwrap();
        let k = fr.kronecker(&[gx.clone(), gy.clone()]);
        for x in canonical_vectors(&fq, 2).unwrap() {
            for y in canonical_vectors(&fq, 2).unwrap() {
                let lhs = k.apply_row(&fq, &fr.tensor(&[x.clone(), y.clone()]));
                let rhs = fr.tensor(&[gx.apply_row(&fq, &x), gy.apply_row(&fq, &y)]);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn decompositions() {
        let fq = f(3);
        let fr = TensorFrame::product(fq.clone(), 2, 2).unwrap();
        let gx = Matrix::from_rows(vec![vec![2, 1], vec![1, 0]]).unwrap();
        let gy = Matrix::from_rows(vec![vec![1, 1], vec![0, 1]]).unwrap();
        let p = matrix_to_permutation(&fq, &fr.kronecker(&[gx.clone(), gy.clone()])).unwrap();
        let d = decompose(&fr, &p, &b()).unwrap();
        assert_eq!(d.components[0], gx.normalize_scalar(&fq).0);
        assert_eq!(d.components[1], gy);
        assert!(d.tau.is_identity() && d.frob == 0);
        assert_eq!(d.recompose(&fr).unwrap(), p);

        let s = scalar_permutation(&fr, &b()).unwrap();
        let d = decompose(&fr, &s, &b()).unwrap();
        assert!(d.components.iter().all(|c| *c == Matrix::identity(2)));
        assert_eq!((d.scalar, d.frob), (2, 0));

        let pw = TensorFrame::power(fq.clone(), 2, 2).unwrap();
        let swap = matrix_to_permutation(&fq, &pw.position_matrix(&transposition(2))).unwrap();
        let d = decompose(&pw, &swap, &b()).unwrap();
        assert_eq!(d.tau, transposition(2));
        assert!(d.components.iter().all(|c| *c == Matrix::identity(2)));
        // the swap does not lie in the stabilizer of an unordered product
        assert!(decompose(&fr, &swap, &b()).is_err());
    }

    #[test]
    fn frobenius_is_recovered() {
        let fq = f(4);
        let fr = TensorFrame::product(fq.clone(), 1, 2).unwrap();
        let fro = semilinear_to_permutation(&fq, &frobenius_map(2)).unwrap();
        let d = decompose(&fr, &fro, &b()).unwrap();
        assert_eq!(d.frob, 1);
        assert_eq!(d.recompose(&fr).unwrap(), fro);
    }

    #[test]
    fn random_elements_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for fr in [
            TensorFrame::product(f(2), 2, 3).unwrap(),
            TensorFrame::power(f(3), 2, 2).unwrap(),
            TensorFrame::power(f(2), 2, 3).unwrap(),
            TensorFrame::product(f(4), 2, 2).unwrap(),
        ] {
            let l = stabilizer_group(&fr, &b()).unwrap();
            let lines = simple_tensor_lines(&fr, &b()).unwrap();
            for _ in 0..50 {
                let g = l.random_element(&mut rng);
                let d = decompose(&fr, &g, &b()).unwrap();
                assert_eq!(d.recompose(&fr).unwrap(), g);
                // Π(g) and g agree on simple lines
                let &s = lines.lines.last().unwrap();
                let xs = fr.factor_simple(&vector_of(fr.field(), fr.dim(), s)).unwrap();
                let xs: Vec<Vec<u32>> = xs.iter().map(|x| normalize(fr.field(), x)).collect();
                let image = fr.factor_simple(&vector_of(fr.field(), fr.dim(), g.apply(s))).unwrap();
                let image: Vec<Vec<u32>> = image.iter().map(|x| normalize(fr.field(), x)).collect();
                assert_eq!(d.act_on_lines(&fr, &xs), image);
            }
        }
    }

    #[test]
    fn non_simple_images_are_witnessed() {
        let fr = TensorFrame::product(f(2), 2, 2).unwrap();
        let lines = simple_tensor_lines(&fr, &b()).unwrap();
        let s = lines.lines[0];
        let t = (1..16).find(|&t| !lines.is_simple(t)).unwrap();
        let mut im: Vec<usize> = (0..16).collect();
        im.swap(s, t);
        let p = Permutation::from_images(im).unwrap();
        match decompose(&fr, &p, &b()) {
            Err(Error::NotDecomposable { witness, image }) => {
                assert!(lines.is_simple(witness) && !lines.is_simple(image));
            }
            other => panic!("{other:?}"),
        }
        assert!(!preserves_simple_tensors(&fr, &Group::new(16, vec![p]).unwrap(), &b()).unwrap());
    }

    #[test]
    fn simple_tensor_counts() {
        let fr = TensorFrame::product(f(2), 2, 3).unwrap();
        let lines = simple_tensor_lines(&fr, &b()).unwrap();
        assert_eq!((lines.len(), lines.simple_count()), (21, 21));
        let l = stabilizer_group(&fr, &b()).unwrap();
        assert!(preserves_simple_tensors(&fr, &l, &b()).unwrap());
        let fr = TensorFrame::power(f(3), 2, 2).unwrap();
        assert_eq!(simple_tensor_lines(&fr, &b()).unwrap().simple_count(), 8 * 8 / 2);
    }

    #[test]
    fn projections() {
        let fr = TensorFrame::product(f(2), 2, 3).unwrap();
        let l = stabilizer_group(&fr, &b()).unwrap();
        match projection_groups(&fr, &l, &b()).unwrap() {
            Projections::Product { x, y } => {
                assert_eq!(x.order_u64(), Some(6));
                assert_eq!(y.order_u64(), Some(168));
            }
            _ => unreachable!(),
        }
        let fr = TensorFrame::product(f(5), 2, 2).unwrap();
        let s = Group::new(625, vec![scalar_permutation(&fr, &b()).unwrap()]).unwrap();
        match projection_groups(&fr, &s, &b()).unwrap() {
            Projections::Product { x, .. } => assert_eq!(x.order_u64(), Some(4)),
            _ => unreachable!(),
        }
        assert!(matches!(
            projection_groups(&fr, &Group::trivial(625), &b()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn diagonal_power_projections() {
        let fq = f(3);
        let fr = TensorFrame::power(fq.clone(), 2, 2).unwrap();
        let mut gens: Vec<Permutation> = gl_generators(&fq, 2)
            .iter()
            .map(|g| matrix_to_permutation(&fq, &fr.kronecker(&[g.clone(), g.clone()])).unwrap())
            .collect();
        gens.push(matrix_to_permutation(&fq, &fr.position_matrix(&transposition(2))).unwrap());
        gens.push(scalar_permutation(&fr, &b()).unwrap());
        let g = Group::new(81, gens).unwrap();
        match projection_groups(&fr, &g, &b()).unwrap() {
            Projections::Power { x, top } => {
                assert_eq!(top.order_u64(), Some(2));
                assert_eq!(x.order_u64(), Some(48));
            }
            _ => unreachable!(),
        }
        // without the swap the positions are not moved
        let no_swap = Group::new(81, g.generators().iter().filter(|p| decompose(&fr, p, &b()).unwrap().tau.is_identity()).cloned().collect()).unwrap();
        assert!(matches!(projection_groups(&fr, &no_swap, &b()), Err(Error::Intransitive)));
    }

    #[test]
    fn twotens_on_equal_groups() {
        let fr = TensorFrame::product(f(2), 2, 3).unwrap();
        let l = stabilizer_group(&fr, &b()).unwrap();
        assert!(check_twotens(&fr, &l, &l, 2, &b()).unwrap().holds());
        let h = closure_in_stabilizer(&fr, &l, 2, &b()).unwrap();
        assert_eq!(h.order(), l.order());
    }

    #[test]
    fn twotens_reports_failed_hypotheses() {
        let fr = TensorFrame::product(f(3), 1, 2).unwrap();
        let l = stabilizer_group(&fr, &b()).unwrap();
        let s = Group::new(9, vec![scalar_permutation(&fr, &b()).unwrap()]).unwrap();
        let r = check_twotens(&fr, &l, &s, 1, &b()).unwrap();
        assert!(matches!(r, TensorCheck::HypothesisFailed(_)), "{r:?}");
        let r = check_twotens(&fr, &Group::trivial(9), &l, 1, &b()).unwrap();
        assert!(matches!(r, TensorCheck::HypothesisFailed(_)));
    }

    #[test]
    fn manytens_on_full_stabilizer() {
        let fr = TensorFrame::power(f(3), 2, 2).unwrap();
        let l = stabilizer_group(&fr, &b()).unwrap();
        let with_scalar = l.join(&[scalar_permutation(&fr, &b()).unwrap()]).unwrap();
        assert!(check_manytens(&fr, &l, &l, 3, &b()).unwrap().holds());
        assert!(check_manytens(&fr, &l, &with_scalar, 3, &b()).unwrap().holds());
    }

    #[test]
    fn subfield_frames() {
        let sf = subfield_frame(&f(4), 2, 2, &b()).unwrap();
        assert_eq!(sf.frame.points(&b()).unwrap(), 16);
        assert_eq!(sf.subfield_points().unwrap().len(), 9);
        let sf = subfield_frame(&f(9), 3, 1, &b()).unwrap();
        assert_eq!(sf.subfield_points().unwrap().len(), 8);
        assert!(subfield_frame(&f(4), 4, 2, &b()).is_err());
        assert!(subfield_frame(&f(8), 4, 1, &b()).is_err());
    }
}
