//! The verification suite run by `kclosure verify` and the acceptance test.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::actions::{block_systems, is_primitive, orbits, transitivity_degree, tuple_orbit_size};
use crate::affine::{affine_group, check_affcl, check_socle_preservation, linear_subgroup_specs, AffclOutcome, AffineSpec};
use crate::budget::Budget;
use crate::closure::{are_k_equivalent, k_closure, k_closure_with, partition_r_closure, Engine};
use crate::constructions::{check_imprimitive_closure_formula, check_product_action_closure_formula, direct_product_disjoint, wreath_imprimitive};
use crate::corpus::load_corpus;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::linalg::classical::gl_order;
use crate::linalg::{FieldCtx, Matrix};
use crate::perm::Permutation;
use crate::structure::{alt_section_free, audit_c6, is_solvable, regular_orbit_check, AltFreeOptions, Provenance};
use crate::subgroups::subgroups_of_symmetric;
use crate::tensor::{
    check_manytens, check_twotens, closure_in_stabilizer, decompose, normalize, scalar_permutation, simple_tensor_lines,
    stabilizer_group, TensorCheck, TensorFrame,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// A budget refused the work; not counted as a failure.
    Skip,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub claim: &'static str,
    pub outcome: Outcome,
    pub details: Vec<String>,
    pub millis: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifySuite {
    pub checks: Vec<CheckResult>,
}

impl VerifySuite {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != Outcome::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.outcome {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::Skip => "SKIP",
            };
            out.push_str(&format!("{tag} {} ({} ms): {}\n", c.name, c.millis, c.claim));
            for d in &c.details {
                out.push_str(&format!("    {d}\n"));
            }
        }
        out
    }
}

/// Accumulates sub-checks for one criterion.
#[derive(Debug, Default)]
pub struct Tally {
    pub ok: bool,
    pub details: Vec<String>,
    failures: usize,
}

impl Tally {
    fn new() -> Self {
        Self {
            ok: true,
            ..Self::default()
        }
    }

    fn check(&mut self, cond: bool, what: impl FnOnce() -> String) {
        if !cond {
            self.ok = false;
            self.failures += 1;
            // keep reports readable on mass failure
            if self.failures <= 10 {
                self.details.push(format!("failed: {}", what()));
            }
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.details.push(s.into());
    }
}

pub struct Criterion {
    pub name: &'static str,
    pub claim: &'static str,
    pub time_limit: Duration,
    run: fn(&Budget) -> Result<Tally>,
}

fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

fn sub(a: &Group, b: &Group) -> Result<bool> {
    a.is_subgroup_of(b)
}

fn sorted_orbits(g: &Group) -> Vec<Vec<usize>> {
    let mut o: Vec<Vec<usize>> = orbits(g)
        .into_iter()
        .map(|mut v| {
            v.sort_unstable();
            v
        })
        .collect();
    o.sort();
    o
}

fn agl_closures(b: &Budget) -> Result<Tally> {
    let mut t = Tally::new();
    let g = load_corpus("agl(3,2)")?;
    let c3 = k_closure(&g, 3, b)?.group;
    let c4 = k_closure(&g, 4, b)?.group;
    t.check(c3.order() == factorial(8), || format!("|G^(3)| = {}", c3.order()));
    let agl = gl_order(3, 2) * 8u32;
    t.check(c4.order() == agl, || format!("|G^(4)| = {}", c4.order()));
    t.note(format!("|G^(3)| = {}, |G^(4)| = {}", c3.order(), c4.order()));
    Ok(t)
}

fn m24(b: &Budget) -> Result<Tally> {
    let mut t = Tally::new();
    let g = load_corpus("m24")?;
    let td = transitivity_degree(&g);
    t.check(td == 5, || format!("transitivity degree {td}"));
    let orbit = tuple_orbit_size(&g, &[0, 1, 2, 3, 4], b)?;
    let distinct: u64 = (20..=24).product();
    t.check(orbit == distinct, || format!("5-tuple orbit {orbit} vs {distinct}"));
    let c4 = k_closure(&g, 4, b)?;
    t.check(c4.engine == Engine::TransitivityShortcut, || format!("engine {}", c4.engine));
    t.check(c4.group.order() == factorial(24), || format!("|G^(4)| = {}", c4.group.order()));
    let opts = AltFreeOptions {
        facts: true,
        ..AltFreeOptions::default()
    };
    let r = alt_section_free(&g, 9, &opts, b)?;
    t.check(r.is_free() && r.provenance == Provenance::FactTable, || format!("Alt(9)-freeness: {}", r.reason));
    t.note(format!("5-tuple orbit {orbit}, G^(4) by {}, Alt(9)-free from the fact table", c4.engine));
    Ok(t)
}

fn closure_axioms(b: &Budget) -> Result<Tally> {
    let mut t = Tally::new();
    let mut tested = 0;
    for n in 1..=5 {
        let cat = subgroups_of_symmetric(n)?;
        let subs = &cat.subgroups;
        let cl = subs
            .iter()
            .map(|g| (1..=5).map(|k| Ok(k_closure(g, k, b)?.group)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        for (i, g) in subs.iter().enumerate() {
            tested += 1;
            for k in 1..=4 {
                let gk = &cl[i][k - 1];
                t.check(sub(g, gk)?, || format!("G <= G^({k}) for {g:?}"));
                t.check(sub(&cl[i][k], gk)?, || format!("G^({}) <= G^({k}) for {g:?}", k + 1));
                t.check(k_closure(gk, k, b)?.group.equals(gk)?, || format!("idempotence at k = {k} for {g:?}"));
                t.check(sorted_orbits(gk) == sorted_orbits(g), || format!("orbits at k = {k} for {g:?}"));
                if k >= 2 {
                    if g.is_transitive() {
                        for bs in block_systems(g)? {
                            t.check(bs.is_invariant(gk), || format!("blocks at k = {k} for {g:?}"));
                        }
                    }
                    for a in 0..n {
                        let eq = are_k_equivalent(&g.stabilizer(a), &gk.stabilizer(a), k - 1, b)?.is_none();
                        t.check(eq, || format!("stabilizer of {a} at k = {k} for {g:?}"));
                    }
                }
            }
            let base = g.base_size();
            t.check(k_closure(g, base + 1, b)?.group.equals(g)?, || format!("G^(b+1) = G for {g:?}"));
        }
        for (i, h) in subs.iter().enumerate() {
            for (j, g) in subs.iter().enumerate() {
                if i == j || g.order() % h.order() != BigUint::from(0u32) || !sub(h, g)? {
                    continue;
                }
                for k in 0..4 {
                    t.check(sub(&cl[i][k], &cl[j][k])?, || format!("monotonicity at k = {} for {h:?} <= {g:?}", k + 1));
                }
            }
        }
    }
    t.note(format!("{tested} subgroups of Sym(n), n <= 5, k = 1..4"));
    Ok(t)
}

fn partition_closures(b: &Budget) -> Result<Tally> {
    let mut t = Tally::new();
    let cat = subgroups_of_symmetric(5)?;
    for kg in &cat.subgroups {
        let p = (1..=5).map(|r| partition_r_closure(kg, r, b)).collect::<Result<Vec<_>>>()?;
        for k in 1..=4 {
            let ck = k_closure(kg, k, b)?.group;
            t.check(sub(&p[k], &ck)?, || format!("K^[{}] <= K^({k}) for {kg:?}", k + 1));
        }
        t.check(p[4].equals(kg)?, || format!("K^[5] = K for {kg:?}"));
        for r in 1..=4 {
            t.check(sub(&p[r], &p[r - 1])?, || format!("K^[{}] <= K^[{r}] for {kg:?}", r + 1));
        }
    }
    t.note(format!(
        "{} subgroups of Sym(5); the reverse inclusion K^[r+1] >= K^[r] is not asserted",
        cat.subgroups.len()
    ));
    Ok(t)
}

fn closure_formulas(b: &Budget) -> Result<Tally> {
    let mut t = Tally::new();
    let reps = |n| -> Result<Vec<Group>> { Ok(subgroups_of_symmetric(n)?.representatives()) };
    let (mut imprimitive, mut product) = (0, 0);
    for (d, g) in [(2, 2), (2, 3), (2, 4), (3, 2), (4, 2)] {
        for l in reps(d)? {
            for kg in reps(g)? {
                for k in 2..=4 {
                    let c = check_imprimitive_closure_formula(&l, &kg, k, b)?;
                    t.check(c.holds, || format!("imprimitive {l:?} wr {kg:?}, k = {k}: {} vs {}", c.lhs_order, c.rhs_order));
                    imprimitive += 1;
                }
            }
        }
    }
    for (d, g) in [(2, 2), (2, 3), (3, 2)] {
        for l in reps(d)? {
            for kg in reps(g)? {
                for k in 2..=4 {
                    let c = check_product_action_closure_formula(&l, &kg, k, b)?;
                    t.check(c.holds, || {
                        format!("product {l:?} up {kg:?}, k = {k}, r = {:?}: {} vs {}", c.r, c.lhs_order, c.rhs_order)
                    });
                    product += 1;
                }
            }
        }
    }
    t.note(format!("{imprimitive} imprimitive and {product} product action cases"));
    Ok(t)
}

fn affine_lemmas(b: &Budget) -> Result<Tally> {
    let mut t = Tally::new();
    let (mut holds, mut inapplicable, mut primitive) = (0, 0, 0);
    for (p, e, a) in [(2, 1, 1), (3, 1, 1), (5, 1, 1), (7, 1, 1), (2, 1, 2), (3, 1, 2), (2, 1, 3), (2, 2, 1), (2, 3, 1), (3, 2, 1)] {
        for spec in linear_subgroup_specs(&FieldCtx::new(p, e)?, a)? {
            match check_affcl(&spec, 4, b)? {
                AffclOutcome::Holds { .. } => holds += 1,
                AffclOutcome::Inapplicable(why) => {
                    t.check(why.starts_with("group:"), || format!("closure lost its socle: {why}"));
                    inapplicable += 1;
                }
                AffclOutcome::Fails { lhs, rhs } => {
                    t.check(false, || format!("zero stabilizer {} vs {}", lhs.order(), rhs.order()))
                }
            }
            if is_primitive(&affine_group(&spec)) {
                primitive += 1;
                t.check(check_socle_preservation(&spec, 4, b)?, || format!("socle of a closure over F_{}", spec.field.q()));
            }
        }
    }
    match check_affcl(&AffineSpec::agl(2, 3)?, 3, b)? {
        AffclOutcome::Inapplicable(why) => t.check(why.contains("40320"), || why.clone()),
        other => t.check(false, || format!("AGL_3(2) at k = 3: {other:?}").chars().take(200).collect()),
    }
    t.note(format!("{holds} hold, {inapplicable} without socle V, {primitive} primitive"));
    Ok(t)
}

fn solvable_stability(b: &Budget) -> Result<Tally> {
    let mut t = Tally::new();
    let agl = |p, a| -> Result<Group> { Ok(affine_group(&AffineSpec::agl(p, a)?)) };
    let ambients = vec![
        agl(5, 1)?,
        agl(7, 1)?,
        agl(3, 2)?,
        agl(2, 2)?,
        wreath_imprimitive(&Group::symmetric(4), &Group::symmetric(2)),
        wreath_imprimitive(&Group::symmetric(2), &Group::symmetric(4)),
        wreath_imprimitive(&Group::symmetric(3), &Group::symmetric(3)),
        wreath_imprimitive(&Group::symmetric(3), &Group::symmetric(2)),
        direct_product_disjoint(&Group::symmetric(3), &Group::symmetric(4)),
        Group::dihedral(9),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let a = &ambients[rng.gen_range(0..ambients.len())];
        let conj = Group::symmetric(a.degree()).random_element(&mut rng);
        let count = rng.gen_range(1..=3);
        let gens: Vec<Permutation> = (0..count).map(|_| a.random_element(&mut rng)).collect();
        let g = Group::new(a.degree(), gens)?.conjugate_by(&conj);
        let c3 = k_closure(&g, 3, b)?.group;
        t.check(is_solvable(&c3), || format!("G^(3) of {g:?} has order {}", c3.order()));
    }
    let c2 = k_closure(&agl(5, 1)?, 2, b)?.group;
    t.check(c2.equals(&Group::symmetric(5))?, || format!("|AGL_1(5)^(2)| = {}", c2.order()));
    t.note("200 random solvable groups of degree <= 9; AGL_1(5)^(2) = Sym(5)");
    Ok(t)
}

fn tensor_pairs(frame: &TensorFrame, k: usize, rng: &mut ChaCha8Rng, b: &Budget) -> Result<Vec<(Group, Group)>> {
    let l = stabilizer_group(frame, b)?;
    let s = scalar_permutation(frame, b)?;
    let mut pairs = vec![(l.clone(), l.clone())];
    for count in 1..=2 {
        let mut gens = vec![s.clone()];
        for _ in 0..count {
            let x = l.random_element(rng);
            // two-factor checks need factor-preserving elements
            if frame.is_power() || decompose(frame, &x, b)?.tau.is_identity() {
                gens.push(x);
            }
        }
        let g = Group::new(l.degree(), gens)?;
        let h = closure_in_stabilizer(frame, &g, k, b)?;
        pairs.push((g.clone(), g.join(&[s.clone()])?));
        pairs.push((g, h));
    }
    Ok(pairs)
}

fn tensor_props(b: &Budget) -> Result<Tally> {
    let mut t = Tally::new();
    let f = |q| FieldCtx::of_order(q);
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e50);
    let frames = [
        TensorFrame::product(f(2)?, 2, 3)?,
        TensorFrame::product(f(2)?, 2, 2)?,
        TensorFrame::product(f(3)?, 2, 2)?,
        TensorFrame::product(f(4)?, 2, 2)?,
        TensorFrame::product(f(2)?, 3, 3)?,
        TensorFrame::power(f(3)?, 2, 2)?,
        TensorFrame::power(f(2)?, 2, 2)?,
        TensorFrame::power(f(2)?, 3, 2)?,
        TensorFrame::power(f(2)?, 2, 3)?,
    ];
    let (mut round_trips, mut holds, mut vacuous) = (0, 0, 0);
    for frame in &frames {
        let fq = frame.field().clone();
        let l = stabilizer_group(frame, b)?;
        let lines = simple_tensor_lines(frame, b)?;
        for i in 0..200 {
            let g = l.random_element(&mut rng);
            let d = decompose(frame, &g, b)?;
            t.check(d.recompose(frame)? == g, || "recomposition differs".into());
            round_trips += 1;
            if i % 20 == 0 {
                for &s in lines.lines.iter().step_by(5) {
                    let factors = |p: usize| -> Option<Vec<Vec<u32>>> {
                        let v = crate::linalg::matrix::vector_of(&fq, frame.dim(), p);
                        Some(frame.factor_simple(&v)?.iter().map(|x| normalize(&fq, x)).collect())
                    };
                    let (src, dst) = (factors(s), factors(g.apply(s)));
                    t.check(
                        src.is_some() && dst.is_some() && d.act_on_lines(frame, &src.clone().unwrap()) == dst.unwrap(),
                        || "Π(g) and g differ on a simple line".into(),
                    );
                }
            }
        }
        let points = frame.points(b)?;
        let manytens = frame.is_power() && frame.dims()[0] >= 2;
        let k = if manytens { 3 } else { 2 };
        // 3-tuples of 512 points do not fit the tuple budget
        if manytens && (points as u64).pow(3) > b.tuples.max(1 << 24) {
            t.note(format!("power frame on {points} points: round trips only"));
            continue;
        }
        let local = Budget {
            tuples: b.tuples.max(1 << 24),
            ..*b
        };
        for (g, h) in tensor_pairs(frame, k, &mut rng, &local)? {
            let r = if manytens {
                check_manytens(frame, &g, &h, k, &local)?
            } else {
                check_twotens(frame, &g, &h, k, &local)?
            };
            match r {
                TensorCheck::Holds => holds += 1,
                TensorCheck::HypothesisFailed(_) => vacuous += 1,
                TensorCheck::ConclusionFailed(why) => t.check(false, || why.clone()),
            }
        }
    }
    t.note(format!("{round_trips} round trips; {holds} pairs hold, {vacuous} fail the hypotheses"));
    t.check(holds > 0, || "no hypothesis-satisfying pair".into());
    Ok(t)
}

fn audit(_: &Budget) -> Result<Tally> {
    let mut t = Tally::new();
    let r = audit_c6();
    for c in &r.checks {
        t.check(c.passed, || format!("({}) {}", c.name, c.statement));
    }
    t.check(r.solutions == vec![(2, 12), (2, 13), (2, 14)], || format!("solutions {:?}", r.solutions));
    t.check(r.survivors == vec![(3, 12)], || format!("survivors {:?}", r.survivors));
    t.note(format!("solutions {:?}, survivors {:?}", r.solutions, r.survivors));
    Ok(t)
}

/// Small matrix groups for the regular orbit lemma, by name.
pub fn regular_orbit_grid() -> Result<Vec<(String, FieldCtx, Vec<Matrix>)>> {
    let mut out = Vec::new();
    let m = |rows: Vec<Vec<u32>>| Matrix::from_rows(rows);
    for q in [3u32, 5, 7, 11, 13, 17, 19] {
        let f = FieldCtx::new(q, 1)?;
        let (a, bb) = (0..q)
            .flat_map(|a| (0..q).map(move |b| (a, b)))
            .find(|&(a, b)| (a * a + b * b + 1) % q == 0)
            .expect("-1 is a sum of two squares");
        let i = m(vec![vec![0, 1], vec![q - 1, 0]])?;
        let j = m(vec![vec![a, bb], vec![bb, (q - a) % q]])?;
        out.push((format!("Q8 in GL_2({q})"), f.clone(), vec![i.clone(), j]));
        let r = m(vec![vec![1, 0], vec![0, q - 1]])?;
        out.push((format!("D8 in GL_2({q})"), f.clone(), vec![i, r]));
        for t in (2..q).filter(|t| (q - 1) % t == 0) {
            let g = (1..q).find(|&x| f.element_order(x) == t).unwrap();
            out.push((format!("C{t} in GL_1({q})"), f.clone(), vec![Matrix::scalar(1, g)]));
        }
    }
    for q in [7u32, 13, 19] {
        let f = FieldCtx::new(q, 1)?;
        let w = (1..q).find(|&x| f.element_order(x) == 3).unwrap();
        let d = m(vec![vec![1, 0, 0], vec![0, w, 0], vec![0, 0, f.mul(w, w)]])?;
        let c = m(vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]])?;
        out.push((format!("3^(1+2) in GL_3({q})"), f, vec![d, c]));
    }
    Ok(out)
}

fn regular_orbits(b: &Budget) -> Result<Tally> {
    let mut t = Tally::new();
    let mut satisfied = Vec::new();
    for (name, f, gens) in regular_orbit_grid()? {
        let r = regular_orbit_check(&f, &gens, b)?;
        if r.hypothesis() {
            t.check(r.conclusion(), || format!("{name}: no regular vector"));
            t.check(r.counting_bound, || format!("{name}: fixed point sum {}", r.fixed_point_sum));
            satisfied.push(name);
        }
    }
    t.check(satisfied.iter().any(|n| n == "Q8 in GL_2(11)"), || "Q8 in GL_2(11) misses the hypotheses".into());
    t.note(format!("{} instances satisfy the hypotheses", satisfied.len()));
    Ok(t)
}

fn engines_agree(b: &Budget) -> Result<Tally> {
    let mut t = Tally::new();
    let cat = subgroups_of_symmetric(6)?;
    for g in &cat.subgroups {
        for k in 1..=4 {
            let x = k_closure_with(g, k, Engine::Backtracking, b)?.group;
            let y = k_closure_with(g, k, Engine::Exhaustive, b)?.group;
            t.check(x.equals(&y)?, || format!("k = {k}, {g:?}: {} vs {}", x.order(), y.order()));
        }
    }
    t.note(format!("{} subgroups of Sym(6), k = 1..4", cat.subgroups.len()));
    Ok(t)
}

pub fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion {
            name: "agl-closures",
            claim: "AGL_3(2)^(3) = Sym(8) and |AGL_3(2)^(4)| = 1344",
            time_limit: secs(30),
            run: agl_closures,
        },
        Criterion {
            name: "m24",
            claim: "M24 is 5-transitive with a 5-tuple orbit of 5100480, so M24^(4) = Sym(24)",
            time_limit: secs(120),
            run: m24,
        },
        Criterion {
            name: "closure-axioms",
            claim: "inclusions, idempotence, monotonicity, orbits, blocks, stabilizers and the base bound for subgroups of Sym(n), n <= 5",
            time_limit: secs(600),
            run: closure_axioms,
        },
        Criterion {
            name: "partition-closure",
            claim: "K^[k+1] <= K^(k), K^[|Γ|] = K and K^[r+1] <= K^[r] on subgroups of Sym(5)",
            time_limit: secs(600),
            run: partition_closures,
        },
        Criterion {
            name: "wreath-formulas",
            claim: "closures of imprimitive and product action wreath products, degree <= 9, k = 2..4",
            time_limit: secs(600),
            run: closure_formulas,
        },
        Criterion {
            name: "affine-lemmas",
            claim: "zero stabilizers and socles of 4-closures of affine groups on at most 9 points",
            time_limit: secs(600),
            run: affine_lemmas,
        },
        Criterion {
            name: "solvable-stability",
            claim: "G^(3) is solvable for solvable G of degree <= 9, and AGL_1(5)^(2) = Sym(5)",
            time_limit: secs(600),
            run: solvable_stability,
        },
        Criterion {
            name: "tensor-propositions",
            claim: "k-equivalence passes to tensor factors; decompositions recompose exactly",
            time_limit: secs(600),
            run: tensor_props,
        },
        Criterion {
            name: "symplectic-type-audit",
            claim: "exact arithmetic behind the regular orbit bound for normalizers of symplectic-type groups",
            time_limit: secs(5),
            run: audit,
        },
        Criterion {
            name: "regular-orbits",
            claim: "small class-two irreducible groups with |R|^2 <= |V| have a regular orbit",
            time_limit: secs(600),
            run: regular_orbits,
        },
        Criterion {
            name: "engine-agreement",
            claim: "backtracking and exhaustive closures agree on every subgroup of Sym(6), k <= 4",
            time_limit: secs(600),
            run: engines_agree,
        },
    ]
}

pub fn run_criterion(c: &Criterion, budget: &Budget) -> CheckResult {
    let start = Instant::now();
    let result = (c.run)(budget);
    let elapsed = start.elapsed();
    let (outcome, mut details) = match result {
        Ok(t) => (if t.ok { Outcome::Pass } else { Outcome::Fail }, t.details),
        Err(e @ Error::Budget { .. }) => (Outcome::Skip, vec![e.to_string()]),
        Err(e) => (Outcome::Fail, vec![format!("error: {e}")]),
    };
    let outcome = if outcome == Outcome::Pass && elapsed > c.time_limit {
        details.push(format!("exceeded the time limit of {} s", c.time_limit.as_secs()));
        Outcome::Fail
    } else {
        outcome
    };
    CheckResult {
        name: c.name,
        claim: c.claim,
        outcome,
        details,
        millis: elapsed.as_millis(),
    }
}

/// Runs every criterion whose name contains `filter`.
pub fn run_suite(budget: &Budget, filter: Option<&str>) -> VerifySuite {
    let checks = criteria()
        .iter()
        .filter(|c| filter.map_or(true, |f| c.name.contains(f)))
        .map(|c| run_criterion(c, budget))
        .collect();
    VerifySuite { checks }
}
