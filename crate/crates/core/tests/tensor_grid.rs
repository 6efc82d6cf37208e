use kclosure::affine::{affine_group, AffineSpec};
use kclosure::closure::{are_k_equivalent, k_closure};
use kclosure::linalg::matrix::{permutation_is_semilinear, vector_of, Matrix, SemilinearMap};
use kclosure::linalg::FieldCtx;
use kclosure::tensor::*;
use kclosure::{Budget, Group, Permutation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field(q: u32) -> FieldCtx {
    FieldCtx::of_order(q).unwrap()
}

/// 64, 81, 16, 16, 256, 512 and 256 points.
fn frames() -> Vec<TensorFrame> {
    vec![
        TensorFrame::product(field(2), 2, 3).unwrap(),
        TensorFrame::power(field(3), 2, 2).unwrap(),
        TensorFrame::product(field(2), 2, 2).unwrap(),
        TensorFrame::power(field(2), 2, 2).unwrap(),
        TensorFrame::product(field(4), 2, 2).unwrap(),
        TensorFrame::power(field(2), 3, 2).unwrap(),
        TensorFrame::power(field(2), 2, 3).unwrap(),
    ]
}

/// Scalars plus a few random elements of the stabilizer.
fn random_subgroup(frame: &TensorFrame, l: &Group, count: usize, rng: &mut ChaCha8Rng) -> Group {
    let b = Budget::default();
    let mut gens = vec![scalar_permutation(frame, &b).unwrap()];
    gens.extend((0..count).map(|_| l.random_element(rng)));
    Group::new(l.degree(), gens).unwrap()
}

fn line_permutation(f: &FieldCtx, d: usize, m: &SemilinearMap) -> Permutation {
    let reps = canonical_vectors(f, d).unwrap();
    Permutation::from_images(
        reps.iter()
            .map(|v| reps.iter().position(|w| *w == normalize(f, &m.apply(f, v))).unwrap())
            .collect(),
    )
    .unwrap()
}

#[test]
fn decompositions_round_trip() {
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for frame in frames() {
        let l = stabilizer_group(&frame, &b).unwrap();
        let lines = simple_tensor_lines(&frame, &b).unwrap();
        for _ in 0..200 {
            let g = l.random_element(&mut rng);
            let d = decompose(&frame, &g, &b).unwrap();
            assert_eq!(d.recompose(&frame).unwrap(), g);
            assert!(d.components.iter().all(|c| c.data.iter().find(|&&x| x != 0) == Some(&1)));
            assert!(lines.preserved_by(&g));
        }
    }
}

#[test]
fn first_projection_is_multiplicative() {
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for frame in frames() {
        let f = frame.field().clone();
        let d0 = frame.dims()[0];
        let l = stabilizer_group(&frame, &b).unwrap();
        let mut tested = 0;
        while tested < 40 {
            let (g, h) = (l.random_element(&mut rng), l.random_element(&mut rng));
            let (dg, dh) = (decompose(&frame, &g, &b).unwrap(), decompose(&frame, &h, &b).unwrap());
            if dg.tau.apply(0) != 0 || dh.tau.apply(0) != 0 {
                continue;
            }
            let dgh = decompose(&frame, &g.then(&h), &b).unwrap();
            // cosets modulo scalars compared through the action on lines
            let lhs = line_permutation(&f, d0, &dgh.component_map(0));
            let rhs = line_permutation(&f, d0, &dg.component_map(0).then(&f, &dh.component_map(0)));
            assert_eq!(lhs, rhs);
            tested += 1;
        }
    }
}

#[test]
fn remak_embedding() {
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for frame in frames().into_iter().filter(|f| !f.is_power()) {
        let l = stabilizer_group(&frame, &b).unwrap();
        let z = frame.field().q() as u64 - 1;
        let mut groups = vec![l.clone()];
        groups.extend((0..4).map(|i| random_subgroup(&frame, &l, 1 + i % 2, &mut rng)));
        for g in groups {
            let Projections::Product { x, y } = projection_groups(&frame, &g, &b).unwrap() else {
                unreachable!()
            };
            let quotient = g.order_u64().unwrap() / z;
            let bound = (x.order_u64().unwrap() / z) * (y.order_u64().unwrap() / z);
            assert_eq!(bound % quotient, 0, "|G/F^×| = {quotient} vs {bound}");
        }
    }
}

#[test]
fn simple_lines_and_wreath_action() {
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for frame in frames() {
        let f = frame.field().clone();
        let q = f.q() as usize;
        let lines = simple_tensor_lines(&frame, &b).unwrap();
        let expected: usize = frame.dims().iter().map(|&d| (q.pow(d as u32) - 1) / (q - 1)).product();
        assert_eq!(lines.len(), expected);
        assert_eq!(lines.simple_count(), expected * (q - 1));
        let l = stabilizer_group(&frame, &b).unwrap();
        assert!(preserves_simple_tensors(&frame, &l, &b).unwrap());
        for _ in 0..20 {
            let g = l.random_element(&mut rng);
            let d = decompose(&frame, &g, &b).unwrap();
            for &s in lines.lines.iter().step_by(7) {
                let factors = |p: usize| -> Vec<Vec<u32>> {
                    let v = vector_of(&f, frame.dim(), p);
                    frame.factor_simple(&v).unwrap().iter().map(|x| normalize(&f, x)).collect()
                };
                assert_eq!(d.act_on_lines(&frame, &factors(s)), factors(g.apply(s)));
            }
        }
    }
}

#[test]
fn two_factor_equivalence_transfers() {
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let (mut holds, mut vacuous, mut distinct) = (0, 0, 0);
    for frame in frames().into_iter().filter(|f| !f.is_power()) {
        let l = stabilizer_group(&frame, &b).unwrap();
        let scalar = scalar_permutation(&frame, &b).unwrap();
        let ks: &[usize] = if l.degree() <= 64 { &[1, 2, 3] } else { &[1, 2] };
        for &k in ks {
            for i in 0..3 {
                let g = random_subgroup(&frame, &l, 1 + i % 2, &mut rng);
                let h = closure_in_stabilizer(&frame, &g, k, &b).unwrap();
                assert!(are_k_equivalent(&g, &h, k, &b).unwrap().is_none());
                if h.order() != g.order() {
                    distinct += 1;
                }
                for other in [h, g.join(&[scalar.clone()]).unwrap(), l.clone()] {
                    match check_twotens(&frame, &g, &other, k, &b).unwrap() {
                        TensorCheck::Holds => holds += 1,
                        TensorCheck::HypothesisFailed(_) => vacuous += 1,
                        TensorCheck::ConclusionFailed(why) => panic!("{why}"),
                    }
                }
            }
        }
    }
    println!("twotens: holds {holds}, hypothesis failed {vacuous}, distinct pairs {distinct}");
    assert!(holds > 0 && vacuous > 0 && distinct > 0);
}

#[test]
fn power_equivalence_transfers() {
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let (mut holds, mut vacuous, mut distinct) = (0, 0, 0);
    let k = 3;
    for frame in frames().into_iter().filter(|f| f.is_power() && f.field().q().pow(f.dim() as u32) <= 81) {
        let l = stabilizer_group(&frame, &b).unwrap();
        for i in 0..4 {
            let g = random_subgroup(&frame, &l, 1 + i % 2, &mut rng);
            let h = closure_in_stabilizer(&frame, &g, k, &b).unwrap();
            if h.order() != g.order() {
                distinct += 1;
            }
            for other in [h, l.clone()] {
                match check_manytens(&frame, &g, &other, k, &b).unwrap() {
                    TensorCheck::Holds => holds += 1,
                    TensorCheck::HypothesisFailed(_) => vacuous += 1,
                    TensorCheck::ConclusionFailed(why) => panic!("{why}"),
                }
            }
        }
        assert!(check_manytens(&frame, &l, &l, k, &b).unwrap().holds());
    }
    println!("manytens: holds {holds}, hypothesis failed {vacuous}, distinct pairs {distinct}");
    assert!(holds > 0);
}

#[test]
fn subfield_closure_pipeline() {
    // V = F_4^2 as V_0 ⊗ F_4 over F_2, G_0 = (GL_2(2) ∘ F_4^×)⋊Aut(F_4)
    let b = Budget::default();
    let f = field(4);
    let w = f.primitive_element();
    let gens = vec![
        SemilinearMap::linear(Matrix::from_rows(vec![vec![1, 1], vec![0, 1]]).unwrap()),
        SemilinearMap::linear(Matrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap()),
        SemilinearMap::linear(Matrix::scalar(2, w)),
        SemilinearMap {
            matrix: Matrix::identity(2),
            frob: 1,
        },
    ];
    let spec = AffineSpec::new(f.clone(), 2, gens).unwrap();
    let sf = subfield_frame(&f, 2, 2, &b).unwrap();
    let g0 = spec.zero_stabilizer_group();
    let pulled = |g: &Group| Group::new(16, g.generators().iter().map(|p| sf.pull_back(p)).collect()).unwrap();
    let g0f = pulled(&g0);
    assert!(preserves_simple_tensors(&sf.frame, &g0f, &b).unwrap());

    let k = 4;
    let closure = k_closure(&affine_group(&spec), k, &b).unwrap().group;
    let h0 = closure.stabilizer(0);
    // every element of H_0 is F_2-linear on F_4^2, being a closure of an affine group
    assert!(h0.generators().iter().all(|p| permutation_is_semilinear(&field(2), 4, &sf.pull_back(p)).is_some()));
    let h0f = pulled(&h0);
    assert!(preserves_simple_tensors(&sf.frame, &h0f, &b).unwrap());
    assert!(are_k_equivalent(&g0f, &h0f, k - 1, &b).unwrap().is_none());
    let (Projections::Product { x: gx, .. }, Projections::Product { x: hx, .. }) = (
        projection_groups(&sf.frame, &g0f, &b).unwrap(),
        projection_groups(&sf.frame, &h0f, &b).unwrap(),
    ) else {
        unreachable!()
    };
    assert!(are_k_equivalent(&gx, &hx, k - 1, &b).unwrap().is_none());
    // G_{V_0} = GL_2(2)
    assert_eq!(gx.order_u64(), Some(6));
}
