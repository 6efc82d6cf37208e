use kclosure::actions::is_primitive;
use kclosure::affine::{affine_group, check_affcl, check_socle_preservation, linear_subgroup_specs, AffclOutcome};
use kclosure::linalg::FieldCtx;
use kclosure::Budget;

fn grid() -> Vec<kclosure::affine::AffineSpec> {
    let mut specs = Vec::new();
    for (p, e, a) in [(2, 1, 1), (3, 1, 1), (5, 1, 1), (7, 1, 1), (2, 1, 2), (3, 1, 2), (2, 1, 3), (2, 2, 1), (2, 3, 1), (3, 2, 1)] {
        specs.extend(linear_subgroup_specs(&FieldCtx::new(p, e).unwrap(), a).unwrap());
    }
    specs
}

#[test]
fn affine_closure_lemmas_on_the_grid() {
    let b = Budget::default();
    let (mut holds, mut inapplicable, mut primitive) = (0, 0, 0);
    for spec in grid() {
        match check_affcl(&spec, 4, &b).unwrap() {
            AffclOutcome::Holds { .. } => holds += 1,
            AffclOutcome::Inapplicable(why) => {
                assert!(why.starts_with("group:"), "{why}");
                inapplicable += 1
            }
            AffclOutcome::Fails { lhs, rhs } => panic!("lhs {} vs rhs {}", lhs.order(), rhs.order()),
        }
        if is_primitive(&affine_group(&spec)) {
            primitive += 1;
            assert!(check_socle_preservation(&spec, 4, &b).unwrap());
        }
    }
    println!("holds {holds}, inapplicable {inapplicable}, primitive {primitive}");
    assert!(holds > 0 && primitive > 0);
}
