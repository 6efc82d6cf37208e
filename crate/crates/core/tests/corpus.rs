use kclosure::actions::transitivity_degree;
use kclosure::corpus::{corpus_names, load_corpus, FAMILIES, GROUP_FILES};
use kclosure::io::{parse_json, write_json, write_text};

#[test]
fn every_file_entry_loads() {
    for name in corpus_names().iter().filter(|n| !FAMILIES.contains(&n.as_str())) {
        let g = load_corpus(name).unwrap();
        assert_eq!(write_text(&parse_json(&write_json(&g)).unwrap()), write_text(&g), "{name}");
    }
    assert_eq!(GROUP_FILES.len() + 1 + FAMILIES.len(), corpus_names().len());
}

#[test]
fn m24_point_stabilizers() {
    // M23, M22 by the chain, each one step less transitive
    let g = load_corpus("m24").unwrap();
    let m23 = g.stabilizer(0);
    assert_eq!(m23.order_u64(), Some(244_823_040 / 24));
    let m22 = m23.stabilizer(1);
    assert_eq!(m22.order_u64(), Some(244_823_040 / 24 / 23));
    let moved: Vec<usize> = (2..24).collect();
    assert_eq!(transitivity_degree(&m22.restrict_to(&moved).unwrap()), 3);
}

#[test]
fn families() {
    assert_eq!(load_corpus("AGL(2,3)").unwrap().order_u64(), Some(432));
    assert_eq!(load_corpus("alt(6)").unwrap().order_u64(), Some(360));
    assert_eq!(load_corpus("cyclic(7)").unwrap().order_u64(), Some(7));
    assert!(load_corpus("dihedral(2)").is_err());
    assert!(load_corpus("agl(2,4)").is_err());
}
