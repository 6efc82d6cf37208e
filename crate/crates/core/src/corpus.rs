//! Named groups shipped with the crate, plus parametric families.

use crate::actions::transitivity_degree;
use crate::affine::{affine_group, AffineSpec};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::io::parse_text;
use crate::linalg::matrix::{matrix_group, parse_matrices};
use crate::linalg::FieldCtx;

/// Group files in the text format, by corpus name.
pub const GROUP_FILES: &[(&str, &str)] = &[
    ("m24", include_str!("../data/corpus/m24.group")),
    ("agl_3_2", include_str!("../data/corpus/agl_3_2.group")),
    ("sym8", include_str!("../data/corpus/sym8.group")),
];

/// Matrix group files, by corpus name.
pub const MATRIX_FILES: &[(&str, &str)] = &[("q8_gl2_11", include_str!("../data/corpus/q8_gl2_11.matrices"))];

/// Parametric families accepted by [`load_corpus`].
pub const FAMILIES: &[&str] = &["agl(a,p)", "sym(n)", "alt(n)", "cyclic(n)", "dihedral(n)"];

pub fn corpus_names() -> Vec<String> {
    GROUP_FILES
        .iter()
        .chain(MATRIX_FILES)
        .map(|(n, _)| n.to_string())
        .chain(FAMILIES.iter().map(|s| s.to_string()))
        .collect()
}

fn family_args(name: &str) -> Option<(&str, Vec<usize>)> {
    let (head, rest) = name.split_once('(')?;
    let args = rest.strip_suffix(')')?;
    let nums = args
        .split(',')
        .map(|a| a.trim().parse().ok())
        .collect::<Option<Vec<usize>>>()?;
    Some((head.trim(), nums))
}

fn matrix_file(text: &str) -> Result<Group> {
    let entries = parse_matrices(text)?;
    let first = entries.first().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let (q, a) = (first.q, first.map.matrix.n);
    if entries.iter().any(|e| e.q != q || e.map.matrix.n != a || e.map.frob != 0) {
        return Err(Error::Parse("matrix file mixes fields, sizes or semilinear maps".into()));
    }
    let gens: Vec<_> = entries.into_iter().map(|e| e.map.matrix).collect();
    matrix_group(&FieldCtx::of_order(q)?, a, &gens)
}

/// Loads and validates a corpus group.
pub fn load_corpus(name: &str) -> Result<Group> {
    let key = name.trim().to_ascii_lowercase();
    let key = key.strip_suffix(".group").unwrap_or(&key);
    if let Some((_, text)) = GROUP_FILES.iter().find(|(n, _)| *n == key) {
        let g = parse_text(text)?;
        if key == "m24" {
            let t = transitivity_degree(&g);
            if g.degree() != 24 || t != 5 {
                return Err(Error::Parse(format!("m24 generators are {t}-transitive, expected 5")));
            }
        }
        return Ok(g);
    }
    if let Some((_, text)) = MATRIX_FILES.iter().find(|(n, _)| *n == key) {
        return matrix_file(text);
    }
    let unknown = || Error::UnknownCorpus(name.to_string());
    let (head, args) = family_args(key).ok_or_else(unknown)?;
    let bad = |what: &str| Error::InvalidParameter(format!("{name}: {what}"));
    match (head, &args[..]) {
        ("agl", &[a, p]) => Ok(affine_group(&AffineSpec::agl(p as u32, a)?)),
        ("sym", &[n]) if n >= 1 => Ok(Group::symmetric(n)),
        ("alt", &[n]) if n >= 1 => Ok(Group::alternating(n)),
        ("cyclic", &[n]) if n >= 1 => Ok(Group::cyclic(n)),
        ("dihedral", &[n]) if n >= 3 => Ok(Group::dihedral(n)),
        ("agl" | "sym" | "alt" | "cyclic" | "dihedral", _) => Err(bad("wrong arguments")),
        _ => Err(unknown()),
    }
}
