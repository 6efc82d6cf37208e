//! Group text and JSON formats.
//!
//! Text: a `degree N` line followed by `gen <cycles>` lines in 1-based
//! cycle notation; `#` starts a comment. JSON:
//! `{"degree":N,"generators":[[0-based images], ...]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub engine: Option<String>,
}

impl GroupJson {
    pub fn from_group(g: &Group) -> Self {
        Self {
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.images().to_vec()).collect(),
            engine: None,
        }
    }

    pub fn into_group(self) -> Result<Group> {
        let gens = self
            .generators
            .into_iter()
            .map(|v| {
                if v.len() != self.degree {
                    return Err(Error::DegreeMismatch {
                        expected: self.degree,
                        found: v.len(),
                    });
                }
                Permutation::from_images(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Group::new(self.degree, gens)
    }
}

pub fn parse_text(text: &str) -> Result<Group> {
    let mut degree = None;
    let mut gens = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match key {
            "degree" => {
                if degree.is_some() {
                    return Err(Error::Parse(format!("line {}: repeated degree", lineno + 1)));
                }
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("line {}: bad degree {rest:?}", lineno + 1)))?;
                degree = Some(n);
            }
            "gen" => {
                let n = degree
                    .ok_or_else(|| Error::Parse(format!("line {}: gen before degree", lineno + 1)))?;
                let p = Permutation::parse_cycles(n, rest)
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
                gens.push(p);
            }
            other => {
                return Err(Error::Parse(format!(
                    "line {}: unknown keyword {other:?}",
                    lineno + 1
                )))
            }
        }
    }
    let degree = degree.ok_or_else(|| Error::Parse("missing degree line".into()))?;
    // keep identity generators out of the handle but accept them in files
    Group::new(degree, gens)
}

pub fn write_text(g: &Group) -> String {
    let mut s = format!("degree {}\n", g.degree());
    for p in g.generators() {
        s.push_str("gen ");
        s.push_str(&p.to_cycle_string());
        s.push('\n');
    }
    s
}

pub fn parse_json(text: &str) -> Result<Group> {
    let j: GroupJson = serde_json::from_str(text)?;
    j.into_group()
}

pub fn write_json(g: &Group) -> String {
    serde_json::to_string(&GroupJson::from_group(g)).expect("serializable")
}

/// Parses either format, deciding by the first non-blank character.
pub fn parse_any(text: &str) -> Result<Group> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

pub fn read_group(path: &std::path::Path) -> Result<Group> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_any(&text)
}

/// Serde helper writing big integers as decimal strings.
pub mod decimal {
    use num_bigint::BigUint;

    pub fn serialize<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let text = "# Klein four\ndegree 4\ngen (1,2)(3,4)\ngen (1,3)(2,4)\n";
        let g = parse_text(text).unwrap();
        assert_eq!(g.order(), 4u32.into());
        assert_eq!(write_text(&g), "degree 4\ngen (1,2)(3,4)\ngen (1,3)(2,4)\n");
        assert_eq!(write_text(&parse_text(&write_text(&g)).unwrap()), write_text(&g));
    }

    #[test]
    fn json_round_trip() {
        let g = Group::dihedral(5);
        let j = write_json(&g);
        assert_eq!(j, r#"{"degree":5,"generators":[[1,2,3,4,0],[0,4,3,2,1]]}"#);
        assert_eq!(write_json(&parse_json(&j).unwrap()), j);
        assert_eq!(write_text(&parse_any(&j).unwrap()), write_text(&g));
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_text("gen (1,2)").is_err());
        assert!(parse_text("degree 3\ngen (1,4)").is_err());
        assert!(parse_text("degree x").is_err());
        assert!(parse_text("degre 3").is_err());
        assert!(parse_json(r#"{"degree":3,"generators":[[0,1]]}"#).is_err());
        assert!(parse_json(r#"{"degree":3,"generators":[[0,0,1]]}"#).is_err());
    }
}
