//! JSON file formats. Rationals are always strings (`"p/q"` or `"p"`), never
//! JSON numbers, so exact data survives the round trip.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::liealg::{default_names, CeCochain, LieAlgebra, LieError, Structure};
use crate::linalg::{format_rational, parse_rational, Rational};
use crate::multivec::{Graded, Kind, PolyMultivector};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieAlgebraFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

/// `[e_i, e_j] = sum_k coeffs[k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<usize, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BivectorFile {
    pub n: usize,
    #[serde(default)]
    pub terms: Vec<TermEntry>,
}

/// Any-degree multivector or form, used in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultivectorJson {
    pub n: usize,
    pub degree: usize,
    pub terms: Vec<TermEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub indices: Vec<usize>,
    pub monomial: Vec<u32>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainTerm {
    pub indices: Vec<usize>,
    pub coeff: String,
}

/// A Lie algebra plus the 2-cocycle deforming its linear Poisson structure.
/// With neither `cocycle` nor `coboundary_of`, the first representative of
/// `H^2` is used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilFile {
    pub algebra: LieAlgebraFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<Vec<CochainTerm>>,
    /// Coefficients of `xi` in `g*`; the cocycle is then `d xi`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coboundary_of: Option<BTreeMap<usize, String>>,
}

/// Input for commands that accept either kind of file.
#[derive(Debug, Clone)]
pub enum StructureInput {
    Lie(LieAlgebra),
    Bivector(PolyMultivector),
}

fn parse_err(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: path.into(),
        message: message.into(),
    }
}

fn rational_at(path: String, s: &str) -> Result<Rational, Error> {
    parse_rational(s).map_err(|e| parse_err(path, e.to_string()))
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, Error> {
    serde_json::from_str(text).map_err(|e| {
        parse_err(
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

impl LieAlgebraFile {
    pub fn parse(text: &str) -> Result<Self, Error> {
        from_json(text)
    }

    /// Structural checks are parse errors; a Jacobi failure is a mathematical one.
    pub fn to_algebra(&self) -> Result<LieAlgebra, Error> {
        let names = if self.basis.is_empty() {
            default_names(self.dim)
        } else if self.basis.len() == self.dim {
            self.basis.clone()
        } else {
            return Err(parse_err(
                "basis",
                format!("expected {} labels, got {}", self.dim, self.basis.len()),
            ));
        };
        let mut structure = Structure::new();
        for (t, b) in self.brackets.iter().enumerate() {
            let at = |f: &str| format!("brackets[{t}].{f}");
            if b.i >= b.j {
                return Err(parse_err(
                    at("i"),
                    format!("need i < j, got i={} j={}", b.i, b.j),
                ));
            }
            if b.j >= self.dim {
                return Err(parse_err(
                    at("j"),
                    format!("index {} >= dim {}", b.j, self.dim),
                ));
            }
            if structure.contains_key(&(b.i, b.j)) {
                return Err(parse_err(
                    at("i"),
                    format!("pair ({}, {}) repeated", b.i, b.j),
                ));
            }
            let mut coeffs = BTreeMap::new();
            for (&k, c) in &b.coeffs {
                if k >= self.dim {
                    return Err(parse_err(
                        at("coeffs"),
                        format!("index {k} >= dim {}", self.dim),
                    ));
                }
                coeffs.insert(k, rational_at(at(&format!("coeffs.{k}")), c)?);
            }
            structure.insert((b.i, b.j), coeffs);
        }
        LieAlgebra::new(self.dim, names, structure).map_err(|e| match e {
            LieError::JacobiViolation { .. } => Error::Lie(e),
            other => parse_err("brackets", other.to_string()),
        })
    }

    pub fn from_algebra(g: &LieAlgebra) -> Self {
        LieAlgebraFile {
            dim: g.dim(),
            basis: g.basis_names().to_vec(),
            brackets: g
                .structure()
                .iter()
                .map(|(&(i, j), coeffs)| BracketEntry {
                    i,
                    j,
                    coeffs: coeffs
                        .iter()
                        .map(|(&k, c)| (k, format_rational(c)))
                        .collect(),
                })
                .collect(),
        }
    }
}

pub fn parse_lie_algebra(text: &str) -> Result<LieAlgebra, Error> {
    LieAlgebraFile::parse(text)?.to_algebra()
}

fn term_entries<K: Kind>(m: &Graded<K>) -> Vec<TermEntry> {
    m.terms()
        .iter()
        .map(|((mono, idx), c)| TermEntry {
            indices: idx.clone(),
            monomial: mono.clone(),
            coeff: format_rational(c),
        })
        .collect()
}

impl BivectorFile {
    pub fn parse(text: &str) -> Result<Self, Error> {
        from_json(text)
    }

    pub fn to_bivector(&self) -> Result<PolyMultivector, Error> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, term) in self.terms.iter().enumerate() {
            let at = |f: &str| format!("terms[{t}].{f}");
            match term.indices.as_slice() {
                [i, j] if i < j && *j < self.n => {}
                _ => {
                    return Err(parse_err(
                        at("indices"),
                        format!(
                            "need [i, j] with i < j < {}, got {:?}",
                            self.n, term.indices
                        ),
                    ))
                }
            }
            if term.monomial.len() != self.n {
                return Err(parse_err(
                    at("monomial"),
                    format!("expected {} exponents, got {}", self.n, term.monomial.len()),
                ));
            }
            terms.push((
                term.monomial.clone(),
                term.indices.clone(),
                rational_at(at("coeff"), &term.coeff)?,
            ));
        }
        PolyMultivector::from_terms(self.n, 2, terms).map_err(|e| parse_err("terms", e.to_string()))
    }

    /// Panics if `pi` is not a bivector.
    pub fn from_bivector(pi: &PolyMultivector) -> Self {
        assert_eq!(pi.degree(), 2, "bivector file needs a degree-2 field");
        BivectorFile {
            n: pi.ambient_dim(),
            terms: term_entries(pi),
        }
    }
}

pub fn parse_bivector(text: &str) -> Result<PolyMultivector, Error> {
    BivectorFile::parse(text)?.to_bivector()
}

impl MultivectorJson {
    pub fn from_graded<K: Kind>(m: &Graded<K>) -> Self {
        MultivectorJson {
            n: m.ambient_dim(),
            degree: m.degree(),
            terms: term_entries(m),
        }
    }
}

pub fn cochain_terms(c: &CeCochain) -> Vec<CochainTerm> {
    c.coeffs()
        .iter()
        .map(|(idx, v)| CochainTerm {
            indices: idx.clone(),
            coeff: format_rational(v),
        })
        .collect()
}

pub fn parse_cochain(dim: usize, degree: usize, terms: &[CochainTerm]) -> Result<CeCochain, Error> {
    let mut parsed = Vec::with_capacity(terms.len());
    for (t, term) in terms.iter().enumerate() {
        parsed.push((
            term.indices.clone(),
            rational_at(format!("cocycle[{t}].coeff"), &term.coeff)?,
        ));
    }
    CeCochain::new(dim, degree, parsed).map_err(|e| parse_err("cocycle", e.to_string()))
}

/// Accepts a Lie algebra file or a bivector file, told apart by their keys.
pub fn parse_structure(text: &str) -> Result<StructureInput, Error> {
    let value: serde_json::Value = from_json(text)?;
    let has = |k: &str| value.get(k).is_some();
    if has("dim") {
        Ok(StructureInput::Lie(parse_lie_algebra(text)?))
    } else if has("n") {
        Ok(StructureInput::Bivector(parse_bivector(text)?))
    } else {
        Err(parse_err(
            "(root)",
            "expected a Lie algebra file (with \"dim\") or a bivector file (with \"n\")",
        ))
    }
}

impl PencilFile {
    pub fn parse(text: &str) -> Result<Self, Error> {
        from_json(text)
    }
}

/// Parses `"0,1/2,-3"` into a point. An empty string is the empty point.
pub fn parse_point(s: &str) -> Result<Vec<Rational>, Error> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .enumerate()
        .map(|(i, part)| rational_at(format!("--point[{i}]"), part))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn lie_file_round_trip_is_canonical() {
        for (_, g) in corpus::lie_algebras() {
            let file = LieAlgebraFile::from_algebra(&g);
            let text = serde_json::to_string_pretty(&file).unwrap();
            let back = parse_lie_algebra(&text).unwrap();
            assert_eq!(back, g);
            assert_eq!(LieAlgebraFile::from_algebra(&back), file);
        }
    }

    #[test]
    fn unordered_bracket_is_a_parse_error() {
        let text = r#"{"dim": 2, "brackets": [{"i": 1, "j": 0, "coeffs": {"1": "1"}}]}"#;
        match parse_lie_algebra(text) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "brackets[0].i"),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn bad_rational_and_bad_json_report_location() {
        let text = r#"{"dim": 2, "brackets": [{"i": 0, "j": 1, "coeffs": {"1": "1/0"}}]}"#;
        match parse_lie_algebra(text) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "brackets[0].coeffs.1"),
            other => panic!("{other:?}"),
        }
        match parse_lie_algebra("{\"dim\": 2,\n \"brackets\": [}") {
            Err(Error::Parse { location, .. }) => assert!(location.starts_with("line 2")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn jacobi_failure_is_mathematical() {
        let text = r#"{"dim": 3, "brackets": [
            {"i": 0, "j": 1, "coeffs": {"1": "1"}},
            {"i": 1, "j": 2, "coeffs": {"0": "1"}}]}"#;
        assert!(matches!(parse_lie_algebra(text), Err(Error::Lie(_))));
    }

    #[test]
    fn bivector_file_round_trip() {
        let text = r#"{"n": 3, "terms": [
            {"indices": [1, 2], "monomial": [1, 0, 0], "coeff": "-2/4"},
            {"indices": [0, 1], "monomial": [0, 0, 1], "coeff": "3"}]}"#;
        let pi = parse_bivector(text).unwrap();
        let file = BivectorFile::from_bivector(&pi);
        assert_eq!(file.terms[0].coeff, "3");
        assert_eq!(file.terms[1].coeff, "-1/2");
        let again = serde_json::to_string(&file).unwrap();
        assert_eq!(parse_bivector(&again).unwrap(), pi);
    }

    #[test]
    fn bivector_validation() {
        let bad = r#"{"n": 2, "terms": [{"indices": [1, 1], "monomial": [0, 0], "coeff": "1"}]}"#;
        assert!(matches!(parse_bivector(bad), Err(Error::Parse { .. })));
        let short = r#"{"n": 2, "terms": [{"indices": [0, 1], "monomial": [0], "coeff": "1"}]}"#;
        assert!(matches!(parse_bivector(short), Err(Error::Parse { .. })));
    }

    #[test]
    fn structure_detection_and_points() {
        assert!(matches!(
            parse_structure(r#"{"dim": 1}"#).unwrap(),
            StructureInput::Lie(_)
        ));
        assert!(matches!(
            parse_structure(r#"{"n": 2, "terms": []}"#).unwrap(),
            StructureInput::Bivector(_)
        ));
        assert!(parse_structure("{}").is_err());
        assert_eq!(parse_point("0, 1/2").unwrap().len(), 2);
        assert!(parse_point("0,a").is_err());
    }
}
