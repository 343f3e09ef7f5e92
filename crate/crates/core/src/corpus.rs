//! Bundled Lie algebras, read from the JSON files in `corpus/`.

use crate::io::parse_lie_algebra;
use crate::liealg::LieAlgebra;

macro_rules! corpus_file {
    ($name:literal) => {
        ($name, include_str!(concat!("../corpus/", $name, ".json")))
    };
}

const FILES: &[(&str, &str)] = &[
    corpus_file!("abelian1"),
    corpus_file!("abelian2"),
    corpus_file!("abelian3"),
    corpus_file!("abelian4"),
    corpus_file!("heisenberg3"),
    corpus_file!("aff1"),
    corpus_file!("so3"),
    corpus_file!("sl2"),
    corpus_file!("so4"),
    corpus_file!("su3"),
];

/// The raw JSON of a bundled algebra.
pub fn source(name: &str) -> Option<&'static str> {
    FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

/// Panics if `name` is not bundled.
pub fn load(name: &str) -> LieAlgebra {
    let text = source(name).unwrap_or_else(|| panic!("no corpus algebra named {name}"));
    parse_lie_algebra(text).unwrap_or_else(|e| panic!("corpus file {name} is invalid: {e}"))
}

pub fn lie_algebras() -> Vec<(&'static str, LieAlgebra)> {
    names().map(|n| (n, load(n))).collect()
}

pub fn abelian(n: usize) -> LieAlgebra {
    LieAlgebra::abelian(n)
}

/// `[x, y] = z`.
pub fn heisenberg3() -> LieAlgebra {
    load("heisenberg3")
}

/// `[a, b] = b`.
pub fn aff1() -> LieAlgebra {
    load("aff1")
}

/// `[e1,e2] = e3`, `[e2,e3] = e1`, `[e3,e1] = e2`.
pub fn so3() -> LieAlgebra {
    load("so3")
}

/// `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2() -> LieAlgebra {
    load("sl2")
}

pub fn so4() -> LieAlgebra {
    load("so4")
}

/// Anti-Hermitian traceless 3x3 matrices in a basis with rational constants.
pub fn su3() -> LieAlgebra {
    load("su3")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_corpus_file_loads() {
        let all = lie_algebras();
        assert_eq!(all.len(), 10);
        for n in 1..=4 {
            assert!(load(&format!("abelian{n}")).same_constants(&abelian(n)));
        }
        assert_eq!(su3().dim(), 8);
        assert_eq!(so4().dim(), 6);
    }
}
