//! Finite-dimensional Lie algebras over the rationals and their
//! Chevalley-Eilenberg cohomology with trivial coefficients.
//!
//! Structure constants are stored only for `i < j`:
//! `[e_i, e_j] = sum_k c^k_ij e_k`, with `[e_j, e_i]` obtained by a sign flip.
//!
//! The differential on `k`-cochains is
//!
//! ```text
//! (dc)(x_0, .., x_k) = sum_{p<q} (-1)^(p+q) c([x_p, x_q], x_0, .., ^x_p, .., ^x_q, .., x_k)
//! ```
//!
//! so on 1-cochains `(d xi)(x, y) = -xi([x, y])`. Every sign-sensitive
//! computation downstream (pencil zero sets in particular) uses this one
//! convention.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exterior::{is_strictly_increasing, sort_with_sign, subset_index, subsets};
use crate::linalg::{
    add_into, cohomology, format_rational, rank, solve, to_dense, to_sparse, Rational,
    SparseMatrix, SparseVec,
};

/// Raw structure constants, keyed by `(i, j)` with `i < j`.
pub type Structure = BTreeMap<(usize, usize), SparseVec>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("Jacobi identity fails for (e{i}, e{j}, e{k}) in component {l}: residual {residual}")]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        residual: Rational,
    },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket key ({i}, {j}) must satisfy i < j")]
    UnorderedPair { i: usize, j: usize },
    #[error("expected {expected} basis names, got {got}")]
    BasisNames { expected: usize, got: usize },
    #[error("vector of length {got} does not match dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cochain degree {degree} out of range 0..={dim}")]
    DegreeOutOfRange { degree: usize, dim: usize },
    #[error("expected a cochain of degree {expected}, got degree {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("cochain index tuple {0:?} is not strictly increasing or out of range")]
    BadTuple(Vec<usize>),
}

#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    basis_names: Vec<String>,
    structure: Structure,
}

impl LieAlgebra {
    /// Validates indices and the Jacobi identity. Zero coefficients and empty
    /// brackets are dropped so equal algebras compare equal.
    pub fn new(
        dim: usize,
        basis_names: Vec<String>,
        structure: Structure,
    ) -> Result<Self, LieError> {
        if basis_names.len() != dim {
            return Err(LieError::BasisNames {
                expected: dim,
                got: basis_names.len(),
            });
        }
        let structure = normalize_structure(dim, structure)?;
        check_jacobi(dim, &structure)?;
        Ok(LieAlgebra {
            dim,
            basis_names,
            structure,
        })
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebra {
            dim: n,
            basis_names: default_names(n),
            structure: Structure::new(),
        }
    }

    /// Same as [`LieAlgebra::new`] with names `e1, .., en`.
    pub fn from_structure(dim: usize, structure: Structure) -> Result<Self, LieError> {
        Self::new(dim, default_names(dim), structure)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    /// Structure constants equal, names ignored.
    pub fn same_constants(&self, other: &LieAlgebra) -> bool {
        self.dim == other.dim && self.structure == other.structure
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.is_empty()
    }

    /// `c^k_ij` for any ordered pair.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Rational {
        constant(&self.structure, i, j, k)
    }

    /// `[e_i, e_j]` as a sparse vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        bracket_basis(&self.structure, i, j)
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, LieError> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(LieError::DimensionMismatch {
                    expected: self.dim,
                    got: v.len(),
                });
            }
        }
        let mut out = SparseVec::new();
        for (&(i, j), coeffs) in &self.structure {
            // x_i y_j - x_j y_i
            let w = &x[i] * &y[j] - &x[j] * &y[i];
            if w.is_zero() {
                continue;
            }
            for (&k, c) in coeffs {
                add_into(&mut out, k, &(&w * c));
            }
        }
        Ok(to_dense(&out, self.dim))
    }

    /// Matrix of `ad e_i`: entry `(k, m)` is `c^k_im`.
    pub fn ad_matrix(&self, i: usize) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.dim, self.dim);
        for col in 0..self.dim {
            for (k, c) in self.bracket_basis(i, col) {
                m.add_to(k, col, &c);
            }
        }
        m
    }

    /// `K(i, j) = trace(ad e_i . ad e_j)`.
    pub fn killing_form(&self) -> SparseMatrix {
        let ads: Vec<SparseMatrix> = (0..self.dim).map(|i| self.ad_matrix(i)).collect();
        let mut k = SparseMatrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in i..self.dim {
                let prod = ads[i].mul(&ads[j]);
                let tr = (0..self.dim).fold(Rational::zero(), |acc, d| acc + prod.get(d, d));
                k.add_to(i, j, &tr);
                if i != j {
                    k.add_to(j, i, &tr);
                }
            }
        }
        k
    }

    /// Cartan's criterion: the Killing form is nondegenerate.
    pub fn is_semisimple(&self) -> bool {
        self.dim > 0 && rank(&self.killing_form()) == self.dim
    }

    /// Matrix of `d: L^k g* -> L^(k+1) g*` in the lexicographic tuple bases.
    /// Above the dimension both spaces are zero.
    pub fn ce_differential_matrix(&self, k: usize) -> Result<SparseMatrix, LieError> {
        Ok(differential_matrix(self.dim, &self.structure, k))
    }

    /// `H^k(g)` with a deterministic list of representatives.
    pub fn ce_cohomology(&self, k: usize) -> Result<CeCohomology, LieError> {
        let outgoing = self.ce_differential_matrix(k)?;
        let incoming = match k {
            0 => None,
            _ => Some(self.ce_differential_matrix(k - 1)?),
        };
        let (dim, reps) = cohomology(&outgoing, incoming.as_ref());
        let representatives = reps
            .iter()
            .map(|r| CeCochain::from_sparse(self.dim, k, r))
            .collect();
        Ok(CeCohomology {
            degree: k,
            dim,
            representatives,
        })
    }

    /// Some `xi` in `g*` with `d xi = c`, if `c` is a coboundary.
    pub fn coboundary_witness(&self, c: &CeCochain) -> Result<Option<Vec<Rational>>, LieError> {
        if c.degree() != 2 {
            return Err(LieError::WrongDegree {
                expected: 2,
                got: c.degree(),
            });
        }
        self.check_cochain(c)?;
        let d1 = self.ce_differential_matrix(1)?;
        Ok(solve(&d1, &c.to_vector()))
    }

    /// `d c`, as a cochain of one degree higher.
    pub fn differential(&self, c: &CeCochain) -> Result<CeCochain, LieError> {
        self.check_cochain(c)?;
        let d = self.ce_differential_matrix(c.degree())?;
        Ok(CeCochain::from_sparse(
            self.dim,
            c.degree() + 1,
            &to_sparse(&d.mul_vec(&c.to_vector())),
        ))
    }

    fn check_cochain(&self, c: &CeCochain) -> Result<(), LieError> {
        if c.dim() != self.dim {
            return Err(LieError::DimensionMismatch {
                expected: self.dim,
                got: c.dim(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim {}", self.dim)?;
        for (&(i, j), coeffs) in &self.structure {
            let terms: Vec<String> = coeffs
                .iter()
                .map(|(k, c)| format!("{}*{}", format_rational(c), self.basis_names[*k]))
                .collect();
            write!(
                f,
                ", [{},{}]={}",
                self.basis_names[i],
                self.basis_names[j],
                terms.join("+")
            )?;
        }
        write!(f, ")")
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

fn normalize_structure(dim: usize, structure: Structure) -> Result<Structure, LieError> {
    let mut out = Structure::new();
    for ((i, j), coeffs) in structure {
        for idx in [i, j] {
            if idx >= dim {
                return Err(LieError::IndexOutOfRange { index: idx, dim });
            }
        }
        if i >= j {
            return Err(LieError::UnorderedPair { i, j });
        }
        let mut clean = SparseVec::new();
        for (k, c) in coeffs {
            if k >= dim {
                return Err(LieError::IndexOutOfRange { index: k, dim });
            }
            add_into(&mut clean, k, &c);
        }
        if !clean.is_empty() {
            out.insert((i, j), clean);
        }
    }
    Ok(out)
}

fn constant(structure: &Structure, i: usize, j: usize, k: usize) -> Rational {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => structure
            .get(&(i, j))
            .and_then(|v| v.get(&k))
            .cloned()
            .unwrap_or_else(Rational::zero),
        std::cmp::Ordering::Greater => -constant(structure, j, i, k),
        std::cmp::Ordering::Equal => Rational::zero(),
    }
}

fn bracket_basis(structure: &Structure, i: usize, j: usize) -> SparseVec {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => structure.get(&(i, j)).cloned().unwrap_or_default(),
        std::cmp::Ordering::Greater => bracket_basis(structure, j, i)
            .into_iter()
            .map(|(k, c)| (k, -c))
            .collect(),
        std::cmp::Ordering::Equal => SparseVec::new(),
    }
}

/// Checks `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0` for all
/// `i < j < k`, reporting the first nonzero component.
pub fn check_jacobi(dim: usize, structure: &Structure) -> Result<(), LieError> {
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                let mut sum = SparseVec::new();
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    for (m, x) in bracket_basis(structure, a, b) {
                        for (l, y) in bracket_basis(structure, m, c) {
                            add_into(&mut sum, l, &(&x * &y));
                        }
                    }
                }
                if let Some((&l, residual)) = sum.iter().next() {
                    return Err(LieError::JacobiViolation {
                        i,
                        j,
                        k,
                        l,
                        residual: residual.clone(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// The Chevalley-Eilenberg differential built from raw constants, with no
/// Jacobi check. `d^2 = 0` holds exactly when the constants satisfy Jacobi.
pub fn differential_matrix(dim: usize, structure: &Structure, k: usize) -> SparseMatrix {
    let cols = subset_index(dim, k);
    let rows = subsets(dim, k + 1);
    let mut m = SparseMatrix::zeros(rows.len(), cols.len());
    for (r, tuple) in rows.iter().enumerate() {
        for p in 0..tuple.len() {
            for q in p + 1..tuple.len() {
                let bracket = bracket_basis(structure, tuple[p], tuple[q]);
                if bracket.is_empty() {
                    continue;
                }
                let sign_pq = if (p + q) % 2 == 0 { 1 } else { -1 };
                let rest: Vec<usize> = tuple
                    .iter()
                    .enumerate()
                    .filter(|&(t, _)| t != p && t != q)
                    .map(|(_, &x)| x)
                    .collect();
                for (mi, c) in bracket {
                    let mut idx = vec![mi];
                    idx.extend_from_slice(&rest);
                    if let Some((sorted, s)) = sort_with_sign(idx) {
                        let col = cols[&sorted];
                        m.add_to(r, col, &(c * Rational::from_integer((sign_pq * s).into())));
                    }
                }
            }
        }
    }
    m
}

/// An alternating `k`-form on `g`, in the basis `e*_{i1} ^ .. ^ e*_{ik}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CeCochain {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Rational>,
}

impl CeCochain {
    pub fn zero(dim: usize, degree: usize) -> Self {
        CeCochain {
            dim,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn new<I>(dim: usize, degree: usize, terms: I) -> Result<Self, LieError>
    where
        I: IntoIterator<Item = (Vec<usize>, Rational)>,
    {
        if degree > dim {
            return Err(LieError::DegreeOutOfRange { degree, dim });
        }
        let mut c = Self::zero(dim, degree);
        for (tuple, v) in terms {
            if tuple.len() != degree
                || !is_strictly_increasing(&tuple)
                || tuple.iter().any(|&i| i >= dim)
            {
                return Err(LieError::BadTuple(tuple));
            }
            let entry = c.coeffs.entry(tuple).or_insert_with(Rational::zero);
            *entry += v;
        }
        c.coeffs.retain(|_, v| !v.is_zero());
        Ok(c)
    }

    /// Coordinates in the lexicographic tuple basis.
    pub fn from_vector(dim: usize, degree: usize, v: &[Rational]) -> Self {
        Self::from_sparse(dim, degree, &to_sparse(v))
    }

    pub(crate) fn from_sparse(dim: usize, degree: usize, v: &SparseVec) -> Self {
        let basis = subsets(dim, degree);
        CeCochain {
            dim,
            degree,
            coeffs: v
                .iter()
                .map(|(&i, x)| (basis[i].clone(), x.clone()))
                .collect(),
        }
    }

    pub fn to_vector(&self) -> Vec<Rational> {
        let index = subset_index(self.dim, self.degree);
        let mut v = vec![Rational::zero(); index.len()];
        for (t, x) in &self.coeffs {
            v[index[t]] = x.clone();
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<usize>, Rational> {
        &self.coeffs
    }

    /// Value on basis vectors `e_{args[0]}, ..` in any order.
    pub fn eval_basis(&self, args: &[usize]) -> Rational {
        assert_eq!(args.len(), self.degree);
        match sort_with_sign(args.to_vec()) {
            Some((sorted, s)) => self
                .coeffs
                .get(&sorted)
                .map(|x| x * Rational::from_integer(s.into()))
                .unwrap_or_else(Rational::zero),
            None => Rational::zero(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = self.clone();
        if s.is_zero() {
            out.coeffs.clear();
        } else {
            for v in out.coeffs.values_mut() {
                *v *= s;
            }
        }
        out
    }

    /// Human form, e.g. `e1*^e3* - 1/2 e2*^e3*`.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (t, c)) in self.coeffs.iter().enumerate() {
            let basis = if t.is_empty() {
                "1".to_string()
            } else {
                t.iter()
                    .map(|&i| format!("{}*", names[i]))
                    .collect::<Vec<_>>()
                    .join("^")
            };
            push_signed_term(&mut s, n == 0, c, &basis);
        }
        s
    }
}

pub(crate) fn push_signed_term(s: &mut String, first: bool, c: &Rational, basis: &str) {
    let neg = c < &Rational::zero();
    let abs = if neg { -c.clone() } else { c.clone() };
    if first {
        if neg {
            s.push('-');
        }
    } else {
        s.push_str(if neg { " - " } else { " + " });
    }
    if abs.is_one() && basis != "1" {
        s.push_str(basis);
    } else if basis == "1" {
        s.push_str(&format_rational(&abs));
    } else {
        s.push_str(&format!("{} {}", format_rational(&abs), basis));
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CeCohomology {
    pub degree: usize,
    pub dim: usize,
    pub representatives: Vec<CeCochain>,
}
