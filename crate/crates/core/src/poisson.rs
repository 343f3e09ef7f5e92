//! Poisson structures: certified bivectors, Lie-Poisson structures on `g*`,
//! linearization at fixed points, formal (graded) Poisson cohomology and
//! exactness witnesses.
//!
//! Poisson cohomology here is the cohomology of `theta -> [theta, pi]` on
//! polynomial multivector fields, split by homogeneous polynomial degree. It
//! is a formal, per-degree computation and says nothing about smooth
//! cohomology.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::exterior::subsets;
use crate::liealg::{default_names, LieAlgebra, LieError, Structure};
use crate::linalg::{cohomology, int, solve, Rational, SparseMatrix};
use crate::multivec::{Indices, Monomial, MultivecError, PolyMultivector, TermKey};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoissonError {
    #[error("not a Poisson bivector: [pi, pi] has term {coeff} x^{monomial:?} d{indices:?}")]
    NotPoisson {
        monomial: Monomial,
        indices: Indices,
        coeff: Rational,
    },
    #[error("not a fixed point: pi^{{{i}{j}}} = {value} there")]
    NotAFixedPoint { i: usize, j: usize, value: Rational },
    #[error("bivector coefficients are not homogeneous of a single degree")]
    NonHomogeneous,
    #[error("expected a bivector, got degree {0}")]
    NotABivector(usize),
    #[error("linearization failed the Jacobi check: {0}")]
    Linearization(LieError),
    #[error(transparent)]
    Multivec(#[from] MultivecError),
}

/// A bivector with `[pi, pi] = 0`, checked exactly on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonStructure {
    pi: PolyMultivector,
}

/// A zero of a Poisson structure with its isotropy algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPoint {
    pub point: Vec<Rational>,
    pub isotropy: LieAlgebra,
}

/// Cohomology of the `(k, d)` graded piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedCohomology {
    pub form_degree: usize,
    pub poly_degree: u32,
    pub dim: usize,
    pub representatives: Vec<PolyMultivector>,
}

impl PoissonStructure {
    pub fn certify(pi: PolyMultivector) -> Result<Self, PoissonError> {
        if pi.degree() != 2 {
            return Err(PoissonError::NotABivector(pi.degree()));
        }
        let square = pi.schouten(&pi)?;
        if let Some(((monomial, indices), coeff)) = square.terms().iter().next() {
            return Err(PoissonError::NotPoisson {
                monomial: monomial.clone(),
                indices: indices.clone(),
                coeff: coeff.clone(),
            });
        }
        Ok(PoissonStructure { pi })
    }

    /// The Lie-Poisson structure on `g*`: `pi^ij(x) = -sum_k c^k_ij x_k`.
    pub fn from_lie_algebra(g: &LieAlgebra) -> Self {
        let n = g.dim();
        let mut terms = Vec::new();
        for (&(i, j), coeffs) in g.structure() {
            for (&k, c) in coeffs {
                let mut m = vec![0; n];
                m[k] = 1;
                terms.push((m, vec![i, j], -c.clone()));
            }
        }
        let pi = PolyMultivector::from_terms(n, 2, terms).expect("structure indices are in range");
        debug_assert!(pi.schouten(&pi).map(|s| s.is_zero()).unwrap_or(false));
        PoissonStructure { pi }
    }

    pub fn bivector(&self) -> &PolyMultivector {
        &self.pi
    }

    pub fn into_bivector(self) -> PolyMultivector {
        self.pi
    }

    pub fn ambient_dim(&self) -> usize {
        self.pi.ambient_dim()
    }

    /// `Ok(())` when `pi(x0) = 0`, else the first nonzero component.
    pub fn check_fixed_point(&self, x0: &[Rational]) -> Result<(), PoissonError> {
        let at = self.pi.evaluate(x0)?;
        match at.terms().iter().next() {
            None => Ok(()),
            Some(((_, idx), value)) => Err(PoissonError::NotAFixedPoint {
                i: idx[0],
                j: idx[1],
                value: value.clone(),
            }),
        }
    }

    /// Isotropy algebra at a zero: `c^k_ij = -(d pi^ij / d x_k)(x0)`.
    pub fn isotropy_at(&self, x0: &[Rational]) -> Result<LieAlgebra, PoissonError> {
        self.check_fixed_point(x0)?;
        let n = self.ambient_dim();
        let mut structure = Structure::new();
        for k in 0..n {
            let slope = self.pi.partial(k).evaluate(x0)?;
            for ((_, idx), v) in slope.terms() {
                structure
                    .entry((idx[0], idx[1]))
                    .or_default()
                    .insert(k, -v.clone());
            }
        }
        LieAlgebra::new(n, default_names(n), structure).map_err(PoissonError::Linearization)
    }

    pub fn fixed_point(&self, x0: &[Rational]) -> Result<FixedPoint, PoissonError> {
        Ok(FixedPoint {
            point: x0.to_vec(),
            isotropy: self.isotropy_at(x0)?,
        })
    }

    /// Whether `pi`, written in coordinates centred at `x0`, has only linear terms.
    pub fn is_linear_at(&self, x0: &[Rational]) -> Result<bool, PoissonError> {
        let shifted = self.pi.translate(x0)?;
        Ok(shifted
            .terms()
            .keys()
            .all(|(m, _)| m.iter().sum::<u32>() == 1))
    }

    /// The common polynomial degree of the coefficients; the zero bivector
    /// is treated as linear.
    pub fn homogeneous_degree(&self) -> Result<u32, PoissonError> {
        match self.pi.homogeneous_degree() {
            None => Ok(1),
            Some(Ok(h)) => Ok(h),
            Some(Err(())) => Err(PoissonError::NonHomogeneous),
        }
    }

    /// `X_f = [f, pi]`.
    pub fn hamiltonian(&self, f: &PolyMultivector) -> Result<PolyMultivector, PoissonError> {
        Ok(f.schouten(&self.pi)?)
    }

    /// `theta -> [theta, pi]` from the `(k, d)` piece to the
    /// `(k + 1, d + h - 1)` piece, in the bases of [`graded_basis`].
    pub fn differential_matrix(&self, k: usize, d: u32) -> Result<SparseMatrix, PoissonError> {
        let n = self.ambient_dim();
        let h = self.homogeneous_degree()?;
        let cols = graded_basis(n, k, d);
        let rows = match (d + h).checked_sub(1) {
            Some(target) if k < n => graded_basis(n, k + 1, target),
            _ => Vec::new(),
        };
        let row_index: BTreeMap<&TermKey, usize> =
            rows.iter().enumerate().map(|(i, key)| (key, i)).collect();
        let mut m = SparseMatrix::zeros(rows.len(), cols.len());
        for (c, (mono, idx)) in cols.iter().enumerate() {
            let theta = PolyMultivector::monomial_term(n, mono.clone(), idx, int(1));
            for (key, v) in theta.schouten(&self.pi)?.terms() {
                let r = row_index[key];
                m.add_to(r, c, v);
            }
        }
        Ok(m)
    }

    /// Graded Poisson cohomology at multivector degree `k` for each
    /// polynomial degree `0..=d_max`.
    pub fn formal_cohomology(
        &self,
        k: usize,
        d_max: u32,
    ) -> Result<Vec<GradedCohomology>, PoissonError> {
        let n = self.ambient_dim();
        let h = self.homogeneous_degree()?;
        let mut out = Vec::new();
        for d in 0..=d_max {
            let outgoing = self.differential_matrix(k, d)?;
            // incoming map lands in degree d from degree d - h + 1
            let incoming = match ((d + 1).checked_sub(h), k.checked_sub(1)) {
                (Some(src), Some(km1)) => Some(self.differential_matrix(km1, src)?),
                _ => None,
            };
            let (dim, reps) = cohomology(&outgoing, incoming.as_ref());
            let basis = graded_basis(n, k, d);
            let representatives = reps
                .iter()
                .map(|v| {
                    PolyMultivector::from_terms(
                        n,
                        k,
                        v.iter()
                            .map(|(&i, c)| (basis[i].0.clone(), basis[i].1.clone(), c.clone())),
                    )
                    .expect("basis keys are valid")
                })
                .collect();
            out.push(GradedCohomology {
                form_degree: k,
                poly_degree: d,
                dim,
                representatives,
            });
        }
        Ok(out)
    }

    /// A polynomial vector field `X` of coefficient degree at most
    /// `degree_cap` with `[X, pi] = pi`, found by one exact linear solve.
    pub fn exactness_witness(&self, degree_cap: u32) -> Option<PolyMultivector> {
        let n = self.ambient_dim();
        let unknowns: Vec<TermKey> = (0..=degree_cap)
            .flat_map(|d| graded_basis(n, 1, d))
            .collect();
        let columns: Vec<PolyMultivector> = unknowns
            .iter()
            .map(|(m, i)| {
                PolyMultivector::monomial_term(n, m.clone(), i, int(1))
                    .schouten(&self.pi)
                    .expect("same ambient dimension")
            })
            .collect();
        let mut row_keys: BTreeMap<TermKey, usize> = BTreeMap::new();
        for key in columns
            .iter()
            .flat_map(|c| c.terms().keys())
            .chain(self.pi.terms().keys())
        {
            let next = row_keys.len();
            row_keys.entry(key.clone()).or_insert(next);
        }
        let mut m = SparseMatrix::zeros(row_keys.len(), unknowns.len());
        for (c, col) in columns.iter().enumerate() {
            for (key, v) in col.terms() {
                m.add_to(row_keys[key], c, v);
            }
        }
        let mut b = vec![Rational::zero(); row_keys.len()];
        for (key, v) in self.pi.terms() {
            b[row_keys[key]] = v.clone();
        }
        let x = solve(&m, &b)?;
        let field = PolyMultivector::from_terms(
            n,
            1,
            unknowns
                .iter()
                .zip(x)
                .map(|((m, i), c)| (m.clone(), i.clone(), c)),
        )
        .expect("unknown keys are valid");
        Some(field)
    }

    pub fn describe(&self) -> String {
        self.pi.to_string()
    }
}

/// Canonical basis of the `(k, d)` piece: pairs (degree-`d` monomial,
/// `k`-subset) in term-map order.
pub fn graded_basis(n: usize, k: usize, d: u32) -> Vec<TermKey> {
    let mut keys: Vec<TermKey> = monomials(n, d)
        .into_iter()
        .flat_map(|m| subsets(n, k).into_iter().map(move |s| (m.clone(), s)))
        .collect();
    keys.sort();
    keys
}

/// All exponent vectors of length `n` and total degree `d`.
pub fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}
