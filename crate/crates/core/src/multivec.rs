//! Polynomial multivector fields and differential forms on `R^n`.
//!
//! A term is a monomial coefficient times a basis element
//! `d_{i1} ^ .. ^ d_{ik}` (or `dx_{i1} ^ .. ^ dx_{ik}` for forms) with strictly
//! increasing indices. Terms live in a `BTreeMap`, so iteration and
//! serialization order is canonical.
//!
//! Sign conventions:
//! * the Schouten bracket is the Lie bracket on vector fields, `[X, f] = X(f)`,
//!   and `[a, b] = -(-1)^((p-1)(q-1)) [b, a]`. On single terms
//!   `A = f d_I`, `B = g d_J` it reads
//!   `[A, B] = sum_a (-1)^(p-a) f d_{i_a}(g) d_{I\i_a} ^ d_J
//!           - (-1)^((p-1)(q-1)) sum_b (-1)^(q-b) g d_{j_b}(f) d_{J\j_b} ^ d_I`;
//! * `(df)#` is `pi(df, .)`, i.e. component `j` of `(dx_i)#` is `pi^ij`.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exterior::{is_strictly_increasing, subsets, wedge_indices};
use crate::linalg::Rational;

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;
/// Strictly increasing basis indices.
pub type Indices = Vec<usize>;
pub type TermKey = (Monomial, Indices);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultivecError {
    #[error("ambient dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("expected degree {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("bracket of two functions is undefined")]
    BracketOfFunctions,
    #[error("malformed term: monomial {monomial:?}, indices {indices:?}")]
    BadTerm {
        monomial: Monomial,
        indices: Indices,
    },
    #[error("point has length {got}, expected {expected}")]
    BadPoint { expected: usize, got: usize },
}

/// Marker for multivector fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Vectors;
/// Marker for differential forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Covectors;

/// Homogeneous-degree exterior element with polynomial coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Graded<K> {
    n: usize,
    degree: usize,
    terms: BTreeMap<TermKey, Rational>,
    kind: PhantomData<K>,
}

pub type PolyMultivector = Graded<Vectors>;
pub type PolyForm = Graded<Covectors>;

pub trait Kind: Clone + Copy + PartialEq + Eq + std::fmt::Debug {
    const BASIS: &'static str;
}

impl Kind for Vectors {
    const BASIS: &'static str = "d";
}

impl Kind for Covectors {
    const BASIS: &'static str = "dx";
}

impl<K: Kind> Graded<K> {
    pub fn zero(n: usize, degree: usize) -> Self {
        Graded {
            n,
            degree,
            terms: BTreeMap::new(),
            kind: PhantomData,
        }
    }

    /// Validates every term; repeated keys are summed and zeros dropped.
    pub fn from_terms<I>(n: usize, degree: usize, terms: I) -> Result<Self, MultivecError>
    where
        I: IntoIterator<Item = (Monomial, Indices, Rational)>,
    {
        let mut out = Self::zero(n, degree);
        for (monomial, indices, c) in terms {
            if monomial.len() != n
                || indices.len() != degree
                || !is_strictly_increasing(&indices)
                || indices.iter().any(|&i| i >= n)
            {
                return Err(MultivecError::BadTerm { monomial, indices });
            }
            out.add_term(monomial, indices, c);
        }
        Ok(out)
    }

    /// The constant function `c`.
    pub fn constant(n: usize, c: Rational) -> Self {
        let mut out = Self::zero(n, 0);
        out.add_term(vec![0; n], vec![], c);
        out
    }

    /// The coordinate function `x_i`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut m = vec![0; n];
        m[i] = 1;
        let mut out = Self::zero(n, 0);
        out.add_term(m, vec![], Rational::one());
        out
    }

    /// The constant basis element on increasing indices (sorted with sign if not).
    pub fn basis(n: usize, indices: &[usize]) -> Self {
        let mut out = Self::zero(n, indices.len());
        if let Some((sorted, s)) = wedge_indices(indices, &[]) {
            out.add_term(vec![0; n], sorted, Rational::from_integer(s.into()));
        }
        out
    }

    /// Single term `c x^monomial basis(indices)`.
    pub fn monomial_term(n: usize, monomial: Monomial, indices: &[usize], c: Rational) -> Self {
        let mut out = Self::zero(n, indices.len());
        if let Some((sorted, s)) = wedge_indices(indices, &[]) {
            out.add_term(monomial, sorted, c * Rational::from_integer(s.into()));
        }
        out
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<TermKey, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, monomial: Monomial, indices: Indices, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (monomial, indices);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn same_dim(&self, other_n: usize) -> Result<(), MultivecError> {
        if self.n != other_n {
            return Err(MultivecError::DimensionMismatch {
                left: self.n,
                right: other_n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, MultivecError> {
        self.same_dim(other.n)?;
        if self.degree != other.degree {
            return Err(MultivecError::WrongDegree {
                expected: self.degree,
                got: other.degree,
            });
        }
        let mut out = self.clone();
        for ((m, i), c) in &other.terms {
            out.add_term(m.clone(), i.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MultivecError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        if s.is_zero() {
            return out;
        }
        for (k, c) in &self.terms {
            out.terms.insert(k.clone(), c * s);
        }
        out
    }

    /// Exterior product; zero when the degrees add past `n`.
    pub fn wedge(&self, other: &Self) -> Result<Self, MultivecError> {
        self.same_dim(other.n)?;
        let degree = self.degree + other.degree;
        let mut out = Self::zero(self.n, degree);
        for ((ma, ia), ca) in &self.terms {
            for ((mb, ib), cb) in &other.terms {
                if let Some((idx, s)) = wedge_indices(ia, ib) {
                    out.add_term(
                        mul_monomials(ma, mb),
                        idx,
                        ca * cb * Rational::from_integer(s.into()),
                    );
                }
            }
        }
        Ok(out)
    }

    /// Applies `d/dx_var` to every coefficient.
    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        for ((m, i), c) in &self.terms {
            if let Some((dm, e)) = diff_monomial(m, var) {
                out.add_term(dm, i.clone(), c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Substitutes `point` into every coefficient.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Self, MultivecError> {
        self.check_point(point)?;
        let mut out = Self::zero(self.n, self.degree);
        for ((m, i), c) in &self.terms {
            out.add_term(vec![0; self.n], i.clone(), c * eval_monomial(m, point));
        }
        Ok(out)
    }

    /// Substitutes `x -> x + shift`, so the point `shift` moves to the origin.
    pub fn translate(&self, shift: &[Rational]) -> Result<Self, MultivecError> {
        self.check_point(shift)?;
        let mut out = Self::zero(self.n, self.degree);
        for ((m, i), c) in &self.terms {
            for (mm, w) in expand_shifted_monomial(m, shift) {
                out.add_term(mm, i.clone(), c * w);
            }
        }
        Ok(out)
    }

    fn check_point(&self, point: &[Rational]) -> Result<(), MultivecError> {
        if point.len() != self.n {
            return Err(MultivecError::BadPoint {
                expected: self.n,
                got: point.len(),
            });
        }
        Ok(())
    }

    /// Polynomial degree shared by every term, if there is one (`None` for zero).
    pub fn homogeneous_degree(&self) -> Option<Result<u32, ()>> {
        let mut degrees = self.terms.keys().map(|(m, _)| m.iter().sum::<u32>());
        let first = degrees.next()?;
        Some(if degrees.all(|d| d == first) {
            Ok(first)
        } else {
            Err(())
        })
    }

    pub fn max_poly_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|(m, _)| m.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Coefficient of the basis element `indices`, as a function.
    pub fn component(&self, indices: &[usize]) -> Self {
        let mut out = Self::zero(self.n, 0);
        for ((m, i), c) in &self.terms {
            if i.as_slice() == indices {
                out.add_term(m.clone(), vec![], c.clone());
            }
        }
        out
    }

    /// Value of a degree-0 element with no variables left, e.g. after evaluate.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.degree != 0 || self.terms.keys().any(|(m, _)| m.iter().any(|&e| e > 0)) {
            return None;
        }
        Some(
            self.terms
                .values()
                .next()
                .cloned()
                .unwrap_or_else(Rational::zero),
        )
    }

    pub(crate) fn cast<L>(&self) -> Graded<L> {
        Graded {
            n: self.n,
            degree: self.degree,
            terms: self.terms.clone(),
            kind: PhantomData,
        }
    }

    /// Multiplies by a function (degree-0 element).
    pub fn mul_function(&self, f: &Self) -> Result<Self, MultivecError> {
        if f.degree != 0 {
            return Err(MultivecError::WrongDegree {
                expected: 0,
                got: f.degree,
            });
        }
        f.wedge(self)
    }
}

impl<K: Kind> fmt::Debug for Graded<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<K: Kind> fmt::Display for Graded<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut s = String::new();
        for (n, ((m, i), c)) in self.terms.iter().enumerate() {
            let mut parts: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        format!("x{}", v + 1)
                    } else {
                        format!("x{}^{}", v + 1, e)
                    }
                })
                .collect();
            if !i.is_empty() {
                parts.push(
                    i.iter()
                        .map(|&k| format!("{}{}", K::BASIS, k + 1))
                        .collect::<Vec<_>>()
                        .join("^"),
                );
            }
            let body = if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join(" ")
            };
            crate::liealg::push_signed_term(&mut s, n == 0, c, &body);
        }
        write!(f, "{s}")
    }
}

pub(crate) fn mul_monomials(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn diff_monomial(m: &[u32], var: usize) -> Option<(Monomial, u32)> {
    let e = m[var];
    if e == 0 {
        return None;
    }
    let mut out = m.to_vec();
    out[var] -= 1;
    Some((out, e))
}

fn eval_monomial(m: &[u32], point: &[Rational]) -> Rational {
    m.iter().zip(point).fold(Rational::one(), |acc, (&e, x)| {
        acc * num_traits::pow(x.clone(), e as usize)
    })
}

/// `prod_i (x_i + s_i)^(m_i)` expanded into monomials.
fn expand_shifted_monomial(m: &[u32], shift: &[Rational]) -> Vec<(Monomial, Rational)> {
    let mut acc: Vec<(Monomial, Rational)> = vec![(vec![0; m.len()], Rational::one())];
    for (var, (&e, s)) in m.iter().zip(shift).enumerate() {
        if e == 0 {
            continue;
        }
        let mut next = Vec::new();
        for (mono, w) in &acc {
            let mut binom = Rational::one();
            for k in 0..=e {
                // C(e, k) x^k s^(e-k)
                let coeff = &binom * num_traits::pow(s.clone(), (e - k) as usize);
                if !coeff.is_zero() {
                    let mut mm = mono.clone();
                    mm[var] += k;
                    next.push((mm, w * coeff));
                }
                binom = binom * Rational::from_integer((e - k).into())
                    / Rational::from_integer((k + 1).into());
            }
        }
        acc = next;
    }
    acc
}

fn sign(parity: i64) -> i64 {
    if parity.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn without(idx: &[usize], pos: usize) -> Vec<usize> {
    idx.iter()
        .enumerate()
        .filter(|&(t, _)| t != pos)
        .map(|(_, &x)| x)
        .collect()
}

impl PolyMultivector {
    /// Schouten-Nijenhuis bracket, of degree `p + q - 1`.
    pub fn schouten(&self, other: &Self) -> Result<Self, MultivecError> {
        self.same_dim(other.n)?;
        let (p, q) = (self.degree as i64, other.degree as i64);
        if p + q == 0 {
            return Err(MultivecError::BracketOfFunctions);
        }
        let degree = (p + q - 1) as usize;
        let mut out = Self::zero(self.n, degree);
        if degree > self.n {
            return Ok(out);
        }
        let swap_sign = -sign((p - 1) * (q - 1));
        for ((ma, ia), ca) in &self.terms {
            for ((mb, ib), cb) in &other.terms {
                let coeff = ca * cb;
                for (a, &var) in ia.iter().enumerate() {
                    let Some((dm, e)) = diff_monomial(mb, var) else {
                        continue;
                    };
                    if let Some((idx, s)) = wedge_indices(&without(ia, a), ib) {
                        let s = s * sign(p - 1 - a as i64);
                        out.add_term(
                            mul_monomials(ma, &dm),
                            idx,
                            &coeff * Rational::from_integer((s * e as i64).into()),
                        );
                    }
                }
                for (b, &var) in ib.iter().enumerate() {
                    let Some((dm, e)) = diff_monomial(ma, var) else {
                        continue;
                    };
                    if let Some((idx, s)) = wedge_indices(&without(ib, b), ia) {
                        let s = swap_sign * s * sign(q - 1 - b as i64);
                        out.add_term(
                            mul_monomials(mb, &dm),
                            idx,
                            &coeff * Rational::from_integer((s * e as i64).into()),
                        );
                    }
                }
            }
        }
        Ok(out)
    }

    /// `L_x a = [x, a]` for a vector field `x`.
    pub fn lie_derivative(&self, a: &Self) -> Result<Self, MultivecError> {
        if self.degree != 1 {
            return Err(MultivecError::WrongDegree {
                expected: 1,
                got: self.degree,
            });
        }
        self.schouten(a)
    }

    /// `X(f)` for a vector field and a function.
    pub fn apply_to(&self, f: &Self) -> Result<Self, MultivecError> {
        self.lie_derivative(f)
    }

    /// The Euler field `sum x_i d_i`.
    pub fn euler(n: usize) -> Self {
        let mut out = Self::zero(n, 1);
        for i in 0..n {
            let mut m = vec![0; n];
            m[i] = 1;
            out.add_term(m, vec![i], Rational::one());
        }
        out
    }

    /// Components `pi^ij` for all ordered pairs, with `pi^ji = -pi^ij`.
    fn bivector_component(&self, i: usize, j: usize) -> Self {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.component(&[i, j]),
            std::cmp::Ordering::Greater => self.component(&[j, i]).neg(),
            std::cmp::Ordering::Equal => Self::zero(self.n, 0),
        }
    }

    /// `pi(alpha, beta) = sum_{i,j} pi^ij alpha_i beta_j` for a bivector and two 1-forms.
    pub fn pair(&self, alpha: &PolyForm, beta: &PolyForm) -> Result<Self, MultivecError> {
        expect_degree(self.degree, 2)?;
        expect_degree(alpha.degree, 1)?;
        expect_degree(beta.degree, 1)?;
        self.same_dim(alpha.n)?;
        self.same_dim(beta.n)?;
        let mut out = Self::zero(self.n, 0);
        for i in 0..self.n {
            let ai = alpha.component(&[i]).cast::<Vectors>();
            if ai.is_zero() {
                continue;
            }
            for j in 0..self.n {
                let bj = beta.component(&[j]).cast::<Vectors>();
                let pij = self.bivector_component(i, j);
                if bj.is_zero() || pij.is_zero() {
                    continue;
                }
                out = out.add(&pij.wedge(&ai)?.wedge(&bj)?)?;
            }
        }
        Ok(out)
    }
}

fn expect_degree(got: usize, expected: usize) -> Result<(), MultivecError> {
    if got != expected {
        return Err(MultivecError::WrongDegree { expected, got });
    }
    Ok(())
}

/// `alpha# = sum_{i,j} alpha_i pi^ij d_j`.
pub fn sharp(pi: &PolyMultivector, alpha: &PolyForm) -> Result<PolyMultivector, MultivecError> {
    expect_degree(pi.degree, 2)?;
    expect_degree(alpha.degree, 1)?;
    pi.same_dim(alpha.n)?;
    let mut out = PolyMultivector::zero(pi.n, 1);
    for i in 0..pi.n {
        let ai = alpha.component(&[i]).cast::<Vectors>();
        if ai.is_zero() {
            continue;
        }
        for j in 0..pi.n {
            let pij = pi.bivector_component(i, j);
            if pij.is_zero() {
                continue;
            }
            let term = ai.wedge(&pij)?.wedge(&PolyMultivector::basis(pi.n, &[j]))?;
            out = out.add(&term)?;
        }
    }
    Ok(out)
}

impl PolyForm {
    /// `df` for a function `f`.
    pub fn differential_of(f: &PolyMultivector) -> Result<Self, MultivecError> {
        expect_degree(f.degree, 0)?;
        f.cast::<Covectors>().exterior_derivative()
    }

    pub fn exterior_derivative(&self) -> Result<Self, MultivecError> {
        let mut out = Self::zero(self.n, self.degree + 1);
        for ((m, idx), c) in &self.terms {
            for var in 0..self.n {
                let Some((dm, e)) = diff_monomial(m, var) else {
                    continue;
                };
                if let Some((sorted, s)) = wedge_indices(&[var], idx) {
                    out.add_term(
                        dm,
                        sorted,
                        c * Rational::from_integer((s * e as i64).into()),
                    );
                }
            }
        }
        Ok(out)
    }

    /// `omega(x, y) = sum_{i<j} omega_ij (x^i y^j - x^j y^i)` for a 2-form.
    pub fn eval_on(
        &self,
        x: &PolyMultivector,
        y: &PolyMultivector,
    ) -> Result<PolyMultivector, MultivecError> {
        expect_degree(self.degree, 2)?;
        expect_degree(x.degree, 1)?;
        expect_degree(y.degree, 1)?;
        self.same_dim(x.n)?;
        self.same_dim(y.n)?;
        let mut out = PolyMultivector::zero(self.n, 0);
        for pair in subsets(self.n, 2) {
            let w = self.component(&pair).cast::<Vectors>();
            if w.is_zero() {
                continue;
            }
            let (i, j) = (pair[0], pair[1]);
            let cross = x
                .component(&[i])
                .wedge(&y.component(&[j]))?
                .sub(&x.component(&[j]).wedge(&y.component(&[i]))?)?;
            out = out.add(&w.wedge(&cross)?)?;
        }
        Ok(out)
    }
}
