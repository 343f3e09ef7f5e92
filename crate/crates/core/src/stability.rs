//! Stability of fixed points.
//!
//! A fixed point `x0` of `pi` is classified through `H^2` of its isotropy
//! algebra: `H^2 = 0` means stable. For a linear structure with `H^2 != 0`
//! a nonzero class `[c]` gives the pencil `pi_t = pi_0 + t pi_1` (with
//! `pi_1` the constant bivector of `c`) whose members have no zeros for
//! `t != 0`, which exhibits the instability explicitly.
//!
//! Zero sets are always computed from the components of `pi_t` directly;
//! with the sign conventions of [`crate::liealg`] a zero `x` of `pi_t` is
//! exactly a `xi` with `d xi = -t c`.

use nalgebra::{DMatrix, DVector};
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::exterior::subsets;
use crate::liealg::{CeCochain, LieAlgebra, LieError};
use crate::linalg::{int, nullspace_basis, rank, ratio, solve, Rational, SparseMatrix};
use crate::multivec::PolyMultivector;
use crate::poisson::{PoissonError, PoissonStructure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilityError {
    #[error("cochain is not a cocycle: its differential is {0}")]
    NotACocycle(String),
    #[error("pencil base is not a linear bivector (term of degree {0})")]
    NotLinear(u32),
    #[error("pencil deformation must be a constant bivector")]
    NotConstant,
    #[error("pencil members do not commute: [pi_0, pi_1] = {0}")]
    Incompatible(String),
    #[error("H^2 of the algebra vanishes; no cocycle to build a pencil from")]
    NoCohomology,
    #[error("internal invariant violated: {0}")]
    InvariantBreach(String),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

impl From<crate::multivec::MultivecError> for StabilityError {
    fn from(e: crate::multivec::MultivecError) -> Self {
        StabilityError::Poisson(PoissonError::Multivec(e))
    }
}

/// `pi_t = pi_0 + t pi_1` with `pi_1` constant and `[pi_0, pi_1] = 0`, so
/// every member is Poisson.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pencil {
    pi0: PoissonStructure,
    pi1: PolyMultivector,
}

impl Pencil {
    pub fn new(pi0: PoissonStructure, pi1: PolyMultivector) -> Result<Self, StabilityError> {
        if pi1.degree() != 2 || pi1.max_poly_degree() > 0 {
            return Err(StabilityError::NotConstant);
        }
        let mixed = pi0.bivector().schouten(&pi1)?;
        if !mixed.is_zero() {
            return Err(StabilityError::Incompatible(mixed.to_string()));
        }
        Ok(Pencil { pi0, pi1 })
    }

    pub fn base(&self) -> &PoissonStructure {
        &self.pi0
    }

    pub fn deformation(&self) -> &PolyMultivector {
        &self.pi1
    }

    pub fn ambient_dim(&self) -> usize {
        self.pi0.ambient_dim()
    }

    pub fn bivector_at(&self, t: &Rational) -> PolyMultivector {
        self.pi0
            .bivector()
            .add(&self.pi1.scale(t))
            .expect("pencil members share dimension and degree")
    }

    /// Re-certifies `pi_t` from scratch.
    pub fn member(&self, t: &Rational) -> Result<PoissonStructure, PoissonError> {
        PoissonStructure::certify(self.bivector_at(t))
    }
}

/// `pi_0` the Lie-Poisson structure of `g`, `pi_1 = sum_{i<j} c(e_i, e_j) d_i ^ d_j`.
pub fn pencil_from_cocycle(g: &LieAlgebra, c: &CeCochain) -> Result<Pencil, StabilityError> {
    if c.degree() != 2 {
        return Err(LieError::WrongDegree {
            expected: 2,
            got: c.degree(),
        }
        .into());
    }
    let dc = g.differential(c)?;
    if !dc.is_zero() {
        return Err(StabilityError::NotACocycle(
            dc.display_with(g.basis_names()),
        ));
    }
    let pi0 = PoissonStructure::from_lie_algebra(g);
    let pi1 = constant_bivector(c);
    Pencil::new(pi0, pi1).map_err(|e| match e {
        StabilityError::Incompatible(s) => {
            StabilityError::InvariantBreach(format!("cocycle gave [pi_0, pi_1] = {s}"))
        }
        other => other,
    })
}

/// The constant bivector with components `c(e_i, e_j)`.
pub fn constant_bivector(c: &CeCochain) -> PolyMultivector {
    let n = c.dim();
    PolyMultivector::from_terms(
        n,
        2,
        c.coeffs()
            .iter()
            .map(|(idx, v)| (vec![0; n], idx.clone(), v.clone())),
    )
    .expect("cochain tuples are increasing and in range")
}

/// `{x : pi_t(x) = 0}` as `particular + span(kernel_basis)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSet {
    pub empty: bool,
    pub particular: Option<Vec<Rational>>,
    pub kernel_basis: Vec<Vec<Rational>>,
}

/// The affine system `A x = b` equivalent to `pi_t(x) = 0` for linear `pi_t`.
/// Rows are the pairs `i < j` in lexicographic order.
pub fn zero_set_system(
    pi: &PolyMultivector,
) -> Result<(SparseMatrix, Vec<Rational>), StabilityError> {
    let n = pi.ambient_dim();
    let pairs = crate::exterior::subset_index(n, 2);
    let mut a = SparseMatrix::zeros(pairs.len(), n);
    let mut b = vec![Rational::zero(); pairs.len()];
    for ((m, idx), c) in pi.terms() {
        let row = pairs[idx];
        match m.iter().sum::<u32>() {
            0 => b[row] -= c,
            1 => {
                let k = m.iter().position(|&e| e == 1).expect("degree-one monomial");
                a.add_to(row, k, c);
            }
            other => return Err(StabilityError::NotLinear(other)),
        }
    }
    Ok((a, b))
}

fn check_linear_base(p: &Pencil) -> Result<(), StabilityError> {
    if let Some(bad) = p
        .base()
        .bivector()
        .terms()
        .keys()
        .map(|(m, _)| m.iter().sum::<u32>())
        .find(|&d| d != 1)
    {
        return Err(StabilityError::NotLinear(bad));
    }
    Ok(())
}

/// Exact zero set of `pi_t`; requires `pi_0` linear.
pub fn pencil_zero_set(p: &Pencil, t: &Rational) -> Result<ZeroSet, StabilityError> {
    check_linear_base(p)?;
    let (a, b) = zero_set_system(&p.bivector_at(t))?;
    Ok(match solve(&a, &b) {
        Some(x) => ZeroSet {
            empty: false,
            particular: Some(x),
            kernel_basis: nullspace_basis(&a),
        },
        None => ZeroSet {
            empty: true,
            particular: None,
            kernel_basis: Vec::new(),
        },
    })
}

/// True when `pi_t` has no zero for every `t != 0`. The system is
/// `A x = t b` with `A`, `b` independent of `t`, so this is the rank jump
/// `rank [A | b] > rank A`.
pub fn zero_set_empty_for_all_nonzero_t(p: &Pencil) -> Result<bool, StabilityError> {
    check_linear_base(p)?;
    let (a, b) = zero_set_system(&p.bivector_at(&int(1)))?;
    Ok(rank(&a.augment(&b)) > rank(&a))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Stable,
    UnstableWitness,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Stable => "Stable",
            Verdict::UnstableWitness => "UnstableWitness",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone)]
pub struct StabilityVerdict {
    pub tag: Verdict,
    pub isotropy: LieAlgebra,
    pub h2_dim: usize,
    pub semisimple: bool,
    /// The pencil is written in coordinates centred at the fixed point.
    pub witness: Option<Pencil>,
    pub witness_cocycle: Option<CeCochain>,
    /// Values of `t` at which the witness zero set was solved and found empty.
    pub certified_t: Vec<Rational>,
    /// The zero set is empty for every `t != 0`, not only the sampled ones.
    pub empty_for_all_nonzero_t: bool,
    pub notes: Vec<String>,
}

/// Sample values of `t` certified for every instability witness.
pub fn witness_sample_t() -> Vec<Rational> {
    vec![ratio(1, 1), ratio(-1, 1), ratio(1, 2), ratio(-1, 2)]
}

pub fn classify_fixed_point(
    p: &PoissonStructure,
    x0: &[Rational],
) -> Result<StabilityVerdict, StabilityError> {
    let g = p.isotropy_at(x0)?;
    let h2 = g.ce_cohomology(2)?;
    let semisimple = g.is_semisimple();
    let mut verdict = StabilityVerdict {
        tag: Verdict::Inconclusive,
        isotropy: g.clone(),
        h2_dim: h2.dim,
        semisimple,
        witness: None,
        witness_cocycle: None,
        certified_t: Vec::new(),
        empty_for_all_nonzero_t: false,
        notes: Vec::new(),
    };
    if h2.dim == 0 {
        verdict.tag = Verdict::Stable;
        if semisimple {
            verdict
                .notes
                .push("isotropy algebra is semisimple, so H^2 = 0 (second Whitehead lemma)".into());
        }
        verdict.notes.push(
            "Stable by the fixed-point criterion: H^2 of the isotropy algebra vanishes".into(),
        );
        return Ok(verdict);
    }
    if !p.is_linear_at(x0)? {
        verdict.notes.push(format!(
            "H^2 of the isotropy algebra has dimension {}, but pi is not linear around the point; \
             the converse of the H^2 criterion is only established for linear structures",
            h2.dim
        ));
        return Ok(verdict);
    }

    let centred = p.bivector().translate(x0)?;
    let pi0 = PoissonStructure::from_lie_algebra(&g);
    if pi0.bivector() != &centred {
        return Err(StabilityError::InvariantBreach(
            "linear structure differs from the Lie-Poisson structure of its isotropy algebra"
                .into(),
        ));
    }
    let c = h2.representatives[0].clone();
    let pencil = pencil_from_cocycle(&g, &c)?;
    let samples = witness_sample_t();
    for t in &samples {
        if !pencil_zero_set(&pencil, t)?.empty {
            return Err(StabilityError::InvariantBreach(format!(
                "pencil from a nonzero H^2 class has a zero at t = {t}"
            )));
        }
    }
    verdict.empty_for_all_nonzero_t = zero_set_empty_for_all_nonzero_t(&pencil)?;
    if !verdict.empty_for_all_nonzero_t {
        return Err(StabilityError::InvariantBreach(
            "zero-set system is consistent for t != 0 although the class is nonzero".into(),
        ));
    }
    verdict.tag = Verdict::UnstableWitness;
    verdict.certified_t = samples;
    verdict.notes.push(format!(
        "Unstable: linear structure with dim H^2 = {}; the pencil pi_0 + t pi_1 built from the \
         first H^2 representative has no zeros for any t != 0 (converse of the H^2 criterion \
         for linear Poisson structures)",
        h2.dim
    ));
    verdict.witness = Some(pencil);
    verdict.witness_cocycle = Some(c);
    Ok(verdict)
}

/// `dim H^k_pi(M, {x0})`: for a point leaf this is `H^k` of the isotropy algebra.
pub fn relative_cohomology_at_point(
    p: &PoissonStructure,
    x0: &[Rational],
    k: usize,
) -> Result<usize, StabilityError> {
    let g = p.isotropy_at(x0)?;
    Ok(g.ce_cohomology(k)?.dim)
}

/// One step of a numeric zero track.
#[derive(Debug, Clone, PartialEq)]
pub struct TrackPoint {
    pub t: f64,
    pub zero: Option<Vec<f64>>,
    pub residual: f64,
}

pub const RESIDUAL_TOL: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 100;
const MAX_HALVINGS: usize = 40;

/// Float copy of a polynomial multivector: per component, (monomial, coeff).
struct NumericBivector {
    n: usize,
    rows: Vec<Vec<(Vec<u32>, f64)>>,
}

impl NumericBivector {
    fn new(pi: &PolyMultivector) -> Self {
        let n = pi.ambient_dim();
        let index = crate::exterior::subset_index(n, 2);
        let mut rows = vec![Vec::new(); index.len()];
        for ((m, idx), c) in pi.terms() {
            rows[index[idx]].push((m.clone(), c.to_f64().unwrap_or(f64::NAN)));
        }
        NumericBivector { n, rows }
    }

    fn values(&self, x: &[f64]) -> Vec<f64> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|(m, c)| c * mono(m, x)).sum())
            .collect()
    }

    fn jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        let mut j = DMatrix::zeros(self.rows.len(), self.n);
        for (r, row) in self.rows.iter().enumerate() {
            for (m, c) in row {
                for k in 0..self.n {
                    if m[k] == 0 {
                        continue;
                    }
                    let mut dm = m.clone();
                    dm[k] -= 1;
                    j[(r, k)] += c * m[k] as f64 * mono(&dm, x);
                }
            }
        }
        j
    }
}

fn mono(m: &[u32], x: &[f64]) -> f64 {
    m.iter().zip(x).map(|(&e, v)| v.powi(e as i32)).product()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Damped Gauss-Newton for `pi_t(x) = 0`, warm-started from the previous
/// zero along `t_grid`. A zero is reported when the residual drops below
/// [`RESIDUAL_TOL`] inside the ball of `ball_radius` around `x_start`.
pub fn track_zero_numeric(
    p: &Pencil,
    t_grid: &[f64],
    x_start: &[f64],
    ball_radius: f64,
) -> Vec<TrackPoint> {
    let base = NumericBivector::new(p.base().bivector());
    let deformation = NumericBivector::new(p.deformation());
    let residual_fn = |x: &[f64], t: f64| -> Vec<f64> {
        base.values(x)
            .iter()
            .zip(deformation.values(x))
            .map(|(a, b)| a + t * b)
            .collect()
    };
    let mut warm = x_start.to_vec();
    let mut out = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let mut x = warm.clone();
        let mut f = residual_fn(&x, t);
        let mut r = norm(&f);
        for _ in 0..MAX_ITERATIONS {
            if r < RESIDUAL_TOL {
                break;
            }
            let mut jac = base.jacobian(&x);
            jac += deformation.jacobian(&x) * t;
            let rhs = -DVector::from_vec(f.clone());
            let Ok(step) = jac.svd(true, true).solve(&rhs, 1e-12) else {
                break;
            };
            let mut lambda = 1.0;
            let mut improved = false;
            for _ in 0..MAX_HALVINGS {
                let trial: Vec<f64> = x
                    .iter()
                    .zip(step.iter())
                    .map(|(a, s)| a + lambda * s)
                    .collect();
                let ft = residual_fn(&trial, t);
                let rt = norm(&ft);
                if rt < r {
                    x = trial;
                    f = ft;
                    r = rt;
                    improved = true;
                    break;
                }
                lambda *= 0.5;
            }
            if !improved {
                break;
            }
        }
        let dist = norm(
            &x.iter()
                .zip(x_start)
                .map(|(a, b)| a - b)
                .collect::<Vec<_>>(),
        );
        let found = r < RESIDUAL_TOL && dist < ball_radius;
        if found {
            warm = x.clone();
        }
        out.push(TrackPoint {
            t,
            zero: found.then_some(x),
            residual: r,
        });
    }
    out
}

/// Max-norm distance from `x` to the exact affine zero set, or `None` if it is empty.
pub fn distance_to_zero_set(zs: &ZeroSet, x: &[f64]) -> Option<f64> {
    let particular: Vec<f64> = zs
        .particular
        .as_ref()?
        .iter()
        .map(|v| v.to_f64().unwrap_or(f64::NAN))
        .collect();
    let offset = DVector::from_iterator(x.len(), x.iter().zip(&particular).map(|(a, b)| a - b));
    if zs.kernel_basis.is_empty() {
        return Some(offset.amax());
    }
    let k = DMatrix::from_fn(x.len(), zs.kernel_basis.len(), |i, j| {
        zs.kernel_basis[j][i].to_f64().unwrap_or(f64::NAN)
    });
    let coeffs = k.clone().svd(true, true).solve(&offset, 1e-14).ok()?;
    Some((offset - k * coeffs).amax())
}

/// `count + 1` evenly spaced values from 0 to `t_max`.
pub fn uniform_grid(t_max: f64, steps: usize) -> Vec<f64> {
    if steps == 0 {
        return vec![0.0];
    }
    (0..=steps)
        .map(|i| t_max * i as f64 / steps as f64)
        .collect()
}

/// Every index pair `(i, j)`, `i < j`, in the order of the zero-set rows.
pub fn component_pairs(n: usize) -> Vec<(usize, usize)> {
    subsets(n, 2).into_iter().map(|s| (s[0], s[1])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exterior::binomial;
    use crate::linalg::int;

    fn origin(n: usize) -> Vec<Rational> {
        vec![int(0); n]
    }

    fn abelian2_pencil() -> Pencil {
        let c = CeCochain::new(2, 2, [(vec![0, 1], int(1))]).unwrap();
        pencil_from_cocycle(&LieAlgebra::abelian(2), &c).unwrap()
    }

    fn so3_coboundary_pencil() -> (Pencil, CeCochain) {
        let g = corpus::so3();
        let xi = CeCochain::new(
            3,
            1,
            [(vec![0], int(1)), (vec![1], int(2)), (vec![2], int(-1))],
        )
        .unwrap();
        let c = g.differential(&xi).unwrap();
        (pencil_from_cocycle(&g, &c).unwrap(), c)
    }

    #[test]
    fn pencil_from_cocycle_examples() {
        let p = abelian2_pencil();
        assert!(p.base().bivector().is_zero());
        assert_eq!(p.deformation(), &PolyMultivector::basis(2, &[0, 1]));

        let (p, _) = so3_coboundary_pencil();
        assert!(p
            .base()
            .bivector()
            .schouten(p.deformation())
            .unwrap()
            .is_zero());

        let h3 = corpus::heisenberg3();
        for c in h3.ce_cohomology(2).unwrap().representatives {
            let p = pencil_from_cocycle(&h3, &c).unwrap();
            assert!(p
                .base()
                .bivector()
                .schouten(p.deformation())
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn non_cocycle_is_rejected() {
        // [e1,e2]=e2, [e1,e3]=e3: d(e2*^e3*) = -2 e1*^e2*^e3*
        let mut s = crate::liealg::Structure::new();
        s.insert((0, 1), [(1, int(1))].into_iter().collect());
        s.insert((0, 2), [(2, int(1))].into_iter().collect());
        let g = LieAlgebra::from_structure(3, s).unwrap();
        let c = CeCochain::new(3, 2, [(vec![1, 2], int(1))]).unwrap();
        assert!(matches!(
            pencil_from_cocycle(&g, &c),
            Err(StabilityError::NotACocycle(_))
        ));
        let pi0 = PoissonStructure::from_lie_algebra(&g);
        assert!(matches!(
            Pencil::new(pi0, constant_bivector(&c)),
            Err(StabilityError::Incompatible(_))
        ));
    }

    #[test]
    fn zero_set_examples() {
        let p = abelian2_pencil();
        let at0 = pencil_zero_set(&p, &int(0)).unwrap();
        assert_eq!(at0.particular, Some(origin(2)));
        assert!(pencil_zero_set(&p, &int(1)).unwrap().empty);
        assert!(zero_set_empty_for_all_nonzero_t(&p).unwrap());

        let (p, _) = so3_coboundary_pencil();
        for t in [int(1), ratio(-3, 2), int(5)] {
            let zs = pencil_zero_set(&p, &t).unwrap();
            let x = zs.particular.expect("coboundary pencils keep a zero");
            assert!(p.bivector_at(&t).evaluate(&x).unwrap().is_zero());
        }
        assert!(!zero_set_empty_for_all_nonzero_t(&p).unwrap());
    }

    #[test]
    fn zero_set_rejects_nonlinear_base() {
        let quad = PoissonStructure::certify(PolyMultivector::monomial_term(
            2,
            vec![2, 0],
            &[0, 1],
            int(1),
        ))
        .unwrap();
        let p = Pencil::new(quad, PolyMultivector::basis(2, &[0, 1])).unwrap();
        assert!(matches!(
            pencil_zero_set(&p, &int(1)),
            Err(StabilityError::NotLinear(2))
        ));
    }

    #[test]
    fn zero_of_pencil_is_a_scaled_coboundary_witness() {
        let (p, c) = so3_coboundary_pencil();
        let g = corpus::so3();
        let xi = g.coboundary_witness(&c.scale(&int(-1))).unwrap().unwrap();
        for t in [int(1), ratio(1, 3)] {
            let x: Vec<Rational> = xi.iter().map(|v| v * &t).collect();
            assert!(p.bivector_at(&t).evaluate(&x).unwrap().is_zero());
        }
    }

    #[test]
    fn classify_examples() {
        let so3 = PoissonStructure::from_lie_algebra(&corpus::so3());
        let v = classify_fixed_point(&so3, &origin(3)).unwrap();
        assert_eq!(v.tag, Verdict::Stable);
        assert_eq!(v.h2_dim, 0);
        assert!(v.semisimple);

        let ab = PoissonStructure::from_lie_algebra(&LieAlgebra::abelian(2));
        let v = classify_fixed_point(&ab, &origin(2)).unwrap();
        assert_eq!(v.tag, Verdict::UnstableWitness);
        assert_eq!(v.h2_dim, 1);
        let w = v.witness.unwrap();
        assert!(w.base().bivector().is_zero());
        assert_eq!(w.deformation(), &PolyMultivector::basis(2, &[0, 1]));
        assert!(v.empty_for_all_nonzero_t);

        let quad = PoissonStructure::certify(PolyMultivector::monomial_term(
            2,
            vec![1, 1],
            &[0, 1],
            int(1),
        ))
        .unwrap();
        let v = classify_fixed_point(&quad, &origin(2)).unwrap();
        assert_eq!(v.tag, Verdict::Inconclusive);
        assert!(v.witness.is_none());

        assert!(matches!(
            classify_fixed_point(&so3, &[int(1), int(0), int(0)]),
            Err(StabilityError::Poisson(PoissonError::NotAFixedPoint { .. }))
        ));
    }

    #[test]
    fn classify_translated_linear_structure() {
        // aff(1) moved to (1, 0): -(x2) d1^d2 has zeros on x2 = 0, h3-like shifts
        let pi = PoissonStructure::from_lie_algebra(&corpus::heisenberg3());
        let shifted = pi.bivector().translate(&[int(0), int(0), int(-2)]).unwrap();
        // shifted has zeros at x3 = 2
        let p = PoissonStructure::certify(shifted).unwrap();
        let v = classify_fixed_point(&p, &[int(5), int(1), int(2)]).unwrap();
        assert_eq!(v.tag, Verdict::UnstableWitness);
        assert_eq!(v.h2_dim, 2);
    }

    #[test]
    fn relative_cohomology_examples() {
        let so3 = PoissonStructure::from_lie_algebra(&corpus::so3());
        assert_eq!(
            relative_cohomology_at_point(&so3, &origin(3), 2).unwrap(),
            0
        );
        for n in 1..=4 {
            let ab = PoissonStructure::from_lie_algebra(&LieAlgebra::abelian(n));
            for k in 0..=n {
                assert_eq!(
                    relative_cohomology_at_point(&ab, &origin(n), k).unwrap(),
                    binomial(n, k)
                );
            }
        }
        let h3 = PoissonStructure::from_lie_algebra(&corpus::heisenberg3());
        assert_eq!(relative_cohomology_at_point(&h3, &origin(3), 2).unwrap(), 2);
    }

    #[test]
    fn tracking_examples() {
        let (p, _) = so3_coboundary_pencil();
        let grid = uniform_grid(1.0, 10);
        let track = track_zero_numeric(&p, &grid, &[0.0; 3], 10.0);
        for pt in &track {
            let zs = pencil_zero_set(&p, &Rational::from_float(pt.t).unwrap()).unwrap();
            let x = pt.zero.as_ref().expect("zero persists");
            assert!(distance_to_zero_set(&zs, x).unwrap() < 1e-8);
        }

        let p = abelian2_pencil();
        let track = track_zero_numeric(&p, &grid, &[0.0; 2], 10.0);
        assert!(track[0].zero.is_some());
        assert!(track[1..].iter().all(|pt| pt.zero.is_none()));

        let single = track_zero_numeric(&p, &[0.0], &[0.0; 2], 1.0);
        assert_eq!(single[0].zero, Some(vec![0.0, 0.0]));
        assert_eq!(single[0].residual, 0.0);
    }

    #[test]
    fn tracking_respects_ball() {
        let (p, _) = so3_coboundary_pencil();
        let track = track_zero_numeric(&p, &[0.0, 1.0], &[0.0; 3], 1e-6);
        assert!(track[0].zero.is_some());
        assert!(track[1].zero.is_none());
    }
}
