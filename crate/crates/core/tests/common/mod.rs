//! Random generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_traits::{One, Zero};
use poisson_core::exterior::{sort_with_sign, subsets};
use poisson_core::liealg::{LieAlgebra, Structure};
use poisson_core::linalg::{int, ratio, solve, to_sparse, Rational, SparseMatrix};
use poisson_core::multivec::{PolyForm, PolyMultivector};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    let num = rng.gen_range(-4i64..=4);
    let den = rng.gen_range(1i64..=3);
    ratio(num, den)
}

fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let r = small_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

fn structure_from(dim: usize, bracket: impl Fn(usize, usize) -> Vec<Rational>) -> Structure {
    let mut s = Structure::new();
    for a in 0..dim {
        for b in a + 1..dim {
            let v = to_sparse(&bracket(a, b));
            if !v.is_empty() {
                s.insert((a, b), v);
            }
        }
    }
    s
}

/// The same algebra in the basis given by the columns of a random
/// invertible integer matrix.
pub fn base_change(g: &LieAlgebra, rng: &mut impl Rng) -> LieAlgebra {
    let n = g.dim();
    let p = loop {
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = rng.gen_range(-2i64..=2);
                        if i == j && v == 0 {
                            v = 1;
                        }
                        int(v)
                    })
                    .collect()
            })
            .collect();
        let m = SparseMatrix::from_dense(&rows);
        if dense_rank(&rows) == n {
            break m;
        }
    };
    let col = |a: usize| -> Vec<Rational> { (0..n).map(|i| p.get(i, a)).collect() };
    let s = structure_from(n, |a, b| {
        let v = g.bracket(&col(a), &col(b)).unwrap();
        solve(&p, &v).expect("P is invertible")
    });
    LieAlgebra::from_structure(n, s).expect("a base change preserves Jacobi")
}

pub fn direct_sum(g: &LieAlgebra, h: &LieAlgebra) -> LieAlgebra {
    let (m, n) = (g.dim(), h.dim());
    let mut s = Structure::new();
    for (&(i, j), v) in g.structure() {
        s.insert((i, j), v.clone());
    }
    for (&(i, j), v) in h.structure() {
        s.insert(
            (i + m, j + m),
            v.iter().map(|(&k, c)| (k + m, c.clone())).collect(),
        );
    }
    LieAlgebra::from_structure(m + n, s).unwrap()
}

/// `R x_D R^m`: `[e0, e_i] = sum_j D_ji e_j`, all other brackets zero.
pub fn semidirect(d: &[Vec<Rational>]) -> LieAlgebra {
    let m = d.len();
    let s = structure_from(m + 1, |a, b| {
        let mut v = vec![int(0); m + 1];
        if a == 0 {
            for (j, row) in d.iter().enumerate() {
                v[j + 1] = row[b - 1].clone();
            }
        }
        v
    });
    LieAlgebra::from_structure(m + 1, s).unwrap()
}

pub fn small_corpus() -> Vec<LieAlgebra> {
    poisson_core::corpus::lie_algebras()
        .into_iter()
        .map(|(_, g)| g)
        .filter(|g| g.dim() <= 3)
        .collect()
}

/// A random Lie algebra of dimension between 1 and `max_dim`.
pub fn random_algebra(rng: &mut impl Rng, max_dim: usize) -> LieAlgebra {
    let small = small_corpus();
    let g = match rng.gen_range(0..3) {
        0 => small
            .iter()
            .filter(|g| g.dim() <= max_dim)
            .collect::<Vec<_>>()
            .choose(rng)
            .map(|g| (*g).clone())
            .unwrap(),
        1 if max_dim >= 2 => {
            let a = small
                .iter()
                .filter(|g| g.dim() < max_dim)
                .collect::<Vec<_>>();
            let a = (*a.choose(rng).unwrap()).clone();
            let rest: Vec<_> = small
                .iter()
                .filter(|h| h.dim() + a.dim() <= max_dim)
                .collect();
            match rest.choose(rng) {
                Some(b) => direct_sum(&a, b),
                None => a,
            }
        }
        _ => {
            let m = rng.gen_range(0..max_dim);
            let d: Vec<Vec<Rational>> = (0..m)
                .map(|_| (0..m).map(|_| small_rational(rng)).collect())
                .collect();
            semidirect(&d)
        }
    };
    base_change(&g, rng)
}

/// A random polynomial multivector with at most `max_terms` terms.
pub fn random_multivector(
    rng: &mut impl Rng,
    n: usize,
    degree: usize,
    max_poly: u32,
    max_terms: usize,
) -> PolyMultivector {
    let count = rng.gen_range(1..=max_terms);
    let subsets = subsets(n, degree);
    let terms: Vec<_> = (0..count)
        .filter_map(|_| {
            let idx = subsets.choose(rng)?.clone();
            let total = rng.gen_range(0..=max_poly);
            let mut m = vec![0u32; n];
            for _ in 0..total {
                m[rng.gen_range(0..n)] += 1;
            }
            Some((m, idx, nonzero_rational(rng)))
        })
        .collect();
    PolyMultivector::from_terms(n, degree, terms).unwrap()
}

pub fn random_form(
    rng: &mut impl Rng,
    n: usize,
    degree: usize,
    max_poly: u32,
    max_terms: usize,
) -> PolyForm {
    let v = random_multivector(rng, n, degree, max_poly, max_terms);
    PolyForm::from_terms(
        n,
        degree,
        v.terms()
            .iter()
            .map(|((m, i), c)| (m.clone(), i.clone(), c.clone())),
    )
    .unwrap()
}

/// Rank by plain dense Gaussian elimination over the rationals.
pub fn dense_rank(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &pivot;
                let pivot_row = a[rank].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// True when `A x = b` has a solution, by comparing dense ranks.
pub fn dense_consistent(a: &[Vec<Rational>], b: &[Rational]) -> bool {
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, x)| row.iter().cloned().chain([x.clone()]).collect())
        .collect();
    dense_rank(a) == dense_rank(&aug)
}

/// `(d c)(x_0..x_k) = sum_{p<q} (-1)^(p+q) c([x_p, x_q], x_0..^p..^q..x_k)`,
/// evaluated term by term on basis tuples, as a dense matrix.
pub fn dense_ce_differential(g: &LieAlgebra, k: usize) -> Vec<Vec<Rational>> {
    let n = g.dim();
    let src = subsets(n, k);
    let dst = subsets(n, k + 1);
    // value of the basis cochain e_S on an arbitrary tuple
    let eval = |s: &[usize], tuple: &[usize]| -> Rational {
        match sort_with_sign(tuple.to_vec()) {
            Some((sorted, sign)) if sorted == s => int(sign),
            _ => Rational::zero(),
        }
    };
    dst.iter()
        .map(|x| {
            src.iter()
                .map(|s| {
                    let mut total = Rational::zero();
                    for p in 0..x.len() {
                        for q in p + 1..x.len() {
                            let rest: Vec<usize> = x
                                .iter()
                                .enumerate()
                                .filter(|&(i, _)| i != p && i != q)
                                .map(|(_, &v)| v)
                                .collect();
                            let sign = if (p + q) % 2 == 0 {
                                Rational::one()
                            } else {
                                -Rational::one()
                            };
                            for l in 0..n {
                                let c = g.constant(x[p], x[q], l);
                                if c.is_zero() {
                                    continue;
                                }
                                let mut tuple = vec![l];
                                tuple.extend(&rest);
                                total += &sign * &c * eval(s, &tuple);
                            }
                        }
                    }
                    total
                })
                .collect()
        })
        .collect()
}

/// Betti numbers from dense ranks of the oracle differentials.
pub fn dense_ce_dims(g: &LieAlgebra) -> Vec<usize> {
    let n = g.dim();
    let ranks: Vec<usize> = (0..=n)
        .map(|k| {
            if k < n {
                dense_rank(&dense_ce_differential(g, k))
            } else {
                0
            }
        })
        .collect();
    (0..=n)
        .map(|k| {
            let cochains = subsets(n, k).len();
            let incoming = if k == 0 { 0 } else { ranks[k - 1] };
            cochains - ranks[k] - incoming
        })
        .collect()
}

/// Coefficient matrix and right-hand side of `pi(x) = 0` for a bivector
/// with affine coefficients, read off by evaluating at `0` and at `e_k`.
pub fn affine_zero_system(pi: &PolyMultivector) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let n = pi.ambient_dim();
    let pairs = subsets(n, 2);
    let value = |x: &[Rational], pair: &[usize]| -> Rational {
        pi.evaluate(x)
            .unwrap()
            .terms()
            .get(&(vec![0; n], pair.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    };
    let origin = vec![int(0); n];
    let b: Vec<Rational> = pairs.iter().map(|p| -value(&origin, p)).collect();
    let a: Vec<Vec<Rational>> = pairs
        .iter()
        .zip(&b)
        .map(|(p, bp)| {
            (0..n)
                .map(|k| {
                    let mut e = origin.clone();
                    e[k] = int(1);
                    value(&e, p) + bp
                })
                .collect()
        })
        .collect();
    (a, b)
}
