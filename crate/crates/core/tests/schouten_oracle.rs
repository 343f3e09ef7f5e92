//! Cross-checks the term-wise Schouten bracket against the formula for
//! wedges of vector fields,
//!
//! `[X1^..^Xp, Y1^..^Yq] = sum_{i,j} (-1)^(i+j) [Xi, Yj] ^ X1..^Xi..^Xp ^ Y1..^Yj..^Yq`,
//! with the Lie bracket of vector fields computed from partial derivatives.

mod common;

use poisson_core::linalg::int;
use poisson_core::multivec::PolyMultivector;
use proptest::prelude::*;
use rand::Rng;

/// `[X, Y]^k = X(Y^k) - Y(X^k)`.
fn lie_bracket(x: &PolyMultivector, y: &PolyMultivector) -> PolyMultivector {
    let n = x.ambient_dim();
    let apply = |v: &PolyMultivector, f: &PolyMultivector| {
        let mut out = PolyMultivector::zero(n, 0);
        for i in 0..n {
            let vi = v.component(&[i]);
            out = out.add(&vi.wedge(&f.partial(i)).unwrap()).unwrap();
        }
        out
    };
    let mut out = PolyMultivector::zero(n, 1);
    for k in 0..n {
        let coeff = apply(x, &y.component(&[k]))
            .sub(&apply(y, &x.component(&[k])))
            .unwrap();
        let dk = PolyMultivector::basis(n, &[k]);
        out = out.add(&coeff.wedge(&dk).unwrap()).unwrap();
    }
    out
}

fn wedge_all(n: usize, fields: &[PolyMultivector]) -> PolyMultivector {
    fields
        .iter()
        .fold(PolyMultivector::constant(n, int(1)), |acc, f| {
            acc.wedge(f).unwrap()
        })
}

fn decomposable_bracket(xs: &[PolyMultivector], ys: &[PolyMultivector]) -> PolyMultivector {
    let n = xs[0].ambient_dim();
    let mut out = PolyMultivector::zero(n, xs.len() + ys.len() - 1);
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            let rest_x: Vec<_> = xs
                .iter()
                .enumerate()
                .filter(|&(a, _)| a != i)
                .map(|(_, v)| v.clone())
                .collect();
            let rest_y: Vec<_> = ys
                .iter()
                .enumerate()
                .filter(|&(b, _)| b != j)
                .map(|(_, v)| v.clone())
                .collect();
            let term = lie_bracket(x, y)
                .wedge(&wedge_all(n, &rest_x))
                .unwrap()
                .wedge(&wedge_all(n, &rest_y))
                .unwrap();
            out = if (i + j) % 2 == 0 {
                out.add(&term)
            } else {
                out.sub(&term)
            }
            .unwrap();
        }
    }
    out
}

fn random_fields(r: &mut impl Rng, n: usize, count: usize) -> Vec<PolyMultivector> {
    (0..count)
        .map(|_| common::random_multivector(r, n, 1, 2, 2))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn agrees_with_wedge_of_vector_fields(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let n = r.gen_range(1..=4);
        let p = r.gen_range(1..=n.min(3));
        let q = r.gen_range(1..=n.min(3));
        let xs = random_fields(&mut r, n, p);
        let ys = random_fields(&mut r, n, q);
        let a = wedge_all(n, &xs);
        let b = wedge_all(n, &ys);
        prop_assert_eq!(a.schouten(&b).unwrap(), decomposable_bracket(&xs, &ys));
    }

    #[test]
    fn vector_field_on_function_is_derivative(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let n = r.gen_range(1..=4);
        let x = common::random_multivector(&mut r, n, 1, 3, 5);
        let f = common::random_multivector(&mut r, n, 0, 3, 5);
        let mut expected = PolyMultivector::zero(n, 0);
        for i in 0..n {
            expected = expected.add(&x.component(&[i]).wedge(&f.partial(i)).unwrap()).unwrap();
        }
        prop_assert_eq!(x.schouten(&f).unwrap(), expected.clone());
        prop_assert_eq!(x.apply_to(&f).unwrap(), expected);
    }

    #[test]
    fn euler_field_scales_homogeneous_bivectors(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let n = r.gen_range(2..=4);
        let d = r.gen_range(0..=3u32);
        let mut pi = PolyMultivector::zero(n, 2);
        for _ in 0..3 {
            let mut m = vec![0u32; n];
            for _ in 0..d {
                m[r.gen_range(0..n)] += 1;
            }
            let i = r.gen_range(0..n - 1);
            let j = r.gen_range(i + 1..n);
            pi = pi.add(&PolyMultivector::monomial_term(n, m, &[i, j], common::small_rational(&mut r))).unwrap();
        }
        // L_E of a bivector with degree-d coefficients scales it by d - 2
        let le = PolyMultivector::euler(n).lie_derivative(&pi).unwrap();
        prop_assert_eq!(le, pi.scale(&int(d as i64 - 2)));
    }
}
