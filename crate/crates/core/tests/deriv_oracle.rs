use num_complex::Complex64;
use proptest::prelude::*;
use qid_core::deriv::{
    deriv_term, eval_term, parse_term, BoundPoch, Factor, Index, PochFactor, PochLen, Term, TermExpr,
};
use qid_core::qcore::{poch_finite, ComplexHP, NumericContext, PochIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn polar(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Complex64 {
    Complex64::from_polar(rng.gen_range(lo..hi), rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Smallest `|1 - alpha x q^k|` over the factors of `(alpha x; q)_n`, with
/// the tail of an infinite product cut where it no longer matters.
fn nearest_zero(alpha: Complex64, n: PochIndex, x: Complex64, q: Complex64) -> f64 {
    let ks: Vec<i32> = match n {
        PochIndex::Finite(n) if n >= 0 => (0..n as i32).collect(),
        PochIndex::Finite(n) => (n as i32..0).collect(),
        PochIndex::Infinite => (0..60).collect(),
    };
    ks.into_iter()
        .map(|k| (1.0 - alpha * x * q.powi(k)).norm())
        .fold(f64::INFINITY, f64::min)
}

/// A random term `c x^p prod (alpha_i x; q)_{n_i}^{eps_i}` at a point where
/// every factor stays well away from zero.
fn regular_point(rng: &mut ChaCha8Rng, bits: usize) -> (Term, ComplexHP, ComplexHP) {
    loop {
        let q = polar(rng, 0.1, 0.7);
        let x = polar(rng, 0.3, 0.9);
        let raw: Vec<(Complex64, PochIndex, i32)> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let n = match rng.gen_range(0..4) {
                    0 => PochIndex::Infinite,
                    1 => PochIndex::Finite(-rng.gen_range(1..=3)),
                    _ => PochIndex::Finite(rng.gen_range(1..=6)),
                };
                (polar(rng, 0.2, 1.5), n, if rng.gen_bool(0.5) { 1 } else { -1 })
            })
            .collect();
        if raw.iter().any(|&(a, n, _)| nearest_zero(a, n, x, q) < 0.1) {
            continue;
        }
        let term = Term {
            coeff: ComplexHP::from_c64(polar(rng, 0.5, 2.0), bits),
            power: rng.gen_range(0..=3),
            factors: raw
                .into_iter()
                .map(|(a, n, eps)| BoundPoch {
                    alpha: ComplexHP::from_c64(a, bits),
                    n,
                    eps,
                })
                .collect(),
        };
        return (term, ComplexHP::from_c64(x, bits), ComplexHP::from_c64(q, bits));
    }
}

fn relative_error(got: &ComplexHP, want: &ComplexHP) -> f64 {
    (got - want).log10_abs() - want.log10_abs()
}

/// Error relative to the derivative, or to the term itself where the
/// derivative vanishes (a term linear in `x` has no second derivative).
fn scaled_error(got: &ComplexHP, want: &ComplexHP, value: &ComplexHP) -> f64 {
    (got - want).log10_abs() - want.log10_abs().max(value.log10_abs())
}

#[test]
fn derivatives_match_central_differences() {
    let ctx = NumericContext::default();
    let bits = ctx.bits();
    let digits = ctx.digits as f64;
    let h_log10 = -(digits / 3.0).floor();
    let h = ComplexHP::parse(&format!("1e{h_log10}"), bits).unwrap();
    let bound = 3.0 + 2.0 * h_log10;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..100 {
        let (t, x, q) = regular_point(&mut rng, bits);
        let f = |z: &ComplexHP| eval_term(&t, z, &q, &ctx).unwrap();
        let (fp, f0, fm) = (f(&(&x + &h)), f(&x), f(&(&x - &h)));
        let two_h = h.scale_i64(2);
        let d1 = (&fp - &fm).checked_div(&two_h).unwrap();
        let d2 = (&(&fp - &f0.scale_i64(2)) + &fm).checked_div(&(&h * &h)).unwrap();
        let e1 = scaled_error(&deriv_term(&t, &x, &q, &ctx, 1).unwrap(), &d1, &f0);
        let e2 = scaled_error(&deriv_term(&t, &x, &q, &ctx, 2).unwrap(), &d2, &f0);
        assert!(e1 < bound, "point {i}: first derivative off by 10^{e1:.1}");
        assert!(e2 < bound, "point {i}: second derivative off by 10^{e2:.1}");
    }
}

#[test]
fn derivative_of_finite_product_at_its_zero() {
    // d/dx (x; q)_n at x = 1 is -(q; q)_{n-1}
    let ctx = NumericContext::default();
    let bits = ctx.bits();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let one = ComplexHP::one(bits);
    for _ in 0..5 {
        let q = ComplexHP::from_c64(polar(&mut rng, 0.1, 0.9), bits);
        for n in 1..=10 {
            let t = parse_term(&format!("poch(x)_{n}"))
                .unwrap()
                .bind(0, &one, &q, &ctx)
                .unwrap();
            let d = deriv_term(&t, &one, &q, &ctx, 1).unwrap();
            let want = -poch_finite(&q, &q, n - 1, &ctx).unwrap();
            assert!(relative_error(&d, &want) < -(ctx.digits as f64), "n = {n}");
        }
    }
}

fn index() -> impl Strategy<Value = Index> {
    prop_oneof![
        (-5i64..=5).prop_map(Index::Fixed),
        (-5i64..=5).prop_map(Index::Shifted)
    ]
}

fn constant() -> impl Strategy<Value = Factor> {
    prop_oneof![
        (-20i64..=20, 1i64..=9)
            .prop_map(|(p, d)| Factor::Num(num_rational::BigRational::new(p.into(), d.into()))),
        index().prop_map(Factor::Sign),
        index().prop_map(Factor::A),
        index().prop_map(Factor::Q),
    ]
}

fn factor() -> impl Strategy<Value = Factor> {
    let len = prop_oneof![Just(PochLen::Infinite), index().prop_map(PochLen::Index)];
    let poch = (
        prop::collection::vec(constant(), 0..3),
        any::<bool>(),
        len,
        prop_oneof![-3i64..=-1, 1i64..=3],
    )
        .prop_filter("poch() needs an argument", |(alpha, with_x, _, _)| {
            *with_x || !alpha.is_empty()
        })
        .prop_map(|(alpha, with_x, len, exp)| {
            Factor::Poch(PochFactor {
                alpha,
                with_x,
                len,
                exp,
            })
        });
    prop_oneof![constant(), index().prop_map(Factor::X), poch]
}

proptest! {
    #[test]
    fn term_templates_print_and_parse_back(factors in prop::collection::vec(factor(), 1..6)) {
        let t = TermExpr { factors };
        let text = t.to_string();
        let back = parse_term(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(back, t);
    }
}
