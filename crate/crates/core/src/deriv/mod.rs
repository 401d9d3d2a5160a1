//! Derivatives of terms of the form `c x^p prod (alpha x; q)_n^eps`,
//! including at points where some factors vanish, and the
//! differentiate-and-specialize check built on them.

mod parse;
mod term;

pub use parse::{parse_dcheck_spec, parse_term, DcheckSpec};
pub use term::{BoundPoch, Factor, Index, PochFactor, PochLen, Term, TermExpr};

use crate::error::{QError, Result};
use crate::qcore::{
    infinite_product_len, log10_one_plus_pow, poch_finite, poch_inf, ComplexHP, NumericContext, PochIndex,
};
use crate::series::{sum_terms, Support};

/// Linear factors `(1 - c x)^e` making up `(alpha x; q)_n^eps`; infinite
/// products are truncated where the tail no longer matters.
fn linear_factors(
    alpha: &ComplexHP,
    n: PochIndex,
    eps: i32,
    x: &ComplexHP,
    q: &ComplexHP,
    ctx: &NumericContext,
) -> Result<Vec<(ComplexHP, i32)>> {
    let bits = ctx.bits();
    let alpha = alpha.lift(bits);
    let q = q.lift(bits);
    let (start, count, step, e) = match n {
        PochIndex::Finite(k) if k >= 0 => (alpha.clone(), k as usize, q.clone(), eps),
        PochIndex::Finite(k) => {
            let qi = q.inv()?;
            (&alpha * &qi, k.unsigned_abs() as usize, qi, -eps)
        }
        PochIndex::Infinite => {
            crate::qcore::require_inside_unit_disk(&q, "infinite product")?;
            // the log-derivative tail is bounded by |alpha| |q|^M / (1 - |q|)
            let size = alpha.log10_abs().max((&alpha * x).log10_abs());
            let m = infinite_product_len(size, q.abs_f64(), ctx)?;
            (alpha.clone(), m, q.clone(), eps)
        }
    };
    if count > ctx.max_terms {
        return Err(QError::Truncation(format!(
            "product of {count} factors exceeds max_terms"
        )));
    }
    let mut out = Vec::with_capacity(count);
    let mut c = start;
    for _ in 0..count {
        out.push((c.clone(), e));
        c = &c * &step;
    }
    Ok(out)
}

fn is_vanishing(f: &ComplexHP, scale_log10: f64, ctx: &NumericContext) -> bool {
    f.is_zero() || f.log10_abs() < ctx.pole_log10() + log10_one_plus_pow(scale_log10)
}

/// `d/dx log (alpha x; q)_n`. Fails with a pole error where a factor
/// vanishes.
pub fn log_deriv_poch(
    alpha: &ComplexHP,
    n: PochIndex,
    x: &ComplexHP,
    q: &ComplexHP,
    ctx: &NumericContext,
) -> Result<ComplexHP> {
    let bits = ctx.bits();
    let x = x.lift(bits);
    let one = ComplexHP::one(bits);
    let mut acc = ComplexHP::zero(bits);
    for (c, e) in linear_factors(alpha, n, 1, &x, q, ctx)? {
        let cx = &c * &x;
        let f = &one - &cx;
        if is_vanishing(&f, cx.log10_abs(), ctx) {
            return Err(QError::Pole("a factor of the product vanishes at x".into()));
        }
        acc = &acc + &(-c).checked_div(&f)?.scale_i64(e as i64);
    }
    Ok(acc)
}

/// Value and first two derivatives in `x` of a bound term, handling
/// factors that vanish at `x` exactly.
fn jet(t: &Term, x: &ComplexHP, q: &ComplexHP, ctx: &NumericContext) -> Result<[ComplexHP; 3]> {
    let bits = ctx.bits();
    let x = x.lift(bits);
    let one = ComplexHP::one(bits);
    let zero = ComplexHP::zero(bits);
    let mut r = t.coeff.lift(bits);
    let mut l = zero.clone();
    let mut dl = zero.clone();
    // derivative constants of the vanishing linear factors
    let mut vanishing: Vec<ComplexHP> = Vec::new();

    if x.is_zero() {
        if t.power < 0 {
            return Err(QError::Pole("negative power of x at x = 0".into()));
        }
        vanishing.extend(std::iter::repeat(one.clone()).take(t.power as usize));
    } else if t.power != 0 {
        let xi = x.inv()?;
        r = &r * &x.powi(t.power)?;
        l = &l + &xi.scale_i64(t.power);
        dl = &dl - &(&xi * &xi).scale_i64(t.power);
    }
    for f in &t.factors {
        for (c, e) in linear_factors(&f.alpha, f.n, f.eps, &x, q, ctx)? {
            let cx = &c * &x;
            let lin = &one - &cx;
            if is_vanishing(&lin, cx.log10_abs(), ctx) {
                if e < 0 {
                    return Err(QError::Pole("a denominator factor vanishes at x".into()));
                }
                vanishing.extend(std::iter::repeat(-c.clone()).take(e as usize));
                continue;
            }
            r = &r * &lin.powi(e as i64)?;
            let g = (-c).checked_div(&lin)?;
            l = &l + &g.scale_i64(e as i64);
            dl = &dl - &(&g * &g).scale_i64(e as i64);
        }
    }
    Ok(match vanishing.as_slice() {
        [] => {
            let d1 = &r * &l;
            let d2 = &r * &(&(&l * &l) + &dl);
            [r, d1, d2]
        }
        [d] => {
            let d1 = d * &r;
            let d2 = (&(d * &r) * &l).scale_i64(2);
            [zero, d1, d2]
        }
        [d1, d2] => [zero.clone(), zero, (&(d1 * d2) * &r).scale_i64(2)],
        _ => [zero.clone(), zero.clone(), zero],
    })
}

/// Value of a bound term at `x`.
pub fn eval_term(t: &Term, x: &ComplexHP, q: &ComplexHP, ctx: &NumericContext) -> Result<ComplexHP> {
    let [v, _, _] = jet(t, x, q, ctx)?;
    Ok(v)
}

/// `d^k/dx^k` of a bound term at `x` for `k` in `{1, 2}`.
pub fn deriv_term(
    t: &Term,
    x: &ComplexHP,
    q: &ComplexHP,
    ctx: &NumericContext,
    order: u8,
) -> Result<ComplexHP> {
    let [_, d1, d2] = jet(t, x, q, ctx)?;
    match order {
        1 => Ok(d1),
        2 => Ok(d2),
        _ => Err(QError::Domain(format!(
            "derivative order must be 1 or 2, got {order}"
        ))),
    }
}

/// Jackson q-derivative `(f(x) - f(q x)) / ((1 - q) x)`.
pub fn q_deriv<F>(f: F, x: &ComplexHP, q: &ComplexHP, ctx: &NumericContext) -> Result<ComplexHP>
where
    F: Fn(&ComplexHP) -> Result<ComplexHP>,
{
    let bits = ctx.bits();
    let x = x.lift(bits);
    let q = q.lift(bits);
    let den = &(&ComplexHP::one(bits) - &q) * &x;
    if den.is_zero() {
        return Err(QError::Domain("q-derivative needs x != 0 and q != 1".into()));
    }
    (&f(&x)? - &f(&(&q * &x))?).checked_div(&den)
}

/// A series `sum_n T(n)(x)` given by a term template.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesFamily {
    pub term: TermExpr,
    pub support: Support,
}

/// Both sides of the differentiate-and-specialize check at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivCheck {
    pub x0: ComplexHP,
    pub lhs: ComplexHP,
    pub rhs: ComplexHP,
}

/// For `sum_n T_n(x) = (a x; q)_inf S(x)`, differentiate both sides in `x`
/// and specialize to `x0 = q^-m / a`, where `(a x; q)_inf` has a simple
/// zero. The left side is the termwise derivative; the right side is
/// `a (-1)^(m-1) q^(-m(m-1)/2) (q; q)_m (q; q)_inf S(x0)`.
pub fn differentiate_and_specialize(
    family: &SeriesFamily,
    cofactor: &TermExpr,
    a: &ComplexHP,
    q: &ComplexHP,
    m: i64,
    ctx: &NumericContext,
) -> Result<DerivCheck> {
    if m < 0 {
        return Err(QError::Precond(format!("m must be >= 0, got {m}")));
    }
    if a.is_zero() {
        return Err(QError::Precond("a must be nonzero".into()));
    }
    let bits = ctx.bits();
    let a = a.lift(bits);
    let q = q.lift(bits);
    let x0 = q.powi(-m)?.checked_div(&a)?;
    let s0 = eval_term(&cofactor.bind(0, &a, &q, ctx)?, &x0, &q, ctx)?;
    if is_vanishing(&s0, f64::NEG_INFINITY, ctx) {
        return Err(QError::Precond(
            "S(x0) vanishes, so the derivative carries no information".into(),
        ));
    }
    let d = |n: i64| -> Result<ComplexHP> {
        let t = family.term.bind(n, &a, &q, ctx)?;
        deriv_term(&t, &x0, &q, ctx, 1)
    };
    let mut lhs = sum_terms((0..).map(d), ctx)?;
    if family.support == Support::Bilateral {
        lhs = &lhs + &sum_terms((1..).map(|k| d(-k)), ctx)?;
    }
    let sign = if (m - 1).rem_euclid(2) == 0 { 1 } else { -1 };
    let qpow = q.powi(-(m * (m - 1) / 2))?;
    let rhs =
        &(&(&a.scale_i64(sign) * &qpow) * &poch_finite(&q, &q, m, ctx)?) * &(&poch_inf(&q, &q, ctx)? * &s0);
    Ok(DerivCheck { x0, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> NumericContext {
        NumericContext::default()
    }

    fn c(re: f64, im: f64) -> ComplexHP {
        ComplexHP::from_f64(re, im, ctx().bits())
    }

    fn rel(a: &ComplexHP, b: &ComplexHP) -> f64 {
        (a - b).log10_abs() - a.log10_abs().max(b.log10_abs()).max(0.0)
    }

    #[test]
    fn binds_sample_term() {
        let t = parse_term("poch(x)_3")
            .unwrap()
            .bind(0, &c(1.0, 0.0), &c(0.5, 0.0), &ctx())
            .unwrap();
        assert_eq!(t.power, 0);
        assert_eq!(t.coeff.to_c64().re, 1.0);
        assert_eq!(t.factors.len(), 1);
        assert_eq!(t.factors[0].n, PochIndex::Finite(3));
        assert_eq!(t.factors[0].eps, 1);
        assert_eq!(t.factors[0].alpha.to_c64().re, 1.0);
    }

    #[test]
    fn derivative_of_vanishing_product_at_one() {
        // d/dx (x; q)_n at x = 1 equals -(q; q)_{n-1}
        let q = c(0.3, 0.2);
        for n in 1..=10 {
            let t = parse_term(&format!("poch(x)_{n}"))
                .unwrap()
                .bind(0, &q, &q, &ctx())
                .unwrap();
            let d = deriv_term(&t, &c(1.0, 0.0), &q, &ctx(), 1).unwrap();
            let expect = -poch_finite(&q, &q, n - 1, &ctx()).unwrap();
            assert!(rel(&d, &expect) < -70.0, "n = {n}");
        }
    }

    #[test]
    fn poles_and_double_zeros() {
        let q = c(0.5, 0.0);
        let t = parse_term("poch(x)_3^-1")
            .unwrap()
            .bind(0, &q, &q, &ctx())
            .unwrap();
        assert!(matches!(
            deriv_term(&t, &c(1.0, 0.0), &q, &ctx(), 1),
            Err(QError::Pole(_))
        ));
        // (1 - x)^2 has vanishing first and derivative 2 for the second
        let t = parse_term("poch(x)_1^2")
            .unwrap()
            .bind(0, &q, &q, &ctx())
            .unwrap();
        let one = c(1.0, 0.0);
        assert!(deriv_term(&t, &one, &q, &ctx(), 1).unwrap().is_zero());
        assert_eq!(deriv_term(&t, &one, &q, &ctx(), 2).unwrap().to_c64().re, 2.0);
        let t = parse_term("x^3").unwrap().bind(0, &q, &q, &ctx()).unwrap();
        assert!(deriv_term(&t, &c(0.0, 0.0), &q, &ctx(), 2).unwrap().is_zero());
        assert!(log_deriv_poch(&one, PochIndex::Finite(2), &one, &q, &ctx()).is_err());
    }

    #[test]
    fn log_derivative_negative_index() {
        // (alpha x; q)_{-n} = 1 / (alpha x q^-n; q)_n
        let (alpha, x, q) = (c(0.7, 0.1), c(0.4, -0.3), c(0.35, 0.2));
        let lhs = log_deriv_poch(&alpha, PochIndex::Finite(-3), &x, &q, &ctx()).unwrap();
        let shifted = &alpha * &q.powi(-3).unwrap();
        let rhs = -log_deriv_poch(&shifted, PochIndex::Finite(3), &x, &q, &ctx()).unwrap();
        assert!(rel(&lhs, &rhs) < -70.0);
    }

    #[test]
    fn q_derivative_of_monomial() {
        // D_q x^3 = [3]_q x^2
        let (x, q) = (c(0.8, 0.3), c(0.4, 0.1));
        let d = q_deriv(|z| z.powi(3), &x, &q, &ctx()).unwrap();
        let q3 = &(&c(1.0, 0.0) + &q) + &(&q * &q);
        assert!(rel(&d, &(&q3 * &(&x * &x))) < -70.0);
        assert!(q_deriv(|z| Ok(z.clone()), &c(0.0, 0.0), &q, &ctx()).is_err());
    }

    #[test]
    fn q_binomial_specialization() {
        // sum (a;q)_n/(q;q)_n x^n = (ax; q)_inf / (x; q)_inf
        let family = SeriesFamily {
            term: parse_term("poch(a)_n * poch(q)_n^-1 * x^n").unwrap(),
            support: Support::Unilateral,
        };
        let s = parse_term("poch(x)_inf^-1").unwrap();
        let q = c(0.5, 0.0);
        for m in 0..4 {
            let r =
                differentiate_and_specialize(&family, &s, &c(5.0, 0.0).powi(m + 1).unwrap(), &q, m, &ctx())
                    .unwrap();
            assert!(rel(&r.lhs, &r.rhs) < -60.0, "m = {m}");
        }
        let zero_s = parse_term("poch(q*a*x)_1").unwrap();
        assert!(matches!(
            differentiate_and_specialize(&family, &zero_s, &c(5.0, 0.0), &q, 1, &ctx()),
            Err(QError::Precond(_))
        ));
    }
}
