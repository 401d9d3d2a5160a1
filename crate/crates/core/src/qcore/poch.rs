use std::fmt;

use crate::error::{QError, Result};

use super::complex::ComplexHP;
use super::context::NumericContext;

/// Length of a q-Pochhammer product: a (possibly negative) integer or
/// infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PochIndex {
    Finite(i64),
    Infinite,
}

impl fmt::Display for PochIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PochIndex::Finite(n) => write!(f, "{n}"),
            PochIndex::Infinite => f.write_str("inf"),
        }
    }
}

/// `(a; q)_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PochSpec {
    pub a: ComplexHP,
    pub q: ComplexHP,
    pub n: PochIndex,
}

impl PochSpec {
    pub fn eval(&self, ctx: &NumericContext) -> Result<ComplexHP> {
        poch(&self.a, &self.q, self.n, ctx)
    }
}

/// Fail with a pole error when `f` is indistinguishable from zero at the
/// working precision. `scale` is the size of the terms that produced `f`.
/// `log10(1 + 10^s)` without overflowing for large `s`.
pub(crate) fn log10_one_plus_pow(s: f64) -> f64 {
    if s > 0.0 {
        s + 10f64.powf(-s).ln_1p() / std::f64::consts::LN_10
    } else {
        10f64.powf(s).ln_1p() / std::f64::consts::LN_10
    }
}

/// Pole test for a factor `f = 1 - t` where `|t| = 10^scale_log10`: the
/// threshold is relative to the size of the terms that cancelled.
pub(crate) fn ensure_nonzero(
    f: &ComplexHP,
    scale_log10: f64,
    ctx: &NumericContext,
    what: &str,
) -> Result<()> {
    if f.is_zero() || f.log10_abs() < ctx.pole_log10() + log10_one_plus_pow(scale_log10) {
        return Err(QError::Pole(format!("{what} vanishes")));
    }
    Ok(())
}

pub(crate) fn require_inside_unit_disk(q: &ComplexHP, what: &str) -> Result<()> {
    let r = q.abs_f64();
    if !(r < 1.0) {
        return Err(QError::Domain(format!("{what} requires |q| < 1, got |q| = {r}")));
    }
    Ok(())
}

fn check_length(n: u64, ctx: &NumericContext) -> Result<()> {
    if n > ctx.max_terms as u64 {
        return Err(QError::Truncation(format!(
            "product of {n} factors exceeds max_terms = {}",
            ctx.max_terms
        )));
    }
    Ok(())
}

/// `(a; q)_n` for any integer `n`, with `(a; q)_{-n} = 1 / prod_{k=1..n} (1 - a q^-k)`.
pub fn poch_finite(a: &ComplexHP, q: &ComplexHP, n: i64, ctx: &NumericContext) -> Result<ComplexHP> {
    let bits = ctx.bits();
    let a = a.lift(bits);
    let q = q.lift(bits);
    let one = ComplexHP::one(bits);
    check_length(n.unsigned_abs(), ctx)?;
    let mut acc = one.clone();
    if n >= 0 {
        let mut t = a;
        for _ in 0..n {
            acc = &acc * &(&one - &t);
            t = &t * &q;
        }
        return Ok(acc);
    }
    if q.is_zero() {
        return Err(QError::Domain("negative-index product needs q != 0".into()));
    }
    let qi = q.inv()?;
    let mut t = &a * &qi;
    for k in 1..=n.unsigned_abs() {
        let f = &one - &t;
        ensure_nonzero(&f, t.log10_abs(), ctx, &format!("factor 1 - a q^-{k}"))?;
        acc = &acc * &f;
        t = &t * &qi;
    }
    acc.inv()
}

/// Number of factors of `(a; q)_inf` needed so that the neglected tail is
/// below the working epsilon, plus a few guard factors.
pub(crate) fn infinite_product_len(a_log10: f64, q_abs: f64, ctx: &NumericContext) -> Result<usize> {
    if a_log10 == f64::NEG_INFINITY || q_abs == 0.0 {
        return Ok(1);
    }
    let target = ctx.eps_log10() - 4f64.log10() + (1.0 - q_abs).log10() - a_log10;
    let m = (target / q_abs.log10()).ceil().max(0.0) + 8.0;
    if m > ctx.max_terms as f64 {
        return Err(QError::Truncation(format!(
            "infinite product needs {m} factors, max_terms = {}",
            ctx.max_terms
        )));
    }
    Ok(m as usize)
}

/// `(a; q)_inf = prod_{k>=0} (1 - a q^k)` for `|q| < 1`.
pub fn poch_inf(a: &ComplexHP, q: &ComplexHP, ctx: &NumericContext) -> Result<ComplexHP> {
    require_inside_unit_disk(q, "(a; q)_inf")?;
    let m = infinite_product_len(a.log10_abs(), q.abs_f64(), ctx)?;
    poch_finite(a, q, m as i64, ctx)
}

pub fn poch(a: &ComplexHP, q: &ComplexHP, n: PochIndex, ctx: &NumericContext) -> Result<ComplexHP> {
    match n {
        PochIndex::Finite(n) => poch_finite(a, q, n, ctx),
        PochIndex::Infinite => poch_inf(a, q, ctx),
    }
}

/// `(a_1, ..., a_r; q)_n`.
pub fn poch_multi(
    args: &[ComplexHP],
    q: &ComplexHP,
    n: PochIndex,
    ctx: &NumericContext,
) -> Result<ComplexHP> {
    let mut acc = ComplexHP::one(ctx.bits());
    for a in args {
        acc = &acc * &poch(a, q, n, ctx)?;
    }
    Ok(acc)
}

/// Gaussian binomial `[n, k]_q`, zero outside `0 <= k <= n`.
pub fn qbinom_num(n: i64, k: i64, q: &ComplexHP, ctx: &NumericContext) -> Result<ComplexHP> {
    require_inside_unit_disk(q, "[n, k]_q")?;
    if n < 0 {
        return Err(QError::Domain(format!("[n, k]_q needs n >= 0, got n = {n}")));
    }
    let bits = ctx.bits();
    if k < 0 || k > n {
        return Ok(ComplexHP::zero(bits));
    }
    let k = k.min(n - k);
    check_length(k as u64, ctx)?;
    let q = q.lift(bits);
    let one = ComplexHP::one(bits);
    let mut num = one.clone();
    let mut den = one.clone();
    for i in 1..=k {
        num = &num * &(&one - &q.powi(n - k + i)?);
        den = &den * &(&one - &q.powi(i)?);
    }
    num.checked_div(&den)
}

/// Number of positive divisors of `n`.
pub fn divisor_count(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(QError::Domain("divisor count of 0".into()));
    }
    let mut count = 0;
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            count += if d * d == n { 1 } else { 2 };
        }
        d += 1;
    }
    Ok(count)
}

/// `sum_{k>=1} q^k / (1 - q^k) = sum_{n>=1} d(n) q^n`.
pub fn lambert_sum(q: &ComplexHP, ctx: &NumericContext) -> Result<ComplexHP> {
    require_inside_unit_disk(q, "Lambert series")?;
    let bits = ctx.bits();
    if q.is_zero() {
        return Ok(ComplexHP::zero(bits));
    }
    let r = q.abs_f64();
    // tail after K terms is at most r^(K+1) / (1-r)^2; keep it below eps * r / 4
    let target = ctx.eps_log10() - 4f64.log10() + 2.0 * (1.0 - r).log10();
    let k_max = (target / r.log10()).ceil().max(1.0) + 4.0;
    if k_max > ctx.max_terms as f64 {
        return Err(QError::Truncation(format!("Lambert series needs {k_max} terms")));
    }
    let q = q.lift(bits);
    let one = ComplexHP::one(bits);
    let mut acc = ComplexHP::zero(bits);
    let mut qk = q.clone();
    for _ in 0..k_max as usize {
        acc = &acc + &qk.checked_div(&(&one - &qk))?;
        qk = &qk * &q;
    }
    Ok(acc)
}

/// Jacobi triple product `(x, q/x, q; q)_inf`.
pub fn triple_product(x: &ComplexHP, q: &ComplexHP, ctx: &NumericContext) -> Result<ComplexHP> {
    if x.is_zero() {
        return Err(QError::Domain("triple product needs x != 0".into()));
    }
    let bits = ctx.bits();
    let x = x.lift(bits);
    let q = q.lift(bits);
    let qx = q.checked_div(&x)?;
    poch_multi(&[x, qx, q.clone()], &q, PochIndex::Infinite, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

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
    fn small_products() {
        let q = c(0.5, 0.0);
        assert_eq!(
            poch_finite(&c(2.0, 0.0), &q, 0, &ctx()).unwrap().to_c64(),
            Complex64::new(1.0, 0.0)
        );
        // (2; 1/2)_3 = (1-2)(1-1)(1-1/2) = 0
        assert!(poch_finite(&c(2.0, 0.0), &q, 3, &ctx()).unwrap().is_zero());
        // (q; q)_3 at q = 1/2 = (1/2)(3/4)(7/8)
        let v = poch_finite(&q, &q, 3, &ctx()).unwrap();
        assert_eq!(v.to_c64(), Complex64::new(21.0 / 64.0, 0.0));
    }

    #[test]
    fn negative_index_and_poles() {
        let q = c(0.3, 0.2);
        let a = c(1.7, -0.4);
        for n in 0..6 {
            // (a; q)_{-n} = 1 / (a q^-n; q)_n
            let lhs = poch_finite(&a, &q, -n, &ctx()).unwrap();
            let aq = &a * &q.powi(-n).unwrap();
            let rhs = poch_finite(&aq, &q, n, &ctx()).unwrap().inv().unwrap();
            assert!(rel(&lhs, &rhs) < -70.0);
        }
        // (q^2; q)_{-2} has the factor 1 - q^2 q^-2 = 0
        let q2 = &q * &q;
        assert!(matches!(poch_finite(&q2, &q, -2, &ctx()), Err(QError::Pole(_))));
    }

    #[test]
    fn infinite_products() {
        let q = c(0.1, 0.0);
        // (q; q)_inf at q = 0.1, computed with mpmath
        let v = poch_inf(&q, &q, &ctx()).unwrap();
        assert!((v.to_c64().re - 0.8900100999989990000001).abs() < 1e-15);
        assert!(matches!(
            poch_inf(&q, &c(1.0, 0.0), &ctx()),
            Err(QError::Domain(_))
        ));
        // Euler: (x;q)_inf = (x;q)_n (x q^n; q)_inf
        let q = c(0.5, 0.3);
        let x = c(0.7, -1.1);
        let n = 7;
        let lhs = poch_inf(&x, &q, &ctx()).unwrap();
        let xqn = &x * &q.powi(n).unwrap();
        let rhs = &poch_finite(&x, &q, n, &ctx()).unwrap() * &poch_inf(&xqn, &q, &ctx()).unwrap();
        assert!(rel(&lhs, &rhs) < -70.0);
    }

    #[test]
    fn truncation_cap_is_reported() {
        let tight = NumericContext {
            max_terms: 16,
            ..NumericContext::default()
        };
        let q = c(0.9, 0.0);
        assert!(matches!(poch_inf(&q, &q, &tight), Err(QError::Truncation(_))));
        assert!(matches!(
            poch_finite(&q, &q, 40, &tight),
            Err(QError::Truncation(_))
        ));
    }

    #[test]
    fn gaussian_binomials() {
        let q = c(0.3, 0.0);
        // [4, 2] = 1 + q + 2q^2 + q^3 + q^4
        let v = qbinom_num(4, 2, &q, &ctx()).unwrap().to_c64().re;
        let expect = 1.0 + 0.3 + 2.0 * 0.09 + 0.027 + 0.0081;
        assert!((v - expect).abs() < 1e-14);
        assert!(qbinom_num(4, 5, &q, &ctx()).unwrap().is_zero());
        assert!(matches!(
            qbinom_num(3, 1, &c(1.2, 0.0), &ctx()),
            Err(QError::Domain(_))
        ));
    }

    #[test]
    fn divisors_and_lambert() {
        let d: Vec<u64> = (1..=12).map(|n| divisor_count(n).unwrap()).collect();
        assert_eq!(d, vec![1, 2, 2, 3, 2, 4, 2, 4, 3, 4, 2, 6]);
        assert!(divisor_count(0).is_err());
        let q = c(0.2, 0.1);
        let direct = (1..400u64).fold(ComplexHP::zero(ctx().bits()), |acc, n| {
            &acc + &q
                .powi(n as i64)
                .unwrap()
                .scale_i64(divisor_count(n).unwrap() as i64)
        });
        assert!(rel(&lambert_sum(&q, &ctx()).unwrap(), &direct) < -70.0);
    }

    #[test]
    fn triple_product_reflection() {
        // (x, q/x, q; q)_inf is invariant under x -> q/x
        let q = c(0.4, 0.2);
        let x = c(0.9, 0.5);
        let a = triple_product(&x, &q, &ctx()).unwrap();
        let b = triple_product(&q.checked_div(&x).unwrap(), &q, &ctx()).unwrap();
        assert!(rel(&a, &b) < -70.0);
    }
}
