//! Numeric evaluation of unilateral and bilateral basic hypergeometric
//! series and theta-type sums, with adaptive truncation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};
use crate::qcore::{ensure_nonzero, require_inside_unit_disk, ComplexHP, NumericContext};

/// `r phi s [num; den; q, x]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiSpec {
    pub num: Vec<ComplexHP>,
    pub den: Vec<ComplexHP>,
    pub q: ComplexHP,
    pub x: ComplexHP,
}

/// `r psi r [num; den; q, x]`, summed over all integers.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiSpec {
    pub num: Vec<ComplexHP>,
    pub den: Vec<ComplexHP>,
    pub q: ComplexHP,
    pub x: ComplexHP,
}

/// Polynomial weight `w(n)` of a theta-type sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Weight {
    One,
    N,
    /// `c0 + c1 n`
    Linear {
        c0: i64,
        c1: i64,
    },
}

impl Weight {
    pub fn at(&self, n: i64) -> i64 {
        match *self {
            Weight::One => 1,
            Weight::N => n,
            Weight::Linear { c0, c1 } => c0 + c1 * n,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Support {
    /// `n >= 0`
    Unilateral,
    /// all integers `n`
    Bilateral,
}

/// `sum_n w(n) s^n q^(A n(n-1)/2 + B n) x^n` with `s = -1` when alternating.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaSumSpec<X> {
    pub quad: i64,
    pub lin: i64,
    pub alternating: bool,
    pub weight: Weight,
    pub x: Option<X>,
    pub support: Support,
}

impl<X> ThetaSumSpec<X> {
    pub fn validate(&self) -> Result<()> {
        if self.quad <= 0 {
            return Err(QError::Domain(format!(
                "theta sum needs a positive quadratic coefficient, got {}",
                self.quad
            )));
        }
        Ok(())
    }

    /// Exponent of q in the term of index `n`.
    pub fn exponent(&self, n: i64) -> i64 {
        self.quad * n * (n - 1) / 2 + self.lin * n
    }
}

/// Adds terms until five consecutive, non-increasing terms fall below one
/// unit in the last working digit of the partial sum. A finite iterator is
/// summed completely.
pub fn sum_terms<I>(terms: I, ctx: &NumericContext) -> Result<ComplexHP>
where
    I: IntoIterator<Item = Result<ComplexHP>>,
{
    let mut s = ComplexHP::zero(ctx.bits());
    let mut small = 0;
    let mut prev = f64::INFINITY;
    let mut seen_nonzero = false;
    for (count, t) in terms.into_iter().enumerate() {
        if count >= ctx.max_terms {
            return Err(QError::Truncation(format!(
                "series not converged after max_terms = {} terms",
                ctx.max_terms
            )));
        }
        let t = t?;
        s = &s + &t;
        let lt = t.log10_abs();
        seen_nonzero |= !t.is_zero();
        let thresh = ctx.eps_log10() + s.log10_abs().max(0.0);
        if seen_nonzero && lt < thresh && lt <= prev {
            small += 1;
            if small >= 5 {
                break;
            }
        } else {
            small = 0;
        }
        prev = lt;
    }
    Ok(s)
}

/// `sum_{n >= start} f(n)`, each term computed independently.
pub fn sum_indexed<F>(start: i64, mut f: F, ctx: &NumericContext) -> Result<ComplexHP>
where
    F: FnMut(i64) -> Result<ComplexHP>,
{
    sum_terms((start..).map(&mut f), ctx)
}

/// log10 |1 - z| given z, robust to overflow of z.
fn log10_one_minus(z: Complex64) -> f64 {
    let lz = z.norm().log10();
    if lz > 8.0 {
        lz
    } else if lz < -8.0 || !lz.is_finite() && lz < 0.0 {
        0.0
    } else {
        (Complex64::new(1.0, 0.0) - z).norm().log10().max(-300.0)
    }
}

fn log10_scaled(a: Complex64, qlog: f64, qarg: f64, k: i64) -> Complex64 {
    // a q^k without forming q^k, so that large |k| cannot overflow
    let m = a.norm().log10() + k as f64 * qlog;
    if !m.is_finite() || m > 300.0 {
        return Complex64::new(1e300, 0.0);
    }
    if m < -300.0 {
        return Complex64::new(0.0, 0.0);
    }
    Complex64::from_polar(10f64.powf(m), a.arg() + k as f64 * qarg)
}

/// Running maximum of log10 |t_n| along a one-sided series with `t_0 = 1`,
/// given log10 |t_{n+1} / t_n|. Used to size the extra precision needed for
/// sums whose terms are much larger than the result.
fn peak_log10<F: Fn(i64) -> f64>(ratio: F, limit: Option<i64>) -> f64 {
    let mut l = 0.0f64;
    let mut peak = 0.0f64;
    let cap = limit.unwrap_or(100_000).min(100_000);
    for n in 0..cap {
        let r = ratio(n);
        l += r;
        peak = peak.max(l);
        if limit.is_none() && n > 10 && r < 0.0 && l < peak - 40.0 {
            break;
        }
    }
    peak
}

fn extra_digits(peak: f64) -> u32 {
    if peak > 1.0 {
        peak.ceil() as u32 + 4
    } else {
        0
    }
}

/// Smallest `N >= 0` with `a q^N = 1` to working precision, if any.
fn termination_index(a: &ComplexHP, q: &ComplexHP, ctx: &NumericContext) -> Option<i64> {
    let one = ComplexHP::one(ctx.bits());
    let qlog = q.abs_f64().log10();
    let mut t = a.clone();
    for n in 0..ctx.max_terms as i64 {
        if t.log10_abs() < -0.3 {
            return None;
        }
        let f = &one - &t;
        if f.is_zero() || f.log10_abs() < ctx.pole_log10() {
            return Some(n);
        }
        if qlog == f64::NEG_INFINITY {
            return None;
        }
        t = &t * q;
    }
    None
}

/// Smallest `M >= 1` with `b q^-M = 1`, i.e. `b = q^M`.
fn negative_termination_index(b: &ComplexHP, q: &ComplexHP, ctx: &NumericContext) -> Result<Option<i64>> {
    if b.is_zero() {
        return Ok(None);
    }
    let one = ComplexHP::one(ctx.bits());
    let qi = q.inv()?;
    let mut t = b * &qi;
    for m in 1..ctx.max_terms as i64 {
        if t.log10_abs() > 0.3 {
            return Ok(None);
        }
        let f = &one - &t;
        if f.is_zero() || f.log10_abs() < ctx.pole_log10() {
            return Ok(Some(m));
        }
        t = &t * &qi;
    }
    Ok(None)
}

fn lift_all(v: &[ComplexHP], bits: usize) -> Vec<ComplexHP> {
    v.iter().map(|z| z.lift(bits)).collect()
}

/// Estimated log10 of the largest term of `spec`, which bounds the digits
/// lost to cancellation when the sum is much smaller than its terms.
pub fn phi_peak_log10(spec: &PhiSpec, ctx: &NumericContext) -> f64 {
    let bits = ctx.bits();
    let q = spec.q.lift(bits);
    let terminates = spec
        .num
        .iter()
        .filter_map(|a| termination_index(&a.lift(bits), &q, ctx))
        .min();
    phi_peak(spec, terminates)
}

fn phi_peak(spec: &PhiSpec, terminates: Option<i64>) -> f64 {
    let e = spec.den.len() as i64 + 1 - spec.num.len() as i64;
    let (q64, x64) = (spec.q.to_c64(), spec.x.to_c64());
    let (qlog, qarg) = (q64.norm().log10(), q64.arg());
    let nums: Vec<Complex64> = spec.num.iter().map(ComplexHP::to_c64).collect();
    let dens: Vec<Complex64> = spec.den.iter().map(ComplexHP::to_c64).collect();
    peak_log10(
        |n| {
            let mut l = x64.norm().log10() + (e * n) as f64 * qlog;
            l += nums
                .iter()
                .map(|a| log10_one_minus(log10_scaled(*a, qlog, qarg, n)))
                .sum::<f64>();
            l -= dens
                .iter()
                .map(|b| log10_one_minus(log10_scaled(*b, qlog, qarg, n)))
                .sum::<f64>();
            l - log10_one_minus(log10_scaled(Complex64::new(1.0, 0.0), qlog, qarg, n + 1))
        },
        terminates,
    )
}

/// Evaluate `r phi s`. Terminating series (a numerator equal to `q^-N`) are
/// summed exactly to `N`; otherwise `|q| < 1` and convergence are required.
pub fn eval_phi(spec: &PhiSpec, ctx: &NumericContext) -> Result<ComplexHP> {
    require_inside_unit_disk(&spec.q, "phi series")?;
    let (r, s) = (spec.num.len() as i64, spec.den.len() as i64);
    let bits = ctx.bits();
    let q = spec.q.lift(bits);
    let num = lift_all(&spec.num, bits);
    let terminates = num.iter().filter_map(|a| termination_index(a, &q, ctx)).min();
    if terminates.is_none() && !spec.x.is_zero() {
        if r > s + 1 {
            return Err(QError::Domain(format!(
                "{r}phi{s} with nonzero argument diverges"
            )));
        }
        if r == s + 1 && !(spec.x.abs_f64() < 1.0) {
            return Err(QError::Domain(format!(
                "{r}phi{s} needs |x| < 1, got |x| = {}",
                spec.x.abs_f64()
            )));
        }
    }
    let e = s + 1 - r;
    let peak = phi_peak(spec, terminates);
    let ctx = ctx.with_extra_digits(extra_digits(peak));
    let bits = ctx.bits();
    let q = q.lift(bits);
    let x = spec.x.lift(bits);
    let num = lift_all(&num, bits);
    let den = lift_all(&spec.den, bits);
    let one = ComplexHP::one(bits);
    let mut t = one.clone();
    let mut qn = one.clone();
    let mut n = 0i64;
    let iter = std::iter::from_fn(|| {
        if terminates.is_some_and(|m| n > m) {
            return None;
        }
        let out = t.clone();
        if terminates == Some(n) {
            n += 1;
            return Some(Ok(out));
        }
        let step = (|| -> Result<ComplexHP> {
            let mut ratio = x.clone();
            for a in &num {
                ratio = &ratio * &(&one - &(a * &qn));
            }
            if e != 0 {
                ratio = &ratio * &(-&qn).powi(e)?;
            }
            let mut d = &one - &(&qn * &q);
            for b in &den {
                let f = &one - &(b * &qn);
                ensure_nonzero(&f, 0.0, &ctx, "denominator parameter factor")?;
                d = &d * &f;
            }
            ratio.checked_div(&d)
        })();
        match step {
            Ok(ratio) => {
                t = &t * &ratio;
                qn = &qn * &q;
                n += 1;
                Some(Ok(out))
            }
            Err(err) => {
                n = i64::MAX;
                Some(Err(err))
            }
        }
    });
    sum_terms(iter, &ctx)
}

/// Evaluate `r psi r` over all integers, each tail summed adaptively.
pub fn eval_psi(spec: &PsiSpec, ctx: &NumericContext) -> Result<ComplexHP> {
    if spec.num.len() != spec.den.len() {
        return Err(QError::Domain(format!(
            "psi series needs equal parameter counts, got {} and {}",
            spec.num.len(),
            spec.den.len()
        )));
    }
    require_inside_unit_disk(&spec.q, "psi series")?;
    if spec.x.is_zero() || spec.q.is_zero() {
        return Err(QError::Domain("psi series needs x != 0 and q != 0".into()));
    }
    let bits = ctx.bits();
    let q = spec.q.lift(bits);
    let num = lift_all(&spec.num, bits);
    let den = lift_all(&spec.den, bits);
    let pos_end = num.iter().filter_map(|a| termination_index(a, &q, ctx)).min();
    let mut neg_end = None;
    for b in &den {
        if let Some(m) = negative_termination_index(b, &q, ctx)? {
            neg_end = Some(neg_end.map_or(m, |e: i64| e.min(m)));
        }
    }
    if pos_end.is_none() && !(spec.x.abs_f64() < 1.0) {
        return Err(QError::Domain(format!(
            "psi series positive tail needs |x| < 1, got |x| = {}",
            spec.x.abs_f64()
        )));
    }
    if neg_end.is_none() {
        let nz_a: Vec<_> = spec.num.iter().filter(|a| !a.is_zero()).collect();
        let nz_b: Vec<_> = spec.den.iter().filter(|b| !b.is_zero()).collect();
        let converges = match nz_b.len().cmp(&nz_a.len()) {
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Equal => {
                let lb: f64 = nz_b.iter().map(|b| b.log10_abs()).sum();
                let la: f64 = nz_a.iter().map(|a| a.log10_abs()).sum();
                lb - la < spec.x.log10_abs()
            }
        };
        if !converges {
            return Err(QError::Domain(
                "psi series negative tail diverges: need |prod b / prod a| < |x|".into(),
            ));
        }
    }

    let q64 = spec.q.to_c64();
    let x64 = spec.x.to_c64();
    let (qlog, qarg) = (q64.norm().log10(), q64.arg());
    let nums: Vec<Complex64> = spec.num.iter().map(ComplexHP::to_c64).collect();
    let dens: Vec<Complex64> = spec.den.iter().map(ComplexHP::to_c64).collect();
    let pos_peak = peak_log10(
        |n| {
            x64.norm().log10()
                + nums
                    .iter()
                    .map(|a| log10_one_minus(log10_scaled(*a, qlog, qarg, n)))
                    .sum::<f64>()
                - dens
                    .iter()
                    .map(|b| log10_one_minus(log10_scaled(*b, qlog, qarg, n)))
                    .sum::<f64>()
        },
        pos_end,
    );
    let neg_peak = peak_log10(
        |n| {
            -x64.norm().log10()
                + dens
                    .iter()
                    .map(|b| log10_one_minus(log10_scaled(*b, qlog, qarg, -n - 1)))
                    .sum::<f64>()
                - nums
                    .iter()
                    .map(|a| log10_one_minus(log10_scaled(*a, qlog, qarg, -n - 1)))
                    .sum::<f64>()
        },
        neg_end.map(|m| m - 1),
    );
    let ctx = ctx.with_extra_digits(extra_digits(pos_peak.max(neg_peak)));
    let bits = ctx.bits();
    let q = q.lift(bits);
    let qi = q.inv()?;
    let x = spec.x.lift(bits);
    let xi = x.inv()?;
    let num = lift_all(&num, bits);
    let den = lift_all(&den, bits);
    let one = ComplexHP::one(bits);

    // n >= 0
    let mut t = one.clone();
    let mut qn = one.clone();
    let mut n = 0i64;
    let mut failed = false;
    let pos = std::iter::from_fn(|| {
        if failed || pos_end.is_some_and(|m| n > m) {
            return None;
        }
        let out = t.clone();
        if pos_end == Some(n) {
            n += 1;
            return Some(Ok(out));
        }
        let step = (|| -> Result<ComplexHP> {
            let mut ratio = x.clone();
            let mut d = one.clone();
            for (a, b) in num.iter().zip(&den) {
                ratio = &ratio * &(&one - &(a * &qn));
                let f = &one - &(b * &qn);
                ensure_nonzero(&f, 0.0, &ctx, "denominator parameter factor")?;
                d = &d * &f;
            }
            ratio.checked_div(&d)
        })();
        match step {
            Ok(r) => {
                t = &t * &r;
                qn = &qn * &q;
                n += 1;
                Some(Ok(out))
            }
            Err(e) => {
                failed = true;
                Some(Err(e))
            }
        }
    });
    let positive = sum_terms(pos, &ctx)?;

    // n <= -1: t_{-k-1} = t_{-k} prod (1 - b q^{-k-1}) / prod (1 - a q^{-k-1}) / x
    let mut t = one.clone();
    let mut qmk = qi.clone();
    let mut k = 0i64;
    let mut failed = false;
    let neg = std::iter::from_fn(|| {
        if failed || neg_end.is_some_and(|m| k + 1 >= m) {
            return None;
        }
        let step = (|| -> Result<ComplexHP> {
            let mut ratio = xi.clone();
            let mut d = one.clone();
            for (a, b) in num.iter().zip(&den) {
                ratio = &ratio * &(&one - &(b * &qmk));
                let az = a * &qmk;
                let f = &one - &az;
                ensure_nonzero(
                    &f,
                    az.log10_abs(),
                    &ctx,
                    "numerator parameter factor at negative index",
                )?;
                d = &d * &f;
            }
            ratio.checked_div(&d)
        })();
        match step {
            Ok(r) => {
                t = &t * &r;
                qmk = &qmk * &qi;
                k += 1;
                Some(Ok(t.clone()))
            }
            Err(e) => {
                failed = true;
                Some(Err(e))
            }
        }
    });
    let negative = sum_terms(neg, &ctx)?;
    Ok(&positive + &negative)
}

/// Evaluate a theta-type sum at `q` (and `x` when `spec` carries one).
pub fn eval_theta_sum(
    spec: &ThetaSumSpec<ComplexHP>,
    q: &ComplexHP,
    ctx: &NumericContext,
) -> Result<ComplexHP> {
    spec.validate()?;
    require_inside_unit_disk(q, "theta sum")?;
    if q.is_zero() {
        return Err(QError::Domain("theta sum needs q != 0".into()));
    }
    let bits = ctx.bits();
    let q = q.lift(bits);
    let one = ComplexHP::one(bits);
    let sign = |z: ComplexHP| if spec.alternating { -z } else { z };
    let x = spec
        .x
        .as_ref()
        .map(|x| x.lift(bits))
        .unwrap_or_else(|| one.clone());
    if x.is_zero() {
        return Err(QError::Domain("theta sum needs x != 0".into()));
    }

    // P_n = s^n q^{e(n)} x^n; P_{n+1} = P_n s q^{A n + B} x
    let mut p = one.clone();
    let mut n = 0i64;
    let mut failed = false;
    let pos = std::iter::from_fn(|| {
        if failed {
            return None;
        }
        let term = p.scale_i64(spec.weight.at(n));
        match q.powi(spec.quad * n + spec.lin) {
            Ok(step) => {
                p = sign(&(&p * &step) * &x);
                n += 1;
                Some(Ok(term))
            }
            Err(e) => {
                failed = true;
                Some(Err(e))
            }
        }
    });
    let mut total = sum_terms(pos, ctx)?;
    if spec.support == Support::Bilateral {
        let xi = x.inv()?;
        // P_{-k-1} = P_{-k} s q^{A(k+1) - B} / x
        let mut p = one.clone();
        let mut k = 0i64;
        let mut failed = false;
        let neg = std::iter::from_fn(|| {
            if failed {
                return None;
            }
            match q.powi(spec.quad * (k + 1) - spec.lin) {
                Ok(step) => {
                    p = sign(&(&p * &step) * &xi);
                    k += 1;
                    Some(Ok(p.scale_i64(spec.weight.at(-k))))
                }
                Err(e) => {
                    failed = true;
                    Some(Err(e))
                }
            }
        });
        total = &total + &sum_terms(neg, ctx)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{poch_finite, poch_inf, poch_multi, PochIndex};

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
    fn q_binomial_theorem() {
        // 1phi0(a;-;q,x) = (ax;q)_inf/(x;q)_inf
        let (a, q, x) = (c(0.7, 0.2), c(0.3, -0.4), c(0.5, 0.1));
        let lhs = eval_phi(
            &PhiSpec {
                num: vec![a.clone()],
                den: vec![],
                q: q.clone(),
                x: x.clone(),
            },
            &ctx(),
        )
        .unwrap();
        let rhs = poch_inf(&(&a * &x), &q, &ctx())
            .unwrap()
            .checked_div(&poch_inf(&x, &q, &ctx()).unwrap())
            .unwrap();
        assert!(rel(&lhs, &rhs) < -75.0);
    }

    /// Direct sum of `(num)_n / (q, den)_n [(-1)^n q^C(n,2)]^(s+1-r) x^n`.
    fn phi_by_definition(spec: &PhiSpec, terms: i64) -> ComplexHP {
        let e = spec.den.len() as i64 + 1 - spec.num.len() as i64;
        let mut s = c(0.0, 0.0);
        for n in 0..terms {
            let mut t = spec.x.powi(n).unwrap();
            for a in &spec.num {
                t = &t * &poch_finite(a, &spec.q, n, &ctx()).unwrap();
            }
            let mut d = poch_finite(&spec.q, &spec.q, n, &ctx()).unwrap();
            for b in &spec.den {
                d = &d * &poch_finite(b, &spec.q, n, &ctx()).unwrap();
            }
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let theta = spec
                .q
                .powi(n * (n - 1) / 2)
                .unwrap()
                .scale_i64(sign)
                .powi(e)
                .unwrap();
            s = &s + &(&t * &theta).checked_div(&d).unwrap();
        }
        s
    }

    #[test]
    fn cauchy_1phi1_and_excess_denominators() {
        // 1phi1(a; c; q, c/a) = (c/a;q)_inf / (c;q)_inf
        let q = c(0.3, 0.0);
        let (a, cc) = (c(2.0, 0.0), c(0.5, 0.0));
        let x = cc.checked_div(&a).unwrap();
        let spec = PhiSpec {
            num: vec![a],
            den: vec![cc.clone()],
            q: q.clone(),
            x: x.clone(),
        };
        let lhs = eval_phi(&spec, &ctx()).unwrap();
        let rhs = poch_inf(&x, &q, &ctx())
            .unwrap()
            .checked_div(&poch_inf(&cc, &q, &ctx()).unwrap())
            .unwrap();
        assert!(rel(&lhs, &rhs) < -75.0);
        for (num, den) in [(1, 1), (0, 1), (1, 2), (2, 3)] {
            let q = c(0.45, 0.3);
            let spec = PhiSpec {
                num: (0..num).map(|i| c(1.5 + i as f64, -0.5)).collect(),
                den: (0..den).map(|i| c(-0.7, 0.2 * i as f64)).collect(),
                q,
                x: c(-2.5, 1.5),
            };
            let lhs = eval_phi(&spec, &ctx()).unwrap();
            assert!(rel(&lhs, &phi_by_definition(&spec, 60)) < -75.0, "{num}phi{den}");
        }
    }

    #[test]
    fn terminating_q_chu_vandermonde() {
        // 2phi1(q^-n, b; c; q, q) = (c/b;q)_n / (c;q)_n * b^n
        let q = c(0.35, 0.25);
        let (b, cc) = (c(1.3, -0.7), c(-0.4, 2.1));
        for n in 0..8 {
            let qn = q.powi(-n).unwrap();
            let spec = PhiSpec {
                num: vec![qn, b.clone()],
                den: vec![cc.clone()],
                q: q.clone(),
                x: q.clone(),
            };
            let lhs = eval_phi(&spec, &ctx()).unwrap();
            let cb = cc.checked_div(&b).unwrap();
            let rhs = poch_finite(&cb, &q, n, &ctx())
                .unwrap()
                .checked_div(&poch_finite(&cc, &q, n, &ctx()).unwrap())
                .unwrap();
            let rhs = &rhs * &b.powi(n).unwrap();
            assert!(rel(&lhs, &rhs) < -75.0, "n = {n}");
        }
    }

    #[test]
    fn domain_and_pole_errors() {
        let q = c(0.5, 0.0);
        let diverge = PhiSpec {
            num: vec![c(0.2, 0.0); 3],
            den: vec![c(0.3, 0.0)],
            q: q.clone(),
            x: c(0.1, 0.0),
        };
        assert!(matches!(eval_phi(&diverge, &ctx()), Err(QError::Domain(_))));
        let outside = PhiSpec {
            num: vec![c(0.2, 0.0)],
            den: vec![],
            q: q.clone(),
            x: c(1.5, 0.0),
        };
        assert!(matches!(eval_phi(&outside, &ctx()), Err(QError::Domain(_))));
        let big_q = PhiSpec {
            num: vec![],
            den: vec![],
            q: c(1.0, 0.0),
            x: c(0.5, 0.0),
        };
        assert!(matches!(eval_phi(&big_q, &ctx()), Err(QError::Domain(_))));
        // denominator q^-1 makes the second term blow up
        let pole = PhiSpec {
            num: vec![c(0.2, 0.0)],
            den: vec![c(2.0, 0.0)],
            q,
            x: c(0.5, 0.0),
        };
        assert!(matches!(eval_phi(&pole, &ctx()), Err(QError::Pole(_))));
    }

    #[test]
    fn ramanujan_1psi1() {
        // 1psi1(a; b; q, x) = (q, b/a, ax, q/(ax); q)_inf / (b, q/a, x, b/(ax); q)_inf
        let (a, b, q, x) = (c(1.8, 0.3), c(0.25, -0.1), c(0.4, 0.2), c(0.7, -0.2));
        let spec = PsiSpec {
            num: vec![a.clone()],
            den: vec![b.clone()],
            q: q.clone(),
            x: x.clone(),
        };
        let lhs = eval_psi(&spec, &ctx()).unwrap();
        let ax = &a * &x;
        let num = [
            q.clone(),
            b.checked_div(&a).unwrap(),
            ax.clone(),
            q.checked_div(&ax).unwrap(),
        ];
        let den = [
            b.clone(),
            q.checked_div(&a).unwrap(),
            x.clone(),
            b.checked_div(&ax).unwrap(),
        ];
        let rhs = poch_multi(&num, &q, PochIndex::Infinite, &ctx())
            .unwrap()
            .checked_div(&poch_multi(&den, &q, PochIndex::Infinite, &ctx()).unwrap())
            .unwrap();
        assert!(rel(&lhs, &rhs) < -75.0);
        let bad = PsiSpec {
            num: vec![a],
            den: vec![c(3.0, 0.0)],
            q,
            x: c(0.5, 0.0),
        };
        assert!(matches!(eval_psi(&bad, &ctx()), Err(QError::Domain(_))));
    }

    #[test]
    fn psi_with_denominator_q_is_phi() {
        // b = q cuts off the negative side
        let (a, q, x) = (c(0.6, 0.3), c(0.3, 0.1), c(0.4, 0.0));
        let psi = eval_psi(
            &PsiSpec {
                num: vec![a.clone()],
                den: vec![q.clone()],
                q: q.clone(),
                x: x.clone(),
            },
            &ctx(),
        )
        .unwrap();
        let phi = eval_phi(
            &PhiSpec {
                num: vec![a],
                den: vec![],
                q,
                x,
            },
            &ctx(),
        )
        .unwrap();
        assert!(rel(&psi, &phi) < -75.0);
    }

    #[test]
    fn theta_sums() {
        let q = c(0.3, 0.2);
        // Jacobi triple product: sum (-1)^n q^{n(n-1)/2} x^n = (x, q/x, q; q)_inf
        let x = c(0.8, 0.4);
        let spec = ThetaSumSpec {
            quad: 1,
            lin: 0,
            alternating: true,
            weight: Weight::One,
            x: Some(x.clone()),
            support: Support::Bilateral,
        };
        let lhs = eval_theta_sum(&spec, &q, &ctx()).unwrap();
        let rhs = crate::qcore::triple_product(&x, &q, &ctx()).unwrap();
        assert!(rel(&lhs, &rhs) < -75.0);
        // Jacobi: (q;q)^3 = sum_{n>=0} (-1)^n (2n+1) q^{n(n+1)/2}
        let spec = ThetaSumSpec {
            quad: 1,
            lin: 1,
            alternating: true,
            weight: Weight::Linear { c0: 1, c1: 2 },
            x: None,
            support: Support::Unilateral,
        };
        let lhs = eval_theta_sum(&spec, &q, &ctx()).unwrap();
        let rhs = poch_inf(&q, &q, &ctx()).unwrap().powi(3).unwrap();
        assert!(rel(&lhs, &rhs) < -75.0);
        let bad = ThetaSumSpec { quad: 0, ..spec };
        assert!(eval_theta_sum(&bad, &q, &ctx()).is_err());
    }

    #[test]
    fn theta_reflection_symmetry() {
        // (A, B) -> (A, A - B) maps n -> -n, so bilateral sums agree
        let q = c(0.45, -0.3);
        for (a, b) in [(1, 0), (3, 1), (5, 2), (2, -1)] {
            let make = |lin| ThetaSumSpec {
                quad: a,
                lin,
                alternating: true,
                weight: Weight::One,
                x: None,
                support: Support::Bilateral,
            };
            let s1 = eval_theta_sum(&make(b), &q, &ctx()).unwrap();
            let s2 = eval_theta_sum(&make(a - b), &q, &ctx()).unwrap();
            assert!(rel(&s1, &s2) < -75.0);
        }
    }
}
