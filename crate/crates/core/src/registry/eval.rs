//! Shorthand used by the catalog evaluators.

use std::cell::Cell;

use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::Result;
use crate::formal::{self, FormalParam, LaurentSeriesQ};
use crate::qcore::{poch_finite, poch_multi, qbinom_num, ComplexHP, NumericContext, PochIndex};
use crate::series::{eval_phi, eval_psi, phi_peak_log10, sum_indexed, PhiSpec, PsiSpec};

use super::{Guard, ParamAssignment};

pub(super) type C = ComplexHP;

/// Cancellation (in digits) above which a side is recomputed with more
/// guard digits.
const LOSS_SLACK: f64 = 5.0;
const MAX_EXTRA_DIGITS: f64 = 400.0;

/// Numeric evaluation scope: parameters at working precision plus a record
/// of the worst cancellation seen in any sum.
pub(super) struct Ev<'a> {
    asg: &'a ParamAssignment,
    pub ctx: NumericContext,
    pub q: C,
    loss: Cell<f64>,
}

/// Evaluate `f`, repeating once with extra guard digits if one of its sums
/// cancelled more digits than the guard allows.
pub(super) fn run<F>(asg: &ParamAssignment, ctx: &NumericContext, f: F) -> Result<C>
where
    F: Fn(&Ev) -> Result<C>,
{
    let e = Ev::new(asg, ctx.clone())?;
    let v = f(&e)?;
    let loss = e.loss.get();
    if loss <= ctx.guard_digits as f64 - LOSS_SLACK {
        return Ok(v);
    }
    let extra = loss.min(MAX_EXTRA_DIGITS).ceil() as u32 + 10;
    f(&Ev::new(asg, ctx.with_extra_digits(extra))?)
}

impl<'a> Ev<'a> {
    fn new(asg: &'a ParamAssignment, ctx: NumericContext) -> Result<Self> {
        let q = asg.complex("q", &ctx)?;
        Ok(Ev {
            asg,
            ctx,
            q,
            loss: Cell::new(0.0),
        })
    }

    pub fn bits(&self) -> usize {
        self.ctx.bits()
    }

    pub fn p(&self, name: &str) -> Result<C> {
        self.asg.complex(name, &self.ctx)
    }

    pub fn n(&self, name: &str) -> Result<i64> {
        self.asg.int(name)
    }

    pub fn k(&self, v: i64) -> C {
        C::from_i64(v, self.bits())
    }

    pub fn one(&self) -> C {
        C::one(self.bits())
    }

    pub fn zero(&self) -> C {
        C::zero(self.bits())
    }

    /// `q^k`
    pub fn qp(&self, k: i64) -> Result<C> {
        self.q.powi(k)
    }

    /// `(a1, ..., ar; q)_inf`
    pub fn inf(&self, args: &[C]) -> Result<C> {
        poch_multi(args, &self.q, PochIndex::Infinite, &self.ctx)
    }

    /// `(a1, ..., ar; base)_inf`
    pub fn inf_base(&self, args: &[C], base: &C) -> Result<C> {
        poch_multi(args, base, PochIndex::Infinite, &self.ctx)
    }

    /// `(a1, ..., ar; q)_n` for any integer `n`.
    pub fn fin(&self, args: &[C], n: i64) -> Result<C> {
        args.iter().try_fold(self.one(), |acc, a| {
            Ok(&acc * &poch_finite(a, &self.q, n, &self.ctx)?)
        })
    }

    /// `(a1, ..., ar; base)_n`
    pub fn fin_base(&self, args: &[C], base: &C, n: i64) -> Result<C> {
        poch_multi(args, base, PochIndex::Finite(n), &self.ctx)
    }

    /// `inf(num) / inf(den)`
    pub fn inf_ratio(&self, num: &[C], den: &[C]) -> Result<C> {
        div(&self.inf(num)?, &self.inf(den)?)
    }

    /// `fin(num, n) / fin(den, n)`
    pub fn fin_ratio(&self, num: &[C], den: &[C], n: i64) -> Result<C> {
        div(&self.fin(num, n)?, &self.fin(den, n)?)
    }

    pub fn qbinom(&self, n: i64, k: i64) -> Result<C> {
        qbinom_num(n, k, &self.q, &self.ctx)
    }

    pub fn phi(&self, num: &[C], den: &[C], x: &C) -> Result<C> {
        let spec = PhiSpec {
            num: num.to_vec(),
            den: den.to_vec(),
            q: self.q.clone(),
            x: x.clone(),
        };
        eval_phi(&spec, &self.ctx)
    }

    /// A `phi` whose parameters are rebuilt by `params` at a precision raised
    /// by the cancellation the series will suffer. Needed when the terms
    /// exceed the sum by more digits than the parameters carry; sampled
    /// inputs are exact binary numbers, so rebuilding them loses nothing.
    pub fn phi_with<F>(&self, params: F) -> Result<C>
    where
        F: Fn(&Ev) -> Result<(Vec<C>, Vec<C>, C)>,
    {
        let (num, den, x) = params(self)?;
        let spec = PhiSpec {
            num,
            den,
            q: self.q.clone(),
            x,
        };
        let peak = phi_peak_log10(&spec, &self.ctx);
        if peak <= self.ctx.guard_digits as f64 - LOSS_SLACK {
            return eval_phi(&spec, &self.ctx);
        }
        let sub = Ev::new(self.asg, self.ctx.with_extra_digits(peak.ceil() as u32 + 10))?;
        let (num, den, x) = params(&sub)?;
        let spec = PhiSpec {
            num,
            den,
            q: sub.q.clone(),
            x,
        };
        Ok(eval_phi(&spec, &sub.ctx)?.with_precision(self.bits()))
    }

    pub fn psi(&self, num: &[C], den: &[C], x: &C) -> Result<C> {
        let spec = PsiSpec {
            num: num.to_vec(),
            den: den.to_vec(),
            q: self.q.clone(),
            x: x.clone(),
        };
        eval_psi(&spec, &self.ctx)
    }

    /// Very-well-poised series
    /// `sum (1 - a q^2n)/(1 - a) (a, b1, ..)_n / (q, aq/b1, ..)_n x^n`,
    /// written as a `phi` with the parameters `+-q sqrt(a)` over `+-sqrt(a)`.
    pub fn vwp(&self, a: &C, params: &[C], x: &C) -> Result<C> {
        let s = a.sqrt();
        let qs = &self.q * &s;
        let aq = a * &self.q;
        let mut num = vec![a.clone(), qs.clone(), -&qs];
        let mut den = vec![s.clone(), -&s];
        for b in params {
            num.push(b.clone());
            den.push(div(&aq, b)?);
        }
        self.phi(&num, &den, x)
    }

    fn note_loss(&self, peak: f64, total: &C) {
        let lost = peak - total.log10_abs();
        if lost.is_finite() && lost > self.loss.get() {
            self.loss.set(lost);
        } else if lost.is_infinite() && lost > 0.0 {
            self.loss.set(MAX_EXTRA_DIGITS);
        }
    }

    /// `sum_{n >= start} f(n)` with adaptive truncation. `f` is called with
    /// consecutive indices, so it may carry running products.
    pub fn sum<F>(&self, start: i64, mut f: F) -> Result<C>
    where
        F: FnMut(i64) -> Result<C>,
    {
        let mut peak = f64::NEG_INFINITY;
        let s = sum_indexed(
            start,
            |n| {
                let t = f(n)?;
                peak = peak.max(t.log10_abs());
                Ok(t)
            },
            &self.ctx,
        )?;
        self.note_loss(peak, &s);
        Ok(s)
    }

    /// `sum_{n = lo}^{hi} f(n)`
    pub fn fsum<F>(&self, lo: i64, hi: i64, mut f: F) -> Result<C>
    where
        F: FnMut(i64) -> Result<C>,
    {
        let mut s = self.zero();
        let mut peak = f64::NEG_INFINITY;
        for n in lo..=hi {
            let t = f(n)?;
            peak = peak.max(t.log10_abs());
            s = &s + &t;
        }
        self.note_loss(peak, &s);
        Ok(s)
    }
}

pub(super) fn div(a: &C, b: &C) -> Result<C> {
    a.checked_div(b)
}

/// `1 - z`
pub(super) fn om(z: &C) -> C {
    &C::one(z.precision()) - z
}

/// f64 view of a parameter for samplers and guards; NaN when absent.
pub(super) fn f(asg: &ParamAssignment, name: &str) -> Complex64 {
    asg.c64(name).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
}

pub(super) fn g(z: Complex64, lo: i64, hi: i64) -> Guard {
    Guard::new(z, lo, hi)
}

/// Guards on `z q^k` for `0 <= k <= 40`.
pub(super) fn g40(zs: &[Complex64]) -> Vec<Guard> {
    zs.iter().map(|&z| Guard::new(z, 0, 40)).collect()
}

pub(super) fn always(_: &ParamAssignment) -> bool {
    true
}

pub(super) fn no_guards(_: &ParamAssignment) -> Vec<Guard> {
    Vec::new()
}

pub(super) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// The formal parameter `c q^e`.
pub(super) fn fq(c: i64, e: i64) -> FormalParam {
    FormalParam::int(c, e)
}

pub(super) fn mono(c: i64, e: i64, order: i64) -> LaurentSeriesQ {
    LaurentSeriesQ::monomial(rat(c), e, order)
}

/// `(alpha; q^base)_inf`
pub(super) fn pinf(alpha: &FormalParam, base: i64, order: i64) -> Result<LaurentSeriesQ> {
    formal::poch_series_base(alpha, base, PochIndex::Infinite, order)
}

/// `1 / (alpha; q^base)_inf`
pub(super) fn pinf_inv(alpha: &FormalParam, base: i64, order: i64) -> Result<LaurentSeriesQ> {
    formal::poch_series_inv_base(alpha, base, PochIndex::Infinite, order)
}

/// `(alpha; q)_n`
pub(super) fn pfin(alpha: &FormalParam, n: i64, order: i64) -> Result<LaurentSeriesQ> {
    formal::poch_series(alpha, PochIndex::Finite(n), order)
}

/// `1 / (alpha; q)_n`
pub(super) fn pfin_inv(alpha: &FormalParam, n: i64, order: i64) -> Result<LaurentSeriesQ> {
    formal::poch_series_inv(alpha, PochIndex::Finite(n), order)
}

/// `1 / (1 - c q^e)`
pub(super) fn geom_inv(c: i64, e: i64, order: i64) -> Result<LaurentSeriesQ> {
    pfin_inv(&fq(c, e), 1, order)
}

/// `sum_k d(k) q^k`
pub(super) fn divisor_series(order: i64) -> Result<LaurentSeriesQ> {
    let mut coeffs = vec![rat(0)];
    for k in 1..=order.max(0) {
        coeffs.push(rat(crate::qcore::divisor_count(k as u64)? as i64));
    }
    Ok(LaurentSeriesQ::from_coeffs(0, coeffs, order))
}

pub(super) fn case(params: ParamAssignment, order: i64) -> super::FormalCase {
    super::FormalCase { params, order }
}

pub(super) fn formal_value(p: FormalParam) -> super::ParamValue {
    super::ParamValue::Formal(p)
}

pub(super) fn int_value(n: i64) -> super::ParamValue {
    super::ParamValue::Int(n)
}

/// `n (n - 1) / 2`
pub(super) fn c2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// `(-1)^n`
pub(super) fn sgn(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The terms `(num;q)_n / (den;q)_n x^n` for nondecreasing `n >= 0`.
pub(super) struct HyperTerms {
    num: Vec<C>,
    den: Vec<C>,
    x: C,
    t: C,
    n: i64,
}

impl HyperTerms {
    pub fn new(e: &Ev, num: Vec<C>, den: Vec<C>, x: C) -> Self {
        HyperTerms {
            num,
            den,
            x,
            t: e.one(),
            n: 0,
        }
    }

    pub fn at(&mut self, e: &Ev, n: i64) -> Result<C> {
        while self.n < n {
            let qk = e.qp(self.n)?;
            let mut r = self.x.clone();
            for a in &self.num {
                r = &r * &om(&(a * &qk));
            }
            for b in &self.den {
                r = div(&r, &om(&(b * &qk)))?;
            }
            self.t = &self.t * &r;
            self.n += 1;
        }
        Ok(self.t.clone())
    }
}
