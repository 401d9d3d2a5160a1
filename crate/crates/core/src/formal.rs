//! Truncated formal Laurent series in q with exact rational coefficients.
//!
//! Every series carries the largest exponent up to which its coefficients are
//! known (`order`). Arithmetic propagates that bound honestly, so a series
//! never claims coefficients it cannot justify.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{QError, Result};
use crate::qcore::{ComplexHP, NumericContext, PochIndex, Real};
use crate::series::ThetaSumSpec;

/// A formal parameter `scale * q^qpow`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalParam {
    pub scale: BigRational,
    pub qpow: i64,
}

impl FormalParam {
    pub fn new(scale: BigRational, qpow: i64) -> Self {
        FormalParam { scale, qpow }
    }

    /// `num/den * q^qpow`.
    pub fn ratio(num: i64, den: i64, qpow: i64) -> Self {
        FormalParam {
            scale: BigRational::new(num.into(), den.into()),
            qpow,
        }
    }

    pub fn int(n: i64, qpow: i64) -> Self {
        Self::ratio(n, 1, qpow)
    }

    pub fn times(&self, other: &FormalParam) -> FormalParam {
        FormalParam {
            scale: &self.scale * &other.scale,
            qpow: self.qpow + other.qpow,
        }
    }

    pub fn inv(&self) -> Result<FormalParam> {
        if self.scale.is_zero() {
            return Err(QError::NotInvertible);
        }
        Ok(FormalParam {
            scale: self.scale.recip(),
            qpow: -self.qpow,
        })
    }

    pub fn pow(&self, k: i64) -> Result<FormalParam> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        Ok(FormalParam {
            scale: num_traits::pow(base.scale, k.unsigned_abs() as usize),
            qpow: base.qpow * k.abs(),
        })
    }

    pub fn to_series(&self, order: i64) -> LaurentSeriesQ {
        LaurentSeriesQ::monomial(self.scale.clone(), self.qpow, order)
    }
}

impl fmt::Display for FormalParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.qpow {
            0 => write!(f, "{}", self.scale),
            1 => write!(f, "{}*q", self.scale),
            k => write!(f, "{}*q^{}", self.scale, k),
        }
    }
}

/// `sum_{e <= order} c_e q^e + O(q^(order+1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeriesQ {
    // coeffs[i] is the coefficient of q^(offset + i); the first entry is
    // nonzero and trailing zeros are dropped
    offset: i64,
    coeffs: Vec<BigRational>,
    order: i64,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl LaurentSeriesQ {
    pub fn zero(order: i64) -> Self {
        LaurentSeriesQ {
            offset: 0,
            coeffs: Vec::new(),
            order,
        }
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(BigRational::one(), 0, order)
    }

    pub fn monomial(c: BigRational, exponent: i64, order: i64) -> Self {
        Self::from_coeffs(exponent, vec![c], order)
    }

    /// Series with `coeffs[i]` at `q^(offset+i)`; entries past `order` are
    /// dropped.
    pub fn from_coeffs(offset: i64, mut coeffs: Vec<BigRational>, order: i64) -> Self {
        let keep = (order - offset + 1).max(0) as usize;
        coeffs.truncate(keep);
        let mut s = LaurentSeriesQ {
            offset,
            coeffs,
            order,
        };
        s.normalize();
        s
    }

    pub fn from_ints(offset: i64, coeffs: &[i64], order: i64) -> Self {
        Self::from_coeffs(offset, coeffs.iter().map(|&c| rat(c)).collect(), order)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.offset = 0;
            }
            Some(i) => {
                self.coeffs.drain(..i);
                self.offset += i as i64;
                while self.coeffs.last().is_some_and(Zero::is_zero) {
                    self.coeffs.pop();
                }
            }
        }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Exponent of the lowest nonzero known coefficient.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.offset)
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^e`, or `None` beyond the known order.
    pub fn coeff(&self, e: i64) -> Option<BigRational> {
        if e > self.order {
            return None;
        }
        let i = e - self.offset;
        Some(if i < 0 {
            BigRational::zero()
        } else {
            self.coeffs
                .get(i as usize)
                .cloned()
                .unwrap_or_else(BigRational::zero)
        })
    }

    /// Integer coefficients of `q^from ..= q^to`, if all are known integers.
    pub fn int_coeffs(&self, from: i64, to: i64) -> Option<Vec<i64>> {
        (from..=to)
            .map(|e| {
                let c = self.coeff(e)?;
                if c.is_integer() {
                    i64::try_from(c.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect()
    }

    /// Nonzero known terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.offset + i as i64, c))
    }

    /// Forget everything above `order` (never raises the order).
    pub fn truncate(&self, order: i64) -> Self {
        Self::from_coeffs(self.offset, self.coeffs.clone(), order.min(self.order))
    }

    /// Treat an exact Laurent polynomial as known to `order`. Only valid when
    /// `self` has no unknown terms, i.e. it came from an exact product.
    fn exact_to(&self, order: i64) -> Self {
        Self::from_coeffs(self.offset, self.coeffs.clone(), order)
    }

    /// First exponent at which the two series differ, within the range both
    /// know.
    pub fn mismatch(&self, other: &LaurentSeriesQ) -> Option<i64> {
        let hi = self.order.min(other.order);
        let lo = match (self.valuation(), other.valuation()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => return None,
        };
        (lo..=hi).find(|&e| self.coeff(e) != other.coeff(e))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(
            self.offset,
            self.coeffs.iter().map(|x| x * c).collect(),
            self.order,
        )
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeriesQ {
            offset: self.offset + k,
            coeffs: self.coeffs.clone(),
            order: self.order + k,
        }
    }

    pub fn mul_param(&self, p: &FormalParam) -> Self {
        self.scale(&p.scale).shift(p.qpow)
    }

    /// Multiplicative inverse. The result is known to `order - 2 v` where `v`
    /// is the valuation.
    pub fn inv(&self) -> Result<Self> {
        let v = self.valuation().ok_or(QError::NotInvertible)?;
        let n = self.order - v;
        let u = &self.coeffs;
        let u0_inv = u[0].recip();
        let mut b: Vec<BigRational> = Vec::with_capacity(n as usize + 1);
        b.push(u0_inv.clone());
        for k in 1..=n as usize {
            let mut acc = BigRational::zero();
            for i in 1..=k.min(u.len() - 1) {
                if !u[i].is_zero() {
                    acc += &u[i] * &b[k - i];
                }
            }
            b.push(-(acc * &u0_inv));
        }
        Ok(Self::from_coeffs(-v, b, self.order - 2 * v))
    }

    pub fn checked_div(&self, rhs: &LaurentSeriesQ) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = LaurentSeriesQ::one(i64::MAX / 4);
        for _ in 0..k {
            acc = &acc * self;
        }
        if k == 0 {
            acc.truncate(self.order)
        } else {
            acc
        }
    }

    /// `f(q) -> f(q^m)` for `m >= 1`.
    pub fn subst(&self, m: i64) -> Result<Self> {
        if m < 1 {
            return Err(QError::Domain(format!(
                "substitution q -> q^m needs m >= 1, got {m}"
            )));
        }
        let mut coeffs = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * m as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m as usize] = c.clone();
        }
        Ok(Self::from_coeffs(
            self.offset * m,
            coeffs,
            m * (self.order + 1) - 1,
        ))
    }

    /// Sum of an iterator of series; the result is known to the smallest
    /// order involved.
    pub fn sum<I: IntoIterator<Item = LaurentSeriesQ>>(terms: I, order: i64) -> Self {
        terms.into_iter().fold(Self::zero(order), |acc, t| &acc + &t)
    }

    /// Evaluate the known part as a Laurent polynomial at `q`.
    pub fn eval(&self, q: &ComplexHP, ctx: &NumericContext) -> Result<ComplexHP> {
        let bits = ctx.bits();
        let q = q.lift(bits);
        let mut acc = ComplexHP::zero(bits);
        let mut qe = q.powi(self.offset)?;
        for c in &self.coeffs {
            if !c.is_zero() {
                acc = &acc + &(&qe * &rational_to_complex(c, bits));
            }
            qe = &qe * &q;
        }
        Ok(acc)
    }

    /// Display with at most `max_terms` nonzero terms.
    pub fn to_short_string(&self, max_terms: usize) -> String {
        let mut out = String::new();
        let mut shown = 0;
        for (e, c) in self.terms() {
            if shown == max_terms {
                out.push_str(" + ...");
                break;
            }
            let (neg, mag) = (c.is_negative(), c.abs());
            if shown == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag.is_one();
            match (unit, e) {
                (_, 0) => out.push_str(&mag.to_string()),
                (true, 1) => out.push('q'),
                (true, _) => out.push_str(&format!("q^{e}")),
                (false, 1) => out.push_str(&format!("{mag}*q")),
                (false, _) => out.push_str(&format!("{mag}*q^{e}")),
            }
            shown += 1;
        }
        if shown == 0 {
            out.push('0');
        }
        out.push_str(&format!(" + O(q^{})", self.order + 1));
        out
    }
}

pub(crate) fn rational_to_complex(c: &BigRational, bits: usize) -> ComplexHP {
    let conv = |b: &BigInt| {
        let s = b.to_string();
        let i: dashu_int::IBig = s.parse().expect("decimal integer");
        Real::from(i).with_precision(bits).value()
    };
    let re = conv(c.numer()) / conv(c.denom());
    ComplexHP::new(re, Real::ZERO.with_precision(bits).value())
}

impl fmt::Display for LaurentSeriesQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_short_string(usize::MAX))
    }
}

impl<'a, 'b> Add<&'b LaurentSeriesQ> for &'a LaurentSeriesQ {
    type Output = LaurentSeriesQ;
    fn add(self, rhs: &'b LaurentSeriesQ) -> LaurentSeriesQ {
        let order = self.order.min(rhs.order);
        if self.coeffs.is_empty() {
            return rhs.truncate(order);
        }
        if rhs.coeffs.is_empty() {
            return self.truncate(order);
        }
        let lo = self.offset.min(rhs.offset);
        let hi = (self.offset + self.coeffs.len() as i64).max(rhs.offset + rhs.coeffs.len() as i64);
        let mut coeffs = vec![BigRational::zero(); (hi - lo) as usize];
        for (s, o) in [(self, self.offset), (rhs, rhs.offset)] {
            for (i, c) in s.coeffs.iter().enumerate() {
                coeffs[(o - lo) as usize + i] += c;
            }
        }
        LaurentSeriesQ::from_coeffs(lo, coeffs, order)
    }
}

impl Neg for &LaurentSeriesQ {
    type Output = LaurentSeriesQ;
    fn neg(self) -> LaurentSeriesQ {
        LaurentSeriesQ {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            order: self.order,
        }
    }
}

impl<'a, 'b> Sub<&'b LaurentSeriesQ> for &'a LaurentSeriesQ {
    type Output = LaurentSeriesQ;
    fn sub(self, rhs: &'b LaurentSeriesQ) -> LaurentSeriesQ {
        self + &(-rhs)
    }
}

impl<'a, 'b> Mul<&'b LaurentSeriesQ> for &'a LaurentSeriesQ {
    type Output = LaurentSeriesQ;
    fn mul(self, rhs: &'b LaurentSeriesQ) -> LaurentSeriesQ {
        // an unknown term O(q^(N+1)) of one factor meets the lowest term of the other
        let va = self.valuation().unwrap_or(self.order + 1);
        let vb = rhs.valuation().unwrap_or(rhs.order + 1);
        let order = (self.order + vb).min(rhs.order + va);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return LaurentSeriesQ::zero(order);
        }
        let offset = self.offset + rhs.offset;
        let len = ((order - offset + 1).max(0) as usize).min(self.coeffs.len() + rhs.coeffs.len() - 1);
        let mut coeffs = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentSeriesQ::from_coeffs(offset, coeffs, order)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<LaurentSeriesQ> for LaurentSeriesQ {
            type Output = LaurentSeriesQ;
            fn $m(self, rhs: LaurentSeriesQ) -> LaurentSeriesQ { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a LaurentSeriesQ> for LaurentSeriesQ {
            type Output = LaurentSeriesQ;
            fn $m(self, rhs: &'a LaurentSeriesQ) -> LaurentSeriesQ { (&self).$m(rhs) }
        }
        impl<'a> $tr<LaurentSeriesQ> for &'a LaurentSeriesQ {
            type Output = LaurentSeriesQ;
            fn $m(self, rhs: LaurentSeriesQ) -> LaurentSeriesQ { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LaurentSeriesQ {
    type Output = LaurentSeriesQ;
    fn neg(self) -> LaurentSeriesQ {
        -&self
    }
}

/// Exponents `j + base k` of the factors `(1 - s q^(j + base k))` of
/// `(alpha; q^base)_n` that can influence coefficients up to `order`, and
/// the total degree deficit contributed by negative exponents.
fn factor_exponents(alpha: &FormalParam, base: i64, n: PochIndex, order: i64) -> (Vec<i64>, i64) {
    let j = alpha.qpow;
    match n {
        PochIndex::Finite(n) if n >= 0 => {
            let exps: Vec<i64> = (0..n).map(|k| j + base * k).collect();
            let slack = exps.iter().filter(|&&e| e < 0).map(|e| -e).sum();
            (exps, slack)
        }
        PochIndex::Finite(n) => {
            let exps: Vec<i64> = (1..=-n).map(|k| j - base * k).collect();
            let slack = exps.iter().filter(|&&e| e < 0).map(|e| -e).sum();
            (exps, slack)
        }
        PochIndex::Infinite => {
            let neg: i64 = (0..)
                .map(|k| j + base * k)
                .take_while(|&e| e < 0)
                .map(|e| -e)
                .sum();
            let exps = (0..)
                .map(|k| j + base * k)
                .take_while(|&e| e <= order + neg)
                .collect();
            (exps, neg)
        }
    }
}

fn product_of_factors(scale: &BigRational, exps: &[i64], cap: i64) -> LaurentSeriesQ {
    let one = BigRational::one();
    let mut acc = LaurentSeriesQ::one(i64::MAX / 4);
    for &e in exps {
        let factor = if e == 0 {
            LaurentSeriesQ::monomial(&one - scale, 0, i64::MAX / 4)
        } else if e > 0 {
            let mut c = vec![BigRational::zero(); e as usize + 1];
            c[0] = one.clone();
            c[e as usize] = -scale.clone();
            LaurentSeriesQ::from_coeffs(0, c, i64::MAX / 4)
        } else {
            let mut c = vec![BigRational::zero(); (-e) as usize + 1];
            c[0] = -scale.clone();
            c[(-e) as usize] = one.clone();
            LaurentSeriesQ::from_coeffs(e, c, i64::MAX / 4)
        };
        acc = (&acc * &factor).truncate(cap).exact_to(i64::MAX / 4);
    }
    acc
}

/// `(alpha; q^base)_n` expanded to `order`. Negative `n` is the reciprocal
/// of a finite product.
pub fn poch_series_base(alpha: &FormalParam, base: i64, n: PochIndex, order: i64) -> Result<LaurentSeriesQ> {
    if base < 1 {
        return Err(QError::Domain(format!(
            "product base q^{base} must have a positive exponent"
        )));
    }
    let (exps, slack) = factor_exponents(alpha, base, n, order);
    if matches!(n, PochIndex::Finite(k) if k < 0) {
        return invert_factors(alpha, &exps, order);
    }
    let p = product_of_factors(&alpha.scale, &exps, order + slack);
    Ok(p.truncate(order))
}

fn invert_factors(alpha: &FormalParam, exps: &[i64], order: i64) -> Result<LaurentSeriesQ> {
    if alpha.scale.is_one() && exps.contains(&0) {
        return Err(QError::NonFormalUnit(format!(
            "1 - {}",
            FormalParam::new(alpha.scale.clone(), 0)
        )));
    }
    if let [e] = exps {
        if *e > 0 {
            // geometric series
            let mut c = vec![BigRational::zero(); order.max(0) as usize + 1];
            let mut p = BigRational::one();
            for j in (0..=order.max(0)).step_by(*e as usize) {
                c[j as usize] = p.clone();
                p = &p * &alpha.scale;
            }
            return Ok(LaurentSeriesQ::from_coeffs(0, c, order));
        }
    }
    // the product has valuation -slack, so it must be known to order - 2 slack
    let slack: i64 = exps.iter().filter(|&&e| e < 0).map(|e| -e).sum();
    let p = product_of_factors(&alpha.scale, exps, order - slack).truncate(order - 2 * slack);
    Ok(p.inv()?.truncate(order))
}

/// `(alpha; q)_n` expanded to `order`.
pub fn poch_series(alpha: &FormalParam, n: PochIndex, order: i64) -> Result<LaurentSeriesQ> {
    poch_series_base(alpha, 1, n, order)
}

/// `1 / (alpha; q^base)_n` expanded to `order`; fails with `NonFormalUnit`
/// when a factor is the constant zero.
pub fn poch_series_inv_base(
    alpha: &FormalParam,
    base: i64,
    n: PochIndex,
    order: i64,
) -> Result<LaurentSeriesQ> {
    if base < 1 {
        return Err(QError::Domain(format!(
            "product base q^{base} must have a positive exponent"
        )));
    }
    let (exps, slack) = factor_exponents(alpha, base, n, order);
    match n {
        PochIndex::Finite(k) if k < 0 => {
            Ok(product_of_factors(&alpha.scale, &exps, order + slack).truncate(order))
        }
        _ => invert_factors(alpha, &exps, order),
    }
}

/// `1 / (alpha; q)_n` expanded to `order`.
pub fn poch_series_inv(alpha: &FormalParam, n: PochIndex, order: i64) -> Result<LaurentSeriesQ> {
    poch_series_inv_base(alpha, 1, n, order)
}

/// Gaussian binomial `[n, k]_q` as an exact polynomial, known to `order`.
pub fn gauss_binom_poly(n: i64, k: i64, order: i64) -> Result<LaurentSeriesQ> {
    if n < 0 {
        return Err(QError::Domain(format!("[n, k]_q needs n >= 0, got {n}")));
    }
    if k < 0 || k > n {
        return Ok(LaurentSeriesQ::zero(order));
    }
    // row[j] holds the coefficient list of [m, j]
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for m in 1..=n as usize {
        let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(m + 1);
        for j in 0..=m {
            // [m, j] = [m-1, j-1] + q^j [m-1, j]
            let mut c: Vec<BigInt> = if j >= 1 { row[j - 1].clone() } else { Vec::new() };
            if j < m {
                let shifted = &row[j];
                if c.len() < shifted.len() + j {
                    c.resize(shifted.len() + j, BigInt::zero());
                }
                for (i, v) in shifted.iter().enumerate() {
                    c[i + j] += v;
                }
            }
            next.push(c);
        }
        row = next;
    }
    let coeffs = row[k as usize]
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    Ok(LaurentSeriesQ::from_coeffs(0, coeffs, order))
}

/// Expansion of a theta-type sum with a formal `x` to `order`.
pub fn theta_series(spec: &ThetaSumSpec<FormalParam>, order: i64) -> Result<LaurentSeriesQ> {
    spec.validate()?;
    let x = spec.x.clone().unwrap_or_else(|| FormalParam::int(1, 0));
    if x.scale.is_zero() {
        return Err(QError::Domain("theta sum needs x != 0".into()));
    }
    let exponent = |n: i64| spec.exponent(n) + x.qpow * n;
    let mut terms: Vec<(i64, BigRational)> = Vec::new();
    let mut visit = |n: i64| -> Result<()> {
        let e = exponent(n);
        if e <= order {
            let mut c = x.pow(n)?.scale * rat(spec.weight.at(n));
            if spec.alternating && n % 2 != 0 {
                c = -c;
            }
            terms.push((e, c));
        }
        Ok(())
    };
    // exponent(n) is a convex quadratic in n, so scan outward until it
    // exceeds the order past the vertex
    let a = spec.quad as f64;
    let vertex = 0.5 - (spec.lin + x.qpow) as f64 / a;
    let mut n = 0i64;
    loop {
        if n as f64 > vertex && exponent(n) > order {
            break;
        }
        visit(n)?;
        n += 1;
    }
    if spec.support == crate::series::Support::Bilateral {
        let mut n = -1i64;
        loop {
            if (n as f64) < vertex && exponent(n) > order {
                break;
            }
            visit(n)?;
            n -= 1;
        }
    }
    let lo = terms.iter().map(|t| t.0).min().unwrap_or(0);
    let mut coeffs = vec![BigRational::zero(); (order - lo + 1).max(0) as usize];
    for (e, c) in terms {
        coeffs[(e - lo) as usize] += c;
    }
    Ok(LaurentSeriesQ::from_coeffs(lo, coeffs, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{Support, Weight};

    fn ints(s: &LaurentSeriesQ, to: i64) -> Vec<i64> {
        s.int_coeffs(0, to).unwrap()
    }

    #[test]
    fn euler_function_pentagonal_terms() {
        let p = poch_series(&FormalParam::int(1, 1), PochIndex::Infinite, 12).unwrap();
        assert_eq!(ints(&p, 12), vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]);
        assert_eq!(p.order(), 12);
        assert_eq!(p.coeff(13), None);
    }

    #[test]
    fn partition_numbers_from_inverse() {
        let p = poch_series_inv(&FormalParam::int(1, 1), PochIndex::Infinite, 10).unwrap();
        assert_eq!(ints(&p, 10), vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn zero_constant_factor_cannot_be_inverted() {
        let one = FormalParam::int(1, 0);
        assert!(matches!(
            poch_series_inv(&one, PochIndex::Finite(3), 10),
            Err(QError::NonFormalUnit(_))
        ));
        assert!(poch_series(&one, PochIndex::Finite(3), 10).unwrap().is_zero());
        assert_eq!(LaurentSeriesQ::zero(5).inv(), Err(QError::NotInvertible));
        // (q^2; q)_{-2} = 1/((1 - q)(1 - 1)) has a zero factor
        assert!(poch_series(&FormalParam::int(1, 2), PochIndex::Finite(-2), 10).is_err());
    }

    #[test]
    fn negative_index_products() {
        // (a q^j; q)_{-n} (a q^{j-n}; q)_n = 1
        let alpha = FormalParam::ratio(3, 2, 1);
        for n in 1..5 {
            let a = poch_series(&alpha, PochIndex::Finite(-n), 20).unwrap();
            let shifted = FormalParam::new(alpha.scale.clone(), alpha.qpow - n);
            let b = poch_series(&shifted, PochIndex::Finite(n), 40).unwrap();
            let prod = &a * &b;
            assert!(prod.order() >= 20 - 2 * n);
            assert_eq!(prod.mismatch(&LaurentSeriesQ::one(100)), None);
        }
    }

    #[test]
    fn order_bookkeeping() {
        let a = LaurentSeriesQ::from_ints(0, &[1, 2, 3], 10);
        let b = LaurentSeriesQ::from_ints(2, &[1, 1], 5);
        assert_eq!((&a * &b).order(), 5);
        assert_eq!((&a + &b).order(), 5);
        let c = LaurentSeriesQ::from_ints(-1, &[2, 1], 6);
        assert_eq!(c.inv().unwrap().order(), 8);
        assert_eq!(c.inv().unwrap().valuation(), Some(1));
        assert_eq!(a.subst(3).unwrap().order(), 32);
        assert!(a.subst(0).is_err());
    }

    #[test]
    fn gaussian_binomial_rows() {
        let g = gauss_binom_poly(4, 2, 10).unwrap();
        assert_eq!(ints(&g, 4), vec![1, 1, 2, 1, 1]);
        assert!(gauss_binom_poly(3, 4, 10).unwrap().is_zero());
        // value at q = 1 is the ordinary binomial
        let g = gauss_binom_poly(10, 4, 100).unwrap();
        let total: i64 = ints(&g, 24).iter().sum();
        assert_eq!(total, 210);
    }

    #[test]
    fn theta_series_jacobi_cubed() {
        let spec = ThetaSumSpec {
            quad: 1,
            lin: 1,
            alternating: true,
            weight: Weight::Linear { c0: 1, c1: 2 },
            x: None,
            support: Support::Unilateral,
        };
        let t = theta_series(&spec, 10).unwrap();
        assert_eq!(ints(&t, 10), vec![1, -3, 0, 5, 0, 0, -7, 0, 0, 0, 9]);
        let e = poch_series(&FormalParam::int(1, 1), PochIndex::Infinite, 10).unwrap();
        assert_eq!(t.mismatch(&e.pow(3)), None);
    }

    #[test]
    fn display() {
        let s = LaurentSeriesQ::from_coeffs(
            -1,
            vec![rat(2), rat(0), BigRational::new((-1).into(), 3.into()), rat(1)],
            5,
        );
        assert_eq!(s.to_string(), "2*q^-1 - 1/3*q + q^2 + O(q^6)");
        assert_eq!(LaurentSeriesQ::zero(3).to_string(), "0 + O(q^4)");
    }
}
