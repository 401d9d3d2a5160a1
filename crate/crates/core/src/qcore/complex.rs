use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use dashu_float::ops::SquareRoot;
use dashu_float::round::mode::HalfEven;
use dashu_float::{DBig, FBig};
use dashu_int::ops::{BitTest, UnsignedAbs};
use num_complex::Complex64;

use crate::error::{QError, Result};

/// Binary arbitrary-precision real.
pub type Real = FBig<HalfEven, 2>;

const LOG10_2: f64 = std::f64::consts::LOG10_2;

pub(crate) fn real_from_f64(x: f64, bits: usize) -> Real {
    let r = Real::try_from(x).unwrap_or_else(|_| panic!("non-finite value {x}"));
    r.with_precision(bits.max(53)).value()
}

/// Best-effort log10 |x|; `-inf` for zero. Valid far outside the f64 range.
pub fn real_log10(x: &Real) -> f64 {
    if x.repr().is_zero() {
        return f64::NEG_INFINITY;
    }
    // leading 64 bits of the significand as f64, the rest as a power of two
    let sig = x.repr().significand().unsigned_abs();
    let shift = sig.bit_len().saturating_sub(64);
    let top = (sig >> shift).to_f64().value();
    (top.log2() + shift as f64 + x.repr().exponent() as f64) * LOG10_2
}

fn real_abs(x: &Real) -> Real {
    if x.repr().sign() == dashu_int::Sign::Negative {
        -x.clone()
    } else {
        x.clone()
    }
}

/// Complex number with real and imaginary parts in binary floating point of
/// a chosen precision.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexHP {
    re: Real,
    im: Real,
}

impl ComplexHP {
    pub fn new(re: Real, im: Real) -> Self {
        ComplexHP { re, im }
    }

    pub fn from_f64(re: f64, im: f64, bits: usize) -> Self {
        ComplexHP {
            re: real_from_f64(re, bits),
            im: real_from_f64(im, bits),
        }
    }

    pub fn from_c64(z: Complex64, bits: usize) -> Self {
        Self::from_f64(z.re, z.im, bits)
    }

    pub fn from_i64(n: i64, bits: usize) -> Self {
        ComplexHP {
            re: Real::from(n).with_precision(bits).value(),
            im: real_from_f64(0.0, bits),
        }
    }

    /// Parse `re`, `re+imi`, `re-imi` or `imi` with decimal components, e.g.
    /// `0.3`, `-1.5e-2+0.25i`, `2i`. Decimal digits are rounded once, to
    /// `bits`.
    pub fn parse(text: &str, bits: usize) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || QError::Domain(format!("invalid complex number `{text}`"));
        let real = |t: &str| -> Result<Real> {
            let t = t.strip_prefix('+').unwrap_or(t);
            let (neg, body) = match t.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, t),
            };
            if body.is_empty() || body.starts_with(['+', '-']) {
                return Err(bad());
            }
            let d: DBig = body.parse().map_err(|_| bad())?;
            let r = d
                .with_base_and_precision::<2>(bits)
                .value()
                .with_rounding::<HalfEven>();
            Ok(if neg { -r } else { r })
        };
        let zero = || real_from_f64(0.0, bits);
        let Some(body) = s.strip_suffix('i') else {
            return Ok(ComplexHP::new(real(&s)?, zero()));
        };
        // the split point is a sign that does not follow an exponent marker
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && !matches!(body.as_bytes()[i - 1], b'e' | b'E'))
            .map(|(i, _)| i)
            .last();
        let one_if_bare = |t: &str| match t {
            "" | "+" => "1".to_string(),
            "-" => "-1".to_string(),
            t => t.to_string(),
        };
        match split {
            Some(i) => Ok(ComplexHP::new(real(&body[..i])?, real(&one_if_bare(&body[i..]))?)),
            None => Ok(ComplexHP::new(zero(), real(&one_if_bare(body))?)),
        }
    }

    pub fn zero(bits: usize) -> Self {
        Self::from_i64(0, bits)
    }

    pub fn one(bits: usize) -> Self {
        Self::from_i64(1, bits)
    }

    pub fn re(&self) -> &Real {
        &self.re
    }

    pub fn im(&self) -> &Real {
        &self.im
    }

    pub fn precision(&self) -> usize {
        self.re.precision().max(self.im.precision())
    }

    /// Round (or exactly extend) both parts to `bits` of precision.
    pub fn with_precision(&self, bits: usize) -> Self {
        ComplexHP {
            re: self.re.clone().with_precision(bits).value(),
            im: self.im.clone().with_precision(bits).value(),
        }
    }

    /// Raise precision to at least `bits` without rounding anything away.
    pub fn lift(&self, bits: usize) -> Self {
        if self.re.precision() >= bits && self.im.precision() >= bits {
            self.clone()
        } else {
            self.with_precision(bits.max(self.precision()))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.repr().is_zero() && self.im.repr().is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexHP {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Real {
        let n = self.norm_sqr();
        if n.repr().is_zero() {
            n
        } else {
            n.sqrt()
        }
    }

    /// log10 |z|, usable for magnitudes that under- or overflow f64.
    pub fn log10_abs(&self) -> f64 {
        let a = real_log10(&self.re);
        let b = real_log10(&self.im);
        let m = a.max(b);
        if m == f64::NEG_INFINITY {
            return m;
        }
        m + 0.5 * (1.0 + 10f64.powf(2.0 * (a.min(b) - m))).log10()
    }

    /// |z| as f64, for control flow only.
    pub fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().value(), self.im.to_f64().value())
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        let k = Real::from(k);
        ComplexHP {
            re: &self.re * &k,
            im: &self.im * &k,
        }
    }

    pub fn checked_div(&self, rhs: &ComplexHP) -> Result<ComplexHP> {
        if rhs.is_zero() {
            return Err(QError::Pole("division by zero".into()));
        }
        let d = rhs.norm_sqr();
        let re = (&self.re * &rhs.re + &self.im * &rhs.im) / &d;
        let im = (&self.im * &rhs.re - &self.re * &rhs.im) / &d;
        Ok(ComplexHP { re, im })
    }

    pub fn inv(&self) -> Result<ComplexHP> {
        ComplexHP::one(self.precision()).checked_div(self)
    }

    /// Integer power by repeated squaring; negative exponents invert.
    pub fn powi(&self, k: i64) -> Result<ComplexHP> {
        let mut base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = ComplexHP::one(self.precision());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Principal square root (branch cut along the negative real axis).
    pub fn sqrt(&self) -> ComplexHP {
        if self.is_zero() {
            return self.clone();
        }
        let r = self.abs();
        let two = Real::from(2);
        let t = ((&r + real_abs(&self.re)) / &two).sqrt();
        let s = &real_abs(&self.im) / (&two * &t);
        let im_neg = self.im.repr().sign() == dashu_int::Sign::Negative;
        if self.re.repr().sign() != dashu_int::Sign::Negative {
            ComplexHP {
                re: t,
                im: if im_neg { -s } else { s },
            }
        } else {
            ComplexHP {
                re: s,
                im: if im_neg { -t } else { t },
            }
        }
    }

    /// Scientific notation with `sig` significant digits per component.
    pub fn to_sci_string(&self, sig: usize) -> String {
        let re = format_real(&self.re, sig);
        if self.im.repr().is_zero() {
            return re;
        }
        let im = format_real(&real_abs(&self.im), sig);
        let sign = if self.im.repr().sign() == dashu_int::Sign::Negative {
            '-'
        } else {
            '+'
        };
        format!("{re}{sign}{im}i")
    }
}

/// Format a real in scientific notation, e.g. `-1.2500e-47`.
pub fn format_real(x: &Real, sig: usize) -> String {
    if x.repr().is_zero() {
        return "0".to_string();
    }
    let sig = sig.max(1);
    let d: DBig = x.to_decimal().value().with_precision(sig).value();
    let (mant, exp) = (d.repr().significand(), d.repr().exponent());
    let neg = mant.sign() == dashu_int::Sign::Negative;
    let mut digits = mant.unsigned_abs().to_string();
    // the significand may carry fewer digits than asked for, e.g. exact 0.5
    let e10 = exp + digits.len() as isize - 1;
    while digits.len() < sig {
        digits.push('0');
    }
    let sign = if neg { "-" } else { "" };
    let (head, tail) = digits.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{e10}")
    } else {
        format!("{sign}{head}.{tail}e{e10}")
    }
}

impl fmt::Display for ComplexHP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(17);
        f.write_str(&self.to_sci_string(sig))
    }
}

impl Neg for ComplexHP {
    type Output = ComplexHP;
    fn neg(self) -> ComplexHP {
        ComplexHP {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &ComplexHP {
    type Output = ComplexHP;
    fn neg(self) -> ComplexHP {
        -self.clone()
    }
}

impl<'a, 'b> Add<&'b ComplexHP> for &'a ComplexHP {
    type Output = ComplexHP;
    fn add(self, rhs: &'b ComplexHP) -> ComplexHP {
        ComplexHP {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a, 'b> Sub<&'b ComplexHP> for &'a ComplexHP {
    type Output = ComplexHP;
    fn sub(self, rhs: &'b ComplexHP) -> ComplexHP {
        ComplexHP {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a, 'b> Mul<&'b ComplexHP> for &'a ComplexHP {
    type Output = ComplexHP;
    fn mul(self, rhs: &'b ComplexHP) -> ComplexHP {
        ComplexHP {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<ComplexHP> for ComplexHP {
            type Output = ComplexHP;
            fn $m(self, rhs: ComplexHP) -> ComplexHP { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a ComplexHP> for ComplexHP {
            type Output = ComplexHP;
            fn $m(self, rhs: &'a ComplexHP) -> ComplexHP { (&self).$m(rhs) }
        }
        impl<'a> $tr<ComplexHP> for &'a ComplexHP {
            type Output = ComplexHP;
            fn $m(self, rhs: ComplexHP) -> ComplexHP { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;

    const BITS: usize = 300;

    fn c(re: f64, im: f64) -> ComplexHP {
        ComplexHP::from_f64(re, im, BITS)
    }

    fn close(a: &ComplexHP, b: &ComplexHP, log10_tol: f64) -> bool {
        (a - b).log10_abs() < log10_tol
    }

    #[test]
    fn field_operations() {
        let a = c(1.5, -2.0);
        let b = c(0.25, 3.0);
        let p = &a * &b;
        assert_eq!(p.to_c64(), Complex64::new(1.5 * 0.25 + 6.0, 4.5 - 0.5));
        let back = p.checked_div(&b).unwrap();
        assert!(close(&back, &a, -85.0));
        assert!(c(0.0, 0.0).inv().is_err());
    }

    #[test]
    fn powers_and_roots() {
        let z = c(0.3, 0.4);
        let z5 = z.powi(5).unwrap();
        let direct = &(&(&z * &z) * &(&z * &z)) * &z;
        assert!(close(&z5, &direct, -85.0));
        let zm3 = z.powi(-3).unwrap();
        assert!(close(&(&zm3 * &z.powi(3).unwrap()), &c(1.0, 0.0), -85.0));
        for w in [c(-4.0, 0.0), c(3.0, -4.0), c(-0.5, 0.1), c(2.0, 0.0)] {
            let r = w.sqrt();
            assert!(close(&(&r * &r), &w, -85.0));
            assert!(r.re().to_f64().value() >= 0.0);
        }
        assert_eq!(c(-4.0, 0.0).sqrt().to_c64(), Complex64::new(0.0, 2.0));
    }

    #[test]
    fn magnitudes_beyond_f64() {
        let tiny = c(1e-200, 0.0).powi(3).unwrap();
        assert!((tiny.log10_abs() + 600.0).abs() < 1e-3);
        assert_eq!(format_real(tiny.re(), 3), "1.00e-600");
        assert_eq!(format_real(c(-0.000125, 0.0).re(), 3), "-1.25e-4");
        assert_eq!(c(9.9999, 0.0).to_sci_string(2), "1.0e1");
        assert_eq!(c(1.0, -2.0).to_sci_string(2), "1.0e0-2.0e0i");
    }

    #[test]
    fn formatting_keeps_every_digit() {
        let q = ComplexHP::parse("0.3", BITS).unwrap();
        let s = &ComplexHP::one(BITS) - &q;
        assert_eq!((&s * &s).to_sci_string(25), "4.900000000000000000000000e-1");
        // the double nearest 0.1 printed exactly
        assert_eq!(c(0.1, 0.0).to_sci_string(20), "1.0000000000000000555e-1");
        assert_eq!(c(0.5, 0.0).to_sci_string(4), "5.000e-1");
        assert_eq!(c(-3.0, 0.0).to_sci_string(1), "-3e0");
    }

    #[test]
    fn parses_complex_literals() {
        let p = |s: &str| ComplexHP::parse(s, BITS).unwrap().to_c64();
        assert_eq!(p("2"), Complex64::new(2.0, 0.0));
        assert_eq!(p("-1.5e-2+0.25i"), Complex64::new(-0.015, 0.25));
        assert_eq!(p("0.5-i"), Complex64::new(0.5, -1.0));
        assert_eq!(p("-2i"), Complex64::new(0.0, -2.0));
        assert_eq!(p("1e+2-3E-1i"), Complex64::new(100.0, -0.3));
        // exact decimal input, not the nearest double
        let tenth = ComplexHP::parse("0.1", BITS).unwrap();
        assert!((&tenth.scale_i64(10) - &c(1.0, 0.0)).log10_abs() < -85.0);
        for bad in ["", "i+", "1..2", "--1", "x"] {
            assert!(ComplexHP::parse(bad, BITS).is_err(), "{bad}");
        }
    }
}
