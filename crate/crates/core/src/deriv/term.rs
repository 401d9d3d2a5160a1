use std::fmt;

use num_rational::BigRational;

use crate::error::{QError, Result};
use crate::formal::rational_to_complex;
use crate::qcore::{poch, ComplexHP, NumericContext, PochIndex};

/// An exponent or product length that may depend on the summation index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Index {
    Fixed(i64),
    /// `n + k`
    Shifted(i64),
}

impl Index {
    pub fn at(&self, n: i64) -> i64 {
        match *self {
            Index::Fixed(k) => k,
            Index::Shifted(k) => n + k,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Index::Fixed(k) => write!(f, "{k}"),
            Index::Shifted(0) => f.write_str("n"),
            Index::Shifted(k) if k > 0 => write!(f, "n+{k}"),
            Index::Shifted(k) => write!(f, "n-{}", -k),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochLen {
    Index(Index),
    Infinite,
}

impl fmt::Display for PochLen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PochLen::Index(i) => i.fmt(f),
            PochLen::Infinite => f.write_str("inf"),
        }
    }
}

/// One multiplicative factor of a term template.
#[derive(Debug, Clone, PartialEq)]
pub enum Factor {
    Num(BigRational),
    /// `(-1)^i`
    Sign(Index),
    /// `a^i`
    A(Index),
    /// `q^i`
    Q(Index),
    /// `x^i`
    X(Index),
    Poch(PochFactor),
}

/// `(alpha x; q)_len ^ exp` where `alpha` is a product of constant factors
/// and `x` is present when `with_x` is set.
#[derive(Debug, Clone, PartialEq)]
pub struct PochFactor {
    pub alpha: Vec<Factor>,
    pub with_x: bool,
    pub len: PochLen,
    pub exp: i64,
}

/// A term template `T(n)` of a series in `x`, as written in the term DSL.
#[derive(Debug, Clone, PartialEq)]
pub struct TermExpr {
    pub factors: Vec<Factor>,
}

/// `(alpha x; q)_n` raised to `eps = +-1` inside a bound term.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundPoch {
    pub alpha: ComplexHP,
    pub n: PochIndex,
    pub eps: i32,
}

/// `coeff * x^power * prod (alpha_i x; q)_{n_i}^{eps_i}` with everything
/// numeric except `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: ComplexHP,
    pub power: i64,
    pub factors: Vec<BoundPoch>,
}

fn write_power(f: &mut fmt::Formatter<'_>, sym: &str, i: &Index) -> fmt::Result {
    match i {
        Index::Fixed(1) => f.write_str(sym),
        _ => write!(f, "{sym}^{i}"),
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Num(r) => write!(f, "{r}"),
            Factor::Sign(i) => write!(f, "(-1)^{i}"),
            Factor::A(i) => write_power(f, "a", i),
            Factor::Q(i) => write_power(f, "q", i),
            Factor::X(i) => write_power(f, "x", i),
            Factor::Poch(p) => {
                f.write_str("poch(")?;
                let mut parts: Vec<String> = p.alpha.iter().map(ToString::to_string).collect();
                if p.with_x {
                    parts.push("x".into());
                }
                write!(f, "{})_{}", parts.join("*"), p.len)?;
                if p.exp != 1 {
                    write!(f, "^{}", p.exp)?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for TermExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" * "))
    }
}

fn constant_value(
    factor: &Factor,
    n: i64,
    a: &ComplexHP,
    q: &ComplexHP,
    ctx: &NumericContext,
) -> Result<ComplexHP> {
    let bits = ctx.bits();
    match factor {
        Factor::Num(r) => Ok(rational_to_complex(r, bits)),
        Factor::Sign(i) => Ok(ComplexHP::from_i64(if i.at(n) % 2 == 0 { 1 } else { -1 }, bits)),
        Factor::A(i) => a.lift(bits).powi(i.at(n)),
        Factor::Q(i) => q.lift(bits).powi(i.at(n)),
        Factor::X(_) | Factor::Poch(_) => unreachable!("not a constant factor"),
    }
}

impl TermExpr {
    /// Substitute the summation index and the parameters, leaving `x` free.
    pub fn bind(&self, n: i64, a: &ComplexHP, q: &ComplexHP, ctx: &NumericContext) -> Result<Term> {
        let bits = ctx.bits();
        let mut coeff = ComplexHP::one(bits);
        let mut power = 0i64;
        let mut factors = Vec::new();
        for factor in &self.factors {
            match factor {
                Factor::X(i) => power += i.at(n),
                Factor::Poch(p) => {
                    let mut alpha = ComplexHP::one(bits);
                    for c in &p.alpha {
                        alpha = &alpha * &constant_value(c, n, a, q, ctx)?;
                    }
                    let len = match p.len {
                        PochLen::Index(i) => PochIndex::Finite(i.at(n)),
                        PochLen::Infinite => PochIndex::Infinite,
                    };
                    if p.with_x {
                        let eps = p.exp.signum() as i32;
                        for _ in 0..p.exp.unsigned_abs() {
                            factors.push(BoundPoch {
                                alpha: alpha.clone(),
                                n: len,
                                eps,
                            });
                        }
                    } else {
                        let v = poch(&alpha, q, len, ctx)?;
                        coeff = &coeff
                            * &v.powi(p.exp)
                                .map_err(|_| QError::Pole(format!("constant factor {factor} vanishes")))?;
                    }
                }
                other => coeff = &coeff * &constant_value(other, n, a, q, ctx)?,
            }
        }
        Ok(Term {
            coeff,
            power,
            factors,
        })
    }

    /// True when no factor depends on the summation index.
    pub fn is_constant_in_n(&self) -> bool {
        let fixed = |i: &Index| matches!(i, Index::Fixed(_));
        self.factors.iter().all(|f| match f {
            Factor::Num(_) => true,
            Factor::Sign(i) | Factor::A(i) | Factor::Q(i) | Factor::X(i) => fixed(i),
            Factor::Poch(p) => {
                p.alpha.iter().all(|c| match c {
                    Factor::Sign(i) | Factor::A(i) | Factor::Q(i) => fixed(i),
                    _ => true,
                }) && !matches!(p.len, PochLen::Index(Index::Shifted(_)))
            }
        })
    }
}
