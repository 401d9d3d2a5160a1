use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::term::{Factor, Index, PochFactor, PochLen, TermExpr};
use crate::error::{QError, Result};
use crate::series::Support;

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col_base: usize,
}

fn expected(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

impl Parser {
    fn new(text: &str, line: usize, col_base: usize) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            line,
            col_base,
        }
    }

    fn err<T>(&self, items: &[&str]) -> Result<T> {
        Err(QError::Parse {
            line: self.line,
            column: self.col_base + self.pos + 1,
            expected: expected(items),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&[&c.to_string()])
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn uint(&mut self) -> Result<i64> {
        self.skip_ws();
        match self.digits() {
            Some(d) => d.parse().or_else(|_| self.err(&["integer that fits in 64 bits"])),
            None => self.err(&["integer"]),
        }
    }

    fn sint(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let v = self.uint()?;
        Ok(if neg { -v } else { v })
    }

    fn number(&mut self) -> Result<BigRational> {
        let neg = self.eat('-');
        self.skip_ws();
        let int_part = self.digits();
        let mut frac = String::new();
        if self.chars.get(self.pos) == Some(&'.') {
            self.pos += 1;
            frac = self.digits().unwrap_or_default();
        }
        if int_part.is_none() && frac.is_empty() {
            return self.err(&["number"]);
        }
        let mantissa: BigInt = format!("{}{}", int_part.unwrap_or_default(), frac)
            .parse()
            .expect("digits");
        let mut value = BigRational::new(mantissa, num_traits::pow(BigInt::from(10), frac.len()));
        // a rational literal like 3/4 has no space around the slash
        if self.chars.get(self.pos) == Some(&'/')
            && self.chars.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
            let den: BigInt = self.digits().expect("digit follows").parse().expect("digits");
            if den.is_zero() {
                self.pos -= 1;
                return self.err(&["nonzero denominator"]);
            }
            value /= BigRational::from_integer(den);
        }
        Ok(if neg { -value } else { value })
    }

    fn index(&mut self) -> Result<Index> {
        let save = self.pos;
        match self.ident().as_deref() {
            Some("n") => {
                if self.eat('+') {
                    Ok(Index::Shifted(self.uint()?))
                } else if self.eat('-') {
                    Ok(Index::Shifted(-self.uint()?))
                } else {
                    Ok(Index::Shifted(0))
                }
            }
            Some(_) => {
                self.pos = save;
                self.err(&["integer", "n"])
            }
            None => match self.peek() {
                Some(c) if c == '-' || c.is_ascii_digit() => Ok(Index::Fixed(self.sint()?)),
                _ => self.err(&["integer", "n"]),
            },
        }
    }

    fn opt_power(&mut self) -> Result<Index> {
        if self.eat('^') {
            self.index()
        } else {
            Ok(Index::Fixed(1))
        }
    }

    fn sign_factor(&mut self) -> Result<Factor> {
        self.expect('(')?;
        self.expect('-')?;
        if self.uint()? != 1 {
            return self.err(&["(-1)"]);
        }
        self.expect(')')?;
        self.expect('^')?;
        Ok(Factor::Sign(self.index()?))
    }

    /// A factor allowed inside `poch(...)`; `Ok(None)` signals a bare `x`.
    fn constant_atom(&mut self, allow_x: bool) -> Result<Option<Factor>> {
        const ATOMS: [&str; 5] = ["number", "(-1)^", "a", "q", "x"];
        match self.peek() {
            Some(c) if c == '-' || c == '.' || c.is_ascii_digit() => Ok(Some(Factor::Num(self.number()?))),
            Some('(') => Ok(Some(self.sign_factor()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let save = self.pos;
                match self.ident().as_deref() {
                    Some("a") => Ok(Some(Factor::A(self.opt_power()?))),
                    Some("q") => Ok(Some(Factor::Q(self.opt_power()?))),
                    Some("x") if allow_x => Ok(None),
                    _ => {
                        self.pos = save;
                        self.err(&ATOMS)
                    }
                }
            }
            _ => self.err(&ATOMS),
        }
    }

    fn poch(&mut self) -> Result<PochFactor> {
        self.expect('(')?;
        let mut alpha = Vec::new();
        let mut with_x = false;
        loop {
            match self.constant_atom(true)? {
                Some(f) => alpha.push(f),
                None => {
                    with_x = true;
                    break;
                }
            }
            if !self.eat('*') {
                break;
            }
        }
        if !self.eat(')') {
            return if with_x {
                self.err(&[")"])
            } else {
                self.err(&[")", "*"])
            };
        }
        self.expect('_')?;
        let save = self.pos;
        let len = if self.ident().as_deref() == Some("inf") {
            PochLen::Infinite
        } else {
            self.pos = save;
            PochLen::Index(self.index().or_else(|_| self.err(&["integer", "n", "inf"]))?)
        };
        let exp = if self.eat('^') { self.sint()? } else { 1 };
        if exp == 0 {
            return self.err(&["nonzero exponent"]);
        }
        Ok(PochFactor {
            alpha,
            with_x,
            len,
            exp,
        })
    }

    fn factor(&mut self) -> Result<Factor> {
        const START: [&str; 6] = ["number", "(-1)^", "a", "q", "x", "poch("];
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {
                let save = self.pos;
                match self.ident().as_deref() {
                    Some("a") => Ok(Factor::A(self.opt_power()?)),
                    Some("q") => Ok(Factor::Q(self.opt_power()?)),
                    Some("x") => Ok(Factor::X(self.opt_power()?)),
                    Some("poch") => Ok(Factor::Poch(self.poch()?)),
                    _ => {
                        self.pos = save;
                        self.err(&START)
                    }
                }
            }
            Some(_) => match self.constant_atom(false) {
                Ok(Some(f)) => Ok(f),
                _ => self.err(&START),
            },
            None => self.err(&START),
        }
    }

    fn term(&mut self) -> Result<TermExpr> {
        let mut factors = vec![self.factor()?];
        loop {
            if self.eat('*') {
                factors.push(self.factor()?);
            } else if self.eat('/') {
                let divisor = match self.factor()? {
                    Factor::Num(r) if !r.is_zero() => Factor::Num(BigRational::one() / r),
                    Factor::Poch(mut p) => {
                        p.exp = -p.exp;
                        Factor::Poch(p)
                    }
                    Factor::A(Index::Fixed(k)) => Factor::A(Index::Fixed(-k)),
                    Factor::Q(Index::Fixed(k)) => Factor::Q(Index::Fixed(-k)),
                    Factor::X(Index::Fixed(k)) => Factor::X(Index::Fixed(-k)),
                    _ => return self.err(&["nonzero number", "poch(", "fixed power of a, q or x"]),
                };
                factors.push(divisor);
            } else if self.peek().is_none() {
                return Ok(TermExpr { factors });
            } else {
                return self.err(&["*", "/", "end of input"]);
            }
        }
    }
}

/// Parse a term template such as `poch(a)_n * poch(q)_n^-1 * x^n`.
pub fn parse_term(text: &str) -> Result<TermExpr> {
    Parser::new(text, 1, 0).term()
}

fn parse_term_at(text: &str, line: usize, col_base: usize) -> Result<TermExpr> {
    Parser::new(text, line, col_base).term()
}

/// Contents of a derivative-check spec file.
#[derive(Debug, Clone, PartialEq)]
pub struct DcheckSpec {
    /// `T(n)`, the terms of the series in `x`
    pub term: TermExpr,
    /// `S(x)`, the closed-form cofactor of `(a x; q)_inf`
    pub cofactor: TermExpr,
    pub support: Support,
}

/// Parse a spec file made of `T(n) := ...`, `S := ...` and an optional
/// `support := unilateral|bilateral`. Blank lines and `#` comments are
/// ignored.
pub fn parse_dcheck_spec(text: &str) -> Result<DcheckSpec> {
    let mut term = None;
    let mut cofactor = None;
    let mut support = Support::Unilateral;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(split) = raw.find(":=") else {
            let col = raw.len() - raw.trim_start().len() + 1;
            return Err(QError::Parse {
                line,
                column: col,
                expected: expected(&["T(n) :=", "S :=", "support :="]),
            });
        };
        let key: String = raw[..split].chars().filter(|c| !c.is_whitespace()).collect();
        let rhs = &raw[split + 2..];
        let col_base = split + 2;
        match key.as_str() {
            "T(n)" => term = Some(parse_term_at(rhs, line, col_base)?),
            "S" => cofactor = Some(parse_term_at(rhs, line, col_base)?),
            "support" => {
                support = match rhs.trim() {
                    "unilateral" => Support::Unilateral,
                    "bilateral" => Support::Bilateral,
                    _ => {
                        return Err(QError::Parse {
                            line,
                            column: col_base + rhs.len() - rhs.trim_start().len() + 1,
                            expected: expected(&["unilateral", "bilateral"]),
                        })
                    }
                }
            }
            _ => {
                return Err(QError::Parse {
                    line,
                    column: raw.len() - raw.trim_start().len() + 1,
                    expected: expected(&["T(n)", "S", "support"]),
                })
            }
        }
    }
    let missing = |what: &str| QError::Parse {
        line: last_line + 1,
        column: 1,
        expected: vec![what.to_string()],
    };
    Ok(DcheckSpec {
        term: term.ok_or_else(|| missing("T(n) :="))?,
        cofactor: cofactor.ok_or_else(|| missing("S :="))?,
        support,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sample_term() {
        let t = parse_term("poch(x)_3").unwrap();
        assert_eq!(
            t.factors,
            vec![Factor::Poch(PochFactor {
                alpha: vec![],
                with_x: true,
                len: PochLen::Index(Index::Fixed(3)),
                exp: 1
            })]
        );
        let t = parse_term("2 * x^2 * poch(0.5*x)_inf^-1").unwrap();
        assert_eq!(t.factors.len(), 3);
        assert_eq!(t.to_string(), "2 * x^2 * poch(1/2*x)_inf^-1");
        let t = parse_term("poch(a)_n / poch(q)_n * x^n").unwrap();
        assert_eq!(t.to_string(), "poch(a)_n * poch(q)_n^-1 * x^n");
    }

    #[test]
    fn reports_error_position() {
        match parse_term("poch(x") {
            Err(QError::Parse {
                line,
                column,
                expected,
            }) => {
                assert_eq!((line, column), (1, 7));
                assert_eq!(expected, vec![")".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_term("2 + x"),
            Err(QError::Parse { column: 3, .. })
        ));
        assert!(matches!(
            parse_term("poch(x)_"),
            Err(QError::Parse { column: 9, .. })
        ));
        assert!(parse_term("").is_err());
        assert!(parse_term("y").is_err());
    }

    #[test]
    fn spec_files() {
        let text = "# 1phi0\nT(n) := poch(a)_n * poch(q)_n^-1 * x^n\nS := poch(x)_inf^-1\n";
        let spec = parse_dcheck_spec(text).unwrap();
        assert_eq!(spec.support, Support::Unilateral);
        assert_eq!(spec.cofactor.to_string(), "poch(x)_inf^-1");
        let bad = "T(n) := x^n\nS := poch(x\n";
        assert!(matches!(
            parse_dcheck_spec(bad),
            Err(QError::Parse {
                line: 2,
                column: 12,
                ..
            })
        ));
        assert!(parse_dcheck_spec("T(n) := x^n\n").is_err());
        assert!(parse_dcheck_spec("T(n) := x\nS := x\nsupport := both\n").is_err());
    }
}
