//! Euler's identities and the q-binomial theorem with their derivatives.

use num_complex::Complex64;

use crate::error::{QError, Result};
use crate::formal::{gauss_binom_poly, FormalParam, LaurentSeriesQ};

use super::eval::*;
use super::{Expected, FormalSpec, IdentityRecord, Mode, NumericSpec, ParamAssignment};

/// `x^(n-1) / (q;q)_n` for `n = 1, 2, ...`, advanced one step per call.
struct EulerTerms {
    u: C,
}

impl EulerTerms {
    fn next(&mut self, e: &Ev, x: &C, n: i64) -> Result<C> {
        self.u = if n == 1 {
            div(&e.one(), &om(&e.q))?
        } else {
            div(&(&self.u * x), &om(&e.qp(n)?))?
        };
        Ok(self.u.clone())
    }
}

fn formal_x_positive(asg: &ParamAssignment) -> Result<FormalParam> {
    let x = asg.formal("x")?;
    if x.qpow < 1 {
        return Err(QError::Domain(format!(
            "formal x = {x} must carry a positive power of q"
        )));
    }
    Ok(x)
}

fn euler_cases(order: i64) -> Vec<super::FormalCase> {
    [
        fq(1, 1),
        fq(2, 1),
        FormalParam::ratio(-1, 3, 1),
        fq(1, 2),
        FormalParam::ratio(5, 2, 3),
    ]
    .into_iter()
    .map(|x| case(ParamAssignment::new().with("x", formal_value(x)), order))
    .collect()
}

fn euler_exp() -> IdentityRecord {
    IdentityRecord {
        id: "euler-exp",
        citation: "Euler's q-exponential identity",
        quote: "sum_{n>=0} x^n / (q;q)_n = 1 / (x;q)_inf",
        params: &[("x", "|x| < 1"), ("q", "0 < |q| < 1")],
        modes: &[Mode::Numeric, Mode::Formal],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                d.complex("x", 0.0, 0.9);
            },
            admissible: always,
            guards: no_guards,
            lhs: |a, c| {
                run(a, c, |e| {
                    let x = e.p("x")?;
                    let mut t = EulerTerms { u: e.one() };
                    e.sum(0, |n| {
                        if n == 0 {
                            Ok(e.one())
                        } else {
                            Ok(&t.next(e, &x, n)? * &x)
                        }
                    })
                })
            },
            rhs: |a, c| run(a, c, |e| div(&e.one(), &e.inf(&[e.p("x")?])?)),
        }),
        formal: Some(FormalSpec {
            cases: euler_cases,
            lhs: |a, order| {
                let x = formal_x_positive(a)?;
                let mut terms = Vec::new();
                let mut n = 0;
                while n * x.qpow <= order {
                    terms.push(&x.pow(n)?.to_series(order) * &pfin_inv(&fq(1, 1), n, order)?);
                    n += 1;
                }
                Ok(LaurentSeriesQ::sum(terms, order))
            },
            rhs: |a, order| pinf_inv(&formal_x_positive(a)?, 1, order),
        }),
    }
}

fn euler_exp_dx() -> IdentityRecord {
    IdentityRecord {
        id: "euler-exp-dx",
        citation: "Euler's q-exponential identity, ordinary derivative in x",
        quote: "sum_{n>=1} n x^(n-1) / (q;q)_n = 1/(x;q)_inf * sum_{n>=0} q^n / (1 - x q^n)",
        params: &[("x", "|x| < 1"), ("q", "0 < |q| < 1")],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                d.complex("x", 0.0, 0.9);
            },
            admissible: always,
            guards: no_guards,
            lhs: |a, c| {
                run(a, c, |e| {
                    let x = e.p("x")?;
                    let mut t = EulerTerms { u: e.one() };
                    e.sum(1, |n| Ok(t.next(e, &x, n)?.scale_i64(n)))
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let x = e.p("x")?;
                    let mut qn = e.one();
                    let s = e.sum(0, |n| {
                        if n > 0 {
                            qn = &qn * &e.q;
                        }
                        div(&qn, &om(&(&x * &qn)))
                    })?;
                    div(&s, &e.inf(&[x])?)
                })
            },
        }),
        formal: None,
    }
}

fn euler_exp_dqx() -> IdentityRecord {
    IdentityRecord {
        id: "euler-exp-dqx",
        citation: "Euler's q-exponential identity, Jackson q-derivative in x",
        quote: "sum_{n>=1} (1 - q^n)/(1 - q) x^(n-1) / (q;q)_n = 1 / ((1 - q) (x;q)_inf)",
        params: &[("x", "|x| < 1"), ("q", "0 < |q| < 1")],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                d.complex("x", 0.0, 0.9);
            },
            admissible: always,
            guards: no_guards,
            lhs: |a, c| {
                run(a, c, |e| {
                    let x = e.p("x")?;
                    let mut t = EulerTerms { u: e.one() };
                    let w = om(&e.q);
                    e.sum(1, |n| div(&(&om(&e.qp(n)?) * &t.next(e, &x, n)?), &w))
                })
            },
            rhs: |a, c| run(a, c, |e| div(&e.one(), &(&om(&e.q) * &e.inf(&[e.p("x")?])?))),
        }),
        formal: None,
    }
}

fn qbinom_thm_order(n: i64) -> i64 {
    c2(n) + 2 * n + 1
}

fn qbinom_thm() -> IdentityRecord {
    IdentityRecord {
        id: "qbinom-thm",
        citation: "q-binomial theorem",
        quote: "(x;q)_n = sum_{k=0}^{n} [n,k] (-1)^k q^(k(k-1)/2) x^k",
        params: &[("x", "any"), ("n", "integer n >= 0"), ("q", "any")],
        modes: &[Mode::ExactPoly, Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "exact for 0 <= n <= 20 over x in {1, -1, q^2, -q/2, 3/q}",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                d.int("n", 0, 20);
                d.complex("x", 0.2, 3.0);
            },
            admissible: always,
            guards: no_guards,
            lhs: |a, c| run(a, c, |e| e.fin(&[e.p("x")?], e.n("n")?)),
            rhs: |a, c| {
                run(a, c, |e| {
                    let (x, n) = (e.p("x")?, e.n("n")?);
                    e.fsum(0, n, |k| {
                        let t = &(&e.qbinom(n, k)? * &e.qp(c2(k))?) * &x.powi(k)?;
                        Ok(t.scale_i64(sgn(k)))
                    })
                })
            },
        }),
        formal: Some(FormalSpec {
            cases: |_| {
                let xs = [
                    fq(1, 0),
                    fq(-1, 0),
                    fq(1, 2),
                    FormalParam::ratio(-1, 2, 1),
                    fq(3, -1),
                ];
                let mut out = Vec::new();
                for n in 0..=20 {
                    for x in &xs {
                        let asg = ParamAssignment::new()
                            .with("x", formal_value(x.clone()))
                            .with("n", int_value(n));
                        out.push(case(asg, qbinom_thm_order(n)));
                    }
                }
                out
            },
            lhs: |a, order| pfin(&a.formal("x")?, a.int("n")?, order),
            rhs: |a, order| {
                let (x, n) = (a.formal("x")?, a.int("n")?);
                let wide = order + 4 * n + 4;
                let mut terms = Vec::new();
                for k in 0..=n {
                    let t = &gauss_binom_poly(n, k, wide)? * &x.pow(k)?.to_series(wide);
                    terms.push(t.shift(c2(k)).scale(&rat(sgn(k))));
                }
                Ok(LaurentSeriesQ::sum(terms, order))
            },
        }),
    }
}

fn qbinom_dx_at_qm() -> IdentityRecord {
    IdentityRecord {
        id: "qbinom-dx-at-qm",
        citation: "q-binomial theorem, derivative at x = q^-m",
        quote: "sum_{k=1}^{n} k (-1)^k q^(k(k-1)/2) [n,k] q^(-mk) \
                = (-1)^(m+1) q^(-m(m+1)/2) (q;q)_m (q;q)_(n-m-1)",
        params: &[("n", "integer n >= 1"), ("m", "integer 0 <= m <= n-1")],
        modes: &[Mode::ExactPoly],
        expected: Expected::Pass,
        companion: None,
        notes: "Laurent polynomials in q, exact for 1 <= n <= 12.",
        numeric: None,
        formal: Some(FormalSpec {
            cases: |_| {
                let mut out = Vec::new();
                for n in 1..=12 {
                    for m in 0..n {
                        let asg = ParamAssignment::new()
                            .with("n", int_value(n))
                            .with("m", int_value(m));
                        out.push(case(asg, c2(n) + 1));
                    }
                }
                out
            },
            lhs: |a, order| {
                let (n, m) = (a.int("n")?, a.int("m")?);
                let wide = order + m * n + 1;
                let terms = (1..=n)
                    .map(|k| {
                        Ok(gauss_binom_poly(n, k, wide)?
                            .shift(c2(k) - m * k)
                            .scale(&rat(k * sgn(k))))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(LaurentSeriesQ::sum(terms, order))
            },
            rhs: |a, order| {
                let (n, m) = (a.int("n")?, a.int("m")?);
                if !(0..n).contains(&m) {
                    return Err(QError::Domain(format!(
                        "need 0 <= m <= n-1, got n = {n}, m = {m}"
                    )));
                }
                let wide = order + c2(m + 1);
                let p = &pfin(&fq(1, 1), m, wide)? * &pfin(&fq(1, 1), n - m - 1, wide)?;
                Ok(p.shift(-c2(m + 1)).scale(&rat(sgn(m + 1))).truncate(order))
            },
        }),
    }
}

fn qbinom_dx_sum() -> IdentityRecord {
    IdentityRecord {
        id: "qbinom-dx-sum",
        citation: "q-binomial theorem, derivative form",
        quote: "sum_{k=1}^{n} k [n,k] q^(k(k-1)/2) (-ax)^(k-1) = (ax;q)_n sum_{k=0}^{n-1} q^k / (1 - ax q^k)",
        params: &[
            ("a", "any"),
            ("x", "any"),
            ("n", "integer n >= 1"),
            ("q", "0 < |q| < 1"),
        ],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                d.int("n", 1, 12);
                d.complex("a", 0.2, 2.0);
                d.complex("x", 0.2, 2.0);
            },
            admissible: always,
            guards: |a| vec![g(f(a, "a") * f(a, "x"), 0, a.int("n").unwrap_or(0))],
            lhs: |a, c| {
                run(a, c, |e| {
                    let n = e.n("n")?;
                    let w = -&(&e.p("a")? * &e.p("x")?);
                    e.fsum(1, n, |k| {
                        let t = &(&e.qbinom(n, k)? * &e.qp(c2(k))?) * &w.powi(k - 1)?;
                        Ok(t.scale_i64(k))
                    })
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let n = e.n("n")?;
                    let ax = &e.p("a")? * &e.p("x")?;
                    let s = e.fsum(0, n - 1, |k| {
                        let qk = e.qp(k)?;
                        div(&qk, &om(&(&ax * &qk)))
                    })?;
                    Ok(&e.fin(&[ax], n)? * &s)
                })
            },
        }),
        formal: None,
    }
}

fn eisenstein() -> IdentityRecord {
    IdentityRecord {
        id: "eisenstein",
        citation: "divisor-function corollary of the q-binomial theorem",
        quote: "sum_{k>=0} k (-1)^k q^(k(k+1)/2) / (q;q)_k = -(q;q)_inf sum_{k>=1} d(k) q^k",
        params: &[],
        modes: &[Mode::Formal],
        expected: Expected::Pass,
        companion: None,
        notes: "d(k) is the number of divisors of k",
        numeric: None,
        formal: Some(FormalSpec {
            cases: |order| vec![case(ParamAssignment::new(), order)],
            lhs: |_, order| {
                let mut terms = Vec::new();
                let mut k = 1;
                while k * (k + 1) / 2 <= order {
                    let t = pfin_inv(&fq(1, 1), k, order)?
                        .shift(k * (k + 1) / 2)
                        .scale(&rat(k * sgn(k)));
                    terms.push(t);
                    k += 1;
                }
                Ok(LaurentSeriesQ::sum(terms, order))
            },
            rhs: |_, order| Ok(-&(&pinf(&fq(1, 1), 1, order)? * &divisor_series(order)?)),
        }),
    }
}

/// `sum_{k>=1} q^k / (1 - q^k)` to `order`.
fn lambert_series(order: i64) -> Result<LaurentSeriesQ> {
    let terms = (1..=order.max(0))
        .map(|k| Ok(geom_inv(1, k, order)?.shift(k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentSeriesQ::sum(terms, order))
}

fn lambert() -> IdentityRecord {
    IdentityRecord {
        id: "lambert",
        citation: "Lambert series for the divisor function",
        quote: "sum_{k>=1} q^k / (1 - q^k) = sum_{k>=1} d(k) q^k",
        params: &[],
        modes: &[Mode::Formal],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: None,
        formal: Some(FormalSpec {
            cases: |order| vec![case(ParamAssignment::new(), order)],
            lhs: |_, order| lambert_series(order),
            rhs: |_, order| divisor_series(order),
        }),
    }
}

fn qbinom_d2() -> IdentityRecord {
    IdentityRecord {
        id: "qbinom-d2",
        citation: "q-binomial theorem, second derivative at x = 1",
        quote:
            "sum_{k=0}^{n} k(k-1)/2 [n,k] (-1)^k q^(k(k-1)/2) = (q;q)_(n-1) sum_{k=1}^{n-1} q^k / (1 - q^k)",
        params: &[("n", "integer 1 <= n <= 12"), ("q", "rational, 0 < |q| < 1")],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "q is drawn from the dyadic rationals p/64, which are exact in every precision",
        numeric: Some(NumericSpec {
            sample: |d| {
                let p = d.real(7.0, 38.0).round();
                let s = if d.real(0.0, 1.0) < 0.5 { -1.0 } else { 1.0 };
                d.set("q", Complex64::new(s * p / 64.0, 0.0));
                d.int("n", 1, 12);
            },
            admissible: always,
            guards: no_guards,
            lhs: |a, c| {
                run(a, c, |e| {
                    let n = e.n("n")?;
                    e.fsum(0, n, |k| {
                        Ok((&e.qbinom(n, k)? * &e.qp(c2(k))?).scale_i64(c2(k) * sgn(k)))
                    })
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let n = e.n("n")?;
                    let s = e.fsum(1, n - 1, |k| {
                        let qk = e.qp(k)?;
                        div(&qk, &om(&qk))
                    })?;
                    Ok(&e.fin(&[e.q.clone()], n - 1)? * &s)
                })
            },
        }),
        formal: None,
    }
}

fn qbinom_d2_inf() -> IdentityRecord {
    IdentityRecord {
        id: "qbinom-d2-inf",
        citation: "q-binomial theorem, second derivative, infinite form",
        quote: "sum_{k>=0} k(k-1)/2 (-1)^k q^(k(k-1)/2) / (q;q)_k = (q;q)_inf sum_{k>=1} q^k / (1 - q^k)",
        params: &[],
        modes: &[Mode::Formal],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: None,
        formal: Some(FormalSpec {
            cases: |order| vec![case(ParamAssignment::new(), order)],
            lhs: |_, order| {
                let mut terms = Vec::new();
                let mut k = 2;
                while c2(k) <= order {
                    terms.push(
                        pfin_inv(&fq(1, 1), k, order)?
                            .shift(c2(k))
                            .scale(&rat(c2(k) * sgn(k))),
                    );
                    k += 1;
                }
                Ok(LaurentSeriesQ::sum(terms, order))
            },
            rhs: |_, order| Ok(&pinf(&fq(1, 1), 1, order)? * &lambert_series(order)?),
        }),
    }
}

pub(super) fn records() -> Vec<IdentityRecord> {
    vec![
        euler_exp(),
        euler_exp_dx(),
        euler_exp_dqx(),
        qbinom_thm(),
        qbinom_dx_at_qm(),
        qbinom_dx_sum(),
        eisenstein(),
        lambert(),
        qbinom_d2(),
        qbinom_d2_inf(),
    ]
}
