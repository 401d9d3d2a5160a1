//! Terminating and nonterminating transformations: q-Clausen, Rogers' 6phi5,
//! Watson, Bailey, the finite Rogers-Ramanujan identity, a double series
//! transformation and the three-term 2phi1 relation.

use num_complex::Complex64;

use crate::error::Result;
use crate::formal::{gauss_binom_poly, LaurentSeriesQ};

use super::eval::*;
use super::{Expected, FormalSpec, IdentityRecord, Mode, NumericSpec, ParamAssignment};

fn cq(asg: &ParamAssignment) -> Complex64 {
    f(asg, "q")
}

fn nq(asg: &ParamAssignment) -> i64 {
    asg.int("n").unwrap_or(0)
}

/// Guards on `z q^k` for `0 <= k <= hi`.
fn upto(zs: &[Complex64], hi: i64) -> Vec<super::Guard> {
    zs.iter().map(|&z| g(z, 0, hi)).collect()
}

/// Guards on the factors `1 - z q^-k`, `1 <= k <= hi`, of negative-index
/// numerators.
fn below(zs: &[Complex64], hi: i64) -> Vec<super::Guard> {
    zs.iter().map(|&z| g(z, -hi, -1)).collect()
}

fn qclausen() -> IdentityRecord {
    IdentityRecord {
        id: "qclausen",
        citation: "q-Clausen product formula",
        quote: "with a = q^-n: [4phi3(a, b, abx, ab/x; ab sqrt(q), -ab sqrt(q), -ab; q, q)]^2 \
                = 5phi4(a^2, b^2, ab, abx, ab/x; ab sqrt(q), -ab sqrt(q), -ab, a^2 b^2; q, q)",
        params: &[
            ("n", "integer n >= 0, a = q^-n"),
            ("b", "b != 0"),
            ("x", "x != 0"),
            ("q", "0 < |q| < 1"),
        ],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "terminating",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                d.int("n", 0, 5);
                d.complex("b", 0.3, 2.0);
                d.complex("x", 0.3, 2.0);
            },
            admissible: always,
            guards: |a| {
                let n = nq(a);
                let ab = cq(a).powi(-n as i32) * f(a, "b");
                let s = cq(a).sqrt();
                upto(&[ab * s, -ab * s, -ab, ab * ab], 2 * n)
            },
            lhs: |a, c| {
                run(a, c, |e| {
                    let (av, bv, x) = (e.qp(-e.n("n")?)?, e.p("b")?, e.p("x")?);
                    let ab = &av * &bv;
                    let abs = &ab * &e.q.sqrt();
                    let v = e.phi(
                        &[av, bv, &ab * &x, div(&ab, &x)?],
                        &[abs.clone(), -&abs, -&ab],
                        &e.q,
                    )?;
                    Ok(&v * &v)
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let (av, bv, x) = (e.qp(-e.n("n")?)?, e.p("b")?, e.p("x")?);
                    let ab = &av * &bv;
                    let abs = &ab * &e.q.sqrt();
                    e.phi(
                        &[&av * &av, &bv * &bv, ab.clone(), &ab * &x, div(&ab, &x)?],
                        &[abs.clone(), -&abs, -&ab, &ab * &ab],
                        &e.q,
                    )
                })
            },
        }),
        formal: None,
    }
}

/// `sum_{k=1}^{hi} (num;q)_k / ((-ab;q)_k (a^2 b^2 q;q^2)_k) q^k / (1 - q^k)`
fn clausen_dx_sum(e: &Ev, num: &[C], ab: &C, hi: i64) -> Result<C> {
    let q2 = &e.q * &e.q;
    let aabbq = &(ab * ab) * &e.q;
    e.fsum(1, hi, |k| {
        let den = &e.fin(&[-ab], k)? * &e.fin_base(&[aabbq.clone()], &q2, k)?;
        let qk = e.qp(k)?;
        div(&(&e.fin(num, k)? * &qk), &(&den * &om(&qk)))
    })
}

fn qclausen_dx() -> IdentityRecord {
    IdentityRecord {
        id: "qclausen-dx",
        citation: "q-Clausen product formula, derivative at x = 1",
        quote: "with a = q^-n: 2 sum_{k=1}^{n} (a, b, a^2 b^2;q)_k / ((-ab;q)_k (a^2 b^2 q;q^2)_k) q^k/(1 - q^k) \
                = sum_{k=1}^{2n} (a^2, b^2, ab;q)_k / ((-ab;q)_k (a^2 b^2 q;q^2)_k) q^k/(1 - q^k)",
        params: &[("n", "integer n >= 1, a = q^-n"), ("b", "b != 0"), ("q", "0 < |q| < 1")],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "terminating",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                d.int("n", 1, 5);
                d.complex("b", 0.3, 2.0);
            },
            admissible: always,
            guards: |a| {
                let n = nq(a);
                let ab = cq(a).powi(-n as i32) * f(a, "b");
                upto(&[-ab, ab * ab], 4 * n + 1)
            },
            lhs: |a, c| {
                run(a, c, |e| {
                    let n = e.n("n")?;
                    let (av, bv) = (e.qp(-n)?, e.p("b")?);
                    let ab = &av * &bv;
                    Ok(clausen_dx_sum(e, &[av, bv, &ab * &ab], &ab, n)?.scale_i64(2))
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let n = e.n("n")?;
                    let (av, bv) = (e.qp(-n)?, e.p("b")?);
                    let ab = &av * &bv;
                    clausen_dx_sum(e, &[&av * &av, &bv * &bv, ab.clone()], &ab, 2 * n)
                })
            },
        }),
        formal: None,
    }
}

fn rogers65() -> IdentityRecord {
    IdentityRecord {
        id: "rogers65",
        citation: "Rogers' 6phi5 summation",
        quote: "sum_{n>=0} (1 - a q^2n)/(1 - a) (a, b, c, d;q)_n / (q, aq/b, aq/c, aq/d;q)_n (aq/(bcd))^n \
                = (aq, aq/(bc), aq/(bd), aq/(cd);q)_inf / (aq/b, aq/c, aq/d, aq/(bcd);q)_inf",
        params: &[
            ("a", "a != 0"),
            ("b", "b != 0"),
            ("c", "c != 0"),
            ("d", "|aq/(bcd)| < 1"),
            ("q", "0 < |q| < 1"),
        ],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                d.complex("a", 0.2, 2.0);
                for p in ["b", "c", "d"] {
                    d.complex(p, 1.0, 3.0);
                }
            },
            admissible: |a| (f(a, "a") * cq(a) / (f(a, "b") * f(a, "c") * f(a, "d"))).norm() < 1.0,
            guards: |a| {
                let (av, q) = (f(a, "a"), cq(a));
                let aq = av * q;
                let (b, c, d) = (f(a, "b"), f(a, "c"), f(a, "d"));
                g40(&[av.sqrt(), -av.sqrt(), aq / b, aq / c, aq / d, aq / (b * c * d)])
            },
            lhs: |a, c| {
                run(a, c, |e| {
                    let (av, bv, cv, dv) = (e.p("a")?, e.p("b")?, e.p("c")?, e.p("d")?);
                    let x = div(&(&av * &e.q), &(&(&bv * &cv) * &dv))?;
                    e.vwp(&av, &[bv, cv, dv], &x)
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let (av, bv, cv, dv) = (e.p("a")?, e.p("b")?, e.p("c")?, e.p("d")?);
                    let aq = &av * &e.q;
                    e.inf_ratio(
                        &[
                            aq.clone(),
                            div(&aq, &(&bv * &cv))?,
                            div(&aq, &(&bv * &dv))?,
                            div(&aq, &(&cv * &dv))?,
                        ],
                        &[
                            div(&aq, &bv)?,
                            div(&aq, &cv)?,
                            div(&aq, &dv)?,
                            div(&aq, &(&(&bv * &cv) * &dv))?,
                        ],
                    )
                })
            },
        }),
        formal: None,
    }
}

fn psi33() -> IdentityRecord {
    IdentityRecord {
        id: "3psi3",
        citation: "Rogers' 6phi5 summation in bilateral form",
        quote: "3psi3(b, c, d; q/b, q/c, q/d; q, q/(bcd)) \
                = (q, q/(bc), q/(bd), q/(cd);q)_inf / (q/b, q/c, q/d, q/(bcd);q)_inf",
        params: &[
            ("b", "b != 0"),
            ("c", "c != 0"),
            ("d", "|q/(bcd)| < 1"),
            ("q", "0 < |q| < 1"),
        ],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "negative indices use (a;q)_-k = 1/(a q^-k;q)_k",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                for p in ["b", "c", "d"] {
                    d.complex(p, 1.0, 3.0);
                }
            },
            admissible: |a| (cq(a) / (f(a, "b") * f(a, "c") * f(a, "d"))).norm() < 1.0,
            guards: |a| {
                let (q, b, c, d) = (cq(a), f(a, "b"), f(a, "c"), f(a, "d"));
                let mut gs = g40(&[q / b, q / c, q / d, q / (b * c * d)]);
                gs.extend(below(&[b, c, d], 40));
                gs
            },
            lhs: |a, c| {
                run(a, c, |e| {
                    let (bv, cv, dv) = (e.p("b")?, e.p("c")?, e.p("d")?);
                    let x = div(&e.q, &(&(&bv * &cv) * &dv))?;
                    let den = vec![div(&e.q, &bv)?, div(&e.q, &cv)?, div(&e.q, &dv)?];
                    e.psi(&[bv, cv, dv], &den, &x)
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let (bv, cv, dv) = (e.p("b")?, e.p("c")?, e.p("d")?);
                    let q = &e.q;
                    e.inf_ratio(
                        &[
                            q.clone(),
                            div(q, &(&bv * &cv))?,
                            div(q, &(&bv * &dv))?,
                            div(q, &(&cv * &dv))?,
                        ],
                        &[
                            div(q, &bv)?,
                            div(q, &cv)?,
                            div(q, &dv)?,
                            div(q, &(&(&bv * &cv) * &dv))?,
                        ],
                    )
                })
            },
        }),
        formal: None,
    }
}

/// `(1 - q^(2n-1)) / ((1 - q^(n-1)) (1 - q^n))`
fn da_weight(e: &Ev, n: i64) -> Result<C> {
    div(&om(&e.qp(2 * n - 1)?), &(&om(&e.qp(n - 1)?) * &om(&e.qp(n)?)))
}

fn rogers65_da() -> IdentityRecord {
    IdentityRecord {
        id: "rogers65-da",
        citation: "Rogers' 6phi5 summation, derivative in a at a = 1/q",
        quote: "C0 + sum_{n>=2} (1 - q^(2n-1)) / ((1 - q^(n-1)) (1 - q^n)) (b, c, d;q)_n / (1/b, 1/c, 1/d;q)_n (bcd)^-n \
                = (q, 1/(bc), 1/(bd), 1/(cd);q)_inf / (1/b, 1/c, 1/d, 1/(bcd);q)_inf, \
                C0 = (2bcdq - bcd - bcq - bdq - cdq + b + c + d + q - 2) / ((1 - q)(1 - b)(1 - c)(1 - d))",
        params: &[("b", "b != 1"), ("c", "c != 1"), ("d", "d != 1, |1/(bcd)| < 1"), ("q", "0 < |q| < 1")],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "the constant C0 is part of the evaluator",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                for p in ["b", "c", "d"] {
                    d.complex(p, 1.1, 3.0);
                }
            },
            admissible: |a| (f(a, "b") * f(a, "c") * f(a, "d")).norm() > 1.0,
            guards: |a| {
                let (b, c, d) = (f(a, "b"), f(a, "c"), f(a, "d"));
                let mut gs = vec![g(b, 0, 0), g(c, 0, 0), g(d, 0, 0)];
                gs.extend(g40(&[1.0 / b, 1.0 / c, 1.0 / d]));
                gs
            },
            lhs: |a, c| {
                run(a, c, |e| {
                    let (b, cc, d, q) = (e.p("b")?, e.p("c")?, e.p("d")?, e.q.clone());
                    let bcd = &(&b * &cc) * &d;
                    let top = &(&(&(&bcd * &q).scale_i64(2) - &bcd) - &(&(&(&b * &cc) + &(&b * &d)) + &(&cc * &d)) * &q)
                        + &(&(&(&b + &cc) + &(&d + &q)) - &e.k(2));
                    let c0 = div(&top, &(&(&om(&q) * &om(&b)) * &(&om(&cc) * &om(&d))))?;
                    let inv = vec![div(&e.one(), &b)?, div(&e.one(), &cc)?, div(&e.one(), &d)?];
                    let mut t = HyperTerms::new(e, vec![b, cc, d], inv, div(&e.one(), &bcd)?);
                    let s = e.sum(2, |n| Ok(&da_weight(e, n)? * &t.at(e, n)?))?;
                    Ok(&c0 + &s)
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let (b, cc, d) = (e.p("b")?, e.p("c")?, e.p("d")?);
                    let one = e.one();
                    e.inf_ratio(
                        &[e.q.clone(), div(&one, &(&b * &cc))?, div(&one, &(&b * &d))?, div(&one, &(&cc * &d))?],
                        &[div(&one, &b)?, div(&one, &cc)?, div(&one, &d)?, div(&one, &(&(&b * &cc) * &d))?],
                    )
                })
            },
        }),
        formal: None,
    }
}

fn zzzz_bcd() -> IdentityRecord {
    IdentityRecord {
        id: "zzzz-bcd",
        citation: "Rogers' 6phi5 summation, derivative in a at a = 1/q with b = c = d",
        quote: "sum_{n>=2} (1 - q^(2n-1)) / ((1 - q^(n-1)) (1 - q^n)) (b;q)_n^3 / (1/b;q)_n^3 b^(-3n) \
                = (q;q)_inf (-1/b;q)_inf^3 (q/b^2;q^2)_inf^3 / (1/b^3;q)_inf + (2 + b - q - 2bq) / ((1 - b)(1 - q))",
        params: &[("b", "|b| > 1"), ("q", "0 < |q| < 1")],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "checked numerically before the record was fixed: the right side holds as stated",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                d.complex("b", 1.1, 3.0);
            },
            admissible: |a| f(a, "b").norm() > 1.0,
            guards: |a| vec![g(f(a, "b"), 0, 0)],
            lhs: |a, c| {
                run(a, c, |e| {
                    let b = e.p("b")?;
                    let binv = div(&e.one(), &b)?;
                    let x = binv.powi(3)?;
                    let mut t = HyperTerms::new(e, vec![b.clone(), b.clone(), b], vec![binv.clone(); 3], x);
                    e.sum(2, |n| Ok(&da_weight(e, n)? * &t.at(e, n)?))
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let (b, q) = (e.p("b")?, e.q.clone());
                    let binv = div(&e.one(), &b)?;
                    let q2 = &q * &q;
                    let num = &(&e.inf(&[q.clone()])? * &e.inf(&[-&binv])?.powi(3)?)
                        * &e.inf_base(&[&q * &(&binv * &binv)], &q2)?.powi(3)?;
                    let prod = div(&num, &e.inf(&[binv.powi(3)?])?)?;
                    let top = &(&(&e.k(2) + &b) - &q) - &(&b * &q).scale_i64(2);
                    Ok(&prod + &div(&top, &(&om(&b) * &om(&q)))?)
                })
            },
        }),
        formal: None,
    }
}

fn zzzz_limit() -> IdentityRecord {
    IdentityRecord {
        id: "zzzz-limit",
        citation: "Rogers' 6phi5 summation, derivative in a at a = 1/q, limit b = c = d -> infinity",
        quote: "sum_{n>=2} (1 - q^(2n-1)) / ((1 - q^(n-1)) (1 - q^n)) (-1)^n q^(3n(n-1)/2) \
                = (q;q)_inf - (1 - 2q)/(1 - q)",
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
                let mut n = 2;
                while 3 * c2(n) <= order {
                    let w = &(&(&LaurentSeriesQ::one(order) - &mono(1, 2 * n - 1, order))
                        * &geom_inv(1, n - 1, order)?)
                        * &geom_inv(1, n, order)?;
                    terms.push(w.shift(3 * c2(n)).scale(&rat(sgn(n))));
                    n += 1;
                }
                Ok(LaurentSeriesQ::sum(terms, order))
            },
            rhs: |_, order| {
                let tail = &(&LaurentSeriesQ::one(order) - &mono(2, 1, order)) * &geom_inv(1, 1, order)?;
                Ok(&pinf(&fq(1, 1), 1, order)? - &tail)
            },
        }),
    }
}

/// `(q^-n, d, e, aq/(bc); aq/b, aq/c, de q^-n / a; q, q)`, the terminating
/// balanced 4phi3 on the right of Watson's transformation.
fn watson_4phi3(e: &Ev, a: &C, b: &C, c: &C, d: &C, ee: &C, n: i64) -> Result<C> {
    let aq = a * &e.q;
    let qn = e.qp(-n)?;
    e.phi(
        &[qn.clone(), d.clone(), ee.clone(), div(&aq, &(b * c))?],
        &[div(&aq, b)?, div(&aq, c)?, div(&(&(d * ee) * &qn), a)?],
        &e.q,
    )
}

fn five_params(d: &mut super::Draw) {
    d.q();
    d.int("n", 0, 6);
    for p in ["b", "c", "d", "e"] {
        d.complex(p, 0.3, 2.0);
    }
}

fn watson() -> IdentityRecord {
    IdentityRecord {
        id: "watson",
        citation: "Watson's q-analogue of Whipple's transformation",
        quote: "8phi7 very-well-poised(a; b, c, d, e, q^-n; q, a^2 q^(n+2)/(bcde)) \
                = (aq, aq/(de);q)_n / (aq/d, aq/e;q)_n \
                * 4phi3(q^-n, d, e, aq/(bc); aq/b, aq/c, de q^-n/a; q, q)",
        params: &[
            ("a", "a != 0"),
            ("b", "b != 0"),
            ("c", "c != 0"),
            ("d", "d != 0"),
            ("e", "e != 0"),
            ("n", "integer n >= 0"),
            ("q", "0 < |q| < 1"),
        ],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "terminating",
        numeric: Some(NumericSpec {
            sample: |d| {
                five_params(d);
                d.complex("a", 0.3, 2.0);
            },
            admissible: always,
            guards: |a| {
                let (av, q, n) = (f(a, "a"), cq(a), nq(a));
                let (b, c, d, e) = (f(a, "b"), f(a, "c"), f(a, "d"), f(a, "e"));
                let aq = av * q;
                let dq = d * e * q.powi(-n as i32) / av;
                upto(
                    &[
                        av.sqrt(),
                        -av.sqrt(),
                        aq / b,
                        aq / c,
                        aq / d,
                        aq / e,
                        aq * q.powi(n as i32),
                        dq,
                    ],
                    n + 1,
                )
            },
            lhs: |a, c| {
                run(a, c, |e| {
                    let n = e.n("n")?;
                    let (av, b, cc, d, ee) = (e.p("a")?, e.p("b")?, e.p("c")?, e.p("d")?, e.p("e")?);
                    let x = div(&(&(&av * &av) * &e.qp(n + 2)?), &(&(&b * &cc) * &(&d * &ee)))?;
                    e.vwp(&av, &[b, cc, d, ee, e.qp(-n)?], &x)
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let n = e.n("n")?;
                    let (av, b, cc, d, ee) = (e.p("a")?, e.p("b")?, e.p("c")?, e.p("d")?, e.p("e")?);
                    let aq = &av * &e.q;
                    let pre = e.fin_ratio(
                        &[aq.clone(), div(&aq, &(&d * &ee))?],
                        &[div(&aq, &d)?, div(&aq, &ee)?],
                        n,
                    )?;
                    Ok(&pre * &watson_4phi3(e, &av, &b, &cc, &d, &ee, n)?)
                })
            },
        }),
        formal: None,
    }
}

fn psi55_transform() -> IdentityRecord {
    IdentityRecord {
        id: "5psi5-transform",
        citation: "Watson's transformation at a = 1 in bilateral form",
        quote: "5psi5(b, c, d, e, q^-n; q/b, q/c, q/d, q/e, q^(n+1); q, q^(n+2)/(bcde)) \
                = (q, q/(de);q)_n / (q/d, q/e;q)_n * 4phi3(q^-n, d, e, q/(bc); q/b, q/c, de q^-n; q, q)",
        params: &[
            ("b", "b != 0"),
            ("c", "c != 0"),
            ("d", "d != 0"),
            ("e", "e != 0"),
            ("n", "integer n >= 0"),
            ("q", "0 < |q| < 1"),
        ],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "terminating on both sides; negative indices use (a;q)_-k = 1/(a q^-k;q)_k",
        numeric: Some(NumericSpec {
            sample: five_params,
            admissible: always,
            guards: |a| {
                let (q, n) = (cq(a), nq(a));
                let (b, c, d, e) = (f(a, "b"), f(a, "c"), f(a, "d"), f(a, "e"));
                let mut gs = upto(&[q / b, q / c, q / d, q / e, d * e * q.powi(-n as i32)], n + 1);
                gs.extend(below(&[b, c, d, e], n + 1));
                gs
            },
            lhs: |a, c| {
                run(a, c, |e| {
                    let n = e.n("n")?;
                    let (b, cc, d, ee) = (e.p("b")?, e.p("c")?, e.p("d")?, e.p("e")?);
                    let x = div(&e.qp(n + 2)?, &(&(&b * &cc) * &(&d * &ee)))?;
                    let q = &e.q;
                    let den = [div(q, &b)?, div(q, &cc)?, div(q, &d)?, div(q, &ee)?, e.qp(n + 1)?];
                    e.psi(&[b, cc, d, ee, e.qp(-n)?], &den, &x)
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let n = e.n("n")?;
                    let (b, cc, d, ee) = (e.p("b")?, e.p("c")?, e.p("d")?, e.p("e")?);
                    let q = &e.q;
                    let pre = e.fin_ratio(
                        &[q.clone(), div(q, &(&d * &ee))?],
                        &[div(q, &d)?, div(q, &ee)?],
                        n,
                    )?;
                    Ok(&pre * &watson_4phi3(e, &e.one(), &b, &cc, &d, &ee, n)?)
                })
            },
        }),
        formal: None,
    }
}

/// `c = q^(n+1) / (bde)` for the bilateral summation.
fn psi55_c(e: &Ev, n: i64) -> Result<C> {
    div(&e.qp(n + 1)?, &(&(&e.p("b")? * &e.p("d")?) * &e.p("e")?))
}

fn psi55_sum() -> IdentityRecord {
    IdentityRecord {
        id: "5psi5-sum",
        citation: "bilateral 5psi5 summation from Watson's transformation",
        quote: "with bcde q^-n = q: 5psi5(b, c, d, e, q^-n; q/b, q/c, q/d, q/e, q^(n+1); q, q) \
                = (q, q/(bd), q/(be), q/(de);q)_n / (q/b, q/d, q/e, q/(bde);q)_n",
        params: &[
            ("b", "b != 0"),
            ("d", "d != 0"),
            ("e", "e != 0"),
            ("n", "integer n >= 0, c = q^(n+1)/(bde)"),
            ("q", "0 < |q| < 1"),
        ],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "terminating on both sides",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                d.int("n", 0, 6);
                for p in ["b", "d", "e"] {
                    d.complex(p, 0.3, 2.0);
                }
            },
            admissible: always,
            guards: |a| {
                let (q, n) = (cq(a), nq(a));
                let (b, d, e) = (f(a, "b"), f(a, "d"), f(a, "e"));
                let c = q.powi(n as i32 + 1) / (b * d * e);
                let mut gs = upto(&[q / b, q / c, q / d, q / e, q / (b * d * e)], n + 1);
                gs.extend(below(&[b, c, d, e], n + 1));
                gs
            },
            lhs: |a, c| {
                run(a, c, |e| {
                    let n = e.n("n")?;
                    let (b, cc, d, ee) = (e.p("b")?, psi55_c(e, n)?, e.p("d")?, e.p("e")?);
                    let q = &e.q;
                    let den = [div(q, &b)?, div(q, &cc)?, div(q, &d)?, div(q, &ee)?, e.qp(n + 1)?];
                    e.psi(&[b, cc, d, ee, e.qp(-n)?], &den, q)
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let n = e.n("n")?;
                    let (b, d, ee) = (e.p("b")?, e.p("d")?, e.p("e")?);
                    let q = &e.q;
                    e.fin_ratio(
                        &[
                            q.clone(),
                            div(q, &(&b * &d))?,
                            div(q, &(&b * &ee))?,
                            div(q, &(&d * &ee))?,
                        ],
                        &[
                            div(q, &b)?,
                            div(q, &d)?,
                            div(q, &ee)?,
                            div(q, &(&(&b * &d) * &ee))?,
                        ],
                        n,
                    )
                })
            },
        }),
        formal: None,
    }
}

fn pfaff_saalschutz() -> IdentityRecord {
    IdentityRecord {
        id: "pfaff-saalschutz",
        citation: "q-Pfaff-Saalschutz summation",
        quote: "3phi2(q^-n, d, e; q/b, bde q^-n; q, q) = (q/(bd), q/(be);q)_n / (q/b, q/(bde);q)_n",
        params: &[
            ("b", "b != 0"),
            ("d", "d != 0"),
            ("e", "e != 0"),
            ("n", "integer n >= 0"),
            ("q", "0 < |q| < 1"),
        ],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "terminating",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                d.int("n", 0, 6);
                for p in ["b", "d", "e"] {
                    d.complex(p, 0.3, 2.0);
                }
            },
            admissible: always,
            guards: |a| {
                let (q, n) = (cq(a), nq(a));
                let (b, d, e) = (f(a, "b"), f(a, "d"), f(a, "e"));
                upto(&[q / b, b * d * e * q.powi(-n as i32), q / (b * d * e)], n + 1)
            },
            lhs: |a, c| {
                run(a, c, |e| {
                    let n = e.n("n")?;
                    let (b, d, ee) = (e.p("b")?, e.p("d")?, e.p("e")?);
                    let qn = e.qp(-n)?;
                    let den = [div(&e.q, &b)?, &(&(&b * &d) * &ee) * &qn];
                    e.phi(&[qn, d, ee], &den, &e.q)
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let n = e.n("n")?;
                    let (b, d, ee) = (e.p("b")?, e.p("d")?, e.p("e")?);
                    let q = &e.q;
                    e.fin_ratio(
                        &[div(q, &(&b * &d))?, div(q, &(&b * &ee))?],
                        &[div(q, &b)?, div(q, &(&(&b * &d) * &ee))?],
                        n,
                    )
                })
            },
        }),
        formal: None,
    }
}

fn rr_order(n: i64) -> i64 {
    3 * n * n + n + 2
}

fn rr_cases(_: i64) -> Vec<super::FormalCase> {
    (1..=8)
        .map(|n| case(ParamAssignment::new().with("n", int_value(n)), rr_order(n)))
        .collect()
}

fn rr_lhs(a: &ParamAssignment, order: i64) -> Result<LaurentSeriesQ> {
    let n = a.int("n")?;
    let terms = (-n..=n)
        .map(|k| {
            Ok(gauss_binom_poly(2 * n, n + k, order)?
                .shift((5 * k - 1) * k / 2)
                .scale(&rat(sgn(k))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentSeriesQ::sum(terms, order))
}

/// `[2n, n] sum_k [n, k] q^(k^2)`, the right side as printed.
fn rr_rhs_printed(a: &ParamAssignment, order: i64) -> Result<LaurentSeriesQ> {
    let n = a.int("n")?;
    let terms = (0..=n)
        .map(|k| Ok(gauss_binom_poly(n, k, order)?.shift(k * k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(&gauss_binom_poly(2 * n, n, order)? * &LaurentSeriesQ::sum(terms, order))
}

fn rr_finite() -> IdentityRecord {
    IdentityRecord {
        id: "rr-finite",
        citation: "finite Rogers-Ramanujan identity, as printed",
        quote: "sum_{k=-n}^{n} [2n, n+k] (-1)^k q^((5k-1)k/2) = [2n, n] sum_{k=0}^{n} [n, k] q^(k^2)",
        params: &[("n", "integer n >= 1")],
        modes: &[Mode::ExactPoly],
        expected: Expected::ExpectedFail,
        companion: Some("rr-finite-corrected"),
        notes: "fails already at n = 1: LHS = 1 + q - q^2 - q^3, RHS = (1 + q)^2, LHS/RHS = 1 - q. \
                The limit b, c, d, e -> infinity of the bilateral Watson transformation keeps \
                the factor (q;q)_n on the right; see rr-finite-corrected.",
        numeric: None,
        formal: Some(FormalSpec {
            cases: rr_cases,
            lhs: rr_lhs,
            rhs: rr_rhs_printed,
        }),
    }
}

fn rr_finite_corrected() -> IdentityRecord {
    IdentityRecord {
        id: "rr-finite-corrected",
        citation: "finite Rogers-Ramanujan identity, corrected",
        quote: "sum_{k=-n}^{n} [2n, n+k] (-1)^k q^((5k-1)k/2) = (q;q)_n [2n, n] sum_{k=0}^{n} [n, k] q^(k^2)",
        params: &[("n", "integer n >= 1")],
        modes: &[Mode::ExactPoly],
        expected: Expected::Pass,
        companion: None,
        notes: "corrected variant of rr-finite",
        numeric: None,
        formal: Some(FormalSpec {
            cases: rr_cases,
            lhs: rr_lhs,
            rhs: |a, order| Ok(&pfin(&fq(1, 1), a.int("n")?, order)? * &rr_rhs_printed(a, order)?),
        }),
    }
}

fn rogers_ramanujan() -> IdentityRecord {
    IdentityRecord {
        id: "rogers-ramanujan",
        citation: "first Rogers-Ramanujan identity",
        quote: "sum_{k>=0} q^(k^2) / (q;q)_k = 1 / (q, q^4;q^5)_inf = (q^2, q^3, q^5;q^5)_inf / (q;q)_inf",
        params: &[(
            "variant",
            "0: product over parts = 1, 4 mod 5; 1: triple-product form",
        )],
        modes: &[Mode::Formal],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: None,
        formal: Some(FormalSpec {
            cases: |order| {
                (0..=1)
                    .map(|v| case(ParamAssignment::new().with("variant", int_value(v)), order))
                    .collect()
            },
            lhs: |_, order| {
                let mut terms = Vec::new();
                let mut k = 0;
                while k * k <= order {
                    terms.push(pfin_inv(&fq(1, 1), k, order)?.shift(k * k));
                    k += 1;
                }
                Ok(LaurentSeriesQ::sum(terms, order))
            },
            rhs: |a, order| {
                if a.int("variant")? == 0 {
                    Ok(&pinf_inv(&fq(1, 1), 5, order)? * &pinf_inv(&fq(1, 4), 5, order)?)
                } else {
                    let p = &(&pinf(&fq(1, 2), 5, order)? * &pinf(&fq(1, 3), 5, order)?)
                        * &pinf(&fq(1, 5), 5, order)?;
                    Ok(&p * &pinf_inv(&fq(1, 1), 1, order)?)
                }
            },
        }),
    }
}

struct Bailey {
    a: C,
    b: C,
    c: C,
    d: C,
    e: C,
    f: C,
}

fn bailey_params(e: &Ev) -> Result<Bailey> {
    let (a, b, c, d, ee) = (e.p("a")?, e.p("b")?, e.p("c")?, e.p("d")?, e.p("e")?);
    let f = div(&(&(&a * &a) * &e.q), &(&(&b * &c) * &(&d * &ee)))?;
    Ok(Bailey { a, b, c, d, e: ee, f })
}

fn bailey87() -> IdentityRecord {
    IdentityRecord {
        id: "bailey87",
        citation: "Bailey's nonterminating extension of Jackson's 8phi7 summation",
        quote: "with f = a^2 q/(bcde): W(a; b, c, d, e, f; q, q) \
                - (b/a) (aq, c, d, e, f, bq/a, bq/c, bq/d, bq/e, bq/f;q)_inf \
                / (aq/b, aq/c, aq/d, aq/e, aq/f, bc/a, bd/a, be/a, bf/a, b^2 q/a;q)_inf \
                * W(b^2/a; b, bc/a, bd/a, be/a, bf/a; q, q) \
                = (aq, b/a, aq/(cd), aq/(ce), aq/(cf), aq/(de), aq/(df), aq/(ef);q)_inf \
                / (aq/c, aq/d, aq/e, aq/f, bc/a, bd/a, be/a, bf/a;q)_inf, \
                W the very-well-poised 8phi7",
        params: &[
            ("a", "a != 0"),
            ("b", "b != 0"),
            ("c", "c != 0"),
            ("d", "d != 0"),
            ("e", "e != 0, f = a^2 q/(bcde)"),
            ("q", "0 < |q| < 1"),
        ],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                d.complex("a", 0.3, 2.0);
                for p in ["b", "c", "d", "e"] {
                    d.complex(p, 0.5, 2.0);
                }
            },
            admissible: always,
            guards: |asg| {
                let (a, q) = (f(asg, "a"), cq(asg));
                let (b, c, d, e) = (f(asg, "b"), f(asg, "c"), f(asg, "d"), f(asg, "e"));
                let ff = a * a * q / (b * c * d * e);
                let aq = a * q;
                let bq = b * q;
                let s = a.sqrt();
                g40(&[
                    s,
                    -s,
                    b / s,
                    -b / s,
                    aq / b,
                    aq / c,
                    aq / d,
                    aq / e,
                    aq / ff,
                    bq / a,
                    bq / c,
                    bq / d,
                    bq / e,
                    bq / ff,
                    b * c / a,
                    b * d / a,
                    b * e / a,
                    b * ff / a,
                    b * bq / a,
                ])
            },
            lhs: |asg, ctx| {
                run(asg, ctx, |ev| {
                    let Bailey { a, b, c, d, e, f } = bailey_params(ev)?;
                    let q = &ev.q;
                    let (aq, bq) = (&a * q, &b * q);
                    let ba = |x: &C| div(&(&b * x), &a);
                    let w1 = ev.vwp(&a, &[b.clone(), c.clone(), d.clone(), e.clone(), f.clone()], q)?;
                    let w2 = ev.vwp(
                        &div(&(&b * &b), &a)?,
                        &[b.clone(), ba(&c)?, ba(&d)?, ba(&e)?, ba(&f)?],
                        q,
                    )?;
                    let num = [
                        aq.clone(),
                        c.clone(),
                        d.clone(),
                        e.clone(),
                        f.clone(),
                        div(&bq, &a)?,
                        div(&bq, &c)?,
                        div(&bq, &d)?,
                        div(&bq, &e)?,
                        div(&bq, &f)?,
                    ];
                    let den = [
                        div(&aq, &b)?,
                        div(&aq, &c)?,
                        div(&aq, &d)?,
                        div(&aq, &e)?,
                        div(&aq, &f)?,
                        ba(&c)?,
                        ba(&d)?,
                        ba(&e)?,
                        ba(&f)?,
                        div(&(&b * &bq), &a)?,
                    ];
                    let pre = &div(&b, &a)? * &ev.inf_ratio(&num, &den)?;
                    Ok(&w1 - &(&pre * &w2))
                })
            },
            rhs: |asg, ctx| {
                run(asg, ctx, |ev| {
                    let Bailey { a, b, c, d, e, f } = bailey_params(ev)?;
                    let aq = &a * &ev.q;
                    let ba = |x: &C| div(&(&b * x), &a);
                    let aqx = |x: &C, y: &C| div(&aq, &(x * y));
                    ev.inf_ratio(
                        &[
                            aq.clone(),
                            div(&b, &a)?,
                            aqx(&c, &d)?,
                            aqx(&c, &e)?,
                            aqx(&c, &f)?,
                            aqx(&d, &e)?,
                            aqx(&d, &f)?,
                            aqx(&e, &f)?,
                        ],
                        &[
                            div(&aq, &c)?,
                            div(&aq, &d)?,
                            div(&aq, &e)?,
                            div(&aq, &f)?,
                            ba(&c)?,
                            ba(&d)?,
                            ba(&e)?,
                            ba(&f)?,
                        ],
                    )
                })
            },
        }),
        formal: None,
    }
}

/// `sum_{n>=0} (1 + b q^n) (num;q)_n / (den;q)_n q^n`
fn bailey_tail(e: &Ev, b: &C, num: Vec<C>, den: Vec<C>) -> Result<C> {
    let mut t = HyperTerms::new(e, num, den, e.q.clone());
    e.sum(0, |n| {
        let w = &e.one() + &(b * &e.qp(n)?);
        Ok(&w * &t.at(e, n)?)
    })
}

fn bailey_da() -> IdentityRecord {
    IdentityRecord {
        id: "bailey-da",
        citation: "Bailey's extension of Jackson's summation, derivative in a at a = 1",
        quote: "with bcdef = q: 5psi5(b, c, d, e, f; q/b, q/c, q/d, q/e, q/f; q, q) \
                - b/(1 + b) (q, bq, c, d, e, f, bq/c, bq/d, bq/e, bq/f;q)_inf \
                / (q/b, q/c, q/d, q/e, q/f, bc, bd, be, bf, b^2 q;q)_inf \
                * sum_{n>=0} (1 + b q^n) (b^2, bc, bd, be, bf;q)_n / (q, bq/c, bq/d, bq/e, bq/f;q)_n q^n \
                = (q, b, q/(cd), q/(ce), q/(cf), q/(de), q/(df), q/(ef);q)_inf \
                / (q/c, q/d, q/e, q/f, bc, bd, be, bf;q)_inf",
        params: &[
            ("b", "b != 0"),
            ("c", "c != 0"),
            ("d", "d != 0"),
            ("e", "e != 0, f = q/(bcde)"),
            ("q", "0 < |q| < 1"),
        ],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "negative indices use (a;q)_-k = 1/(a q^-k;q)_k",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                for p in ["b", "c", "d", "e"] {
                    d.complex(p, 0.5, 2.0);
                }
            },
            admissible: always,
            guards: |asg| {
                let q = cq(asg);
                let (b, c, d, e) = (f(asg, "b"), f(asg, "c"), f(asg, "d"), f(asg, "e"));
                let ff = q / (b * c * d * e);
                let bq = b * q;
                let mut gs = g40(&[
                    q / b,
                    q / c,
                    q / d,
                    q / e,
                    q / ff,
                    bq / c,
                    bq / d,
                    bq / e,
                    bq / ff,
                    b * c,
                    b * d,
                    b * e,
                    b * ff,
                    b * bq,
                ]);
                gs.extend(below(&[b, c, d, e, ff], 40));
                gs.push(g(-b, 0, 0));
                gs
            },
            lhs: |asg, ctx| {
                run(asg, ctx, |ev| {
                    let (b, c, d, e) = (ev.p("b")?, ev.p("c")?, ev.p("d")?, ev.p("e")?);
                    let q = ev.q.clone();
                    let f = div(&q, &(&(&b * &c) * &(&d * &e)))?;
                    let ps = [b.clone(), c.clone(), d.clone(), e.clone(), f.clone()];
                    let den = ps.iter().map(|p| div(&q, p)).collect::<Result<Vec<_>>>()?;
                    let l1 = ev.psi(&ps, &den, &q)?;
                    let bq = &b * &q;
                    let rest = [c.clone(), d.clone(), e.clone(), f.clone()];
                    let mut num = vec![q.clone(), bq.clone()];
                    num.extend(rest.iter().cloned());
                    for p in &rest {
                        num.push(div(&bq, p)?);
                    }
                    let mut dd = den.clone();
                    for p in &rest {
                        dd.push(&b * p);
                    }
                    dd.push(&b * &bq);
                    let pre = &div(&b, &(&ev.one() + &b))? * &ev.inf_ratio(&num, &dd)?;
                    let mut tnum = vec![&b * &b];
                    let mut tden = vec![q.clone()];
                    for p in &rest {
                        tnum.push(&b * p);
                        tden.push(div(&bq, p)?);
                    }
                    let l2 = bailey_tail(ev, &b, tnum, tden)?;
                    Ok(&l1 - &(&pre * &l2))
                })
            },
            rhs: |asg, ctx| {
                run(asg, ctx, |ev| {
                    let (b, c, d, e) = (ev.p("b")?, ev.p("c")?, ev.p("d")?, ev.p("e")?);
                    let q = ev.q.clone();
                    let f = div(&q, &(&(&b * &c) * &(&d * &e)))?;
                    let qx = |x: &C, y: &C| div(&q, &(x * y));
                    ev.inf_ratio(
                        &[
                            q.clone(),
                            b.clone(),
                            qx(&c, &d)?,
                            qx(&c, &e)?,
                            qx(&c, &f)?,
                            qx(&d, &e)?,
                            qx(&d, &f)?,
                            qx(&e, &f)?,
                        ],
                        &[
                            div(&q, &c)?,
                            div(&q, &d)?,
                            div(&q, &e)?,
                            div(&q, &f)?,
                            &b * &c,
                            &b * &d,
                            &b * &e,
                            &b * &f,
                        ],
                    )
                })
            },
        }),
        formal: None,
    }
}

fn bailey_da_special() -> IdentityRecord {
    IdentityRecord {
        id: "bailey-da-special",
        citation: "Bailey's extension of Jackson's summation, derivative in a at a = 1 with def = 1",
        quote: "with def = 1: sum_{n>=0} (1 + b q^n) (bd, be, bf;q)_n / (bq/d, bq/e, bq/f;q)_n q^n \
                = [(bd, be, bf;q)_inf - (b/d, b/e, b/f;q)_inf] \
                / (b (1 - d)(1 - e)(1 - f) (bq/d, bq/e, bq/f;q)_inf)",
        params: &[
            ("b", "b != 0"),
            ("d", "d != 1"),
            ("e", "e != 1, f = 1/(de) != 1"),
            ("q", "0 < |q| < 1"),
        ],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                for p in ["b", "d", "e"] {
                    d.complex(p, 0.5, 2.0);
                }
            },
            admissible: always,
            guards: |asg| {
                let q = cq(asg);
                let (b, d, e) = (f(asg, "b"), f(asg, "d"), f(asg, "e"));
                let ff = 1.0 / (d * e);
                let mut gs = g40(&[b * q / d, b * q / e, b * q / ff]);
                gs.extend([g(d, 0, 0), g(e, 0, 0), g(ff, 0, 0)]);
                gs
            },
            lhs: |asg, ctx| {
                run(asg, ctx, |ev| {
                    let (b, d, e) = (ev.p("b")?, ev.p("d")?, ev.p("e")?);
                    let f = div(&ev.one(), &(&d * &e))?;
                    let bq = &b * &ev.q;
                    let num = vec![&b * &d, &b * &e, &b * &f];
                    let den = vec![div(&bq, &d)?, div(&bq, &e)?, div(&bq, &f)?];
                    bailey_tail(ev, &b, num, den)
                })
            },
            rhs: |asg, ctx| {
                run(asg, ctx, |ev| {
                    let (b, d, e) = (ev.p("b")?, ev.p("d")?, ev.p("e")?);
                    let f = div(&ev.one(), &(&d * &e))?;
                    let bq = &b * &ev.q;
                    let top = &ev.inf(&[&b * &d, &b * &e, &b * &f])?
                        - &ev.inf(&[div(&b, &d)?, div(&b, &e)?, div(&b, &f)?])?;
                    let lin = &(&b * &om(&d)) * &(&om(&e) * &om(&f));
                    let bot = &lin * &ev.inf(&[div(&bq, &d)?, div(&bq, &e)?, div(&bq, &f)?])?;
                    div(&top, &bot)
                })
            },
        }),
        formal: None,
    }
}

fn liu_sample(d: &mut super::Draw, bilateral: bool) {
    let q = d.complex("q", 0.7, 0.9);
    let a = if bilateral {
        Complex64::new(1.0, 0.0)
    } else {
        d.complex("a", 0.3, 1.5)
    };
    let b = d.complex("b", 0.3, 1.2);
    let c = d.complex("c", 0.3, 1.2);
    let r = d.point(0.001, 0.01);
    d.set("d", q * q * r / (a * b * c));
    d.complex("beta", 0.3, 2.0);
    d.complex("gamma", 0.3, 2.0);
}

fn liu_guards(asg: &ParamAssignment, a: Complex64) -> Vec<super::Guard> {
    let q = cq(asg);
    let (b, c, d) = (f(asg, "b"), f(asg, "c"), f(asg, "d"));
    let (be, ga) = (f(asg, "beta"), f(asg, "gamma"));
    let abc = a * b * c;
    g40(&[
        q / b,
        q / c,
        be * ga * abc / q,
        a * b,
        a * c,
        a * d,
        be * abc * d / (q * q),
        ga * abc * d / (q * q),
    ])
}

/// `4phi3(q^-n, a q^n, beta, gamma; q/b, q/c, beta gamma abc/q; q, q)`, with
/// `a` given by name or 1. Its terms reach `|q|^(-c n^2)` while the sum grows
/// only geometrically, so the parameters are rebuilt at higher precision.
fn liu_g(e: &Ev, a: Option<&str>, n: i64) -> Result<C> {
    e.phi_with(|e| {
        let a = match a {
            Some(name) => e.p(name)?,
            None => e.one(),
        };
        let (b, c, be, ga) = (e.p("b")?, e.p("c")?, e.p("beta")?, e.p("gamma")?);
        let q = &e.q;
        let bg = &(&be * &ga) * &div(&(&(&a * &b) * &c), q)?;
        Ok((
            vec![e.qp(-n)?, &a * &e.qp(n)?, be, ga],
            vec![div(q, &b)?, div(q, &c)?, bg],
            q.clone(),
        ))
    })
}

/// The common right side, with `a = 1` in the bilateral case.
fn liu_rhs(e: &Ev, a: &C, bilateral: bool) -> Result<C> {
    let (b, c, d, be, ga) = (e.p("b")?, e.p("c")?, e.p("d")?, e.p("beta")?, e.p("gamma")?);
    let q = &e.q;
    let q2 = q * q;
    let abc = div(&(&(a * &b) * &c), q)?;
    let abcd = div(&(&(&(a * &b) * &c) * &d), &q2)?;
    let mut num = vec![
        &be * &abc,
        &ga * &abc,
        div(&(&(a * &b) * &d), q)?,
        div(&(&(a * &c) * &d), q)?,
        &(&be * &ga) * &abcd,
    ];
    let mut den = vec![&(&be * &ga) * &abc, &be * &abcd, &ga * &abcd];
    if bilateral {
        num.push(q.clone());
        den.extend([b, c, d]);
    } else {
        num.push(a * q);
        den.extend([a * &b, a * &c, a * &d]);
    }
    e.inf_ratio(&num, &den)
}

fn liu() -> IdentityRecord {
    IdentityRecord {
        id: "liu",
        citation: "double q-series transformation",
        quote:
            "sum_{n>=0} (1 - a q^2n)/(1 - a) (a, q/b, q/c, q/d;q)_n / (q, ab, ac, ad;q)_n G(n) (abcd/q^2)^n \
                = (aq, beta abc/q, gamma abc/q, abd/q, acd/q, beta gamma abcd/q^2;q)_inf \
                / (ab, ac, ad, beta gamma abc/q, beta abcd/q^2, gamma abcd/q^2;q)_inf, \
                G(n) = 4phi3(q^-n, a q^n, beta, gamma; q/b, q/c, beta gamma abc/q; q, q)",
        params: &[
            ("a", "a != 1"),
            ("b", "b != 0"),
            ("c", "c != 0"),
            ("d", "|abcd/q^2| < 1"),
            ("beta", "any"),
            ("gamma", "any"),
            ("q", "0 < |q| < 1"),
        ],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "sampled with 0.7 <= |q| <= 0.9 and |abcd/q^2| <= 0.01, where the inner 4phi3 grows \
                slowly enough for the outer sum to converge quickly",
        numeric: Some(NumericSpec {
            sample: |d| liu_sample(d, false),
            admissible: |asg| {
                (f(asg, "a") * f(asg, "b") * f(asg, "c") * f(asg, "d") / cq(asg).powi(2)).norm() < 1.0
            },
            guards: |asg| {
                let mut gs = liu_guards(asg, f(asg, "a"));
                gs.push(g(f(asg, "a"), 0, 0));
                gs
            },
            lhs: |asg, ctx| {
                run(asg, ctx, |e| {
                    let (a, b, c, d) = (e.p("a")?, e.p("b")?, e.p("c")?, e.p("d")?);
                    let q = e.q.clone();
                    let z = div(&(&(&a * &b) * &(&c * &d)), &(&q * &q))?;
                    let num = vec![a.clone(), div(&q, &b)?, div(&q, &c)?, div(&q, &d)?];
                    let den = vec![q.clone(), &a * &b, &a * &c, &a * &d];
                    let mut t = HyperTerms::new(e, num, den, z);
                    let a1 = om(&a);
                    e.sum(0, |n| {
                        let w = div(&om(&(&a * &e.qp(2 * n)?)), &a1)?;
                        Ok(&(&w * &t.at(e, n)?) * &liu_g(e, Some("a"), n)?)
                    })
                })
            },
            rhs: |asg, ctx| run(asg, ctx, |e| liu_rhs(e, &e.p("a")?, false)),
        }),
        formal: None,
    }
}

fn liu_bilateral() -> IdentityRecord {
    IdentityRecord {
        id: "liu-bilateral",
        citation: "double q-series transformation, bilateral form",
        quote: "sum_{n in Z} G(n) (q/b, q/c, q/d;q)_n / (b, c, d;q)_n (bcd/q^2)^n \
                = (q, beta bc/q, gamma bc/q, bd/q, cd/q, beta gamma bcd/q^2;q)_inf \
                / (b, c, d, beta gamma bc/q, beta bcd/q^2, gamma bcd/q^2;q)_inf, \
                G(n) = 4phi3(q^-|n|, q^|n|, beta, gamma; q/b, q/c, beta gamma bc/q; q, q)",
        params: &[
            ("b", "b != 0"),
            ("c", "c != 0"),
            ("d", "|bcd/q^2| < 1"),
            ("beta", "any"),
            ("gamma", "any"),
            ("q", "0 < |q| < 1"),
        ],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "G(n) = G(-n) holds by construction at a = 1; negative indices of the outer sum use \
                (x;q)_-k = 1/(x q^-k;q)_k. Sampled as for liu.",
        numeric: Some(NumericSpec {
            sample: |d| liu_sample(d, true),
            admissible: |asg| (f(asg, "b") * f(asg, "c") * f(asg, "d") / cq(asg).powi(2)).norm() < 1.0,
            guards: |asg| {
                let mut gs = liu_guards(asg, Complex64::new(1.0, 0.0));
                let q = cq(asg);
                gs.extend(below(&[q / f(asg, "b"), q / f(asg, "c"), q / f(asg, "d")], 40));
                gs
            },
            lhs: |asg, ctx| {
                run(asg, ctx, |e| {
                    let (b, c, d) = (e.p("b")?, e.p("c")?, e.p("d")?);
                    let q = e.q.clone();
                    let z = div(&(&b * &(&c * &d)), &(&q * &q))?;
                    let num = [div(&q, &b)?, div(&q, &c)?, div(&q, &d)?];
                    let den = [b, c, d];
                    let term = |n: i64| -> Result<C> {
                        let r = e.fin_ratio(&num, &den, n)?;
                        Ok(&(&r * &z.powi(n)?) * &liu_g(e, None, n.abs())?)
                    };
                    let pos = e.sum(0, term)?;
                    let neg = e.sum(1, |k| term(-k))?;
                    Ok(&pos + &neg)
                })
            },
            rhs: |asg, ctx| run(asg, ctx, |e| liu_rhs(e, &e.one(), true)),
        }),
        formal: None,
    }
}

fn threeterm() -> IdentityRecord {
    IdentityRecord {
        id: "2phi1-threeterm",
        citation: "three-term transformation of 2phi1",
        quote: "2phi1(a, b; c; q, x) = (c/a, c/b;q)_inf / (c, c/(ab);q)_inf * 3phi2(a, b, abx/c; qab/c, 0; q, q) \
                + (a, b, abx/c;q)_inf / (c, ab/c, x;q)_inf * 3phi2(c/a, c/b, x; qc/(ab), 0; q, q)",
        params: &[("a", "a != 0"), ("b", "b != 0"), ("c", "c != 0"), ("x", "|x| < 1"), ("q", "0 < |q| < 1")],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                for p in ["a", "b", "c"] {
                    d.complex(p, 0.3, 2.0);
                }
                d.complex("x", 0.1, 0.9);
            },
            admissible: |asg| f(asg, "x").norm() < 1.0,
            guards: |asg| {
                let q = cq(asg);
                let (a, b, c) = (f(asg, "a"), f(asg, "b"), f(asg, "c"));
                let r = c / (a * b);
                g40(&[c, r, 1.0 / r, q / r, q * r])
            },
            lhs: |asg, ctx| run(asg, ctx, |e| e.phi(&[e.p("a")?, e.p("b")?], &[e.p("c")?], &e.p("x")?)),
            rhs: |asg, ctx| {
                run(asg, ctx, |e| {
                    let (a, b, c, x) = (e.p("a")?, e.p("b")?, e.p("c")?, e.p("x")?);
                    let q = e.q.clone();
                    let ab = &a * &b;
                    let r = div(&c, &ab)?;
                    let abxc = div(&(&ab * &x), &c)?;
                    let (ca, cb) = (div(&c, &a)?, div(&c, &b)?);
                    let t1 = &e.inf_ratio(&[ca.clone(), cb.clone()], &[c.clone(), r.clone()])?
                        * &e.phi(&[a.clone(), b.clone(), abxc.clone()], &[div(&q, &r)?, e.zero()], &q)?;
                    let t2 = &e.inf_ratio(&[a, b, abxc], &[c, div(&e.one(), &r)?, x.clone()])?
                        * &e.phi(&[ca, cb, x], &[&q * &r, e.zero()], &q)?;
                    Ok(&t1 + &t2)
                })
            },
        }),
        formal: None,
    }
}

fn threeterm_dx() -> IdentityRecord {
    IdentityRecord {
        id: "2phi1-threeterm-dx",
        citation: "three-term transformation of 2phi1, derivative in x at x = c/(ab)",
        quote: "sum_{n>=0} n (a, b;q)_n / (q, c;q)_n (c/(ab))^n \
                = -(c/a, c/b;q)_inf / (c, c/(ab);q)_inf sum_{n>=1} (a, b;q)_n / (qab/c;q)_n q^n/(1 - q^n) \
                - (a, b, q;q)_inf / (c, ab/c, cq/(ab);q)_inf sum_{n>=0} (c/a, c/b;q)_n / (q;q)_n q^n/(1 - c q^n/(ab))",
        params: &[("a", "a != 0"), ("b", "b != 0"), ("c", "|c/(ab)| < 1"), ("q", "0 < |q| < 1")],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                let a = d.complex("a", 0.8, 2.0);
                let b = d.complex("b", 0.8, 2.0);
                let y = d.point(0.1, 0.8);
                d.set("c", a * b * y);
            },
            admissible: |asg| (f(asg, "c") / (f(asg, "a") * f(asg, "b"))).norm() < 1.0,
            guards: |asg| {
                let q = cq(asg);
                let c = f(asg, "c");
                let y = c / (f(asg, "a") * f(asg, "b"));
                g40(&[c, y, 1.0 / y, q / y, q * y])
            },
            lhs: |asg, ctx| {
                run(asg, ctx, |e| {
                    let (a, b, c) = (e.p("a")?, e.p("b")?, e.p("c")?);
                    let y = div(&c, &(&a * &b))?;
                    let mut t = HyperTerms::new(e, vec![a, b], vec![e.q.clone(), c], y);
                    e.sum(0, |n| Ok(t.at(e, n)?.scale_i64(n)))
                })
            },
            rhs: |asg, ctx| {
                run(asg, ctx, |e| {
                    let (a, b, c) = (e.p("a")?, e.p("b")?, e.p("c")?);
                    let q = e.q.clone();
                    let y = div(&c, &(&a * &b))?;
                    let (ca, cb) = (div(&c, &a)?, div(&c, &b)?);
                    let mut t1 = HyperTerms::new(e, vec![a.clone(), b.clone()], vec![div(&q, &y)?], q.clone());
                    let s1 = e.sum(1, |n| div(&t1.at(e, n)?, &om(&e.qp(n)?)))?;
                    let mut t2 = HyperTerms::new(e, vec![ca.clone(), cb.clone()], vec![q.clone()], q.clone());
                    let s2 = e.sum(0, |n| div(&t2.at(e, n)?, &om(&(&y * &e.qp(n)?))))?;
                    let p1 = e.inf_ratio(&[ca, cb], &[c.clone(), y.clone()])?;
                    let p2 = e.inf_ratio(&[a, b, q.clone()], &[c, div(&e.one(), &y)?, &q * &y])?;
                    Ok(-&(&(&p1 * &s1) + &(&p2 * &s2)))
                })
            },
        }),
        formal: None,
    }
}

fn phi21_dx_b_eq_c() -> IdentityRecord {
    IdentityRecord {
        id: "2phi1-dx-b=c",
        citation: "three-term transformation derivative with b = c",
        quote: "sum_{n>=0} n (a;q)_n / (q;q)_n a^(-n) = -(q;q)_inf / (1/a;q)_inf",
        params: &[("a", "|1/a| < 1"), ("q", "0 < |q| < 1")],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "also the case m = 0 of phi10-dx",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                let y = d.point(0.1, 0.85);
                d.set("a", 1.0 / y);
            },
            admissible: |asg| f(asg, "a").norm() > 1.0,
            guards: no_guards,
            lhs: |asg, ctx| {
                run(asg, ctx, |e| {
                    let a = e.p("a")?;
                    let mut t = HyperTerms::new(e, vec![a.clone()], vec![e.q.clone()], div(&e.one(), &a)?);
                    e.sum(0, |n| Ok(t.at(e, n)?.scale_i64(n)))
                })
            },
            rhs: |asg, ctx| {
                run(asg, ctx, |e| {
                    Ok(-&e.inf_ratio(&[e.q.clone()], &[div(&e.one(), &e.p("a")?)?])?)
                })
            },
        }),
        formal: None,
    }
}

pub(super) fn records() -> Vec<IdentityRecord> {
    vec![
        qclausen(),
        qclausen_dx(),
        rogers65(),
        psi33(),
        rogers65_da(),
        zzzz_bcd(),
        zzzz_limit(),
        watson(),
        psi55_transform(),
        psi55_sum(),
        pfaff_saalschutz(),
        rr_finite(),
        rr_finite_corrected(),
        rogers_ramanujan(),
        bailey87(),
        bailey_da(),
        bailey_da_special(),
        liu(),
        liu_bilateral(),
        threeterm(),
        threeterm_dx(),
        phi21_dx_b_eq_c(),
    ]
}
