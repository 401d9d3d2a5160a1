//! Summation formulas of product type: 1phi0, Cauchy, q-Gauss, Ramanujan's
//! 1psi1 and the theta-function identities.

use crate::error::Result;
use crate::formal::{theta_series, FormalParam, LaurentSeriesQ};
use crate::qcore::triple_product;
use crate::series::{eval_theta_sum, Support, ThetaSumSpec, Weight};

use super::eval::*;
use super::{Expected, FormalSpec, IdentityRecord, Mode, NumericSpec, ParamAssignment};

fn theta(
    quad: i64,
    lin: i64,
    alternating: bool,
    weight: Weight,
    support: Support,
) -> ThetaSumSpec<FormalParam> {
    ThetaSumSpec {
        quad,
        lin,
        alternating,
        weight,
        x: None,
        support,
    }
}

fn phi10() -> IdentityRecord {
    IdentityRecord {
        id: "phi10",
        citation: "q-binomial summation of 1phi0",
        quote: "1phi0(a; -; q, x) = (ax;q)_inf / (x;q)_inf",
        params: &[("a", "any"), ("x", "|x| < 1"), ("q", "0 < |q| < 1")],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                d.complex("a", 0.0, 2.0);
                d.complex("x", 0.0, 0.9);
            },
            admissible: always,
            guards: no_guards,
            lhs: |a, c| run(a, c, |e| e.phi(&[e.p("a")?], &[], &e.p("x")?)),
            rhs: |a, c| {
                run(a, c, |e| {
                    let x = e.p("x")?;
                    e.inf_ratio(&[&e.p("a")? * &x], &[x])
                })
            },
        }),
        formal: None,
    }
}

fn phi10_dx() -> IdentityRecord {
    IdentityRecord {
        id: "phi10-dx",
        citation: "1phi0 summation, derivative in x at x = 1/(a q^m)",
        quote: "with y = 1/(a q^m): sum_{n>=1} n (a;q)_n/(q;q)_n y^n \
                = (-1)^(m+1) q^(-m(m+1)/2) (q;q)_m (q;q)_inf / (y;q)_inf",
        params: &[
            ("a", "|1/(a q^m)| < 1"),
            ("m", "integer m >= 0"),
            ("q", "0 < |q| < 1"),
        ],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "a is drawn as q^-m / y with y inside the unit disk",
        numeric: Some(NumericSpec {
            sample: |d| {
                let q = d.q();
                let m = d.int("m", 0, 4);
                let y = d.point(0.1, 0.8);
                d.set("a", q.powi(-m as i32) / y);
            },
            admissible: |a| {
                (f(a, "a") * f(a, "q").powi(a.int("m").unwrap_or(0) as i32))
                    .inv()
                    .norm()
                    < 1.0
            },
            guards: no_guards,
            lhs: |a, c| {
                run(a, c, |e| {
                    let (av, m) = (e.p("a")?, e.n("m")?);
                    let y = div(&e.one(), &(&av * &e.qp(m)?))?;
                    let mut t = e.one();
                    e.sum(0, |n| {
                        if n > 0 {
                            t = div(&(&(&t * &om(&(&av * &e.qp(n - 1)?))) * &y), &om(&e.qp(n)?))?;
                        }
                        Ok(t.scale_i64(n))
                    })
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let (av, m) = (e.p("a")?, e.n("m")?);
                    let y = div(&e.one(), &(&av * &e.qp(m)?))?;
                    let pre = (&e.qp(-m * (m + 1) / 2)? * &e.fin(&[e.q.clone()], m)?).scale_i64(sgn(m + 1));
                    Ok(&pre * &e.inf_ratio(&[e.q.clone()], &[y])?)
                })
            },
        }),
        formal: None,
    }
}

fn cauchy_1phi1() -> IdentityRecord {
    IdentityRecord {
        id: "cauchy-1phi1",
        citation: "Cauchy's 1phi1 summation",
        quote: "1phi1(a; c; q, c/a) = (c/a;q)_inf / (c;q)_inf",
        params: &[("a", "a != 0"), ("c", "c q^k != 1"), ("q", "0 < |q| < 1")],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                d.complex("a", 0.2, 3.0);
                d.complex("c", 0.2, 3.0);
            },
            admissible: always,
            guards: |a| g40(&[f(a, "c")]),
            lhs: |a, c| {
                run(a, c, |e| {
                    let (av, cv) = (e.p("a")?, e.p("c")?);
                    e.phi(&[av.clone()], &[cv.clone()], &div(&cv, &av)?)
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let (av, cv) = (e.p("a")?, e.p("c")?);
                    e.inf_ratio(&[div(&cv, &av)?], &[cv])
                })
            },
        }),
        formal: None,
    }
}

fn cauchy_dx() -> IdentityRecord {
    IdentityRecord {
        id: "cauchy-dx",
        citation: "Cauchy's 1phi1 summation, derivative in a at a = c",
        quote: "sum_{n>=1} (-1)^(n-1) q^(n(n-1)/2) / (q;q)_n sum_{k=0}^{n-1} 1/(1 - c q^k) \
                = (q;q)_inf / (c;q)_inf",
        params: &[("c", "|c| > 1"), ("q", "0 < |q| < 1")],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                d.complex("c", 1.1, 4.0);
            },
            admissible: |a| f(a, "c").norm() > 1.0,
            guards: |a| g40(&[f(a, "c")]),
            lhs: |a, c| {
                run(a, c, |e| {
                    let cv = e.p("c")?;
                    let (mut u, mut h) = (e.one(), e.zero());
                    e.sum(1, |n| {
                        // u = q^(n(n-1)/2) / (q;q)_n, h = sum_{k<n} 1/(1 - c q^k)
                        u = div(&(&u * &e.qp(n - 1)?), &om(&e.qp(n)?))?;
                        h = &h + &div(&e.one(), &om(&(&cv * &e.qp(n - 1)?)))?;
                        Ok((&u * &h).scale_i64(sgn(n - 1)))
                    })
                })
            },
            rhs: |a, c| run(a, c, |e| e.inf_ratio(&[e.q.clone()], &[e.p("c")?])),
        }),
        formal: None,
    }
}

fn qgauss() -> IdentityRecord {
    IdentityRecord {
        id: "qgauss",
        citation: "q-Gauss summation",
        quote: "2phi1(a, b; c; q, c/(ab)) = (c/a, c/b;q)_inf / (c, c/(ab);q)_inf",
        params: &[
            ("a", "any"),
            ("b", "any"),
            ("c", "|c/(ab)| < 1"),
            ("q", "0 < |q| < 1"),
        ],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                d.complex("a", 1.2, 3.0);
                d.complex("b", 1.2, 3.0);
                d.complex("c", 0.1, 1.0);
            },
            admissible: |a| (f(a, "c") / (f(a, "a") * f(a, "b"))).norm() < 1.0,
            guards: |a| g40(&[f(a, "c")]),
            lhs: |a, c| {
                run(a, c, |e| {
                    let (av, bv, cv) = (e.p("a")?, e.p("b")?, e.p("c")?);
                    let x = div(&cv, &(&av * &bv))?;
                    e.phi(&[av, bv], &[cv], &x)
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let (av, bv, cv) = (e.p("a")?, e.p("b")?, e.p("c")?);
                    let x = div(&cv, &(&av * &bv))?;
                    e.inf_ratio(&[div(&cv, &av)?, div(&cv, &bv)?], &[cv, x])
                })
            },
        }),
        formal: None,
    }
}

fn qgauss_da_c() -> IdentityRecord {
    IdentityRecord {
        id: "qgauss-da-c",
        citation: "q-Gauss summation, derivative in a at a = c",
        quote: "sum_{n>=1} (b;q)_n/(q;q)_n b^(-n) sum_{k=0}^{n-1} 1/(1 - c q^k) \
                = -(q, c/b;q)_inf / (c, 1/b;q)_inf",
        params: &[("b", "|b| > 1"), ("c", "c q^k != 1"), ("q", "0 < |q| < 1")],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                d.complex("b", 1.1, 4.0);
                d.complex("c", 0.1, 2.0);
            },
            admissible: |a| f(a, "b").norm() > 1.0,
            guards: |a| g40(&[f(a, "c")]),
            lhs: |a, c| {
                run(a, c, |e| {
                    let (bv, cv) = (e.p("b")?, e.p("c")?);
                    let binv = div(&e.one(), &bv)?;
                    let (mut u, mut h) = (e.one(), e.zero());
                    e.sum(1, |n| {
                        let qn1 = e.qp(n - 1)?;
                        u = div(&(&(&u * &om(&(&bv * &qn1))) * &binv), &om(&e.qp(n)?))?;
                        h = &h + &div(&e.one(), &om(&(&cv * &qn1)))?;
                        Ok(&u * &h)
                    })
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let (bv, cv) = (e.p("b")?, e.p("c")?);
                    let r = e.inf_ratio(&[e.q.clone(), div(&cv, &bv)?], &[cv, div(&e.one(), &bv)?])?;
                    Ok(-&r)
                })
            },
        }),
        formal: None,
    }
}

fn qgauss_da_1() -> IdentityRecord {
    IdentityRecord {
        id: "qgauss-da-1",
        citation: "q-Gauss summation, derivative in a at a = 1",
        quote: "sum_{n>=1} 1/(1 - q^n) (b;q)_n/(c;q)_n (c/b)^n \
                = (c/b;q)_inf/(c;q)_inf sum_{n>=0} n (b;q)_n/(q;q)_n (c/b)^n",
        params: &[("b", "b != 0"), ("c", "|c/b| < 1"), ("q", "0 < |q| < 1")],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                let b = d.complex("b", 0.3, 3.0);
                let y = d.point(0.1, 0.8);
                d.set("c", b * y);
            },
            admissible: |a| (f(a, "c") / f(a, "b")).norm() < 1.0,
            guards: |a| g40(&[f(a, "c")]),
            lhs: |a, c| {
                run(a, c, |e| {
                    let (bv, cv) = (e.p("b")?, e.p("c")?);
                    let y = div(&cv, &bv)?;
                    let mut u = e.one();
                    e.sum(1, |n| {
                        let qn1 = e.qp(n - 1)?;
                        u = div(&(&(&u * &om(&(&bv * &qn1))) * &y), &om(&(&cv * &qn1)))?;
                        div(&u, &om(&e.qp(n)?))
                    })
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let (bv, cv) = (e.p("b")?, e.p("c")?);
                    let y = div(&cv, &bv)?;
                    let mut u = e.one();
                    let s = e.sum(0, |n| {
                        if n > 0 {
                            u = div(&(&(&u * &om(&(&bv * &e.qp(n - 1)?))) * &y), &om(&e.qp(n)?))?;
                        }
                        Ok(u.scale_i64(n))
                    })?;
                    Ok(&e.inf_ratio(&[y], &[cv])? * &s)
                })
            },
        }),
        formal: None,
    }
}

fn ramanujan_1psi1() -> IdentityRecord {
    IdentityRecord {
        id: "ramanujan-1psi1",
        citation: "Ramanujan's 1psi1 summation",
        quote: "1psi1(a; b; q, x) = (q, b/a, ax, q/(ax);q)_inf / (b, q/a, x, b/(ax);q)_inf",
        params: &[
            ("a", "a != 0"),
            ("b", "|b/a| < |x|"),
            ("x", "|x| < 1"),
            ("q", "0 < |q| < 1"),
        ],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                let a = d.complex("a", 0.5, 3.0);
                let x = d.complex("x", 0.3, 0.9);
                let y = d.point(0.05, 0.8);
                d.set("b", a * x * y);
            },
            admissible: |a| {
                let x = f(a, "x").norm();
                (f(a, "b") / f(a, "a")).norm() < x && x < 1.0
            },
            guards: |a| vec![g(f(a, "b"), 0, 40), g(f(a, "a"), -40, -1)],
            lhs: |a, c| run(a, c, |e| e.psi(&[e.p("a")?], &[e.p("b")?], &e.p("x")?)),
            rhs: |a, c| {
                run(a, c, |e| {
                    let (av, bv, x) = (e.p("a")?, e.p("b")?, e.p("x")?);
                    let ax = &av * &x;
                    e.inf_ratio(
                        &[e.q.clone(), div(&bv, &av)?, ax.clone(), div(&e.q, &ax)?],
                        &[bv.clone(), div(&e.q, &av)?, x, div(&bv, &ax)?],
                    )
                })
            },
        }),
        formal: None,
    }
}

/// Running factors of the derivative of the 1psi1 sum; see `r1psi1_dx`.
struct Psi1Terms {
    qa: C,
    qb: C,
    a1: C,
    b1: C,
    an: C,
    bn: C,
}

impl Psi1Terms {
    fn new(e: &Ev, a: &C, b: &C) -> Self {
        Psi1Terms {
            qa: e.one(),
            qb: e.one(),
            a1: om(a),
            b1: om(b),
            an: e.one(),
            bn: e.one(),
        }
    }

    /// Advance from index `n - 1` to `n`.
    fn step(&mut self, e: &Ev, a: &C, b: &C, n: i64) -> Result<()> {
        let qn = e.qp(n)?;
        self.qa = &self.qa * &om(&div(&qn, a)?);
        self.qb = &self.qb * &om(&div(&qn, b)?);
        self.a1 = &self.a1 * &om(&(a * &qn));
        self.b1 = &self.b1 * &om(&(b * &qn));
        self.an = &self.an * a;
        self.bn = &self.bn * b;
        Ok(())
    }
}

fn r1psi1_dx() -> IdentityRecord {
    IdentityRecord {
        id: "r1psi1-dx",
        citation: "Ramanujan's 1psi1 summation, derivative at x = 1",
        quote: "(q;q)_inf^3 (ab;q)_inf / ((a;q)_inf^2 (b;q)_inf^2) \
                = sum_{n>=0} [n (q/a;q)_n a^n/(b;q)_(n+1) + (n+1) (q/b;q)_n b^n/(a;q)_(n+1)]",
        params: &[("a", "|a| < 1"), ("b", "|b| < 1"), ("q", "0 < |q| < 1")],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                d.complex("a", 0.05, 0.9);
                d.complex("b", 0.05, 0.9);
            },
            admissible: |a| f(a, "a").norm() < 1.0 && f(a, "b").norm() < 1.0,
            guards: no_guards,
            lhs: |a, c| {
                run(a, c, |e| {
                    let (av, bv) = (e.p("a")?, e.p("b")?);
                    let q3 = e.inf(&[e.q.clone()])?.powi(3)?;
                    let num = &q3 * &e.inf(&[&av * &bv])?;
                    let den = &e.inf(&[av])?.powi(2)? * &e.inf(&[bv])?.powi(2)?;
                    div(&num, &den)
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let (av, bv) = (e.p("a")?, e.p("b")?);
                    let mut t = Psi1Terms::new(e, &av, &bv);
                    e.sum(0, |n| {
                        if n > 0 {
                            t.step(e, &av, &bv, n)?;
                        }
                        let x = div(&(&t.qa * &t.an), &t.b1)?.scale_i64(n);
                        let y = div(&(&t.qb * &t.bn), &t.a1)?.scale_i64(n + 1);
                        Ok(&x + &y)
                    })
                })
            },
        }),
        formal: None,
    }
}

fn r1psi1_a_eq_b() -> IdentityRecord {
    IdentityRecord {
        id: "r1psi1-a=b",
        citation: "Ramanujan's 1psi1 summation, derivative at x = 1 with a = b",
        quote: "sum_{n>=0} (2n+1) (q/a;q)_n a^n / (a;q)_(n+1) = (q;q)_inf^3 (a^2;q)_inf / (a;q)_inf^4",
        params: &[("a", "|a| < 1"), ("q", "0 < |q| < 1")],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                d.complex("a", 0.05, 0.9);
            },
            admissible: |a| f(a, "a").norm() < 1.0,
            guards: no_guards,
            lhs: |a, c| {
                run(a, c, |e| {
                    let av = e.p("a")?;
                    let mut t = Psi1Terms::new(e, &av, &av);
                    e.sum(0, |n| {
                        if n > 0 {
                            t.step(e, &av, &av, n)?;
                        }
                        Ok(div(&(&t.qa * &t.an), &t.a1)?.scale_i64(2 * n + 1))
                    })
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let av = e.p("a")?;
                    let num = &e.inf(&[e.q.clone()])?.powi(3)? * &e.inf(&[&av * &av])?;
                    div(&num, &e.inf(&[av])?.powi(4)?)
                })
            },
        }),
        formal: None,
    }
}

fn jacobi_cubed() -> IdentityRecord {
    IdentityRecord {
        id: "jacobi-cubed",
        citation: "Jacobi's identity for the cube of the Euler product",
        quote: "sum_{n>=0} (-1)^n (2n+1) q^(n(n+1)/2) = (q;q)_inf^3",
        params: &[],
        modes: &[Mode::Formal],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: None,
        formal: Some(FormalSpec {
            cases: |order| vec![case(ParamAssignment::new(), order)],
            lhs: |_, order| {
                theta_series(
                    &theta(1, 1, true, Weight::Linear { c0: 1, c1: 2 }, Support::Unilateral),
                    order,
                )
            },
            rhs: |_, order| Ok(pinf(&fq(1, 1), 1, order)?.pow(3)),
        }),
    }
}

fn danbian_gen() -> IdentityRecord {
    IdentityRecord {
        id: "danbian-gen",
        citation: "Ramanujan's 1psi1 summation, derivative with ab = q",
        quote: "sum_{n in Z} n b^n / (1 - q^(n+1)/b) = (q;q)_inf^4 / ((b;q)_inf^2 (q/b;q)_inf^2)",
        params: &[("b", "|q| < |b| < 1"), ("q", "0 < |q| < 1")],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: Some(NumericSpec {
            sample: |d| {
                let q = d.q();
                let r = d.point(1.15, 0.85 / q.norm());
                d.set("b", q * r);
            },
            admissible: |a| {
                let b = f(a, "b").norm();
                f(a, "q").norm() < b && b < 1.0
            },
            guards: no_guards,
            lhs: |a, c| {
                run(a, c, |e| {
                    let bv = e.p("b")?;
                    let binv = div(&e.one(), &bv)?;
                    // n >= 0: bn = b^n, qn = q^(n+1)
                    let (mut bn, mut qn) = (e.one(), e.q.clone());
                    let pos = e.sum(0, |n| {
                        if n > 0 {
                            bn = &bn * &bv;
                            qn = &qn * &e.q;
                        }
                        div(&bn.scale_i64(n), &om(&(&qn * &binv)))
                    })?;
                    // n = -k: bn = b^-k, qn = q^(1-k)
                    let qinv = div(&e.one(), &e.q)?;
                    let (mut bn, mut qn) = (e.one(), e.one());
                    let neg = e.sum(1, |k| {
                        bn = &bn * &binv;
                        qn = if k == 1 { e.one() } else { &qn * &qinv };
                        div(&bn.scale_i64(-k), &om(&(&qn * &binv)))
                    })?;
                    Ok(&pos + &neg)
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let bv = e.p("b")?;
                    let q4 = e.inf(&[e.q.clone()])?.powi(4)?;
                    let den = &e.inf(&[bv.clone()])?.powi(2)? * &e.inf(&[div(&e.q, &bv)?])?.powi(2)?;
                    div(&q4, &den)
                })
            },
        }),
        formal: None,
    }
}

fn danbian_gen_000() -> IdentityRecord {
    IdentityRecord {
        id: "danbian-gen-000",
        citation: "Ramanujan's 1psi1 summation, derivative with ab = q, base q^2 and b = -q",
        quote: "sum_{n in Z} n (-q)^n / (1 + q^(2n+1)) = (q;q^2)_inf^4 (q^4;q^4)_inf^4",
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
                for n in 1..=order.max(0) {
                    terms.push(geom_inv(-1, 2 * n + 1, order)?.shift(n).scale(&rat(n * sgn(n))));
                }
                // n = -k: -k (-1)^k q^(k-1) / (1 + q^(2k-1))
                for k in 1..=order.max(0) + 1 {
                    terms.push(
                        geom_inv(-1, 2 * k - 1, order)?
                            .shift(k - 1)
                            .scale(&rat(-k * sgn(k))),
                    );
                }
                Ok(LaurentSeriesQ::sum(terms, order))
            },
            rhs: |_, order| {
                let a = pinf(&fq(1, 1), 2, order)?.pow(4);
                Ok(&a * &pinf(&fq(1, 4), 4, order)?.pow(4))
            },
        }),
    }
}

fn quintuple() -> IdentityRecord {
    IdentityRecord {
        id: "quintuple",
        citation: "quintuple product identity",
        quote: "sum_{n in Z} q^(3n(n-1)/2) (1 - x q^n) (q x^3)^n = (q, x, q/x;q)_inf (q x^2, q/x^2;q^2)_inf",
        params: &[("x", "x != 0"), ("q", "0 < |q| < 1")],
        modes: &[Mode::Numeric, Mode::Formal],
        expected: Expected::Pass,
        companion: None,
        notes: "formal cases take x in {2, -1/2, 3/5, -3}",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                d.complex("x", 0.3, 2.5);
            },
            admissible: |a| f(a, "x").norm() > 0.0,
            guards: no_guards,
            lhs: |a, c| {
                run(a, c, |e| {
                    let x = e.p("x")?;
                    let qx3 = &e.q * &x.powi(3)?;
                    let term = |n: i64| -> Result<C> {
                        let t = &e.qp(3 * c2(n))? * &om(&(&x * &e.qp(n)?));
                        Ok(&t * &qx3.powi(n)?)
                    };
                    let pos = e.sum(0, term)?;
                    let neg = e.sum(1, |k| term(-k))?;
                    Ok(&pos + &neg)
                })
            },
            rhs: |a, c| {
                run(a, c, |e| {
                    let x = e.p("x")?;
                    let x2 = &x * &x;
                    let q2 = &e.q * &e.q;
                    let p1 = e.inf(&[e.q.clone(), x.clone(), div(&e.q, &x)?])?;
                    let p2 = e.inf_base(&[&e.q * &x2, div(&e.q, &x2)?], &q2)?;
                    Ok(&p1 * &p2)
                })
            },
        }),
        formal: Some(FormalSpec {
            cases: |order| {
                [
                    fq(2, 0),
                    FormalParam::ratio(-1, 2, 0),
                    FormalParam::ratio(3, 5, 0),
                    fq(-3, 0),
                ]
                .into_iter()
                .map(|x| case(ParamAssignment::new().with("x", formal_value(x)), order))
                .collect()
            },
            lhs: |a, order| {
                let x = a.formal("x")?;
                let x3 = x.pow(3)?;
                let mut s1 = theta(3, 1, false, Weight::One, Support::Bilateral);
                s1.x = Some(x3.clone());
                let mut s2 = theta(3, 2, false, Weight::One, Support::Bilateral);
                s2.x = Some(x3);
                Ok(&theta_series(&s1, order)? - &theta_series(&s2, order)?.mul_param(&x))
            },
            rhs: |a, order| {
                let x = a.formal("x")?;
                let q = fq(1, 1);
                let xinv = x.inv()?;
                let x2 = x.pow(2)?;
                let x2inv = x2.inv()?;
                let factors = [
                    pinf(&q, 1, order)?,
                    pinf(&x, 1, order)?,
                    pinf(&xinv.times(&q), 1, order)?,
                    pinf(&x2.times(&q), 2, order)?,
                    pinf(&x2inv.times(&q), 2, order)?,
                ];
                Ok(factors.iter().skip(1).fold(factors[0].clone(), |acc, p| &acc * p))
            },
        }),
    }
}

fn quintuple_dx() -> IdentityRecord {
    IdentityRecord {
        id: "quintuple-dx",
        citation: "quintuple product identity, derivative at x = 1",
        quote: "6 sum_{n in Z} n q^(3n(n-1)/2 + 2n) = (q;q)_inf^3 (q;q^2)_inf^2 - (-q, -q^2, q^3;q^3)_inf; \
                via sum_{n in Z} (1 - 3n (1 - q^n) q^(-n)) q^(3n(n-1)/2 + 2n) = (q;q)_inf^3 (q;q^2)_inf^2",
        params: &[("variant", "0: final identity, 1: intermediate identity")],
        modes: &[Mode::Formal],
        expected: Expected::Pass,
        companion: None,
        notes: "both the final identity and the intermediate one are checked",
        numeric: None,
        formal: Some(FormalSpec {
            cases: |order| {
                (0..=1)
                    .map(|v| case(ParamAssignment::new().with("variant", int_value(v)), order))
                    .collect()
            },
            lhs: |a, order| {
                let weighted =
                    |lin: i64| theta_series(&theta(3, lin, false, Weight::N, Support::Bilateral), order);
                if a.int("variant")? == 0 {
                    Ok(weighted(2)?.scale(&rat(6)))
                } else {
                    let plain = theta_series(&theta(3, 2, false, Weight::One, Support::Bilateral), order)?;
                    Ok(&(&plain - &weighted(1)?.scale(&rat(3))) + &weighted(2)?.scale(&rat(3)))
                }
            },
            rhs: |a, order| {
                let main = &pinf(&fq(1, 1), 1, order)?.pow(3) * &pinf(&fq(1, 1), 2, order)?.pow(2);
                if a.int("variant")? == 0 {
                    let cubic = &(&pinf(&fq(-1, 1), 3, order)? * &pinf(&fq(-1, 2), 3, order)?)
                        * &pinf(&fq(1, 3), 3, order)?;
                    Ok(&main - &cubic)
                } else {
                    Ok(main)
                }
            },
        }),
    }
}

fn jacobi_triple() -> IdentityRecord {
    IdentityRecord {
        id: "jacobi-triple",
        citation: "Jacobi's triple product identity",
        quote: "sum_{n in Z} (-1)^n q^(n(n-1)/2) x^n = (x, q/x, q;q)_inf",
        params: &[("x", "x != 0"), ("q", "0 < |q| < 1")],
        modes: &[Mode::Numeric, Mode::Formal],
        expected: Expected::Pass,
        companion: None,
        notes: "formal cases take x in {2, -1, 1/3, q, -2q}",
        numeric: Some(NumericSpec {
            sample: |d| {
                d.q();
                d.complex("x", 0.3, 2.5);
            },
            admissible: |a| f(a, "x").norm() > 0.0,
            guards: no_guards,
            lhs: |a, c| {
                run(a, c, |e| {
                    let spec = ThetaSumSpec {
                        quad: 1,
                        lin: 0,
                        alternating: true,
                        weight: Weight::One,
                        x: Some(e.p("x")?),
                        support: Support::Bilateral,
                    };
                    eval_theta_sum(&spec, &e.q, &e.ctx)
                })
            },
            rhs: |a, c| run(a, c, |e| triple_product(&e.p("x")?, &e.q, &e.ctx)),
        }),
        formal: Some(FormalSpec {
            cases: |order| {
                [
                    fq(2, 0),
                    fq(-1, 0),
                    FormalParam::ratio(1, 3, 0),
                    fq(1, 1),
                    fq(-2, 1),
                ]
                .into_iter()
                .map(|x| case(ParamAssignment::new().with("x", formal_value(x)), order))
                .collect()
            },
            lhs: |a, order| {
                let mut spec = theta(1, 0, true, Weight::One, Support::Bilateral);
                spec.x = Some(a.formal("x")?);
                theta_series(&spec, order)
            },
            rhs: |a, order| {
                let x = a.formal("x")?;
                let q = fq(1, 1);
                let p = &pinf(&x, 1, order)? * &pinf(&x.inv()?.times(&q), 1, order)?;
                Ok(&p * &pinf(&q, 1, order)?)
            },
        }),
    }
}

pub(super) fn records() -> Vec<IdentityRecord> {
    vec![
        phi10(),
        phi10_dx(),
        cauchy_1phi1(),
        cauchy_dx(),
        qgauss(),
        qgauss_da_c(),
        qgauss_da_1(),
        ramanujan_1psi1(),
        r1psi1_dx(),
        r1psi1_a_eq_b(),
        jacobi_cubed(),
        danbian_gen(),
        danbian_gen_000(),
        quintuple(),
        quintuple_dx(),
        jacobi_triple(),
    ]
}
