//! The identity catalog.

mod catalog_binomial;
mod catalog_products;
mod catalog_transforms;
mod eval;
mod params;

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{QError, Result};
use crate::formal::LaurentSeriesQ;
use crate::qcore::{ComplexHP, NumericContext};

pub use params::{Draw, Guard, ParamAssignment, ParamValue, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Mode {
    #[serde(rename = "NUMERIC")]
    Numeric,
    #[serde(rename = "FORMAL")]
    Formal,
    #[serde(rename = "EXACT-POLY")]
    ExactPoly,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Numeric => "NUMERIC",
            Mode::Formal => "FORMAL",
            Mode::ExactPoly => "EXACT-POLY",
        }
    }

    pub fn is_formal(&self) -> bool {
        !matches!(self, Mode::Numeric)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Expected {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "EXPECTED-FAIL")]
    ExpectedFail,
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expected::Pass => "PASS",
            Expected::ExpectedFail => "EXPECTED-FAIL",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lhs,
    Rhs,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Lhs => "LHS",
            Side::Rhs => "RHS",
        })
    }
}

pub type NumericFn = fn(&ParamAssignment, &NumericContext) -> Result<ComplexHP>;
pub type FormalFn = fn(&ParamAssignment, i64) -> Result<LaurentSeriesQ>;

/// Numeric evaluators together with the sampling domain.
#[derive(Clone, Copy)]
pub struct NumericSpec {
    /// Draws one candidate assignment, including `q`.
    pub sample: fn(&mut Draw),
    /// Domain constraints the sampler does not satisfy by construction.
    pub admissible: fn(&ParamAssignment) -> bool,
    /// Pole-proximity checks on the denominators of both sides.
    pub guards: fn(&ParamAssignment) -> Vec<Guard>,
    pub lhs: NumericFn,
    pub rhs: NumericFn,
}

/// One fixed instance of a formal or exact-polynomial check.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalCase {
    pub params: ParamAssignment,
    pub order: i64,
}

#[derive(Clone, Copy)]
pub struct FormalSpec {
    /// The checked instances for a requested default order.
    pub cases: fn(i64) -> Vec<FormalCase>,
    pub lhs: FormalFn,
    pub rhs: FormalFn,
}

pub struct IdentityRecord {
    pub id: &'static str,
    /// Name of the result in the literature.
    pub citation: &'static str,
    /// The identity in plain text.
    pub quote: &'static str,
    pub params: &'static [(&'static str, &'static str)],
    pub modes: &'static [Mode],
    pub expected: Expected,
    /// Corrected variant of an expected failure.
    pub companion: Option<&'static str>,
    pub notes: &'static str,
    pub numeric: Option<NumericSpec>,
    pub formal: Option<FormalSpec>,
}

impl fmt::Debug for IdentityRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityRecord")
            .field("id", &self.id)
            .field("modes", &self.modes)
            .field("expected", &self.expected)
            .finish_non_exhaustive()
    }
}

impl IdentityRecord {
    pub fn supports(&self, mode: Mode) -> bool {
        self.modes.contains(&mode)
    }

    fn unsupported(&self, mode: Mode) -> QError {
        QError::UnsupportedMode {
            id: self.id.to_string(),
            mode: mode.to_string(),
        }
    }

    pub fn numeric_spec(&self) -> Result<&NumericSpec> {
        match (&self.numeric, self.supports(Mode::Numeric)) {
            (Some(spec), true) => Ok(spec),
            _ => Err(self.unsupported(Mode::Numeric)),
        }
    }

    pub fn formal_spec(&self, mode: Mode) -> Result<&FormalSpec> {
        match (&self.formal, mode.is_formal() && self.supports(mode)) {
            (Some(spec), true) => Ok(spec),
            _ => Err(self.unsupported(mode)),
        }
    }

    /// The formal or exact-polynomial mode of this record, if any.
    pub fn formal_mode(&self) -> Option<Mode> {
        self.modes.iter().copied().find(Mode::is_formal)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "id": self.id,
            "citation": self.citation,
            "quote": self.quote,
            "params": self.params.iter()
                .map(|(n, d)| serde_json::json!({"name": n, "domain": d}))
                .collect::<Vec<_>>(),
            "modes": self.modes,
            "expected": self.expected,
            "companion": self.companion,
            "notes": self.notes,
        })
    }
}

/// A side evaluated in one of the two worlds.
#[derive(Debug, Clone, PartialEq)]
pub enum SideValue {
    Numeric(ComplexHP),
    Formal(LaurentSeriesQ),
}

/// The full catalog in its canonical order.
pub fn catalog() -> &'static [IdentityRecord] {
    static CATALOG: OnceLock<Vec<IdentityRecord>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut all = catalog_binomial::records();
        all.extend(catalog_products::records());
        all.extend(catalog_transforms::records());
        all
    })
}

pub fn lookup(id: &str) -> Result<&'static IdentityRecord> {
    catalog()
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| QError::NotFound(id.to_string()))
}

/// Records whose id matches the glob `filter`.
pub fn list(filter: &str) -> Result<Vec<&'static IdentityRecord>> {
    let pattern =
        glob::Pattern::new(filter).map_err(|e| QError::Config(format!("bad filter `{filter}`: {e}")))?;
    Ok(catalog().iter().filter(|r| pattern.matches(r.id)).collect())
}

/// Evaluate one side. Numeric values keep the working precision (digits
/// plus guard digits) so that discrepancies below `10^-digits` stay visible;
/// formal sides are expanded to `order`.
pub fn evaluate_side(
    id: &str,
    side: Side,
    asg: &ParamAssignment,
    mode: Mode,
    ctx: &NumericContext,
    order: i64,
) -> Result<SideValue> {
    let record = lookup(id)?;
    let run = || -> Result<SideValue> {
        match mode {
            Mode::Numeric => {
                let spec = record.numeric_spec()?;
                let f = if side == Side::Lhs { spec.lhs } else { spec.rhs };
                Ok(SideValue::Numeric(f(asg, ctx)?.with_precision(ctx.bits())))
            }
            _ => {
                let spec = record.formal_spec(mode)?;
                let f = if side == Side::Lhs { spec.lhs } else { spec.rhs };
                Ok(SideValue::Formal(f(asg, order)?))
            }
        }
    };
    run().map_err(|e| e.in_record(id))
}

#[cfg(test)]
mod tests {
    use super::*;

    const IDS: [&str; 48] = [
        "euler-exp",
        "euler-exp-dx",
        "euler-exp-dqx",
        "qbinom-thm",
        "qbinom-dx-at-qm",
        "qbinom-dx-sum",
        "eisenstein",
        "lambert",
        "qbinom-d2",
        "qbinom-d2-inf",
        "phi10",
        "phi10-dx",
        "cauchy-1phi1",
        "cauchy-dx",
        "qgauss",
        "qgauss-da-c",
        "qgauss-da-1",
        "ramanujan-1psi1",
        "r1psi1-dx",
        "r1psi1-a=b",
        "jacobi-cubed",
        "danbian-gen",
        "danbian-gen-000",
        "quintuple",
        "quintuple-dx",
        "jacobi-triple",
        "qclausen",
        "qclausen-dx",
        "rogers65",
        "3psi3",
        "rogers65-da",
        "zzzz-bcd",
        "zzzz-limit",
        "watson",
        "5psi5-transform",
        "5psi5-sum",
        "pfaff-saalschutz",
        "rr-finite",
        "rr-finite-corrected",
        "rogers-ramanujan",
        "bailey87",
        "bailey-da",
        "bailey-da-special",
        "liu",
        "liu-bilateral",
        "2phi1-threeterm",
        "2phi1-threeterm-dx",
        "2phi1-dx-b=c",
    ];

    #[test]
    fn catalog_has_the_48_ids_in_order() {
        let ids: Vec<&str> = catalog().iter().map(|r| r.id).collect();
        assert_eq!(ids, IDS);
    }

    #[test]
    fn records_are_well_formed() {
        for r in catalog() {
            assert!(!r.modes.is_empty(), "{}", r.id);
            assert_eq!(r.numeric.is_some(), r.supports(Mode::Numeric), "{}", r.id);
            assert_eq!(r.formal.is_some(), r.formal_mode().is_some(), "{}", r.id);
            if r.expected == Expected::ExpectedFail {
                let companion = r.companion.expect("expected failures name a companion");
                assert_eq!(lookup(companion).unwrap().expected, Expected::Pass);
            }
        }
    }

    #[test]
    fn lookup_and_list() {
        assert_eq!(lookup("qbinom-thm").unwrap().citation, "q-binomial theorem");
        let rr = lookup("rr-finite").unwrap();
        assert_eq!(rr.expected, Expected::ExpectedFail);
        assert_eq!(rr.companion, Some("rr-finite-corrected"));
        assert!(matches!(lookup("nosuch"), Err(QError::NotFound(_))));
        assert_eq!(list("qbinom-*").unwrap().len(), 5);
        assert_eq!(list("*").unwrap().len(), 48);
        assert!(list("zzz-none*").unwrap().is_empty());
    }
}
