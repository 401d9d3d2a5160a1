use crate::error::{QError, Result};

const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

/// Precision and truncation policy shared by every numeric evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericContext {
    /// Significant decimal digits reported in results.
    pub digits: u32,
    /// Relative discrepancy below which two sides are considered equal.
    pub tol: f64,
    /// Hard cap on the number of terms or factors of any sum or product.
    pub max_terms: usize,
    /// Extra decimal digits carried internally on top of `digits`.
    pub guard_digits: u32,
}

impl Default for NumericContext {
    fn default() -> Self {
        NumericContext {
            digits: 60,
            tol: 1e-30,
            max_terms: 100_000,
            guard_digits: 20,
        }
    }
}

impl NumericContext {
    /// Context with `digits` of precision and the matching default tolerance
    /// `10^(-digits/2)`.
    pub fn with_digits(digits: u32) -> Result<Self> {
        let ctx = NumericContext {
            digits,
            tol: 10f64.powf(-(digits as f64) / 2.0),
            ..NumericContext::default()
        };
        ctx.validate()?;
        Ok(ctx)
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        self.tol = tol;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.digits < 15 {
            return Err(QError::Config(format!(
                "digits must be >= 15, got {}",
                self.digits
            )));
        }
        if self.digits + self.guard_digits > 1000 {
            return Err(QError::Config(
                "digits + guard_digits must not exceed 1000".into(),
            ));
        }
        if self.max_terms < 16 {
            return Err(QError::Config(format!(
                "max_terms must be >= 16, got {}",
                self.max_terms
            )));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(QError::Config(format!(
                "tol must lie in (0, 1), got {}",
                self.tol
            )));
        }
        Ok(())
    }

    pub fn working_digits(&self) -> u32 {
        self.digits + self.guard_digits
    }

    /// Binary precision used for all intermediate arithmetic.
    pub fn bits(&self) -> usize {
        (self.working_digits() as f64 * BITS_PER_DIGIT).ceil() as usize + 4
    }

    /// Binary precision of reported results.
    pub fn output_bits(&self) -> usize {
        (self.digits as f64 * BITS_PER_DIGIT).ceil() as usize + 1
    }

    /// log10 of the truncation target: tails are cut once they fall below
    /// one unit in the last working digit.
    pub fn eps_log10(&self) -> f64 {
        -(self.working_digits() as f64)
    }

    /// log10 of the pole threshold `10^-(digits - guard_digits)`.
    pub fn pole_log10(&self) -> f64 {
        -(self.digits.saturating_sub(self.guard_digits).max(self.digits / 2) as f64)
    }

    /// A context carrying `extra` more working digits, used where a sum is
    /// known to cancel.
    pub fn with_extra_digits(&self, extra: u32) -> NumericContext {
        NumericContext {
            guard_digits: self.guard_digits + extra,
            ..*self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_policy() {
        let ctx = NumericContext::default();
        assert_eq!(ctx.digits, 60);
        assert_eq!(ctx.guard_digits, 20);
        assert_eq!(ctx.max_terms, 100_000);
        assert_eq!(ctx.tol, 1e-30);
        assert!(ctx.validate().is_ok());
        assert_eq!(NumericContext::with_digits(120).unwrap().tol, 1e-60);
    }

    #[test]
    fn rejects_bad_settings() {
        assert!(NumericContext::with_digits(10).is_err());
        assert!(NumericContext::default().with_tol(0.0).is_err());
        assert!(NumericContext::default().with_tol(1.5).is_err());
        let ctx = NumericContext {
            max_terms: 4,
            ..NumericContext::default()
        };
        assert!(ctx.validate().is_err());
    }

    #[test]
    fn pole_threshold_sits_between_output_and_tolerance() {
        let ctx = NumericContext::default();
        assert_eq!(ctx.pole_log10(), -40.0);
        assert!(ctx.bits() > ctx.output_bits());
    }
}
