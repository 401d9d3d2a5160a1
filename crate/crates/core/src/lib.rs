//! Verification engine for basic hypergeometric identities.

pub mod deriv;
pub mod error;
pub mod formal;
pub mod harness;
pub mod qcore;
pub mod registry;
pub mod series;

pub use error::{QError, Result};
