//! Arbitrary-precision complex arithmetic and q-Pochhammer products.

mod complex;
mod context;
mod poch;

pub use complex::{format_real, real_log10, ComplexHP, Real};
pub use context::NumericContext;
pub use poch::{
    divisor_count, lambert_sum, poch, poch_finite, poch_inf, poch_multi, qbinom_num, triple_product,
    PochIndex, PochSpec,
};
pub(crate) use poch::{ensure_nonzero, infinite_product_len, log10_one_plus_pow, require_inside_unit_disk};
