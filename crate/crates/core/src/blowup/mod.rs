//! Blowup equations: coweight sums, l-factors, Ẑ_{k,d} and the recursion for Z_n.

pub mod coweight;
pub mod lfactor;
pub mod pairing;
pub mod recursion;
pub mod zhat;

pub use coweight::{coweights_with_pairing_bound, enumerate_coweights, roots, Coweight, Root};
pub use lfactor::{inv_l_product, l_factor, lsym_check, lsym_product_check, LsymProductReport, LsymReport};
pub use pairing::{pairing_cancellation_check, PairingReport};
pub use recursion::{cross_check, solve_recursion, RecursionOutput, RecursionStep};
pub use zhat::{
    exponent_structure_ok, key2_expected, trace_gauge, verify_key2, zhat, zhat_products, Key2Report, OrderStatus,
};
