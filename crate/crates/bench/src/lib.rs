//! Inputs shared by the criterion benches.

use nekrasov_core::exactalg::FactoredRat;
use nekrasov_core::InstantonContext;

/// (r, n) cells small enough for repeated sampling.
pub const CELLS: [(usize, u32); 5] = [(1, 3), (1, 4), (2, 1), (2, 2), (2, 3)];

/// Fixed-point terms of Z_n, unsummed.
pub fn terms(r: usize, n: u32) -> Vec<FactoredRat> {
    InstantonContext::new(r).terms(n).into_iter().map(|(_, t)| t).collect()
}
