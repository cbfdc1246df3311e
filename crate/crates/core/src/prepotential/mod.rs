//! Expansion of F = ε₁ε₂ log Z^inst at ε = 0 and the identities its coefficients satisfy.

pub mod genus1;
pub mod probe;
pub mod zeta;

pub use genus1::{contact_check, genus1_check, ContactReport, Genus1Report, Normalization, RankTwoData};
pub use probe::{
    extract_genus, log_z_along, probe, regularity_check, DirSeries, Direction, GenusSlice, RegularityReport,
    ALTERNATIVE_DIRECTIONS, DEFAULT_DIRECTIONS,
};
pub use zeta::{zeta_polynomial, zeta_shape, ZetaShape};
