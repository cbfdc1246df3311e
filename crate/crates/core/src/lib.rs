//! K-theoretic instanton partition functions in exact arithmetic, with checks of the
//! blowup equations, the prepotential expansion and the related q-series and
//! polylogarithm identities.

pub mod blowup;
pub mod error;
pub mod exactalg;
pub mod instanton;
pub mod partitions;
pub mod polylog;
pub mod prepotential;
pub mod qseries_special;

pub use error::{Error, Result};
pub use exactalg::{
    exp, exp_frac, rand_eq, rat, rat_frac, Coeff, EvalConfig, Exp, FactoredRat, LaurentPoly, Monomial, QSeries, Rat,
    Series, Subst, Var,
};
pub use instanton::InstantonContext;
pub use partitions::{YoungDiagram, YoungTuple};
