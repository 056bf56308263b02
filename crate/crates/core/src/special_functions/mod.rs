//! Special functions: gamma and its reciprocal, the complementary error
//! function, the upper incomplete gamma function for complex argument and
//! the one-parameter Mittag-Leffler function on the negative real axis.

mod gamma;
mod mittag_leffler;

pub use gamma::{erfc, gamma_fn, ln_gamma, recip_gamma, upper_incomplete_gamma};
pub use mittag_leffler::{
    mittag_leffler, ml_asymptotic, ml_integral, ml_series, MLBranch, MLParams, MLValue,
    MittagLeffler,
};
