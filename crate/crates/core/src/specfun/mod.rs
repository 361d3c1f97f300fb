//! Complex special-function kernel: log-Gamma, Gamma ratios, Gauss ₂F₁ on
//! the negative axis, and the Macdonald function K_ν.

mod bessel;
mod gamma;
mod hyp2f1;
pub mod quadrature;

pub use bessel::{bessel_k, bessel_k_trapezoid, ORDER_WINDOW};
pub use gamma::{gamma, gamma_ratio, log_gamma, log_gamma_ratio, nonpositive_integer};
pub use hyp2f1::gauss_2f1;
#[cfg(test)]
pub(crate) use hyp2f1::hypergeometric_series;
