//! Special functions at arbitrary precision: dilogarithm, Jacobi theta with
//! its inversion formula, modified Bessel `I`, the eta-type product
//! `(q; q)_inf`, and Wright's contour integral `P_s`.
//!
//! Every routine takes an explicit precision in bits and works internally
//! with [`GUARD_BITS`](crate::num::GUARD_BITS) extra.

mod bessel;
mod dilog;
mod eta;
mod theta;
mod wright;

pub use bessel::bessel_i;
pub use dilog::dilog;
pub use eta::{eta_inversion_principal, eta_pochhammer_eval, neg_pochhammer_eval, neg_pochhammer_quotient, nome};
pub use theta::{jacobi_theta, theta_inverted, theta_inverted_gaussian, ThetaArgs};
pub use wright::{wright_p, wright_p_detailed, WRIGHT_P_BUDGET};

use crate::num::BigReal;

/// `Q = (3 - sqrt 5) / 2`, the root of `Q^(1/2) + Q = 1` in (0, 1).
pub fn golden_q(prec: usize) -> BigReal {
    (&BigReal::from_u64(3, prec) - &BigReal::from_u64(5, prec).sqrt()) / 2.0
}

/// `(1 + sqrt 5) / 2`.
pub fn golden_ratio(prec: usize) -> BigReal {
    (&BigReal::from_u64(5, prec).sqrt() + 1.0) / 2.0
}
