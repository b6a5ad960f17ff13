//! Asymptotics of the odd-even generating function near `q = 1` and of its
//! coefficients: the term-wise saddle-point expansion, the theta-function
//! resummation, the Tauberian transfer, and the closed-form coefficient laws.

mod closed;
mod expansion;
mod gfnum;
mod law;

pub use closed::ClosedForm;
pub use expansion::{
    exact_log_term, expansion_order_check, odd_even_expansion_error, peak_eps, phi_class_sum, phi_nu, root_r,
    sj_theta_asymptotic, zagier_log_expansion, ExpansionError, ExpansionParams, ExpansionTerms, NuFrame, OrderCheck,
};
pub use gfnum::{
    gf_asymptotic, gf_ratio_table, gf_series_value, gf_term_sum, oe_growth, ratio_table, series_order_for,
    sj_term_sum, strictly_approaching_one, term_profile, unimodality, Branch, GfRow, Kind, RatioRow, Unimodality,
};
pub use law::{
    even_part_ingham_input, halve_argument, halve_argument_exact, ingham_transfer, ingham_transfer_exact,
    oe_asymptotic, oe_law_exact, oebar_asymptotic, AsymptoticLaw, ExactInghamInput, ExactLaw, InghamInput,
};

use serde::Serialize;

use crate::error::Result;
use crate::num::{working_precision, BigReal};
use crate::specfun::{dilog, golden_q, golden_ratio};

/// Absolute residuals of the golden-ratio constant identities.
#[derive(Clone, Debug, Serialize)]
pub struct ConstantResiduals {
    /// `Q^(1/2) + Q - 1`
    pub root_equation: f64,
    /// `Li2(Q) - (pi^2/15 - ln^2 phi)`
    pub dilog_value: f64,
    /// `(ln Q / 2)^2 - ln^2 phi`
    pub log_relation: f64,
    /// `(pi^2/6 - Li2(Q) - (ln Q / 2)^2) / 2 - pi^2/20`
    pub bracket: f64,
}

impl ConstantResiduals {
    pub fn max(&self) -> f64 {
        [self.root_equation, self.dilog_value, self.log_relation, self.bracket].into_iter().fold(0.0, f64::max)
    }
}

pub fn constant_residuals(prec: usize) -> Result<ConstantResiduals> {
    let wp = working_precision(prec);
    let q = golden_q(wp);
    let pi2 = &BigReal::pi(wp) * &BigReal::pi(wp);
    let lphi = golden_ratio(wp).ln();
    let lphi2 = &lphi * &lphi;
    let li2 = dilog(&q, wp)?;
    let half_log = &q.ln() / 2.0;
    let hl2 = &half_log * &half_log;
    let bracket = &(&(&(&pi2 / 6.0) - &li2) - &hl2) / 2.0;
    let res = |x: BigReal| x.abs().to_f64();
    Ok(ConstantResiduals {
        root_equation: res(&(&q.sqrt() + &q) - 1.0),
        dilog_value: res(&li2 - &(&(&pi2 / 15.0) - &lphi2)),
        log_relation: res(&hl2 - &lphi2),
        bracket: res(&bracket - &(&pi2 / 20.0)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_identities_to_full_precision() {
        let r = constant_residuals(256).unwrap();
        assert!(r.max() < 2f64.powi(-250), "{r:?}");
    }
}
