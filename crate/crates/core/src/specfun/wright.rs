use crate::error::{Error, Result};
use crate::num::{working_precision, BigComplex, BigReal};
use crate::quad::{integrate_adaptive, GaussLegendre, QuadResult};

/// Default cap on integrand evaluations for [`wright_p`].
pub const WRIGHT_P_BUDGET: usize = 400_000;

const RULE_POINTS: usize = 24;

/// `P_s(u) = (1 / 2 pi i) int_{1-Mi}^{1+Mi} v^s exp(u (v + 1/v)) dv` along the
/// vertical segment, to relative accuracy `2^(-prec/2)`.
pub fn wright_p(s: i64, u: &BigReal, m: &BigReal, prec: usize) -> Result<BigComplex> {
    wright_p_detailed(s, u, m, prec, WRIGHT_P_BUDGET).map(|r| r.value)
}

/// As [`wright_p`], also returning the quadrature diagnostics.
pub fn wright_p_detailed(s: i64, u: &BigReal, m: &BigReal, prec: usize, budget: usize) -> Result<QuadResult> {
    if !u.is_positive() {
        return Err(Error::Domain { what: "wright_p", value: u.to_f64(), domain: "u > 0" });
    }
    if !m.is_positive() {
        return Err(Error::Domain { what: "wright_p", value: m.to_f64(), domain: "M > 0" });
    }
    let wp = working_precision(prec);
    let (u, m) = (u.with_prec(wp), m.with_prec(wp));
    let rule = GaussLegendre::new(RULE_POINTS, wp);
    let one = BigReal::one(wp);
    // dv = i dt, so the 1/(2 pi i) prefactor becomes 1/(2 pi).
    let integrand = |t: &BigReal| {
        let v = BigComplex::new(one.clone(), t.clone());
        let phase = &(&v + &v.recip()) * &u;
        &v.powi(s) * &phase.exp()
    };
    // About one panel per half oscillation of exp(i u t).
    let start = ((u.to_f64() * m.to_f64()) / 3.0).ceil().max(4.0) as usize;
    let target = BigReal::from_f64(2f64.powi(-(prec as i32) / 2), wp);
    let mut r = integrate_adaptive(&rule, integrand, &(-&m), &m, start, &target, budget)?;
    let scale = (&BigReal::pi(wp) * 2.0).recip();
    r.value = BigComplex::new((&r.value.re * &scale).with_prec(prec), (&r.value.im * &scale).with_prec(prec));
    r.error_estimate = (&r.error_estimate * &scale).with_prec(prec);
    Ok(r)
}
