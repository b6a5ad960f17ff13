//! Saddle-point expansion of the terms `q^(A n^2 / 2 + B n) / (q)_n` near
//! their maximum, the Gaussian model `phi(nu)` and its theta-function sum.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::genfun::ParityClass;
use crate::num::{working_precision, BigComplex, BigReal};
use crate::specfun::{dilog, golden_q, jacobi_theta, ThetaArgs};

/// Root `R` in (0, 1) of `R + R^A = 1`, residual below `2^-prec`.
pub fn root_r(a: &BigReal, prec: usize) -> Result<BigReal> {
    if !a.is_positive() {
        return Err(Error::Domain { what: "root_R", value: a.to_f64(), domain: "A > 0" });
    }
    let wp = working_precision(prec);
    let a = a.with_prec(wp);
    let g = |r: &BigReal| &(r + &r.pow(&a)) - 1.0;
    // g is increasing on (0, 1) with g(0+) = -1 and g(1) = 1.
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if g(&BigReal::from_f64(mid, wp)).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut r = BigReal::from_f64(0.5 * (lo + hi), wp);
    for _ in 0..64 {
        let dg = &(&(&a * &r.pow(&(&a - 1.0))) + 1.0);
        let step = &g(&r) / dg;
        r = &r - &step;
        if step.is_zero() || step.exponent().is_some_and(|e| e < -(wp as i32)) {
            break;
        }
    }
    Ok(r.with_prec(prec))
}

/// Parameters of the expansion. `eps` is the exponent of `q = e^-eps` in the
/// term's own variable and `q^n = R q^-nu`.
#[derive(Clone, Debug)]
pub struct ExpansionParams {
    pub a: BigReal,
    pub b: BigReal,
    pub r: BigReal,
    pub eps: BigReal,
    pub nu: BigReal,
}

impl ExpansionParams {
    /// Solves for `R` and derives `nu` from an integer `n`.
    pub fn at_index(a: &BigReal, b: &BigReal, eps: &BigReal, n: u64, prec: usize) -> Result<Self> {
        let r = root_r(a, prec)?;
        // q^n = R q^-nu  =>  nu = -n - ln R / eps
        let nu = &(-&(&r.ln() / eps)) - &BigReal::from_u64(n, prec);
        Ok(ExpansionParams { a: a.clone(), b: b.clone(), r, eps: eps.clone(), nu })
    }

    /// The odd-even terms `q^(m(m+1)/2) / (q^2; q^2)_m` at `q = e^-eps`: base `q^2`,
    /// so `A = 1/2`, `B = 1/4`, `R = Q` and the expansion variable is `2 eps`.
    pub fn odd_even(eps: &BigReal, m: u64, prec: usize) -> Result<Self> {
        Self::at_index(&BigReal::ratio(1, 2, prec), &BigReal::ratio(1, 4, prec), &(eps * 2.0), m, prec)
    }
}

/// The four printed terms of the expansion and their sum.
#[derive(Clone, Debug)]
pub struct ExpansionTerms {
    pub inverse_eps: BigReal,
    pub log: BigReal,
    pub constant: BigReal,
    pub linear: BigReal,
}

impl ExpansionTerms {
    pub fn total(&self) -> BigReal {
        &(&(&self.inverse_eps + &self.log) + &self.constant) + &self.linear
    }
}

/// `(pi^2/6 - Li2(R) - ln R ln(1-R) / 2) / eps - ln(2 pi / eps) / 2 + ln(R^B / sqrt(1-R))
///  - ((A + R - A R) / (2(1-R)) nu^2 - (B + R / (2(1-R))) nu + (1+R) / (24 (1-R))) eps`.
pub fn zagier_log_expansion(params: &ExpansionParams, prec: usize) -> Result<ExpansionTerms> {
    let wp = working_precision(prec);
    let (a, b, r, eps, nu) = (
        params.a.with_prec(wp),
        params.b.with_prec(wp),
        params.r.with_prec(wp),
        params.eps.with_prec(wp),
        params.nu.with_prec(wp),
    );
    let pi = BigReal::pi(wp);
    let one_minus = &BigReal::one(wp) - &r;
    let (ln_r, ln_1mr) = (r.ln(), one_minus.ln());
    let bracket = &(&(&(&pi * &pi) / 6.0) - &dilog(&r, wp)?) - &(&(&ln_r * &ln_1mr) / 2.0);
    let inverse_eps = &bracket / &eps;
    let log = -(&(&(&pi * 2.0) / &eps).ln() / 2.0);
    let constant = &(&b * &ln_r) - &(&ln_1mr / 2.0);
    let two_om = &one_minus * 2.0;
    let c2 = &(&(&a + &r) - &(&a * &r)) / &two_om;
    let c1 = &b + &(&r / &two_om);
    let c0 = &(&r + 1.0) / &(&one_minus * 24.0);
    let poly = &(&(&c2 * &(&nu * &nu)) - &(&c1 * &nu)) + &c0;
    let linear = -(&poly * &eps);
    let out = |x: BigReal| x.with_prec(prec);
    Ok(ExpansionTerms {
        inverse_eps: out(inverse_eps),
        log: out(log),
        constant: out(constant),
        linear: out(linear),
    })
}

/// `ln(q^(A n^2 / 2 + B n) / (q; q)_n)` at `q = e^-eps`, computed directly.
pub fn exact_log_term(a: &BigReal, b: &BigReal, eps: &BigReal, n: u64, prec: usize) -> BigReal {
    let wp = working_precision(prec);
    let (a, b, eps) = (a.with_prec(wp), b.with_prec(wp), eps.with_prec(wp));
    let nn = BigReal::from_u64(n, wp);
    let mut acc = -(&eps * &(&(&(&a * &(&nn * &nn)) / 2.0) + &(&b * &nn)));
    let one = BigReal::one(wp);
    for i in 1..=n {
        let t = (&(-&eps) * (i as f64)).exp();
        acc = &acc - &(&one - &t).ln();
    }
    acc.with_prec(prec)
}

/// Expansion error at one `(eps, n)` point.
#[derive(Clone, Debug, Serialize)]
pub struct ExpansionError {
    pub eps: f64,
    pub n: u64,
    pub nu: f64,
    pub error: f64,
}

/// `|exact - expansion|` for the odd-even terms at `q = e^-eps`, index `m`.
pub fn odd_even_expansion_error(eps: &BigReal, m: u64, prec: usize) -> Result<ExpansionError> {
    let params = ExpansionParams::odd_even(eps, m, prec)?;
    let expansion = zagier_log_expansion(&params, prec)?.total();
    let exact = exact_log_term(&params.a, &params.b, &params.eps, m, prec);
    Ok(ExpansionError { eps: eps.to_f64(), n: m, nu: params.nu.to_f64(), error: (&exact - &expansion).abs().to_f64() })
}

/// Errors at `eps` and `eps/2` compared at the same `nu`.
///
/// `eps = -ln Q / (2 peak)` puts the peak index `-ln Q / (2 eps)` at the integer
/// `peak`, so `m = peak - nu` and `m' = 2 peak - nu` share the offset `nu`.
#[derive(Clone, Debug, Serialize)]
pub struct OrderCheck {
    pub nu: i64,
    pub coarse: ExpansionError,
    pub fine: ExpansionError,
    pub ratio: f64,
}

pub fn expansion_order_check(peak: u64, nu: i64, prec: usize) -> Result<OrderCheck> {
    let m = peak as i64 - nu;
    if m < 1 {
        return Err(Error::InvalidArgument(format!("offset {nu} leaves no term below peak {peak}")));
    }
    let eps = peak_eps(peak, prec);
    let coarse = odd_even_expansion_error(&eps, m as u64, prec)?;
    let fine = odd_even_expansion_error(&(&eps / 2.0), (2 * peak as i64 - nu) as u64, prec)?;
    Ok(OrderCheck { nu, ratio: coarse.error / fine.error, coarse, fine })
}

/// `eps` with `-ln Q / (2 eps) = peak`.
pub fn peak_eps(peak: u64, prec: usize) -> BigReal {
    &(-&golden_q(prec).ln()) / &BigReal::from_u64(2 * peak, prec)
}

/// `phi(nu) = sqrt(eps/pi) exp(pi^2 / (20 eps) - (sqrt5/2)(nu^2 - nu + 1/6) eps)`.
pub fn phi_nu(eps: &BigReal, nu: &BigReal, prec: usize) -> Result<BigReal> {
    if !eps.is_positive() {
        return Err(Error::Domain { what: "phi_nu", value: eps.to_f64(), domain: "eps > 0" });
    }
    let wp = working_precision(prec);
    let (eps, nu) = (eps.with_prec(wp), nu.with_prec(wp));
    let pi = BigReal::pi(wp);
    let s5 = BigReal::from_u64(5, wp).sqrt();
    let poly = &(&(&nu * &nu) - &nu) + &BigReal::ratio(1, 6, wp);
    let expo = &(&(&pi * &pi) / &(&eps * 20.0)) - &(&(&(&s5 / 2.0) * &poly) * &eps);
    Ok((&(&eps / &pi).sqrt() * &expo.exp()).with_prec(prec))
}

/// Offset bookkeeping for one residue class: `nu0 = frac(ln Q / (2 ln q))`, `alpha = 2 + nu0 + j`.
#[derive(Clone, Debug)]
pub struct NuFrame {
    pub nu0: BigReal,
    pub j: ParityClass,
    pub alpha: BigReal,
}

impl NuFrame {
    /// At `q = e^-eps`.
    pub fn new(eps: &BigReal, j: ParityClass, prec: usize) -> Self {
        let wp = working_precision(prec);
        let peak = &(-&golden_q(wp).ln()) / &(&eps.with_prec(wp) * 2.0);
        let nu0 = peak.fract().with_prec(prec);
        let alpha = &(&nu0 + 2.0) + f64::from(j.index());
        NuFrame { nu0, j, alpha }
    }

    /// Frame with a chosen offset, for checks away from a specific `eps`.
    pub fn with_offset(nu0: &BigReal, j: ParityClass) -> Self {
        NuFrame { nu0: nu0.clone(), j, alpha: &(nu0 + 2.0) + f64::from(j.index()) }
    }
}

/// `sum_{n in Z} phi(4n + nu0 + j)` through the theta function:
/// `sqrt(eps/pi) e^(pi^2/(20 eps) - (sqrt5/2)(alpha^2 - alpha + 1/6) eps)
///  * theta(sqrt5 (2 alpha - 1) eps i / pi - 1/2; 8 sqrt5 eps i / pi)`.
pub fn sj_theta_asymptotic(frame: &NuFrame, eps: &BigReal, prec: usize) -> Result<BigReal> {
    let wp = working_precision(prec);
    let (eps, alpha) = (eps.with_prec(wp), frame.alpha.with_prec(wp));
    let pi = BigReal::pi(wp);
    let s5 = BigReal::from_u64(5, wp).sqrt();
    let z = BigComplex::new(BigReal::ratio(-1, 2, wp), &(&(&s5 * &(&(&alpha * 2.0) - 1.0)) * &eps) / &pi);
    let tau = BigComplex::new(BigReal::zero(wp), &(&(&s5 * 8.0) * &eps) / &pi);
    let theta = jacobi_theta(&ThetaArgs { z, tau }, wp)?;
    let front = phi_nu(&eps, &alpha, wp)?;
    Ok((&front * &theta.re).with_prec(prec))
}

/// `sum_{n in Z} phi(4n + offset)` summed term by term, keeping every `nu`
/// with `(sqrt5/2) nu^2 eps <= (prec + guard) ln 2` plus a margin.
pub fn phi_class_sum(offset: &BigReal, eps: &BigReal, prec: usize) -> Result<BigReal> {
    let wp = working_precision(prec);
    let (offset, eps) = (offset.with_prec(wp), eps.with_prec(wp));
    let thr = (wp as f64 + 8.0) * std::f64::consts::LN_2;
    let nu_max = (2.0 * thr / (5f64.sqrt() * eps.to_f64())).sqrt() + 2.0;
    let n_max = (nu_max / 4.0).ceil() as i64 + 1;
    let mut sum = BigReal::zero(wp);
    for n in -n_max..=n_max {
        let nu = &offset + (4 * n) as f64;
        sum = &sum + &phi_nu(&eps, &nu, wp)?;
    }
    Ok(sum.with_prec(prec))
}
