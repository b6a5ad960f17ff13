use crate::error::{Error, Result};
use crate::num::{working_precision, BigComplex, BigReal};

/// `(q; q)_inf = prod_{k>=1} (1 - q^k)`, stopping once `|q^k| < 2^-(prec + guard)`.
pub fn eta_pochhammer_eval(q: &BigComplex, prec: usize) -> Result<BigComplex> {
    signed_product(q, 1, -1, prec)
}

/// `(-q; q)_inf = prod_{k>=1} (1 + q^k)` by the same direct product.
pub fn neg_pochhammer_eval(q: &BigComplex, prec: usize) -> Result<BigComplex> {
    signed_product(q, 1, 1, prec)
}

/// `(-q; q)_inf` as the quotient `(q^2; q^2)_inf / (q; q)_inf`.
pub fn neg_pochhammer_quotient(q: &BigComplex, prec: usize) -> Result<BigComplex> {
    let wp = working_precision(prec);
    let qw = BigComplex::new(q.re.with_prec(wp), q.im.with_prec(wp));
    let num = eta_pochhammer_eval(&(&qw * &qw), wp)?;
    let den = eta_pochhammer_eval(&qw, wp)?;
    let v = &num / &den;
    Ok(BigComplex::new(v.re.with_prec(prec), v.im.with_prec(prec)))
}

fn signed_product(q: &BigComplex, start: u32, sign: i32, prec: usize) -> Result<BigComplex> {
    let r = q.abs().to_f64();
    if r >= 1.0 {
        return Err(Error::OutsideUnitDisc(r));
    }
    let wp = working_precision(prec);
    let q = BigComplex::new(q.re.with_prec(wp), q.im.with_prec(wp));
    let one = BigReal::one(wp);
    let mut acc = BigComplex::one(wp);
    if q.is_zero() {
        return Ok(BigComplex::one(prec));
    }
    let log2_r = r.log2();
    let mut pow = q.powi(start as i64);
    let mut k = start as f64;
    while k * log2_r >= -(wp as f64) - 2.0 {
        let f = if sign < 0 { &(-&pow) + &one } else { &pow + &one };
        acc = &acc * &f;
        pow = &pow * &q;
        k += 1.0;
    }
    Ok(BigComplex::new(acc.re.with_prec(prec), acc.im.with_prec(prec)))
}

/// Principal term of the inversion formula,
/// `(q; q)_inf ~ (-i tau)^(-1/2) exp(-pi i tau / 12 - pi i / (12 tau))` for `q = e^(2 pi i tau)`.
pub fn eta_inversion_principal(tau: &BigComplex, prec: usize) -> Result<BigComplex> {
    let y = tau.im.to_f64();
    if !(y > 0.0) {
        return Err(Error::NotInUpperHalfPlane(y));
    }
    let wp = working_precision(prec);
    let tau = BigComplex::new(tau.re.with_prec(wp), tau.im.with_prec(wp));
    let i = BigComplex::i(wp);
    let pi = BigReal::pi(wp);
    let i_pi_12 = BigComplex::new(BigReal::zero(wp), &pi / 12.0);
    let expo = -(&(&i_pi_12 * &tau) + &(&i_pi_12 / &tau));
    let v = &expo.exp() / &(&(-&i) * &tau).sqrt();
    Ok(BigComplex::new(v.re.with_prec(prec), v.im.with_prec(prec)))
}

/// `q = e^(2 pi i tau)`.
pub fn nome(tau: &BigComplex) -> BigComplex {
    let two_pi = &BigReal::pi(tau.prec()) * 2.0;
    (&BigComplex::i(tau.prec()) * &tau.scale(&two_pi)).exp()
}
