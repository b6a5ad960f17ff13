use crate::error::{Error, Result};
use crate::num::{working_precision, BigComplex, BigReal};

/// Arguments of `theta(z; tau)`; `tau` must lie in the upper half plane.
#[derive(Clone, Debug)]
pub struct ThetaArgs {
    pub z: BigComplex,
    pub tau: BigComplex,
}

/// `theta(z; tau) = sum_{n in 1/2 + Z} exp(pi i n^2 tau + 2 pi i n (z + 1/2))`.
///
/// Terms are kept while `|term| >= 2^-(prec + guard)`; past that window the
/// Gaussian decay makes the discarded tail smaller than the cutoff.
pub fn jacobi_theta(args: &ThetaArgs, prec: usize) -> Result<BigComplex> {
    let y = args.tau.im.to_f64();
    if !(y > 0.0) {
        return Err(Error::NotInUpperHalfPlane(y));
    }
    let wp = working_precision(prec) + 8;
    let z = BigComplex::new(args.z.re.with_prec(wp), args.z.im.with_prec(wp));
    let tau = BigComplex::new(args.tau.re.with_prec(wp), args.tau.im.with_prec(wp));
    let (lo, hi) = window(y, z.im.to_f64(), wp);
    let pi = BigReal::pi(wp);
    let i_pi = BigComplex::new(BigReal::zero(wp), pi.clone());
    let shifted = &z + &BigReal::ratio(1, 2, wp);
    let mut sum = BigComplex::zero(wp);
    // n = k + 1/2 for integer k in [lo, hi].
    for k in lo..=hi {
        let n = BigReal::from_f64(k as f64 + 0.5, wp);
        let expo = &(&tau * &(&n * &n)) + &(&shifted * &(&n * 2.0));
        sum = &sum + &(&i_pi * &expo).exp();
    }
    Ok(BigComplex::new(sum.re.with_prec(prec), sum.im.with_prec(prec)))
}

// Integer range of k (n = k + 1/2) where -pi y n^2 - 2 pi n Im(z) >= -(wp + 4) ln 2.
fn window(y: f64, zim: f64, wp: usize) -> (i64, i64) {
    let pi = std::f64::consts::PI;
    let thr = (wp as f64 + 4.0) * std::f64::consts::LN_2;
    // pi y n^2 + 2 pi zim n - thr <= 0
    let centre = -zim / y;
    let disc = (centre * centre + thr / (pi * y)).sqrt();
    let lo = (centre - disc - 0.5).floor() as i64 - 1;
    let hi = (centre + disc - 0.5).ceil() as i64 + 1;
    (lo, hi)
}

/// Right side of the inversion formula
/// `theta(z; tau) = i (-i tau)^(-1/2) exp(-pi i z^2 / tau) theta(z / tau; -1 / tau)`,
/// principal branch of the square root.
pub fn theta_inverted(args: &ThetaArgs, prec: usize) -> Result<BigComplex> {
    let y = args.tau.im.to_f64();
    if !(y > 0.0) {
        return Err(Error::NotInUpperHalfPlane(y));
    }
    let wp = working_precision(prec) + 8;
    let z = BigComplex::new(args.z.re.with_prec(wp), args.z.im.with_prec(wp));
    let tau = BigComplex::new(args.tau.re.with_prec(wp), args.tau.im.with_prec(wp));
    let i = BigComplex::i(wp);
    let pi = BigReal::pi(wp);
    let inv_tau = tau.recip();
    let new = ThetaArgs { z: &z * &inv_tau, tau: -&inv_tau };
    let inner = jacobi_theta(&new, wp)?;
    let root = (&(-&i) * &tau).sqrt().recip();
    let gauss = (&(&(&i * &(&z * &z)) * &inv_tau) * &(-&pi)).exp();
    let v = &(&(&i * &root) * &gauss) * &inner;
    Ok(BigComplex::new(v.re.with_prec(prec), v.im.with_prec(prec)))
}

/// The inverted theta at `z = b eps i / pi - 1/2`, `tau = a eps i / pi` written
/// as `sqrt(pi / (a eps)) sum_n (-1)^n exp(-(pi^2 / (a eps)) (n - b eps i / pi)^2)`.
pub fn theta_inverted_gaussian(a: &BigReal, b: &BigReal, eps: &BigReal, prec: usize) -> BigComplex {
    let wp = working_precision(prec) + 8;
    let (a, b, eps) = (a.with_prec(wp), b.with_prec(wp), eps.with_prec(wp));
    let pi = BigReal::pi(wp);
    let ae = &a * &eps;
    let width = &(&pi * &pi) / &ae;
    let shift = &(&b * &eps) / &pi;
    // |term n| = exp(-width n^2 + width shift^2); keep n while width n^2 <= thr + width shift^2.
    let thr = (wp as f64 + 4.0) * std::f64::consts::LN_2;
    let wf = width.to_f64();
    let nmax = ((thr / wf) + shift.to_f64().powi(2)).sqrt().ceil() as i64 + 1;
    let mut sum = BigComplex::zero(wp);
    for n in -nmax..=nmax {
        let d = BigComplex::new(BigReal::from_i64(n, wp), -&shift);
        let t = (&(&d * &d) * &(-&width)).exp();
        sum = if n % 2 == 0 { &sum + &t } else { &sum - &t };
    }
    let v = &sum * &(&pi / &ae).sqrt();
    BigComplex::new(v.re.with_prec(prec), v.im.with_prec(prec))
}
