//! Wright's circle method for `OE-bar(n)`, carried out numerically.
//!
//! On `|q| = e^(-2 pi y)` with `y = 1/(4 sqrt(3n))` write `q = e^(2 pi i (x + iy))`.
//! Then `OE-bar(n) = int_{-1/2}^{1/2} O-bar(q) e^(-2 pi i n x + 2 pi n y) dx`, split
//! into the major arc `|x| <= M y` and the minor arc `M y < |x| <= 1/2`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::asympt::{oebar_asymptotic, series_order_for};
use crate::error::{Error, Result};
use crate::genfun::{f_mock_series, oebar_series_hypergeometric, oebar_series_product};
use crate::num::{working_precision, BigComplex, BigReal};
use crate::qseries::{EvalResult, GrowthBound, PowerSeries};
use crate::quad::{integrate_adaptive, GaussLegendre};
use crate::specfun::{bessel_i, wright_p_detailed, WRIGHT_P_BUDGET};

/// Default major-arc half-width in units of `y`.
pub const DEFAULT_M: f64 = 6.0;

/// `sqrt((12 / (12 - pi^2))^2 - 1)`: below this `M` the minor-arc bound saves nothing.
pub fn m_threshold() -> f64 {
    let pi2 = std::f64::consts::PI.powi(2);
    ((12.0 / (12.0 - pi2)).powi(2) - 1.0).sqrt()
}

/// Coefficient growth for tail bounds: `OE-bar(n) <= e^(pi sqrt(n/3))`.
pub fn oebar_growth() -> GrowthBound {
    GrowthBound::sub_exponential(std::f64::consts::PI / 3f64.sqrt())
}

/// Contour geometry for coefficient `n`.
#[derive(Clone, Debug)]
pub struct ArcGeometry {
    pub n: u64,
    pub m: BigReal,
    pub y: BigReal,
    pub x: BigReal,
}

impl ArcGeometry {
    pub fn new(n: u64, m: f64, prec: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain { what: "ArcGeometry", value: 0.0, domain: "n >= 1" });
        }
        if !(m > 0.0) {
            return Err(Error::Domain { what: "ArcGeometry", value: m, domain: "M > 0" });
        }
        let y = (&BigReal::from_u64(3 * n, prec).sqrt() * 4.0).recip();
        let m = BigReal::from_f64(m, prec);
        if (&m * &y).to_f64() >= 0.5 {
            return Err(Error::InvalidArgument(format!("major arc M*y = {} must stay below 1/2", (&m * &y).to_f64())));
        }
        Ok(ArcGeometry { n, m, y, x: BigReal::zero(prec) })
    }

    /// Half-width `M y` of the major arc.
    pub fn major_half_width(&self) -> BigReal {
        &self.m * &self.y
    }

    pub fn at(&self, x: BigReal) -> Self {
        ArcGeometry { x, ..self.clone() }
    }

    /// `tau = x + iy`.
    pub fn tau(&self) -> BigComplex {
        BigComplex::new(self.x.clone(), self.y.clone())
    }

    /// `e^(2 pi n y) = e^(pi sqrt n / (2 sqrt 3))`.
    pub fn radial_factor(&self) -> BigReal {
        (&(&(&BigReal::pi(self.y.prec()) * 2.0) * &self.y) * (self.n as f64)).exp()
    }
}

/// `q = e^(2 pi i tau)`.
pub fn q_of_tau(tau: &BigComplex) -> BigComplex {
    let two_pi = &BigReal::pi(tau.prec()) * 2.0;
    (&BigComplex::new(-&tau.im, tau.re.clone()) * &two_pi).exp()
}

/// Truncated series of `O-bar` pre-scaled to a fixed radius, for repeated
/// evaluation on the circle `|q| = radius`.
pub struct CircleSeries {
    scaled: Vec<BigReal>,
    pub radius: BigReal,
    pub tail_bound: BigReal,
    prec: usize,
}

impl CircleSeries {
    /// Order is chosen so that the tail under [`oebar_growth`] is below `2^-(prec + guard)`.
    pub fn new(radius: &BigReal, prec: usize) -> Result<Self> {
        let eps = -radius.ln().to_f64();
        if !(eps > 0.0) {
            return Err(Error::OutsideUnitDisc(radius.to_f64()));
        }
        let order = series_order_for(eps, std::f64::consts::PI / 3f64.sqrt(), 0.0, prec);
        Self::from_series(&oebar_series_hypergeometric(order), radius, prec)
    }

    pub fn from_series(series: &PowerSeries, radius: &BigReal, prec: usize) -> Result<Self> {
        let wp = working_precision(prec);
        let r = radius.with_prec(wp);
        let mut scaled = Vec::with_capacity(series.order() + 1);
        let mut pow = BigReal::one(wp);
        for c in series.coeffs() {
            scaled.push(&BigReal::from_bigint(c, wp) * &pow);
            pow = &pow * &r;
        }
        let tail_bound = oebar_growth().tail_bound(series.order(), r.to_f64(), wp);
        Ok(CircleSeries { scaled, radius: r, tail_bound, prec: wp })
    }

    pub fn order(&self) -> usize {
        self.scaled.len() - 1
    }

    /// `O-bar(radius * e^(2 pi i x))`.
    pub fn eval_at(&self, x: &BigReal) -> BigComplex {
        let angle = &(&BigReal::pi(self.prec) * 2.0) * &x.with_prec(self.prec);
        fourier_sum(&self.scaled, &angle)
    }

    /// Evaluation at the `k`-th of `count` equally spaced angles.
    fn eval_root(&self, k: usize, count: usize) -> BigComplex {
        self.eval_at(&BigReal::ratio(k as i64, count as i64, self.prec))
    }
}

/// `sum c_k e^(i k theta)` for real `c_k` by Clenshaw's recurrence in Reinsch's
/// form, which stays accurate for `theta` near `0` and `pi`.
///
/// One real multiplication per coefficient instead of a complex one.
pub fn fourier_sum(coeffs: &[BigReal], theta: &BigReal) -> BigComplex {
    let p = theta.prec();
    let c = theta.cos();
    let near_zero = !c.is_negative();
    // lambda = 2 cos(theta) - 2 or 2 cos(theta) + 2, from half-angle forms
    let half = &theta.clone() / 2.0;
    let lambda = if near_zero {
        let s = half.sin();
        -(&(&s * &s) * 4.0)
    } else {
        let s = half.cos();
        &(&s * &s) * 4.0
    };
    let mut b = BigReal::zero(p);
    let mut d = BigReal::zero(p);
    let mut b_next = BigReal::zero(p);
    for ck in coeffs.iter().rev() {
        // b_k = c_k + 2 cos(theta) b_(k+1) - b_(k+2)
        let next = if near_zero {
            d = &(ck + &(&lambda * &b)) + &d;
            &d + &b
        } else {
            d = &(ck + &(&lambda * &b)) - &d;
            &d - &b
        };
        b_next = std::mem::replace(&mut b, next);
    }
    // b holds b_0, b_next holds b_1
    let re = &d - &(&(&lambda * &b_next) / 2.0);
    let im = &b_next * &theta.sin();
    BigComplex::new(re, im)
}

/// `O-bar(q)` from the truncated coefficient series, with a tail bound.
pub fn oebar_eval(q: &BigComplex, prec: usize) -> Result<EvalResult> {
    let r = q.abs().to_f64();
    if !(r < 1.0) {
        return Err(Error::OutsideUnitDisc(r));
    }
    if q.is_zero() {
        return Ok(EvalResult { value: BigComplex::one(prec), tail_bound: BigReal::zero(prec) });
    }
    let order = series_order_for(-r.ln(), std::f64::consts::PI / 3f64.sqrt(), 0.0, prec);
    oebar_series_hypergeometric(order).evaluate_at(q, prec, &oebar_growth())
}

/// `O-bar(q) = ((-q)_inf / (q)_inf) (1 + 4 sum_{n>=1} (-1)^n q^(n(3n+1)/2) / (1 + q^n))`.
pub fn oebar_eval_product(q: &BigComplex, prec: usize) -> Result<BigComplex> {
    let r = q.abs().to_f64();
    if !(r < 1.0) {
        return Err(Error::OutsideUnitDisc(r));
    }
    let wp = working_precision(prec);
    let q = BigComplex::new(q.re.with_prec(wp), q.im.with_prec(wp));
    let one = BigReal::one(wp);
    if q.is_zero() {
        return Ok(BigComplex::one(prec));
    }
    let cutoff = -(wp as f64) - 4.0;
    let log2_r = r.log2();
    // Product (-q)_inf / (q)_inf.
    let mut ratio = BigComplex::one(wp);
    let mut qk = q.clone();
    let mut k = 1.0;
    while k * log2_r >= cutoff {
        ratio = &ratio * &(&(&qk + &one) / &(&(-&qk) + &one));
        qk = &qk * &q;
        k += 1.0;
    }
    // Bilateral sum folded to n >= 1.
    let mut sum = BigComplex::zero(wp);
    let mut n = 1u64;
    loop {
        let e = n * (3 * n + 1) / 2;
        if (e as f64) * log2_r < cutoff {
            break;
        }
        let qn = q.powi(n as i64);
        let t = &q.powi(e as i64) / &(&qn + &one);
        sum = if n % 2 == 0 { &sum + &t } else { &sum - &t };
        n += 1;
    }
    let core = &(&sum * &BigReal::from_u64(4, wp)) + &one;
    let v = &ratio * &core;
    Ok(BigComplex::new(v.re.with_prec(prec), v.im.with_prec(prec)))
}

/// Mock theta `f(q) = sum q^(n^2) / (-q; q)_n^2` by direct summation, `|q| <= 1`
/// away from the roots of `1 + q^k`.
pub fn f_eval(q: &BigComplex, prec: usize) -> Result<BigComplex> {
    let r = q.abs().to_f64();
    if r > 1.0 {
        return Err(Error::OutsideUnitDisc(r));
    }
    let wp = working_precision(prec);
    let q = BigComplex::new(q.re.with_prec(wp), q.im.with_prec(wp));
    let one = BigReal::one(wp);
    let mut sum = BigComplex::one(wp);
    let mut term = BigComplex::one(wp);
    let mut qn = BigComplex::one(wp);
    let mut quiet = 0;
    for _ in 1u64..100_000 {
        // t_n / t_(n-1) = q^(2n-1) / (1 + q^n)^2
        let q2n1 = &(&qn * &qn) * &q;
        qn = &qn * &q;
        let d = &qn + &one;
        term = &(&term * &q2n1) / &(&d * &d);
        sum = &sum + &term;
        let negligible = match (term.abs().exponent(), sum.abs().exponent()) {
            (Some(a), Some(b)) => (a as i64) < b as i64 - wp as i64 - 4,
            _ => true,
        };
        quiet = if negligible { quiet + 1 } else { 0 };
        if quiet >= 3 {
            return Ok(BigComplex::new(sum.re.with_prec(prec), sum.im.with_prec(prec)));
        }
    }
    Err(Error::InvalidArgument("mock theta sum did not settle".into()))
}

/// Value of `f` at `q = 1`: `sum 4^-n = 4/3`.
pub fn f_near_one(prec: usize) -> BigReal {
    BigReal::ratio(4, 3, prec)
}

/// `|f(e^(2 pi i tau)) - 4/3|` and its ratio to `|tau|`.
#[derive(Clone, Debug, Serialize)]
pub struct FNearOne {
    pub deviation: f64,
    pub over_tau: f64,
}

pub fn f_near_one_diagnostic(tau: &BigComplex, prec: usize) -> Result<FNearOne> {
    let v = f_eval(&q_of_tau(tau), prec)?;
    let dev = (&v - &f_near_one(v.prec())).abs().to_f64();
    Ok(FNearOne { deviation: dev, over_tau: dev / tau.abs().to_f64() })
}

/// `(2 sqrt2 / 3) e^(pi i / (24 tau))`, the principal part of `O-bar` near `q = 1`.
pub fn principal_part(tau: &BigComplex) -> BigComplex {
    let p = tau.prec();
    let pi = BigReal::pi(p);
    let c = &BigReal::from_u64(8, p).sqrt() / 3.0;
    let expo = &BigComplex::new(BigReal::zero(p), &pi / 24.0) / tau;
    &expo.exp() * &c
}

/// Cauchy integral over the whole circle, discretized at `samples` points.
#[derive(Clone, Debug, Serialize)]
pub struct CauchyRecovery {
    pub n: u64,
    pub samples: usize,
    pub series_order: usize,
    pub coefficient: String,
    /// Distance of the raw value from the nearest integer.
    pub residual: f64,
    /// Largest imaginary part, relative to the coefficient.
    pub imaginary: f64,
}

/// `OE-bar(n) = (1/K) sum_j O-bar(r w^j) (r w^j)^(-n)` with `w = e^(2 pi i / K)`.
///
/// `samples = None` uses one more than the internal series order, which
/// makes the discrete sum exact for the truncation.
pub fn cauchy_full_integral(n: u64, samples: Option<usize>, prec: usize) -> Result<CauchyRecovery> {
    if n == 0 {
        return Ok(CauchyRecovery {
            n,
            samples: 1,
            series_order: 0,
            coefficient: "1".into(),
            residual: 0.0,
            imaginary: 0.0,
        });
    }
    let wp = working_precision(prec);
    let y = (&BigReal::from_u64(3 * n, wp).sqrt() * 4.0).recip();
    let radius = (&(&(-&BigReal::pi(wp)) * 2.0) * &y).exp();
    let order = series_order_for(-radius.ln().to_f64(), std::f64::consts::PI / 3f64.sqrt(), 0.0, prec)
        .max(n as usize);
    let series = CircleSeries::from_series(&oebar_series_product(order), &radius, prec)?;
    let k = samples.unwrap_or(order + 1);
    if k <= order {
        return Err(Error::InvalidArgument(format!("{k} samples do not exceed series order {order}")));
    }
    // Real coefficients: samples j and k - j are conjugate, so only the real
    // part of the first half is needed.
    let mut acc = BigReal::zero(wp);
    for j in 0..=k / 2 {
        let v = series.eval_root(j, k);
        let turn = BigReal::ratio(-(((j as u128 * n as u128) % k as u128) as i64), k as i64, wp);
        let w = BigComplex::from_polar(&BigReal::one(wp), &(&(&BigReal::pi(wp) * 2.0) * &turn));
        let term = (&v * &w).re;
        let paired = j != 0 && 2 * j != k;
        acc = &acc + &(if paired { &term * 2.0 } else { term });
    }
    let value = BigComplex::from_real(&(&acc * &radius.powi(-(n as i64))) / &BigReal::from_u64(k as u64, wp));
    let rounded = value.re.round_to_bigint();
    let residual = (&value.re - &BigReal::from_bigint(&rounded, wp)).abs().to_f64();
    let denom = BigReal::from_bigint(&rounded, wp).abs().max(&BigReal::one(wp));
    let imaginary = (&value.im.abs() / &denom).to_f64();
    if residual >= 0.25 {
        return Err(Error::Rounding { residual });
    }
    Ok(CauchyRecovery { n, samples: k, series_order: order, coefficient: rounded.to_string(), residual, imaginary })
}

/// `I_1 = int_{|x| <= M y} O-bar(q) e^(-2 pi i n x + 2 pi n y) dx`.
#[derive(Clone, Debug)]
pub struct MajorArc {
    pub value: BigComplex,
    pub error_estimate: BigReal,
    pub evaluations: usize,
}

const ARC_RULE_POINTS: usize = 24;

fn arc_start_panels(n: u64, width: f64) -> usize {
    // Two oscillations of e^(-2 pi i n x) per 24-point panel.
    ((n as f64 * width / 2.0).ceil() as usize).max(2)
}

/// Major-arc integral by composite Gauss-Legendre with panel doubling to
/// relative accuracy `2^(-prec/2)`.
pub fn major_arc_integral(geom: &ArcGeometry, prec: usize) -> Result<MajorArc> {
    let wp = working_precision(prec);
    let radius = (&(&(-&BigReal::pi(wp)) * 2.0) * &geom.y.with_prec(wp)).exp();
    let series = CircleSeries::new(&radius, prec)?;
    major_arc_with(&series, geom, prec)
}

/// As [`major_arc_integral`] with a prepared circle series.
pub fn major_arc_with(series: &CircleSeries, geom: &ArcGeometry, prec: usize) -> Result<MajorArc> {
    let wp = working_precision(prec);
    let half = geom.major_half_width().with_prec(wp);
    let two_pi_n = &(&BigReal::pi(wp) * 2.0) * (geom.n as f64);
    let radial = geom.radial_factor().with_prec(wp);
    // The integrand at -x is the conjugate of the one at x.
    let integrand = |x: &BigReal| {
        let phase = BigComplex::from_polar(&radial, &(-(&two_pi_n * x)));
        BigComplex::from_real(&(&series.eval_at(x) * &phase).re * 2.0)
    };
    let rule = GaussLegendre::new(ARC_RULE_POINTS, wp);
    let target = BigReal::from_f64(2f64.powi(-(prec as i32) / 2), wp);
    let start = arc_start_panels(geom.n, half.to_f64());
    let r = integrate_adaptive(&rule, integrand, &BigReal::zero(wp), &half, start, &target, 2_000_000)?;
    Ok(MajorArc { value: r.value, error_estimate: r.error_estimate, evaluations: r.evaluations })
}

/// Minor-arc integral `I_2` by quadrature over `M y < |x| <= 1/2`, real by symmetry.
pub fn minor_arc_integral(series: &CircleSeries, geom: &ArcGeometry, prec: usize) -> Result<BigComplex> {
    let wp = working_precision(prec);
    let half = geom.major_half_width().with_prec(wp);
    let two_pi_n = &(&BigReal::pi(wp) * 2.0) * (geom.n as f64);
    let radial = geom.radial_factor().with_prec(wp);
    let integrand = |x: &BigReal| {
        let phase = BigComplex::from_polar(&radial, &(-(&two_pi_n * x)));
        BigComplex::from_real(&(&series.eval_at(x) * &phase).re * 2.0)
    };
    let rule = GaussLegendre::new(ARC_RULE_POINTS, wp);
    let target = BigReal::from_f64(2f64.powi(-(prec as i32) / 2), wp);
    let edge = BigReal::ratio(1, 2, wp);
    let start = arc_start_panels(geom.n, (&edge - &half).to_f64());
    Ok(integrate_adaptive(&rule, integrand, &half, &edge, start, &target, 4_000_000)?.value)
}

/// The major-arc model `int (2 sqrt2/3) e^(pi i/(24 tau)) e^(-2 pi i n tau) dx`
/// computed directly in `x`.
pub fn major_arc_model_integral(geom: &ArcGeometry, prec: usize) -> Result<BigComplex> {
    let wp = working_precision(prec);
    let half = geom.major_half_width().with_prec(wp);
    let y = geom.y.with_prec(wp);
    let two_pi_n = &(&BigReal::pi(wp) * 2.0) * (geom.n as f64);
    let integrand = |x: &BigReal| {
        let tau = BigComplex::new(x.clone(), y.clone());
        // e^(-2 pi i n tau) = e^(2 pi n y) e^(-2 pi i n x)
        let phase = BigComplex::from_polar(&(&two_pi_n * &y).exp(), &(-(&two_pi_n * x)));
        &principal_part(&tau) * &phase
    };
    let rule = GaussLegendre::new(ARC_RULE_POINTS, wp);
    let target = BigReal::from_f64(2f64.powi(-(prec as i32) / 2), wp);
    let start = arc_start_panels(geom.n, 2.0 * half.to_f64());
    Ok(integrate_adaptive(&rule, integrand, &(-&half), &half, start, &target, 2_000_000)?.value)
}

/// `(pi sqrt2 / (3 sqrt(3n))) P_0(pi sqrt n / (2 sqrt3))`: the model after `v = 1 - 4 i sqrt(3n) x`.
pub fn major_arc_p0_form(geom: &ArcGeometry, prec: usize) -> Result<BigReal> {
    let wp = working_precision(prec);
    let n = BigReal::from_u64(geom.n, wp);
    let pi = BigReal::pi(wp);
    let s3 = BigReal::from_u64(3, wp).sqrt();
    let u = &(&pi * &n.sqrt()) / &(&s3 * 2.0);
    let p0 = wright_p_detailed(0, &u, &geom.m.with_prec(wp), wp, WRIGHT_P_BUDGET)?;
    let front = &(&pi * &BigReal::from_u64(2, wp).sqrt()) / &(&(&n * 3.0).sqrt() * 3.0);
    Ok((&front * &p0.value.re).with_prec(prec))
}

/// Both forms of the main term.
#[derive(Clone, Debug)]
pub struct MainTerm {
    /// `n^(-3/4) e^(pi sqrt(n/3)) / 3^(5/4)`
    pub exponential: BigReal,
    /// `(pi sqrt2 / (3 sqrt(3n))) I_1(pi sqrt n / sqrt3)`
    pub bessel: BigReal,
}

impl MainTerm {
    pub fn relative_difference(&self) -> f64 {
        ((&self.bessel - &self.exponential) / &self.exponential).abs().to_f64()
    }
}

pub fn main_term(n: u64, prec: usize) -> Result<MainTerm> {
    let exponential = oebar_asymptotic(n, prec)?;
    let wp = working_precision(prec);
    let nn = BigReal::from_u64(n, wp);
    let pi = BigReal::pi(wp);
    let s3 = BigReal::from_u64(3, wp).sqrt();
    let arg = &(&pi * &nn.sqrt()) / &s3;
    let front = &(&pi * &BigReal::from_u64(2, wp).sqrt()) / &(&(&nn * 3.0).sqrt() * 3.0);
    let bessel = (&front * &bessel_i(-1, &arg, wp)?).with_prec(prec);
    Ok(MainTerm { exponential, bessel })
}

/// Minor-arc bound in the `e^((pi/24)(1/y - delta'))` normalization.
#[derive(Clone, Debug, Serialize)]
pub struct MinorArcBound {
    /// `delta = (1/pi)(1 - 1/sqrt(1 + M^2)) - pi/12`; the bound exponent is `(pi/24 - delta) / y`.
    pub exponent_saving: f64,
    /// `(1 / (y sqrt2)) exp((pi/8 - (1/pi)(1 - 1/sqrt(1 + M^2))) / y)`.
    pub bound_value: f64,
    pub clears_threshold: bool,
}

/// `delta(M) = (1/pi)(1 - 1/sqrt(1 + M^2)) - pi/12`.
pub fn exponent_saving(m: f64) -> f64 {
    let pi = std::f64::consts::PI;
    (1.0 - 1.0 / (1.0 + m * m).sqrt()) / pi - pi / 12.0
}

pub fn minor_arc_bound(geom: &ArcGeometry) -> MinorArcBound {
    let pi = std::f64::consts::PI;
    let m = geom.m.to_f64();
    let y = geom.y.to_f64();
    let delta = exponent_saving(m);
    let bound = (1.0 / (y * 2f64.sqrt())) * ((pi / 24.0 - delta) / y).exp();
    MinorArcBound { exponent_saving: delta, bound_value: bound, clears_threshold: m > m_threshold() }
}

/// Sampled `|O-bar|` on the minor arc.
#[derive(Clone, Debug, Serialize)]
pub struct MinorArcSamples {
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
    pub max: f64,
}

/// `|O-bar(e^(2 pi i x - 2 pi y))|` on `grid` points of `M y < x <= 1/2`.
pub fn minor_arc_empirical_max(series: &CircleSeries, geom: &ArcGeometry, grid: usize) -> Result<MinorArcSamples> {
    if grid < 2 {
        return Err(Error::InvalidArgument("minor-arc grid needs at least 2 points".into()));
    }
    let lo = geom.major_half_width().to_f64();
    let mut xs = Vec::with_capacity(grid);
    let mut values = Vec::with_capacity(grid);
    for i in 1..=grid {
        let x = lo + (0.5 - lo) * i as f64 / grid as f64;
        let v = series.eval_at(&BigReal::from_f64(x, geom.y.prec())).abs().to_f64();
        xs.push(x);
        values.push(v);
    }
    let max = values.iter().copied().fold(0.0, f64::max);
    Ok(MinorArcSamples { xs, values, max })
}

/// Circle-method summary for one `n`.
#[derive(Clone, Debug, Serialize)]
pub struct CircleReport {
    pub n: u64,
    #[serde(rename = "M")]
    pub m: f64,
    #[serde(rename = "I1")]
    pub i1: String,
    pub main_term: String,
    pub ratio: f64,
    pub minor_bound: f64,
    pub empirical_max: f64,
    pub recovered_coefficient: Option<String>,
    pub exact_coefficient: String,
}

/// Largest `n` for which the report also runs the full Cauchy recovery.
pub const CAUCHY_REPORT_LIMIT: u64 = 200;

pub fn circle_report(n: u64, m: f64, grid: usize, prec: usize) -> Result<CircleReport> {
    let wp = working_precision(prec);
    let geom = ArcGeometry::new(n, m, wp)?;
    let radius = (&(&(-&BigReal::pi(wp)) * 2.0) * &geom.y).exp();
    let series = CircleSeries::new(&radius, prec)?;
    let i1 = major_arc_with(&series, &geom, prec)?;
    let main = main_term(n, prec)?;
    let samples = minor_arc_empirical_max(&series, &geom, grid)?;
    let bound = minor_arc_bound(&geom);
    let exact: BigInt = oebar_series_hypergeometric(n as usize).coeff(n as usize).clone();
    let recovered = if n <= CAUCHY_REPORT_LIMIT {
        Some(cauchy_full_integral(n, None, prec)?.coefficient)
    } else {
        None
    };
    Ok(CircleReport {
        n,
        m,
        i1: i1.value.re.to_sci(20),
        main_term: main.exponential.to_sci(20),
        ratio: (&i1.value.re / &main.exponential).to_f64(),
        minor_bound: bound.bound_value,
        empirical_max: samples.max,
        recovered_coefficient: recovered,
        exact_coefficient: exact.to_string(),
    })
}

/// `f` from its series, for cross-checks of [`f_eval`] inside the disc.
pub fn f_eval_series(q: &BigComplex, prec: usize) -> Result<EvalResult> {
    let r = q.abs().to_f64();
    let order = series_order_for(-r.ln(), 2.0, 0.0, prec);
    f_mock_series(order).evaluate_at(q, prec, &GrowthBound::sub_exponential(2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::oebar_series_hypergeometric;
    use crate::qseries::horner;

    const P: usize = 128;

    #[test]
    fn threshold_value() {
        assert!((m_threshold() - 5.543_279_498_663_233).abs() < 1e-12);
        assert!(exponent_saving(m_threshold()).abs() < 1e-14);
        assert!(exponent_saving(5.54) < 0.0 && exponent_saving(5.55) > 0.0);
        assert!((exponent_saving(6.0) - 0.004_180_7).abs() < 1e-6);
        let limit = 1.0 / std::f64::consts::PI - std::f64::consts::PI / 12.0;
        assert!((exponent_saving(1e9) - limit).abs() < 1e-9);
    }

    #[test]
    fn fourier_sum_matches_horner() {
        let coeffs: Vec<BigReal> = (0..300).map(|k| BigReal::from_f64(((k * 37 % 11) as f64 - 3.0) * 0.9f64.powi(k), P)).collect();
        for theta in [0.0, 1e-6, 0.3, 1.2, 2.9, std::f64::consts::PI, -0.7] {
            let t = BigReal::from_f64(theta, P);
            let z = BigComplex::from_polar(&BigReal::one(P), &t);
            let a = fourier_sum(&coeffs, &t);
            let b = horner(&coeffs, &z);
            assert!((&a - &b).abs().to_f64() < 1e-30, "theta {theta}");
        }
    }

    #[test]
    fn geometry_checks() {
        assert!(ArcGeometry::new(0, 6.0, P).is_err());
        assert!(ArcGeometry::new(1, 6.0, P).is_err());
        let g = ArcGeometry::new(100, 6.0, P).unwrap();
        assert!((g.y.to_f64() - 1.0 / (4.0 * 300f64.sqrt())).abs() < 1e-15);
        let q = q_of_tau(&g.at(BigReal::zero(P)).tau());
        assert!((q.re.to_f64() - (-std::f64::consts::PI / (2.0 * 300f64.sqrt())).exp()).abs() < 1e-15);
    }

    #[test]
    fn growth_bounds_hold_on_exact_data() {
        let s = oebar_series_hypergeometric(1500);
        let rate = std::f64::consts::PI / 3f64.sqrt();
        for (k, c) in s.coeffs().iter().enumerate() {
            let v = BigReal::from_bigint(c, 64).ln().to_f64();
            assert!(c.sign() != num_bigint::Sign::Minus);
            if !BigReal::from_bigint(c, 64).is_zero() {
                assert!(v <= rate * (k as f64).sqrt() + 1e-9, "k {k}");
            }
        }
    }

    #[test]
    fn evaluation_routes_agree() {
        assert_eq!(oebar_eval(&BigComplex::zero(P), P).unwrap().value.to_f64(), (1.0, 0.0));
        assert_eq!(oebar_eval_product(&BigComplex::zero(P), P).unwrap().to_f64(), (1.0, 0.0));
        for (x, y) in [(0.3, 0.0), (0.5, 0.4), (-0.9, 0.1), (0.95, 0.02)] {
            let q = BigComplex::from_f64(x, y, P);
            let a = oebar_eval(&q, P).unwrap();
            let b = oebar_eval_product(&q, P).unwrap();
            let diff = (&a.value - &b).abs();
            assert!(diff <= (&a.tail_bound + &(&b.abs() * 2f64.powi(-(P as i32) + 8))), "q = {x}+{y}i");
        }
        assert!(oebar_eval(&BigComplex::from_f64(1.0, 0.0, P), P).is_err());
        assert!(oebar_eval_product(&BigComplex::from_f64(0.0, 1.2, P), P).is_err());
    }

    #[test]
    fn principal_part_dominates_near_one() {
        let mut cs = Vec::new();
        let mut prev = f64::INFINITY;
        for y in [0.02, 0.01, 0.005] {
            let tau = BigComplex::from_f64(0.0, y, P);
            let v = oebar_eval_product(&q_of_tau(&tau), P).unwrap();
            let main = principal_part(&tau);
            let ratio = (&v.re / &main.re).to_f64();
            assert!((ratio - 1.0).abs() < prev);
            prev = (ratio - 1.0).abs();
            let growth = (std::f64::consts::PI / (24.0 * y)).exp();
            cs.push((&v - &main).abs().to_f64() / (y * growth));
        }
        let (lo, hi) = cs.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &c| (a.min(c), b.max(c)));
        assert!(hi / lo < 1.5, "{cs:?}");
    }

    #[test]
    fn mock_theta_near_one() {
        assert_eq!(f_near_one(64).to_f64(), 4.0 / 3.0);
        let inside = BigComplex::from_f64(0.4, 0.3, P);
        let a = f_eval(&inside, P).unwrap();
        let b = f_eval_series(&inside, P).unwrap();
        assert!((&a - &b.value).abs().to_f64() < 1e-30);
        let mut prev = f64::INFINITY;
        for y in [0.04, 0.02, 0.01] {
            let d = f_near_one_diagnostic(&BigComplex::from_f64(0.0, y, P), P).unwrap();
            assert!(d.deviation < prev);
            assert!(d.over_tau < 10.0);
            prev = d.deviation;
        }
    }

    #[test]
    fn cauchy_recovers_small_coefficients() {
        let exact = oebar_series_hypergeometric(50);
        for n in [0u64, 1, 4, 10, 50] {
            let r = cauchy_full_integral(n, None, 96).unwrap();
            assert_eq!(r.coefficient, exact.coeff(n as usize).to_string(), "n {n}");
            assert!(r.residual < 1e-6 && r.imaginary < 1e-6);
        }
        assert!(cauchy_full_integral(10, Some(3), 96).is_err());
    }

    #[test]
    fn main_term_forms() {
        let m1 = main_term(1, P).unwrap();
        let direct = 3f64.powf(-1.25) * (std::f64::consts::PI / 3f64.sqrt()).exp();
        assert!((m1.exponential.to_f64() / direct - 1.0).abs() < 1e-14);
        let mut prev = f64::INFINITY;
        for n in [100, 400, 1600] {
            let d = main_term(n, P).unwrap().relative_difference();
            assert!(d < prev);
            prev = d;
        }
    }

    #[test]
    fn arc_decomposition_at_small_n() {
        let n = 100;
        let wp = working_precision(96);
        let geom = ArcGeometry::new(n, DEFAULT_M, wp).unwrap();
        let radius = (&(&(-&BigReal::pi(wp)) * 2.0) * &geom.y).exp();
        let series = CircleSeries::new(&radius, 96).unwrap();
        let i1 = major_arc_with(&series, &geom, 96).unwrap();
        let i2 = minor_arc_integral(&series, &geom, 96).unwrap();
        let total = &i1.value + &i2;
        let exact = oebar_series_hypergeometric(100).coeff(100).clone();
        let exact_f = BigReal::from_bigint(&exact, 96).to_f64();
        assert!((total.re.to_f64() - exact_f).abs() < 1e-6 * exact_f);
        // The minor arc is small next to the main term already at n = 100.
        let samples = minor_arc_empirical_max(&series, &geom, 200).unwrap();
        let bound = minor_arc_bound(&geom);
        assert!(samples.values.iter().all(|&v| v <= bound.bound_value));
        let crude = (1.0 - 2.0 * geom.major_half_width().to_f64()) * samples.max * geom.radial_factor().to_f64();
        assert!(i2.abs().to_f64() <= crude);
        let main = main_term(n, 96).unwrap().exponential.to_f64();
        assert!(crude < 0.1 * main);
        assert!(i2.abs().to_f64() < 1e-4 * main);
        // Conjugate symmetry of the samples.
        let at = |x: f64| series.eval_at(&BigReal::from_f64(x, wp)).abs().to_f64();
        assert!((at(0.3) - at(-0.3)).abs() < 1e-20 * at(0.3).max(1.0));
        assert!(samples.max < series.eval_at(&BigReal::zero(wp)).abs().to_f64() * 1e-3);
    }

    #[test]
    fn model_integral_matches_p0_form() {
        let geom = ArcGeometry::new(100, DEFAULT_M, P).unwrap();
        let model = major_arc_model_integral(&geom, 96).unwrap();
        let p0 = major_arc_p0_form(&geom, 96).unwrap();
        assert!(((&model.re - &p0) / &p0).abs().to_f64() < 1e-12);
    }
}
