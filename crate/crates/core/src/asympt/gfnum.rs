//! Numerical values of the generating function near `q = 1` and the
//! exact-versus-asymptotic comparisons built on them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::genfun::{oe_series, oebar_series_hypergeometric, parity_split, ParityClass};
use crate::num::{working_precision, BigComplex, BigReal};
use crate::qseries::{EvalResult, GrowthBound, PowerSeries};

use super::law::{oe_asymptotic, oebar_asymptotic};

/// Which part of `O(q)` to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Full,
    Even,
    Odd,
}

impl Branch {
    pub fn all() -> [Branch; 3] {
        [Branch::Full, Branch::Even, Branch::Odd]
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::Full => "full",
            Branch::Even => "even",
            Branch::Odd => "odd",
        }
    }

    fn admits(self, class: ParityClass) -> bool {
        match self {
            Branch::Full => true,
            Branch::Even => class.feeds_even(),
            Branch::Odd => !class.feeds_even(),
        }
    }
}

/// Leading term: `sqrt(2 / sqrt5) e^(pi^2/(20 eps))` for the full series,
/// half of that for each parity part.
pub fn gf_asymptotic(eps: &BigReal, which: Branch, prec: usize) -> Result<BigReal> {
    if !eps.is_positive() {
        return Err(Error::Domain { what: "gf_asymptotic", value: eps.to_f64(), domain: "eps > 0" });
    }
    let wp = working_precision(prec);
    let eps = eps.with_prec(wp);
    let pi = BigReal::pi(wp);
    let s5 = BigReal::from_u64(5, wp).sqrt();
    let growth = (&(&pi * &pi) / &(&eps * 20.0)).exp();
    let constant = match which {
        Branch::Full => (&BigReal::from_u64(2, wp) / &s5).sqrt(),
        Branch::Even | Branch::Odd => (&s5 * 2.0).sqrt().recip(),
    };
    Ok((&constant * &growth).with_prec(prec))
}

/// The terms `f_m = q^(m(m+1)/2) / (q^2; q^2)_m` at `q = e^-eps`, up to where
/// they fall below `2^-(prec + guard)` of the running sum.
pub fn term_profile(eps: &BigReal, prec: usize) -> Result<Vec<BigReal>> {
    if !eps.is_positive() {
        return Err(Error::Domain { what: "term_profile", value: eps.to_f64(), domain: "eps > 0" });
    }
    let wp = working_precision(prec);
    let q = (-&eps.with_prec(wp)).exp();
    let one = BigReal::one(wp);
    let mut terms = vec![one.clone()];
    let mut sum = one.clone();
    let mut qm = one.clone();
    let mut m = 0u64;
    loop {
        m += 1;
        qm = &qm * &q;
        // f_m / f_(m-1) = q^m / (1 - q^(2m))
        let ratio = &qm / &(&one - &(&qm * &qm));
        let t = &terms[terms.len() - 1] * &ratio;
        sum = &sum + &t;
        let decreasing = ratio.to_f64() < 0.5;
        let small = match (t.exponent(), sum.exponent()) {
            (Some(a), Some(b)) => (a as i64) < b as i64 - wp as i64 - 4,
            _ => true,
        };
        terms.push(t);
        if decreasing && small {
            return Ok(terms);
        }
        if m > 50_000_000 {
            return Err(Error::InvalidArgument("term profile did not settle".into()));
        }
    }
}

/// `sum f_m` over the indices admitted by `which` (all terms positive).
pub fn gf_term_sum(eps: &BigReal, which: Branch, prec: usize) -> Result<BigReal> {
    let terms = term_profile(eps, prec)?;
    let wp = working_precision(prec);
    let mut s = BigReal::zero(wp);
    for (m, t) in terms.iter().enumerate() {
        if which.admits(ParityClass::new((m % 4) as u8)?) {
            s = &s + t;
        }
    }
    Ok(s.with_prec(prec))
}

/// `S_j` at `q = e^-eps` by summing its terms.
pub fn sj_term_sum(eps: &BigReal, class: ParityClass, prec: usize) -> Result<BigReal> {
    let terms = term_profile(eps, prec)?;
    let wp = working_precision(prec);
    let mut s = BigReal::zero(wp);
    for t in terms.iter().skip(class.index() as usize).step_by(4) {
        s = &s + t;
    }
    Ok(s.with_prec(prec))
}

/// Unimodality of `f_m`: the ratios `q^m / (1 - q^(2m))` strictly decrease and the
/// largest term sits where the ratio crosses 1.
#[derive(Clone, Debug, Serialize)]
pub struct Unimodality {
    pub eps: f64,
    pub ratios_decreasing: bool,
    pub argmax: usize,
    pub peak_index: f64,
}

pub fn unimodality(eps: &BigReal, prec: usize) -> Result<Unimodality> {
    let terms = term_profile(eps, prec)?;
    let ratios: Vec<BigReal> = terms.windows(2).map(|w| &w[1] / &w[0]).collect();
    let ratios_decreasing = ratios.windows(2).all(|w| w[1] < w[0]);
    let argmax = terms
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).expect("finite terms"))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let peak_index = -(0.381_966_011_250_105_1f64.ln()) / (2.0 * eps.to_f64());
    Ok(Unimodality { eps: eps.to_f64(), ratios_decreasing, argmax, peak_index })
}

/// Coefficient growth used for tail bounds: `OE(n) <= e^(pi sqrt(n/5))`.
pub fn oe_growth() -> GrowthBound {
    GrowthBound::sub_exponential(std::f64::consts::PI / 5f64.sqrt())
}

/// Smallest order `N` with `eps N - k sqrt N >= (prec + guard) ln 2 + 8 - log(value)`,
/// so the tail under `e^(k sqrt n)` growth is negligible against the value.
pub fn series_order_for(eps: f64, sqrt_rate: f64, log_value: f64, prec: usize) -> usize {
    let need = ((working_precision(prec) as f64) * std::f64::consts::LN_2 + 8.0 - log_value).max(8.0);
    // eps s^2 - k s - need = 0
    let s = (sqrt_rate + (sqrt_rate * sqrt_rate + 4.0 * eps * need).sqrt()) / (2.0 * eps);
    (s * s).ceil() as usize + 1
}

/// `O(e^-eps)` (or a parity part) from the exact coefficient series.
pub fn gf_series_value(eps: &BigReal, which: Branch, prec: usize) -> Result<EvalResult> {
    let e = eps.to_f64();
    let log_value = std::f64::consts::PI.powi(2) / (20.0 * e) - 1.0;
    let order = series_order_for(e, std::f64::consts::PI / 5f64.sqrt(), log_value, prec);
    let series = match which {
        Branch::Full => oe_series(order),
        Branch::Even => parity_split(order).0,
        Branch::Odd => parity_split(order).1,
    };
    evaluate_real(&series, eps, prec)
}

fn evaluate_real(series: &PowerSeries, eps: &BigReal, prec: usize) -> Result<EvalResult> {
    let wp = working_precision(prec);
    let q = BigComplex::from_real((-&eps.with_prec(wp)).exp());
    series.evaluate_at(&q, prec, &oe_growth())
}

/// One row of an exact-versus-asymptotic coefficient table.
#[derive(Clone, Debug, Serialize)]
pub struct RatioRow {
    pub n: u64,
    pub exact: String,
    pub asymptotic: String,
    pub ratio: f64,
}

/// Which coefficient sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Oe,
    Oebar,
}

/// `(n, exact, asymptotic, ratio)` for each `n`, from one series of order `max n`.
pub fn ratio_table(kind: Kind, ns: &[u64], prec: usize) -> Result<Vec<RatioRow>> {
    let Some(&top) = ns.iter().max() else {
        return Err(Error::InvalidArgument("empty n list".into()));
    };
    if ns.contains(&0) {
        return Err(Error::Domain { what: "ratio_table", value: 0.0, domain: "n >= 1" });
    }
    let series = match kind {
        Kind::Oe => oe_series(top as usize),
        Kind::Oebar => oebar_series_hypergeometric(top as usize),
    };
    ns.iter()
        .map(|&n| {
            let exact = series.coeff(n as usize);
            let asym = match kind {
                Kind::Oe => oe_asymptotic(n, prec)?,
                Kind::Oebar => oebar_asymptotic(n, prec)?,
            };
            let ratio = &BigReal::from_bigint(exact, working_precision(prec)) / &asym;
            Ok(RatioRow { n, exact: exact.to_string(), asymptotic: asym.to_sci(20), ratio: ratio.to_f64() })
        })
        .collect()
}

/// One row of the generating-function limit table.
#[derive(Clone, Debug, Serialize)]
pub struct GfRow {
    pub eps: f64,
    pub branch: Branch,
    pub value: String,
    pub asymptotic: String,
    pub ratio: f64,
}

/// `(eps, branch, value, leading term, ratio)` with values from the term sums.
pub fn gf_ratio_table(grid: &[f64], prec: usize) -> Result<Vec<GfRow>> {
    let mut rows = Vec::new();
    for &e in grid {
        let eps = BigReal::from_f64(e, prec);
        for b in Branch::all() {
            let v = gf_term_sum(&eps, b, prec)?;
            let a = gf_asymptotic(&eps, b, prec)?;
            rows.push(GfRow { eps: e, branch: b, value: v.to_sci(20), asymptotic: a.to_sci(20), ratio: (&v / &a).to_f64() });
        }
    }
    Ok(rows)
}

/// `|x_i - 1|` strictly decreasing along the sequence.
pub fn strictly_approaching_one(values: &[f64]) -> bool {
    values.windows(2).all(|w| (w[1] - 1.0).abs() < (w[0] - 1.0).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::sj_series;

    const P: usize = 192;

    #[test]
    fn constants_of_parts_add_up() {
        let eps = BigReal::from_f64(0.03, P);
        let full = gf_asymptotic(&eps, Branch::Full, P).unwrap();
        let even = gf_asymptotic(&eps, Branch::Even, P).unwrap();
        let odd = gf_asymptotic(&eps, Branch::Odd, P).unwrap();
        assert_eq!(even, odd);
        assert!(((&full - &(&even * 2.0)).abs() / &full).to_f64() < 1e-50);
    }

    #[test]
    fn term_sums_match_series_route() {
        let eps = BigReal::from_f64(0.1, P);
        for b in Branch::all() {
            let a = gf_term_sum(&eps, b, P).unwrap();
            let s = gf_series_value(&eps, b, P).unwrap();
            let rel = ((&a - &s.value.re).abs() / &a).to_f64();
            assert!(rel < 1e-50, "{b:?} {rel:e}");
            assert!((&s.tail_bound / &a).to_f64() < 1e-50);
        }
        for j in ParityClass::all() {
            let t = sj_term_sum(&eps, j, P).unwrap();
            let order = series_order_for(0.1, 1.41, 0.0, P);
            let s = sj_series(j, order).evaluate_at(&BigComplex::from_real((-&eps).exp()), P, &oe_growth()).unwrap();
            assert!(((&t - &s.value.re).abs() / &t).to_f64() < 1e-50);
        }
    }

    #[test]
    fn terms_are_unimodal() {
        for e in [0.2, 0.05, 0.01] {
            let u = unimodality(&BigReal::from_f64(e, 128), 128).unwrap();
            assert!(u.ratios_decreasing);
            assert!((u.argmax as f64 - u.peak_index).abs() <= 1.0, "{u:?}");
        }
    }

    #[test]
    fn ratio_rows_echo_coefficients() {
        let rows = ratio_table(Kind::Oe, &[8], 128).unwrap();
        assert_eq!(rows[0].exact, "1");
        let rows = ratio_table(Kind::Oebar, &[4, 3], 128).unwrap();
        assert_eq!(rows[0].exact, "2");
        assert_eq!(rows[1].exact, "4");
        assert!(ratio_table(Kind::Oe, &[], 64).is_err());
        assert!(ratio_table(Kind::Oe, &[0, 3], 64).is_err());
    }

    #[test]
    fn approach_helper() {
        assert!(strictly_approaching_one(&[0.9, 1.05, 0.99]));
        assert!(!strictly_approaching_one(&[0.9, 1.1]));
    }
}
