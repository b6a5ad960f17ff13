use crate::error::{Error, Result};
use crate::num::{working_precision, BigReal};

/// Modified Bessel function `I_order(x)` by the ascending series
/// `sum_k (x/2)^(2k+order) / (k! (k+order)!)`. Negative orders use `I_-n = I_n`.
pub fn bessel_i(order: i64, x: &BigReal, prec: usize) -> Result<BigReal> {
    if x.is_negative() {
        return Err(Error::Domain { what: "bessel_i", value: x.to_f64(), domain: "[0, inf)" });
    }
    let n = order.unsigned_abs();
    let wp = working_precision(prec) + 8;
    let half = &x.with_prec(wp) / 2.0;
    if half.is_zero() {
        return Ok(if n == 0 { BigReal::one(prec) } else { BigReal::zero(prec) });
    }
    let sq = &half * &half;
    // k = 0 term: (x/2)^n / n!
    let mut term = half.powi(n as i64);
    for j in 2..=n {
        term = &term / (j as f64);
    }
    let mut sum = term.clone();
    let mut k = 1u64;
    loop {
        term = &(&term * &sq) / ((k * (k + n)) as f64);
        sum = &sum + &term;
        // Ratios decrease past the peak; stop once the term is negligible and shrinking.
        let shrinking = (k * (k + n)) as f64 > 2.0 * sq.to_f64();
        if shrinking && term_negligible(&term, &sum, wp) {
            break;
        }
        k += 1;
    }
    Ok(sum.with_prec(prec))
}

fn term_negligible(term: &BigReal, sum: &BigReal, wp: usize) -> bool {
    match (term.exponent(), sum.exponent()) {
        (Some(t), Some(s)) => (t as i64) < s as i64 - wp as i64 - 2,
        _ => true,
    }
}
