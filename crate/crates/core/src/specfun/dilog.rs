use crate::error::{Error, Result};
use crate::num::{working_precision, BigReal};

/// `Li_2(x) = sum x^n / n^2` for `0 <= x < 1`, absolute error below `2^-prec`.
///
/// For `x > 1/2` the reflection `Li_2(x) = pi^2/6 - ln x ln(1-x) - Li_2(1-x)`
/// keeps the series ratio at most 1/2.
pub fn dilog(x: &BigReal, prec: usize) -> Result<BigReal> {
    let xf = x.to_f64();
    if x.is_negative() || xf >= 1.0 || !x.is_finite() {
        return Err(Error::Domain { what: "dilog", value: xf, domain: "[0, 1)" });
    }
    let wp = working_precision(prec) + 8;
    let x = x.with_prec(wp);
    if x.is_zero() {
        return Ok(BigReal::zero(prec));
    }
    let half = BigReal::ratio(1, 2, wp);
    let v = if x > half {
        let y = &BigReal::one(wp) - &x;
        let pi = BigReal::pi(wp);
        &(&(&pi * &pi) / 6.0) - &(&(&x.ln() * &y.ln()) + &series(&y, wp))
    } else {
        series(&x, wp)
    };
    Ok(v.with_prec(prec))
}

fn series(x: &BigReal, wp: usize) -> BigReal {
    if x.is_zero() {
        return BigReal::zero(wp);
    }
    // Tail after term n is below x^(n+1) / ((n+1)^2 (1-x)) <= 2 x^(n+1).
    let log2_x = x.to_f64().log2();
    let mut sum = BigReal::zero(wp);
    let mut pow = x.clone();
    let mut n = 1u64;
    loop {
        sum = &sum + &(&pow / ((n * n) as f64));
        if (n + 1) as f64 * log2_x < -(wp as f64) - 2.0 {
            return sum;
        }
        pow = &pow * x;
        n += 1;
    }
}
