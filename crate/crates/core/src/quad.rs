//! Composite Gauss-Legendre quadrature at arbitrary precision.

use crate::error::{Error, Result};
use crate::num::{BigComplex, BigReal};

/// Nodes and weights of an `n`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<BigReal>,
    weights: Vec<BigReal>,
}

impl GaussLegendre {
    /// Roots of `P_n` by Newton iteration from the Tricomi initial guesses.
    pub fn new(n: usize, prec: usize) -> Self {
        assert!(n >= 1);
        let one = BigReal::one(prec);
        let tol_exp = -(prec as i32) + 8;
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 1..=n {
            let guess = ((i as f64 - 0.25) / (n as f64 + 0.5) * std::f64::consts::PI).cos();
            let mut x = BigReal::from_f64(guess, prec);
            let mut deriv = one.clone();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, &x);
                let dx = &p / &dp;
                x = &x - &dx;
                deriv = dp;
                if dx.is_zero() || dx.exponent().is_some_and(|e| e < tol_exp) {
                    let (_, dp) = legendre_with_derivative(n, &x);
                    deriv = dp;
                    break;
                }
            }
            let w = BigReal::from_u64(2, prec) / ((&one - &(&x * &x)) * (&deriv * &deriv));
            nodes.push(x);
            weights.push(w);
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `int_a^b f` split into `panels` equal panels.
    pub fn integrate<F>(&self, f: &mut F, a: &BigReal, b: &BigReal, panels: usize) -> BigComplex
    where
        F: FnMut(&BigReal) -> BigComplex,
    {
        let p = a.prec().max(b.prec());
        let width = (b - a) / (panels as f64);
        let half = &width / 2.0;
        let mut total = BigComplex::zero(p);
        for k in 0..panels {
            let mid = a + &(&width * (k as f64 + 0.5));
            let mut panel = BigComplex::zero(p);
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                let t = &mid + &(&half * x);
                panel = &panel + &f(&t).scale(w);
            }
            total = &total + &panel.scale(&half);
        }
        total
    }
}

fn legendre_with_derivative(n: usize, x: &BigReal) -> (BigReal, BigReal) {
    let p = x.prec();
    let mut p0 = BigReal::one(p);
    let mut p1 = x.clone();
    for k in 2..=n {
        let k_f = k as f64;
        let p2 = (&(&(x * &p1) * (2.0 * k_f - 1.0)) - &(&p0 * (k_f - 1.0))) / k_f;
        p0 = p1;
        p1 = p2;
    }
    let (pn, pn1) = if n == 1 { (x.clone(), BigReal::one(p)) } else { (p1, p0) };
    // P_n'(x) = n (x P_n - P_(n-1)) / (x^2 - 1)
    let dp = &(&(&(x * &pn) - &pn1) * (n as f64)) / &(&(x * x) - 1.0);
    (pn, dp)
}

/// Outcome of an adaptive quadrature.
#[derive(Clone, Debug)]
pub struct QuadResult {
    pub value: BigComplex,
    /// Difference between the last two refinements.
    pub error_estimate: BigReal,
    pub panels: usize,
    pub evaluations: usize,
}

/// Doubles the panel count until two successive composite rules agree to
/// `rel_target * max(1, |I|)`, or the evaluation budget runs out.
pub fn integrate_adaptive<F>(
    rule: &GaussLegendre,
    mut f: F,
    a: &BigReal,
    b: &BigReal,
    start_panels: usize,
    rel_target: &BigReal,
    max_evaluations: usize,
) -> Result<QuadResult>
where
    F: FnMut(&BigReal) -> BigComplex,
{
    let mut panels = start_panels.max(1);
    let mut evaluations = 0;
    let mut achieved = f64::INFINITY;
    let mut prev: Option<BigComplex> = None;
    loop {
        let cost = panels * rule.len();
        if evaluations + cost > max_evaluations {
            return Err(Error::Quadrature { target: rel_target.to_f64(), achieved, evaluations });
        }
        evaluations += cost;
        let next = rule.integrate(&mut f, a, b, panels);
        if let Some(prev) = prev {
            let change = (&next - &prev).abs();
            let scale = next.abs().max(&BigReal::one(a.prec()));
            if change <= &scale * rel_target {
                return Ok(QuadResult { value: next, error_estimate: change, panels, evaluations });
            }
            achieved = (&change / &scale).to_f64();
        }
        prev = Some(next);
        panels *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(5, 128);
        let a = BigReal::from_f64(-1.0, 128);
        let b = BigReal::from_f64(2.0, 128);
        // int x^9 over [-1, 2] = (2^10 - 1) / 10
        let v = rule.integrate(&mut |x: &BigReal| BigComplex::from_real(x.powi(9)), &a, &b, 1);
        assert!((v.re.to_f64() - 102.3).abs() < 1e-25);
    }

    #[test]
    fn weights_sum_to_two() {
        let rule = GaussLegendre::new(16, 192);
        let s = rule.weights.iter().fold(BigReal::zero(192), |acc, w| &acc + w);
        assert!((&s - 2.0).abs().to_f64() < 1e-50);
    }

    #[test]
    fn adaptive_reaches_high_accuracy_on_exponential() {
        let p = 224;
        let rule = GaussLegendre::new(20, p);
        let a = BigReal::zero(p);
        let b = BigReal::one(p);
        let r = integrate_adaptive(
            &rule,
            |x: &BigReal| BigComplex::from_real(x.exp()),
            &a,
            &b,
            1,
            &BigReal::from_f64(2f64.powi(-180), p),
            10_000,
        )
        .unwrap();
        let exact = &BigReal::one(p).exp() - 1.0;
        assert!((&r.value.re - &exact).abs().to_f64() < 1e-54);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let p = 128;
        let rule = GaussLegendre::new(4, p);
        let r = integrate_adaptive(
            &rule,
            |x: &BigReal| BigComplex::from_real((x * 400.0).sin()),
            &BigReal::zero(p),
            &BigReal::one(p),
            1,
            &BigReal::from_f64(1e-30, p),
            40,
        );
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }
}
