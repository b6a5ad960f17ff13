//! Coefficient laws `a(n) ~ c n^(-p) e^(k sqrt n)` and the Tauberian transfer.

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::num::{working_precision, BigReal};

use super::closed::ClosedForm;

/// `a(n) ~ c * n^(-p) * exp(k sqrt n)`.
#[derive(Clone, Debug)]
pub struct AsymptoticLaw {
    pub c: BigReal,
    pub p: BigReal,
    pub k: BigReal,
}

/// Inputs of the Tauberian theorem: `sum a(n) e^(-n eps) ~ lambda eps^(-alpha) e^(A / eps)`.
///
/// Named apart from the expansion parameters, which reuse the letters.
#[derive(Clone, Debug)]
pub struct InghamInput {
    pub lambda: BigReal,
    pub alpha_exp: BigReal,
    pub a_gap: BigReal,
}

/// [`AsymptoticLaw`] with exact constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactLaw {
    pub c: ClosedForm,
    pub p: Rational64,
    pub k: ClosedForm,
}

/// [`InghamInput`] with exact constants.
#[derive(Clone, Debug)]
pub struct ExactInghamInput {
    pub lambda: ClosedForm,
    pub alpha_exp: Rational64,
    pub a_gap: ClosedForm,
}

impl AsymptoticLaw {
    pub fn eval(&self, n: &BigReal) -> BigReal {
        &(&self.c * &(&self.k * &n.sqrt()).exp()) / &n.pow(&self.p)
    }
}

impl ExactLaw {
    pub fn to_real(&self, prec: usize) -> AsymptoticLaw {
        AsymptoticLaw {
            c: self.c.to_real(prec),
            p: BigReal::ratio(*self.p.numer(), *self.p.denom(), prec),
            k: self.k.to_real(prec),
        }
    }
}

/// `(lambda A^(alpha/2 + 1/4) / (2 sqrt pi), alpha/2 + 3/4, 2 sqrt A)`.
pub fn ingham_transfer(input: &InghamInput) -> Result<AsymptoticLaw> {
    if !input.lambda.is_positive() || !input.a_gap.is_positive() {
        return Err(Error::InvalidArgument("Tauberian transfer needs lambda > 0 and A > 0".into()));
    }
    let prec = input.lambda.prec().max(input.a_gap.prec());
    let wp = working_precision(prec);
    let expo = &(&input.alpha_exp / 2.0) + 0.25;
    let a = input.a_gap.with_prec(wp);
    let c = &(&input.lambda * &a.pow(&expo)) / &(&BigReal::pi(wp).sqrt() * 2.0);
    Ok(AsymptoticLaw {
        c: c.with_prec(prec),
        p: (&(&input.alpha_exp / 2.0) + 0.75).with_prec(prec),
        k: (&a.sqrt() * 2.0).with_prec(prec),
    })
}

/// Exact counterpart of [`ingham_transfer`].
pub fn ingham_transfer_exact(input: &ExactInghamInput) -> Result<ExactLaw> {
    let half = Rational64::new(1, 2);
    let expo = input.alpha_exp * half + Rational64::new(1, 4);
    let two = ClosedForm::integer(2)?;
    let c = &(&input.lambda * &input.a_gap.pow(expo)?) / &(&two * &ClosedForm::pi().sqrt()?);
    Ok(ExactLaw { c, p: input.alpha_exp * half + Rational64::new(3, 4), k: &two * &input.a_gap.sqrt()? })
}

/// The law for `b(n) = a(n/2)` given the law for `a`: `(c 2^p, p, k / sqrt 2)`.
pub fn halve_argument(law: &AsymptoticLaw) -> AsymptoticLaw {
    let prec = law.c.prec();
    let two = BigReal::from_u64(2, prec);
    AsymptoticLaw { c: &law.c * &two.pow(&law.p), p: law.p.clone(), k: &law.k / &two.sqrt() }
}

/// Exact counterpart of [`halve_argument`].
pub fn halve_argument_exact(law: &ExactLaw) -> Result<ExactLaw> {
    let two = ClosedForm::integer(2)?;
    Ok(ExactLaw { c: &law.c * &two.pow(law.p)?, p: law.p, k: &law.k / &two.sqrt()? })
}

/// Inputs for the even part: `O_e(e^-eps) ~ (2 sqrt 5)^(-1/2) e^(pi^2 / (20 eps))`,
/// read in the variable `q^2 = e^(-eps')`, so `A = pi^2 / 10`.
pub fn even_part_ingham_input() -> ExactInghamInput {
    let two_root5 = ClosedForm::integer(2).unwrap() * ClosedForm::integer(5).unwrap().sqrt().unwrap();
    ExactInghamInput {
        lambda: two_root5.sqrt().unwrap().recip(),
        alpha_exp: Rational64::new(0, 1),
        a_gap: &ClosedForm::pi().pow(Rational64::new(2, 1)).unwrap() / &ClosedForm::integer(10).unwrap(),
    }
}

/// `OE(n) ~ n^(-3/4) e^(pi sqrt(n/5)) / (2 sqrt 5)` in exact form.
pub fn oe_law_exact() -> ExactLaw {
    let root5 = ClosedForm::integer(5).unwrap().sqrt().unwrap();
    ExactLaw {
        c: (&ClosedForm::integer(2).unwrap() * &root5).recip(),
        p: Rational64::new(3, 4),
        k: &ClosedForm::pi() / &root5,
    }
}

/// `OE(n) ~ n^(-3/4) e^(pi sqrt(n/5)) / (2 sqrt 5)`.
pub fn oe_asymptotic(n: u64, prec: usize) -> Result<BigReal> {
    if n == 0 {
        return Err(Error::Domain { what: "oe_asymptotic", value: 0.0, domain: "n >= 1" });
    }
    let wp = working_precision(prec);
    Ok(oe_law_exact().to_real(wp).eval(&BigReal::from_u64(n, wp)).with_prec(prec))
}

/// `OEbar(n) ~ n^(-3/4) e^(pi sqrt(n/3)) / 3^(5/4)`.
pub fn oebar_asymptotic(n: u64, prec: usize) -> Result<BigReal> {
    if n == 0 {
        return Err(Error::Domain { what: "oebar_asymptotic", value: 0.0, domain: "n >= 1" });
    }
    let wp = working_precision(prec);
    let three = BigReal::from_u64(3, wp);
    let nn = BigReal::from_u64(n, wp);
    let expo = &BigReal::pi(wp) * &(&nn / &three).sqrt();
    let den = &three.pow(&BigReal::ratio(5, 4, wp)) * &nn.pow(&BigReal::ratio(3, 4, wp));
    Ok((&expo.exp() / &den).with_prec(prec))
}
