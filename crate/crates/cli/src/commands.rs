use anyhow::{bail, Result};
use serde::Serialize;

use oddeven::asympt::{
    even_part_ingham_input, gf_ratio_table, halve_argument_exact, ingham_transfer_exact, oe_law_exact, ratio_table,
    strictly_approaching_one, Branch, Kind as SeqKind,
};
use oddeven::circle::{circle_report, exponent_saving, m_threshold, main_term};
use oddeven::enumeration::{enum_oe, enum_oebar};
use oddeven::genfun::{
    classical_identity_suite, f_mock_from_watson, f_mock_series, is_nonnegative, oe_series,
    oebar_series_hypergeometric, oebar_series_product, parity_split, shift_monotone, sj_series, IdentityCheck,
    ParityClass,
};
use oddeven::PowerSeries;

use crate::output::{emit, emit_one};
use crate::{Cli, Command, Common, Kind, Method, Suite};

/// Enumeration is exponential in `n`.
const ENUM_LIMIT: u32 = 50;
/// Series arithmetic is quadratic in the order.
const SERIES_LIMIT: u64 = 20_000;
const CIRCLE_LIMIT: u64 = 2_000;
const EPS_FLOOR: f64 = 0.005;

/// `Ok(false)` means a check failed; errors are reserved for bad input.
pub fn run(cli: &Cli) -> Result<bool> {
    let common = &cli.common;
    match &cli.command {
        Command::Compute { kind, n_max, method } => compute(*kind, *n_max, *method, common).map(|_| true),
        Command::Verify { suite, order, inject_fault } => verify(*suite, *order, *inject_fault, common),
        Command::Ratio { kind, n } => ratio(*kind, n, common).map(|_| true),
        Command::GfEval { eps_grid } => gf_eval(eps_grid, common).map(|_| true),
        Command::Circle { n, m, grid } => circle(*n, *m, *grid, common).map(|_| true),
    }
}

#[derive(Serialize)]
struct CountRow {
    n: u32,
    count: String,
}

fn compute(kind: Kind, n_max: u32, method: Method, common: &Common) -> Result<()> {
    if method == Method::Enum && n_max > ENUM_LIMIT && !common.force {
        bail!("enumeration up to n = {n_max} is exponential; use --n-max <= {ENUM_LIMIT} or pass --force");
    }
    if u64::from(n_max) > SERIES_LIMIT && !common.force {
        bail!("n_max {n_max} exceeds the series-order ceiling {SERIES_LIMIT}; pass --force to proceed");
    }
    let counts: Vec<String> = match (kind, method) {
        (Kind::Oe, Method::Series) => coefficients(&oe_series(n_max as usize)),
        (Kind::Oebar, Method::Series) => coefficients(&oebar_series_hypergeometric(n_max as usize)),
        (Kind::Oebar, Method::WatsonProduct) => coefficients(&oebar_series_product(n_max as usize)),
        (Kind::Oe, Method::WatsonProduct) => bail!("the watson-product method applies to --kind oebar only"),
        (Kind::Oe, Method::Enum) => (0..=n_max).map(|n| enum_oe(n, false).count.to_string()).collect(),
        (Kind::Oebar, Method::Enum) => (0..=n_max).map(|n| enum_oebar(n, false).count.to_string()).collect(),
    };
    let rows: Vec<CountRow> = counts.into_iter().enumerate().map(|(n, count)| CountRow { n: n as u32, count }).collect();
    emit(&rows, common)
}

fn coefficients(s: &PowerSeries) -> Vec<String> {
    s.coeffs().iter().map(|c| c.to_string()).collect()
}

#[derive(Serialize)]
struct CheckRow {
    suite: &'static str,
    check: String,
    passed: bool,
    detail: String,
}

impl CheckRow {
    fn new(suite: &'static str, check: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckRow { suite, check: check.into(), passed, detail: detail.into() }
    }

    fn identity(c: IdentityCheck) -> Self {
        let detail = match c.first_mismatch {
            Some(k) => format!("{} mismatches, first at q^{k}", c.mismatches),
            None => format!("order {}", c.order),
        };
        CheckRow::new("identities", c.name, c.passed(), detail)
    }
}

fn verify(suite: Suite, order: usize, inject_fault: bool, common: &Common) -> Result<bool> {
    let mut rows = Vec::new();
    if matches!(suite, Suite::Identities | Suite::All) {
        identity_checks(order, common.prec, &mut rows)?;
    }
    if matches!(suite, Suite::Asymptotics | Suite::All) {
        asymptotic_checks(common.prec, &mut rows)?;
    }
    if inject_fault {
        rows.push(CheckRow::new("fault", "injected_fault", false, "deliberate failure"));
    }
    emit(&rows, common)?;
    let failed = rows.iter().filter(|r| !r.passed).count();
    eprintln!("{} checks, {failed} failed", rows.len());
    Ok(failed == 0)
}

fn identity_checks(order: usize, prec: usize, rows: &mut Vec<CheckRow>) -> Result<()> {
    rows.extend(classical_identity_suite(order).into_iter().map(CheckRow::identity));
    let oe = oe_series(order);
    let (even, odd) = parity_split(order);
    rows.push(CheckRow::identity(IdentityCheck::compare("parity_split_sum", &even.add(&odd), &oe)));
    let classes = ParityClass::all().iter().fold(PowerSeries::zero(order), |acc, &j| acc.add(&sj_series(j, order)));
    rows.push(CheckRow::identity(IdentityCheck::compare("parity_class_sum", &classes, &oe)));
    rows.push(CheckRow::identity(IdentityCheck::compare(
        "oebar_hypergeometric_vs_product",
        &oebar_series_hypergeometric(order),
        &oebar_series_product(order),
    )));
    rows.push(CheckRow::identity(IdentityCheck::compare(
        "watson_mock_theta",
        &f_mock_from_watson(order),
        &f_mock_series(order),
    )));

    let small = order.min(20) as u32;
    let oebar = oebar_series_hypergeometric(small as usize);
    let enum_ok = (0..=small).all(|n| {
        oe.coeff(n as usize).to_string() == enum_oe(n, false).count.to_string()
            && oebar.coeff(n as usize).to_string() == enum_oebar(n, false).count.to_string()
    });
    rows.push(CheckRow::new("identities", "enumeration_matches_series", enum_ok, format!("n <= {small}")));
    rows.push(CheckRow::new("identities", "oe_nonnegative", is_nonnegative(&oe), format!("order {order}")));
    rows.push(CheckRow::new("identities", "oe_shift_monotone", shift_monotone(&oe, 1), "OE(n) <= OE(n+2), n >= 1"));

    let res = oddeven::asympt::constant_residuals(prec)?;
    let tol = 2f64.powi(-(prec as i32 - 56));
    rows.push(CheckRow::new(
        "identities",
        "golden_constants",
        res.max() < tol,
        format!("max residual {:.3e}, tolerance {tol:.3e}", res.max()),
    ));
    Ok(())
}

fn asymptotic_checks(prec: usize, rows: &mut Vec<CheckRow>) -> Result<()> {
    let grids: [(&str, SeqKind, [u64; 3]); 4] = [
        ("oe_ratio_even_index", SeqKind::Oe, [100, 400, 1600]),
        ("oe_ratio_odd_index", SeqKind::Oe, [101, 401, 1601]),
        ("oebar_ratio", SeqKind::Oebar, [100, 400, 1600]),
        ("oebar_ratio_odd_index", SeqKind::Oebar, [101, 401, 1601]),
    ];
    for (name, kind, ns) in grids {
        let ratios: Vec<f64> = ratio_table(kind, &ns, prec)?.iter().map(|r| r.ratio).collect();
        rows.push(CheckRow::new("asymptotics", name, strictly_approaching_one(&ratios), format!("{ratios:?}")));
    }

    let gf = gf_ratio_table(&[0.05, 0.02, 0.01], prec)?;
    for b in Branch::all() {
        let ratios: Vec<f64> = gf.iter().filter(|r| r.branch == b).map(|r| r.ratio).collect();
        rows.push(CheckRow::new(
            "asymptotics",
            format!("gf_{}_ratio", b.name()),
            strictly_approaching_one(&ratios),
            format!("{ratios:?}"),
        ));
    }

    let law = halve_argument_exact(&ingham_transfer_exact(&even_part_ingham_input())?)?;
    rows.push(CheckRow::new(
        "asymptotics",
        "tauberian_transfer_exact",
        law == oe_law_exact(),
        format!("c = {}, p = {}, k = {}", law.c, law.p, law.k),
    ));

    let mut diffs = Vec::new();
    for n in [100, 400, 1600] {
        diffs.push(main_term(n, prec)?.relative_difference());
    }
    rows.push(CheckRow::new(
        "asymptotics",
        "main_term_bessel_form",
        diffs.windows(2).all(|w| w[1] < w[0]),
        format!("{diffs:?}"),
    ));

    let t = m_threshold();
    let sign_change = exponent_saving(t - 5e-4) < 0.0 && exponent_saving(t + 5e-4) > 0.0;
    rows.push(CheckRow::new("asymptotics", "minor_arc_threshold", sign_change, format!("M* = {t:.6}")));
    Ok(())
}

fn ratio(kind: Kind, ns: &[u64], common: &Common) -> Result<()> {
    let top = ns.iter().copied().max().unwrap_or(0);
    if top > SERIES_LIMIT && !common.force {
        bail!("n = {top} exceeds the series-order ceiling {SERIES_LIMIT}; pass --force to proceed");
    }
    let kind = match kind {
        Kind::Oe => SeqKind::Oe,
        Kind::Oebar => SeqKind::Oebar,
    };
    emit(&ratio_table(kind, ns, common.prec)?, common)
}

fn gf_eval(grid: &[f64], common: &Common) -> Result<()> {
    if grid.is_empty() {
        bail!("empty --eps-grid");
    }
    if let Some(bad) = grid.iter().find(|e| !(**e > 0.0 && **e < 1.0)) {
        bail!("eps = {bad} is outside (0, 1)");
    }
    if let Some(small) = grid.iter().find(|e| **e < EPS_FLOOR) {
        if !common.force {
            bail!("eps = {small} needs on the order of {:.0} series terms; pass --force to proceed", 10.0 / small.powi(2));
        }
    }
    emit(&gf_ratio_table(grid, common.prec)?, common)
}

fn circle(n: u64, m: f64, grid: usize, common: &Common) -> Result<()> {
    if n > CIRCLE_LIMIT && !common.force {
        bail!("circle method at n = {n} is slow; use n <= {CIRCLE_LIMIT} or pass --force");
    }
    if m <= m_threshold() {
        eprintln!(
            "warning: M = {m} is below the threshold {:.6}; the minor-arc bound is not an error term",
            m_threshold()
        );
    }
    let report = circle_report(n, m, grid, common.prec)
        .map_err(|e| anyhow::anyhow!("{e}; try a larger --prec or a different --M"))?;
    emit_one(&report, common)
}
