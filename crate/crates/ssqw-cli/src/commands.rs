//! Command implementations.

use crate::output::{self, QfimJson};
use crate::{AngleArgs, BlochArgs, CliError, FormatArg, MethodArg, QuantityArg};
use rayon::prelude::*;
use ssqw_core::analysis::{
    self, avg_fisher_ssqw, crossing_eta, omega_min_ssqw, omega_oqw, omega_ssqw, AvgFisherMode,
    AxisRange, Quantity, ScanGrid,
};
use ssqw_core::kspace;
use ssqw_core::pauli::InitialBloch;
use ssqw_core::qfim::{asymptotic_qfim, closed_form_qfim, finite_time_qfim};
use ssqw_core::walk::{oracle_qfim, WalkSpec};
use ssqw_core::CoinParams;
use std::f64::consts::TAU;
use std::path::Path;

const MAX_T: usize = 10_000;

fn to_radians(v: f64, deg: bool) -> f64 {
    if deg {
        v.to_radians()
    } else {
        v
    }
}

fn coin_params(args: &AngleArgs) -> Result<CoinParams, CliError> {
    let theta = CoinParams::new(
        to_radians(args.theta1, args.deg),
        to_radians(args.theta2, args.deg),
    );
    theta.validate()?;
    Ok(theta)
}

fn bloch(args: &BlochArgs) -> Result<InitialBloch, CliError> {
    match (args.r1, args.r3) {
        (None, None) => Ok(InitialBloch::pure_with_r2(args.r2)?),
        (r1, r3) => Ok(InitialBloch::new(
            r1.unwrap_or(0.0),
            args.r2,
            r3.unwrap_or(0.0),
        )?),
    }
}

pub fn qfim(
    angles: &AngleArgs,
    bloch_args: &BlochArgs,
    t: usize,
    method: MethodArg,
    format: FormatArg,
) -> Result<(), CliError> {
    let theta = coin_params(angles)?;
    let r = bloch(bloch_args)?;
    if t > MAX_T {
        return Err(CliError::Usage(format!("t = {t} exceeds the {MAX_T} cap")));
    }
    let result = match method {
        MethodArg::Closed => closed_form_qfim(&theta, r.r2)?,
        MethodArg::Asymptotic => asymptotic_qfim(&theta, &r)?,
        MethodArg::Finite => finite_time_qfim(&theta, &r, t)?,
        MethodArg::Oracle => oracle_qfim(&WalkSpec { theta, r, t })?,
    };
    match format {
        FormatArg::Json => {
            let json =
                serde_json::to_string_pretty(&QfimJson::from(&result)).expect("result serializes");
            println!("{json}");
        }
        FormatArg::Text => print!("{}", output::qfim_text(&result)),
        FormatArg::Csv => return Err(CliError::Usage("qfim supports --format json|text".into())),
    }
    Ok(())
}

fn parse_grid(grid: &str) -> Result<(usize, usize), CliError> {
    let (a, b) = grid
        .split_once(['x', 'X'])
        .ok_or_else(|| CliError::Usage(format!("grid {grid:?} is not of the form N1xN2")))?;
    let n1 = a
        .parse::<usize>()
        .map_err(|_| CliError::Usage(format!("grid count {a:?} is not an integer")))?;
    let n2 = b
        .parse::<usize>()
        .map_err(|_| CliError::Usage(format!("grid count {b:?} is not an integer")))?;
    Ok((n1, n2))
}

fn parse_range(spec: Option<String>, deg: bool) -> Result<(f64, f64), CliError> {
    match spec {
        None => Ok((0.0, TAU)),
        Some(s) => {
            let (a, b) = s
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("range {s:?} is not of the form a:b")))?;
            let lo = a
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("range bound {a:?} is not a number")))?;
            let hi = b
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("range bound {b:?} is not a number")))?;
            Ok((to_radians(lo, deg), to_radians(hi, deg)))
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn scan(
    quantity: QuantityArg,
    grid: &str,
    range1: Option<String>,
    range2: Option<String>,
    r2: f64,
    t: usize,
    out: &Path,
    format: FormatArg,
    deg: bool,
) -> Result<(), CliError> {
    let (n1, n2) = parse_grid(grid)?;
    let (lo1, hi1) = parse_range(range1, deg)?;
    let (lo2, hi2) = parse_range(range2, deg)?;
    if t > MAX_T {
        return Err(CliError::Usage(format!("t = {t} exceeds the {MAX_T} cap")));
    }
    let quantity = match quantity {
        QuantityArg::F11 => Quantity::F11,
        QuantityArg::F22 => Quantity::F22,
        QuantityArg::F12 => Quantity::F12,
        QuantityArg::Omega => Quantity::Omega,
        QuantityArg::Advantage => Quantity::Advantage,
        QuantityArg::Incompat => Quantity::Incompat,
    };
    let grid = ScanGrid {
        theta1: AxisRange::new(lo1, hi1, n1),
        theta2: AxisRange::new(lo2, hi2, n2),
        quantity,
        r2,
        t,
    };
    analysis::validate_grid(&grid)?;
    // cells are independent; evaluate in parallel, collect in index order so
    // output bytes do not depend on the thread count
    let indices: Vec<(usize, usize)> = (0..n1).flat_map(|i| (0..n2).map(move |j| (i, j))).collect();
    let rows = indices
        .par_iter()
        .map(|&(i, j)| analysis::scan_cell(&grid, grid.theta1.value(i), grid.theta2.value(j)))
        .collect::<Result<Vec<_>, _>>()?;

    let contents = match format {
        FormatArg::Csv => output::scan_csv(&rows, quantity),
        FormatArg::Json => output::scan_json(&rows, quantity),
        FormatArg::Text => return Err(CliError::Usage("scan supports --format csv|json".into())),
    };
    output::write_atomic(out, &contents)?;
    eprintln!("wrote {} rows to {}", rows.len(), out.display());
    Ok(())
}

pub fn avg_fisher(theta2: f64, deg: bool, format: FormatArg) -> Result<(), CliError> {
    let theta2 = to_radians(theta2, deg);
    if !(0.0..TAU).contains(&theta2) {
        return Err(CliError::Usage(format!(
            "theta2 = {theta2} outside [0, 2*pi)"
        )));
    }
    let closed = avg_fisher_ssqw(theta2, AvgFisherMode::Closed);
    let numeric = avg_fisher_ssqw(theta2, AvgFisherMode::Numeric);
    match format {
        FormatArg::Json => println!(
            "{}",
            serde_json::json!({
                "theta2": theta2,
                "closed": closed,
                "numeric": numeric,
                "difference": (closed - numeric).abs(),
            })
        ),
        _ => {
            println!("closed     = {}", output::sig12(closed));
            println!("numeric    = {}", output::sig12(numeric));
            println!("difference = {:.3e}", (closed - numeric).abs());
        }
    }
    Ok(())
}

pub fn compare(
    eta_only: bool,
    theta1: f64,
    theta2: f64,
    deg: bool,
    format: FormatArg,
) -> Result<(), CliError> {
    let eta = crossing_eta();
    if eta_only {
        match format {
            FormatArg::Json => println!("{}", serde_json::json!({ "eta": eta })),
            _ => println!("{}", output::sig12(eta)),
        }
        return Ok(());
    }
    let theta = CoinParams::new(to_radians(theta1, deg), to_radians(theta2, deg));
    theta.validate()?;
    let ssqw = omega_ssqw(&theta, 0.0)?;
    let qw = omega_oqw(theta.theta1);
    let min_ssqw = omega_min_ssqw(theta.theta1);
    match format {
        FormatArg::Json => println!(
            "{}",
            serde_json::json!({
                "omega_ssqw": ssqw,
                "omega_qw": qw,
                "omega_min_ssqw": min_ssqw,
                "advantage": ssqw - qw,
                "eta": eta,
            })
        ),
        _ => {
            println!("omega_ssqw     = {}", output::sig12(ssqw));
            println!("omega_qw       = {}", output::sig12(qw));
            println!("omega_min_ssqw = {}", output::sig12(min_ssqw));
            println!("advantage      = {}", output::sig12(ssqw - qw));
            println!("eta            = {}", output::sig12(eta));
        }
    }
    Ok(())
}

pub fn poles(angles: &AngleArgs, format: FormatArg) -> Result<(), CliError> {
    let theta = coin_params(angles)?;
    let ps = kspace::poles(&theta)?;
    let inside = ps.inside_unit_circle();
    match format {
        FormatArg::Json => {
            let items: Vec<serde_json::Value> =
                ps.z.iter()
                    .zip(inside)
                    .enumerate()
                    .map(|(i, (z, ins))| {
                        serde_json::json!({
                            "name": format!("z{}", i + 1),
                            "re": z.re,
                            "im": z.im,
                            "abs": z.norm(),
                            "inside": ins,
                        })
                    })
                    .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&items).expect("poles serialize")
            );
        }
        _ => {
            for (i, (z, ins)) in ps.z.iter().zip(inside).enumerate() {
                println!(
                    "z{} = {} (|z| = {}, {})",
                    i + 1,
                    output::sig12(z.re),
                    output::sig12(z.norm()),
                    if ins { "inside" } else { "outside" }
                );
            }
        }
    }
    Ok(())
}

/// Quick three-route cross-validation; exits nonzero if any check fails.
pub fn selfcheck() -> Result<(), CliError> {
    let mut ok = true;
    let mut check = |name: &str, pass: bool, detail: String| {
        println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
        ok &= pass;
    };

    // finite-time vs position oracle
    let theta = CoinParams::new(1.1, 2.3);
    let r = InitialBloch::new(0.48, 0.6, 0.64).map_err(CliError::from)?;
    let fin = finite_time_qfim(&theta, &r, 12)?;
    let ora = oracle_qfim(&WalkSpec { theta, r, t: 12 })?;
    let diff = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .map(|(i, j)| (fin.f[i][j] - ora.f[i][j]).abs())
        .fold((fin.d12.unwrap() - ora.d12.unwrap()).abs(), f64::max);
    check(
        "finite-time vs oracle (t = 12)",
        diff < 1e-9,
        format!("max diff {diff:.2e}"),
    );

    // closed-form super-operator vs conjugation
    let mut worst = 0.0f64;
    for i in 0..8 {
        let k = -3.0 + 0.8 * i as f64;
        let a = kspace::a_k_super(&theta, k);
        let b = kspace::a_k_super_from_unitary(&theta, k)?;
        worst = worst.max(a.max_abs_diff(&b));
    }
    check(
        "A_k closed form vs conjugation",
        worst < 1e-12,
        format!("max diff {worst:.2e}"),
    );

    // asymptotic integral vs closed form
    let asym = asymptotic_qfim(&theta, &r)?;
    let closed = closed_form_qfim(&theta, r.r2)?;
    let diff = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .map(|(i, j)| (asym.f[i][j] - closed.f[i][j]).abs())
        .fold(0.0f64, f64::max);
    check(
        "asymptotic vs closed form",
        diff < 1e-9,
        format!("max diff {diff:.2e}"),
    );

    // average-Fisher quadrature vs expression
    let d = (avg_fisher_ssqw(2.5, AvgFisherMode::Numeric)
        - avg_fisher_ssqw(2.5, AvgFisherMode::Closed))
    .abs();
    check(
        "average Fisher numeric vs closed",
        d < 1e-8,
        format!("diff {d:.2e}"),
    );

    // golden-ratio crossover root
    let root = analysis::golden_ratio_root();
    let d = (root - (5.0f64.sqrt() - 1.0) / 2.0).abs();
    check("golden-ratio root", d < 1e-10, format!("diff {d:.2e}"));

    // boundary rank-one degeneration
    let b = closed_form_qfim(&CoinParams::new(1.7, 1.7), 0.0)?;
    check(
        "boundary rank-1 Fisher",
        b.det_f().abs() < 1e-12,
        format!("|det| {:.2e}", b.det_f().abs()),
    );

    if ok {
        Ok(())
    } else {
        Err(CliError::Numerical("selfcheck failed".into()))
    }
}
