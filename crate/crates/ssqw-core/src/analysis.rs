//! Precision-comparison quantities between the split-step and ordinary
//! walks: theta1-averaged Fisher information, the joint-precision products
//! `Omega = F_11 F_22`, the golden-ratio crossover angle, and grid scans of
//! the advantage surface.
//!
//! Everything here uses the closed-form Fisher matrices at the optimal
//! strategy `r2 = 0` unless a caller passes a different `r2` explicitly.

use crate::kspace::{classify_region, RegionLabel};
use crate::qfim::closed_form_qfim;
use crate::quad::integrate_adaptive;
use crate::{CoinParams, Error, Result};

/// How [`avg_fisher_ssqw`] evaluates the theta1 average.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AvgFisherMode {
    /// The closed expression `1 - (2/pi) |cos(theta2/2)|`.
    Closed,
    /// Piecewise adaptive quadrature of the closed-form `F_11` over
    /// `theta1 in [0, 2*pi]`, split at the two region crossings.
    Numeric,
}

/// Single-parameter Fisher information of the ordinary walk,
/// `s / (1 + s)` with `s = sin(theta/2)`; also the `theta2 = 0`
/// cross-section of the split-step `F_11`.
pub fn oqw_fisher(theta1: f64) -> f64 {
    let s = (theta1 / 2.0).sin();
    s / (1.0 + s)
}

/// Average over `theta1 in [0, 2*pi]` of `F_11` at `r2 = 0`.
pub fn avg_fisher_ssqw(theta2: f64, mode: AvgFisherMode) -> f64 {
    match mode {
        AvgFisherMode::Closed => 1.0 - (2.0 / std::f64::consts::PI) * (theta2 / 2.0).cos().abs(),
        AvgFisherMode::Numeric => {
            let tau = std::f64::consts::TAU;
            let f11 = |th1: f64| {
                closed_form_qfim(&CoinParams::new(th1, theta2), 0.0)
                    .map(|r| r.f[0][0])
                    .unwrap_or(0.0)
            };
            // The integrand switches branch where s1 = s2, i.e. at
            // theta1 = theta2 and theta1 = 2*pi - theta2; integrate each
            // smooth piece separately (Gauss nodes stay interior, so the
            // boundary line itself is never evaluated).
            let mut cuts = vec![0.0, theta2, tau - theta2, tau];
            cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
            cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
            let mut total = 0.0;
            for pair in cuts.windows(2) {
                if pair[1] - pair[0] > 1e-12 {
                    total += integrate_adaptive(&f11, pair[0], pair[1], 1e-11);
                }
            }
            total / tau
        }
    }
}

/// Average Fisher information of the ordinary walk, `1 - 2/pi`.
pub fn avg_fisher_qw() -> f64 {
    1.0 - 2.0 / std::f64::consts::PI
}

/// Best-case average-precision ratio of the split-step walk over the
/// ordinary walk: `max_theta2 avg_F / avg_F_QW = 1 / (1 - 2/pi) ~ 2.75`,
/// attained at `theta2 = pi`.
pub fn precision_ratio() -> f64 {
    1.0 / avg_fisher_qw()
}

/// Joint-precision product `F_11 F_22` of the split-step walk from the
/// closed forms.
pub fn omega_ssqw(theta: &CoinParams, r2: f64) -> Result<f64> {
    let res = closed_form_qfim(theta, r2)?;
    Ok(res.f[0][0] * res.f[1][1])
}

/// Worst case of `omega_ssqw` over `theta2` at fixed `theta1`, attained on
/// the phase-transition lines: `(s1 / (1 + s1))^2`.
pub fn omega_min_ssqw(theta1: f64) -> f64 {
    let f = oqw_fisher(theta1);
    f * f
}

/// Joint-precision product of the ordinary walk at its optimal strategy:
/// `s (1 - s) / (1 + s)`.
pub fn omega_oqw(theta1: f64) -> f64 {
    let s = (theta1 / 2.0).sin();
    s * (1.0 - s) / (1.0 + s)
}

/// Positive root of `s^2 + s - 1 = 0` (the inverse golden ratio), located by
/// bisection on `[0.4, 0.8]` to `1e-12`. This is `sin(eta/2)` at the
/// crossover where the worst-case split-step product meets the ordinary one.
pub fn golden_ratio_root() -> f64 {
    let g = |s: f64| s * s + s - 1.0;
    let (mut lo, mut hi) = (0.4f64, 0.8f64);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The crossover angle `eta = 2 arcsin((sqrt(5) - 1) / 2) ~ 1.3325`.
pub fn crossing_eta() -> f64 {
    2.0 * golden_ratio_root().asin()
}

/// Selector for [`scan`] cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    F11,
    F22,
    F12,
    /// `F_11 * F_22` from the closed forms.
    Omega,
    /// `Omega_SSQW(theta1, theta2) - Omega_QW(theta1)`.
    Advantage,
    /// Incompatibility of the finite-time matrices at the grid's `t`.
    Incompat,
}

impl Quantity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Quantity::F11 => "f11",
            Quantity::F22 => "f22",
            Quantity::F12 => "f12",
            Quantity::Omega => "omega",
            Quantity::Advantage => "advantage",
            Quantity::Incompat => "incompat",
        }
    }
}

/// Axis description `start..end` with `count` evenly spaced samples
/// (endpoints included).
#[derive(Clone, Copy, Debug)]
pub struct AxisRange {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl AxisRange {
    pub fn new(start: f64, end: f64, count: usize) -> Self {
        Self { start, end, count }
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.count == 1 {
            self.start
        } else {
            self.start + (self.end - self.start) * i as f64 / (self.count - 1) as f64
        }
    }
}

/// A rectangular `(theta1, theta2)` scan request.
#[derive(Clone, Copy, Debug)]
pub struct ScanGrid {
    pub theta1: AxisRange,
    pub theta2: AxisRange,
    pub quantity: Quantity,
    pub r2: f64,
    /// Step count used only by [`Quantity::Incompat`].
    pub t: usize,
}

/// One evaluated grid cell.
#[derive(Clone, Copy, Debug)]
pub struct ScanRow {
    pub theta1: f64,
    pub theta2: f64,
    pub value: f64,
    pub region: RegionLabel,
}

const MAX_CELLS: usize = 10_000_000;

/// Range/size checks shared by [`scan`] and external drivers that evaluate
/// cells themselves.
pub fn validate_grid(grid: &ScanGrid) -> Result<()> {
    let tau = std::f64::consts::TAU;
    for (name, ax) in [("theta1", grid.theta1), ("theta2", grid.theta2)] {
        if ax.count < 2 {
            return Err(Error::InvalidParameter(format!(
                "{name} axis needs at least 2 samples"
            )));
        }
        if !(ax.start.is_finite() && ax.end.is_finite())
            || ax.start > ax.end
            || ax.start < 0.0
            || ax.end > tau + 1e-12
        {
            return Err(Error::InvalidParameter(format!(
                "{name} range [{}, {}] outside [0, 2*pi]",
                ax.start, ax.end
            )));
        }
    }
    if grid.theta1.count.saturating_mul(grid.theta2.count) > MAX_CELLS {
        return Err(Error::InvalidParameter(format!(
            "grid has more than {MAX_CELLS} cells"
        )));
    }
    if grid.r2.abs() > 1.0 {
        return Err(Error::InvalidParameter(format!("|r2| = {} > 1", grid.r2)));
    }
    Ok(())
}

/// Evaluate one cell of a scan.
pub fn scan_cell(grid: &ScanGrid, theta1: f64, theta2: f64) -> Result<ScanRow> {
    let theta = CoinParams::new(theta1, theta2);
    let value = match grid.quantity {
        Quantity::F11 => closed_form_qfim(&theta, grid.r2)?.f[0][0],
        Quantity::F22 => closed_form_qfim(&theta, grid.r2)?.f[1][1],
        Quantity::F12 => closed_form_qfim(&theta, grid.r2)?.f[0][1],
        Quantity::Omega => omega_ssqw(&theta, grid.r2)?,
        Quantity::Advantage => omega_ssqw(&theta, grid.r2)? - omega_oqw(theta1),
        Quantity::Incompat => {
            let r = crate::pauli::InitialBloch::pure_with_r2(grid.r2)?;
            let res = crate::qfim::finite_time_qfim(&theta, &r, grid.t)?;
            res.incompat.unwrap_or(f64::NAN)
        }
    };
    Ok(ScanRow {
        theta1,
        theta2,
        value,
        region: classify_region(&theta),
    })
}

/// Evaluate the whole grid in theta1-major order.
pub fn scan(grid: &ScanGrid) -> Result<Vec<ScanRow>> {
    validate_grid(grid)?;
    let mut rows = Vec::with_capacity(grid.theta1.count * grid.theta2.count);
    for i in 0..grid.theta1.count {
        for j in 0..grid.theta2.count {
            rows.push(scan_cell(grid, grid.theta1.value(i), grid.theta2.value(j))?);
        }
    }
    Ok(rows)
}

/// The advantage surface `Omega_SSQW - Omega_QW` over a grid.
pub fn advantage_surface(grid: &ScanGrid) -> Result<Vec<ScanRow>> {
    let grid = ScanGrid {
        quantity: Quantity::Advantage,
        ..*grid
    };
    scan(&grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn avg_fisher_closed_special_values() {
        assert!((avg_fisher_ssqw(PI, AvgFisherMode::Closed) - 1.0).abs() < 1e-15);
        let want = 1.0 - 2.0 / PI;
        assert!((avg_fisher_ssqw(0.0, AvgFisherMode::Closed) - want).abs() < 1e-15);
        assert!((avg_fisher_qw() - want).abs() < 1e-15);
    }

    #[test]
    fn avg_fisher_numeric_matches_closed() {
        for theta2 in [0.3, 1.1, 2.5, 4.0] {
            let closed = avg_fisher_ssqw(theta2, AvgFisherMode::Closed);
            let numeric = avg_fisher_ssqw(theta2, AvgFisherMode::Numeric);
            assert!(
                (closed - numeric).abs() < 1e-6,
                "theta2 = {theta2}: {closed} vs {numeric}"
            );
        }
    }

    #[test]
    fn avg_fisher_symmetric_about_pi() {
        for theta2 in [0.4, 1.3, 2.9] {
            let a = avg_fisher_ssqw(theta2, AvgFisherMode::Closed);
            let b = avg_fisher_ssqw(TAU - theta2, AvgFisherMode::Closed);
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn precision_ratio_value() {
        let v = precision_ratio();
        assert!(v > 2.7519 && v < 2.7520);
        // maximizing theta2 is pi: ratio at pi equals the max
        let at_pi = avg_fisher_ssqw(PI, AvgFisherMode::Closed) / avg_fisher_qw();
        assert!((at_pi - v).abs() < 1e-12);
    }

    #[test]
    fn omega_min_examples() {
        assert!((omega_min_ssqw(PI) - 0.25).abs() < 1e-15);
        // on the diagonal the full product equals the minimum
        for th in [0.8, 1.7, 2.9, 4.6] {
            let full = omega_ssqw(&CoinParams::new(th, th), 0.0).unwrap();
            assert!((full - omega_min_ssqw(th)).abs() < 1e-9);
        }
    }

    #[test]
    fn omega_oqw_maximum() {
        // max of s(1-s)/(1+s) is 3 - 2 sqrt(2) at s = sqrt(2) - 1
        let s_star = 2.0f64.sqrt() - 1.0;
        let theta_star = 2.0 * s_star.asin();
        let max_val = omega_oqw(theta_star);
        assert!((max_val - (3.0 - 2.0 * 2.0f64.sqrt())).abs() < 1e-12);
        for th in [0.3, 0.7, 1.5, 2.4, 3.0] {
            assert!(omega_oqw(th) <= max_val + 1e-12);
        }
    }

    #[test]
    fn golden_ratio_crossing() {
        let s = golden_ratio_root();
        assert!((s - 0.6180339887498949).abs() < 1e-11);
        // the other formal root is -g, outside [0, 1]
        let g = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!((s - 1.0 / g).abs() < 1e-11);
        let eta = crossing_eta();
        assert!((eta - 1.3324788649).abs() < 1e-9);
        // equality of the two products at the root
        assert!((omega_min_ssqw(eta) - omega_oqw(eta)).abs() < 1e-10);
    }

    #[test]
    fn worst_case_f11_over_theta2_is_the_oqw_value() {
        // min over theta2 of F11 is attained on the transition lines (and
        // throughout R1, where F11 is theta2-independent) and equals the
        // ordinary-walk value there
        for theta1 in [0.9, 2.2, 3.9, 5.3] {
            let oqw = oqw_fisher(theta1);
            let mut min_val = f64::INFINITY;
            for j in 0..=200 {
                let theta2 = 1e-9 + (TAU - 2e-9) * j as f64 / 200.0;
                let f11 = closed_form_qfim(&CoinParams::new(theta1, theta2), 0.0)
                    .unwrap()
                    .f[0][0];
                min_val = min_val.min(f11);
            }
            assert!(min_val >= oqw - 1e-9, "min {min_val} dips below OQW {oqw}");
            let on_line = closed_form_qfim(&CoinParams::new(theta1, theta1), 0.0)
                .unwrap()
                .f[0][0];
            assert!((on_line - oqw).abs() < 1e-9);
        }
    }

    #[test]
    fn advantage_diagonal_reduces_to_min_difference() {
        let grid = ScanGrid {
            theta1: AxisRange::new(0.5, 5.5, 11),
            theta2: AxisRange::new(0.5, 5.5, 11),
            quantity: Quantity::Advantage,
            r2: 0.0,
            t: 10,
        };
        let rows = advantage_surface(&grid).unwrap();
        for row in rows {
            if (row.theta1 - row.theta2).abs() < 1e-12 {
                let want = omega_min_ssqw(row.theta1) - omega_oqw(row.theta1);
                assert!((row.value - want).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn scan_rows_are_theta1_major() {
        let grid = ScanGrid {
            theta1: AxisRange::new(0.0, 1.0, 3),
            theta2: AxisRange::new(0.0, 2.0, 2),
            quantity: Quantity::F11,
            r2: 0.0,
            t: 10,
        };
        let rows = scan(&grid).unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows[0].theta1 == 0.0 && rows[0].theta2 == 0.0);
        assert!(rows[1].theta1 == 0.0 && rows[1].theta2 == 2.0);
        assert!(rows[2].theta1 == 0.5);
        assert!(rows[5].theta1 == 1.0 && rows[5].theta2 == 2.0);
    }

    #[test]
    fn scan_f11_theta2_zero_row_is_oqw_curve() {
        let grid = ScanGrid {
            theta1: AxisRange::new(0.1, 6.1, 61),
            theta2: AxisRange::new(0.0, 1.0, 2),
            quantity: Quantity::F11,
            r2: 0.0,
            t: 10,
        };
        for row in scan(&grid).unwrap() {
            if row.theta2 == 0.0 && row.region != RegionLabel::Boundary {
                assert!((row.value - oqw_fisher(row.theta1)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn grid_validation() {
        let bad_count = ScanGrid {
            theta1: AxisRange::new(0.0, 1.0, 1),
            theta2: AxisRange::new(0.0, 1.0, 4),
            quantity: Quantity::F11,
            r2: 0.0,
            t: 10,
        };
        assert!(scan(&bad_count).is_err());
        let bad_range = ScanGrid {
            theta1: AxisRange::new(0.0, 7.0, 4),
            theta2: AxisRange::new(0.0, 1.0, 4),
            quantity: Quantity::F11,
            r2: 0.0,
            t: 10,
        };
        assert!(scan(&bad_range).is_err());
        let too_many = ScanGrid {
            theta1: AxisRange::new(0.0, 1.0, 100_000),
            theta2: AxisRange::new(0.0, 1.0, 101),
            quantity: Quantity::F11,
            r2: 0.0,
            t: 10,
        };
        assert!(scan(&too_many).is_err());
    }
}
