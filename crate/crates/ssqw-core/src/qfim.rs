//! Fisher information and mean Uhlmann curvature engines.
//!
//! Three routes with one contract:
//!
//! * [`finite_time_qfim`] — exact at every `t`: per quasi-momentum, the step
//!   sums `A'(O_mu) = sum_m u^{m+1} O_mu u^{-(m+1)}` are accumulated and the
//!   variance-style kernel is integrated with the periodic trapezoid rule
//!   (`4t + 8` nodes, exact for the degree `<= 4t` trig-polynomial
//!   integrands).
//! * [`asymptotic_qfim`] — the leading `t^2` coefficient: integrals of the
//!   unit-eigenvalue projector sandwiched between derivative vectors.
//! * [`closed_form_qfim`] — the per-region closed forms of those integrals.
//!
//! Equality of the first route with [`crate::walk::oracle_qfim`] fixes every
//! sign and normalization convention.

use num_complex::Complex64;

use crate::kspace::{classify_region, o_mu, projector_a1, u_k, RegionLabel};
use crate::pauli::{bloch_compose, FourVector, InitialBloch, Mat2};
use crate::quad::{gauss_legendre, periodic_nodes};
use crate::{CoinParams, Error, ParamIndex, Result};

/// Which route produced a [`QfimResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    FiniteTime,
    Asymptotic,
    Closed,
    Oracle,
    /// Asymptotic request answered by the closed-form limit because the
    /// point sits within `1e-3` of a region boundary, where the projector
    /// integrand degenerates at isolated `k`.
    AsymptoticNearBoundary,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::FiniteTime => "finite",
            Method::Asymptotic => "asymptotic",
            Method::Closed => "closed",
            Method::Oracle => "oracle",
            Method::AsymptoticNearBoundary => "asymptotic-near-boundary",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A computed Fisher/curvature pair.
///
/// `f` is raw (per-step squared) for the finite-time and oracle routes and
/// the `t^2` coefficient (dimensionless) for the asymptotic and closed
/// routes; `t` records which. `d12` is the single independent entry of the
/// antisymmetric curvature matrix, absent for routes that do not compute it.
#[derive(Clone, Copy, Debug)]
pub struct QfimResult {
    pub f: [[f64; 2]; 2],
    pub d12: Option<f64>,
    pub incompat: Option<f64>,
    pub region: RegionLabel,
    pub method: Method,
    pub t: Option<usize>,
}

impl QfimResult {
    pub fn new(
        f: [[f64; 2]; 2],
        d12: Option<f64>,
        region: RegionLabel,
        method: Method,
        t: Option<usize>,
    ) -> Self {
        let incompat = d12.and_then(|d| incompatibility(&f, d).ok());
        Self {
            f,
            d12,
            incompat,
            region,
            method,
            t,
        }
    }

    pub fn det_f(&self) -> f64 {
        self.f[0][0] * self.f[1][1] - self.f[0][1] * self.f[1][0]
    }

    /// The full antisymmetric curvature matrix, when computed.
    pub fn d_matrix(&self) -> Option<[[f64; 2]; 2]> {
        self.d12.map(|d| [[0.0, d], [-d, 0.0]])
    }

    /// `F` divided by `t^2`, for comparing a finite-time result against the
    /// asymptotic coefficient. Identity for the already-normalized routes.
    pub fn f_normalized(&self) -> [[f64; 2]; 2] {
        match self.t {
            Some(t) if t > 0 => {
                let s = 1.0 / (t as f64 * t as f64);
                [
                    [self.f[0][0] * s, self.f[0][1] * s],
                    [self.f[1][0] * s, self.f[1][1] * s],
                ]
            }
            _ => self.f,
        }
    }
}

fn require_pure(r: &InitialBloch) -> Result<()> {
    if !r.is_pure(1e-9) {
        return Err(Error::InvalidParameter(format!(
            "route requires a pure coin state, |r| = {}",
            r.norm()
        )));
    }
    Ok(())
}

/// Finite-time Fisher matrix and curvature by momentum-space summation with
/// the default exact node count `4t + 8`.
pub fn finite_time_qfim(theta: &CoinParams, r: &InitialBloch, t: usize) -> Result<QfimResult> {
    finite_time_qfim_with_nodes(theta, r, t, 4 * t + 8)
}

/// Same computation with an explicit node count; any `nodes > 4t` gives
/// identical results because the integrands are trig polynomials of degree
/// at most `4t`.
pub fn finite_time_qfim_with_nodes(
    theta: &CoinParams,
    r: &InitialBloch,
    t: usize,
    nodes: usize,
) -> Result<QfimResult> {
    require_pure(r)?;
    let chi = r.coin_state();

    // k-integrals of <A'_m^dag A'_n> and <A'_m> in the time-t state u^t chi.
    let mut pair = [[Complex64::default(); 2]; 2];
    let mut single = [Complex64::default(); 2];

    for k in periodic_nodes(nodes) {
        let u = u_k(theta, k);
        let ud = u.adjoint();
        let mut v = [
            bloch_compose(&o_mu(theta, k, ParamIndex::Theta1)),
            bloch_compose(&o_mu(theta, k, ParamIndex::Theta2)),
        ];
        let mut acc = [Mat2::zero(), Mat2::zero()];
        let mut phi = chi;
        for _ in 0..t {
            v[0] = u * v[0] * ud;
            v[1] = u * v[1] * ud;
            acc[0] = acc[0] + v[0];
            acc[1] = acc[1] + v[1];
            phi = u.mul_vec(phi);
        }
        let bra = [phi[0].conj(), phi[1].conj()];
        for m in 0..2 {
            for n in 0..2 {
                let w = (acc[m].adjoint() * acc[n]).mul_vec(phi);
                pair[m][n] += bra[0] * w[0] + bra[1] * w[1];
            }
            let w = acc[m].mul_vec(phi);
            single[m] += bra[0] * w[0] + bra[1] * w[1];
        }
    }

    let inv = Complex64::new(1.0 / nodes as f64, 0.0);
    let mut f = [[0.0; 2]; 2];
    let mut d12 = 0.0;
    for m in 0..2 {
        for n in 0..2 {
            let k_mn = pair[m][n] * inv - (single[m] * inv).conj() * (single[n] * inv);
            f[m][n] = 4.0 * k_mn.re;
            if m == 0 && n == 1 {
                d12 = 4.0 * k_mn.im;
            }
        }
    }
    Ok(QfimResult::new(
        f,
        Some(d12),
        classify_region(theta),
        Method::FiniteTime,
        Some(t),
    ))
}

/// Entry `(a|P|b)` of the projector sandwiched between two four-vectors.
fn sandwich(a: &FourVector, p: &crate::pauli::SuperOp, b: &FourVector) -> Complex64 {
    a.dot(&p.apply(b))
}

/// Distance below which an asymptotic request defers to the closed form.
const NEAR_BOUNDARY_DIST: f64 = 1e-3;

/// Leading `t^2` Fisher coefficient by Gauss-Legendre integration of the
/// unit-eigenvalue projector, nodes doubled until entries move by less than
/// `1e-10`.
///
/// Boundary points error with [`Error::BoundaryRegion`]; points within
/// `1e-3` of a boundary line return the closed-form limit, tagged
/// [`Method::AsymptoticNearBoundary`].
pub fn asymptotic_qfim(theta: &CoinParams, r: &InitialBloch) -> Result<QfimResult> {
    let region = classify_region(theta);
    if region == RegionLabel::Boundary {
        return Err(Error::BoundaryRegion {
            theta1: theta.theta1,
            theta2: theta.theta2,
        });
    }
    let tau = std::f64::consts::TAU;
    let boundary_dist = (theta.theta1 - theta.theta2)
        .abs()
        .min((theta.theta1 + theta.theta2 - tau).abs());
    if boundary_dist < NEAR_BOUNDARY_DIST {
        let mut res = closed_form_qfim(theta, r.r2)?;
        res.method = Method::AsymptoticNearBoundary;
        return Ok(res);
    }

    let rho = r.as_four_vector();
    let mut prev: Option<[[f64; 2]; 2]> = None;
    let mut n = 64;
    loop {
        // int dk/2pi (O_m|P|O_n)  and the rank-one correction brackets;
        // two panels [-pi, 0], [0, pi] so that the integrand's near-boundary
        // peaks (at k = 0 or k = +-pi) sit at panel ends where Gauss nodes
        // cluster
        let mut direct = [[Complex64::default(); 2]; 2];
        let mut left = [Complex64::default(); 2];
        let mut right = [Complex64::default(); 2];
        let rule = gauss_legendre(n);
        for (lo, hi) in [(-std::f64::consts::PI, 0.0), (0.0, std::f64::consts::PI)] {
            let half = 0.5 * (hi - lo);
            let mid = 0.5 * (hi + lo);
            for &(x, w) in &rule {
                let k = mid + half * x;
                let wt = Complex64::new(w * half / std::f64::consts::TAU, 0.0);
                let p = projector_a1(theta, k)?;
                let o = [
                    o_mu(theta, k, ParamIndex::Theta1),
                    o_mu(theta, k, ParamIndex::Theta2),
                ];
                for m in 0..2 {
                    for l in 0..2 {
                        direct[m][l] += wt * sandwich(&o[m], &p, &o[l]);
                    }
                    left[m] += wt * sandwich(&o[m], &p, &rho);
                    right[m] += wt * sandwich(&rho, &p, &o[m]);
                }
            }
        }
        let mut f = [[0.0; 2]; 2];
        for m in 0..2 {
            for l in 0..2 {
                f[m][l] = (direct[m][l] - left[m] * right[l]).re;
            }
        }
        if let Some(pf) = prev {
            let moved = (0..2)
                .flat_map(|i| (0..2).map(move |j| (i, j)))
                .map(|(i, j)| (f[i][j] - pf[i][j]).abs())
                .fold(0.0f64, f64::max);
            if moved < 1e-10 || n >= 4096 {
                return Ok(QfimResult::new(f, None, region, Method::Asymptotic, None));
            }
        }
        prev = Some(f);
        n *= 2;
    }
}

/// The per-region closed forms of the asymptotic Fisher coefficient.
///
/// Region `R0` (`s1 < s2`) and `R1` (`s1 > s2`) each give
/// `F = M - r2^2 * v v^T` with `v = (M_11, M_12)`; on the boundary both
/// branches reduce to the rank-one matrix with all entries `s / (1 + s)`.
pub fn closed_form_qfim(theta: &CoinParams, r2: f64) -> Result<QfimResult> {
    if r2.abs() > 1.0 + 1e-12 {
        return Err(Error::InvalidParameter(format!("|r2| = {} > 1", r2.abs())));
    }
    let h = theta.half_angles();
    let region = classify_region(theta);
    let (a, b, d) = match region {
        RegionLabel::Boundary => {
            let s = 0.5 * (h.s1 + h.s2);
            let v = s / (1.0 + s);
            (v, v, v)
        }
        RegionLabel::R0 => {
            if h.c1.abs() < 1e-12 {
                return Err(Error::ClosedFormSingular {
                    theta1: theta.theta1,
                    theta2: theta.theta2,
                });
            }
            (
                (h.s2 - h.s1 * h.s1) / (h.c1 * h.c1),
                h.s1 * h.c2 / (h.c1 * (h.s2 + 1.0)),
                h.s2 / (h.s2 + 1.0),
            )
        }
        RegionLabel::R1 => {
            if h.c2.abs() < 1e-12 {
                return Err(Error::ClosedFormSingular {
                    theta1: theta.theta1,
                    theta2: theta.theta2,
                });
            }
            (
                h.s1 / (h.s1 + 1.0),
                h.s2 * h.c1 / (h.c2 * (h.s1 + 1.0)),
                (h.s1 - h.s2 * h.s2) / (h.c2 * h.c2),
            )
        }
    };
    let r22 = r2 * r2;
    let f = [
        [a - r22 * a * a, b - r22 * a * b],
        [b - r22 * a * b, d - r22 * b * b],
    ];
    Ok(QfimResult::new(f, None, region, Method::Closed, None))
}

/// Largest eigenvalue magnitude of `i F^{-1} D`; for the 2x2 antisymmetric
/// `D` this is `|D_12| / sqrt(det F)`, clipped into `[0, 1]`.
pub fn incompatibility(f: &[[f64; 2]; 2], d12: f64) -> Result<f64> {
    let det = f[0][0] * f[1][1] - f[0][1] * f[1][0];
    if det <= 1e-14 {
        return Err(Error::SingularFisher { det });
    }
    Ok((d12.abs() / det.sqrt()).min(1.0))
}

/// Scalar cost bounds for a PSD cost matrix `G`: the symmetric bound
/// `C^S = Tr(G F^{-1})` and the upper end `(1 + R) C^S` of the bracket
/// containing the Holevo bound.
pub fn bounds(f: &[[f64; 2]; 2], d12: f64, g: &[[f64; 2]; 2]) -> Result<(f64, f64)> {
    let det = f[0][0] * f[1][1] - f[0][1] * f[1][0];
    if det <= 1e-14 {
        return Err(Error::SingularFisher { det });
    }
    let inv = [
        [f[1][1] / det, -f[0][1] / det],
        [-f[1][0] / det, f[0][0] / det],
    ];
    let cs = g[0][0] * inv[0][0] + g[0][1] * inv[1][0] + g[1][0] * inv[0][1] + g[1][1] * inv[1][1];
    let r = incompatibility(f, d12)?;
    Ok((cs, (1.0 + r) * cs))
}
