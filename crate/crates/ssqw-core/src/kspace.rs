//! Momentum-space building blocks of the split-step walk.
//!
//! After a Fourier transform the walk block-diagonalizes into 2x2 unitaries
//! `u_k` per quasi-momentum `k`. This module provides `u_k`, the derivative
//! operators `O_mu = u_k^dag d_mu u_k`, the conjugation super-operator
//! `A_k` in closed form, its unit-eigenvalue spectral projector, the poles of
//! the associated contour integrals, and the topological region labels.

use num_complex::Complex64;

use crate::pauli::{conjugation_superop, FourVector, Mat2, SuperOp, ONE, ZERO};
use crate::{CoinParams, Error, ParamIndex, Result};

/// Half-width of the band around `s1 = s2` (and `theta1 + theta2 = 2*pi`)
/// classified as the topological phase boundary. The closed-form Fisher
/// matrices are continuous across the boundary, so misclassification inside
/// the band changes results by less than the band width.
pub const BOUNDARY_EPS: f64 = 1e-6;

/// Topological region of the `(theta1, theta2)` plane.
///
/// `R0` is the winding-number-1 phase with `s1 < s2`; `R1` is the
/// winding-number-0 phase with `s1 > s2`. The borders `theta1 = theta2` and
/// `theta1 + theta2 = 2*pi` (both `s1 = s2`) are phase transitions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionLabel {
    R0,
    R1,
    Boundary,
}

impl RegionLabel {
    /// Winding number of the phase; `None` on the boundary.
    pub fn winding(&self) -> Option<u8> {
        match self {
            RegionLabel::R0 => Some(1),
            RegionLabel::R1 => Some(0),
            RegionLabel::Boundary => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            RegionLabel::R0 => "R0",
            RegionLabel::R1 => "R1",
            RegionLabel::Boundary => "boundary",
        }
    }
}

impl std::fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The four simple poles `z1..z4` of the projector integrals in the
/// `z = e^{ik}` plane. Reciprocal in pairs: `z1 z2 = z3 z4 = 1`.
#[derive(Clone, Copy, Debug)]
pub struct PoleSet {
    pub z: [Complex64; 4],
}

impl PoleSet {
    pub fn inside_unit_circle(&self) -> [bool; 4] {
        [
            self.z[0].norm() < 1.0,
            self.z[1].norm() < 1.0,
            self.z[2].norm() < 1.0,
            self.z[3].norm() < 1.0,
        ]
    }

    pub fn count_inside(&self) -> usize {
        self.inside_unit_circle().iter().filter(|b| **b).count()
    }
}

/// The 2x2 block of the walk unitary at quasi-momentum `k`.
pub fn u_k(theta: &CoinParams, k: f64) -> Mat2 {
    let h = theta.half_angles();
    let e = Complex64::from_polar(1.0, k);
    let em = Complex64::from_polar(1.0, -k);
    Mat2::new(
        h.c1 * h.c2 * em - h.s1 * h.s2,
        -h.s1 * h.c2 * em - h.c1 * h.s2,
        h.c1 * h.s2 + e * h.s1 * h.c2,
        -(h.s1 * h.s2) + e * h.c1 * h.c2,
    )
}

/// Vectorized derivative operator `|O_mu) = |u_k^dag d_mu u_k)`.
///
/// Both are anti-Hermitian, `-i` times a real vector:
/// `|O_1) = -i (0, 0, 1, 0)` independent of all arguments, and
/// `|O_2) = -i (0, cos(theta1) sin k, cos k, sin(theta1) sin k)`.
pub fn o_mu(theta: &CoinParams, k: f64, mu: ParamIndex) -> FourVector {
    let mi = -crate::pauli::I;
    match mu {
        ParamIndex::Theta1 => FourVector([ZERO, ZERO, mi, ZERO]),
        ParamIndex::Theta2 => {
            let h = theta.half_angles();
            let big_c1 = 2.0 * h.c1 * h.c1 - 1.0;
            let big_s1 = 2.0 * h.c1 * h.s1;
            FourVector([
                ZERO,
                mi * (big_c1 * k.sin()),
                mi * k.cos(),
                mi * (big_s1 * k.sin()),
            ])
        }
    }
}

/// Conjugation super-operator of `u_k` in closed form, written in the
/// full-angle variables `C_i = cos(theta_i)`, `S_i = sin(theta_i)`.
///
/// Agrees entrywise with [`conjugation_superop`]`(u_k)`; eigenvalues are
/// `{1, 1, e^{2i omega}, e^{-2i omega}}`.
pub fn a_k_super(theta: &CoinParams, k: f64) -> SuperOp {
    let (s1, c1) = theta.theta1.sin_cos();
    let (s2, c2) = theta.theta2.sin_cos();
    let (sk, ck) = k.sin_cos();
    let ck2 = ck * ck;
    let sk2 = sk * sk;
    let r = |x: f64| Complex64::new(x, 0.0);
    SuperOp([
        [ONE, ZERO, ZERO, ZERO],
        [
            ZERO,
            r(c1 * c2 * ck2 - c1 * sk2 - s1 * s2 * ck),
            r(-(1.0 + c2) * sk * ck),
            r(s1 * c2 * ck2 - s1 * sk2 + c1 * s2 * ck),
        ],
        [
            ZERO,
            r(sk * ((c1 + c1 * c2) * ck - s1 * s2)),
            r(ck2 - c2 * sk2),
            r(sk * ((s1 + s1 * c2) * ck + c1 * s2)),
        ],
        [
            ZERO,
            r(-s1 * c2 - c1 * s2 * ck),
            r(s2 * sk),
            r(c1 * c2 - s1 * s2 * ck),
        ],
    ])
}

/// Same super-operator built numerically from `u_k`; retained as the slow
/// reference route for tests.
pub fn a_k_super_from_unitary(theta: &CoinParams, k: f64) -> Result<SuperOp> {
    conjugation_superop(&u_k(theta, k))
}

/// The spatial part shared by both unit eigenvectors,
/// `v = (-c2 s1 sin k, c1 s2 + s1 c2 cos k, c1 c2 sin k)`,
/// whose squared length equals `N = sin^2(omega)`.
fn unit_eigvec_spatial(theta: &CoinParams, k: f64) -> [f64; 3] {
    let h = theta.half_angles();
    [
        -h.c2 * h.s1 * k.sin(),
        h.c1 * h.s2 + h.s1 * h.c2 * k.cos(),
        h.c2 * h.c1 * k.sin(),
    ]
}

/// The two normalized unit-eigenvalue eigenvectors of `A_k`.
///
/// Component template `(cos omega + (-1)^i, v) / N_i` with
/// `N_i^2 = 2 (1 -+ cos omega)`. Fails with [`Error::Degenerate`] when a
/// normalization factor drops below `1e-8` (band-edge `omega = 0` or `pi`).
pub fn lambda_vectors(theta: &CoinParams, k: f64) -> Result<[FourVector; 2]> {
    let w = theta.cos_quasi_energy(k);
    let v = unit_eigvec_spatial(theta, k);
    let mut out = [FourVector::zero(); 2];
    for (i, sign) in [(-1.0f64), 1.0].iter().enumerate() {
        let head = w + sign;
        let norm = (head * head + v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm < 1e-8 {
            return Err(Error::Degenerate { index: i + 1, norm });
        }
        out[i] = FourVector::from_reals([head / norm, v[0] / norm, v[1] / norm, v[2] / norm]);
    }
    Ok(out)
}

/// Rank-2 spectral projector onto the unit-eigenvalue subspace of `A_k`.
///
/// Closed form `diag(1, v v^T / N)` with `N = sin^2(omega)`; idempotent and
/// commuting with `A_k`. Fails with [`Error::NearSingular`] when
/// `sin^2(omega) <= 1e-10`.
pub fn projector_a1(theta: &CoinParams, k: f64) -> Result<SuperOp> {
    let w = theta.cos_quasi_energy(k);
    let n = 1.0 - w * w;
    if n <= 1e-10 {
        return Err(Error::NearSingular { value: n });
    }
    let v = unit_eigvec_spatial(theta, k);
    let mut m = [[ZERO; 4]; 4];
    m[0][0] = ONE;
    for i in 0..3 {
        for j in 0..3 {
            m[i + 1][j + 1] = Complex64::new(v[i] * v[j] / n, 0.0);
        }
    }
    Ok(SuperOp(m))
}

/// The four poles of the projector integrals in the `z = e^{ik}` plane.
///
/// Fails with [`Error::CoinSingular`] when `cos(theta1/2) cos(theta2/2)`
/// vanishes (either coin angle at `pi`).
pub fn poles(theta: &CoinParams) -> Result<PoleSet> {
    let h = theta.half_angles();
    let denom = h.c1 * h.c2;
    if denom.abs() < 1e-12 {
        return Err(Error::CoinSingular { value: denom });
    }
    let p = h.s1 * h.s2;
    let plus = (h.s1 + h.s2).abs();
    let minus = (h.s1 - h.s2).abs();
    let r = |x: f64| Complex64::new(x, 0.0);
    // z2 and z3 are written in their cancellation-free reciprocal forms,
    // algebraically equal to (1 + p - plus)/denom and (-1 + p + minus)/denom
    // via (1 + p)^2 - plus^2 = (1 - p)^2 - minus^2 = denom^2.
    Ok(PoleSet {
        z: [
            r((1.0 + p + plus) / denom),
            r(denom / (1.0 + p + plus)),
            r(denom / (-1.0 + p - minus)),
            r((-1.0 + p - minus) / denom),
        ],
    })
}

/// Region label from the sign of `s1 - s2`, with a [`BOUNDARY_EPS`]-wide
/// boundary band that also covers `theta1 + theta2 = 2*pi` explicitly.
pub fn classify_region(theta: &CoinParams) -> RegionLabel {
    let h = theta.half_angles();
    let gap = h.s1 - h.s2;
    if gap.abs() < BOUNDARY_EPS
        || (theta.theta1 + theta.theta2 - std::f64::consts::TAU).abs() < BOUNDARY_EPS
    {
        RegionLabel::Boundary
    } else if gap > 0.0 {
        RegionLabel::R1
    } else {
        RegionLabel::R0
    }
}
