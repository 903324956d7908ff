//! Quantum Fisher information matrices and mean Uhlmann curvature for
//! one-dimensional split-step quantum walks (SSQW).
//!
//! A split-step walk alternates two coin rotations `C(theta1)`, `C(theta2)`
//! with two partial shifts; the coin angles are the parameters to estimate.
//! The crate computes the 2x2 quantum Fisher information matrix `F` and the
//! mean Uhlmann curvature `D` of the walker state after `t` steps by three
//! mutually checking routes:
//!
//! * [`walk::oracle_qfim`] — direct position-space simulation with analytic
//!   parameter derivatives (the reference oracle),
//! * [`qfim::finite_time_qfim`] — momentum-space sums over walk steps,
//!   integrated with an exact trapezoid rule,
//! * [`qfim::asymptotic_qfim`] / [`qfim::closed_form_qfim`] — the leading
//!   `t^2` coefficient via the unit-eigenvalue projector of the coin-space
//!   super-operator, and its per-region closed forms.
//!
//! The [`analysis`] module builds the derived comparison quantities:
//! theta1-averaged Fisher information, the precision products `Omega`, and
//! the SSQW-vs-ordinary-walk advantage surface.

pub mod analysis;
mod error;
pub mod kspace;
pub mod pauli;
pub mod qfim;
pub mod quad;
pub mod walk;

pub use error::{Error, Result};

/// The pair of coin angles `(theta1, theta2)` under estimation, in radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinParams {
    pub theta1: f64,
    pub theta2: f64,
}

/// Half-angle trigonometry `(c1, s1, c2, s2)` with `c_i = cos(theta_i/2)`,
/// `s_i = sin(theta_i/2)` — the variables the closed forms are written in.
#[derive(Clone, Copy, Debug)]
pub struct HalfAngles {
    pub c1: f64,
    pub s1: f64,
    pub c2: f64,
    pub s2: f64,
}

impl CoinParams {
    pub fn new(theta1: f64, theta2: f64) -> Self {
        Self { theta1, theta2 }
    }

    pub fn half_angles(&self) -> HalfAngles {
        HalfAngles {
            c1: (self.theta1 / 2.0).cos(),
            s1: (self.theta1 / 2.0).sin(),
            c2: (self.theta2 / 2.0).cos(),
            s2: (self.theta2 / 2.0).sin(),
        }
    }

    /// `cos(omega) = c1 c2 cos(k) - s1 s2`, the quasi-energy dispersion.
    pub fn cos_quasi_energy(&self, k: f64) -> f64 {
        let h = self.half_angles();
        h.c1 * h.c2 * k.cos() - h.s1 * h.s2
    }

    /// Quasi-energy `omega(k)`, with the cosine clamped to `[-1, 1]` so that
    /// rounding overshoot at the band edges cannot produce NaN.
    pub fn quasi_energy(&self, k: f64) -> f64 {
        self.cos_quasi_energy(k).clamp(-1.0, 1.0).acos()
    }

    /// Checks both angles lie in `[0, 2*pi)` and are finite.
    pub fn validate(&self) -> Result<()> {
        let tau = std::f64::consts::TAU;
        for (name, v) in [("theta1", self.theta1), ("theta2", self.theta2)] {
            if !v.is_finite() || !(0.0..tau).contains(&v) {
                return Err(Error::InvalidParameter(format!(
                    "{name} = {v} outside [0, 2*pi)"
                )));
            }
        }
        Ok(())
    }
}

/// Which coin angle a derivative refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamIndex {
    Theta1,
    Theta2,
}
