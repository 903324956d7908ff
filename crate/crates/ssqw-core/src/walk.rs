//! Direct position-space simulation of the split-step walk.
//!
//! This is the reference oracle for every momentum-space result: states are
//! evolved on the lattice with the literal coin/shift operators, parameter
//! derivatives are accumulated with the product rule, and the Fisher matrix
//! comes from the pure-state overlap formula. Setting `theta2 = 0` reduces
//! the composite step to an ordinary one-parameter walk.

use num_complex::Complex64;

use crate::kspace::classify_region;
use crate::pauli::{InitialBloch, Mat2, ZERO};
use crate::qfim::{Method, QfimResult};
use crate::{CoinParams, Error, Result};

/// A walker state with finite support: two complex coin amplitudes per
/// lattice site on `[min_x, min_x + len - 1]`.
#[derive(Clone, Debug)]
pub struct SpinorField {
    min_x: i64,
    amps: Vec<[Complex64; 2]>,
}

/// Full description of one oracle run.
#[derive(Clone, Copy, Debug)]
pub struct WalkSpec {
    pub theta: CoinParams,
    pub r: InitialBloch,
    pub t: usize,
}

impl SpinorField {
    /// State localized at `x` with the given coin spinor.
    pub fn localized(x: i64, spinor: [Complex64; 2]) -> Self {
        Self {
            min_x: x,
            amps: vec![spinor],
        }
    }

    pub fn support(&self) -> (i64, i64) {
        (self.min_x, self.min_x + self.amps.len() as i64 - 1)
    }

    pub fn amplitude(&self, x: i64) -> [Complex64; 2] {
        if x < self.min_x || x >= self.min_x + self.amps.len() as i64 {
            [ZERO; 2]
        } else {
            self.amps[(x - self.min_x) as usize]
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps
            .iter()
            .map(|a| a[0].norm_sqr() + a[1].norm_sqr())
            .sum()
    }

    /// Probability of finding the walker at each site, coin traced out.
    pub fn position_distribution(&self) -> Vec<(i64, f64)> {
        self.amps
            .iter()
            .enumerate()
            .map(|(i, a)| (self.min_x + i as i64, a[0].norm_sqr() + a[1].norm_sqr()))
            .collect()
    }

    /// `<self|other>` over the lattice.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let lo = self.min_x.max(other.min_x);
        let hi = (self.min_x + self.amps.len() as i64).min(other.min_x + other.amps.len() as i64);
        let mut acc = ZERO;
        for x in lo..hi {
            let a = self.amps[(x - self.min_x) as usize];
            let b = other.amps[(x - other.min_x) as usize];
            acc += a[0].conj() * b[0] + a[1].conj() * b[1];
        }
        acc
    }

    fn apply_coin(&mut self, c: &Mat2) {
        for a in self.amps.iter_mut() {
            *a = c.mul_vec(*a);
        }
    }

    /// `S1`: coin-0 amplitudes move `x -> x+1`, coin-1 stay; then `C2`;
    /// then `S2`: coin-1 move `x -> x-1`, coin-0 stay. Support grows by one
    /// site on each side.
    fn shift_split(&mut self, c2: &Mat2) {
        let n = self.amps.len();
        let mut out = vec![[ZERO; 2]; n + 2];
        // index i in `out` is position min_x - 1 + i
        for (i, a) in self.amps.iter().enumerate() {
            out[i + 2][0] = a[0]; // S1 up-shift
            out[i + 1][1] = a[1];
        }
        for a in out.iter_mut() {
            *a = c2.mul_vec(*a);
        }
        let mut fin = vec![[ZERO; 2]; n + 2];
        for i in 0..n + 2 {
            fin[i][0] = out[i][0];
            if i + 1 < n + 2 {
                fin[i][1] = out[i + 1][1]; // S2 down-shift
            }
        }
        self.min_x -= 1;
        self.amps = fin;
    }
}

/// The real orthogonal coin `C(theta)` with rows
/// `(cos(theta/2), -sin(theta/2); sin(theta/2), cos(theta/2))`.
pub fn coin(theta: f64) -> Mat2 {
    Mat2::rotation(theta / 2.0)
}

/// Analytic derivative `dC/dtheta`; the half-angle contributes the factor 1/2.
pub fn coin_derivative(theta: f64) -> Mat2 {
    let (s, c) = (theta / 2.0).sin_cos();
    Mat2::new(
        (-s / 2.0).into(),
        (-c / 2.0).into(),
        (c / 2.0).into(),
        (-s / 2.0).into(),
    )
}

/// One split step `S2 (I (x) C2) S1 (I (x) C1)` with the supplied coin
/// matrices (callers substitute a coin derivative to build `dU`).
fn step_with(state: &SpinorField, c1: &Mat2, c2: &Mat2) -> SpinorField {
    let mut s = state.clone();
    s.apply_coin(c1);
    s.shift_split(c2);
    s
}

/// One split step of the walk; norm-preserving.
pub fn ssqw_step(state: &SpinorField, theta1: f64, theta2: f64) -> SpinorField {
    step_with(state, &coin(theta1), &coin(theta2))
}

fn initial_state(spec: &WalkSpec) -> Result<SpinorField> {
    if !spec.r.is_pure(1e-9) {
        return Err(Error::InvalidParameter(format!(
            "oracle requires a pure coin state, |r| = {}",
            spec.r.norm()
        )));
    }
    Ok(SpinorField::localized(0, spec.r.coin_state()))
}

/// `t`-fold evolution from the origin-localized coin state.
pub fn evolve(spec: &WalkSpec) -> Result<SpinorField> {
    let mut state = initial_state(spec)?;
    for _ in 0..spec.t {
        state = ssqw_step(&state, spec.theta.theta1, spec.theta.theta2);
    }
    Ok(state)
}

/// The unnormalized derivative state `|d_mu Psi(t)>`, accumulated with the
/// product rule `d(U^t) = sum_m U^{t-1-m} (dU) U^m` in a single pass:
/// `d_{m+1} = U d_m + (dU) psi_m`.
pub fn derivative_state(spec: &WalkSpec, mu: crate::ParamIndex) -> Result<SpinorField> {
    Ok(evolve_with_derivatives(spec)?.derivative(mu))
}

pub(crate) struct EvolvedPair {
    pub state: SpinorField,
    pub d1: SpinorField,
    pub d2: SpinorField,
}

impl EvolvedPair {
    fn derivative(self, mu: crate::ParamIndex) -> SpinorField {
        match mu {
            crate::ParamIndex::Theta1 => self.d1,
            crate::ParamIndex::Theta2 => self.d2,
        }
    }
}

pub(crate) fn evolve_with_derivatives(spec: &WalkSpec) -> Result<EvolvedPair> {
    let c1 = coin(spec.theta.theta1);
    let c2 = coin(spec.theta.theta2);
    let dc1 = coin_derivative(spec.theta.theta1);
    let dc2 = coin_derivative(spec.theta.theta2);

    let mut state = initial_state(spec)?;
    let zero_like = |s: &SpinorField| SpinorField {
        min_x: s.min_x,
        amps: vec![[ZERO; 2]; s.amps.len()],
    };
    let mut d1 = zero_like(&state);
    let mut d2 = zero_like(&state);

    for _ in 0..spec.t {
        let du1 = step_with(&state, &dc1, &c2);
        let du2 = step_with(&state, &c1, &dc2);
        d1 = add(&step_with(&d1, &c1, &c2), &du1);
        d2 = add(&step_with(&d2, &c1, &c2), &du2);
        state = step_with(&state, &c1, &c2);
    }
    Ok(EvolvedPair { state, d1, d2 })
}

fn add(a: &SpinorField, b: &SpinorField) -> SpinorField {
    let lo = a.min_x.min(b.min_x);
    let hi = (a.min_x + a.amps.len() as i64).max(b.min_x + b.amps.len() as i64);
    let mut amps = vec![[ZERO; 2]; (hi - lo) as usize];
    for (i, v) in amps.iter_mut().enumerate() {
        let x = lo + i as i64;
        let av = a.amplitude(x);
        let bv = b.amplitude(x);
        *v = [av[0] + bv[0], av[1] + bv[1]];
    }
    SpinorField { min_x: lo, amps }
}

/// Pure-state Fisher matrix and mean Uhlmann curvature from lattice overlaps:
/// `K_mn = <d_m Psi | d_n Psi> - <d_m Psi | Psi><Psi | d_n Psi>`,
/// `F = 4 Re K`, `D = 4 Im K`.
pub fn oracle_qfim(spec: &WalkSpec) -> Result<QfimResult> {
    let pair = evolve_with_derivatives(spec)?;
    let derivs = [&pair.d1, &pair.d2];
    let mut f = [[0.0; 2]; 2];
    let mut d12 = 0.0;
    for m in 0..2 {
        for n in 0..2 {
            let direct = derivs[m].inner(derivs[n]);
            let cross = derivs[m].inner(&pair.state) * pair.state.inner(derivs[n]);
            let k = direct - cross;
            f[m][n] = 4.0 * k.re;
            if m == 0 && n == 1 {
                d12 = 4.0 * k.im;
            }
        }
    }
    Ok(QfimResult::new(
        f,
        Some(d12),
        classify_region(&spec.theta),
        Method::Oracle,
        Some(spec.t),
    ))
}
