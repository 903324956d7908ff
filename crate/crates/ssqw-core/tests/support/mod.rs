//! Shared helpers for the integration suites: a general 4x4 eigenvalue
//! oracle (characteristic polynomial + Durand-Kerner), independent of the
//! analytic eigen-decomposition it checks, and random-state utilities.

use num_complex::Complex64;
use rand::Rng;
use ssqw_core::pauli::{InitialBloch, SuperOp};

/// Coefficients `b` of `det(lambda I - A) = lambda^4 + b0 lambda^3 + b1
/// lambda^2 + b2 lambda + b3`, from traces of powers via Newton's identities.
pub fn char_poly(a: &SuperOp) -> [Complex64; 4] {
    let a2 = *a * *a;
    let a3 = a2 * *a;
    let a4 = a3 * *a;
    let p = [a.trace(), a2.trace(), a3.trace(), a4.trace()];
    let b0 = -p[0];
    let b1 = -(p[1] + b0 * p[0]) / 2.0;
    let b2 = -(p[2] + b0 * p[1] + b1 * p[0]) / 3.0;
    let b3 = -(p[3] + b0 * p[2] + b1 * p[1] + b2 * p[0]) / 4.0;
    [b0, b1, b2, b3]
}

fn eval_monic(b: &[Complex64; 4], z: Complex64) -> Complex64 {
    (((z + b[0]) * z + b[1]) * z + b[2]) * z + b[3]
}

/// All four eigenvalues by Durand-Kerner iteration on the characteristic
/// polynomial. Double roots are resolved to about sqrt(machine epsilon).
pub fn eigenvalues(a: &SuperOp) -> [Complex64; 4] {
    let b = char_poly(a);
    let seed = Complex64::new(0.4, 0.9);
    let mut r = [
        seed,
        seed * seed,
        seed * seed * seed,
        seed * seed * seed * seed,
    ];
    for _ in 0..500 {
        let mut moved: f64 = 0.0;
        for i in 0..4 {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..4 {
                if j != i {
                    denom *= r[i] - r[j];
                }
            }
            let delta = eval_monic(&b, r[i]) / denom;
            r[i] -= delta;
            moved = moved.max(delta.norm());
        }
        if moved < 1e-14 {
            break;
        }
    }
    r
}

/// Greedy multiset match: worst distance after pairing each expected value
/// with its nearest unused computed root.
pub fn multiset_distance(expected: &[Complex64; 4], got: &[Complex64; 4]) -> f64 {
    let mut used = [false; 4];
    let mut worst: f64 = 0.0;
    for e in expected {
        let mut best = f64::INFINITY;
        let mut best_i = 0;
        for (i, g) in got.iter().enumerate() {
            if !used[i] && (e - g).norm() < best {
                best = (e - g).norm();
                best_i = i;
            }
        }
        used[best_i] = true;
        worst = worst.max(best);
    }
    worst
}

/// Uniform random pure coin state.
pub fn random_pure<R: Rng>(rng: &mut R) -> InitialBloch {
    let z = rng.random_range(-1.0..1.0f64);
    let phi = rng.random_range(0.0..std::f64::consts::TAU);
    let s = (1.0 - z * z).sqrt();
    InitialBloch::new(s * phi.cos(), s * phi.sin(), z).unwrap()
}

/// Least-squares slope of `ln(y)` against `ln(x)`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

pub fn max_entry_diff(a: &[[f64; 2]; 2], b: &[[f64; 2]; 2]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((a[i][j] - b[i][j]).abs());
        }
    }
    worst
}
