//! Quadrature rules used by the engines.
//!
//! Finite-time integrands are trigonometric polynomials of degree at most
//! `4t`, so the uniform (periodic trapezoid) rule with more than `4t` nodes
//! is exact; the asymptotic projector integrands are smooth but not
//! polynomial and use Gauss-Legendre with node doubling.

/// Uniform nodes over `[-pi, pi)` for the periodic trapezoid rule; with `n`
/// nodes the rule `(1/n) sum f(k_j)` integrates `e^{i m k} dk / 2pi` exactly
/// for all `|m| < n`.
pub fn periodic_nodes(n: usize) -> impl Iterator<Item = f64> {
    let step = std::f64::consts::TAU / n as f64;
    (0..n).map(move |j| -std::f64::consts::PI + (j as f64 + 0.5) * step)
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on the
/// Legendre recurrence from the Chebyshev initial guess.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 2);
    let mut out = Vec::with_capacity(n);
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and derivative by upward recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((-x, w));
        if 2 * (i + 1) <= n && n - i - 1 != i {
            out.push((x, w));
        }
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

/// Integrate `f` over `[a, b]` with an `n`-point Gauss-Legendre rule.
pub fn integrate_gl<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    gauss_legendre(n)
        .into_iter()
        .map(|(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// Gauss-Legendre with node doubling until two refinements agree to `tol`
/// (absolute). Starts at 16 nodes, caps at 4096.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let mut n = 16;
    let mut prev = integrate_gl(f, a, b, n);
    loop {
        n *= 2;
        let next = integrate_gl(f, a, b, n);
        if (next - prev).abs() < tol || n >= 4096 {
            return next;
        }
        prev = next;
    }
}
