//! Complex 2x2 operator algebra and its Pauli-basis vectorization.
//!
//! Every operator `O` on the coin space is expanded as
//! `O = (1/2) * sum_i o_i sigma_i` with `o_i = Tr(O sigma_i)`, `sigma_0 = I`.
//! Conjugation by a unitary, `O -> U O U^dag`, then becomes a 4x4 matrix
//! ([`SuperOp`]) acting on the coefficient vector ([`FourVector`]): its first
//! row and column are `(1, 0, 0, 0)` and the lower-right 3x3 block is the
//! Bloch-sphere rotation of `U`.

use num_complex::Complex64;

use crate::{Error, Result};

/// Unitarity defect accepted when building conjugation super-operators.
/// 100x the rounding accumulated over ~10^3 double-precision matrix products.
pub const UNITARY_TOL: f64 = 1e-10;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// A complex 2x2 matrix on the coin space, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self([[a, b], [c, d]])
    }

    pub fn zero() -> Self {
        Self([[ZERO; 2]; 2])
    }

    pub fn identity() -> Self {
        Self([[ONE, ZERO], [ZERO, ONE]])
    }

    /// Real orthogonal rotation by `angle` (used for the walk coins, which
    /// take `angle = theta/2`).
    pub fn rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new((c).into(), (-s).into(), (s).into(), (c).into())
    }

    pub fn adjoint(&self) -> Self {
        Self([
            [self.0[0][0].conj(), self.0[1][0].conj()],
            [self.0[0][1].conj(), self.0[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn scale(&self, z: Complex64) -> Self {
        let mut m = self.0;
        for row in m.iter_mut() {
            for e in row.iter_mut() {
                *e *= z;
            }
        }
        Self(m)
    }

    pub fn mul_vec(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }

    /// Deviation of `U^dag U` from the identity, max-abs entrywise.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint() * *self;
        let mut d: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let target = if i == j { ONE } else { ZERO };
                d = d.max((p.0[i][j] - target).norm());
            }
        }
        d
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        d
    }
}

impl std::ops::Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut m = self.0;
        for (row, r) in m.iter_mut().zip(&rhs.0) {
            for (e, v) in row.iter_mut().zip(r) {
                *e += v;
            }
        }
        Mat2(m)
    }
}

impl std::ops::Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        let mut m = self.0;
        for (row, r) in m.iter_mut().zip(&rhs.0) {
            for (e, v) in row.iter_mut().zip(r) {
                *e -= v;
            }
        }
        Mat2(m)
    }
}

impl std::ops::Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

/// The Pauli matrices `[I, sigma_x, sigma_y, sigma_z]`.
pub fn pauli_basis() -> [Mat2; 4] {
    [
        Mat2::identity(),
        Mat2::new(ZERO, ONE, ONE, ZERO),
        Mat2::new(ZERO, -I, I, ZERO),
        Mat2::new(ONE, ZERO, ZERO, -ONE),
    ]
}

/// Pauli-basis coefficient vector `(o_0, o_1, o_2, o_3)` of a 2x2 operator.
///
/// Components are complex in general; they are real iff the operator is
/// Hermitian, and purely imaginary for the anti-Hermitian derivative
/// operators `O_mu = u^dag du`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourVector(pub [Complex64; 4]);

impl FourVector {
    pub fn zero() -> Self {
        Self([ZERO; 4])
    }

    pub fn from_reals(v: [f64; 4]) -> Self {
        Self([v[0].into(), v[1].into(), v[2].into(), v[3].into()])
    }

    /// Sesquilinear inner product `(self | other)`, conjugating `self`.
    pub fn dot(&self, other: &Self) -> Complex64 {
        (0..4).map(|i| self.0[i].conj() * other.0[i]).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).re.sqrt()
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self([self.0[0] * z, self.0[1] * z, self.0[2] * z, self.0[3] * z])
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (0..4)
            .map(|i| (self.0[i] - other.0[i]).norm())
            .fold(0.0, f64::max)
    }

    /// Largest imaginary part; ~0 for the decomposition of a Hermitian operator.
    pub fn max_imag(&self) -> f64 {
        self.0.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

/// A 4x4 complex matrix acting on [`FourVector`]s.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuperOp(pub [[Complex64; 4]; 4]);

impl SuperOp {
    pub fn zero() -> Self {
        Self([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = ONE;
        }
        Self(m)
    }

    pub fn apply(&self, v: &FourVector) -> FourVector {
        let mut out = [ZERO; 4];
        for (i, row) in self.0.iter().enumerate() {
            out[i] = (0..4).map(|j| row[j] * v.0[j]).sum();
        }
        FourVector(out)
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                d = d.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        d
    }
}

impl std::ops::Mul for SuperOp {
    type Output = SuperOp;
    fn mul(self, rhs: SuperOp) -> SuperOp {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (0..4).map(|l| self.0[i][l] * rhs.0[l][j]).sum();
            }
        }
        SuperOp(m)
    }
}

impl std::ops::Add for SuperOp {
    type Output = SuperOp;
    fn add(self, rhs: SuperOp) -> SuperOp {
        let mut m = self.0;
        for (row, r) in m.iter_mut().zip(&rhs.0) {
            for (e, v) in row.iter_mut().zip(r) {
                *e += v;
            }
        }
        SuperOp(m)
    }
}

/// Bloch vector `(r1, r2, r3)` of the initial coin state, together with the
/// fixed leading component 1 of its density-operator vectorization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InitialBloch {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

impl InitialBloch {
    /// Accepts any Bloch vector with `|r| <= 1` (mixed states allowed).
    pub fn new(r1: f64, r2: f64, r3: f64) -> Result<Self> {
        let n = (r1 * r1 + r2 * r2 + r3 * r3).sqrt();
        if !n.is_finite() || n > 1.0 + 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "Bloch vector norm {n} exceeds 1"
            )));
        }
        Ok(Self { r1, r2, r3 })
    }

    /// Pure state with the given `r2`, the rest of the weight on `r1`.
    /// The Fisher matrices depend on the initial state only through `r2`.
    pub fn pure_with_r2(r2: f64) -> Result<Self> {
        if r2.abs() > 1.0 + 1e-12 {
            return Err(Error::InvalidParameter(format!("|r2| = {} > 1", r2.abs())));
        }
        let r1 = (1.0 - r2 * r2).max(0.0).sqrt();
        Ok(Self { r1, r2, r3: 0.0 })
    }

    pub fn norm(&self) -> f64 {
        (self.r1 * self.r1 + self.r2 * self.r2 + self.r3 * self.r3).sqrt()
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// Vectorized density operator `(1, r1, r2, r3)`.
    pub fn as_four_vector(&self) -> FourVector {
        FourVector::from_reals([1.0, self.r1, self.r2, self.r3])
    }

    /// The pure coin state with this Bloch vector, polar-decomposed as
    /// `r = (sin g cos d, sin g sin d, cos g)` and the global phase fixed so
    /// the |0> amplitude is real non-negative.
    pub fn coin_state(&self) -> [Complex64; 2] {
        let gamma = self.r3.clamp(-1.0, 1.0).acos();
        let delta = self.r2.atan2(self.r1);
        [
            Complex64::new((gamma / 2.0).cos(), 0.0),
            Complex64::from_polar((gamma / 2.0).sin(), delta),
        ]
    }
}

/// Pauli coefficients `o_i = Tr(O sigma_i)` of a 2x2 operator.
pub fn bloch_decompose(o: &Mat2) -> FourVector {
    let m = &o.0;
    FourVector([
        m[0][0] + m[1][1],
        m[0][1] + m[1][0],
        I * (m[0][1] - m[1][0]),
        m[0][0] - m[1][1],
    ])
}

/// Inverse of [`bloch_decompose`]: `O = (1/2) sum_i v_i sigma_i`.
pub fn bloch_compose(v: &FourVector) -> Mat2 {
    let half = Complex64::new(0.5, 0.0);
    let [v0, v1, v2, v3] = v.0;
    Mat2::new(
        half * (v0 + v3),
        half * (v1 - I * v2),
        half * (v1 + I * v2),
        half * (v0 - v3),
    )
}

/// The 4x4 matrix of `O -> U O U^dag` in the Pauli basis.
///
/// Rejects matrices whose unitarity defect exceeds [`UNITARY_TOL`]; global
/// phases of `U` cancel, so the result depends on `U` only up to phase.
pub fn conjugation_superop(u: &Mat2) -> Result<SuperOp> {
    let defect = u.unitarity_defect();
    if defect > UNITARY_TOL {
        return Err(Error::NotUnitary {
            defect,
            tol: UNITARY_TOL,
        });
    }
    let ud = u.adjoint();
    let mut m = [[ZERO; 4]; 4];
    for (j, sigma) in pauli_basis().iter().enumerate() {
        let col = bloch_decompose(&(*u * *sigma * ud));
        for (row, c) in m.iter_mut().zip(col.0) {
            row[j] = c * Complex64::new(0.5, 0.0);
        }
    }
    Ok(SuperOp(m))
}
