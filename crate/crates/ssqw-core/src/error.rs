use thiserror::Error;

/// Failure modes of the numerical routines.
///
/// All variants describe genuinely exceptional inputs (singular coins,
/// degenerate spectra, non-unitary matrices); ordinary parameter values never
/// error.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Conjugation super-operators are only defined for unitaries.
    #[error("matrix is not unitary (defect {defect:.3e} > {tol:.0e})")]
    NotUnitary { defect: f64, tol: f64 },

    /// An eigenvector normalization factor vanished (`sin(omega)` ~ 0).
    #[error("degenerate eigenvector: normalization N_{index} = {norm:.3e}")]
    Degenerate { index: usize, norm: f64 },

    /// The unit-eigenvalue projector denominator `sin^2(omega)` vanished.
    #[error("near-singular projector: sin^2(omega) = {value:.3e}")]
    NearSingular { value: f64 },

    /// Pole formulas divide by `cos(theta1/2) cos(theta2/2)`.
    #[error("poles undefined: cos(theta1/2)*cos(theta2/2) = {value:.3e}")]
    CoinSingular { value: f64 },

    /// The Fisher matrix cannot be inverted.
    #[error("singular Fisher matrix (det = {det:.3e})")]
    SingularFisher { det: f64 },

    /// Asymptotic forms are undefined on the topological phase boundary.
    #[error(
        "asymptotic form requested on a region boundary (theta1 = {theta1}, theta2 = {theta2})"
    )]
    BoundaryRegion { theta1: f64, theta2: f64 },

    /// A closed-form denominator vanished away from a reducible limit.
    #[error("closed form singular at (theta1 = {theta1}, theta2 = {theta2})")]
    ClosedFormSingular { theta1: f64, theta2: f64 },

    /// Input outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
