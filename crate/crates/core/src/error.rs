use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("operation requires the {expected} regime but a*ell = {a_ell}")]
    WrongRegime { expected: &'static str, a_ell: f64 },

    #[error("Wightman function is singular at {location}; use a positive regulator")]
    Singular { location: String },

    #[error("worldline leaves the Poincare patch at tau = {tau} (beyond the horizon z = inf)")]
    OutsidePatch { tau: f64 },

    #[error("Kossakowski rate A = {a} is not positive; the ratio B/A is undefined")]
    NonPositiveRate { a: f64 },

    #[error("density matrix is maximally mixed at tau = {tau}; eigenbasis undefined")]
    DegenerateState { tau: f64 },

    #[error("|Q| = {q} is too close to zero for the closed-form antiderivative")]
    NearDegenerateQ { q: f64 },

    #[error("non-positive logarithm argument {value} in the antiderivative ({which})")]
    InternalInconsistency { which: &'static str, value: f64 },

    #[error(
        "adaptive quadrature did not converge after {subdivisions} subdivisions \
         (estimate {estimate:e}, error {error:e})"
    )]
    Convergence {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    #[error(
        "integrand has not decayed at the window edge: |f(edge)| = {edge:e} vs peak {peak:e}"
    )]
    Window { edge: f64, peak: f64 },

    #[error("no asymptotic branch applies: ell*omega0 = {omega0_ell}, sqrt(a^2 ell^2 - 1) = {root}")]
    NoAsymptote { omega0_ell: f64, root: f64 },

    #[error("{0}")]
    Unsupported(&'static str),
}
