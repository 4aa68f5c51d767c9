use crate::density::QubitLabel;

/// Error type shared by every module in this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A matrix that must be positive semidefinite has an eigenvalue below
    /// the tolerance floor (see [`crate::density::PSD_TOL`]).
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eig:.3e})")]
    NotPositive { min_eig: f64 },

    /// Entrywise Hermiticity defect `max |m[i][j] - conj(m[j][i])|` exceeds
    /// tolerance.
    #[error("matrix is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    /// `|trace - 1|` exceeds tolerance.
    #[error("matrix trace is not 1 (defect {defect:.3e})")]
    NotUnitTrace { defect: f64 },

    /// A matrix entry is NaN or infinite.
    #[error("matrix contains non-finite entries")]
    NotFinite,

    /// The matrix is not an X-state in the required real, z-aligned form
    /// (nonzero entry off the diagonal/anti-diagonal, or a complex phase on
    /// an anti-diagonal entry).
    #[error("matrix is not an X-state (off-pattern magnitude {magnitude:.3e})")]
    NotXState { magnitude: f64 },

    /// A partial trace asked to keep a qubit pair that is not one Alice mode
    /// plus one Bob mode.
    #[error("keep set must be one A mode and one B mode, got {0:?} and {1:?}")]
    BadKeepSet(QubitLabel, QubitLabel),

    /// An (omega, temperature/mass) specification is out of range.
    #[error("invalid thermal specification: {0}")]
    BadSpec(String),

    /// A scalar argument is outside its documented domain.
    #[error("invalid parameter: {0}")]
    BadParam(String),

    /// Both the quadratic and the linear coefficient of a threshold equation
    /// vanished, so no root can be extracted. Cannot occur for states this
    /// crate produces; kept as a guard rail.
    #[error("threshold equation is degenerate (no quadratic or linear root)")]
    DegenerateQuadratic,

    /// The threshold roots are complex or fall outside [0,1], i.e. the noise
    /// never kills the entanglement. Cannot occur for states this crate
    /// produces (k = 1/2 is always a zero); kept as a guard rail.
    #[error("no dead zone: threshold roots are complex or outside [0,1]")]
    NoDeadZone,
}

pub type Result<T> = std::result::Result<T, Error>;
