use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid site layout: {0}")]
    InvalidLayout(String),
    #[error("layout mismatch: {left:?} vs {right:?}")]
    LayoutMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("total dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("state norm {norm} deviates from 1 beyond the accepted tolerance")]
    NotNormalized { norm: f64 },
    #[error("zero vector cannot be normalized")]
    ZeroVector,
    #[error("site index {index} out of range for {sites} sites")]
    SiteOutOfRange { index: usize, sites: usize },
    #[error("site index {0} repeated")]
    RepeatedSite(usize),
    #[error("empty site selection")]
    EmptySelection,
    #[error("operands are of different kinds ({0})")]
    KindMismatch(&'static str),
    #[error("not a valid density matrix: {0}")]
    InvalidDensityMatrix(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("norm deficit {deficit:e} at Fock cutoff {d_cut} exceeds {max:e}")]
    CutoffTooSmall { d_cut: usize, deficit: f64, max: f64 },
    #[error("invalid swap-group specification: {0}")]
    InvalidGroups(String),
    #[error("probability {value:e} for control string {bits} is below the noise floor")]
    NegativeProbability { bits: String, value: f64 },
    #[error("odd-parity probability is zero; ratio undefined")]
    ZeroOddProbability,
    #[error("monitor has already declared a violation")]
    MonitorViolated,
}
