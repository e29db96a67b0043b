use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("jet operation `{op}` is singular at constant term {value}")]
    SingularConstantTerm { op: &'static str, value: String },

    #[error("matrix is not a symplectic similitude (residual {residual:.3e})")]
    NotSimilitude { residual: f64 },

    #[error("automorphy factor CZ+D is singular (|det| = {det_abs:.3e})")]
    SingularAutomorphyFactor { det_abs: f64 },

    #[error("Newton iteration did not converge after {iterations} steps (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("element lies in the wrong component (multiplier {mu2:.6e})")]
    WrongComponent { mu2: f64 },

    #[error("matrix is not in sp(4,C) (residual {residual:.3e})")]
    NotInAlgebra { residual: f64 },

    #[error("invalid weights l = {l}, l' = {lp}: {reason}")]
    InvalidWeights { l: i32, lp: i32, reason: &'static str },

    #[error("base of a non-integral or negative power vanishes: {what}")]
    SingularBase { what: &'static str },

    #[error("no Bessel function exists for l = {l}, l' = {lp}, m = {m}")]
    NotRepresentable { l: i32, lp: i32, m: i32 },

    #[error("chart point is singular for this formula: {what}")]
    ChartSingularity { what: &'static str },

    #[error("jet order exhausted: need {needed}, have {available}")]
    JetOrderExhausted { needed: usize, available: usize },

    #[error("Gamma function pole at {z}")]
    PoleOfGamma { z: String },

    #[error("pole of the rational factor Q at {what}")]
    PoleOfQ { what: String },

    #[error("parameters outside the supported region: {what}")]
    ParameterRegionUnsupported { what: String },

    #[error("quadrature did not reach tolerance {tol:.1e} (last estimate change {last_change:.3e})")]
    QuadratureNotConverged { tol: f64, last_change: f64 },

    #[error("integral diverges: {what}")]
    DivergentRegion { what: String },

    #[error("fit residual {residual:.3e} exceeds tolerance {tol:.1e}")]
    ShapeMismatch { residual: f64, tol: f64 },
}
