use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("constant term {0} is not a unit (must be +1 or -1)")]
    NonUnitConstant(String),
    #[error("evaluation point lies outside the open unit disc (|q| = {0})")]
    OutsideUnitDisc(f64),
    #[error("{what}: argument {value} outside domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("theta function needs Im(tau) > 0, got {0}")]
    NotInUpperHalfPlane(f64),
    #[error("quadrature missed target {target:e} after {evaluations} evaluations (last change {achieved:e})")]
    Quadrature {
        target: f64,
        achieved: f64,
        evaluations: usize,
    },
    #[error("contour integral rounding residual {residual} exceeds 0.25; raise precision or sample count")]
    Rounding { residual: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
