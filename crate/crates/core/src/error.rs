use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("quadrature did not converge after {evals} evaluations (best {best}, err_est {err_est:.3e})")]
    NonConvergence {
        best: Complex64,
        err_est: f64,
        evals: usize,
    },

    #[error("integrand returned a non-finite value at {abscissa}")]
    NonFiniteIntegrand { abscissa: f64 },

    #[error("decay bound does not fall below tolerance {tol:.3e} before u = {limit}")]
    DecayBoundUnreachable { tol: f64, limit: f64 },

    #[error("extrapolation failed: {0}")]
    Extrapolation(String),

    #[error("pole of the Gamma function at {0}")]
    GammaPole(Complex64),

    #[error("{what} = {value} outside supported range [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("grid size {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("boundary mass {fraction:.3e} exceeds guard {guard:.1e} at t = {t}")]
    BoundaryMass { t: f64, fraction: f64, guard: f64 },

    #[error("{0}")]
    Domain(String),

    #[error("at x = {x}: {source}")]
    At {
        x: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn at(x: f64) -> impl FnOnce(Error) -> Error {
        move |e| Error::At { x, source: Box::new(e) }
    }
}
