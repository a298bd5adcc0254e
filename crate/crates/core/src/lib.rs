//! Computations for contact three-manifolds whose Reeb flow has exactly two
//! simple periodic orbits.
//!
//! * [`model`]: exact surd scalars and the two-orbit model data.
//! * [`index`]: Conley–Zehnder and ECH index arithmetic, volume/period relations.
//! * [`spectrum`]: ordered action spectra and the ellipsoid ECH spectral invariants.
//! * [`braid`]: sampled braids in a solid torus, writhe and linking by crossing count.
//! * [`perturb`]: exact bookkeeping of index shifts under small perturbations.
//! * [`dynamics`]: numerical Reeb flow on star-shaped hypersurfaces in R⁴.

pub mod braid;
pub mod dynamics;
pub mod index;
pub mod model;
pub mod perturb;
pub mod spectrum;

pub use model::scalar::{Approx, Rational, Scalar, ScalarError, Surd};
pub use model::{make_ellipsoid_model, OrbitId, OrbitSet, TwoOrbitModel};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("orbit set ({m1},{m2}) is not nullhomologous (m1*h1 + m2*h2 != 0 mod {p})")]
    Inadmissible { m1: u64, m2: u64, p: u64 },
    #[error("unresolvable CZ: rotation number {0} is not separated from the integers")]
    UnresolvableCz(String),
    #[error("inconsistent model data: {0}")]
    InconsistentModel(String),
    #[error("degenerate spectrum: a/b is rational, use enumerate_spectrum instead")]
    DegenerateSpectrum,
    #[error("index certification failed at rank {rank}: expected {expected}, got {got}")]
    IndexMismatch { rank: u64, expected: i64, got: i64 },
    #[error("memory budget of {budget} bytes exceeded after {completed} entries")]
    BudgetExceeded { completed: u64, budget: u64 },
    #[error("resolution error: {0}")]
    Resolution(String),
    #[error("precision error: {0}")]
    Precision(String),
    #[error("iteration did not converge: {0}")]
    Iteration(String),
    #[error("orbit escaped plane {plane}: off-plane amplitude {amplitude:e}")]
    OrbitEscaped { plane: u8, amplitude: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
