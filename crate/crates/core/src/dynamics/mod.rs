//! Numerical Reeb dynamics on star-shaped hypersurfaces in R⁴.

pub mod body;
pub mod dual;
pub mod integrator;
pub mod orbit;
pub mod quadrature;

pub use body::{parse_harmonics, Harmonic, StarBody, Trig};
pub use orbit::{
    find_planar_orbit, flow, measure, reeb_field, relations_from_measurements, rotation_number, verify_theorem_relations,
    DynamicsReport, FlowResult, PeriodicOrbitResult, Rotation, RotationKind,
};
pub use quadrature::{contact_volume, contact_volume_at};
