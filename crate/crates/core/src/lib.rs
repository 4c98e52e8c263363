//! Zeldovich number 𝒩_Z of static electromagnetic fields.
//!
//! 𝒩_Z = 2πα ∫ d³k/k (|𝒟̃(k)|² + |ℋ̃(k)|²) is a dimensionless measure of
//! field strength, with fields in geometric units (𝒟 = D/e, ℋ = H/(ec)).
//! The crate evaluates it for charged sphere pairs, current loops, the Dirac
//! hydrogen ground state and closed-shell atoms, and carries independent
//! numerical routes to check every closed form.

// NaN must fail validation, hence `!(x > 0.0)` rather than `x <= 0.0`;
// quadrature nodes are kept at their published precision.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod fields;
pub mod oracle;
pub mod quadrature;
pub mod sources;
pub mod specfun;
pub mod spectra;
pub mod zeldovich;

pub use error::{Error, Result};
pub use fields::{FieldSample, PotentialPair, Vec3};
pub use oracle::{AuditEntry, AuditPair, AuditReport, KernelCheck, McEstimate, McSpec, Proposal};
pub use quadrature::{integrate, integrate_double_radial, QuadResult, QuadSpec};
pub use sources::{nuclear_radius, CurrentLoop, HydrogenAtom, NobleGasAtom, PhysConst, Shell, SourceModel, SpherePair};
pub use spectra::RadialSpectrum;
pub use zeldovich::{EnergyPart, LoopMethod, NzBreakdown, SphereMethod};
