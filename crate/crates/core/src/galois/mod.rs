//! Galois points: projections whose function field extension is Galois.

mod certificate;
mod exact;
mod fibers;
mod frame;
mod scan;
mod verdict;

pub use certificate::{linear_certificate, verify_certificate, GaloisCertificate};
pub use exact::{exact_split_test, ExactOutcome};
pub use fibers::{
    fiber_over_line, galois_filter, multiplicity_profile, ramification_profile, FiberEntry, FilterOutcome,
    RamificationDatum, RamificationProfile,
};
pub use frame::{fiber_polynomial, ProjectionFrame};
pub use scan::{
    bound_check, curve_id, delta_scan, galois_bound, random_curve, sweep, two_galois_line_check, BoundCheck,
    DeltaReport, SweepReport,
};
pub use verdict::{galois_test, Engine, GaloisConfig, GaloisReport, Proof, Verdict};
