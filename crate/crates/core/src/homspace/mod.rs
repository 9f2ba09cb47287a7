//! Spaces of bounded homomorphisms: classification, nets and their limits.

mod audit;
mod classify;
mod converge;
mod net;

pub use audit::{lattice_continuity_audit, limit_uniqueness_audit, ContinuityReport, ModeParams};
pub use classify::{
    classify, nr_bounded_on, BoundedVerdict, ClassLabel, ContCert, ContVerdict, Flags, Reading, ReadingPair,
};
pub use converge::{
    bounds_within, br_converges, cr_converges, nr_converges, Alpha0, Convergence, ConvergenceCert, CrCert,
    CrConvergence, CrRefutation, Mode, Refutation, SlotRule,
};
pub use net::{HomNet, NetTerms};
