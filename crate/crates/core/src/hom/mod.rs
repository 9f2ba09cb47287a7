//! Group homomorphisms between the shipped spaces and their lattice calculus.

mod calculus;
mod cone;
mod desc;
mod matrix;
mod oracle;
mod riesz;

pub use calculus::{
    directed_sup, hom_join, hom_meet, hom_verdict, is_order_bounded, modulus, negative_part, positive_part,
    spot_check_order_bound, HomVerdict, OrderBound,
};
pub use cone::{extend_from_cone, extension_value, ConeMapDesc, Extension, RANDOM_AUDIT_PAIRS};
pub use desc::HomDesc;
pub use matrix::RatMatrix;
pub use oracle::{sup_over_interval_oracle, ORACLE_CAP};
pub use riesz::riesz_decompose;
