//! Exact linear algebra over a field and the exterior algebra `Λ(F^n)`:
//! subspace wedges, the wedge intersection test, the triangular
//! independence criterion, general-position sampling and certificates.

pub mod certificate;
pub mod field;
pub mod linalg;
pub mod multivector;
pub mod position;
pub mod subspace;

pub use certificate::{certify_skew_system, lift_set_system, Certificate, CertificateFailure, DEFAULT_MAX_TRIES};
pub use field::{Field, PrimeField, RationalField, DEFAULT_PRIME};
pub use multivector::{
    multivector_rank, subspace_wedge, triangular_independence, trivial_intersection, wedge_sign_negative,
    MultiVector, TriangularCheck, MAX_ALGEBRA_DIM,
};
pub use position::{
    general_position_violations, random_general_position_subspace, reduce_to_zero, reduction_constraints,
    Reduction, SubspacePair,
};
pub use subspace::{intersection_dim, Subspace};
