//! Admissible ODEs: table-style signatures, the structured Jacobian and
//! executable vector fields.

pub mod coupling;
pub mod expr;
pub mod field;
pub mod jacobian;
pub mod signature;

pub use coupling::{
    validate_symmetry, Builtin, CouplingFunction, CouplingSpec, Family, FnCoupling,
    SymmetricPolynomial,
};
pub use field::{
    assemble_vector_field, classify_arrow_signs, ArrowLabel, ArrowSign, DiffConfig, VectorField,
};
pub use jacobian::{symbolic_jacobian, Naming, Partial, SymbolicJacobian, Term};
pub use signature::{signature, AdmissibleSignature, ArgGroup, NodeEquation};
