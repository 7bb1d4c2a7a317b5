//! Excitatory-inhibitory coupled cell networks.
//!
//! Networks carry excitatory and inhibitory arrows, and optionally two node
//! types. The crate enumerates small networks, decides ODE-equivalence with
//! exact rational arithmetic, finds balanced colourings and quotients, renders
//! admissible ODEs and simulates them.

pub mod admissible;
pub mod catalog;
pub mod enumerate;
pub mod error;
pub mod linalg;
pub mod net;
pub mod ode;
pub mod parametric;
pub mod scalar;
pub mod sim;
pub mod synchrony;

pub use enumerate::{canonical_form, enumerate_networks, network_id, EnumerationSpec};
pub use error::{Error, Result};
pub use net::{classify_network, ArrowType, EiNetwork, IntMatrix, NetworkClass, NodeType};
pub use ode::{
    minimal_representatives, ode_equivalent, partition_classes, signature as ode_signature,
    OdeClass, OdeSignature,
};
pub use parametric::{parametric_class_id, ParametricClass, PeiClass, UeiClass};
pub use synchrony::{balanced_colourings, is_balanced, quotient, Colouring};

pub type Rational = num_rational::BigRational;
pub type RationalSpace = linalg::MatrixSpace<Rational>;

pub type CouplingSpec = admissible::CouplingSpec<f64>;
pub type VectorField = admissible::VectorField<f64>;
pub type Trajectory = sim::Trajectory<f64>;
