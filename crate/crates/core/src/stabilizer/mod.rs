//! Exact stabilizer quantum mechanics: cyclotomic arithmetic, Weyl operators,
//! discrete phase space, Lagrangian contexts and Born-rule models.

pub mod catalog;
pub mod cyclotomic;
pub mod matrix;
pub mod mermin;
pub mod phase;
pub mod scenario;
pub mod state;
pub mod weyl;

pub use catalog::{catalog_state, cs_state, CatalogEntry, CATALOG_NAMES};
pub use cyclotomic::{Cyclotomic, CyclotomicField};
pub use matrix::CMatrix;
pub use mermin::{mermin_square_check, MerminProof};
pub use phase::{enumerate_lagrangians, LagrangianSubspace, PhasePoint};
pub use scenario::{quantum_empirical_model, stabilizer_projector, BornTables, StabilizerScenario};
pub use state::{QuantumState, StateVector};
pub use weyl::WeylBasis;
