//! Exact density-matrix simulation of single-qubit teleportation over noisy
//! resources, together with the closed-form model it is checked against.
//!
//! The crate provides two fully independent evaluations of the protocol:
//!
//! * a faithful dense simulator ([`protocol`]) that prepares the three-qubit
//!   register, applies the noisy gate/measurement schedule step by step and
//!   traces out the sender's qubits, and
//! * a brute-force branch enumeration ([`oracle`]) that expands the same
//!   protocol into a finite mixture of Pauli-error trajectories without
//!   sharing any channel code with the simulator.
//!
//! Their agreement (entrywise, to 1e-12) is the primary correctness
//! guarantee. The closed-form average-fidelity expression implemented in
//! [`fidelity`] is treated as the model under test: the `verify` machinery
//! quantifies where it matches the simulation and where it departs.
//!
//! Conventions:
//!
//! * Qubit 0 is the most significant bit of a basis index (leftmost tensor
//!   factor). The register order is [message, sender pair half, receiver].
//! * All randomness flows through explicitly seeded ChaCha8 streams, so any
//!   sampled quantity is bit-reproducible.
//! * Tolerances are centralized in [`tensor`]: 1e-12 for algebraic
//!   identities, 1e-10 of spectral slack for positivity checks.

pub mod cli;
pub mod error;
pub mod fidelity;
pub mod noise;
pub mod oracle;
pub mod protocol;
pub mod states;
pub mod tensor;

pub use error::{Error, Result};
pub use fidelity::{FidelityEstimate, FidelityMethod};
pub use noise::{NoiseParams, QubitChannel};
pub use protocol::{ProtocolSchedule, TeleportResult};
pub use states::PureQubit;
pub use tensor::{ComplexMatrix, DensityMatrix, PhysicalityReport};
