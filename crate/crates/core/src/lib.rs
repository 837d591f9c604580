//! Two-photon interference in the two-double-slit experiment.
//!
//! * [`optics`]: the joint amplitude Ψ(y, z) by quadrature, in closed form and
//!   in its two limits, plus the kθd regime report.
//! * [`events`]: attributes, particle labels, combined and even events, and the
//!   permutation symmetries acting on them.
//! * [`systems`]: assignment of the 18 even events to QI, CI and RI.
//! * [`verify`]: the invariant suites run by the command-line tool.

pub mod config;
pub mod events;
pub mod optics;
pub mod output;
pub mod systems;
pub mod verify;

pub use events::{CombinedEvent, EvenEvent, SymmetryOp};
pub use optics::{AmplitudeGrid, ExperimentConfig, Method, Regime, RegimeReport};
pub use systems::{ClassificationRecord, Status, SystemId};
