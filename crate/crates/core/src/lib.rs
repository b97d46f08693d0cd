//! Fault-tolerant resource estimates for Hubbard-type lattice models.

pub mod circuitlab;
pub mod config;
pub mod error;
pub mod model;
pub mod optimize;
pub mod primitives;
pub mod qubitization;
pub mod reference;
pub mod report;
pub mod trotter_bounds;
pub mod trotter_cost;

pub use error::{Error, Result};
pub use model::{Couplings, ModelKind, ModelSpec};
pub use report::{Method, Row, Settings};
pub use trotter_cost::Strategy;
