//! Reusable organisational change toolkit.
//!
//! Models enterprise and ERP processes as strategy-labeled Petri nets,
//! traces goal graphs down to process fragments, aligns As-Is against To-Be
//! models and keeps finished projects in a case base for later reuse.

pub mod alignment;
pub mod cli;
pub mod casebase;
pub mod dot;
pub mod dsl;
pub mod goals;
pub mod id;
pub mod net;
pub mod report;
pub mod violation;

pub use id::Id;
pub use net::{
    Fragment, FulfilmentReport, Marking, ModelKind, NetError, Place, PlaceRole, ProcessModel,
    RefinementTree, StrategyLabel, DEFAULT_BOUND,
};
pub use violation::{Violation, ViolationCode};
