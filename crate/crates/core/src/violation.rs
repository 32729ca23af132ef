use std::fmt;

use serde::{Deserialize, Serialize};

use crate::id::Id;

/// Well-formedness rule that a model, tree or goal graph breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ViolationCode {
    // process nets
    DuplicatePlace,
    DuplicateFragment,
    InvalidId,
    NoStartPlace,
    MultipleStartPlaces,
    NoExitPlace,
    DanglingPlaceRef,
    EmptySources,
    EmptyTargets,
    EmptyStrategy,
    ProblemsAndResolves,
    KindMismatch,
    DanglingMarking,
    // refinement trees
    UnknownFragment,
    IdMismatch,
    MultipleParents,
    RefinementCycle,
    EndpointMismatch,
    // goal graphs
    DuplicateNode,
    DuplicateStakeholder,
    NeedNotEnterprise,
    ChangeOnNonGoal,
    DanglingNodeRef,
    DanglingStakeholderRef,
    BadDerivesKinds,
    BadSupportsDirection,
    BadDecomposesKinds,
    BadRealisedBySource,
    DecompositionCycle,
    DerivationCycle,
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A broken invariant. Violations are data: validators collect them instead
/// of failing on the first one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: ViolationCode,
    /// The offending element.
    pub subject: Id,
    pub message: String,
}

impl Violation {
    pub fn new(code: ViolationCode, subject: impl Into<Id>, message: impl Into<String>) -> Self {
        Violation {
            code,
            subject: subject.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}): {}", self.code, self.subject, self.message)
    }
}
