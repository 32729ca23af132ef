//! Strategy-labeled place/transition nets.
//!
//! Places are process states, fragments are transitions carrying a strategy
//! label. Arcs have weight one and are implied by each fragment's source and
//! target sets, so the net is bipartite by construction.

mod refinement;
mod semantics;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::id::{normalize_label, Id};
use crate::violation::{Violation, ViolationCode};

pub use refinement::RefinementTree;
pub use semantics::{FulfilmentReport, DEFAULT_BOUND};

/// Id reserved for the pseudo-state written as a bare `exit` in triplets.
pub const EXIT_ID: &str = "exit";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetError {
    #[error("fragment {0} is not enabled")]
    NotEnabled(Id),
    #[error("unknown fragment {0}")]
    UnknownFragment(Id),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaceRole {
    Start,
    Intermediate,
    Exit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Place {
    pub id: Id,
    pub label: String,
    pub role: PlaceRole,
}

impl Place {
    pub fn new(id: impl Into<Id>, label: impl Into<String>, role: PlaceRole) -> Self {
        Place {
            id: id.into(),
            label: label.into(),
            role,
        }
    }
}

/// How a transition is performed, e.g. "manual strategy" or "FIFO".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyLabel {
    pub text: String,
    /// Marks a strategy that exhibits an As-Is problem.
    pub deficient: bool,
}

impl StrategyLabel {
    /// Label whose deficiency flag follows the naming heuristic.
    pub fn new(text: impl Into<String>) -> Self {
        let text = text.into();
        let deficient = Self::looks_deficient(&text);
        StrategyLabel { text, deficient }
    }

    pub fn with_deficiency(text: impl Into<String>, deficient: bool) -> Self {
        StrategyLabel {
            text: text.into(),
            deficient,
        }
    }

    /// Default deficiency: the normalized label starts with "not " or "manual".
    pub fn looks_deficient(text: &str) -> bool {
        let n = normalize_label(text);
        n.starts_with("not ") || n.starts_with("manual")
    }

    pub fn normalized(&self) -> String {
        normalize_label(&self.text)
    }

    /// Case-insensitive comparison on normalized whitespace.
    pub fn same_strategy(&self, other: &StrategyLabel) -> bool {
        self.normalized() == other.normalized()
    }
}

impl fmt::Display for StrategyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// A transition written as `<sources, targets, strategy>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fragment {
    pub id: Id,
    pub sources: BTreeSet<Id>,
    pub targets: BTreeSet<Id>,
    pub strategy: StrategyLabel,
    /// Problems this As-Is fragment exhibits.
    #[serde(default)]
    pub problems: BTreeSet<Id>,
    /// Problems this To-Be fragment treats.
    #[serde(default)]
    pub resolves: BTreeSet<Id>,
}

impl Fragment {
    pub fn new<S, T>(id: impl Into<Id>, sources: S, targets: T, strategy: StrategyLabel) -> Self
    where
        S: IntoIterator,
        S::Item: Into<Id>,
        T: IntoIterator,
        T::Item: Into<Id>,
    {
        Fragment {
            id: id.into(),
            sources: sources.into_iter().map(Into::into).collect(),
            targets: targets.into_iter().map(Into::into).collect(),
            strategy,
            problems: BTreeSet::new(),
            resolves: BTreeSet::new(),
        }
    }

    pub fn is_self_loop(&self) -> bool {
        self.sources == self.targets
    }

    pub fn same_endpoints(&self, other: &Fragment) -> bool {
        self.sources == other.sources && self.targets == other.targets
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    AsIs,
    ToBe,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::AsIs => "As-Is",
            ModelKind::ToBe => "To-Be",
        })
    }
}

/// Token counts per place. Places without tokens are not stored, so two
/// markings are equal iff they agree on every place.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Marking(BTreeMap<Id, u32>);

impl Marking {
    pub fn new() -> Self {
        Marking::default()
    }

    pub fn get(&self, place: &Id) -> u32 {
        self.0.get(place).copied().unwrap_or(0)
    }

    pub fn set(&mut self, place: impl Into<Id>, tokens: u32) {
        let place = place.into();
        if tokens == 0 {
            self.0.remove(&place);
        } else {
            self.0.insert(place, tokens);
        }
    }

    pub fn total(&self) -> u64 {
        self.0.values().map(|&n| u64::from(n)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Id, u32)> {
        self.0.iter().map(|(k, &v)| (k, v))
    }
}

impl<K: Into<Id>> FromIterator<(K, u32)> for Marking {
    fn from_iter<I: IntoIterator<Item = (K, u32)>>(iter: I) -> Self {
        let mut m = Marking::new();
        for (k, v) in iter {
            let k = k.into();
            let n = m.get(&k) + v;
            m.set(k, n);
        }
        m
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (p, n)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}:{n}")?;
        }
        f.write_str("}")
    }
}

/// An As-Is or To-Be process expressed as a strategy-labeled net.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcessModel {
    pub name: String,
    pub kind: ModelKind,
    pub places: Vec<Place>,
    pub fragments: Vec<Fragment>,
    pub initial_marking: Marking,
}

impl ProcessModel {
    pub fn new(name: impl Into<String>, kind: ModelKind) -> Self {
        ProcessModel {
            name: name.into(),
            kind,
            places: Vec::new(),
            fragments: Vec::new(),
            initial_marking: Marking::new(),
        }
    }

    pub fn place(&self, id: &Id) -> Option<&Place> {
        self.places.iter().find(|p| &p.id == id)
    }

    pub fn fragment(&self, id: &Id) -> Option<&Fragment> {
        self.fragments.iter().find(|f| &f.id == id)
    }

    pub fn start_place(&self) -> Option<&Place> {
        self.places.iter().find(|p| p.role == PlaceRole::Start)
    }

    pub fn exit_places(&self) -> impl Iterator<Item = &Place> {
        self.places.iter().filter(|p| p.role == PlaceRole::Exit)
    }

    /// Fragment ids in natural order.
    pub fn fragment_ids(&self) -> BTreeSet<Id> {
        self.fragments.iter().map(|f| f.id.clone()).collect()
    }

    /// Every broken well-formedness rule; empty iff the model is valid.
    pub fn validate(&self) -> Vec<Violation> {
        use ViolationCode::*;
        let mut out = Vec::new();

        let mut seen = HashSet::new();
        for p in &self.places {
            if !Id::is_valid(p.id.as_str()) {
                out.push(Violation::new(InvalidId, p.id.clone(), format!("place id {:?} is not a valid identifier", p.id.as_str())));
            }
            if !seen.insert(&p.id) {
                out.push(Violation::new(DuplicatePlace, p.id.clone(), format!("place {} declared more than once", p.id)));
            }
        }
        let starts: Vec<&Place> = self.places.iter().filter(|p| p.role == PlaceRole::Start).collect();
        match starts.len() {
            0 => out.push(Violation::new(NoStartPlace, self.name.as_str(), "model has no start place")),
            1 => {}
            _ => {
                for p in &starts[1..] {
                    out.push(Violation::new(MultipleStartPlaces, p.id.clone(), format!("second start place {} (first is {})", p.id, starts[0].id)));
                }
            }
        }
        if self.exit_places().next().is_none() {
            out.push(Violation::new(NoExitPlace, self.name.as_str(), "model has no exit place"));
        }

        let place_ids: HashSet<&Id> = self.places.iter().map(|p| &p.id).collect();
        let mut seen = HashSet::new();
        for f in &self.fragments {
            if !Id::is_valid(f.id.as_str()) {
                out.push(Violation::new(InvalidId, f.id.clone(), format!("fragment id {:?} is not a valid identifier", f.id.as_str())));
            }
            if !seen.insert(&f.id) {
                out.push(Violation::new(DuplicateFragment, f.id.clone(), format!("fragment {} declared more than once", f.id)));
            }
            if f.sources.is_empty() {
                out.push(Violation::new(EmptySources, f.id.clone(), format!("fragment {} has no source place", f.id)));
            }
            if f.targets.is_empty() {
                out.push(Violation::new(EmptyTargets, f.id.clone(), format!("fragment {} has no target place", f.id)));
            }
            for p in f.sources.iter().chain(f.targets.iter()) {
                if !place_ids.contains(p) {
                    out.push(Violation::new(DanglingPlaceRef, f.id.clone(), format!("fragment {} references unknown place {}", f.id, p)));
                }
            }
            if f.strategy.text.trim().is_empty() {
                out.push(Violation::new(EmptyStrategy, f.id.clone(), format!("fragment {} has an empty strategy", f.id)));
            }
            if !f.problems.is_empty() && !f.resolves.is_empty() {
                out.push(Violation::new(ProblemsAndResolves, f.id.clone(), format!("fragment {} both exhibits and resolves problems", f.id)));
            }
            match self.kind {
                ModelKind::AsIs if !f.resolves.is_empty() => {
                    out.push(Violation::new(KindMismatch, f.id.clone(), format!("As-Is fragment {} carries resolves links", f.id)));
                }
                ModelKind::ToBe if !f.problems.is_empty() => {
                    out.push(Violation::new(KindMismatch, f.id.clone(), format!("To-Be fragment {} carries problems links", f.id)));
                }
                _ => {}
            }
        }

        for (p, _) in self.initial_marking.iter() {
            if !place_ids.contains(p) {
                out.push(Violation::new(DanglingMarking, p.clone(), format!("initial marking puts tokens on unknown place {p}")));
            }
        }
        out
    }

    /// Renders a fragment in triplet notation using place labels, e.g.
    /// `PF4 :<(Stock), exit, manual order processing strategy>`.
    pub fn triplet(&self, fragment: &Id) -> Result<String, NetError> {
        let f = self
            .fragment(fragment)
            .ok_or_else(|| NetError::UnknownFragment(fragment.clone()))?;
        Ok(format!(
            "{} :<{}, {}, {}>",
            f.id,
            self.render_state(&f.sources),
            self.render_state(&f.targets),
            f.strategy.text
        ))
    }

    fn render_state(&self, ids: &BTreeSet<Id>) -> String {
        if ids.len() == 1 && ids.iter().next().is_some_and(|id| id.as_str() == EXIT_ID) {
            return EXIT_ID.to_string();
        }
        let labels: Vec<&str> = ids
            .iter()
            .map(|id| self.place(id).map_or(id.as_str(), |p| p.label.as_str()))
            .collect();
        format!("({})", labels.join(", "))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// The Electro Tech As-Is chain built without the DSL.
    pub(crate) fn electrotech_asis() -> ProcessModel {
        let mut m = ProcessModel::new("Electro Tech As-Is", ModelKind::AsIs);
        m.places = vec![
            Place::new("I0", "start", PlaceRole::Start),
            Place::new("I1", "support material", PlaceRole::Intermediate),
            Place::new("I2", "work with material", PlaceRole::Intermediate),
            Place::new("I3", "Stock", PlaceRole::Intermediate),
            Place::new("exit", "exit", PlaceRole::Exit),
        ];
        m.fragments = vec![
            Fragment::new("PF1", ["I0"], ["I1"], StrategyLabel::new("manual strategy")),
            Fragment::new("PF2", ["I1"], ["I2"], StrategyLabel::new("Not demand management strategy")),
            Fragment::new("PF3", ["I2"], ["I3"], StrategyLabel::new("Not real time production planning strategy")),
            Fragment::new("PF4", ["I3"], ["exit"], StrategyLabel::new("manual order processing strategy")),
        ];
        m.initial_marking = [("I0", 1)].into_iter().collect();
        m
    }

    #[test]
    fn electrotech_asis_is_valid() {
        assert_eq!(electrotech_asis().validate(), vec![]);
    }

    #[test]
    fn dangling_place_reference() {
        let mut m = electrotech_asis();
        m.fragments[0].sources = [Id::from("I9")].into();
        let v = m.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].code, ViolationCode::DanglingPlaceRef);
        assert_eq!(v[0].subject.as_str(), "PF1");
        assert!(v[0].message.contains("I9"));
    }

    #[test]
    fn resolves_on_asis_is_kind_mismatch() {
        let mut m = electrotech_asis();
        m.fragments[1].resolves.insert("b".into());
        let v = m.validate();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].code, v[0].subject.as_str()), (ViolationCode::KindMismatch, "PF2"));
    }

    #[test]
    fn problems_and_resolves_together() {
        let mut m = electrotech_asis();
        m.kind = ModelKind::ToBe;
        m.fragments[0].problems.insert("a".into());
        m.fragments[0].resolves.insert("a".into());
        let codes: Vec<_> = m.validate().into_iter().map(|v| v.code).collect();
        assert_eq!(codes, [ViolationCode::ProblemsAndResolves, ViolationCode::KindMismatch]);
    }

    #[test]
    fn start_and_exit_required() {
        let mut m = electrotech_asis();
        m.places[0].role = PlaceRole::Intermediate;
        m.places[4].role = PlaceRole::Intermediate;
        let codes: Vec<_> = m.validate().into_iter().map(|v| v.code).collect();
        assert_eq!(codes, [ViolationCode::NoStartPlace, ViolationCode::NoExitPlace]);

        let mut m = electrotech_asis();
        m.places[1].role = PlaceRole::Start;
        let codes: Vec<_> = m.validate().into_iter().map(|v| v.code).collect();
        assert_eq!(codes, [ViolationCode::MultipleStartPlaces]);
    }

    #[test]
    fn duplicates_and_blank_strategy() {
        let mut m = electrotech_asis();
        m.places.push(Place::new("I1", "again", PlaceRole::Intermediate));
        m.fragments.push(Fragment::new("PF1", ["I0"], ["I1"], StrategyLabel::new("  ")));
        let codes: Vec<_> = m.validate().into_iter().map(|v| v.code).collect();
        assert_eq!(
            codes,
            [ViolationCode::DuplicatePlace, ViolationCode::DuplicateFragment, ViolationCode::EmptyStrategy]
        );
    }

    #[test]
    fn marking_on_unknown_place() {
        let mut m = electrotech_asis();
        m.initial_marking.set("I7", 1);
        let v = m.validate();
        assert_eq!(v[0].code, ViolationCode::DanglingMarking);
    }

    #[test]
    fn triplets_use_place_labels() {
        let m = electrotech_asis();
        assert_eq!(
            m.triplet(&"PF1".into()).unwrap(),
            "PF1 :<(start), (support material), manual strategy>"
        );
        assert_eq!(
            m.triplet(&"PF4".into()).unwrap(),
            "PF4 :<(Stock), exit, manual order processing strategy>"
        );
        assert_eq!(m.triplet(&"PF9".into()), Err(NetError::UnknownFragment("PF9".into())));
    }

    #[test]
    fn deficiency_heuristic() {
        assert!(StrategyLabel::new("Not demand management strategy").deficient);
        assert!(StrategyLabel::new("  MANUAL order processing").deficient);
        assert!(!StrategyLabel::new("planning strategy").deficient);
        assert!(!StrategyLabel::new("nothing-like strategy").deficient);
        assert!(StrategyLabel::new("On-line  Strategy").same_strategy(&StrategyLabel::new("on-line strategy")));
    }

    #[test]
    fn marking_drops_zero_counts() {
        let mut m: Marking = [("I0", 1), ("I1", 0)].into_iter().collect();
        assert_eq!(m, [("I0", 1)].into_iter().collect());
        m.set("I0", 0);
        assert!(m.is_empty());
        assert_eq!(m.to_string(), "{}");
    }
}
