//! Completed projects kept as cases: retrieve similar ones, reuse their
//! To-Be model as a draft, test the draft, retain new cases.

mod store;

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alignment::{align, AlignmentReport, ComponentMap, PlaceCorrespondence, Problem};
use crate::goals::{GoalGraph, NodeKind, Owner};
use crate::id::{normalize_label, Id};
use crate::net::{FulfilmentReport, ProcessModel};

#[derive(Debug, Error)]
pub enum CaseBaseError {
    #[error("the case base is empty")]
    EmptyCaseBase,
    #[error("scenario {0} already exists")]
    DuplicateId(Id),
    #[error("invalid place correspondence: {0}")]
    Correspondence(String),
    #[error("invalid scenario {id}: {reason}")]
    InvalidScenario { id: Id, reason: String },
    #[error("invalid similarity weights: {0}")]
    InvalidWeights(String),
    #[error("storage error at {path}: {reason}")]
    Storage { path: PathBuf, reason: String },
}

/// One completed project.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub id: Id,
    pub name: String,
    pub goal_graph: GoalGraph,
    pub as_is: ProcessModel,
    pub to_be: ProcessModel,
    pub report: AlignmentReport,
    pub component_map: ComponentMap,
    /// The correspondence `report` was computed under.
    pub correspondence: PlaceCorrespondence,
    /// Registry applied to `report`; empty when none was.
    pub problems: Vec<Problem>,
    /// Free-form notes such as the implementation approach.
    pub metadata: BTreeMap<String, String>,
}

impl Scenario {
    /// Aligns the two models and applies the registry, so the stored report
    /// is consistent by construction.
    #[allow(clippy::too_many_arguments)]
    pub fn build(
        id: impl Into<Id>,
        name: impl Into<String>,
        goal_graph: GoalGraph,
        as_is: ProcessModel,
        to_be: ProcessModel,
        component_map: ComponentMap,
        correspondence: PlaceCorrespondence,
        problems: Vec<Problem>,
    ) -> Result<Scenario, CaseBaseError> {
        let id = id.into();
        let report = compute_report(&as_is, &to_be, &correspondence, &problems)
            .map_err(|reason| CaseBaseError::InvalidScenario { id: id.clone(), reason })?;
        Ok(Scenario {
            id,
            name: name.into(),
            goal_graph,
            as_is,
            to_be,
            report,
            component_map,
            correspondence,
            problems,
            metadata: BTreeMap::new(),
        })
    }

    /// Checks that the embedded models and graph are valid and that
    /// re-aligning reproduces the stored report.
    pub fn validate(&self) -> Result<(), CaseBaseError> {
        let bad = |reason: String| CaseBaseError::InvalidScenario {
            id: self.id.clone(),
            reason,
        };
        if !Id::is_valid(self.id.as_str()) {
            return Err(bad("scenario id is not a valid identifier".into()));
        }
        for m in [&self.as_is, &self.to_be] {
            if let Some(v) = m.validate().into_iter().next() {
                return Err(bad(format!("{}: {v}", m.name)));
            }
        }
        if let Some(v) = self.goal_graph.validate().into_iter().next() {
            return Err(bad(format!("goal graph: {v}")));
        }
        let report = compute_report(&self.as_is, &self.to_be, &self.correspondence, &self.problems).map_err(bad)?;
        if report != self.report {
            return Err(bad("stored report differs from a fresh alignment".into()));
        }
        Ok(())
    }

    /// The four label sets similarity is computed over: enterprise goal
    /// labels, To-Be place labels, To-Be strategy labels and component
    /// names, all normalized.
    pub fn label_sets(&self) -> [BTreeSet<String>; 4] {
        let goals = self
            .goal_graph
            .nodes
            .iter()
            .filter(|n| n.kind == NodeKind::Goal && n.owner == Owner::Enterprise)
            .map(|n| normalize_label(&n.label))
            .collect();
        let places = self.to_be.places.iter().map(|p| normalize_label(&p.label)).collect();
        let strategies = self.to_be.fragments.iter().map(|f| f.strategy.normalized()).collect();
        let components = self.component_map.all_components().into_iter().map(normalize_label).collect();
        [goals, places, strategies, components]
    }
}

fn compute_report(
    as_is: &ProcessModel,
    to_be: &ProcessModel,
    corr: &PlaceCorrespondence,
    problems: &[Problem],
) -> Result<AlignmentReport, String> {
    let mut report = align(as_is, to_be, corr).map_err(|e| e.to_string())?;
    if !problems.is_empty() {
        report.apply_registry(problems).map_err(|e| e.to_string())?;
    }
    Ok(report)
}

/// Relative weights of the goal, place, strategy and component terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityWeights {
    pub goals: f64,
    pub places: f64,
    pub strategies: f64,
    pub components: f64,
}

impl Default for SimilarityWeights {
    fn default() -> Self {
        SimilarityWeights {
            goals: 0.25,
            places: 0.25,
            strategies: 0.25,
            components: 0.25,
        }
    }
}

impl SimilarityWeights {
    /// Rejects negative or non-finite weights and an all-zero vector.
    pub fn new(goals: f64, places: f64, strategies: f64, components: f64) -> Result<Self, CaseBaseError> {
        let w = SimilarityWeights {
            goals,
            places,
            strategies,
            components,
        };
        let arr = w.as_array();
        if arr.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(CaseBaseError::InvalidWeights("weights must be finite and nonnegative".into()));
        }
        if arr.iter().all(|x| *x == 0.0) {
            return Err(CaseBaseError::InvalidWeights("at least one weight must be positive".into()));
        }
        Ok(w)
    }

    fn as_array(&self) -> [f64; 4] {
        [self.goals, self.places, self.strategies, self.components]
    }

    /// Scaled to sum 1.
    pub fn normalized(&self) -> [f64; 4] {
        let arr = self.as_array();
        let sum: f64 = arr.iter().sum();
        arr.map(|x| x / sum)
    }
}

/// |a ∩ b| / |a ∪ b|, with two empty sets counting as identical.
pub fn jaccard(a: &BTreeSet<String>, b: &BTreeSet<String>) -> f64 {
    let union = a.union(b).count();
    if union == 0 {
        return 1.0;
    }
    a.intersection(b).count() as f64 / union as f64
}

/// Weighted Jaccard similarity over [`Scenario::label_sets`], in [0, 1].
pub fn similarity(a: &Scenario, b: &Scenario, w: &SimilarityWeights) -> f64 {
    let (la, lb) = (a.label_sets(), b.label_sets());
    let score: f64 = w
        .normalized()
        .iter()
        .zip(la.iter().zip(&lb))
        .map(|(w, (x, y))| w * jaccard(x, y))
        .sum();
    score.clamp(0.0, 1.0)
}

/// A set of scenarios, optionally backed by a directory.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CaseBase {
    pub scenarios: BTreeMap<Id, Scenario>,
    pub location: Option<PathBuf>,
}

impl CaseBase {
    /// An in-memory case base with no storage.
    pub fn new() -> Self {
        CaseBase::default()
    }

    pub fn len(&self) -> usize {
        self.scenarios.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scenarios.is_empty()
    }

    pub fn get(&self, id: &Id) -> Option<&Scenario> {
        self.scenarios.get(id)
    }

    /// Adds `s`, replacing an existing scenario with the same id only when
    /// `overwrite` is set. A directory-backed case base writes the scenario
    /// file and the index before returning.
    pub fn retain(&mut self, s: Scenario, overwrite: bool) -> Result<(), CaseBaseError> {
        s.validate()?;
        if !overwrite && self.scenarios.contains_key(&s.id) {
            return Err(CaseBaseError::DuplicateId(s.id));
        }
        if let Some(dir) = &self.location {
            store::write_scenario(dir, &s, self.scenarios.keys())?;
        }
        self.scenarios.insert(s.id.clone(), s);
        Ok(())
    }

    /// Top `k` scenarios by similarity to `query`, best first. Equal scores
    /// are ordered by ascending id.
    pub fn retrieve(&self, query: &Scenario, k: usize, w: &SimilarityWeights) -> Result<Vec<(Id, f64)>, CaseBaseError> {
        if self.scenarios.is_empty() {
            return Err(CaseBaseError::EmptyCaseBase);
        }
        let mut ranked: Vec<(Id, f64)> = self
            .scenarios
            .values()
            .map(|s| (s.id.clone(), similarity(s, query, w)))
            .collect();
        ranked.sort_by(|(ia, a), (ib, b)| b.total_cmp(a).then_with(|| ia.cmp(ib)));
        ranked.truncate(k);
        Ok(ranked)
    }
}

/// Result of adapting a retrieved case to a new problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReuseDraft {
    /// The retrieved To-Be model with relabeled places.
    pub model: ProcessModel,
    /// Places the correspondence did not cover; they keep their old labels.
    pub flagged_places: BTreeSet<Id>,
    /// Copied verbatim from the retrieved case.
    pub goal_graph: GoalGraph,
    pub goal_graph_needs_review: bool,
}

/// Copies the retrieved To-Be model, giving each mapped place the label of
/// its counterpart in `vocabulary`. Ids, fragments, arcs and strategies are
/// untouched.
pub fn reuse(retrieved: &Scenario, corr: &PlaceCorrespondence, vocabulary: &ProcessModel) -> Result<ReuseDraft, CaseBaseError> {
    if !corr.is_injective() {
        return Err(CaseBaseError::Correspondence("two places map to the same target".into()));
    }
    let mut model = retrieved.to_be.clone();
    for (from, to) in &corr.pairs {
        if model.place(from).is_none() {
            return Err(CaseBaseError::Correspondence(format!("{from} is not a place of {}", model.name)));
        }
        if vocabulary.place(to).is_none() {
            return Err(CaseBaseError::Correspondence(format!("{to} is not a place of {}", vocabulary.name)));
        }
    }
    let mut flagged_places = BTreeSet::new();
    for p in &mut model.places {
        match corr.pairs.get(&p.id).and_then(|to| vocabulary.place(to)) {
            Some(v) => p.label = v.label.clone(),
            None => {
                flagged_places.insert(p.id.clone());
            }
        }
    }
    Ok(ReuseDraft {
        model,
        flagged_places,
        goal_graph: retrieved.goal_graph.clone(),
        goal_graph_needs_review: true,
    })
}

/// Fulfilment check of a reuse draft.
pub fn test_reuse(draft: &ProcessModel, bound: usize) -> FulfilmentReport {
    draft.check_fulfilment(bound)
}

pub use store::{load, save};
