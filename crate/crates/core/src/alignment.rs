//! Strategy-level comparison of an As-Is model with its To-Be counterpart.
//!
//! Fragments are paired by their (sources, targets) endpoints under a place
//! correspondence. A paired fragment either keeps its strategy or gets a new
//! one; unpaired To-Be fragments are additions and unpaired As-Is fragments
//! are removals.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::id::Id;
use crate::net::{Fragment, ModelKind, ProcessModel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlignError {
    #[error("model {model:?} is {found}, expected {expected}")]
    ModelKind {
        model: String,
        expected: ModelKind,
        found: ModelKind,
    },
    #[error("invalid place correspondence: {0}")]
    Correspondence(String),
    #[error("problem {0} is not in the registry")]
    UnknownProblemId(Id),
    #[error("component map names unknown fragment {0}")]
    UnknownFragment(Id),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Problem {
    pub id: Id,
    pub category: String,
    pub description: String,
}

/// Maps place ids of one model onto place ids of another.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceCorrespondence {
    pub pairs: BTreeMap<Id, Id>,
}

impl PlaceCorrespondence {
    pub fn new() -> Self {
        PlaceCorrespondence::default()
    }

    pub fn insert(&mut self, from: impl Into<Id>, to: impl Into<Id>) {
        self.pairs.insert(from.into(), to.into());
    }

    /// Pairs every place id present in both models with itself.
    pub fn identity(left: &ProcessModel, right: &ProcessModel) -> Self {
        let mut corr = PlaceCorrespondence::new();
        for p in &left.places {
            if right.place(&p.id).is_some() {
                corr.insert(p.id.clone(), p.id.clone());
            }
        }
        corr
    }

    pub fn inverse(&self) -> Self {
        PlaceCorrespondence {
            pairs: self.pairs.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.pairs.values().all(|v| seen.insert(v))
    }

    /// Injective, left ids in `left`, right ids in `right`.
    pub fn check(&self, left: &ProcessModel, right: &ProcessModel) -> Result<(), AlignError> {
        let mut seen = HashSet::new();
        for (a, b) in &self.pairs {
            if left.place(a).is_none() {
                return Err(AlignError::Correspondence(format!("place {a} is not in {:?}", left.name)));
            }
            if right.place(b).is_none() {
                return Err(AlignError::Correspondence(format!("place {b} is not in {:?}", right.name)));
            }
            if !seen.insert(b) {
                return Err(AlignError::Correspondence(format!("place {b} is the image of more than one place")));
            }
        }
        Ok(())
    }

    /// Image of a place set, or `None` if some place is unmapped.
    pub fn map_set(&self, ids: &BTreeSet<Id>) -> Option<BTreeSet<Id>> {
        ids.iter().map(|id| self.pairs.get(id).cloned()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchKind {
    Unchanged,
    StrategyUpgrade,
    Added,
    Removed,
}

impl fmt::Display for MatchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatchKind::Unchanged => "unchanged",
            MatchKind::StrategyUpgrade => "strategy-upgrade",
            MatchKind::Added => "added",
            MatchKind::Removed => "removed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentMatch {
    pub as_is: Option<Id>,
    pub to_be: Option<Id>,
    pub kind: MatchKind,
    pub as_is_strategy: Option<String>,
    pub to_be_strategy: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignmentReport {
    pub as_is_model: String,
    pub to_be_model: String,
    pub matches: Vec<FragmentMatch>,
    /// Problem -> To-Be fragments resolving it. Every problem exhibited by
    /// the As-Is model has a key, possibly with an empty set.
    pub coverage: BTreeMap<Id, BTreeSet<Id>>,
    pub uncovered: BTreeSet<Id>,
    /// Category -> resolving fragments; filled once a registry is applied.
    pub category_summary: BTreeMap<String, BTreeSet<Id>>,
}

impl AlignmentReport {
    pub fn count(&self, kind: MatchKind) -> usize {
        self.matches.iter().filter(|m| m.kind == kind).count()
    }

    /// Matches other than `Unchanged`.
    pub fn gap_count(&self) -> usize {
        self.matches.len() - self.count(MatchKind::Unchanged)
    }

    /// Rolls coverage up by problem category and widens `uncovered` to every
    /// registry problem nothing resolves.
    pub fn apply_registry(&mut self, registry: &[Problem]) -> Result<CoverageSummary, AlignError> {
        let summary = problem_coverage(self, registry)?;
        self.category_summary = summary.per_category.clone();
        self.uncovered = summary.uncovered.clone();
        Ok(summary)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageSummary {
    pub per_problem: BTreeMap<Id, BTreeSet<Id>>,
    pub per_category: BTreeMap<String, BTreeSet<Id>>,
    pub uncovered: BTreeSet<Id>,
}

/// Endpoint-and-strategy comparison of two fragments; `None` when the
/// endpoints do not correspond.
pub fn classify(a: &Fragment, b: &Fragment, corr: &PlaceCorrespondence) -> Option<MatchKind> {
    let sources = corr.map_set(&a.sources)?;
    let targets = corr.map_set(&a.targets)?;
    if sources != b.sources || targets != b.targets {
        return None;
    }
    Some(if a.strategy.same_strategy(&b.strategy) {
        MatchKind::Unchanged
    } else {
        MatchKind::StrategyUpgrade
    })
}

/// Pairs As-Is with To-Be fragments and computes problem coverage.
///
/// As-Is fragments are visited in id order. Among the unclaimed To-Be
/// fragments with corresponding endpoints, one with the same strategy is
/// preferred, otherwise the lowest id becomes the upgrade partner. Leftover
/// To-Be fragments are `Added`.
pub fn align(as_is: &ProcessModel, to_be: &ProcessModel, corr: &PlaceCorrespondence) -> Result<AlignmentReport, AlignError> {
    for (m, expected) in [(as_is, ModelKind::AsIs), (to_be, ModelKind::ToBe)] {
        if m.kind != expected {
            return Err(AlignError::ModelKind {
                model: m.name.clone(),
                expected,
                found: m.kind,
            });
        }
    }
    corr.check(as_is, to_be)?;

    let mut old: Vec<&Fragment> = as_is.fragments.iter().collect();
    old.sort_by(|a, b| a.id.cmp(&b.id));
    let mut new: Vec<&Fragment> = to_be.fragments.iter().collect();
    new.sort_by(|a, b| a.id.cmp(&b.id));
    let mut claimed = vec![false; new.len()];

    let mut matches = Vec::new();
    for a in old {
        let candidates: Vec<(usize, MatchKind)> = new
            .iter()
            .enumerate()
            .filter(|(i, _)| !claimed[*i])
            .filter_map(|(i, b)| classify(a, b, corr).map(|k| (i, k)))
            .collect();
        let pick = candidates
            .iter()
            .find(|(_, k)| *k == MatchKind::Unchanged)
            .or_else(|| candidates.first())
            .copied();
        matches.push(match pick {
            Some((i, kind)) => {
                claimed[i] = true;
                FragmentMatch {
                    as_is: Some(a.id.clone()),
                    to_be: Some(new[i].id.clone()),
                    kind,
                    as_is_strategy: Some(a.strategy.text.clone()),
                    to_be_strategy: Some(new[i].strategy.text.clone()),
                }
            }
            None => FragmentMatch {
                as_is: Some(a.id.clone()),
                to_be: None,
                kind: MatchKind::Removed,
                as_is_strategy: Some(a.strategy.text.clone()),
                to_be_strategy: None,
            },
        });
    }
    for (b, _) in new.iter().zip(&claimed).filter(|(_, c)| !**c) {
        matches.push(FragmentMatch {
            as_is: None,
            to_be: Some(b.id.clone()),
            kind: MatchKind::Added,
            as_is_strategy: None,
            to_be_strategy: Some(b.strategy.text.clone()),
        });
    }

    let mut coverage: BTreeMap<Id, BTreeSet<Id>> = BTreeMap::new();
    for f in &as_is.fragments {
        for p in &f.problems {
            coverage.entry(p.clone()).or_default();
        }
    }
    for f in &to_be.fragments {
        for p in &f.resolves {
            coverage.entry(p.clone()).or_default().insert(f.id.clone());
        }
    }
    let uncovered = coverage
        .iter()
        .filter(|(_, fs)| fs.is_empty())
        .map(|(p, _)| p.clone())
        .collect();

    Ok(AlignmentReport {
        as_is_model: as_is.name.clone(),
        to_be_model: to_be.name.clone(),
        matches,
        coverage,
        uncovered,
        category_summary: BTreeMap::new(),
    })
}

/// Per-problem and per-category view of a report's coverage.
pub fn problem_coverage(report: &AlignmentReport, registry: &[Problem]) -> Result<CoverageSummary, AlignError> {
    let known: HashSet<&Id> = registry.iter().map(|p| &p.id).collect();
    if let Some(p) = report.coverage.keys().find(|p| !known.contains(p)) {
        return Err(AlignError::UnknownProblemId(p.clone()));
    }
    let mut summary = CoverageSummary::default();
    for problem in registry {
        let resolvers = report.coverage.get(&problem.id).cloned().unwrap_or_default();
        let rollup = summary.per_category.entry(problem.category.clone()).or_default();
        rollup.extend(resolvers.iter().cloned());
        if resolvers.is_empty() {
            summary.uncovered.insert(problem.id.clone());
        }
        summary.per_problem.insert(problem.id.clone(), resolvers);
    }
    Ok(summary)
}

/// Which ERP components realise each To-Be fragment.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentMap {
    pub entries: BTreeMap<Id, BTreeSet<String>>,
    /// Components applying to every fragment.
    pub global: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRow {
    /// `None` for the closing "All" row.
    pub fragment: Option<Id>,
    pub components: BTreeSet<String>,
}

impl ComponentMap {
    /// Every component name, fragment-specific or global.
    pub fn all_components(&self) -> BTreeSet<&str> {
        self.entries
            .values()
            .flatten()
            .chain(&self.global)
            .map(String::as_str)
            .collect()
    }
}

/// One row per To-Be fragment in id order, then the "All" row with the
/// global components.
pub fn component_table(to_be: &ProcessModel, cmap: &ComponentMap) -> Result<Vec<ComponentRow>, AlignError> {
    if let Some(id) = cmap.entries.keys().find(|id| to_be.fragment(id).is_none()) {
        return Err(AlignError::UnknownFragment(id.clone()));
    }
    let mut rows: Vec<ComponentRow> = to_be
        .fragment_ids()
        .into_iter()
        .map(|id| ComponentRow {
            components: cmap.entries.get(&id).cloned().unwrap_or_default(),
            fragment: Some(id),
        })
        .collect();
    rows.push(ComponentRow {
        fragment: None,
        components: cmap.global.clone(),
    });
    Ok(rows)
}
