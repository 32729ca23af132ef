#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::path::PathBuf;

use proptest::prelude::*;
use roc_core::alignment::{ComponentMap, PlaceCorrespondence, Problem};
use roc_core::casebase::Scenario;
use roc_core::dsl;
use roc_core::goals::GoalGraph;
use roc_core::{Fragment, Marking, ModelKind, Place, PlaceRole, ProcessModel, StrategyLabel};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(name)
}

pub fn read(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn process(name: &str) -> ProcessModel {
    dsl::parse_process(&read(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn goals(name: &str) -> GoalGraph {
    dsl::parse_goals(&read(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn cmap(name: &str) -> ComponentMap {
    dsl::parse_components(&read(name)).unwrap()
}

pub fn registry(name: &str) -> Vec<Problem> {
    dsl::parse_registry(&read(name)).unwrap()
}

pub const PROCESS_FIXTURES: &[&str] = &[
    "electrotech-asis.proc",
    "electrotech-tobe.proc",
    "alveo-sd-asis.proc",
    "alveo-sd-tobe.proc",
    "alveo-accounting-asis.proc",
    "alveo-accounting-tobe.proc",
    "alveo-logistics-asis.proc",
    "alveo-logistics-tobe.proc",
    "alveo-logistics-refined.proc",
    "query/mts-logistics-tobe.proc",
];

pub const GOAL_FIXTURES: &[&str] = &["electrotech.goals", "alveo.goals", "query/mts-logistics.goals"];

pub const CMAP_FIXTURES: &[&str] = &[
    "electrotech.cmap",
    "alveo-sd.cmap",
    "alveo-accounting.cmap",
    "alveo-logistics.cmap",
    "query/mts-logistics.cmap",
];

fn scenario(id: &str, name: &str, goals_file: &str, prefix: &str, problems: Option<&str>) -> Scenario {
    let a = process(&format!("{prefix}-asis.proc"));
    let b = process(&format!("{prefix}-tobe.proc"));
    let corr = PlaceCorrespondence::identity(&a, &b);
    let reg = problems.map(registry).unwrap_or_default();
    Scenario::build(id, name, goals(goals_file), a, b, cmap(&format!("{prefix}.cmap")), corr, reg).unwrap()
}

pub fn electrotech() -> Scenario {
    scenario("electrotech", "Electro Tech", "electrotech.goals", "electrotech", Some("electrotech.problems"))
}

pub fn alveo_sd() -> Scenario {
    scenario("alveo_sd", "ALVEO SD", "alveo.goals", "alveo-sd", None)
}

pub fn alveo_accounting() -> Scenario {
    scenario("alveo_accounting", "ALVEO accounting", "alveo.goals", "alveo-accounting", None)
}

pub fn alveo_logistics() -> Scenario {
    scenario("alveo_logistics", "ALVEO logistics", "alveo.goals", "alveo-logistics", None)
}

/// The make-to-stock logistics query, with an empty As-Is side.
pub fn mts_query() -> Scenario {
    let mut q = electrotech();
    q.id = "query".into();
    q.goal_graph = goals("query/mts-logistics.goals");
    q.to_be = process("query/mts-logistics-tobe.proc");
    q.component_map = cmap("query/mts-logistics.cmap");
    q
}

// ---------------------------------------------------------------------------
// Brute-force reachability over index vectors, sharing nothing with the
// library's exploration.

pub struct IndexNet {
    pub places: Vec<String>,
    pub exits: Vec<usize>,
    pub transitions: Vec<(Vec<usize>, Vec<usize>)>,
    pub initial: Vec<u32>,
}

impl IndexNet {
    pub fn from_model(m: &ProcessModel) -> IndexNet {
        let places: Vec<String> = m.places.iter().map(|p| p.id.as_str().to_string()).collect();
        let idx = |id: &roc_core::Id| places.iter().position(|p| p == id.as_str()).unwrap();
        IndexNet {
            exits: m
                .places
                .iter()
                .enumerate()
                .filter(|(_, p)| p.role == PlaceRole::Exit)
                .map(|(i, _)| i)
                .collect(),
            transitions: m
                .fragments
                .iter()
                .map(|f| (f.sources.iter().map(idx).collect(), f.targets.iter().map(idx).collect()))
                .collect(),
            initial: m.places.iter().map(|p| m.initial_marking.get(&p.id)).collect(),
            places,
        }
    }

    pub fn to_marking(&self, v: &[u32]) -> Marking {
        self.places.iter().cloned().zip(v.iter().copied()).collect()
    }
}

pub struct OracleResult {
    /// Every reachable marking, or `None` when there are more than `cap`.
    pub markings: Option<HashSet<Vec<u32>>>,
    pub exit_reachable: bool,
    /// Indices of transitions enabled somewhere.
    pub live: BTreeSet<usize>,
}

pub fn oracle(net: &IndexNet, cap: usize) -> OracleResult {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut queue: VecDeque<Vec<u32>> = VecDeque::new();
    let mut live = BTreeSet::new();
    seen.insert(net.initial.clone());
    queue.push_back(net.initial.clone());
    while let Some(m) = queue.pop_front() {
        for (t, (pre, post)) in net.transitions.iter().enumerate() {
            if pre.iter().any(|&p| m[p] == 0) {
                continue;
            }
            live.insert(t);
            let mut next = m.clone();
            for &p in pre {
                next[p] -= 1;
            }
            for &p in post {
                next[p] += 1;
            }
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return OracleResult {
                        markings: None,
                        exit_reachable: false,
                        live,
                    };
                }
                queue.push_back(next);
            }
        }
    }
    let exit_reachable = seen.iter().any(|m| net.exits.iter().any(|&e| m[e] > 0));
    OracleResult {
        markings: Some(seen),
        exit_reachable,
        live,
    }
}

/// Random valid nets: 2-6 places (first is start, last is exit), up to 8
/// fragments with one or two sources and targets, and a small initial
/// marking with at least one token on the start place.
pub fn arb_net() -> impl Strategy<Value = ProcessModel> {
    (2usize..=6).prop_flat_map(|n| {
        let arc = proptest::collection::btree_set(0..n, 1..=2);
        let frags = proptest::collection::vec((arc.clone(), arc, 0usize..3), 0..=8);
        let marking = proptest::collection::vec(0u32..=2, n);
        (Just(n), frags, marking)
    })
    .prop_map(|(n, frags, mut marking)| {
        let mut m = ProcessModel::new("random", ModelKind::ToBe);
        for i in 0..n {
            let role = if i == 0 {
                PlaceRole::Start
            } else if i == n - 1 {
                PlaceRole::Exit
            } else {
                PlaceRole::Intermediate
            };
            m.places.push(Place::new(format!("P{i}"), format!("place {i}"), role));
        }
        for (i, (src, tgt, s)) in frags.into_iter().enumerate() {
            let ids = |set: std::collections::BTreeSet<usize>| set.into_iter().map(|p| format!("P{p}")).collect::<Vec<_>>();
            let strategy = ["manual strategy", "on-line strategy", "FIFO"][s];
            m.fragments.push(Fragment::new(format!("F{}", i + 1), ids(src), ids(tgt), StrategyLabel::new(strategy)));
        }
        marking[0] = marking[0].max(1);
        m.initial_marking = (0..n).map(|i| (format!("P{i}"), marking[i])).collect();
        m
    })
}

/// Compares library exploration with the oracle; returns a description of
/// the first disagreement.
pub fn check_against_oracle(m: &ProcessModel, bound: usize) -> Result<(), String> {
    let net = IndexNet::from_model(m);
    let truth = oracle(&net, bound);
    let reach = m.reachable(bound);
    let report = m.check_fulfilment(bound);
    match truth.markings {
        Some(all) => {
            let expected: BTreeSet<Marking> = all.iter().map(|v| net.to_marking(v)).collect();
            if reach != expected {
                return Err(format!("{}: {} markings, oracle has {}", m.name, reach.len(), expected.len()));
            }
            if report.bound_hit {
                return Err(format!("{}: bound reported hit on a net with {} markings", m.name, expected.len()));
            }
            if report.exit_reachable != truth.exit_reachable {
                return Err(format!("{}: exit_reachable {} vs oracle {}", m.name, report.exit_reachable, truth.exit_reachable));
            }
            let dead: BTreeSet<String> = (0..m.fragments.len())
                .filter(|t| !truth.live.contains(t))
                .map(|t| m.fragments[t].id.to_string())
                .collect();
            let got: BTreeSet<String> = report.dead_fragments.iter().map(|d| d.to_string()).collect();
            if dead != got {
                return Err(format!("{}: dead {:?} vs oracle {:?}", m.name, got, dead));
            }
        }
        None => {
            if !report.bound_hit || reach.len() != bound {
                return Err(format!(
                    "{}: oracle exceeds {bound} markings but library returned {} (bound_hit {})",
                    m.name,
                    reach.len(),
                    report.bound_hit
                ));
            }
        }
    }
    Ok(())
}
