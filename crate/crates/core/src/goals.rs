//! Goal graphs: needs, goals, objectives and requirements, the stakeholders
//! who determine them, and the process fragments that realise them.
//!
//! Every node-to-node edge points upward: a derived goal points at its need,
//! a sub-goal at the goal it decomposes, an ERP goal at the enterprise goal
//! it supports.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::id::{normalize_label, Id};
use crate::net::ProcessModel;
use crate::violation::{Violation, ViolationCode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GoalError {
    #[error("unknown goal node {0}")]
    UnknownNode(Id),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stakeholder {
    pub id: Id,
    pub name: String,
    pub category: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Need,
    Goal,
    Objective,
    Requirement,
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeKind::Need => "need",
            NodeKind::Goal => "goal",
            NodeKind::Objective => "objective",
            NodeKind::Requirement => "requirement",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GoalLevel {
    Strategic,
    Operational,
    Unspecified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Owner {
    Enterprise,
    Erp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoalNode {
    pub id: Id,
    pub label: String,
    pub kind: NodeKind,
    pub level: GoalLevel,
    pub owner: Owner,
    /// A change goal, elicited from current goals and process models.
    pub change: bool,
}

impl GoalNode {
    pub fn new(id: impl Into<Id>, kind: NodeKind, label: impl Into<String>) -> Self {
        GoalNode {
            id: id.into(),
            label: label.into(),
            kind,
            level: GoalLevel::Unspecified,
            owner: Owner::Enterprise,
            change: false,
        }
    }

    pub fn level(mut self, level: GoalLevel) -> Self {
        self.level = level;
        self
    }

    pub fn owner(mut self, owner: Owner) -> Self {
        self.owner = owner;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecompositionMode {
    And,
    Or,
}

/// What a goal is realised by: a whole process model or one of its fragments.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Realisation {
    pub model: String,
    pub fragment: Option<Id>,
}

impl Realisation {
    pub fn model(model: impl Into<String>) -> Self {
        Realisation {
            model: model.into(),
            fragment: None,
        }
    }

    pub fn fragment(model: impl Into<String>, fragment: impl Into<Id>) -> Self {
        Realisation {
            model: model.into(),
            fragment: Some(fragment.into()),
        }
    }

    /// True if the referenced model (and fragment, if any) is `m`.
    pub fn is_in(&self, m: &ProcessModel) -> bool {
        normalize_label(&self.model) == normalize_label(&m.name)
            && self.fragment.as_ref().is_none_or(|f| m.fragment(f).is_some())
    }
}

impl fmt::Display for Realisation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.fragment {
            Some(frag) => write!(f, "{}/{}", self.model, frag),
            None => f.write_str(&self.model),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    DerivesFrom { to: Id },
    Decomposes { to: Id, mode: DecompositionMode },
    Supports { to: Id },
    DeterminedBy { stakeholder: Id },
    RealisedBy { target: Realisation },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GoalEdge {
    pub from: Id,
    pub kind: EdgeKind,
}

impl GoalEdge {
    pub fn derives(from: impl Into<Id>, to: impl Into<Id>) -> Self {
        GoalEdge {
            from: from.into(),
            kind: EdgeKind::DerivesFrom { to: to.into() },
        }
    }

    pub fn decomposes(from: impl Into<Id>, to: impl Into<Id>, mode: DecompositionMode) -> Self {
        GoalEdge {
            from: from.into(),
            kind: EdgeKind::Decomposes { to: to.into(), mode },
        }
    }

    pub fn supports(from: impl Into<Id>, to: impl Into<Id>) -> Self {
        GoalEdge {
            from: from.into(),
            kind: EdgeKind::Supports { to: to.into() },
        }
    }

    pub fn determined_by(from: impl Into<Id>, stakeholder: impl Into<Id>) -> Self {
        GoalEdge {
            from: from.into(),
            kind: EdgeKind::DeterminedBy {
                stakeholder: stakeholder.into(),
            },
        }
    }

    pub fn realised_by(from: impl Into<Id>, target: Realisation) -> Self {
        GoalEdge {
            from: from.into(),
            kind: EdgeKind::RealisedBy { target },
        }
    }

    /// The node this edge points at, for node-to-node edges.
    pub fn to_node(&self) -> Option<&Id> {
        match &self.kind {
            EdgeKind::DerivesFrom { to } | EdgeKind::Decomposes { to, .. } | EdgeKind::Supports { to } => Some(to),
            EdgeKind::DeterminedBy { .. } | EdgeKind::RealisedBy { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoalGraph {
    pub stakeholders: Vec<Stakeholder>,
    pub nodes: Vec<GoalNode>,
    pub edges: Vec<GoalEdge>,
}

/// A walk from one node up to root needs and down to realisations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub node: Id,
    /// Paths starting at the node and ending at a node with no parent.
    pub up: Vec<Vec<Id>>,
    /// Paths starting at the node and ending at a realisation or at a node
    /// with nothing below it.
    pub down: Vec<Vec<TraceStep>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceStep {
    Node(Id),
    Realisation(Realisation),
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceStep::Node(id) => write!(f, "{id}"),
            TraceStep::Realisation(r) => write!(f, "[{r}]"),
        }
    }
}

/// Which enterprise leaf goals some realised ERP goal supports.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportReport {
    /// Supported goal -> the realised ERP nodes supporting it.
    pub supported: BTreeMap<Id, BTreeSet<Id>>,
    pub unsupported: BTreeSet<Id>,
}

impl GoalGraph {
    pub fn node(&self, id: &Id) -> Option<&GoalNode> {
        self.nodes.iter().find(|n| &n.id == id)
    }

    /// Every broken edge-kind rule and cycle; empty iff the graph is valid.
    pub fn validate(&self) -> Vec<Violation> {
        use ViolationCode::*;
        let mut out = Vec::new();

        let mut seen = HashSet::new();
        for s in &self.stakeholders {
            if !seen.insert(&s.id) {
                out.push(Violation::new(DuplicateStakeholder, s.id.clone(), format!("stakeholder {} declared more than once", s.id)));
            }
        }
        let mut nodes: HashMap<&Id, &GoalNode> = HashMap::new();
        for n in &self.nodes {
            if nodes.insert(&n.id, n).is_some() {
                out.push(Violation::new(DuplicateNode, n.id.clone(), format!("node {} declared more than once", n.id)));
            }
            if n.kind == NodeKind::Need && n.owner != Owner::Enterprise {
                out.push(Violation::new(NeedNotEnterprise, n.id.clone(), format!("need {} must be owned by the enterprise", n.id)));
            }
            if n.change && n.kind != NodeKind::Goal {
                out.push(Violation::new(ChangeOnNonGoal, n.id.clone(), format!("only goals can be change goals, {} is a {}", n.id, n.kind)));
            }
        }

        for e in &self.edges {
            let Some(from) = nodes.get(&e.from) else {
                out.push(Violation::new(DanglingNodeRef, e.from.clone(), format!("edge from unknown node {}", e.from)));
                continue;
            };
            let to = match e.to_node() {
                Some(to) => match nodes.get(to) {
                    Some(n) => Some(*n),
                    None => {
                        out.push(Violation::new(DanglingNodeRef, e.from.clone(), format!("edge from {} to unknown node {}", e.from, to)));
                        continue;
                    }
                },
                None => None,
            };
            match (&e.kind, to) {
                (EdgeKind::DerivesFrom { .. }, Some(to)) => {
                    let ok = matches!(
                        (from.kind, to.kind),
                        (NodeKind::Goal, NodeKind::Need)
                            | (NodeKind::Objective, NodeKind::Need)
                            | (NodeKind::Requirement, NodeKind::Objective)
                    );
                    if !ok {
                        out.push(Violation::new(BadDerivesKinds, e.from.clone(), format!("a {} cannot derive from a {} ({} -> {})", from.kind, to.kind, from.id, to.id)));
                    }
                }
                (EdgeKind::Decomposes { .. }, Some(to)) => {
                    if from.kind != to.kind {
                        out.push(Violation::new(BadDecomposesKinds, e.from.clone(), format!("{} ({}) cannot decompose {} ({})", from.id, from.kind, to.id, to.kind)));
                    }
                }
                (EdgeKind::Supports { .. }, Some(to)) => {
                    if from.owner != Owner::Erp || to.owner != Owner::Enterprise {
                        out.push(Violation::new(BadSupportsDirection, e.from.clone(), format!("supports must run from an ERP node to an enterprise node ({} -> {})", from.id, to.id)));
                    }
                }
                (EdgeKind::DeterminedBy { stakeholder }, _) => {
                    if !self.stakeholders.iter().any(|s| &s.id == stakeholder) {
                        out.push(Violation::new(DanglingStakeholderRef, e.from.clone(), format!("{} is determined by unknown stakeholder {}", e.from, stakeholder)));
                    }
                }
                (EdgeKind::RealisedBy { .. }, _) if !matches!(from.kind, NodeKind::Goal | NodeKind::Objective) => {
                    out.push(Violation::new(BadRealisedBySource, e.from.clone(), format!("only goals and objectives are realised by processes, {} is a {}", from.id, from.kind)));
                }
                _ => {}
            }
        }

        let decomposes = self.node_edges(|k| matches!(k, EdgeKind::Decomposes { .. }));
        for id in back_edges(&decomposes) {
            out.push(Violation::new(DecompositionCycle, id.clone(), format!("decomposition cycle through {id}")));
        }
        let derives = self.node_edges(|k| matches!(k, EdgeKind::DerivesFrom { .. }));
        for id in back_edges(&derives) {
            out.push(Violation::new(DerivationCycle, id.clone(), format!("derivation cycle through {id}")));
        }
        out
    }

    fn node_edges(&self, pick: impl Fn(&EdgeKind) -> bool) -> BTreeMap<&Id, BTreeSet<&Id>> {
        let mut adj: BTreeMap<&Id, BTreeSet<&Id>> = BTreeMap::new();
        for e in self.edges.iter().filter(|e| pick(&e.kind)) {
            if let Some(to) = e.to_node() {
                adj.entry(&e.from).or_default().insert(to);
            }
        }
        adj
    }

    /// Nodes of `kind` that are not further decomposed.
    pub fn leaves(&self, kind: NodeKind) -> BTreeSet<Id> {
        let decomposed: HashSet<&Id> = self
            .edges
            .iter()
            .filter(|e| matches!(e.kind, EdgeKind::Decomposes { .. }))
            .filter(|e| self.node(&e.from).is_some_and(|n| n.kind == kind))
            .filter_map(GoalEdge::to_node)
            .collect();
        self.nodes
            .iter()
            .filter(|n| n.kind == kind && !decomposed.contains(&n.id))
            .map(|n| n.id.clone())
            .collect()
    }

    /// Walks upward along derivation and decomposition edges, and downward
    /// through sub-goals, derived nodes and supporting ERP nodes to the
    /// processes that realise them. Paths are simple and sorted by id.
    pub fn trace(&self, node: &Id) -> Result<Trace, GoalError> {
        if self.node(node).is_none() {
            return Err(GoalError::UnknownNode(node.clone()));
        }
        let mut up_adj: BTreeMap<&Id, BTreeSet<&Id>> = BTreeMap::new();
        let mut down_adj: BTreeMap<&Id, BTreeSet<&Id>> = BTreeMap::new();
        let mut realised: BTreeMap<&Id, BTreeSet<&Realisation>> = BTreeMap::new();
        for e in &self.edges {
            match &e.kind {
                EdgeKind::DerivesFrom { to } | EdgeKind::Decomposes { to, .. } => {
                    up_adj.entry(&e.from).or_default().insert(to);
                    down_adj.entry(to).or_default().insert(&e.from);
                }
                EdgeKind::Supports { to } => {
                    down_adj.entry(to).or_default().insert(&e.from);
                }
                EdgeKind::RealisedBy { target } => {
                    realised.entry(&e.from).or_default().insert(target);
                }
                EdgeKind::DeterminedBy { .. } => {}
            }
        }

        let mut up = Vec::new();
        let mut path = vec![node];
        walk_up(&up_adj, &mut path, &mut up);

        let mut down = Vec::new();
        let mut path = vec![node];
        walk_down(&down_adj, &realised, &mut path, &mut down);

        Ok(Trace {
            node: node.clone(),
            up,
            down,
        })
    }

    /// Support check against a single To-Be model.
    pub fn support_check(&self, to_be: &ProcessModel) -> SupportReport {
        self.support_check_all(&[to_be])
    }

    /// An enterprise leaf goal is supported iff some ERP node supports it and
    /// is realised by one of `models` or a fragment present in one of them.
    pub fn support_check_all(&self, models: &[&ProcessModel]) -> SupportReport {
        let realised_erp: BTreeSet<&Id> = self
            .edges
            .iter()
            .filter(|e| self.node(&e.from).is_some_and(|n| n.owner == Owner::Erp))
            .filter(|e| match &e.kind {
                EdgeKind::RealisedBy { target } => models.iter().any(|m| target.is_in(m)),
                _ => false,
            })
            .map(|e| &e.from)
            .collect();

        let mut report = SupportReport::default();
        for goal in self.leaves(NodeKind::Goal) {
            if self.node(&goal).is_none_or(|n| n.owner != Owner::Enterprise) {
                continue;
            }
            let supporters: BTreeSet<Id> = self
                .edges
                .iter()
                .filter(|e| matches!(&e.kind, EdgeKind::Supports { to } if *to == goal))
                .filter(|e| realised_erp.contains(&e.from))
                .map(|e| e.from.clone())
                .collect();
            if supporters.is_empty() {
                report.unsupported.insert(goal);
            } else {
                report.supported.insert(goal, supporters);
            }
        }
        report
    }
}

fn walk_up<'a>(adj: &BTreeMap<&'a Id, BTreeSet<&'a Id>>, path: &mut Vec<&'a Id>, out: &mut Vec<Vec<Id>>) {
    let here = *path.last().expect("path is never empty");
    let next: Vec<&Id> = adj
        .get(here)
        .into_iter()
        .flatten()
        .copied()
        .filter(|n| !path.contains(n))
        .collect();
    if next.is_empty() {
        out.push(path.iter().map(|&id| id.clone()).collect());
        return;
    }
    for n in next {
        path.push(n);
        walk_up(adj, path, out);
        path.pop();
    }
}

fn walk_down<'a>(
    adj: &BTreeMap<&'a Id, BTreeSet<&'a Id>>,
    realised: &BTreeMap<&'a Id, BTreeSet<&'a Realisation>>,
    path: &mut Vec<&'a Id>,
    out: &mut Vec<Vec<TraceStep>>,
) {
    let here = *path.last().expect("path is never empty");
    let as_steps = |path: &[&Id]| -> Vec<TraceStep> { path.iter().map(|&id| TraceStep::Node(id.clone())).collect() };
    let targets = realised.get(here);
    let next: Vec<&Id> = adj
        .get(here)
        .into_iter()
        .flatten()
        .copied()
        .filter(|n| !path.contains(n))
        .collect();
    if targets.is_none() && next.is_empty() {
        out.push(as_steps(path));
        return;
    }
    for r in targets.into_iter().flatten() {
        let mut steps = as_steps(path);
        steps.push(TraceStep::Realisation((*r).clone()));
        out.push(steps);
    }
    for n in next {
        path.push(n);
        walk_down(adj, realised, path, out);
        path.pop();
    }
}

/// Nodes at which a depth-first search finds a back edge, one per cycle
/// closing edge.
fn back_edges<'a>(adj: &BTreeMap<&'a Id, BTreeSet<&'a Id>>) -> Vec<&'a Id> {
    #[derive(Clone, Copy, PartialEq)]
    enum Colour {
        Grey,
        Black,
    }
    fn visit<'a>(
        n: &'a Id,
        adj: &BTreeMap<&'a Id, BTreeSet<&'a Id>>,
        colour: &mut HashMap<&'a Id, Colour>,
        out: &mut Vec<&'a Id>,
    ) {
        colour.insert(n, Colour::Grey);
        for &m in adj.get(n).into_iter().flatten() {
            match colour.get(m) {
                Some(Colour::Grey) => out.push(m),
                Some(Colour::Black) => {}
                None => visit(m, adj, colour, out),
            }
        }
        colour.insert(n, Colour::Black);
    }
    let mut colour = HashMap::new();
    let mut out = Vec::new();
    for &n in adj.keys() {
        if !colour.contains_key(n) {
            visit(n, adj, &mut colour, &mut out);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{Fragment, ModelKind, Place, PlaceRole, StrategyLabel};
    use DecompositionMode::And;

    fn electrotech() -> GoalGraph {
        let mut g = GoalGraph::default();
        g.stakeholders.push(Stakeholder {
            id: "S1".into(),
            name: "management".into(),
            category: "manager".into(),
        });
        g.nodes = vec![
            GoalNode::new("N1", NodeKind::Need, "need for information").level(GoalLevel::Strategic),
            GoalNode::new("G1", NodeKind::Goal, "improve IS services").level(GoalLevel::Strategic),
            GoalNode::new("G2", NodeKind::Goal, "automate payroll"),
            GoalNode::new("G3", NodeKind::Goal, "automate invoicing"),
            GoalNode::new("G4", NodeKind::Goal, "update inventory"),
            GoalNode::new("G5", NodeKind::Goal, "satisfy customer need for information from suppliers"),
            GoalNode::new("O1", NodeKind::Objective, "supply with the latest technology"),
        ];
        g.edges = vec![
            GoalEdge::derives("G1", "N1"),
            GoalEdge::derives("G2", "N1"),
            GoalEdge::derives("G3", "N1"),
            GoalEdge::derives("G4", "N1"),
            GoalEdge::derives("G5", "N1"),
            GoalEdge::decomposes("G2", "G1", And),
            GoalEdge::decomposes("G3", "G1", And),
            GoalEdge::decomposes("G4", "G1", And),
            GoalEdge::derives("O1", "N1"),
            GoalEdge::determined_by("O1", "S1"),
            GoalEdge::realised_by("G1", Realisation::model("Electro Tech To-Be")),
        ];
        g
    }

    fn ids(xs: &[&str]) -> BTreeSet<Id> {
        xs.iter().map(|&x| Id::from(x)).collect()
    }

    fn codes(v: &[Violation]) -> Vec<ViolationCode> {
        v.iter().map(|v| v.code).collect()
    }

    #[test]
    fn electrotech_graph_is_valid() {
        assert_eq!(electrotech().validate(), vec![]);
    }

    #[test]
    fn supports_must_point_at_enterprise() {
        let mut g = electrotech();
        g.nodes.push(GoalNode::new("E1", NodeKind::Goal, "SAP goal").owner(Owner::Erp));
        g.edges.push(GoalEdge::supports("G2", "E1"));
        assert_eq!(codes(&g.validate()), [ViolationCode::BadSupportsDirection]);
    }

    #[test]
    fn decomposition_cycle() {
        let g = GoalGraph {
            nodes: vec![GoalNode::new("a", NodeKind::Goal, "a"), GoalNode::new("b", NodeKind::Goal, "b")],
            edges: vec![GoalEdge::decomposes("a", "b", And), GoalEdge::decomposes("b", "a", And)],
            ..GoalGraph::default()
        };
        assert_eq!(codes(&g.validate()), [ViolationCode::DecompositionCycle]);
    }

    #[test]
    fn edge_kind_table() {
        let mut g = electrotech();
        g.nodes.push(GoalNode::new("R1", NodeKind::Requirement, "r"));
        g.nodes.push(GoalNode::new("N2", NodeKind::Need, "erp need").owner(Owner::Erp));
        g.nodes.push({
            let mut n = GoalNode::new("O2", NodeKind::Objective, "changed objective");
            n.change = true;
            n
        });
        g.edges.push(GoalEdge::derives("R1", "N1"));
        g.edges.push(GoalEdge::decomposes("R1", "O1", And));
        g.edges.push(GoalEdge::realised_by("R1", Realisation::model("x")));
        g.edges.push(GoalEdge::determined_by("R1", "S9"));
        g.edges.push(GoalEdge::derives("R1", "Z9"));
        assert_eq!(
            codes(&g.validate()),
            [
                ViolationCode::NeedNotEnterprise,
                ViolationCode::ChangeOnNonGoal,
                ViolationCode::BadDerivesKinds,
                ViolationCode::BadDecomposesKinds,
                ViolationCode::BadRealisedBySource,
                ViolationCode::DanglingStakeholderRef,
                ViolationCode::DanglingNodeRef,
            ]
        );
    }

    #[test]
    fn goal_leaves() {
        let g = electrotech();
        assert_eq!(g.leaves(NodeKind::Goal), ids(&["G2", "G3", "G4", "G5"]));
        assert!(GoalGraph::default().leaves(NodeKind::Goal).is_empty());
        let mut single = GoalGraph::default();
        single.nodes.push(GoalNode::new("N", NodeKind::Need, "n"));
        assert!(single.leaves(NodeKind::Goal).is_empty());
    }

    #[test]
    fn trace_up_to_need() {
        let t = electrotech().trace(&"G2".into()).unwrap();
        let up: Vec<Vec<&str>> = t.up.iter().map(|p| p.iter().map(Id::as_str).collect()).collect();
        assert_eq!(up, vec![vec!["G2", "G1", "N1"], vec!["G2", "N1"]]);
        assert_eq!(t.down, vec![vec![TraceStep::Node("G2".into())]]);

        let t = electrotech().trace(&"G1".into()).unwrap();
        assert!(t.down.contains(&vec![
            TraceStep::Node("G1".into()),
            TraceStep::Realisation(Realisation::model("Electro Tech To-Be")),
        ]));
    }

    #[test]
    fn trace_isolated_node() {
        let mut g = GoalGraph::default();
        g.nodes.push(GoalNode::new("X", NodeKind::Goal, "x"));
        let t = g.trace(&"X".into()).unwrap();
        assert_eq!(t.up, vec![vec![Id::from("X")]]);
        assert_eq!(t.down, vec![vec![TraceStep::Node("X".into())]]);
        assert_eq!(g.trace(&"Y".into()), Err(GoalError::UnknownNode("Y".into())));
    }

    fn tiny_tobe() -> ProcessModel {
        let mut m = ProcessModel::new("Tiny To-Be", ModelKind::ToBe);
        m.places = vec![Place::new("I0", "a", PlaceRole::Start), Place::new("I1", "b", PlaceRole::Exit)];
        m.fragments = vec![Fragment::new("PF1", ["I0"], ["I1"], StrategyLabel::new("on-line strategy"))];
        m
    }

    #[test]
    fn support_requires_realised_erp_node() {
        let mut g = electrotech();
        assert_eq!(g.support_check(&tiny_tobe()).unsupported, ids(&["G2", "G3", "G4", "G5"]));

        g.nodes.push(GoalNode::new("E1", NodeKind::Goal, "SAP payroll").owner(Owner::Erp));
        g.edges.push(GoalEdge::supports("E1", "G2"));
        assert!(g.support_check(&tiny_tobe()).unsupported.contains(&Id::from("G2")));

        g.edges.push(GoalEdge::realised_by("E1", Realisation::fragment("Tiny To-Be", "PF1")));
        let r = g.support_check(&tiny_tobe());
        assert_eq!(r.unsupported, ids(&["G3", "G4", "G5"]));
        assert_eq!(r.supported[&Id::from("G2")], ids(&["E1"]));

        // A fragment missing from the model does not count.
        g.edges.pop();
        g.edges.push(GoalEdge::realised_by("E1", Realisation::fragment("Tiny To-Be", "PF7")));
        assert!(g.support_check(&tiny_tobe()).unsupported.contains(&Id::from("G2")));
    }
}
