use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::ProcessModel;
use crate::id::Id;
use crate::violation::{Violation, ViolationCode};

/// Fragments refined into children with the same endpoints but more
/// specific strategies, e.g. `PF1 -> {PF1.1, PF1.2}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementTree {
    pub children: BTreeMap<Id, Vec<Id>>,
}

impl RefinementTree {
    pub fn new() -> Self {
        RefinementTree::default()
    }

    pub fn refine<I>(&mut self, parent: impl Into<Id>, children: I)
    where
        I: IntoIterator,
        I::Item: Into<Id>,
    {
        self.children
            .entry(parent.into())
            .or_default()
            .extend(children.into_iter().map(Into::into));
    }

    /// Parents that are nobody's child.
    pub fn roots(&self) -> Vec<Id> {
        let kids: BTreeSet<&Id> = self.children.values().flatten().collect();
        self.children
            .keys()
            .filter(|p| !kids.contains(p))
            .cloned()
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    fn all_ids(&self) -> BTreeSet<&Id> {
        self.children
            .iter()
            .flat_map(|(p, cs)| std::iter::once(p).chain(cs.iter()))
            .collect()
    }
}

impl ProcessModel {
    /// Checks the dotted-id rule, the forest shape and endpoint preservation.
    ///
    /// Endpoints are compared against the root of each tree. On a valid tree
    /// this is the same as comparing every child with its parent, and it
    /// blames only the node that actually diverged.
    pub fn validate_refinement(&self, tree: &RefinementTree) -> Vec<Violation> {
        use ViolationCode::*;
        let mut out = Vec::new();

        for id in tree.all_ids() {
            if self.fragment(id).is_none() {
                out.push(Violation::new(UnknownFragment, id.clone(), format!("refinement mentions unknown fragment {id}")));
            }
        }

        let mut parent_of: BTreeMap<&Id, &Id> = BTreeMap::new();
        for (parent, kids) in &tree.children {
            for child in kids {
                if let Some(first) = parent_of.insert(child, parent) {
                    out.push(Violation::new(
                        MultipleParents,
                        child.clone(),
                        format!("{child} is refined from both {first} and {parent}"),
                    ));
                }
                if child.parent().as_ref() != Some(parent) {
                    out.push(Violation::new(
                        IdMismatch,
                        child.clone(),
                        format!("{child} does not extend {parent} by one dotted segment"),
                    ));
                }
            }
        }

        let mut reached = BTreeSet::new();
        for root in tree.roots() {
            let Some(root_frag) = self.fragment(&root) else {
                continue;
            };
            let mut stack = vec![root.clone()];
            reached.insert(root.clone());
            while let Some(node) = stack.pop() {
                for child in tree.children.get(&node).into_iter().flatten() {
                    if !reached.insert(child.clone()) {
                        continue;
                    }
                    stack.push(child.clone());
                    if let Some(cf) = self.fragment(child) {
                        if !cf.same_endpoints(root_frag) {
                            out.push(Violation::new(
                                EndpointMismatch,
                                child.clone(),
                                format!("{child} does not keep the endpoints of {root}"),
                            ));
                        }
                    }
                }
            }
        }
        // Whatever no root reaches sits on a cycle or hangs off one.
        for id in tree.all_ids() {
            if !reached.contains(id) && tree.children.contains_key(id) {
                out.push(Violation::new(RefinementCycle, id.clone(), format!("{id} is part of a refinement cycle")));
            }
        }
        out
    }
}
