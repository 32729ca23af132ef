//! Token-game semantics: enabling, firing and bounded reachability.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Fragment, Marking, NetError, PlaceRole, ProcessModel};
use crate::id::Id;

/// Default cap on the number of distinct markings explored.
pub const DEFAULT_BOUND: usize = 10_000;

/// Whether the exit state can be reached from the initial marking.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FulfilmentReport {
    pub exit_reachable: bool,
    /// Fragments enabled in no explored marking.
    pub dead_fragments: BTreeSet<Id>,
    pub explored_markings: usize,
    /// Exploration stopped at the bound; when false the result is exact.
    pub bound_hit: bool,
}

struct Exploration {
    markings: BTreeSet<Marking>,
    ever_enabled: BTreeSet<Id>,
    bound_hit: bool,
}

fn is_enabled(f: &Fragment, m: &Marking) -> bool {
    f.sources.iter().all(|p| m.get(p) >= 1)
}

impl ProcessModel {
    /// Fragments whose every source place holds at least one token.
    pub fn enabled(&self, m: &Marking) -> BTreeSet<Id> {
        self.fragments
            .iter()
            .filter(|f| is_enabled(f, m))
            .map(|f| f.id.clone())
            .collect()
    }

    /// Consumes one token from each source and produces one on each target.
    pub fn fire(&self, m: &Marking, fragment: &Id) -> Result<Marking, NetError> {
        let f = self
            .fragment(fragment)
            .ok_or_else(|| NetError::UnknownFragment(fragment.clone()))?;
        if !is_enabled(f, m) {
            return Err(NetError::NotEnabled(fragment.clone()));
        }
        Ok(fire_unchecked(f, m))
    }

    /// All markings reachable from the initial marking, capped at `bound`
    /// distinct markings (a bound of zero is treated as one).
    pub fn reachable(&self, bound: usize) -> BTreeSet<Marking> {
        self.explore(bound).markings
    }

    pub fn check_fulfilment(&self, bound: usize) -> FulfilmentReport {
        let ex = self.explore(bound);
        let exits: Vec<&Id> = self
            .places
            .iter()
            .filter(|p| p.role == PlaceRole::Exit)
            .map(|p| &p.id)
            .collect();
        let exit_reachable = ex
            .markings
            .iter()
            .any(|m| exits.iter().any(|p| m.get(p) >= 1));
        let dead_fragments = self
            .fragments
            .iter()
            .filter(|f| !ex.ever_enabled.contains(&f.id))
            .map(|f| f.id.clone())
            .collect();
        FulfilmentReport {
            exit_reachable,
            dead_fragments,
            explored_markings: ex.markings.len(),
            bound_hit: ex.bound_hit,
        }
    }

    /// Breadth-first, fragments tried in natural id order, so a smaller
    /// bound always yields a prefix of the exploration of a larger one.
    fn explore(&self, bound: usize) -> Exploration {
        let bound = bound.max(1);
        let mut order: Vec<&Fragment> = self.fragments.iter().collect();
        order.sort_by(|a, b| a.id.cmp(&b.id));

        let mut seen: HashSet<Marking> = HashSet::new();
        let mut queue = VecDeque::new();
        let mut ever_enabled = BTreeSet::new();
        let mut bound_hit = false;

        seen.insert(self.initial_marking.clone());
        queue.push_back(self.initial_marking.clone());
        while let Some(m) = queue.pop_front() {
            for f in order.iter().filter(|f| is_enabled(f, &m)) {
                ever_enabled.insert(f.id.clone());
                let next = fire_unchecked(f, &m);
                if seen.contains(&next) {
                    continue;
                }
                if seen.len() >= bound {
                    bound_hit = true;
                    continue;
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
        Exploration {
            markings: seen.into_iter().collect(),
            ever_enabled,
            bound_hit,
        }
    }
}

fn fire_unchecked(f: &Fragment, m: &Marking) -> Marking {
    let mut next = m.clone();
    for p in &f.sources {
        next.set(p.clone(), next.get(p) - 1);
    }
    for p in &f.targets {
        next.set(p.clone(), next.get(p).saturating_add(1));
    }
    next
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::tests::electrotech_asis;
    use crate::net::{ModelKind, Place, StrategyLabel};

    fn marking(pairs: &[(&str, u32)]) -> Marking {
        pairs.iter().map(|&(p, n)| (p, n)).collect()
    }

    fn electrotech_tobe() -> ProcessModel {
        let mut m = electrotech_asis();
        m.name = "Electro Tech To-Be".into();
        m.kind = ModelKind::ToBe;
        let s = StrategyLabel::new;
        m.fragments = vec![
            Fragment::new("PF1", ["I0"], ["I1"], s("planning strategy")),
            Fragment::new("PF2", ["I1"], ["I2"], s("backward strategy")),
            Fragment::new("PF3", ["I1"], ["I2"], s("forward strategy")),
            Fragment::new("PF4", ["I2"], ["I3"], s("LIFO")),
            Fragment::new("PF5", ["I2"], ["I3"], s("FIFO")),
            Fragment::new("PF6", ["I3"], ["I3"], s("Reservation Strategy")),
            Fragment::new("PF7", ["I3"], ["I3"], s("Quality Inspection Strategy")),
            Fragment::new("PF8", ["I3"], ["exit"], s("Financial Control Strategy")),
        ];
        m
    }

    fn ids(xs: &[&str]) -> BTreeSet<Id> {
        xs.iter().map(|&x| Id::from(x)).collect()
    }

    #[test]
    fn enabled_sets() {
        assert_eq!(electrotech_asis().enabled(&marking(&[("I0", 1)])), ids(&["PF1"]));
        assert_eq!(electrotech_tobe().enabled(&marking(&[("I1", 1)])), ids(&["PF2", "PF3"]));
        assert!(electrotech_tobe().enabled(&Marking::new()).is_empty());
    }

    #[test]
    fn firing() {
        let asis = electrotech_asis();
        assert_eq!(asis.fire(&marking(&[("I0", 1)]), &"PF1".into()), Ok(marking(&[("I1", 1)])));
        let tobe = electrotech_tobe();
        let at_stock = marking(&[("I3", 1)]);
        assert_eq!(tobe.fire(&at_stock, &"PF6".into()), Ok(at_stock.clone()));
        assert_eq!(asis.fire(&at_stock, &"PF1".into()), Err(NetError::NotEnabled("PF1".into())));
        assert_eq!(asis.fire(&at_stock, &"PF9".into()), Err(NetError::UnknownFragment("PF9".into())));
    }

    #[test]
    fn chain_reachability() {
        // Hand enumeration: the token walks I0 -> I1 -> I2 -> I3 -> exit.
        let expected: BTreeSet<Marking> = ["I0", "I1", "I2", "I3", "exit"]
            .iter()
            .map(|&p| marking(&[(p, 1)]))
            .collect();
        assert_eq!(electrotech_asis().reachable(100), expected);
        assert_eq!(electrotech_tobe().reachable(100), expected);
    }

    #[test]
    fn no_fragments_only_initial_marking() {
        let mut m = electrotech_asis();
        m.fragments.clear();
        assert_eq!(m.reachable(100), [marking(&[("I0", 1)])].into());
        let r = m.check_fulfilment(100);
        assert!(!r.exit_reachable);
        assert_eq!(r.explored_markings, 1);
    }

    #[test]
    fn fulfilment_of_tobe() {
        let r = electrotech_tobe().check_fulfilment(DEFAULT_BOUND);
        assert!(r.exit_reachable);
        assert!(r.dead_fragments.is_empty());
        assert!(!r.bound_hit);
        assert_eq!(r.explored_markings, 5);
    }

    #[test]
    fn detached_exit_is_unreachable() {
        let mut m = electrotech_asis();
        m.fragments.pop();
        m.places.push(Place::new("I4", "orphan", PlaceRole::Intermediate));
        let r = m.check_fulfilment(DEFAULT_BOUND);
        assert!(!r.exit_reachable);
        assert!(r.dead_fragments.is_empty());
    }

    #[test]
    fn dead_fragment_detected() {
        let mut m = electrotech_asis();
        m.places.push(Place::new("I9", "never marked", PlaceRole::Intermediate));
        m.fragments.push(Fragment::new("PF5", ["I9"], ["I3"], StrategyLabel::new("x")));
        assert_eq!(m.check_fulfilment(100).dead_fragments, ids(&["PF5"]));
    }

    #[test]
    fn unbounded_net_hits_bound() {
        let mut m = electrotech_asis();
        // I0 regenerates itself while emitting a token into I1.
        m.fragments.push(Fragment::new("PF0", ["I0"], ["I0", "I1"], StrategyLabel::new("pump")));
        let r = m.check_fulfilment(50);
        assert!(r.bound_hit);
        assert_eq!(r.explored_markings, 50);
        assert!(m.reachable(10).is_subset(&m.reachable(50)));
    }
}
