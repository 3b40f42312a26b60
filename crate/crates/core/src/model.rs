//! Instances, queries and allocations.
//!
//! Agents and items are addressed by dense `usize` indices; the string
//! identifiers only matter for serialization. Valuations are additive and
//! stored as a dense `n × m` matrix of non-negative [`Value`]s.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// A single item value or a bundle sum.
pub type Value = i64;

/// Which extension problem an instance poses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Query {
    /// Any agent may receive open items.
    Efae,
    /// Only the listed agents may receive open items.
    Refae { recipients: Vec<usize> },
    /// At most `p` agents may receive open items.
    Fefae { p: usize },
}

impl Query {
    pub fn variant_name(&self) -> &'static str {
        match self {
            Query::Efae => "EFAE",
            Query::Refae { .. } => "REFAE",
            Query::Fefae { .. } => "FEFAE",
        }
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Efae => write!(f, "EFAE"),
            Query::Refae { recipients } => write!(f, "REFAE{recipients:?}"),
            Query::Fefae { p } => write!(f, "FEFAE(p={p})"),
        }
    }
}

/// A validated problem instance: agents, items, valuations, the partial
/// allocation and the query.
///
/// Construction goes through [`Instance::new`], which enforces every
/// structural invariant, so the rest of the crate never re-validates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    agents: Vec<String>,
    items: Vec<String>,
    values: Vec<Vec<Value>>,
    assigned: Vec<Option<usize>>,
    query: Query,
}

impl Instance {
    /// Validates the raw parts and builds an instance.
    ///
    /// `assigned[a]` is the owner of item `a` under the partial allocation,
    /// or `None` when the item is open. REFAE recipients are sorted and
    /// deduplicated.
    pub fn new(
        agents: Vec<String>,
        items: Vec<String>,
        values: Vec<Vec<Value>>,
        assigned: Vec<Option<usize>>,
        query: Query,
    ) -> Result<Self> {
        let n = agents.len();
        let m = items.len();
        unique(&agents)?;
        unique(&items)?;
        if values.len() != n {
            return Err(Error::Malformed(format!(
                "{} valuation rows for {n} agents",
                values.len()
            )));
        }
        for (agent, row) in values.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Malformed(format!(
                    "row {agent} has {} entries for {m} items",
                    row.len()
                )));
            }
            let mut sum: Value = 0;
            for (item, &value) in row.iter().enumerate() {
                if value < 0 {
                    return Err(Error::NegativeValue { agent, item, value });
                }
                sum = sum.checked_add(value).ok_or(Error::OverflowRisk { agent })?;
            }
        }
        if assigned.len() != m {
            return Err(Error::Malformed(format!(
                "assignment covers {} of {m} items",
                assigned.len()
            )));
        }
        if let Some(&bad) = assigned.iter().flatten().find(|&&a| a >= n) {
            return Err(Error::Malformed(format!("item assigned to unknown agent {bad}")));
        }
        let query = match query {
            Query::Efae => Query::Efae,
            Query::Refae { mut recipients } => {
                recipients.sort_unstable();
                recipients.dedup();
                if let Some(&bad) = recipients.iter().find(|&&r| r >= n) {
                    return Err(Error::BadQuery(format!("recipient {bad} is not one of the {n} agents")));
                }
                Query::Refae { recipients }
            }
            Query::Fefae { p } => {
                if p == 0 || p > n {
                    return Err(Error::BadQuery(format!("p = {p} outside 1..={n}")));
                }
                Query::Fefae { p }
            }
        };
        Ok(Instance {
            agents,
            items,
            values,
            assigned,
            query,
        })
    }

    /// Builds an instance with generated identifiers: agents `1..=n`, items
    /// `a1..=am`.
    pub fn from_matrix(values: Vec<Vec<Value>>, assigned: Vec<Option<usize>>, query: Query) -> Result<Self> {
        let n = values.len();
        let m = assigned.len();
        Instance::new(default_agent_ids(n), default_item_ids(m), values, assigned, query)
    }

    pub fn n(&self) -> usize {
        self.agents.len()
    }

    pub fn m(&self) -> usize {
        self.items.len()
    }

    pub fn agents(&self) -> &[String] {
        &self.agents
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    #[inline]
    pub fn value(&self, agent: usize, item: usize) -> Value {
        self.values[agent][item]
    }

    pub fn row(&self, agent: usize) -> &[Value] {
        &self.values[agent]
    }

    pub fn values(&self) -> &[Vec<Value>] {
        &self.values
    }

    pub fn assigned(&self) -> &[Option<usize>] {
        &self.assigned
    }

    pub fn owner_of(&self, item: usize) -> Option<usize> {
        self.assigned[item]
    }

    pub fn query(&self) -> &Query {
        &self.query
    }

    /// Open items in index order.
    pub fn open_items(&self) -> Vec<usize> {
        (0..self.m()).filter(|&a| self.assigned[a].is_none()).collect()
    }

    /// Number of open items.
    pub fn k(&self) -> usize {
        self.assigned.iter().filter(|a| a.is_none()).count()
    }

    /// The partial allocation as per-agent bundles of given items.
    pub fn given_bundles(&self) -> Vec<Vec<usize>> {
        let mut bundles = vec![Vec::new(); self.n()];
        for (item, owner) in self.assigned.iter().enumerate() {
            if let Some(agent) = owner {
                bundles[*agent].push(item);
            }
        }
        bundles
    }

    /// Same agents, items and valuations under a different query.
    pub fn with_query(&self, query: Query) -> Result<Self> {
        Instance::new(
            self.agents.clone(),
            self.items.clone(),
            self.values.clone(),
            self.assigned.clone(),
            query,
        )
    }

    /// Same instance with a different partial allocation.
    pub fn with_assigned(&self, assigned: Vec<Option<usize>>) -> Result<Self> {
        Instance::new(
            self.agents.clone(),
            self.items.clone(),
            self.values.clone(),
            assigned,
            self.query.clone(),
        )
    }

    /// Drops the open items, leaving the partial allocation as a complete
    /// allocation of the given items.
    pub fn restrict_to_given(&self) -> (Instance, Allocation) {
        let keep: Vec<usize> = (0..self.m()).filter(|&a| self.assigned[a].is_some()).collect();
        let items = keep.iter().map(|&a| self.items[a].clone()).collect();
        let values = self
            .values
            .iter()
            .map(|row| keep.iter().map(|&a| row[a]).collect())
            .collect();
        let owner: Vec<usize> = keep.iter().map(|&a| self.assigned[a].unwrap()).collect();
        let assigned = owner.iter().copied().map(Some).collect();
        let inst = Instance {
            agents: self.agents.clone(),
            items,
            values,
            assigned,
            query: Query::Efae,
        };
        (inst, Allocation::new(owner))
    }

    /// Agents allowed to receive open items under a REFAE query, or all
    /// agents otherwise.
    pub fn eligible_agents(&self) -> Vec<usize> {
        match &self.query {
            Query::Refae { recipients } => recipients.clone(),
            _ => (0..self.n()).collect(),
        }
    }
}

fn unique(ids: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(ids.len());
    for id in ids {
        if !seen.insert(id.as_str()) {
            return Err(Error::DuplicateId(id.clone()));
        }
    }
    Ok(())
}

pub fn default_agent_ids(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

pub fn default_item_ids(m: usize) -> Vec<String> {
    (1..=m).map(|j| format!("a{j}")).collect()
}

/// A complete assignment of every item to an agent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Allocation {
    owner: Vec<usize>,
}

impl Allocation {
    pub fn new(owner: Vec<usize>) -> Self {
        Allocation { owner }
    }

    /// Completes the partial allocation of `inst` with `extension`, a list of
    /// `(open item, agent)` pairs that must cover every open item exactly once.
    pub fn extend(inst: &Instance, extension: &[(usize, usize)]) -> Result<Self> {
        let mut owner: Vec<Option<usize>> = inst.assigned().to_vec();
        for &(item, agent) in extension {
            if item >= inst.m() || agent >= inst.n() {
                return Err(Error::Malformed(format!(
                    "extension pair ({item}, {agent}) out of range"
                )));
            }
            if owner[item].is_some() {
                return Err(Error::Malformed(format!("item {item} is not open or assigned twice")));
            }
            owner[item] = Some(agent);
        }
        let owner = owner
            .into_iter()
            .enumerate()
            .map(|(item, o)| o.ok_or_else(|| Error::Malformed(format!("item {item} left open"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Allocation { owner })
    }

    #[inline]
    pub fn owner(&self, item: usize) -> usize {
        self.owner[item]
    }

    pub fn owners(&self) -> &[usize] {
        &self.owner
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    pub fn bundles(&self, n: usize) -> Vec<Vec<usize>> {
        let mut bundles = vec![Vec::new(); n];
        for (item, &agent) in self.owner.iter().enumerate() {
            bundles[agent].push(item);
        }
        bundles
    }

    /// Open items and their recipients under this allocation.
    pub fn extension(&self, inst: &Instance) -> Vec<(usize, usize)> {
        inst.open_items().into_iter().map(|a| (a, self.owner[a])).collect()
    }

    /// Checks shape against `inst`: one owner per item, all owners valid.
    pub fn check_shape(&self, inst: &Instance) -> Result<()> {
        if self.owner.len() != inst.m() {
            return Err(Error::Malformed(format!(
                "allocation covers {} of {} items",
                self.owner.len(),
                inst.m()
            )));
        }
        if let Some(&bad) = self.owner.iter().find(|&&a| a >= inst.n()) {
            return Err(Error::Malformed(format!("item owned by unknown agent {bad}")));
        }
        Ok(())
    }

    /// True iff this allocation agrees with the partial allocation of `inst`.
    pub fn extends(&self, inst: &Instance) -> bool {
        self.owner.len() == inst.m()
            && inst
                .assigned()
                .iter()
                .zip(&self.owner)
                .all(|(given, &owner)| given.is_none_or(|g| g == owner))
    }

    /// True iff the open items only go to agents permitted by the query.
    pub fn respects_query(&self, inst: &Instance) -> bool {
        let receivers = self.receivers(inst);
        match inst.query() {
            Query::Efae => true,
            Query::Refae { recipients } => receivers.iter().all(|r| recipients.binary_search(r).is_ok()),
            Query::Fefae { p } => receivers.len() <= *p,
        }
    }

    /// Sorted, distinct agents that receive at least one open item.
    pub fn receivers(&self, inst: &Instance) -> Vec<usize> {
        let mut r: Vec<usize> = inst.open_items().iter().map(|&a| self.owner[a]).collect();
        r.sort_unstable();
        r.dedup();
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_instance_is_valid() {
        let inst = Instance::from_matrix(vec![vec![1], vec![1]], vec![None], Query::Efae).unwrap();
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.k(), 1);
    }

    #[test]
    fn negative_value_rejected() {
        let err = Instance::from_matrix(vec![vec![1, -1], vec![0, 0]], vec![None, None], Query::Efae).unwrap_err();
        assert!(matches!(
            err,
            Error::NegativeValue {
                agent: 0,
                item: 1,
                value: -1
            }
        ));
    }

    #[test]
    fn recipients_must_be_agents() {
        let err = Instance::from_matrix(vec![vec![1], vec![1]], vec![None], Query::Refae { recipients: vec![4] })
            .unwrap_err();
        assert!(matches!(err, Error::BadQuery(_)));
    }

    #[test]
    fn p_out_of_range() {
        for p in [0, 3] {
            let err = Instance::from_matrix(vec![vec![1], vec![1]], vec![None], Query::Fefae { p }).unwrap_err();
            assert!(matches!(err, Error::BadQuery(_)));
        }
    }

    #[test]
    fn duplicate_ids() {
        let err = Instance::new(
            vec!["x".into(), "x".into()],
            vec!["a".into()],
            vec![vec![0], vec![0]],
            vec![None],
            Query::Efae,
        )
        .unwrap_err();
        assert_eq!(err, Error::DuplicateId("x".into()));
    }

    #[test]
    fn row_overflow() {
        let err = Instance::from_matrix(vec![vec![i64::MAX, 1]], vec![None, None], Query::Efae).unwrap_err();
        assert_eq!(err, Error::OverflowRisk { agent: 0 });
    }

    #[test]
    fn extension_must_cover_open_items() {
        let inst = Instance::from_matrix(vec![vec![1, 1], vec![1, 1]], vec![Some(0), None], Query::Efae).unwrap();
        assert!(Allocation::extend(&inst, &[]).is_err());
        assert!(Allocation::extend(&inst, &[(0, 1)]).is_err());
        let alloc = Allocation::extend(&inst, &[(1, 1)]).unwrap();
        assert_eq!(alloc.owners(), &[0, 1]);
        assert!(alloc.extends(&inst));
        assert_eq!(alloc.receivers(&inst), vec![1]);
    }

    #[test]
    fn restriction_keeps_given_items() {
        let inst = Instance::from_matrix(
            vec![vec![10, 0, 1], vec![0, 10, 1]],
            vec![Some(1), Some(0), None],
            Query::Efae,
        )
        .unwrap();
        let (sub, alloc) = inst.restrict_to_given();
        assert_eq!(sub.m(), 2);
        assert_eq!(alloc.owners(), &[1, 0]);
        assert_eq!(sub.k(), 0);
    }
}
