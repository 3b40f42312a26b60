//! Agent and item types.
//!
//! Two agents share a type when their valuation rows are identical; two
//! items share a type when every agent values them equally. Type ids are
//! dense, 0-based, and handed out in order of first occurrence.

use std::collections::HashMap;

use crate::model::{Instance, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypePartition {
    pub agent_type_of: Vec<usize>,
    pub agent_type_members: Vec<Vec<usize>>,
    pub item_type_of: Vec<usize>,
    pub item_type_members: Vec<Vec<usize>>,
}

impl TypePartition {
    /// Number of agent types.
    pub fn n_types(&self) -> usize {
        self.agent_type_members.len()
    }

    /// Number of item types.
    pub fn m_types(&self) -> usize {
        self.item_type_members.len()
    }
}

pub fn compute_types(inst: &Instance) -> TypePartition {
    let (agent_type_of, agent_type_members) = group_by_key((0..inst.n()).map(|i| inst.row(i).to_vec()));
    let (item_type_of, item_type_members) = item_groups(inst, &(0..inst.m()).collect::<Vec<_>>());
    TypePartition {
        agent_type_of,
        agent_type_members,
        item_type_of,
        item_type_members,
    }
}

/// Groups the listed items by valuation column.
///
/// Returns, for each listed item (by position in `items`), its type id,
/// and for each type the member items (as item indices, not positions).
pub fn item_groups(inst: &Instance, items: &[usize]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let (type_of, members_pos) = group_by_key(items.iter().map(|&a| column(inst, a)));
    let members = members_pos
        .into_iter()
        .map(|ps| ps.into_iter().map(|p| items[p]).collect())
        .collect();
    (type_of, members)
}

fn column(inst: &Instance, item: usize) -> Vec<Value> {
    (0..inst.n()).map(|i| inst.value(i, item)).collect()
}

fn group_by_key(keys: impl Iterator<Item = Vec<Value>>) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut ids: HashMap<Vec<Value>, usize> = HashMap::new();
    let mut type_of = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (pos, key) in keys.enumerate() {
        let next = members.len();
        let id = *ids.entry(key).or_insert(next);
        if id == members.len() {
            members.push(Vec::new());
        }
        members[id].push(pos);
        type_of.push(id);
    }
    (type_of, members)
}
