//! Independent Set to REFAE (and FEFAE with two recipients).
//!
//! One agent per edge plus two recipients `A` and `B`; one open item per
//! vertex. Valuations force `A` to take exactly `ℓ` vertex items and `B` the
//! rest, and every edge agent envies `A` as soon as `A` holds both of its
//! endpoints.

use super::graph::Graph;
use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, Query, Value};

#[derive(Debug, Clone)]
pub struct IsGadget {
    pub instance: Instance,
    pub l: usize,
    /// Agent index of `A`, the recipient that must take `ℓ` vertex items.
    pub a_agent: usize,
    /// Agent index of `B`, which takes the remaining vertex items.
    pub b_agent: usize,
    /// Item index of each vertex's open item.
    pub vertex_items: Vec<usize>,
    graph: Graph,
}

/// Builds the gadget; `fefae` swaps the recipient set for `p = 2`.
///
/// `A` is meant to value its own given item at `|V| - 2ℓ` and `B`'s at 0.
/// When `2ℓ > |V|` that would be negative, so the difference is moved to
/// `B`'s item instead: `A`'s comparison with `B` is unchanged.
pub fn is_to_refae(g: &Graph, l: usize, fefae: bool) -> Result<IsGadget> {
    let nv = g.n();
    if l == 0 || l > nv {
        return Err(Error::BadParams(format!("need 1 <= l <= |V| = {nv}, got {l}")));
    }
    let ne = g.edges().len();
    let (a, b) = (ne, ne + 1);
    let n = ne + 2;
    let m = n + nv;
    let big = nv as Value;
    let lv = l as Value;
    let mut values = vec![vec![0 as Value; m]; n];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let row = &mut values[i];
        row[i] = big;
        row[a] = big - 1;
        row[n + u] = 1;
        row[n + v] = 1;
    }
    values[a][a] = (big - 2 * lv).max(0);
    values[a][b] = (2 * lv - big).max(0);
    for t in 0..nv {
        values[a][n + t] = 1;
        values[b][n + t] = 1;
    }
    for (g_item, v) in values[b][..n].iter_mut().enumerate() {
        *v = if g_item == b {
            big
        } else if g_item == a {
            0
        } else {
            2 * big - lv
        };
    }

    let mut agents: Vec<String> = (1..=ne).map(|i| format!("e{i}")).collect();
    agents.push("A".into());
    agents.push("B".into());
    let mut items: Vec<String> = (1..=n).map(|i| format!("g{i}")).collect();
    items.extend((1..=nv).map(|j| format!("a{j}")));
    let assigned: Vec<Option<usize>> = (0..n).map(Some).chain(std::iter::repeat_n(None, nv)).collect();
    let query = if fefae {
        Query::Fefae { p: 2 }
    } else {
        Query::Refae { recipients: vec![a, b] }
    };
    let instance = Instance::new(agents, items, values, assigned, query)?;
    Ok(IsGadget {
        instance,
        l,
        a_agent: a,
        b_agent: b,
        vertex_items: (n..m).collect(),
        graph: g.clone(),
    })
}

impl IsGadget {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// The allocation that hands `set` to `A` and every other vertex to `B`.
    pub fn allocation_for(&self, set: &[usize]) -> Result<Allocation> {
        let pairs: Vec<(usize, usize)> = self
            .vertex_items
            .iter()
            .enumerate()
            .map(|(v, &item)| (item, if set.contains(&v) { self.a_agent } else { self.b_agent }))
            .collect();
        Allocation::extend(&self.instance, &pairs)
    }
}

/// Vertices whose items went to `A` in an envy-free extension; must be an
/// independent set of size exactly `ℓ`.
pub fn extract_independent_set(gadget: &IsGadget, alloc: &Allocation) -> Result<Vec<usize>> {
    let set: Vec<usize> = gadget
        .vertex_items
        .iter()
        .enumerate()
        .filter(|(_, &item)| alloc.owner(item) == gadget.a_agent)
        .map(|(v, _)| v)
        .collect();
    if set.len() != gadget.l {
        return Err(Error::InternalInvariant(format!(
            "recipient A holds {} vertex items, expected {}",
            set.len(),
            gadget.l
        )));
    }
    if !gadget.graph.is_independent(&set) {
        return Err(Error::InternalInvariant(format!("{set:?} is not independent")));
    }
    Ok(set)
}
