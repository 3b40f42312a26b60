//! Multicolored Clique to EFAE.
//!
//! Every vertex and every edge becomes an agent. Pre-assigned bundles are
//! built from box, triangle and star items so that agents of one group
//! strictly prefer their own bundle, while each agent is exactly indifferent
//! to the bundles of groups it is tied to. One open item per color and per
//! color pair then has to land on a vertex/edge/vertex triple that is
//! adjacent in the graph, which forces a multicolored clique.

use std::collections::BTreeMap;

use super::graph::ColoredGraph;
use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, Query, Value};

/// Which family a gadget item belongs to. Colors are 0-based; pairs have
/// `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ItemClass {
    VertexBox(usize),
    VertexTriangle(usize),
    VertexStar(usize),
    EdgeBox(usize, usize),
    EdgeTriangle(usize, usize),
    EdgeStar(usize, usize),
    /// The open item `s_i`.
    VertexOpen(usize),
    /// The open item `τ_ij`.
    EdgeOpen(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    /// Vertex agent of color `color`, 1-based position `x` in a class of `size`.
    Vertex { color: usize, x: i64, size: i64 },
    /// Edge agent between colors `i < j`, 1-based position `z` among `size`.
    Edge { i: usize, j: usize, z: i64, size: i64 },
}

impl Role {
    /// Value of the agent's own pre-assigned bundle.
    fn own_worth(self) -> Value {
        match self {
            Role::Vertex { x, size, .. } => 2 * size * size + x * x,
            Role::Edge { z, size, .. } => 2 * size * size + z * z,
        }
    }

    fn value(self, class: ItemClass) -> Value {
        use ItemClass::*;
        let own = self.own_worth();
        match self {
            Role::Vertex { color, x, .. } => {
                let incident = |a: usize, b: usize| a == color || b == color;
                match class {
                    VertexBox(c) if c == color => 2 * x + 1,
                    VertexTriangle(c) if c == color => 1,
                    VertexStar(c) => {
                        if c == color {
                            0
                        } else {
                            own
                        }
                    }
                    EdgeStar(a, b) => {
                        if incident(a, b) {
                            0
                        } else {
                            own
                        }
                    }
                    VertexOpen(c) if c == color => 1,
                    EdgeOpen(a, b) if incident(a, b) => 1,
                    _ => 0,
                }
            }
            Role::Edge { i, j, z, .. } => match class {
                EdgeBox(a, b) if (a, b) == (i, j) => 2 * z + 1,
                EdgeTriangle(a, b) if (a, b) == (i, j) => 1,
                EdgeStar(a, b) => {
                    if (a, b) == (i, j) {
                        0
                    } else {
                        own
                    }
                }
                VertexStar(_) => own,
                EdgeOpen(a, b) if (a, b) == (i, j) => 1,
                _ => 0,
            },
        }
    }
}

/// The generated instance plus the maps needed to translate solutions.
#[derive(Debug, Clone)]
pub struct McqGadget {
    pub instance: Instance,
    /// Agent index of each vertex of the graph.
    pub vertex_agent: Vec<usize>,
    /// Agent index of each edge, indexed like `ColoredGraph::edges`.
    pub edge_agent: Vec<usize>,
    /// Item index of `s_i`, per color.
    pub vertex_items: Vec<usize>,
    /// Item index of `τ_ij`, per color pair `i < j`.
    pub edge_items: BTreeMap<(usize, usize), usize>,
    /// Family of every item.
    pub item_classes: Vec<ItemClass>,
}

impl McqGadget {
    /// Number of item families the construction uses: `4q + 4·C(q, 2)`.
    pub fn nominal_class_count(q: usize) -> usize {
        4 * q + 4 * (q * q.saturating_sub(1) / 2)
    }
}

pub fn mcq_to_efae(g: &ColoredGraph) -> Result<McqGadget> {
    let q = g.q();
    let classes: Vec<Vec<usize>> = (0..q).map(|c| g.class(c)).collect();
    let mut position = vec![0i64; g.n()];
    for class in &classes {
        for (pos, &v) in class.iter().enumerate() {
            position[v] = pos as i64 + 1;
        }
    }
    let pairs: Vec<(usize, usize)> = (0..q).flat_map(|i| (i + 1..q).map(move |j| (i, j))).collect();
    let mut pair_edges = Vec::with_capacity(pairs.len());
    for &(i, j) in &pairs {
        let es = g.edges_between(i, j);
        if es.is_empty() {
            return Err(Error::MalformedGraph(format!(
                "no edge between colors {} and {}",
                i + 1,
                j + 1
            )));
        }
        pair_edges.push(es);
    }

    let mut agent_ids = Vec::new();
    let mut roles = Vec::new();
    let mut item_ids = Vec::new();
    let mut item_classes = Vec::new();
    let mut assigned = Vec::new();
    let mut push_items = |owner: usize, owner_id: &str, class: ItemClass, label: &str, count: i64| {
        for c in 0..count {
            item_ids.push(format!("{owner_id}.{label}.{}", c + 1));
            item_classes.push(class);
            assigned.push(Some(owner));
        }
    };

    let mut vertex_agent = vec![0; g.n()];
    for (color, class) in classes.iter().enumerate() {
        let size = class.len() as i64;
        for &v in class {
            let x = position[v];
            let agent = roles.len();
            let id = format!("alpha{}_{}", color + 1, x);
            vertex_agent[v] = agent;
            roles.push(Role::Vertex { color, x, size });
            let c1 = color + 1;
            push_items(agent, &id, ItemClass::VertexBox(color), &format!("box{c1}"), x);
            push_items(
                agent,
                &id,
                ItemClass::VertexTriangle(color),
                &format!("tri{c1}"),
                2 * size * size - x * x - x,
            );
            push_items(agent, &id, ItemClass::VertexStar(color), &format!("star{c1}"), 1);
            agent_ids.push(id);
        }
    }

    let mut edge_agent = vec![0; g.edges().len()];
    for (&(i, j), es) in pairs.iter().zip(&pair_edges) {
        let size = es.len() as i64;
        for (pos, &e) in es.iter().enumerate() {
            let z = pos as i64 + 1;
            let (u, v) = g.edges()[e];
            let (vi, vj) = if g.color(u) == i { (u, v) } else { (v, u) };
            let agent = roles.len();
            let id = format!("eta{}_{}_{}", i + 1, j + 1, z);
            edge_agent[e] = agent;
            roles.push(Role::Edge { i, j, z, size });
            let (ci, cj) = (i + 1, j + 1);
            push_items(agent, &id, ItemClass::EdgeBox(i, j), &format!("box{ci}_{cj}"), z);
            push_items(
                agent,
                &id,
                ItemClass::EdgeTriangle(i, j),
                &format!("tri{ci}_{cj}"),
                2 * size * size - z * z - z,
            );
            push_items(agent, &id, ItemClass::EdgeStar(i, j), &format!("star{ci}_{cj}"), 1);
            for (endpoint, color) in [(vi, i), (vj, j)] {
                let x = position[endpoint];
                let vsize = classes[color].len() as i64;
                let c1 = color + 1;
                push_items(agent, &id, ItemClass::VertexBox(color), &format!("box{c1}"), x);
                push_items(
                    agent,
                    &id,
                    ItemClass::VertexTriangle(color),
                    &format!("tri{c1}"),
                    2 * vsize * vsize - x * x - x,
                );
            }
            agent_ids.push(id);
        }
    }

    let mut vertex_items = Vec::with_capacity(q);
    for c in 0..q {
        vertex_items.push(item_ids.len());
        item_ids.push(format!("s{}", c + 1));
        item_classes.push(ItemClass::VertexOpen(c));
        assigned.push(None);
    }
    let mut edge_items = BTreeMap::new();
    for &(i, j) in &pairs {
        edge_items.insert((i, j), item_ids.len());
        item_ids.push(format!("t{}_{}", i + 1, j + 1));
        item_classes.push(ItemClass::EdgeOpen(i, j));
        assigned.push(None);
    }

    let values: Vec<Vec<Value>> = roles
        .iter()
        .map(|&role| item_classes.iter().map(|&c| role.value(c)).collect())
        .collect();
    let instance = Instance::new(agent_ids, item_ids, values, assigned, Query::Efae)?;
    Ok(McqGadget {
        instance,
        vertex_agent,
        edge_agent,
        vertex_items,
        edge_items,
        item_classes,
    })
}

/// Extends the gadget's partial allocation along a multicolored clique.
pub fn clique_to_allocation(g: &ColoredGraph, gadget: &McqGadget, clique: &[usize]) -> Result<Allocation> {
    g.check_clique(clique)?;
    let mut pairs = Vec::new();
    for (a, &u) in clique.iter().enumerate() {
        pairs.push((gadget.vertex_items[g.color(u)], gadget.vertex_agent[u]));
        for &v in &clique[a + 1..] {
            let key = (u.min(v), u.max(v));
            let e = g
                .edges()
                .iter()
                .position(|&edge| edge == key)
                .expect("clique vertices are adjacent");
            let (ci, cj) = (g.color(u).min(g.color(v)), g.color(u).max(g.color(v)));
            pairs.push((gadget.edge_items[&(ci, cj)], gadget.edge_agent[e]));
        }
    }
    Allocation::extend(&gadget.instance, &pairs)
}

/// Reads a multicolored clique off an envy-free extension of the gadget;
/// vertices are returned in color order.
pub fn extract_clique(g: &ColoredGraph, gadget: &McqGadget, alloc: &Allocation) -> Result<Vec<usize>> {
    let mut clique = Vec::with_capacity(g.q());
    for (color, &item) in gadget.vertex_items.iter().enumerate() {
        let owner = alloc.owner(item);
        let vertex = (0..g.n())
            .find(|&v| gadget.vertex_agent[v] == owner && g.color(v) == color)
            .ok_or_else(|| {
                Error::InternalInvariant(format!(
                    "open item for color {} went to agent {owner}, outside its vertex group",
                    color + 1
                ))
            })?;
        clique.push(vertex);
    }
    g.check_clique(&clique)
        .map_err(|e| Error::InternalInvariant(format!("recovered vertices are no clique: {e}")))?;
    Ok(clique)
}
