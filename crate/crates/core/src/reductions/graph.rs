use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edges are kept in input order with endpoints normalized to `u < v`.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let edges = normalize_edges(n, edges)?;
        Ok(Graph { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.contains(&key)
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(a, &u)| set[a + 1..].iter().all(|&v| u != v && !self.adjacent(u, v)))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(a, b) in &self.edges {
                let w = if a == u {
                    b
                } else if b == u {
                    a
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Graph whose vertices carry one of `q` colors, with no edge inside a
/// color class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    q: usize,
    colors: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl ColoredGraph {
    pub fn new(q: usize, colors: Vec<usize>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if q == 0 {
            return Err(Error::MalformedGraph("at least one color is required".into()));
        }
        if let Some((v, &c)) = colors.iter().enumerate().find(|(_, &c)| c >= q) {
            return Err(Error::MalformedGraph(format!("vertex {v} has color {c} >= q = {q}")));
        }
        for c in 0..q {
            if !colors.contains(&c) {
                return Err(Error::MalformedGraph(format!("color {c} has no vertices")));
            }
        }
        let edges = normalize_edges(colors.len(), edges)?;
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| colors[u] == colors[v]) {
            return Err(Error::MalformedGraph(format!(
                "edge {u}-{v} joins two vertices of color {}",
                colors[u]
            )));
        }
        Ok(ColoredGraph { q, colors, edges })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Vertices of color `c` in input order.
    pub fn class(&self, c: usize) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.colors[v] == c).collect()
    }

    /// Indices into `edges()` of the edges between colors `i < j`, in
    /// input order.
    pub fn edges_between(&self, i: usize, j: usize) -> Vec<usize> {
        let key = (i.min(j), i.max(j));
        (0..self.edges.len())
            .filter(|&e| {
                let (u, v) = self.edges[e];
                let (cu, cv) = (self.colors[u], self.colors[v]);
                (cu.min(cv), cu.max(cv)) == key
            })
            .collect()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// `Ok` iff `clique` holds exactly one vertex per color, pairwise adjacent.
    pub fn check_clique(&self, clique: &[usize]) -> Result<()> {
        if clique.len() != self.q {
            return Err(Error::NotAClique(format!(
                "{} vertices given, {} colors",
                clique.len(),
                self.q
            )));
        }
        if let Some(&v) = clique.iter().find(|&&v| v >= self.n()) {
            return Err(Error::NotAClique(format!("vertex {v} does not exist")));
        }
        let colors: BTreeSet<usize> = clique.iter().map(|&v| self.colors[v]).collect();
        if colors.len() != self.q {
            return Err(Error::NotAClique("two vertices share a color".into()));
        }
        for (a, &u) in clique.iter().enumerate() {
            for &v in &clique[a + 1..] {
                if !self.adjacent(u, v) {
                    return Err(Error::NotAClique(format!("{u} and {v} are not adjacent")));
                }
            }
        }
        Ok(())
    }

    /// Exhaustive search for a multicolored clique; vertices sorted by color.
    pub fn find_clique(&self) -> Option<Vec<usize>> {
        let classes: Vec<Vec<usize>> = (0..self.q).map(|c| self.class(c)).collect();
        let mut chosen = Vec::with_capacity(self.q);
        self.extend_clique(&classes, &mut chosen).then_some(chosen)
    }

    fn extend_clique(&self, classes: &[Vec<usize>], chosen: &mut Vec<usize>) -> bool {
        let c = chosen.len();
        if c == self.q {
            return true;
        }
        for &v in &classes[c] {
            if chosen.iter().all(|&u| self.adjacent(u, v)) {
                chosen.push(v);
                if self.extend_clique(classes, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
}

fn normalize_edges(n: usize, edges: Vec<(usize, usize)>) -> Result<Vec<(usize, usize)>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(edges.len());
    for (u, v) in edges {
        if u >= n || v >= n {
            return Err(Error::MalformedGraph(format!("edge {u}-{v} leaves 0..{n}")));
        }
        if u == v {
            return Err(Error::MalformedGraph(format!("self-loop at {u}")));
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(Error::MalformedGraph(format!("duplicate edge {u}-{v}")));
        }
        out.push(key);
    }
    Ok(out)
}
