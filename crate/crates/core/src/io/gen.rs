//! Seeded random instances with a prescribed number of agent and item types.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{default_agent_ids, default_item_ids, Instance, Query, Value};
use crate::reductions::{ColoredGraph, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenVariant {
    Efae,
    /// REFAE with this many randomly chosen recipients.
    Refae {
        recipients: usize,
    },
    Fefae {
        p: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    /// Distinct valuation rows.
    pub n_t: usize,
    /// Distinct item columns.
    pub m_t: usize,
    /// Values are drawn uniformly from `0..=max_value`.
    pub max_value: Value,
    /// Fraction of items left open, rounded to the nearest count.
    pub open_fraction: f64,
    pub variant: GenVariant,
}

impl GenSpec {
    pub const MAX_RETRIES: usize = 1_000;

    /// Unconstrained types: every row and column may be distinct.
    pub fn simple(seed: u64, n: usize, m: usize, max_value: Value, open_fraction: f64) -> Self {
        GenSpec {
            seed,
            n,
            m,
            n_t: n,
            m_t: m,
            max_value,
            open_fraction,
            variant: GenVariant::Efae,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::BadParams(msg));
        if self.n == 0 {
            return bad("at least one agent is required".into());
        }
        if self.n_t == 0 || self.n_t > self.n {
            return bad(format!("need 1 <= n_t <= n, got n_t = {}", self.n_t));
        }
        if self.m_t > self.m || (self.m > 0 && self.m_t == 0) {
            return bad(format!("need 1 <= m_t <= m, got m_t = {}", self.m_t));
        }
        if self.max_value < 0 {
            return bad("max_value must be non-negative".into());
        }
        if !(0.0..=1.0).contains(&self.open_fraction) {
            return bad("open_fraction must lie in [0, 1]".into());
        }
        match self.variant {
            GenVariant::Refae { recipients } if recipients > self.n => {
                bad(format!("{recipients} recipients among {} agents", self.n))
            }
            GenVariant::Fefae { p } if p == 0 || p > self.n => bad(format!("need 1 <= p <= n, got {p}")),
            _ => Ok(()),
        }
    }
}

/// Draws the type matrix first (distinct rows and columns, resampled up to
/// [`GenSpec::MAX_RETRIES`] times), then replicates rows and columns so that
/// every type occurs at least once.
pub fn gen_random(spec: &GenSpec) -> Result<Instance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let table = draw_type_table(spec, &mut rng)?;
    let agent_type = spread(spec.n, spec.n_t, &mut rng);
    let item_type = spread(spec.m, spec.m_t, &mut rng);
    let values: Vec<Vec<Value>> = agent_type
        .iter()
        .map(|&at| item_type.iter().map(|&it| table[at][it]).collect())
        .collect();

    let k = ((spec.m as f64) * spec.open_fraction).round() as usize;
    let open = index::sample(&mut rng, spec.m, k.min(spec.m)).into_vec();
    let mut is_open = vec![false; spec.m];
    for a in open {
        is_open[a] = true;
    }
    let assigned: Vec<Option<usize>> = is_open
        .iter()
        .map(|&o| if o { None } else { Some(rng.gen_range(0..spec.n)) })
        .collect();

    let query = match spec.variant {
        GenVariant::Efae => Query::Efae,
        GenVariant::Refae { recipients } => {
            let mut r = index::sample(&mut rng, spec.n, recipients).into_vec();
            r.sort_unstable();
            Query::Refae { recipients: r }
        }
        GenVariant::Fefae { p } => Query::Fefae { p },
    };
    Instance::new(
        default_agent_ids(spec.n),
        default_item_ids(spec.m),
        values,
        assigned,
        query,
    )
}

fn draw_type_table(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<Value>>> {
    for _ in 0..GenSpec::MAX_RETRIES {
        let table: Vec<Vec<Value>> = (0..spec.n_t)
            .map(|_| (0..spec.m_t).map(|_| rng.gen_range(0..=spec.max_value)).collect())
            .collect();
        let rows_distinct = all_distinct((0..spec.n_t).map(|r| table[r].clone()));
        let cols_distinct = all_distinct((0..spec.m_t).map(|c| table.iter().map(|row| row[c]).collect::<Vec<_>>()));
        // With no items every row is empty, so only one agent type can exist.
        let rows_ok = rows_distinct && (spec.m_t > 0 || spec.n_t == 1);
        if rows_ok && cols_distinct {
            return Ok(table);
        }
    }
    Err(Error::GenRetryExhausted(GenSpec::MAX_RETRIES))
}

fn all_distinct<T: Ord>(it: impl Iterator<Item = T>) -> bool {
    let v: Vec<T> = it.collect();
    let len = v.len();
    let set: std::collections::BTreeSet<T> = v.into_iter().collect();
    set.len() == len
}

/// `count` slots over `types` labels, each label used at least once.
fn spread(count: usize, types: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut labels: Vec<usize> = (0..types).collect();
    labels.extend((types..count).map(|_| rng.gen_range(0..types.max(1))));
    labels.shuffle(rng);
    labels
}

/// Random simple graph with independent edge probability `density`.
pub fn gen_graph(seed: u64, n: usize, density: f64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::BadParams("density must lie in [0, 1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    Graph::new(n, edges)
}

/// Random `q`-colored graph with `1..=max_per_color` vertices per color.
/// Draws are repeated until every color pair shares an edge.
pub fn gen_colored_graph(seed: u64, q: usize, max_per_color: usize, density: f64) -> Result<ColoredGraph> {
    if q == 0 || max_per_color == 0 {
        return Err(Error::BadParams("need q >= 1 and at least one vertex per color".into()));
    }
    if !(0.0..=1.0).contains(&density) || (q > 1 && density == 0.0) {
        return Err(Error::BadParams("density must lie in (0, 1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GenSpec::MAX_RETRIES {
        let colors: Vec<usize> = (0..q)
            .flat_map(|c| std::iter::repeat_n(c, rng.gen_range(1..=max_per_color)))
            .collect();
        let n = colors.len();
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| colors[u] != colors[v] && rng.gen_bool(density))
            .collect();
        let g = ColoredGraph::new(q, colors, edges)?;
        if (0..q).all(|i| (i + 1..q).all(|j| !g.edges_between(i, j).is_empty())) {
            return Ok(g);
        }
    }
    Err(Error::GenRetryExhausted(GenSpec::MAX_RETRIES))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::serialize_instance;
    use crate::types::compute_types;

    fn spec(seed: u64) -> GenSpec {
        GenSpec {
            seed,
            n: 5,
            m: 8,
            n_t: 3,
            m_t: 4,
            max_value: 5,
            open_fraction: 0.5,
            variant: GenVariant::Refae { recipients: 2 },
        }
    }

    #[test]
    fn seed_stable() {
        let a = serialize_instance(&gen_random(&spec(7)).unwrap());
        let b = serialize_instance(&gen_random(&spec(7)).unwrap());
        assert_eq!(a, b);
        assert_ne!(a, serialize_instance(&gen_random(&spec(8)).unwrap()));
    }

    #[test]
    fn achieves_requested_types() {
        for seed in 0..20 {
            let inst = gen_random(&spec(seed)).unwrap();
            let types = compute_types(&inst);
            assert_eq!((types.n_types(), types.m_types()), (3, 4));
            assert_eq!(inst.k(), 4);
            assert!(matches!(inst.query(), Query::Refae { recipients } if recipients.len() == 2));
        }
    }

    #[test]
    fn single_agent_type() {
        let inst = gen_random(&GenSpec { n_t: 1, ..spec(3) }).unwrap();
        assert!(inst.values().iter().all(|row| row == &inst.values()[0]));
    }

    #[test]
    fn impossible_spec_exhausts_retries() {
        // Four distinct rows cannot be drawn from {0, 1}^1.
        let s = GenSpec {
            n: 4,
            n_t: 4,
            m: 1,
            m_t: 1,
            max_value: 1,
            ..spec(0)
        };
        assert_eq!(
            gen_random(&s).unwrap_err(),
            Error::GenRetryExhausted(GenSpec::MAX_RETRIES)
        );
    }

    #[test]
    fn graph_generators_are_seed_stable() {
        assert_eq!(gen_graph(4, 6, 0.5).unwrap(), gen_graph(4, 6, 0.5).unwrap());
        for seed in 0..10 {
            let g = gen_colored_graph(seed, 3, 3, 0.4).unwrap();
            assert_eq!(g, gen_colored_graph(seed, 3, 3, 0.4).unwrap());
            assert!((0..3).all(|c| (1..=3).contains(&g.class(c).len())));
            assert!(!g.edges_between(0, 2).is_empty());
        }
        assert!(gen_colored_graph(0, 0, 3, 0.5).is_err());
    }

    #[test]
    fn bad_params() {
        assert!(gen_random(&GenSpec { n_t: 6, ..spec(0) }).is_err());
        assert!(gen_random(&GenSpec {
            open_fraction: 1.5,
            ..spec(0)
        })
        .is_err());
        assert!(gen_random(&GenSpec {
            variant: GenVariant::Fefae { p: 0 },
            ..spec(0)
        })
        .is_err());
    }
}
