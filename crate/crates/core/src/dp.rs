//! Configuration dynamic program for REFAE and FEFAE with unary-size
//! valuations, parameterized by the number of recipients `p` and agent
//! types `n_t`.
//!
//! A configuration records, for each recipient and each agent type, the
//! value of that recipient's bundle as seen by the type: `p · n_t` numbers.
//! Open items are processed in index order; each one is given to every
//! recipient in turn and duplicate configurations are discarded, so the
//! table never holds more than `(V_total + 1)^(p·n_t)` states.

use std::collections::HashMap;
use std::time::Instant;

use crate::combinatorics::combinations;
use crate::error::{Error, Result};
use crate::fairness::is_envy_free;
use crate::model::{Allocation, Instance, Query, Value};
use crate::outcome::{SolveOutcome, SolveStats};
use crate::types::compute_types;

/// Which predecessor a deduplicated state remembers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Representative {
    #[default]
    First,
    Last,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpConfig {
    /// Reject instances whose `V_total` exceeds this.
    pub max_total_value: Value,
    /// Give up once a single layer holds this many states.
    pub max_states: usize,
    pub representative: Representative,
}

impl Default for DpConfig {
    fn default() -> Self {
        DpConfig {
            max_total_value: 100_000,
            max_states: 2_000_000,
            representative: Representative::First,
        }
    }
}

/// Counters from one run.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DpTrace {
    /// Sum over all items of the largest value any agent assigns to it.
    pub v_total: Value,
    pub p: usize,
    pub n_t: usize,
    /// Largest layer seen across all recipient sets.
    pub max_layer: usize,
    pub recipient_sets: u64,
}

impl DpTrace {
    /// `(V_total + 1)^(p·n_t)`.
    pub fn state_bound(&self) -> f64 {
        (self.v_total as f64 + 1.0).powi((self.p * self.n_t) as i32)
    }
}

/// Sum over all items of the largest value any agent assigns to it.
pub fn total_value(inst: &Instance) -> Value {
    (0..inst.m())
        .map(|a| (0..inst.n()).map(|i| inst.value(i, a)).max().unwrap_or(0))
        .sum()
}

pub fn solve_dp(inst: &Instance) -> Result<SolveOutcome> {
    solve_dp_with(inst, &DpConfig::default()).map(|(out, _)| out)
}

pub fn solve_dp_with(inst: &Instance, config: &DpConfig) -> Result<(SolveOutcome, DpTrace)> {
    let recipient_sets: Box<dyn Iterator<Item = Vec<usize>>> = match inst.query() {
        Query::Refae { recipients } => Box::new(std::iter::once(recipients.clone())),
        Query::Fefae { p } => Box::new(combinations(inst.n(), *p)),
        Query::Efae => {
            return Err(Error::WrongVariant {
                engine: "dp-p-nt",
                variant: "EFAE",
            })
        }
    };
    let v_total = total_value(inst);
    if v_total > config.max_total_value {
        return Err(Error::ValuesTooLarge {
            total: v_total,
            limit: config.max_total_value,
        });
    }
    let start = Instant::now();
    let types = compute_types(inst);
    let table = Table::new(inst, &types.agent_type_of, types.n_types());
    let mut trace = DpTrace {
        v_total,
        n_t: types.n_types(),
        ..DpTrace::default()
    };
    let mut stats = SolveStats::default();

    for set in recipient_sets {
        trace.recipient_sets += 1;
        trace.p = set.len();
        match table.run(&set, config, &mut stats, &mut trace) {
            Run::Found(owners) => {
                stats.elapsed = start.elapsed();
                let witness = Allocation::new(owners);
                if !is_envy_free(inst, &witness) {
                    return Err(Error::InternalInvariant(
                        "configuration accepted an envious allocation".into(),
                    ));
                }
                return Ok((SolveOutcome::yes(witness, stats), trace));
            }
            Run::Limit => {
                stats.elapsed = start.elapsed();
                return Ok((SolveOutcome::resource_limit(stats), trace));
            }
            Run::Exhausted => {}
        }
    }
    stats.elapsed = start.elapsed();
    Ok((SolveOutcome::no(stats), trace))
}

enum Run {
    Found(Vec<usize>),
    Exhausted,
    Limit,
}

/// Instance data shared by every recipient set.
struct Table<'a> {
    inst: &'a Instance,
    agent_type: &'a [usize],
    /// One representative agent per type.
    type_rep: Vec<usize>,
    n_t: usize,
    given: Vec<Vec<usize>>,
    /// `given_worth[x][j] = v_x(γ_j)`.
    given_worth: Vec<Vec<Value>>,
    open: Vec<usize>,
}

impl<'a> Table<'a> {
    fn new(inst: &'a Instance, agent_type: &'a [usize], n_t: usize) -> Self {
        let mut type_rep = vec![usize::MAX; n_t];
        for (agent, &t) in agent_type.iter().enumerate() {
            if type_rep[t] == usize::MAX {
                type_rep[t] = agent;
            }
        }
        let given = inst.given_bundles();
        let given_worth = (0..inst.n())
            .map(|x| {
                given
                    .iter()
                    .map(|b| b.iter().map(|&a| inst.value(x, a)).sum())
                    .collect()
            })
            .collect();
        Table {
            inst,
            agent_type,
            type_rep,
            n_t,
            given,
            given_worth,
            open: inst.open_items(),
        }
    }

    fn run(&self, set: &[usize], config: &DpConfig, stats: &mut SolveStats, trace: &mut DpTrace) -> Run {
        let n = self.inst.n();
        let p = set.len();
        let nt = self.n_t;
        let is_recipient = {
            let mut flags = vec![false; n];
            for &r in set {
                flags[r] = true;
            }
            flags
        };
        if p == 0 && !self.open.is_empty() {
            return Run::Exhausted;
        }
        // Non-recipient bundles are frozen and recipient bundles only grow,
        // so any envy held by a non-recipient under γ is permanent.
        for a in (0..n).filter(|&a| !is_recipient[a]) {
            if (0..n).any(|j| self.given_worth[a][j] > self.given_worth[a][a]) {
                return Run::Exhausted;
            }
        }

        let initial: Vec<Value> = set
            .iter()
            .flat_map(|&r| self.type_rep.iter().map(move |&rep| (rep, r)))
            .map(|(rep, r)| self.given_worth[rep][r])
            .collect();
        let mut layers: Vec<Layer> = vec![Layer {
            states: vec![initial],
            back: vec![(usize::MAX, usize::MAX)],
        }];
        stats.states += 1;
        trace.max_layer = trace.max_layer.max(1);

        for &item in &self.open {
            let item_by_type: Vec<Value> = self.type_rep.iter().map(|&rep| self.inst.value(rep, item)).collect();
            let prev = layers.last().expect("initial layer");
            let mut next = Layer::default();
            let mut index: HashMap<Vec<Value>, usize> = HashMap::new();
            for (s, state) in prev.states.iter().enumerate() {
                for r in 0..p {
                    let mut child = state.clone();
                    for (z, v) in item_by_type.iter().enumerate() {
                        child[r * nt + z] += v;
                    }
                    match index.get(&child) {
                        Some(&existing) => {
                            if config.representative == Representative::Last {
                                next.back[existing] = (s, r);
                            }
                        }
                        None => {
                            if next.states.len() >= config.max_states {
                                return Run::Limit;
                            }
                            index.insert(child.clone(), next.states.len());
                            next.states.push(child);
                            next.back.push((s, r));
                        }
                    }
                }
            }
            stats.states += next.states.len() as u64;
            trace.max_layer = trace.max_layer.max(next.states.len());
            layers.push(next);
        }

        let last = layers.last().expect("at least one layer");
        stats.nodes += last.states.len() as u64;
        let Some(hit) = last
            .states
            .iter()
            .position(|state| self.accepts(state, set, &is_recipient))
        else {
            return Run::Exhausted;
        };

        let mut owners: Vec<usize> = self.inst.assigned().iter().map(|o| o.unwrap_or(usize::MAX)).collect();
        let mut cursor = hit;
        for t in (1..layers.len()).rev() {
            let (prev, r) = layers[t].back[cursor];
            owners[self.open[t - 1]] = set[r];
            cursor = prev;
        }
        debug_assert!(self.given.iter().flatten().all(|&a| owners[a] != usize::MAX));
        Run::Found(owners)
    }

    /// Full envy-freeness check of a final configuration.
    fn accepts(&self, state: &[Value], set: &[usize], is_recipient: &[bool]) -> bool {
        let nt = self.n_t;
        let n = self.inst.n();
        let seen = |r: usize, z: usize| state[r * nt + z];
        for (ri, &i) in set.iter().enumerate() {
            let zi = self.agent_type[i];
            let own = seen(ri, zi);
            if (0..set.len()).any(|rj| seen(rj, zi) > own) {
                return false;
            }
            if (0..n).any(|j| !is_recipient[j] && self.given_worth[i][j] > own) {
                return false;
            }
        }
        for a in (0..n).filter(|&a| !is_recipient[a]) {
            let za = self.agent_type[a];
            if (0..set.len()).any(|rj| seen(rj, za) > self.given_worth[a][a]) {
                return false;
            }
        }
        true
    }
}

#[derive(Default)]
struct Layer {
    states: Vec<Vec<Value>>,
    back: Vec<(usize, usize)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{solve_bruteforce, OracleBudget};
    use crate::outcome::Answer;

    #[test]
    fn wrong_variant() {
        let inst = Instance::from_matrix(vec![vec![1]], vec![None], Query::Efae).unwrap();
        assert!(matches!(solve_dp(&inst), Err(Error::WrongVariant { .. })));
    }

    #[test]
    fn magnitude_guard() {
        let inst = Instance::from_matrix(vec![vec![200_000], vec![1]], vec![None], Query::Fefae { p: 1 }).unwrap();
        assert!(matches!(
            solve_dp(&inst),
            Err(Error::ValuesTooLarge { total: 200_000, .. })
        ));
    }

    #[test]
    fn single_recipient_takes_everything() {
        // Agent 0 likes the open items, agent 1 does not: giving both to
        // agent 0 is forced and envy-free; to agent 1 it makes 0 envious.
        let values = vec![vec![1, 2, 2], vec![1, 0, 0]];
        let assigned = vec![Some(1), None, None];
        for (recipient, expected) in [(0, Answer::Yes), (1, Answer::No)] {
            let inst = Instance::from_matrix(
                values.clone(),
                assigned.clone(),
                Query::Refae {
                    recipients: vec![recipient],
                },
            )
            .unwrap();
            let out = solve_dp(&inst).unwrap();
            assert_eq!(out.answer, expected);
            assert_eq!(out.answer, solve_bruteforce(&inst, OracleBudget::default()).answer);
        }
    }

    #[test]
    fn state_cap_reports_resource_limit() {
        let inst = Instance::from_matrix(
            vec![vec![1, 2, 4, 8], vec![1, 1, 1, 1]],
            vec![None; 4],
            Query::Refae { recipients: vec![0, 1] },
        )
        .unwrap();
        let config = DpConfig {
            max_states: 3,
            ..DpConfig::default()
        };
        let (out, _) = solve_dp_with(&inst, &config).unwrap();
        assert_eq!(out.answer, Answer::ResourceLimit);
    }

    #[test]
    fn envious_non_recipient_is_fatal() {
        let inst = Instance::from_matrix(
            vec![vec![0, 5, 1], vec![0, 5, 1], vec![0, 0, 1]],
            vec![Some(0), Some(1), None],
            Query::Refae { recipients: vec![1, 2] },
        )
        .unwrap();
        assert_eq!(solve_dp(&inst).unwrap().answer, Answer::No);
    }

    #[test]
    fn fefae_tries_recipient_sets_in_rank_order() {
        let inst = Instance::from_matrix(
            vec![vec![1, 1], vec![1, 1], vec![0, 0]],
            vec![None, None],
            Query::Fefae { p: 2 },
        )
        .unwrap();
        let (out, trace) = solve_dp_with(&inst, &DpConfig::default()).unwrap();
        assert_eq!(out.answer, Answer::Yes);
        assert_eq!(out.witness.unwrap().receivers(&inst), vec![0, 1]);
        assert_eq!(trace.recipient_sets, 1);
    }
}
