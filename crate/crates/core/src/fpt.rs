//! Fixed-parameter algorithm for EFAE parameterized by the number of open
//! items `k` plus the number of agent types `n_t`.
//!
//! The search runs in three stages:
//!
//! 1. **Envy elimination.** While some agent envies another under the
//!    working partial allocation, that agent must receive an open item.
//!    Branch over which remaining item it gets, fold it into the working
//!    allocation and repeat. The least envious agent index is picked first.
//! 2. **Bundle guessing.** With `k'` items left and no envy, agents of types
//!    with at most `k'` members form the set `Z`. Members of larger types
//!    can only receive bundles they value at zero: they hold equal values
//!    (same type, no envy), and there are too few items to raise all of
//!    them. Enumerate every set partition of the remaining items into
//!    bundles and every target for each bundle: a distinct agent of `Z`, or
//!    the marker `LARGE`.
//! 3. **Matching.** `LARGE` bundles go to agents outside `Z` through a
//!    bipartite matching whose edges are the zero-valued, envy-free
//!    placements.
//!
//! Bundle guessing prunes partial guesses whose completion can no longer be
//! envy-free: agents with a fixed final bundle that already envy, or more
//! envious agents of `Z` than remaining bundles able to satisfy them.

use std::time::Instant;

use crate::combinatorics::{block_count, set_partitions};
use crate::error::{Error, Result};
use crate::fairness::is_envy_free;
use crate::matching::saturating_matching;
use crate::model::{Allocation, Instance, Query, Value};
use crate::outcome::{SolveOutcome, SolveStats};
use crate::types::compute_types;

/// Branch counters collected during one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FptTrace {
    /// Nodes of the envy-elimination tree.
    pub envy_nodes: u64,
    /// Complete bundle guesses that reached the matching stage.
    pub branches: u64,
    pub k: usize,
    pub n_t: usize,
    pub n: usize,
}

impl FptTrace {
    /// `k^k · (k·n_t + 1)^k · (k·n)^k`, as a float to dodge overflow.
    pub fn branch_bound(&self) -> f64 {
        let k = self.k as f64;
        let kk = k.powf(k);
        kk * (k * self.n_t as f64 + 1.0).powf(k) * (k * self.n as f64).powf(k)
    }
}

/// Decides an EFAE instance.
pub fn solve_fpt_k_nt(inst: &Instance) -> Result<SolveOutcome> {
    solve_fpt_traced(inst).map(|(out, _)| out)
}

/// Like [`solve_fpt_k_nt`], also returning the branch counters.
pub fn solve_fpt_traced(inst: &Instance) -> Result<(SolveOutcome, FptTrace)> {
    if !matches!(inst.query(), Query::Efae) {
        return Err(Error::WrongVariant {
            engine: "fpt-k-nt",
            variant: inst.query().variant_name(),
        });
    }
    let start = Instant::now();
    let types = compute_types(inst);
    let n = inst.n();
    let mut worth = vec![vec![0 as Value; n]; n];
    for (item, owner) in inst.assigned().iter().enumerate() {
        if let Some(j) = owner {
            for (x, row) in worth.iter_mut().enumerate() {
                row[*j] += inst.value(x, item);
            }
        }
    }
    let mut search = Search {
        inst,
        type_size: types
            .agent_type_of
            .iter()
            .map(|&t| types.agent_type_members[t].len())
            .collect(),
        owner: inst.assigned().to_vec(),
        worth,
        trace: FptTrace {
            k: inst.k(),
            n_t: types.n_types(),
            n,
            ..FptTrace::default()
        },
    };
    let mut remaining = inst.open_items();
    let found = search.envy_phase(&mut remaining);
    let trace = search.trace;
    let stats = SolveStats {
        nodes: trace.envy_nodes + trace.branches,
        states: 0,
        elapsed: start.elapsed(),
    };
    let out = match found {
        Some(owners) => {
            let witness = Allocation::new(owners);
            if !is_envy_free(inst, &witness) {
                return Err(Error::InternalInvariant(
                    "bundle search produced an envious witness".into(),
                ));
            }
            SolveOutcome::yes(witness, stats)
        }
        None => SolveOutcome::no(stats),
    };
    Ok((out, trace))
}

struct Search<'a> {
    inst: &'a Instance,
    type_size: Vec<usize>,
    owner: Vec<Option<usize>>,
    /// `worth[x][j]`: agent `x`'s value for `j`'s working bundle.
    worth: Vec<Vec<Value>>,
    trace: FptTrace,
}

impl Search<'_> {
    fn least_envious(&self) -> Option<usize> {
        let n = self.worth.len();
        (0..n).find(|&i| (0..n).any(|j| self.worth[i][j] > self.worth[i][i]))
    }

    fn grant(&mut self, item: usize, agent: usize) {
        self.owner[item] = Some(agent);
        for (x, row) in self.worth.iter_mut().enumerate() {
            row[agent] += self.inst.value(x, item);
        }
    }

    fn revoke(&mut self, item: usize, agent: usize) {
        self.owner[item] = None;
        for (x, row) in self.worth.iter_mut().enumerate() {
            row[agent] -= self.inst.value(x, item);
        }
    }

    fn envy_phase(&mut self, remaining: &mut Vec<usize>) -> Option<Vec<usize>> {
        self.trace.envy_nodes += 1;
        let Some(envious) = self.least_envious() else {
            return self.bundle_phase(remaining);
        };
        for idx in 0..remaining.len() {
            let item = remaining.remove(idx);
            self.grant(item, envious);
            let found = self.envy_phase(remaining);
            self.revoke(item, envious);
            remaining.insert(idx, item);
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn bundle_phase(&mut self, remaining: &[usize]) -> Option<Vec<usize>> {
        let k = remaining.len();
        let n = self.worth.len();
        if k == 0 {
            self.trace.branches += 1;
            return Some(self.owner.iter().map(|o| o.expect("no open items left")).collect());
        }
        let in_z: Vec<bool> = (0..n).map(|x| self.type_size[x] <= k).collect();
        let z: Vec<usize> = (0..n).filter(|&x| in_z[x]).collect();
        let outside: Vec<usize> = (0..n).filter(|&x| !in_z[x]).collect();

        for rgs in set_partitions(k) {
            let nb = block_count(&rgs);
            let mut blocks = vec![Vec::new(); nb];
            for (pos, &b) in rgs.iter().enumerate() {
                blocks[b].push(remaining[pos]);
            }
            let block_value: Vec<Vec<Value>> = blocks
                .iter()
                .map(|items| {
                    (0..n)
                        .map(|x| items.iter().map(|&a| self.inst.value(x, a)).sum())
                        .collect()
                })
                .collect();
            let mut guess = Guess {
                blocks: &blocks,
                block_value: &block_value,
                in_z: &in_z,
                z: &z,
                outside: &outside,
                block_of: vec![None; n],
                large: Vec::new(),
            };
            if let Some(w) = self.place(&mut guess, 0) {
                return Some(w);
            }
        }
        None
    }

    fn place(&mut self, g: &mut Guess<'_>, b: usize) -> Option<Vec<usize>> {
        if b == g.blocks.len() {
            self.trace.branches += 1;
            return self.finish(g);
        }
        for zi in 0..g.z.len() {
            let agent = g.z[zi];
            if g.block_of[agent].is_some() {
                continue;
            }
            g.block_of[agent] = Some(b);
            if self.feasible(g, b + 1) {
                if let Some(w) = self.place(g, b + 1) {
                    return Some(w);
                }
            }
            g.block_of[agent] = None;
        }
        let zero_somewhere = g.outside.iter().any(|&x| g.block_value[b][x] == 0);
        if zero_somewhere {
            g.large.push(b);
            if self.feasible(g, b + 1) {
                if let Some(w) = self.place(g, b + 1) {
                    return Some(w);
                }
            }
            g.large.pop();
        }
        None
    }

    /// Agent `x`'s value for `j`'s bundle under the current partial guess.
    fn current(&self, g: &Guess<'_>, x: usize, j: usize) -> Value {
        self.worth[x][j] + g.block_of[j].map_or(0, |c| g.block_value[c][x])
    }

    /// Necessary condition for completing the guess once blocks
    /// `unplaced..` are still open.
    fn feasible(&self, g: &Guess<'_>, unplaced: usize) -> bool {
        let n = self.worth.len();
        let mut needy: Vec<(usize, Value)> = Vec::new();
        for x in 0..n {
            let own = self.current(g, x, x);
            let need = (0..n)
                .filter(|&j| j != x)
                .map(|j| self.current(g, x, j) - own)
                .max()
                .unwrap_or(0);
            if need <= 0 {
                continue;
            }
            // Bundles only grow, so a fixed own value can never catch up.
            if !g.in_z[x] || g.block_of[x].is_some() {
                return false;
            }
            needy.push((x, need));
        }
        let open: Vec<usize> = (unplaced..g.blocks.len()).collect();
        saturating_matching(&needy, &open, |&(x, need), &c| g.block_value[c][x] >= need).is_some()
    }

    fn finish(&self, g: &Guess<'_>) -> Option<Vec<usize>> {
        let n = self.worth.len();
        let final_own: Vec<Value> = (0..n).map(|x| self.current(g, x, x)).collect();
        // Agents of Z hold their final bundles; nobody may envy them, and
        // they may envy nobody.
        for &zagent in g.z {
            if (0..n).any(|j| j != zagent && self.current(g, zagent, j) > final_own[zagent]) {
                return None;
            }
        }
        for &a in g.outside {
            if g.z.iter().any(|&zagent| self.current(g, a, zagent) > final_own[a]) {
                return None;
            }
        }
        let matching = saturating_matching(&g.large, g.outside, |&b, &i| {
            g.block_value[b][i] == 0
                && (0..n)
                    .filter(|&j| j != i)
                    .all(|j| final_own[j] >= self.worth[j][i] + g.block_value[b][j])
        })?;
        let mut owners: Vec<usize> = self.owner.iter().map(|o| o.unwrap_or(usize::MAX)).collect();
        for (agent, block) in g.block_of.iter().enumerate() {
            if let Some(c) = block {
                for &a in &g.blocks[*c] {
                    owners[a] = agent;
                }
            }
        }
        for (pos, &b) in g.large.iter().enumerate() {
            let agent = g.outside[matching[pos]];
            for &a in &g.blocks[b] {
                owners[a] = agent;
            }
        }
        debug_assert!(owners.iter().all(|&o| o != usize::MAX));
        Some(owners)
    }
}

struct Guess<'a> {
    blocks: &'a [Vec<usize>],
    block_value: &'a [Vec<Value>],
    in_z: &'a [bool],
    z: &'a [usize],
    outside: &'a [usize],
    /// Block targeted at each agent of `Z`, if any.
    block_of: Vec<Option<usize>>,
    /// Blocks marked for agents outside `Z`.
    large: Vec<usize>,
}
