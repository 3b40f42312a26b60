//! REFAE as integer feasibility over open-item types.
//!
//! `x[r][t]` counts how many open items of type `t` go to the `r`-th
//! recipient. Items of one type are interchangeable to every agent, so any
//! feasible count vector can be turned into a concrete allocation.

use std::time::Instant;

use super::model::{IlpModel, Relation};
use super::solver::{solve_ilp, IlpStatus, DEFAULT_NODE_BUDGET};
use crate::combinatorics::combinations;
use crate::error::{Error, Result};
use crate::fairness::is_envy_free;
use crate::model::{Allocation, Instance, Query, Value};
use crate::outcome::{SolveOutcome, SolveStats};
use crate::types::item_groups;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IlpOptions {
    /// Emit the recipient-versus-non-recipient family. Without it the
    /// system is only sound when the given bundles are envy-free.
    pub supplementary: bool,
    /// Branch-and-bound node budget per model.
    pub node_budget: u64,
}

impl Default for IlpOptions {
    fn default() -> Self {
        IlpOptions {
            supplementary: true,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// A built model together with what is needed to read its solutions back.
#[derive(Debug, Clone)]
pub struct RecipientIlp {
    pub model: IlpModel,
    pub recipients: Vec<usize>,
    /// Open items of each type, ascending.
    pub type_members: Vec<Vec<usize>>,
    /// Some non-recipient already envies another agent under the given
    /// bundles; no constraint can repair that.
    pub frozen_envy: bool,
}

impl RecipientIlp {
    pub fn p(&self) -> usize {
        self.recipients.len()
    }

    pub fn m_t(&self) -> usize {
        self.type_members.len()
    }

    pub fn var(&self, r: usize, t: usize) -> usize {
        r * self.m_t() + t
    }

    /// Hands out concrete items: within each type, the first `x[0][t]`
    /// members go to the first recipient, the next `x[1][t]` to the second,
    /// and so on.
    pub fn materialize(&self, inst: &Instance, x: &[i64]) -> Allocation {
        let mut owners: Vec<usize> = inst.assigned().iter().map(|o| o.unwrap_or(0)).collect();
        for (t, members) in self.type_members.iter().enumerate() {
            let mut pos = 0;
            for (r, &agent) in self.recipients.iter().enumerate() {
                let count = x[self.var(r, t)] as usize;
                for &item in &members[pos..pos + count] {
                    owners[item] = agent;
                }
                pos += count;
            }
        }
        Allocation::new(owners)
    }

    /// Type counts of an allocation, or `None` if it hands an open item to
    /// a non-recipient.
    pub fn aggregate(&self, alloc: &Allocation) -> Option<Vec<i64>> {
        let mut x = vec![0i64; self.p() * self.m_t()];
        for (t, members) in self.type_members.iter().enumerate() {
            for &item in members {
                let r = self.recipients.binary_search(&alloc.owner(item)).ok()?;
                x[self.var(r, t)] += 1;
            }
        }
        Some(x)
    }
}

pub fn build_ilp(inst: &Instance, recipients: &[usize], options: &IlpOptions) -> Result<RecipientIlp> {
    let n = inst.n();
    let mut recipients = recipients.to_vec();
    recipients.sort_unstable();
    recipients.dedup();
    if let Some(&bad) = recipients.iter().find(|&&r| r >= n) {
        return Err(Error::BadQuery(format!("recipient {bad} out of range")));
    }
    let open = inst.open_items();
    let (_, type_members) = item_groups(inst, &open);
    let m_t = type_members.len();
    let p = recipients.len();
    let mut is_recipient = vec![false; n];
    for &r in &recipients {
        is_recipient[r] = true;
    }

    let given = inst.given_bundles();
    let gw: Vec<Vec<Value>> = (0..n)
        .map(|x| {
            given
                .iter()
                .map(|b| b.iter().map(|&a| inst.value(x, a)).sum())
                .collect()
        })
        .collect();
    // Value agent `x` places on one item of type `t`.
    let tv = |x: usize, t: usize| inst.value(x, type_members[t][0]);

    let mut model = IlpModel::new();
    for r in 0..p {
        for (t, members) in type_members.iter().enumerate() {
            model.add_var(format!("x_{r}_{t}"), 0, members.len() as i64)?;
        }
    }
    let var = |r: usize, t: usize| r * m_t + t;

    for (t, members) in type_members.iter().enumerate() {
        model.add_constraint(
            format!("count_t{t}"),
            (0..p).map(|r| (var(r, t), 1)),
            Relation::Eq,
            members.len() as i64,
        )?;
    }
    for (ri, &i) in recipients.iter().enumerate() {
        for (rj, &j) in recipients.iter().enumerate() {
            if ri == rj {
                continue;
            }
            let terms = (0..m_t)
                .map(|t| (var(ri, t), tv(i, t)))
                .chain((0..m_t).map(|t| (var(rj, t), -tv(i, t))));
            model.add_constraint(format!("rr_{i}_{j}"), terms, Relation::Ge, gw[i][j] - gw[i][i])?;
        }
    }
    for j in (0..n).filter(|&j| !is_recipient[j]) {
        for (ri, &i) in recipients.iter().enumerate() {
            model.add_le(
                format!("nr_{j}_{i}"),
                (0..m_t).map(|t| (var(ri, t), tv(j, t))),
                gw[j][j] - gw[j][i],
            )?;
        }
    }
    if options.supplementary {
        for (ri, &i) in recipients.iter().enumerate() {
            for j in (0..n).filter(|&j| !is_recipient[j]) {
                model.add_constraint(
                    format!("rn_{i}_{j}"),
                    (0..m_t).map(|t| (var(ri, t), tv(i, t))),
                    Relation::Ge,
                    gw[i][j] - gw[i][i],
                )?;
            }
        }
    }

    let frozen_envy = (0..n)
        .filter(|&a| !is_recipient[a])
        .any(|a| (0..n).any(|b| !is_recipient[b] && gw[a][b] > gw[a][a]));

    Ok(RecipientIlp {
        model,
        recipients,
        type_members,
        frozen_envy,
    })
}

pub fn solve_refae_ilp(inst: &Instance) -> Result<SolveOutcome> {
    solve_refae_ilp_with(inst, &IlpOptions::default())
}

pub fn solve_refae_ilp_with(inst: &Instance, options: &IlpOptions) -> Result<SolveOutcome> {
    let Query::Refae { recipients } = inst.query() else {
        return Err(wrong_variant(inst));
    };
    let start = Instant::now();
    let mut stats = SolveStats::default();
    let out = solve_for_set(inst, recipients, options, &mut stats)?;
    Ok(finish(out, stats, start))
}

pub fn solve_fefae_ilp(inst: &Instance) -> Result<SolveOutcome> {
    solve_fefae_ilp_with(inst, &IlpOptions::default())
}

pub fn solve_fefae_ilp_with(inst: &Instance, options: &IlpOptions) -> Result<SolveOutcome> {
    let Query::Fefae { p } = inst.query() else {
        return Err(wrong_variant(inst));
    };
    let start = Instant::now();
    let mut stats = SolveStats::default();
    for set in combinations(inst.n(), *p) {
        match solve_for_set(inst, &set, options, &mut stats)? {
            SetResult::Infeasible => {}
            other => return Ok(finish(other, stats, start)),
        }
    }
    Ok(finish(SetResult::Infeasible, stats, start))
}

/// Dispatches on the query: REFAE or FEFAE.
pub fn solve_recipients_ilp(inst: &Instance, options: &IlpOptions) -> Result<SolveOutcome> {
    match inst.query() {
        Query::Fefae { .. } => solve_fefae_ilp_with(inst, options),
        _ => solve_refae_ilp_with(inst, options),
    }
}

enum SetResult {
    Feasible(Allocation),
    Infeasible,
    Limit,
}

fn solve_for_set(
    inst: &Instance,
    recipients: &[usize],
    options: &IlpOptions,
    stats: &mut SolveStats,
) -> Result<SetResult> {
    let enc = build_ilp(inst, recipients, options)?;
    if enc.frozen_envy {
        return Ok(SetResult::Infeasible);
    }
    stats.states += 1;
    let verdict = solve_ilp(&enc.model, options.node_budget.saturating_sub(stats.nodes).max(1));
    stats.nodes += verdict.nodes;
    Ok(match verdict.status {
        IlpStatus::Feasible(x) => {
            let witness = enc.materialize(inst, &x);
            if options.supplementary && !is_envy_free(inst, &witness) {
                return Err(Error::InternalInvariant(
                    "feasible type counts materialized to an envious allocation".into(),
                ));
            }
            SetResult::Feasible(witness)
        }
        IlpStatus::Infeasible => SetResult::Infeasible,
        IlpStatus::NodeLimit => SetResult::Limit,
    })
}

fn finish(result: SetResult, mut stats: SolveStats, start: Instant) -> SolveOutcome {
    stats.elapsed = start.elapsed();
    match result {
        SetResult::Feasible(w) => SolveOutcome::yes(w, stats),
        SetResult::Infeasible => SolveOutcome::no(stats),
        SetResult::Limit => SolveOutcome::resource_limit(stats),
    }
}

fn wrong_variant(inst: &Instance) -> Error {
    Error::WrongVariant {
        engine: "ilp-p-mt",
        variant: inst.query().variant_name(),
    }
}
