//! EF1 extensions of envy-free partial allocations, and the small
//! instances showing that EF1 and EFX extensions need not exist otherwise.
//!
//! If the given bundles are envy-free, an allocation of the open items
//! that is EF1 on its own keeps the combined allocation EF1: additivity
//! lets the two guarantees be summed.

use std::fmt;

use crate::error::{Error, Result};
use crate::fairness::{given_is_envy_free, is_ef1, is_efx, Notion};
use crate::model::{Allocation, Instance, Query, Value};
use crate::oracle::{solve_bruteforce_relaxed, OracleBudget};
use crate::outcome::Answer;

/// How the open items are divided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ef1Engine {
    /// Agents pick in index order, each taking its favourite remaining item.
    #[default]
    RoundRobin,
    /// Items in index order go to an unenvied agent; envy cycles among the
    /// open-item bundles are rotated away first.
    EnvyCycle,
}

pub fn extend_to_ef1(inst: &Instance) -> Result<Allocation> {
    extend_to_ef1_with(inst, Ef1Engine::RoundRobin)
}

pub fn extend_to_ef1_with(inst: &Instance, engine: Ef1Engine) -> Result<Allocation> {
    if !given_is_envy_free(inst) {
        return Err(Error::GammaNotEf);
    }
    let open = inst.open_items();
    let bundles = match engine {
        Ef1Engine::RoundRobin => round_robin(inst, &open),
        Ef1Engine::EnvyCycle => envy_cycle(inst, &open),
    };
    let mut pairs = Vec::with_capacity(open.len());
    for (agent, bundle) in bundles.iter().enumerate() {
        pairs.extend(bundle.iter().map(|&item| (item, agent)));
    }
    let alloc = Allocation::extend(inst, &pairs)?;
    if !is_ef1(inst, &alloc) {
        return Err(Error::InternalInvariant(
            "EF1 extension of an envy-free partial allocation failed the checker".into(),
        ));
    }
    Ok(alloc)
}

/// Open-item bundles per agent, each listed in pick order.
pub fn round_robin(inst: &Instance, open: &[usize]) -> Vec<Vec<usize>> {
    let n = inst.n();
    let mut bundles = vec![Vec::new(); n];
    let mut remaining: Vec<usize> = open.to_vec();
    let mut agent = 0;
    while !remaining.is_empty() {
        // Highest value first; among equals the lowest item index, which is
        // the first maximum in `remaining` (kept ascending).
        let row = inst.row(agent);
        let mut best = 0;
        for (pos, &item) in remaining.iter().enumerate() {
            if row[item] > row[remaining[best]] {
                best = pos;
            }
        }
        bundles[agent].push(remaining.remove(best));
        agent = (agent + 1) % n;
    }
    bundles
}

pub fn envy_cycle(inst: &Instance, open: &[usize]) -> Vec<Vec<usize>> {
    let n = inst.n();
    let mut bundles: Vec<Vec<usize>> = vec![Vec::new(); n];
    let worth = |i: usize, b: &[usize]| -> Value { b.iter().map(|&a| inst.value(i, a)).sum() };
    for &item in open {
        loop {
            let envied: Vec<bool> = (0..n)
                .map(|j| (0..n).any(|i| i != j && worth(i, &bundles[i]) < worth(i, &bundles[j])))
                .collect();
            if let Some(free) = envied.iter().position(|&e| !e) {
                bundles[free].push(item);
                break;
            }
            // Every agent is envied, so walking backwards along envy edges
            // must revisit an agent.
            let cycle = find_cycle(n, |i, j| worth(i, &bundles[i]) < worth(i, &bundles[j]));
            let taken: Vec<Vec<usize>> = cycle.iter().map(|&(_, j)| bundles[j].clone()).collect();
            for (&(i, _), b) in cycle.iter().zip(taken) {
                bundles[i] = b;
            }
        }
    }
    bundles
}

/// A directed cycle `(i, succ(i))` in the envy graph, where every agent
/// is envied by someone.
fn find_cycle(n: usize, envies: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    // Follow "someone who envies me" links from agent 0 until a repeat.
    let envier = |j: usize| (0..n).find(|&i| i != j && envies(i, j)).expect("every agent is envied");
    let mut seen = vec![usize::MAX; n];
    let mut path = Vec::new();
    let mut cur = 0;
    while seen[cur] == usize::MAX {
        seen[cur] = path.len();
        path.push(cur);
        cur = envier(cur);
    }
    // path[k] is envied by path[k+1]; the cycle starts where `cur` was seen.
    let cycle = &path[seen[cur]..];
    let len = cycle.len();
    (0..len).map(|k| (cycle[(k + 1) % len], cycle[k])).collect()
}

/// What a catalog instance is known to witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogProperty {
    /// The given bundles are envy-free, yet no EFX extension exists.
    NoEfxExtension,
    /// The given bundles are EFX, yet no EF1 extension exists.
    NoEf1Extension,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub instance: Instance,
    pub property: CatalogProperty,
}

/// Named counterexamples, re-verified by brute force when loaded.
#[derive(Debug, Clone)]
pub struct CounterexampleCatalog {
    entries: Vec<CatalogEntry>,
}

impl CounterexampleCatalog {
    pub const NAMES: [&'static str; 3] = ["EFX_BLOCK_2AGENT", "EFX_BLOCK_349", "EF1_BLOCK_FROM_EFX"];

    /// Builds the catalog; fails if any entry does not have its property.
    pub fn load() -> Result<Self> {
        let catalog = Self::unverified();
        let report = catalog.verify();
        if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
            return Err(Error::InternalInvariant(format!(
                "catalog entry {} fails: {}",
                bad.instance, bad.assertion
            )));
        }
        Ok(catalog)
    }

    fn unverified() -> Self {
        let ids = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let efx_block = |name: &'static str, open_values: &[Value], open_ids: &[&str]| {
            let mut row = vec![1, 1];
            row.extend_from_slice(open_values);
            let mut items = ids(&["g1", "g2"]);
            items.extend(ids(open_ids));
            let mut assigned = vec![Some(0), Some(1)];
            assigned.extend(std::iter::repeat_n(None, open_values.len()));
            CatalogEntry {
                name,
                instance: Instance::new(ids(&["1", "2"]), items, vec![row.clone(), row], assigned, Query::Efae)
                    .expect("catalog instance is valid"),
                property: CatalogProperty::NoEfxExtension,
            }
        };
        let entries = vec![
            efx_block("EFX_BLOCK_2AGENT", &[2], &["o"]),
            efx_block("EFX_BLOCK_349", &[3, 4, 9], &["o3", "o4", "o9"]),
            CatalogEntry {
                name: "EF1_BLOCK_FROM_EFX",
                instance: Instance::new(
                    ids(&["1", "2"]),
                    ids(&["x", "y", "z"]),
                    vec![vec![10, 0, 1], vec![0, 10, 1]],
                    vec![Some(1), Some(0), None],
                    Query::Efae,
                )
                .expect("catalog instance is valid"),
                property: CatalogProperty::NoEf1Extension,
            },
        ];
        CounterexampleCatalog { entries }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name.eq_ignore_ascii_case(name))
    }

    pub fn verify(&self) -> CatalogReport {
        let mut checks = Vec::new();
        for e in &self.entries {
            let (sub, gamma) = e.instance.restrict_to_given();
            let mut check = |assertion: &'static str, passed: bool| {
                checks.push(CatalogCheck {
                    instance: e.name,
                    assertion,
                    passed,
                })
            };
            let exists = |notion| solve_bruteforce_relaxed(&e.instance, notion, OracleBudget::default()).answer;
            match e.property {
                CatalogProperty::NoEfxExtension => {
                    check("given bundles are envy-free", given_is_envy_free(&e.instance));
                    check("no EFX extension exists", exists(Notion::Efx) == Answer::No);
                    check("an EF1 extension exists", exists(Notion::Ef1) == Answer::Yes);
                }
                CatalogProperty::NoEf1Extension => {
                    check("given bundles are EFX", is_efx(&sub, &gamma));
                    check("no EF1 extension exists", exists(Notion::Ef1) == Answer::No);
                }
            }
        }
        CatalogReport { checks }
    }
}

/// Free-standing verification of the built-in catalog.
pub fn verify_catalog() -> CatalogReport {
    CounterexampleCatalog::unverified().verify()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogCheck {
    pub instance: &'static str,
    pub assertion: &'static str,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogReport {
    pub checks: Vec<CatalogCheck>,
}

impl CatalogReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for CatalogReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {}: {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.instance,
                c.assertion
            )?;
        }
        Ok(())
    }
}
