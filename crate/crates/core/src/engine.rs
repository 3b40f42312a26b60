//! Engine identifiers, dispatch, and automatic engine choice.

use std::fmt;
use std::str::FromStr;

use crate::dp::{solve_dp_with, total_value, DpConfig};
use crate::error::{Error, Result};
use crate::fpt::solve_fpt_k_nt;
use crate::ilp::{solve_recipients_ilp, IlpOptions};
use crate::model::{Instance, Query};
use crate::oracle::{solve_bruteforce, OracleBudget};
use crate::outcome::SolveOutcome;
use crate::types::{compute_types, item_groups};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Engine {
    Brute,
    FptKNt,
    DpPNt,
    IlpPMt,
}

impl Engine {
    pub const ALL: [Engine; 4] = [Engine::Brute, Engine::FptKNt, Engine::DpPNt, Engine::IlpPMt];

    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Brute => "brute",
            Engine::FptKNt => "fpt-k-nt",
            Engine::DpPNt => "dp-p-nt",
            Engine::IlpPMt => "ilp-p-mt",
        }
    }

    /// Whether the engine accepts the instance's query variant.
    pub fn supports(self, query: &Query) -> bool {
        match self {
            Engine::Brute => true,
            Engine::FptKNt => matches!(query, Query::Efae),
            Engine::DpPNt | Engine::IlpPMt => !matches!(query, Query::Efae),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Engine::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| Error::BadParams(format!("unknown engine `{s}`")))
    }
}

/// Per-engine knobs used by [`run_engine`].
#[derive(Debug, Clone, Copy, Default)]
pub struct EngineConfig {
    pub oracle: OracleBudget,
    pub dp: DpConfig,
    pub ilp: IlpOptions,
}

pub fn run_engine(inst: &Instance, engine: Engine, config: &EngineConfig) -> Result<SolveOutcome> {
    match engine {
        Engine::Brute => Ok(solve_bruteforce(inst, config.oracle)),
        Engine::FptKNt => solve_fpt_k_nt(inst),
        Engine::DpPNt => solve_dp_with(inst, &config.dp).map(|(out, _)| out),
        Engine::IlpPMt => {
            if matches!(inst.query(), Query::Efae) {
                return Err(Error::WrongVariant {
                    engine: "ilp-p-mt",
                    variant: "EFAE",
                });
            }
            solve_recipients_ilp(inst, &config.ilp)
        }
    }
}

/// Limits behind [`select_algorithm`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelectionThresholds {
    /// Largest acceptable worst-case branch estimate for the open-item engine.
    pub fpt_bound: f64,
    /// Largest `p · m_t` (open-item types) handed to the ILP engine.
    pub ilp_vars: usize,
    /// Unary-size guard for the configuration DP.
    pub dp_total_value: i64,
    /// Assignments the brute-force engine may enumerate.
    pub oracle_assignments: u64,
}

impl Default for SelectionThresholds {
    fn default() -> Self {
        SelectionThresholds {
            fpt_bound: 1e9,
            ilp_vars: 12,
            dp_total_value: DpConfig::default().max_total_value,
            oracle_assignments: OracleBudget::DEFAULT_MAX,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub engine: Engine,
    pub rationale: String,
}

pub fn select_algorithm(inst: &Instance) -> Selection {
    select_algorithm_with(inst, &SelectionThresholds::default())
}

pub fn select_algorithm_with(inst: &Instance, th: &SelectionThresholds) -> Selection {
    let n = inst.n();
    let k = inst.k();
    // Assignments the brute-force engine would enumerate in the worst case.
    let oracle_cost = match inst.query() {
        Query::Efae => (n as f64).powi(k as i32),
        Query::Refae { recipients } => (recipients.len() as f64).powi(k as i32),
        Query::Fefae { p } => binomial(n, *p) * (*p as f64).powi(k as i32),
    };
    match inst.query() {
        Query::Efae => {
            let n_t = compute_types(inst).n_types();
            let kf = k as f64;
            let bound = kf.powf(kf) * (kf * n_t as f64 + 1.0).powf(kf) * (kf * n as f64).powf(kf);
            if bound <= th.fpt_bound {
                Selection {
                    engine: Engine::FptKNt,
                    rationale: format!(
                        "k = {k}, n_t = {n_t}: branch estimate {bound:.3e} within {:.0e}",
                        th.fpt_bound
                    ),
                }
            } else if oracle_cost > th.oracle_assignments as f64 {
                Selection {
                    engine: Engine::FptKNt,
                    rationale: format!(
                        "branch estimate {bound:.3e} is large, but brute force needs {oracle_cost:.3e} > {} assignments",
                        th.oracle_assignments
                    ),
                }
            } else {
                Selection {
                    engine: Engine::Brute,
                    rationale: format!("branch estimate {bound:.3e} exceeds brute-force cost {oracle_cost:.3e}"),
                }
            }
        }
        query => {
            let p = match query {
                Query::Refae { recipients } => recipients.len(),
                Query::Fefae { p } => *p,
                Query::Efae => unreachable!(),
            };
            let open = inst.open_items();
            let m_t = item_groups(inst, &open).1.len();
            let v_total = total_value(inst);
            if p * m_t <= th.ilp_vars {
                Selection {
                    engine: Engine::IlpPMt,
                    rationale: format!("p = {p}, open m_t = {m_t}: {} integer variables", p * m_t),
                }
            } else if v_total <= th.dp_total_value {
                Selection {
                    engine: Engine::DpPNt,
                    rationale: format!(
                        "p·m_t = {} too many variables; total value {v_total} passes the unary guard",
                        p * m_t
                    ),
                }
            } else {
                Selection {
                    engine: Engine::Brute,
                    rationale: format!("p·m_t = {} and total value {v_total} both exceed their limits", p * m_t),
                }
            }
        }
    }
}

fn binomial(n: usize, r: usize) -> f64 {
    (0..r.min(n)).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
