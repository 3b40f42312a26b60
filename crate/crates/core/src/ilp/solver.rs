//! Depth-first branch and bound for bounded integer feasibility.
//!
//! Variables are fixed in declaration order, values ascending. Before a
//! variable is branched on, every constraint that mentions it narrows its
//! domain to the values that still admit some completion of the remaining
//! variables within their bounds, so dead subtrees are never entered.

use super::model::{IlpModel, Relation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IlpStatus {
    Feasible(Vec<i64>),
    Infeasible,
    /// The node budget ran out before the search finished.
    NodeLimit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IlpVerdict {
    pub status: IlpStatus,
    /// Values tried across the whole search.
    pub nodes: u64,
}

impl IlpVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self.status, IlpStatus::Feasible(_))
    }
}

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

pub fn solve_ilp(model: &IlpModel, node_budget: u64) -> IlpVerdict {
    let search = Search::new(model);
    let mut x = vec![0i64; model.vars().len()];
    let mut partial = vec![0i128; model.constraints().len()];
    let mut nodes = 0u64;
    // Constraints with no terms are decided up front.
    if (0..search.rows.len()).any(|c| !search.admits(c, 0, 0)) {
        return IlpVerdict {
            status: IlpStatus::Infeasible,
            nodes,
        };
    }
    let status = match search.dfs(0, &mut x, &mut partial, &mut nodes, node_budget) {
        Step::Found => {
            debug_assert!(model.is_satisfied(&x));
            IlpStatus::Feasible(x)
        }
        Step::Exhausted => IlpStatus::Infeasible,
        Step::Limit => IlpStatus::NodeLimit,
    };
    IlpVerdict { status, nodes }
}

enum Step {
    Found,
    Exhausted,
    Limit,
}

struct Row {
    coef: Vec<i128>,
    relation: Relation,
    rhs: i128,
    /// `suffix_min[d]` / `suffix_max[d]`: extreme contribution of variables
    /// `d..` within their bounds.
    suffix_min: Vec<i128>,
    suffix_max: Vec<i128>,
}

struct Search {
    lower: Vec<i128>,
    upper: Vec<i128>,
    rows: Vec<Row>,
    /// Rows that mention each variable.
    touching: Vec<Vec<usize>>,
}

impl Search {
    fn new(model: &IlpModel) -> Self {
        let nv = model.vars().len();
        let lower: Vec<i128> = model.vars().iter().map(|v| v.lower as i128).collect();
        let upper: Vec<i128> = model.vars().iter().map(|v| v.upper as i128).collect();
        let mut touching = vec![Vec::new(); nv];
        let rows = model
            .constraints()
            .iter()
            .enumerate()
            .map(|(ci, c)| {
                let mut coef = vec![0i128; nv];
                for &(v, a) in &c.terms {
                    coef[v] = a as i128;
                    touching[v].push(ci);
                }
                let mut suffix_min = vec![0i128; nv + 1];
                let mut suffix_max = vec![0i128; nv + 1];
                for d in (0..nv).rev() {
                    let (a, b) = (coef[d] * lower[d], coef[d] * upper[d]);
                    suffix_min[d] = suffix_min[d + 1] + a.min(b);
                    suffix_max[d] = suffix_max[d + 1] + a.max(b);
                }
                Row {
                    coef,
                    relation: c.relation,
                    rhs: c.rhs as i128,
                    suffix_min,
                    suffix_max,
                }
            })
            .collect();
        Search {
            lower,
            upper,
            rows,
            touching,
        }
    }

    /// Can row `c`, with fixed part `fixed`, still be met by variables `d..`?
    fn admits(&self, c: usize, fixed: i128, d: usize) -> bool {
        let row = &self.rows[c];
        let hi = fixed + row.suffix_max[d];
        let lo = fixed + row.suffix_min[d];
        match row.relation {
            Relation::Ge => hi >= row.rhs,
            Relation::Eq => lo <= row.rhs && row.rhs <= hi,
        }
    }

    /// Domain of variable `d` consistent with every row, given the prefix.
    fn domain(&self, d: usize, partial: &[i128]) -> Option<(i128, i128)> {
        let (mut lo, mut hi) = (self.lower[d], self.upper[d]);
        for &c in &self.touching[d] {
            let row = &self.rows[c];
            let a = row.coef[d];
            // Need a·x ∈ [need_lo, need_hi].
            let need_lo = row.rhs - partial[c] - row.suffix_max[d + 1];
            let need_hi = match row.relation {
                Relation::Ge => None,
                Relation::Eq => Some(row.rhs - partial[c] - row.suffix_min[d + 1]),
            };
            if a > 0 {
                lo = lo.max(div_ceil(need_lo, a));
                if let Some(h) = need_hi {
                    hi = hi.min(div_floor(h, a));
                }
            } else {
                hi = hi.min(div_floor(need_lo, a));
                if let Some(h) = need_hi {
                    lo = lo.max(div_ceil(h, a));
                }
            }
            if lo > hi {
                return None;
            }
        }
        Some((lo, hi))
    }

    fn dfs(&self, d: usize, x: &mut [i64], partial: &mut [i128], nodes: &mut u64, budget: u64) -> Step {
        if d == x.len() {
            return Step::Found;
        }
        let Some((lo, hi)) = self.domain(d, partial) else {
            return Step::Exhausted;
        };
        for value in lo..=hi {
            if *nodes >= budget {
                return Step::Limit;
            }
            *nodes += 1;
            x[d] = value as i64;
            for &c in &self.touching[d] {
                partial[c] += self.rows[c].coef[d] * value;
            }
            let step = self.dfs(d + 1, x, partial, nodes, budget);
            for &c in &self.touching[d] {
                partial[c] -= self.rows[c].coef[d] * value;
            }
            match step {
                Step::Exhausted => {}
                other => return other,
            }
        }
        Step::Exhausted
    }
}

fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contradictory_equalities() {
        let mut m = IlpModel::new();
        let x = m.add_var("x", 0, 5).unwrap();
        m.add_constraint("a", [(x, 1)], Relation::Eq, 1).unwrap();
        m.add_constraint("b", [(x, 1)], Relation::Eq, 2).unwrap();
        assert_eq!(solve_ilp(&m, 100).status, IlpStatus::Infeasible);
    }

    #[test]
    fn unconstrained_takes_first_value() {
        let mut m = IlpModel::new();
        m.add_var("x", 0, 3).unwrap();
        assert_eq!(solve_ilp(&m, 100).status, IlpStatus::Feasible(vec![0]));
    }

    #[test]
    fn empty_model_is_feasible() {
        assert_eq!(solve_ilp(&IlpModel::new(), 1).status, IlpStatus::Feasible(vec![]));
    }

    #[test]
    fn empty_row_with_positive_rhs_is_infeasible() {
        let mut m = IlpModel::new();
        m.add_constraint("c", [], Relation::Ge, 1).unwrap();
        assert_eq!(solve_ilp(&m, 10).status, IlpStatus::Infeasible);
    }

    #[test]
    fn parity_needs_search() {
        // 2x + 2y = 7 has no integer solution; propagation alone cannot see it.
        let mut m = IlpModel::new();
        let x = m.add_var("x", 0, 4).unwrap();
        let y = m.add_var("y", 0, 4).unwrap();
        m.add_constraint("c", [(x, 2), (y, 2)], Relation::Eq, 7).unwrap();
        let v = solve_ilp(&m, 1_000);
        assert_eq!(v.status, IlpStatus::Infeasible);
        assert!(v.nodes > 0);
    }

    #[test]
    fn negative_coefficients() {
        // x - y >= 2, x + y = 4  ->  first hit x = 3, y = 1.
        let mut m = IlpModel::new();
        let x = m.add_var("x", 0, 4).unwrap();
        let y = m.add_var("y", 0, 4).unwrap();
        m.add_constraint("d", [(x, 1), (y, -1)], Relation::Ge, 2).unwrap();
        m.add_constraint("s", [(x, 1), (y, 1)], Relation::Eq, 4).unwrap();
        assert_eq!(solve_ilp(&m, 1_000).status, IlpStatus::Feasible(vec![3, 1]));
    }

    #[test]
    fn budget() {
        let mut m = IlpModel::new();
        let vars: Vec<usize> = (0..6).map(|i| m.add_var(format!("x{i}"), 0, 4).unwrap()).collect();
        m.add_constraint("c", vars.iter().map(|&v| (v, 2)), Relation::Eq, 13)
            .unwrap();
        assert_eq!(solve_ilp(&m, 5).status, IlpStatus::NodeLimit);
    }

    #[test]
    fn rounding_helpers() {
        assert_eq!(div_floor(-7, 2), -4);
        assert_eq!(div_ceil(-7, 2), -3);
        assert_eq!(div_floor(7, -2), -4);
        assert_eq!(div_ceil(7, 2), 4);
        assert_eq!(div_floor(6, 3), 2);
    }
}
