//! Bundle arithmetic and the EF / EF1 / EFX checkers.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, Value};

/// Fairness notion accepted by the checkers and the relaxed oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Notion {
    Ef,
    Ef1,
    Efx,
}

impl fmt::Display for Notion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Notion::Ef => "ef",
            Notion::Ef1 => "ef1",
            Notion::Efx => "efx",
        })
    }
}

impl FromStr for Notion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ef" => Ok(Notion::Ef),
            "ef1" => Ok(Notion::Ef1),
            "efx" => Ok(Notion::Efx),
            other => Err(Error::BadParams(format!("unknown fairness notion `{other}`"))),
        }
    }
}

/// Sum of `evaluator`'s values over `items`, overflow-checked.
pub fn items_value(inst: &Instance, evaluator: usize, items: &[usize]) -> Result<Value> {
    let row = inst.row(evaluator);
    items
        .iter()
        .try_fold(0 as Value, |acc, &a| acc.checked_add(row[a]))
        .ok_or(Error::Overflow)
}

/// `evaluator`'s value for the bundle `owner_agent` holds under `alloc`.
pub fn bundle_value(inst: &Instance, evaluator: usize, alloc: &Allocation, owner_agent: usize) -> Result<Value> {
    let row = inst.row(evaluator);
    alloc
        .owners()
        .iter()
        .enumerate()
        .filter(|(_, &o)| o == owner_agent)
        .try_fold(0 as Value, |acc, (a, _)| acc.checked_add(row[a]))
        .ok_or(Error::Overflow)
}

/// How every agent sees every bundle: `worth[i][j] = v_i(B_j)`, plus the
/// largest and smallest single-item value agent `i` sees in `B_j`.
pub(crate) struct BundleView {
    worth: Vec<Vec<Value>>,
    max_item: Vec<Vec<Option<Value>>>,
    min_item: Vec<Vec<Option<Value>>>,
}

impl BundleView {
    pub(crate) fn new(inst: &Instance, owners: &[usize]) -> Self {
        let n = inst.n();
        let mut worth = vec![vec![0; n]; n];
        let mut max_item = vec![vec![None; n]; n];
        let mut min_item: Vec<Vec<Option<Value>>> = vec![vec![None; n]; n];
        for (a, &j) in owners.iter().enumerate() {
            for i in 0..n {
                let v = inst.value(i, a);
                // Row sums were bounded at validation, so no bundle can overflow.
                worth[i][j] += v;
                let hi = &mut max_item[i][j];
                *hi = Some(hi.map_or(v, |h: Value| h.max(v)));
                let lo = &mut min_item[i][j];
                *lo = Some(lo.map_or(v, |l: Value| l.min(v)));
            }
        }
        BundleView {
            worth,
            max_item,
            min_item,
        }
    }

    fn pair_ok(&self, notion: Notion, i: usize, j: usize) -> bool {
        let own = self.worth[i][i];
        let other = self.worth[i][j];
        match notion {
            Notion::Ef => own >= other,
            // Against an empty bundle there is nothing to remove; the pair
            // holds because v_i(own) >= 0 = v_i(empty).
            Notion::Ef1 => self.max_item[i][j].is_none_or(|hi| own >= other - hi),
            Notion::Efx => self.min_item[i][j].is_none_or(|lo| own >= other - lo),
        }
    }

    pub(crate) fn satisfies(&self, notion: Notion) -> bool {
        let n = self.worth.len();
        (0..n).all(|i| (0..n).all(|j| i == j || self.pair_ok(notion, i, j)))
    }
}

/// All ordered pairs `(i, j)` where `i` strictly prefers `j`'s bundle, in
/// lexicographic order.
pub fn envy_pairs(inst: &Instance, alloc: &Allocation) -> Vec<(usize, usize)> {
    let view = BundleView::new(inst, alloc.owners());
    let n = inst.n();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && view.worth[i][i] < view.worth[i][j] {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

pub fn satisfies(inst: &Instance, alloc: &Allocation, notion: Notion) -> bool {
    BundleView::new(inst, alloc.owners()).satisfies(notion)
}

pub fn is_envy_free(inst: &Instance, alloc: &Allocation) -> bool {
    satisfies(inst, alloc, Notion::Ef)
}

pub fn is_ef1(inst: &Instance, alloc: &Allocation) -> bool {
    satisfies(inst, alloc, Notion::Ef1)
}

/// EFX with the removal quantifier over every item of the envied bundle,
/// zero-valued ones included.
pub fn is_efx(inst: &Instance, alloc: &Allocation) -> bool {
    satisfies(inst, alloc, Notion::Efx)
}

/// True iff the partial allocation of `inst`, restricted to the given
/// items, is envy-free.
pub fn given_is_envy_free(inst: &Instance) -> bool {
    let (sub, alloc) = inst.restrict_to_given();
    is_envy_free(&sub, &alloc)
}
