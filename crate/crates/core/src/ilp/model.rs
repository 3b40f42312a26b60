use std::fmt::{self, Write as _};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub lower: i64,
    pub upper: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `Σ a_j x_j = rhs`
    Eq,
    /// `Σ a_j x_j ≥ rhs`
    Ge,
}

/// `Σ coef · x[var]  (=|≥)  rhs`, with at most one term per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub label: String,
    pub terms: Vec<(usize, i64)>,
    pub relation: Relation,
    pub rhs: i64,
}

impl LinearConstraint {
    pub fn holds(&self, x: &[i64]) -> bool {
        let lhs: i128 = self.terms.iter().map(|&(v, a)| a as i128 * x[v] as i128).sum();
        match self.relation {
            Relation::Eq => lhs == self.rhs as i128,
            Relation::Ge => lhs >= self.rhs as i128,
        }
    }
}

/// A pure integer feasibility problem over bounded variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IlpModel {
    vars: Vec<Variable>,
    constraints: Vec<LinearConstraint>,
}

impl IlpModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(&mut self, name: impl Into<String>, lower: i64, upper: i64) -> Result<usize> {
        if lower > upper {
            return Err(Error::BadParams(format!(
                "variable bounds [{lower}, {upper}] are empty"
            )));
        }
        self.vars.push(Variable {
            name: name.into(),
            lower,
            upper,
        });
        Ok(self.vars.len() - 1)
    }

    /// Adds a constraint, merging repeated variables and dropping zero terms.
    pub fn add_constraint(
        &mut self,
        label: impl Into<String>,
        terms: impl IntoIterator<Item = (usize, i64)>,
        relation: Relation,
        rhs: i64,
    ) -> Result<()> {
        let mut dense: Vec<i64> = vec![0; self.vars.len()];
        for (v, a) in terms {
            let slot = dense
                .get_mut(v)
                .ok_or_else(|| Error::BadParams(format!("constraint references undeclared variable {v}")))?;
            *slot = slot.checked_add(a).ok_or(Error::Overflow)?;
        }
        let terms = dense.into_iter().enumerate().filter(|&(_, a)| a != 0).collect();
        self.constraints.push(LinearConstraint {
            label: label.into(),
            terms,
            relation,
            rhs,
        });
        Ok(())
    }

    /// `Σ terms ≤ rhs`, stored as `Σ -terms ≥ -rhs`.
    pub fn add_le(
        &mut self,
        label: impl Into<String>,
        terms: impl IntoIterator<Item = (usize, i64)>,
        rhs: i64,
    ) -> Result<()> {
        let negated: Vec<(usize, i64)> = terms.into_iter().map(|(v, a)| (v, -a)).collect();
        self.add_constraint(label, negated, Relation::Ge, -rhs)
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    /// True iff `x` is within bounds and satisfies every constraint.
    pub fn is_satisfied(&self, x: &[i64]) -> bool {
        x.len() == self.vars.len()
            && self.vars.iter().zip(x).all(|(v, &xi)| v.lower <= xi && xi <= v.upper)
            && self.constraints.iter().all(|c| c.holds(x))
    }

    /// Plain-text LP-style rendering: one constraint per line, integer
    /// coefficients, readable by common LP tools.
    pub fn to_lp(&self) -> String {
        let mut out = String::new();
        out.push_str("Minimize\n obj:");
        if let Some(v) = self.vars.first() {
            let _ = write!(out, " 0 {}", v.name);
        }
        out.push_str("\nSubject To\n");
        for c in &self.constraints {
            let _ = writeln!(
                out,
                " {}: {} {} {}",
                c.label,
                self.render_terms(&c.terms),
                relation_symbol(c.relation),
                c.rhs
            );
        }
        out.push_str("Bounds\n");
        for v in &self.vars {
            let _ = writeln!(out, " {} <= {} <= {}", v.lower, v.name, v.upper);
        }
        if !self.vars.is_empty() {
            out.push_str("General\n");
            let names: Vec<&str> = self.vars.iter().map(|v| v.name.as_str()).collect();
            let _ = writeln!(out, " {}", names.join(" "));
        }
        out.push_str("End\n");
        out
    }

    fn render_terms(&self, terms: &[(usize, i64)]) -> String {
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, &(v, a)) in terms.iter().enumerate() {
            let name = &self.vars[v].name;
            match (idx, a < 0) {
                (0, false) => write!(s, "{a} {name}"),
                (0, true) => write!(s, "- {} {name}", -a),
                (_, false) => write!(s, " + {a} {name}"),
                (_, true) => write!(s, " - {} {name}", -a),
            }
            .expect("writing to a String");
        }
        s
    }
}

fn relation_symbol(r: Relation) -> &'static str {
    match r {
        Relation::Eq => "=",
        Relation::Ge => ">=",
    }
}

impl fmt::Display for IlpModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_lp())
    }
}
