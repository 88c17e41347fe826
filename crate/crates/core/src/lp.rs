//! Thin wrapper around the `minilp` simplex solver with support for adding
//! cuts and fixing variables on an already-solved program.

use minilp::{OptimizationDirection, Problem, Variable};

use crate::error::{Error, Result};

pub use minilp::ComparisonOp as Cmp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Var(Variable);

impl Var {
    pub fn index(&self) -> usize {
        self.0.idx()
    }
}

/// A minimisation LP under construction.
pub struct LinearProgram {
    problem: Problem,
}

impl Default for LinearProgram {
    fn default() -> Self {
        Self::new()
    }
}

impl LinearProgram {
    pub fn new() -> Self {
        LinearProgram { problem: Problem::new(OptimizationDirection::Minimize) }
    }

    pub fn add_var(&mut self, objective: f64, lower: f64, upper: f64) -> Var {
        Var(self.problem.add_var(objective, (lower, upper)))
    }

    pub fn add_constraint(&mut self, terms: &[(Var, f64)], cmp: Cmp, rhs: f64) {
        let expr: Vec<(Variable, f64)> = merge_terms(terms);
        self.problem.add_constraint(expr.as_slice(), cmp, rhs);
    }

    pub fn solve(self) -> Result<LpSession> {
        let solution = self.problem.solve().map_err(map_err)?;
        Ok(LpSession { solution: Some(solution) })
    }
}

/// A solved program that can be re-optimised after adding constraints.
pub struct LpSession {
    solution: Option<minilp::Solution>,
}

impl LpSession {
    fn current(&self) -> &minilp::Solution {
        self.solution.as_ref().expect("LP session used after a failed update")
    }

    pub fn objective(&self) -> f64 {
        self.current().objective()
    }

    pub fn value(&self, v: Var) -> f64 {
        *self.current().var_value(v.0)
    }

    pub fn add_constraint(&mut self, terms: &[(Var, f64)], cmp: Cmp, rhs: f64) -> Result<()> {
        let expr = merge_terms(terms);
        let sol = self.solution.take().expect("LP session used after a failed update");
        self.solution = Some(sol.add_constraint(expr.as_slice(), cmp, rhs).map_err(map_err)?);
        Ok(())
    }

    pub fn fix(&mut self, v: Var, value: f64) -> Result<()> {
        let sol = self.solution.take().expect("LP session used after a failed update");
        self.solution = Some(sol.fix_var(v.0, value).map_err(map_err)?);
        Ok(())
    }
}

fn merge_terms(terms: &[(Var, f64)]) -> Vec<(Variable, f64)> {
    let mut merged: Vec<(Variable, f64)> = Vec::with_capacity(terms.len());
    let mut sorted: Vec<(Var, f64)> = terms.to_vec();
    sorted.sort_by_key(|(v, _)| v.index());
    for (v, c) in sorted {
        match merged.last_mut() {
            Some((last, coef)) if last.idx() == v.index() => *coef += c,
            _ => merged.push((v.0, c)),
        }
    }
    merged
}

fn map_err(e: minilp::Error) -> Error {
    match e {
        minilp::Error::Infeasible => Error::Infeasible,
        other => Error::LpNumericalFailure(other.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_program_with_cut() {
        let mut lp = LinearProgram::new();
        let x = lp.add_var(1.0, 0.0, 1.0);
        let y = lp.add_var(2.0, 0.0, 1.0);
        lp.add_constraint(&[(x, 1.0), (y, 1.0)], Cmp::Ge, 1.0);
        let mut s = lp.solve().unwrap();
        assert!((s.objective() - 1.0).abs() < 1e-9);
        s.add_constraint(&[(y, 1.0)], Cmp::Ge, 0.5).unwrap();
        assert!((s.objective() - 1.5).abs() < 1e-9);
        s.fix(x, 1.0).unwrap();
        assert!((s.value(x) - 1.0).abs() < 1e-9);
        assert!((s.objective() - 2.0).abs() < 1e-9);
    }
}
