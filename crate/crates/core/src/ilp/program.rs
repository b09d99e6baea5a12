//! Bounded integer programs and an exact depth-first branch-and-bound solver.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub lower: i64,
    pub upper: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        })
    }
}

/// `Σ coef · var  sense  rhs`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(usize, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

/// Maximize a linear objective over integer variables with finite bounds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IntegerProgram {
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
    pub objective: Vec<(usize, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IpSolution {
    Optimal { value: i64, assignment: Vec<i64> },
    Infeasible,
}

impl IpSolution {
    pub fn value(&self) -> Option<i64> {
        match self {
            IpSolution::Optimal { value, .. } => Some(*value),
            IpSolution::Infeasible => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, IpSolution::Optimal { .. })
    }
}

impl IntegerProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_variable(&mut self, name: impl Into<String>, lower: i64, upper: i64) -> usize {
        self.variables.push(Variable { name: name.into(), lower, upper });
        self.variables.len() - 1
    }

    pub fn add_constraint(&mut self, name: impl Into<String>, terms: Vec<(usize, i64)>, sense: Sense, rhs: i64) {
        self.constraints.push(Constraint { name: name.into(), terms, sense, rhs });
    }

    pub fn add_objective_term(&mut self, var: usize, coef: i64) {
        self.objective.push((var, coef));
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    /// Checks bounds, variable references and that no constraint is empty.
    pub fn validate(&self) -> Result<()> {
        let nvars = self.variables.len();
        for v in &self.variables {
            if v.lower > v.upper {
                return Err(Error::Program(format!("variable {} has empty range [{}, {}]", v.name, v.lower, v.upper)));
            }
        }
        for c in &self.constraints {
            if c.terms.is_empty() {
                return Err(Error::Program(format!("constraint {} has no terms", c.name)));
            }
            if let Some(&(i, _)) = c.terms.iter().find(|(i, _)| *i >= nvars) {
                return Err(Error::Program(format!("constraint {} references undeclared variable {i}", c.name)));
            }
        }
        if let Some(&(i, _)) = self.objective.iter().find(|(i, _)| *i >= nvars) {
            return Err(Error::Program(format!("objective references undeclared variable {i}")));
        }
        Ok(())
    }

    pub fn objective_value(&self, assignment: &[i64]) -> i64 {
        self.objective.iter().map(|&(i, c)| c * assignment[i]).sum()
    }

    pub fn is_feasible(&self, assignment: &[i64]) -> bool {
        assignment.len() == self.variables.len()
            && self.variables.iter().zip(assignment).all(|(v, &x)| v.lower <= x && x <= v.upper)
            && self.constraints.iter().all(|c| {
                let lhs: i64 = c.terms.iter().map(|&(i, a)| a * assignment[i]).sum();
                match c.sense {
                    Sense::Le => lhs <= c.rhs,
                    Sense::Ge => lhs >= c.rhs,
                    Sense::Eq => lhs == c.rhs,
                }
            })
    }
}

fn floor_div(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) == (b < 0)) {
        q + 1
    } else {
        q
    }
}

/// Tightens `lo`/`hi` in place from `Σ a·x <= rhs` rows until nothing
/// changes. Returns false once some range becomes empty.
fn propagate(rows: &[(Vec<(usize, i64)>, i64)], lo: &mut [i64], hi: &mut [i64]) -> bool {
    loop {
        let mut changed = false;
        for (terms, rhs) in rows {
            let min_activity: i64 = terms.iter().map(|&(i, a)| if a > 0 { a * lo[i] } else { a * hi[i] }).sum();
            if min_activity > *rhs {
                return false;
            }
            for &(i, a) in terms {
                let own = if a > 0 { a * lo[i] } else { a * hi[i] };
                let slack = rhs - (min_activity - own);
                if a > 0 {
                    let bound = floor_div(slack, a);
                    if bound < hi[i] {
                        hi[i] = bound;
                        changed = true;
                    }
                } else {
                    let bound = ceil_div(slack, a);
                    if bound > lo[i] {
                        lo[i] = bound;
                        changed = true;
                    }
                }
                if lo[i] > hi[i] {
                    return false;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

struct Search<'a> {
    rows: &'a [(Vec<(usize, i64)>, i64)],
    objective: Vec<i64>,
    best: Option<(i64, Vec<i64>)>,
}

impl Search<'_> {
    fn run(&mut self, lo: Vec<i64>, hi: Vec<i64>) {
        let bound: i64 = self.objective.iter().enumerate().map(|(i, &c)| (c * lo[i]).max(c * hi[i])).sum();
        if matches!(&self.best, Some((best, _)) if bound <= *best) {
            return;
        }
        let Some(var) = (0..lo.len()).find(|&i| lo[i] < hi[i]) else {
            // Every variable fixed and all rows survived propagation.
            self.best = Some((bound, lo));
            return;
        };
        let values: Box<dyn Iterator<Item = i64>> =
            if self.objective[var] > 0 { Box::new((lo[var]..=hi[var]).rev()) } else { Box::new(lo[var]..=hi[var]) };
        for v in values {
            let (mut l, mut h) = (lo.clone(), hi.clone());
            l[var] = v;
            h[var] = v;
            if propagate(self.rows, &mut l, &mut h) {
                self.run(l, h);
            }
        }
    }
}

/// Exact optimum of a bounded integer program.
///
/// Depth-first over variables in declaration order, with bound propagation
/// at every node and an upper bound that lets every objective term take its
/// best value independently.
pub fn solve_ip(ip: &IntegerProgram) -> Result<IpSolution> {
    ip.validate()?;
    let mut rows = Vec::new();
    for c in &ip.constraints {
        let negated = || c.terms.iter().map(|&(i, a)| (i, -a)).collect::<Vec<_>>();
        match c.sense {
            Sense::Le => rows.push((c.terms.clone(), c.rhs)),
            Sense::Ge => rows.push((negated(), -c.rhs)),
            Sense::Eq => {
                rows.push((c.terms.clone(), c.rhs));
                rows.push((negated(), -c.rhs));
            }
        }
    }
    let mut objective = vec![0i64; ip.variables.len()];
    for &(i, c) in &ip.objective {
        objective[i] += c;
    }
    let mut lo: Vec<i64> = ip.variables.iter().map(|v| v.lower).collect();
    let mut hi: Vec<i64> = ip.variables.iter().map(|v| v.upper).collect();
    if !propagate(&rows, &mut lo, &mut hi) {
        return Ok(IpSolution::Infeasible);
    }
    let mut search = Search { rows: &rows, objective, best: None };
    search.run(lo, hi);
    Ok(match search.best {
        Some((value, assignment)) => {
            debug_assert!(ip.is_feasible(&assignment));
            IpSolution::Optimal { value, assignment }
        }
        None => IpSolution::Infeasible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_division() {
        assert_eq!(floor_div(7, 2), 3);
        assert_eq!(floor_div(-7, 2), -4);
        assert_eq!(floor_div(7, -2), -4);
        assert_eq!(ceil_div(7, 2), 4);
        assert_eq!(ceil_div(-7, 2), -3);
        assert_eq!(ceil_div(-6, -2), 3);
    }

    #[test]
    fn single_variable() {
        let mut ip = IntegerProgram::new();
        let x = ip.add_variable("x", 0, 5);
        ip.add_objective_term(x, 1);
        assert_eq!(solve_ip(&ip).unwrap(), IpSolution::Optimal { value: 5, assignment: vec![5] });
    }

    #[test]
    fn packing_two_binaries() {
        let mut ip = IntegerProgram::new();
        let x = ip.add_variable("x", 0, 1);
        let y = ip.add_variable("y", 0, 1);
        ip.add_constraint("c", vec![(x, 1), (y, 1)], Sense::Le, 1);
        ip.add_objective_term(x, 1);
        ip.add_objective_term(y, 1);
        assert_eq!(solve_ip(&ip).unwrap().value(), Some(1));
    }

    #[test]
    fn infeasible_is_not_zero() {
        let mut ip = IntegerProgram::new();
        let x = ip.add_variable("x", 0, 3);
        ip.add_constraint("c", vec![(x, 2)], Sense::Eq, 3);
        assert_eq!(solve_ip(&ip).unwrap(), IpSolution::Infeasible);
        let mut zero = IntegerProgram::new();
        zero.add_variable("x", 0, 3);
        assert_eq!(solve_ip(&zero).unwrap().value(), Some(0));
    }

    #[test]
    fn empty_program() {
        assert_eq!(solve_ip(&IntegerProgram::new()).unwrap(), IpSolution::Optimal { value: 0, assignment: vec![] });
    }

    #[test]
    fn negative_objective_prefers_low_values() {
        let mut ip = IntegerProgram::new();
        let x = ip.add_variable("x", -4, 4);
        let y = ip.add_variable("y", -4, 4);
        ip.add_constraint("c", vec![(x, 1), (y, -1)], Sense::Ge, 1);
        ip.add_objective_term(x, -2);
        ip.add_objective_term(y, 1);
        // Along x = y + 1 the objective is -y - 2, best at y = -4.
        assert_eq!(solve_ip(&ip).unwrap().value(), Some(2));
    }

    #[test]
    fn rejects_malformed() {
        let mut ip = IntegerProgram::new();
        ip.add_variable("x", 1, 0);
        assert!(solve_ip(&ip).is_err());
        let mut ip = IntegerProgram::new();
        ip.add_variable("x", 0, 1);
        ip.add_constraint("empty", vec![], Sense::Le, 0);
        assert!(ip.validate().is_err());
        ip.constraints[0].terms.push((3, 1));
        assert!(ip.validate().is_err());
    }
}
