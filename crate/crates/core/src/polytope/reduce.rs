use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::lp::{self, Constraint, LpResult, Rel};
use super::symexpr::SymExpr;
use super::system::{IneqSystem, LinIneq, Mode, Rhs};
use crate::rational::{rationalize, to_f64, Rational};
use crate::Result;

/// Numeric rows whose maximum over the others is within this of their
/// right side are dropped.
pub const REDUNDANCY_TOL: f64 = 1e-7;

/// A proven fact `lhs <= rhs` between constant expressions.
#[derive(Clone, Debug, PartialEq)]
pub struct Axiom {
    pub name: String,
    pub lhs: SymExpr,
    pub rhs: SymExpr,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AxiomSet {
    pub relations: Vec<Axiom>,
}

impl AxiomSet {
    pub fn new() -> Self {
        AxiomSet::default()
    }

    pub fn le(&mut self, name: &str, lhs: SymExpr, rhs: SymExpr) {
        self.relations.push(Axiom { name: name.to_string(), lhs, rhs });
    }

    pub fn eq(&mut self, name: &str, lhs: SymExpr, rhs: SymExpr) {
        self.le(name, lhs.clone(), rhs.clone());
        self.le(name, rhs, lhs);
    }

    pub fn extend(&mut self, other: &AxiomSet) {
        self.relations.extend(other.relations.iter().cloned());
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    /// Whether every relation holds at `value` within `tol`.
    pub fn satisfied_by(&self, value: &dyn Fn(&str) -> Option<f64>, tol: f64) -> Result<bool> {
        for a in &self.relations {
            if a.lhs.eval(value)? > a.rhs.eval(value)? + tol {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Removes redundant rows one at a time, each judged against the rows still
/// present.
///
/// Symbolic mode looks for a Farkas certificate: nonnegative multipliers on
/// the remaining rows whose left side dominates the row (rates are
/// nonnegative) and whose right side falls short of the row's by a
/// nonnegative combination of axiom gaps and constants (constants are
/// nonnegative). Numeric mode maximizes the row over the others exactly.
pub fn reduce(sys: &IneqSystem, axioms: &AxiomSet) -> Result<IneqSystem> {
    let mut rows: Vec<LinIneq> = sys.rows().to_vec();
    let mut i = 0;
    while i < rows.len() {
        let (row, others) = (&rows[i], rows[..i].iter().chain(&rows[i + 1..]));
        let others: Vec<&LinIneq> = others.collect();
        let redundant = match sys.mode() {
            Mode::Symbolic => symbolic_redundant(row, &others, axioms),
            Mode::Numeric => numeric_redundant(row, &others),
        };
        if redundant {
            rows.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(IneqSystem::from_parts(sys.mode(), sys.variables().to_vec(), rows))
}

pub(crate) fn symbolic_redundant(row: &LinIneq, others: &[&LinIneq], axioms: &AxiomSet) -> bool {
    let Some(s) = row.rhs.as_sym() else { return false };
    let sym_of = |r: &LinIneq| r.rhs.as_sym().cloned().unwrap_or_default();
    let gaps: Vec<SymExpr> = axioms.relations.iter().map(|a| &a.rhs - &a.lhs).collect();
    let mut symbols: BTreeSet<&str> = s.symbols().collect();
    for r in others {
        if let Some(e) = r.rhs.as_sym() {
            symbols.extend(e.symbols());
        }
    }
    for g in &gaps {
        symbols.extend(g.symbols());
    }
    let symbols: Vec<&str> = symbols.into_iter().collect();
    let (nl, nm, nv) = (others.len(), gaps.len(), symbols.len());
    let width = nl + nm + nv + 1;
    let mut cons = Vec::new();
    for v in 0..row.coeffs.len() {
        let mut c = vec![Rational::zero(); width];
        for (j, r) in others.iter().enumerate() {
            c[j] = r.coeffs[v].clone();
        }
        cons.push(Constraint { coeffs: c, rel: Rel::Ge, rhs: row.coeffs[v].clone() });
    }
    let others_sym: Vec<SymExpr> = others.iter().map(|r| sym_of(r)).collect();
    for (k, name) in symbols.iter().enumerate() {
        let mut c = vec![Rational::zero(); width];
        for (j, e) in others_sym.iter().enumerate() {
            c[j] = e.coef(name);
        }
        for (j, g) in gaps.iter().enumerate() {
            c[nl + j] = g.coef(name);
        }
        c[nl + nm + k] = Rational::from_integer(1.into());
        cons.push(Constraint { coeffs: c, rel: Rel::Eq, rhs: s.coef(name) });
    }
    let mut c = vec![Rational::zero(); width];
    for (j, e) in others_sym.iter().enumerate() {
        c[j] = e.offset().clone();
    }
    for (j, g) in gaps.iter().enumerate() {
        c[nl + j] = g.offset().clone();
    }
    c[width - 1] = Rational::from_integer(1.into());
    cons.push(Constraint { coeffs: c, rel: Rel::Eq, rhs: s.offset().clone() });
    lp::feasible(width, &cons)
}

pub(crate) fn numeric_constraints(rows: &[&LinIneq]) -> Vec<Constraint> {
    rows.iter()
        .map(|r| Constraint {
            coeffs: r.coeffs.clone(),
            rel: Rel::Le,
            rhs: rationalize(r.rhs.as_num().unwrap_or(f64::NAN)),
        })
        .collect()
}

fn numeric_redundant(row: &LinIneq, others: &[&LinIneq]) -> bool {
    let Rhs::Num(b) = row.rhs else { return false };
    match lp::maximize(row.coeffs.len(), &row.coeffs, &numeric_constraints(others)) {
        LpResult::Infeasible => true,
        LpResult::Unbounded => false,
        LpResult::Optimal { value, .. } => to_f64(&value) <= b + REDUNDANCY_TOL,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn numeric_dominated_row() {
        let mut s = IneqSystem::new(Mode::Numeric, &["R1"]);
        s.add("a", &[("R1", 1)], Rhs::Num(2.0)).unwrap();
        s.add("b", &[("R1", 1)], Rhs::Num(3.0)).unwrap();
        let r = reduce(&s, &AxiomSet::new()).unwrap();
        assert_eq!(r.to_string(), "R1 <= 2\n");
    }

    #[test]
    fn symbolic_needs_axiom() {
        let mut s = IneqSystem::new(Mode::Symbolic, &["R1"]);
        s.add("a", &[("R1", 1)], Rhs::Sym(SymExpr::symbol("a"))).unwrap();
        s.add("d", &[("R1", 1)], Rhs::Sym(SymExpr::symbol("d"))).unwrap();
        assert_eq!(reduce(&s, &AxiomSet::new()).unwrap().len(), 2);
        let mut ax = AxiomSet::new();
        ax.le("a<=d", SymExpr::symbol("a"), SymExpr::symbol("d"));
        assert_eq!(reduce(&s, &ax).unwrap().to_string(), "R1 <= a\n");
    }

    #[test]
    fn sum_of_two_rows() {
        // R1 + R2 <= a + b follows from R1 <= a and R2 <= b.
        let mut s = IneqSystem::new(Mode::Symbolic, &["R1", "R2"]);
        s.add("1", &[("R1", 1)], Rhs::Sym(SymExpr::symbol("a"))).unwrap();
        s.add("2", &[("R2", 1)], Rhs::Sym(SymExpr::symbol("b"))).unwrap();
        s.add("3", &[("R1", 1), ("R2", 1)], Rhs::Sym(SymExpr::sum_of(&["a", "b", "c"]))).unwrap();
        s.add("4", &[("R1", -1)], Rhs::Sym(SymExpr::zero())).unwrap();
        let r = reduce(&s, &AxiomSet::new()).unwrap();
        assert_eq!(r.to_string(), "R1 <= a\nR2 <= b\n");
    }
}
