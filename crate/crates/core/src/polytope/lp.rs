//! Exact two-phase simplex over `BigRational` with Bland's rule.
//!
//! Problems are `maximize c·x` subject to linear rows and `x >= 0`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rel: Rel,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpResult {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    basis: Vec<usize>,
    cost: Vec<Rational>,
    value: Rational,
    blocked: Vec<bool>,
}

enum Step {
    Optimal,
    Unbounded,
    Pivoted,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.a[r][c].clone();
        if !p.is_one() {
            for x in self.a[r].iter_mut() {
                if !x.is_zero() {
                    *x /= &p;
                }
            }
            self.b[r] /= &p;
        }
        let nz: Vec<usize> = (0..self.a[r].len()).filter(|&j| !self.a[r][j].is_zero()).collect();
        let (pivot_row, pivot_b) = (self.a[r].clone(), self.b[r].clone());
        for i in 0..self.a.len() {
            if i == r || self.a[i][c].is_zero() {
                continue;
            }
            let f = self.a[i][c].clone();
            for &j in &nz {
                let d = &f * &pivot_row[j];
                self.a[i][j] -= d;
            }
            self.b[i] -= &f * &pivot_b;
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for &j in &nz {
                let d = &f * &pivot_row[j];
                self.cost[j] -= d;
            }
            self.value += &f * &pivot_b;
        }
        self.basis[r] = c;
    }

    fn step(&mut self) -> Step {
        let Some(c) = (0..self.cost.len()).find(|&j| !self.blocked[j] && self.cost[j].is_positive()) else {
            return Step::Optimal;
        };
        let mut best: Option<(usize, Rational)> = None;
        for i in 0..self.a.len() {
            if !self.a[i][c].is_positive() {
                continue;
            }
            let ratio = &self.b[i] / &self.a[i][c];
            let better = match &best {
                None => true,
                Some((k, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*k]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        match best {
            None => Step::Unbounded,
            Some((r, _)) => {
                self.pivot(r, c);
                Step::Pivoted
            }
        }
    }

    fn run(&mut self) -> bool {
        loop {
            match self.step() {
                Step::Optimal => return true,
                Step::Unbounded => return false,
                Step::Pivoted => {}
            }
        }
    }

    /// Installs reduced costs for objective `c` over the current basis.
    fn set_objective(&mut self, c: &[Rational]) {
        self.cost = c.to_vec();
        self.value = Rational::zero();
        for i in 0..self.a.len() {
            let cb = c[self.basis[i]].clone();
            if cb.is_zero() {
                continue;
            }
            for (j, x) in self.a[i].iter().enumerate() {
                if !x.is_zero() {
                    self.cost[j] -= &cb * x;
                }
            }
            self.value += &cb * &self.b[i];
        }
    }
}

pub fn maximize(n: usize, objective: &[Rational], constraints: &[Constraint]) -> LpResult {
    assert_eq!(objective.len(), n);
    let m = constraints.len();
    let mut rows = Vec::with_capacity(m);
    for c in constraints {
        assert_eq!(c.coeffs.len(), n);
        if c.rhs.is_negative() {
            let rel = match c.rel {
                Rel::Le => Rel::Ge,
                Rel::Ge => Rel::Le,
                Rel::Eq => Rel::Eq,
            };
            rows.push((c.coeffs.iter().map(|x| -x).collect::<Vec<_>>(), rel, -&c.rhs));
        } else {
            rows.push((c.coeffs.clone(), c.rel, c.rhs.clone()));
        }
    }
    let n_slack = rows.iter().filter(|r| r.1 != Rel::Eq).count();
    let n_art = rows.iter().filter(|r| r.1 != Rel::Le).count();
    let width = n + n_slack + n_art;
    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut artificial = vec![false; width];
    let (mut s, mut t) = (n, n + n_slack);
    for (coeffs, rel, rhs) in rows {
        let mut row = coeffs;
        row.resize(width, Rational::zero());
        match rel {
            Rel::Le => {
                row[s] = Rational::one();
                basis.push(s);
                s += 1;
            }
            Rel::Ge => {
                row[s] = -Rational::one();
                s += 1;
                row[t] = Rational::one();
                artificial[t] = true;
                basis.push(t);
                t += 1;
            }
            Rel::Eq => {
                row[t] = Rational::one();
                artificial[t] = true;
                basis.push(t);
                t += 1;
            }
        }
        a.push(row);
        b.push(rhs);
    }
    let mut tab = Tableau {
        a,
        b,
        basis,
        cost: Vec::new(),
        value: Rational::zero(),
        blocked: vec![false; width],
    };
    if n_art > 0 {
        let phase1: Vec<Rational> =
            (0..width).map(|j| if artificial[j] { -Rational::one() } else { Rational::zero() }).collect();
        tab.set_objective(&phase1);
        tab.run();
        if tab.value.is_negative() {
            return LpResult::Infeasible;
        }
        // Drive zero-valued artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < tab.a.len() {
            if artificial[tab.basis[i]] {
                match (0..width).find(|&j| !artificial[j] && !tab.a[i][j].is_zero()) {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        tab.a.remove(i);
                        tab.b.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        tab.blocked = artificial;
    }
    let mut c = objective.to_vec();
    c.resize(width, Rational::zero());
    tab.set_objective(&c);
    if !tab.run() {
        return LpResult::Unbounded;
    }
    let mut point = vec![Rational::zero(); n];
    for (i, &j) in tab.basis.iter().enumerate() {
        if j < n {
            point[j] = tab.b[i].clone();
        }
    }
    LpResult::Optimal { value: tab.value, point }
}

/// Whether the constraint set has any nonnegative solution.
pub fn feasible(n: usize, constraints: &[Constraint]) -> bool {
    !matches!(maximize(n, &vec![Rational::zero(); n], constraints), LpResult::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn con(c: &[i64], rel: Rel, rhs: i64) -> Constraint {
        Constraint { coeffs: c.iter().map(|&x| int(x)).collect(), rel, rhs: int(rhs) }
    }

    #[test]
    fn textbook_max() {
        // max 3x + 5y st x <= 4, 2y <= 12, 3x + 2y <= 18  -> 36 at (2, 6)
        let r = maximize(
            2,
            &[int(3), int(5)],
            &[con(&[1, 0], Rel::Le, 4), con(&[0, 2], Rel::Le, 12), con(&[3, 2], Rel::Le, 18)],
        );
        assert_eq!(r, LpResult::Optimal { value: int(36), point: vec![int(2), int(6)] });
    }

    #[test]
    fn needs_phase_one() {
        // max -x - y st x + y >= 2, x - y = 1  -> x = 3/2, y = 1/2
        let r = maximize(2, &[int(-1), int(-1)], &[con(&[1, 1], Rel::Ge, 2), con(&[1, -1], Rel::Eq, 1)]);
        assert_eq!(r, LpResult::Optimal { value: int(-2), point: vec![ratio(3, 2), ratio(1, 2)] });
    }

    #[test]
    fn infeasible_and_unbounded() {
        assert_eq!(maximize(1, &[int(1)], &[con(&[1], Rel::Le, -1)]), LpResult::Infeasible);
        assert_eq!(maximize(2, &[int(1), int(0)], &[con(&[0, 1], Rel::Le, 1)]), LpResult::Unbounded);
    }

    #[test]
    fn redundant_equalities() {
        let r = maximize(
            2,
            &[int(1), int(1)],
            &[con(&[1, 1], Rel::Eq, 2), con(&[2, 2], Rel::Eq, 4), con(&[1, 0], Rel::Le, 5)],
        );
        assert!(matches!(r, LpResult::Optimal { value, .. } if value == int(2)));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's classic cycling instance; Bland's rule must terminate.
        let c = [ratio(3, 4), int(-150), ratio(1, 50), int(-6)];
        let rows = [
            Constraint { coeffs: vec![ratio(1, 4), int(-60), ratio(-1, 25), int(9)], rel: Rel::Le, rhs: int(0) },
            Constraint { coeffs: vec![ratio(1, 2), int(-90), ratio(-1, 50), int(3)], rel: Rel::Le, rhs: int(0) },
            Constraint { coeffs: vec![int(0), int(0), int(1), int(0)], rel: Rel::Le, rhs: int(1) },
        ];
        assert!(matches!(maximize(4, &c, &rows), LpResult::Optimal { value, .. } if value == ratio(1, 20)));
    }
}
