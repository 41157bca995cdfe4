use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::lp::{self, LpResult};
use super::reduce::numeric_constraints;
use super::system::{IneqSystem, LinIneq, Mode};
use crate::rational::{to_f64, Rational};
use crate::{Error, Result};

/// Slack allowed when comparing a maximized row against a right side.
pub const INCLUSION_TOL: f64 = 1e-9;

/// A vertex of the inner system that violates one row of the outer one.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub row: String,
    pub point: Vec<f64>,
    pub excess: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Inclusion {
    pub holds: bool,
    pub witness: Option<Witness>,
}

fn check_pair(a: &IneqSystem, b: &IneqSystem) -> Result<()> {
    if a.mode() != Mode::Numeric || b.mode() != Mode::Numeric {
        return Err(Error::DimensionMismatch("inclusion needs numeric systems".into()));
    }
    if a.variables() != b.variables() {
        return Err(Error::DimensionMismatch(format!(
            "variables differ: {:?} vs {:?}",
            a.variables(),
            b.variables()
        )));
    }
    Ok(())
}

/// Maximizes `dir · x` over the system with `x >= 0`.
pub fn maximize_over(sys: &IneqSystem, dir: &[Rational]) -> LpResult {
    let rows: Vec<&LinIneq> = sys.rows().iter().collect();
    lp::maximize(dir.len(), dir, &numeric_constraints(&rows))
}

/// Whether every point of `a` (with rates nonnegative) satisfies `b`.
pub fn includes(a: &IneqSystem, b: &IneqSystem) -> Result<Inclusion> {
    check_pair(a, b)?;
    for row in b.rows() {
        let rhs = row.rhs.as_num().unwrap_or(f64::NAN);
        match maximize_over(a, &row.coeffs) {
            LpResult::Infeasible => return Ok(Inclusion { holds: true, witness: None }),
            LpResult::Unbounded => {
                return Err(Error::Unbounded(format!("direction of row `{}` is not capped", b.row_text(row))))
            }
            LpResult::Optimal { value, point } => {
                let v = to_f64(&value);
                if v > rhs + INCLUSION_TOL {
                    return Ok(Inclusion {
                        holds: false,
                        witness: Some(Witness {
                            row: b.row_text(row),
                            point: point.iter().map(to_f64).collect(),
                            excess: v - rhs,
                        }),
                    });
                }
            }
        }
    }
    Ok(Inclusion { holds: true, witness: None })
}

pub fn equal(a: &IneqSystem, b: &IneqSystem) -> Result<bool> {
    Ok(includes(a, b)?.holds && includes(b, a)?.holds)
}

/// Largest `t >= 0` with `t · dir` feasible, or `None` if unbounded.
pub fn ray_limit(sys: &IneqSystem, dir: &[f64]) -> Option<f64> {
    let mut t = f64::INFINITY;
    for r in sys.rows() {
        let slope: f64 = r.coeffs.iter().zip(dir).map(|(c, d)| to_f64(c) * d).sum();
        if slope > 0.0 {
            t = t.min(r.rhs.as_num().unwrap_or(f64::NAN) / slope);
        }
    }
    t.is_finite().then_some(t.max(0.0))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::Rhs;

    fn sys(rows: &[(&[(&str, i64)], f64)]) -> IneqSystem {
        let mut s = IneqSystem::new(Mode::Numeric, &["R1", "R2"]);
        for (t, b) in rows {
            s.add("r", t, Rhs::Num(*b)).unwrap();
        }
        s
    }

    #[test]
    fn reflexive() {
        let a = sys(&[(&[("R1", 1)], 1.0), (&[("R2", 1)], 2.0), (&[("R1", 1), ("R2", 1)], 2.5)]);
        assert!(includes(&a, &a).unwrap().holds);
        assert!(equal(&a, &a).unwrap());
    }

    #[test]
    fn witness_reported() {
        let a = sys(&[(&[("R1", 1)], 2.0), (&[("R2", 1)], 1.0)]);
        let b = sys(&[(&[("R1", 1)], 1.0), (&[("R2", 1)], 1.0)]);
        let inc = includes(&a, &b).unwrap();
        assert!(!inc.holds);
        let w = inc.witness.unwrap();
        assert_eq!(w.point[0], 2.0);
        assert!((w.excess - 1.0).abs() < 1e-12);
        assert!(includes(&b, &a).unwrap().holds);
    }

    #[test]
    fn unbounded_is_error() {
        let a = sys(&[(&[("R1", 1)], 1.0)]);
        let b = sys(&[(&[("R2", 1)], 1.0)]);
        assert!(matches!(includes(&a, &b), Err(Error::Unbounded(_))));
    }

    #[test]
    fn boxed_equivalence() {
        let a = sys(&[(&[("R1", 1)], 1.0), (&[("R2", 1)], 5.0)]);
        let b = sys(&[(&[("R1", 1)], 1.0), (&[("R1", 1), ("R2", 1)], 10.0), (&[("R2", 1)], 5.0)]);
        assert!(equal(&a, &b).unwrap());
    }
}
