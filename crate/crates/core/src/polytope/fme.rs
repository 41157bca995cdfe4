use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::system::{IneqSystem, LinIneq};
use crate::rational::Rational;
use crate::Result;

/// One Fourier-Motzkin step: every row with a positive coefficient on `var`
/// is paired with every row with a negative one. Pairs are combined with
/// integer-style cross multipliers so integer rows stay integer.
pub fn eliminate(sys: &IneqSystem, var: &str) -> Result<IneqSystem> {
    let k = sys.var_index(var)?;
    let drop = |c: &[Rational]| -> Vec<Rational> {
        c.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, x)| x.clone()).collect()
    };
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out = Vec::new();
    for r in sys.rows() {
        let c = &r.coeffs[k];
        if c.is_positive() {
            pos.push(r);
        } else if c.is_negative() {
            neg.push(r);
        } else {
            out.push(LinIneq { coeffs: drop(&r.coeffs), rhs: r.rhs.clone(), label: r.label.clone() });
        }
    }
    for p in &pos {
        for n in &neg {
            let a = n.coeffs[k].abs();
            let b = p.coeffs[k].clone();
            let coeffs: Vec<Rational> = p.coeffs.iter().zip(&n.coeffs).map(|(x, y)| &a * x + &b * y).collect();
            debug_assert!(coeffs[k].is_zero());
            out.push(LinIneq {
                coeffs: drop(&coeffs),
                rhs: p.rhs.combine(&a, &n.rhs, &b),
                label: format!("({}+{})", p.label, n.label),
            });
        }
    }
    let vars: Vec<String> = sys.variables().iter().filter(|v| *v != var).cloned().collect();
    let mut res = IneqSystem::from_parts(sys.mode(), vars, out);
    res.dedup();
    Ok(res)
}

/// Rewrites a `(T1, S1, T2, S2)` system over `(R1, T1, R2, T2)` using
/// `S_i = R_i - T_i`.
pub fn substitute_rates(sys: &IneqSystem) -> Result<IneqSystem> {
    let idx = |n: &str| sys.var_index(n);
    let (s1, t1, s2, t2) = (idx("S1")?, idx("T1")?, idx("S2")?, idx("T2")?);
    if sys.variables().len() != 4 {
        return Err(crate::Error::DimensionMismatch(format!(
            "expected variables S1,T1,S2,T2, found {:?}",
            sys.variables()
        )));
    }
    let rows = sys
        .rows()
        .iter()
        .map(|r| {
            let c = &r.coeffs;
            LinIneq {
                coeffs: alloc::vec![c[s1].clone(), &c[t1] - &c[s1], c[s2].clone(), &c[t2] - &c[s2]],
                rhs: r.rhs.clone(),
                label: r.label.clone(),
            }
        })
        .collect();
    let vars = ["R1", "T1", "R2", "T2"].iter().map(|s| String::from(*s)).collect();
    Ok(IneqSystem::from_parts(sys.mode(), vars, rows))
}

/// Projects a `(T1, S1, T2, S2)` system onto `(R1, R2)`.
pub fn project_rates(sys: &IneqSystem) -> Result<IneqSystem> {
    let sub = substitute_rates(sys)?;
    let one = eliminate(&sub, "T1")?;
    eliminate(&one, "T2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::polytope::{Mode, Rhs, SymExpr};

    #[test]
    fn single_pair() {
        let mut s = IneqSystem::new(Mode::Numeric, &["x"]);
        s.add("u", &[("x", 1)], Rhs::Num(3.0)).unwrap();
        s.add("l", &[("x", -1)], Rhs::Num(0.0)).unwrap();
        let e = eliminate(&s, "x").unwrap();
        assert_eq!(e.len(), 1);
        assert!(e.variables().is_empty());
        assert_eq!(e.rows()[0].rhs, Rhs::Num(3.0));
    }

    #[test]
    fn symbolic_rhs_adds() {
        let mut s = IneqSystem::new(Mode::Symbolic, &["x", "y"]);
        s.add("p", &[("x", 1), ("y", 1)], Rhs::Sym(SymExpr::symbol("a"))).unwrap();
        s.add("n", &[("x", -2)], Rhs::Sym(SymExpr::symbol("b"))).unwrap();
        let e = eliminate(&s, "x").unwrap();
        assert_eq!(e.to_string(), "2*y <= 2*a + b\n");
    }
}
