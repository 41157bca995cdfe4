use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{JointDist, Odometer, VariableDecl};
use crate::rational::Rational;
use crate::{Error, Result, TOL};

/// Declares that `k` is the common part shared by `u` and `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonPart {
    pub k: String,
    pub u: String,
    pub w: String,
}

impl CommonPart {
    pub fn new(k: &str, u: &str, w: &str) -> Self {
        CommonPart { k: k.to_string(), u: u.to_string(), w: w.to_string() }
    }

    /// `K{i}` shared by `U{i}` and `W{i}`.
    pub fn sender(i: u8) -> Self {
        CommonPart::new(&format!("K{i}"), &format!("U{i}"), &format!("W{i}"))
    }
}

impl JointDist {
    /// Adjoins an independent variable with the given pmf.
    pub fn with_independent(&self, name: &str, pmf: &[Rational]) -> Result<JointDist> {
        let k = JointDist::from_masses(vec![VariableDecl::new(name, pmf.len())], pmf)?;
        self.product(&k)
    }
}

/// Replaces `U` by `(U, K)` and `W` by `(W, K)` for each declared common part.
///
/// The lifted `U` has index `u·|K| + k`; cells where the two copies of `K`
/// disagree carry zero mass. `K` itself is removed.
pub fn wyner_lift(dist: &JointDist, parts: &[CommonPart]) -> Result<JointDist> {
    let given: Vec<&str> = if dist.has("Q") { vec!["Q"] } else { vec![] };
    let mut cur = dist.clone();
    for p in parts {
        let (k, u, w) = (p.k.as_str(), p.u.as_str(), p.w.as_str());
        let dep = cur.info(&[k], &[u, w], &given)?;
        if dep > TOL {
            return Err(Error::NotIndependent(format!(
                "{k} not independent of ({u},{w}) given Q: I = {dep:.3e}"
            )));
        }
        let uw = cur.info(&[u], &[w], &given)?;
        if uw > TOL {
            return Err(Error::NotIndependent(format!("{u} and {w} dependent given Q: I = {uw:.3e}")));
        }
        cur = lift_one(&cur, k, u, w)?;
    }
    Ok(cur)
}

fn lift_one(dist: &JointDist, k: &str, u: &str, w: &str) -> Result<JointDist> {
    let (ki, ui, wi) = (dist.index_of(k)?, dist.index_of(u)?, dist.index_of(w)?);
    let kc = dist.vars[ki].cardinality;
    let mut new_vars = Vec::new();
    let mut src = Vec::new();
    for (i, v) in dist.vars.iter().enumerate() {
        if i == ki {
            continue;
        }
        let card = if i == ui || i == wi { v.cardinality * kc } else { v.cardinality };
        new_vars.push(VariableDecl::new(&v.name, card));
        src.push(i);
    }
    let radix_new: Vec<usize> = new_vars.iter().map(|v| v.cardinality).collect();
    let cells: usize = radix_new.iter().product();
    if cells as u128 > super::MAX_CELLS {
        return Err(Error::TooLarge { cells: cells as u128 });
    }
    let radix = dist.radix();
    let mut numer = vec![0u128; cells];
    let mut odo = Odometer::new(&radix);
    for (c, &x) in dist.numer.iter().enumerate() {
        let d = &odo.digits;
        let mut flat = 0;
        for (j, &i) in src.iter().enumerate() {
            let digit = if i == ui || i == wi { d[i] * kc + d[ki] } else { d[i] };
            flat = flat * radix_new[j] + digit;
        }
        numer[flat] = x;
        if c + 1 < dist.numer.len() {
            odo.step();
        }
    }
    JointDist::from_numerators(new_vars, numer, dist.denom)
}
