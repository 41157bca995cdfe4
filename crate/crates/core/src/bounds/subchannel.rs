use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::probspace::{InfoCache, JointDist};
use crate::{Error, Result, TOL};

/// Coding strategy on the single-receiver sub-channel `(U, W) X -> Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// Independent `U`, `W` coded separately, decoded jointly.
    Separate,
    /// `X` superposed on `W`.
    Superposition,
    /// Dependent `(U, W)` via random binning.
    Binning,
}

/// Variable names of the sub-channel inside a joint distribution.
#[derive(Clone, Copy, Debug)]
pub struct SubchannelVars<'a> {
    pub u: &'a str,
    pub w: &'a str,
    pub x: Option<&'a str>,
    pub y: &'a str,
    pub q: Option<&'a str>,
}

/// `lhs <= value`, where `lhs` is one of `S`, `T`, `S+T`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateBound {
    pub lhs: &'static str,
    pub value: f64,
}

fn mismatch(scheme: Scheme, detail: &str, v: f64) -> Error {
    Error::Nonconforming { family: format!("{scheme:?} sub-channel"), detail: format!("{detail} = {v:.3e}") }
}

pub fn subchannel_rates<'a>(scheme: Scheme, dist: &JointDist, v: SubchannelVars<'a>) -> Result<Vec<RateBound>> {
    let c = InfoCache::new(dist);
    let q: Vec<&str> = v.q.into_iter().collect();
    let given = |xs: &[&'a str]| -> Vec<&'a str> {
        let mut g = xs.to_vec();
        g.extend(q.iter().copied());
        g
    };
    let (u, w, y) = (v.u, v.w, v.y);
    match scheme {
        Scheme::Separate => {
            let dep = c.info(&[u], &[w], &q)?;
            if dep > TOL {
                return Err(mismatch(scheme, "I(U;W|Q)", dep));
            }
            Ok(vec![
                RateBound { lhs: "S", value: c.info(&[y], &[u], &given(&[w]))? },
                RateBound { lhs: "T", value: c.info(&[y], &[w], &given(&[u]))? },
                RateBound { lhs: "S+T", value: c.info(&[y], &[u, w], &q)? },
            ])
        }
        Scheme::Superposition => {
            let x = v.x.ok_or_else(|| Error::UnknownVariable("X".into()))?;
            let leak = c.info(&[w], &[y], &given(&[x]))?;
            if leak > TOL {
                return Err(mismatch(scheme, "I(W;Y|XQ)", leak));
            }
            Ok(vec![
                RateBound { lhs: "S", value: c.info(&[y], &[x], &given(&[w]))? },
                RateBound { lhs: "S+T", value: c.info(&[y], &[x], &q)? },
            ])
        }
        Scheme::Binning => {
            if let Some(x) = v.x {
                let leak = c.info(&[u, w], &[y], &given(&[x]))?;
                if leak > TOL {
                    return Err(mismatch(scheme, "I(UW;Y|XQ)", leak));
                }
            }
            Ok(vec![
                RateBound { lhs: "S", value: c.info(&[y], &[u], &given(&[w]))? },
                RateBound { lhs: "T", value: c.info(&[u], &[w], &q)? + c.info(&[y], &[w], &given(&[u]))? },
                RateBound { lhs: "S+T", value: c.info(&[y], &[u, w], &q)? },
            ])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probspace::VariableDecl;
    use crate::rational::ratio;

    #[test]
    fn silent_output_gives_zero() {
        let d = JointDist::from_fn(
            vec![VariableDecl::new("U", 2), VariableDecl::new("W", 2), VariableDecl::new("Y", 2)],
            |_| ratio(1, 8),
        )
        .unwrap();
        let v = SubchannelVars { u: "U", w: "W", x: None, y: "Y", q: None };
        for s in [Scheme::Separate, Scheme::Binning] {
            assert!(subchannel_rates(s, &d, v).unwrap().iter().all(|b| b.value == 0.0));
        }
    }
}
