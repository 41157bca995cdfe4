//! Bound constants computed from a conforming joint distribution.

mod relations;
mod subchannel;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::probspace::{Family, InfoCache, JointDist};
use crate::{Error, Result, TOL};

pub use relations::{axioms, constant_relations, Check, RelationFamily, RelationReport};
pub use subchannel::{subchannel_rates, RateBound, Scheme, SubchannelVars};

/// Spelling of a constant family: `a1`, `ap1`, `A1` or `Ap1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Lower,
    LowerPrimed,
    Upper,
    UpperPrimed,
}

impl Style {
    pub fn of(family: Family) -> Result<Style> {
        Ok(match family {
            Family::Hk => Style::Lower,
            Family::Cmg | Family::ModCmg => Style::LowerPrimed,
            Family::Hod => Style::Upper,
            Family::HodCmg => Style::UpperPrimed,
            Family::GeneralIc => {
                return Err(Error::FamilyMismatch { expected: "a constant family".into(), found: family.to_string() })
            }
        })
    }

    /// Canonical name of constant `letter` (any case) for sender `i`.
    pub fn name(self, letter: char, i: u8) -> String {
        let l = letter.to_ascii_lowercase();
        match self {
            Style::Lower => format!("{l}{i}"),
            Style::LowerPrimed => format!("{l}p{i}"),
            Style::Upper => format!("{}{i}", l.to_ascii_uppercase()),
            Style::UpperPrimed => format!("{}p{i}", l.to_ascii_uppercase()),
        }
    }
}

/// Letters present in each family.
pub fn letters(family: Family) -> &'static [char] {
    match family {
        Family::Hk | Family::Hod | Family::ModCmg => &['a', 'b', 'c', 'd', 'e', 'f', 'g'],
        Family::Cmg | Family::HodCmg => &['a', 'b', 'd', 'e', 'f', 'g'],
        Family::GeneralIc => &[],
    }
}

pub fn constant_names(family: Family) -> Result<Vec<String>> {
    let style = Style::of(family)?;
    Ok([1u8, 2].iter().flat_map(|&i| letters(family).iter().map(move |&l| style.name(l, i))).collect())
}

/// Named bound constants in bits.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantSet {
    pub family: Family,
    pub values: BTreeMap<String, f64>,
    /// `I(U_i; W_i | Q)` per sender; zero unless the family allows dependence.
    pub correlation: [f64; 2],
}

impl ConstantSet {
    /// Builds a set from explicit values, which must name exactly the
    /// family's constants.
    pub fn from_values(family: Family, values: BTreeMap<String, f64>) -> Result<ConstantSet> {
        let names = constant_names(family)?;
        for n in &names {
            if !values.contains_key(n) {
                return Err(Error::MissingConstant(n.clone()));
            }
        }
        if let Some(extra) = values.keys().find(|k| !names.contains(k)) {
            return Err(Error::FamilyMismatch { expected: family.to_string(), found: format!("constant `{extra}`") });
        }
        Ok(ConstantSet { family, values, correlation: [0.0; 2] })
    }

    pub fn zero(family: Family) -> Result<ConstantSet> {
        let values = constant_names(family)?.into_iter().map(|n| (n, 0.0)).collect();
        ConstantSet::from_values(family, values)
    }

    pub fn get(&self, name: &str) -> Result<f64> {
        self.values.get(name).copied().ok_or_else(|| Error::MissingConstant(name.to_string()))
    }

    pub fn lookup(&self) -> impl Fn(&str) -> Option<f64> + '_ {
        move |n| self.values.get(n).copied()
    }

    pub fn style(&self) -> Style {
        Style::of(self.family).unwrap_or(Style::Lower)
    }

    /// The constants of the same distribution with users 1 and 2 relabelled.
    pub fn swap_users(&self) -> ConstantSet {
        let swap = |n: &String| {
            let (stem, i) = n.split_at(n.len() - 1);
            match i {
                "1" => format!("{stem}2"),
                "2" => format!("{stem}1"),
                _ => n.clone(),
            }
        };
        ConstantSet {
            family: self.family,
            values: self.values.iter().map(|(k, v)| (swap(k), *v)).collect(),
            correlation: [self.correlation[1], self.correlation[0]],
        }
    }
}

fn nonconforming(family: Family, detail: String) -> Error {
    Error::Nonconforming { family: family.to_string(), detail }
}

fn require_zero(family: Family, what: &str, v: f64) -> Result<()> {
    if v > TOL {
        return Err(nonconforming(family, format!("{what} = {v:.3e} bits")));
    }
    Ok(())
}

/// Validates the family's independence, determinism and Markov structure.
pub fn check_conformance(family: Family, dist: &JointDist) -> Result<()> {
    let c = InfoCache::new(dist);
    let q: &[&str] = &["Q"];
    match family {
        Family::Hk => {
            let tc = c.entropy(&["U1", "Q"])? + c.entropy(&["W1", "Q"])? + c.entropy(&["U2", "Q"])?
                + c.entropy(&["W2", "Q"])?
                - 3.0 * c.entropy(q)?
                - c.entropy(&["U1", "W1", "U2", "W2", "Q"])?;
            require_zero(family, "total correlation of U1,W1,U2,W2 given Q", tc)?;
        }
        Family::Hod | Family::GeneralIc => {
            require_zero(family, "I(U1W1;U2W2|Q)", c.info(&["U1", "W1"], &["U2", "W2"], q)?)?;
        }
        Family::Cmg | Family::ModCmg | Family::HodCmg => {
            require_zero(family, "I(W1X1;W2X2|Q)", c.info(&["W1", "X1"], &["W2", "X2"], q)?)?;
            require_zero(family, "I(W1;Y1|QW2X1)", c.info(&["W1"], &["Y1"], &["Q", "W2", "X1"])?)?;
            require_zero(family, "I(W2;Y2|QW1X2)", c.info(&["W2"], &["Y2"], &["Q", "W1", "X2"])?)?;
            require_zero(family, "I(Y1Y2;QW1W2|X1X2)", c.info(&["Y1", "Y2"], &["Q", "W1", "W2"], &["X1", "X2"])?)?;
            return Ok(());
        }
    }
    if family != Family::GeneralIc {
        require_zero(family, "H(X1|QU1W1)", c.entropy(&["X1", "Q", "U1", "W1"])? - c.entropy(&["Q", "U1", "W1"])?)?;
        require_zero(family, "H(X2|QU2W2)", c.entropy(&["X2", "Q", "U2", "W2"])? - c.entropy(&["Q", "U2", "W2"])?)?;
    }
    require_zero(family, "I(X1;U2W2X2|QU1W1)", c.info(&["X1"], &["U2", "W2", "X2"], &["Q", "U1", "W1"])?)?;
    require_zero(family, "I(X2;U1W1|QU2W2)", c.info(&["X2"], &["U1", "W1"], &["Q", "U2", "W2"])?)?;
    require_zero(
        family,
        "I(Y1Y2;QU1W1U2W2|X1X2)",
        c.info(&["Y1", "Y2"], &["Q", "U1", "W1", "U2", "W2"], &["X1", "X2"])?,
    )
}

/// Marginal over `(Q, W1, W2, X1, X2, Y1, Y2)`: the superposition-only view.
pub fn collapse(dist: &JointDist) -> Result<JointDist> {
    dist.marginal(&["Q", "W1", "W2", "X1", "X2", "Y1", "Y2"])
}

fn pair(i: u8) -> [String; 5] {
    let j = 3 - i;
    [format!("Y{i}"), format!("U{i}"), format!("W{i}"), format!("W{j}"), format!("X{i}")]
}

/// Computes every constant of `family` after validating conformance.
pub fn bound_constants(family: Family, dist: &JointDist) -> Result<ConstantSet> {
    check_conformance(family, dist)?;
    let style = Style::of(family)?;
    let c = InfoCache::new(dist);
    let mut values = BTreeMap::new();
    let mut correlation = [0.0; 2];
    for i in [1u8, 2] {
        let [y, u, w, wo, x] = pair(i);
        let (y, u, w, wo, x) = (y.as_str(), u.as_str(), w.as_str(), wo.as_str(), x.as_str());
        let mut put = |l: char, v: f64| {
            values.insert(style.name(l, i), v);
        };
        match family {
            Family::Hk | Family::Hod => {
                let j = if family == Family::Hod { c.info(&[u], &[w], &["Q"])? } else { 0.0 };
                correlation[i as usize - 1] = j;
                put('a', c.info(&[y], &[u], &[w, wo, "Q"])?);
                put('b', c.info(&[y], &[w], &[u, wo, "Q"])? + j);
                put('c', c.info(&[y], &[wo], &[u, w, "Q"])? + j);
                put('d', c.info(&[y], &[u, w], &[wo, "Q"])?);
                put('e', c.info(&[y], &[u, wo], &[w, "Q"])?);
                put('f', c.info(&[y], &[w, wo], &[u, "Q"])? + j);
                put('g', c.info(&[y], &[u, w, wo], &["Q"])?);
            }
            Family::Cmg | Family::ModCmg | Family::HodCmg => {
                let d = c.info(&[y], &[x], &[wo, "Q"])?;
                let g = c.info(&[y], &[x, wo], &["Q"])?;
                put('a', c.info(&[y], &[x], &[w, wo, "Q"])?);
                put('b', d);
                put('d', d);
                put('e', c.info(&[y], &[x, wo], &[w, "Q"])?);
                put('f', g);
                put('g', g);
                if family == Family::ModCmg {
                    put('c', c.info(&[y], &[wo], &[x, "Q"])?);
                }
            }
            Family::GeneralIc => unreachable!("rejected by Style::of"),
        }
    }
    Ok(ConstantSet { family, values, correlation })
}
