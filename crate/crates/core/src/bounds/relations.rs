use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{ConstantSet, Style};
use crate::polytope::{AxiomSet, SymExpr};
use crate::probspace::Family;
use crate::{Error, Result, TOL};

/// Named groups of relations among bound constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationFamily {
    /// Polymatroidal relations of the independent-message constants.
    HkIneq,
    /// `c_i + g_i <= e_i + f_i`, valid when `U_i` and `W_i` are independent.
    HkIndependence,
    CmgIneq,
    ModCmgIneq,
    /// Relations of the dependent-message constants; three relations that
    /// fail under dependence are evaluated but not asserted.
    HodIneq,
    /// Lowercase versus primed constants of the superposition collapse:
    /// `x_i >= x'_i` for `a, d, e, g`.
    CollapseOrder,
    /// The same pairs as equalities (deterministic encoders).
    CollapseEquality,
    /// Capital versus capital-primed: equalities for `A, D, E, G`.
    HodCollapseEquality,
    /// Capital constants of a lifted distribution dominate the base ones.
    LiftOrder,
    /// The same pairs as equalities (trivial common part).
    LiftEquality,
}

impl RelationFamily {
    pub const ALL: [RelationFamily; 10] = [
        RelationFamily::HkIneq,
        RelationFamily::HkIndependence,
        RelationFamily::CmgIneq,
        RelationFamily::ModCmgIneq,
        RelationFamily::HodIneq,
        RelationFamily::CollapseOrder,
        RelationFamily::CollapseEquality,
        RelationFamily::HodCollapseEquality,
        RelationFamily::LiftOrder,
        RelationFamily::LiftEquality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationFamily::HkIneq => "hk-ineq",
            RelationFamily::HkIndependence => "hk-independence",
            RelationFamily::CmgIneq => "cmg-ineq",
            RelationFamily::ModCmgIneq => "mod-cmg-ineq",
            RelationFamily::HodIneq => "hod-ineq",
            RelationFamily::CollapseOrder => "collapse-order",
            RelationFamily::CollapseEquality => "collapse-equality",
            RelationFamily::HodCollapseEquality => "hod-collapse-equality",
            RelationFamily::LiftOrder => "lift-order",
            RelationFamily::LiftEquality => "lift-equality",
        }
    }

    /// Families of the constant set(s) the relation family expects.
    fn families(self) -> (Family, Option<Family>) {
        match self {
            RelationFamily::HkIneq | RelationFamily::HkIndependence => (Family::Hk, None),
            RelationFamily::CmgIneq => (Family::Cmg, None),
            RelationFamily::ModCmgIneq => (Family::ModCmg, None),
            RelationFamily::HodIneq => (Family::Hod, None),
            RelationFamily::CollapseOrder | RelationFamily::CollapseEquality => (Family::Hk, Some(Family::Cmg)),
            RelationFamily::HodCollapseEquality => (Family::Hod, Some(Family::HodCmg)),
            RelationFamily::LiftOrder | RelationFamily::LiftEquality => (Family::Hk, Some(Family::Hod)),
        }
    }
}

const HK_INEQ: [&str; 15] = [
    "a <= d", "d <= a + b", "b <= d", "a <= e", "e <= a + c", "c <= e", "c <= f", "b <= f", "f <= b + c", "e <= g",
    "d <= g", "g <= c + d", "g <= b + e", "g <= a + f", "f <= g",
];
const HK_INDEPENDENCE: [&str; 1] = ["c + g <= e + f"];
const CMG_INEQ: [&str; 10] =
    ["a <= d", "d <= a + b", "b = d", "a <= e", "b <= f", "e <= g", "d <= g", "g <= b + e", "g <= a + f", "f = g"];
const MOD_CMG_EXTRA: [&str; 3] = ["e <= a + c", "c <= e", "f <= b + c"];
const HOD_INEQ: [&str; 12] = [
    "a <= d", "d <= a + b", "a <= e", "e <= a + c", "c <= f", "b <= f", "f <= b + c", "e <= g", "d <= g",
    "g <= c + d", "g <= b + e", "g <= a + f",
];
const HOD_EXCLUDED: [&str; 3] = ["b <= d", "c <= e", "f <= g"];
const PAIRED: [char; 4] = ['a', 'd', 'e', 'g'];
const LIFTED: [char; 7] = ['a', 'b', 'c', 'd', 'e', 'f', 'g'];

fn expr(side: &str, style: Style, i: u8) -> Result<SymExpr> {
    let neutral = SymExpr::parse(side)?;
    Ok(neutral.rename(|l| style.name(l.chars().next().unwrap_or('?'), i)))
}

/// Instantiates relation templates for both senders.
fn instantiate(templates: &[&str], style: Style) -> Result<Vec<(String, SymExpr, SymExpr, bool)>> {
    let mut out = Vec::new();
    for i in [1u8, 2] {
        for t in templates {
            let (eq, (l, r)) = match t.split_once("<=") {
                Some(p) => (false, p),
                None => (true, t.split_once('=').ok_or_else(|| Error::Parse(t.to_string()))?),
            };
            let (l, r) = (expr(l, style, i)?, expr(r, style, i)?);
            let name = format!("{l} {} {r}", if eq { "=" } else { "<=" });
            out.push((name, l, r, eq));
        }
    }
    Ok(out)
}

fn templates(rf: RelationFamily) -> Vec<&'static str> {
    match rf {
        RelationFamily::HkIneq => HK_INEQ.to_vec(),
        RelationFamily::HkIndependence => HK_INDEPENDENCE.to_vec(),
        RelationFamily::CmgIneq => CMG_INEQ.to_vec(),
        RelationFamily::ModCmgIneq => CMG_INEQ.iter().chain(&MOD_CMG_EXTRA).copied().collect(),
        RelationFamily::HodIneq => HOD_INEQ.to_vec(),
        _ => Vec::new(),
    }
}

/// The relation family as symbolic axioms in the given spelling.
///
/// Two-set families have no single-set axiom form and yield an empty set.
pub fn axioms(rf: RelationFamily, style: Style) -> Result<AxiomSet> {
    let mut ax = AxiomSet::new();
    for (name, l, r, eq) in instantiate(&templates(rf), style)? {
        if eq {
            AxiomSet::eq(&mut ax, &name, l, r);
        } else {
            ax.le(&name, l, r);
        }
    }
    Ok(ax)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport {
    pub relation_family: RelationFamily,
    pub checks: Vec<Check>,
    /// Relations evaluated for information only (never part of `all_hold`).
    pub excluded: Vec<Check>,
    pub all_hold: bool,
}

fn check_family(c: &ConstantSet, want: Family) -> Result<()> {
    let ok = c.family == want || (want == Family::Cmg && c.family == Family::ModCmg);
    if !ok {
        return Err(Error::FamilyMismatch { expected: want.to_string(), found: c.family.to_string() });
    }
    Ok(())
}

fn evaluate(list: Vec<(String, SymExpr, SymExpr, bool)>, c: &ConstantSet) -> Result<Vec<Check>> {
    list.into_iter()
        .map(|(name, l, r, eq)| {
            let (lhs, rhs) = (l.eval(&c.lookup())?, r.eval(&c.lookup())?);
            let holds = if eq { (lhs - rhs).abs() <= TOL } else { lhs <= rhs + TOL };
            Ok(Check { name, lhs, rhs, holds })
        })
        .collect()
}

/// Evaluates a relation family on one constant set, or on a matched pair
/// `(first, second)` for the two-set families.
pub fn constant_relations(
    rf: RelationFamily,
    first: &ConstantSet,
    second: Option<&ConstantSet>,
) -> Result<RelationReport> {
    let (f1, f2) = rf.families();
    check_family(first, f1)?;
    let mut excluded = Vec::new();
    let checks = match (f2, second) {
        (None, _) => {
            if rf == RelationFamily::HodIneq {
                excluded = evaluate(instantiate(&HOD_EXCLUDED, Style::Upper)?, first)?;
            }
            evaluate(instantiate(&templates(rf), first.style())?, first)?
        }
        (Some(f2), Some(other)) => {
            check_family(other, f2)?;
            let equality = matches!(
                rf,
                RelationFamily::CollapseEquality | RelationFamily::HodCollapseEquality | RelationFamily::LiftEquality
            );
            let letters: &[char] = if matches!(rf, RelationFamily::LiftOrder | RelationFamily::LiftEquality) {
                &LIFTED
            } else {
                &PAIRED
            };
            let mut out = Vec::new();
            for i in [1u8, 2] {
                for &l in letters {
                    let (n1, n2) = (first.style().name(l, i), other.style().name(l, i));
                    let (v1, v2) = (first.get(&n1)?, other.get(&n2)?);
                    // Collapse order: lowercase >= primed. Lift order: base <= capital.
                    let (name, holds) = match rf {
                        _ if equality => (format!("{n1} = {n2}"), (v1 - v2).abs() <= TOL),
                        RelationFamily::CollapseOrder => (format!("{n1} >= {n2}"), v1 + TOL >= v2),
                        _ => (format!("{n1} <= {n2}"), v1 <= v2 + TOL),
                    };
                    out.push(Check { name, lhs: v1, rhs: v2, holds });
                }
            }
            out
        }
        (Some(f2), None) => {
            return Err(Error::FamilyMismatch { expected: format!("a second {f2} constant set"), found: "none".into() })
        }
    };
    let all_hold = checks.iter().all(|c| c.holds);
    Ok(RelationReport { relation_family: rf, checks, excluded, all_hold })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let n = |rf| instantiate(&templates(rf), Style::Lower).unwrap().len();
        assert_eq!(n(RelationFamily::HkIneq), 30);
        assert_eq!(n(RelationFamily::CmgIneq), 20);
        assert_eq!(n(RelationFamily::ModCmgIneq), 26);
        assert_eq!(n(RelationFamily::HodIneq), 24);
    }

    #[test]
    fn zero_constants_hold() {
        for (rf, fam) in [
            (RelationFamily::HkIneq, Family::Hk),
            (RelationFamily::CmgIneq, Family::Cmg),
            (RelationFamily::ModCmgIneq, Family::ModCmg),
            (RelationFamily::HodIneq, Family::Hod),
        ] {
            let z = ConstantSet::zero(fam).unwrap();
            let r = constant_relations(rf, &z, None).unwrap();
            assert!(r.all_hold);
            assert!(r.checks.iter().all(|c| c.lhs == c.rhs));
        }
    }

    #[test]
    fn family_mismatch() {
        let z = ConstantSet::zero(Family::Hod).unwrap();
        assert!(matches!(constant_relations(RelationFamily::HkIneq, &z, None), Err(Error::FamilyMismatch { .. })));
    }

    #[test]
    fn excluded_relations_listed() {
        let z = ConstantSet::zero(Family::Hod).unwrap();
        let r = constant_relations(RelationFamily::HodIneq, &z, None).unwrap();
        let names: Vec<&str> = r.excluded.iter().map(|c| c.name.as_str()).collect();
        assert!(names.contains(&"B1 <= D1") && names.contains(&"C2 <= E2"));
        assert!(!r.checks.iter().any(|c| c.name == "B1 <= D1" || c.name == "C1 <= E1"));
    }
}
