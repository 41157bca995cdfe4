//! Named rate regions and the per-distribution cross-checks.

mod projection;
mod suite;
mod templates;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::bounds::{ConstantSet, Style};
use crate::polytope::lp::LpResult;
use crate::polytope::{maximize_over, IneqSystem, LinIneq, Mode, Rhs};
use crate::probspace::Family;
use crate::rational::to_f64;
use crate::{Error, Result};

pub use projection::{nontrivial, reduction_axioms, symbolic_projection, SymbolicProjection};
pub use suite::{
    compare_constants, compare_suite, crosscheck_constants, crosscheck_fme, region_pair, CheckResult, MatchedConstants, Status,
    SuiteReport, AREA_TOL,
};

/// Identifier of a named region template.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(non_camel_case_types)]
pub enum RegionId {
    S_HK,
    R_HK,
    R_HK_EQUI,
    S_HK_MOD,
    R_HK_MOD,
    S_CMG,
    S_CMG_COMP,
    S_MODCMG,
    R_CMG,
    R_CMG_EQUI,
    R_MODCMG,
    COMPACT,
    S_HOD,
    R_HOD,
    R_HOD_MOD,
    S_HODCMG,
    R_HODCMG,
    R_HODCMG_EQUI,
}

/// Rate variables of the split space, in column order.
pub const SPLIT_VARS: [&str; 4] = ["T1", "S1", "T2", "S2"];
pub const RATE_VARS: [&str; 2] = ["R1", "R2"];

impl RegionId {
    pub const ALL: [RegionId; 18] = [
        RegionId::S_HK,
        RegionId::R_HK,
        RegionId::R_HK_EQUI,
        RegionId::S_HK_MOD,
        RegionId::R_HK_MOD,
        RegionId::S_CMG,
        RegionId::S_CMG_COMP,
        RegionId::S_MODCMG,
        RegionId::R_CMG,
        RegionId::R_CMG_EQUI,
        RegionId::R_MODCMG,
        RegionId::COMPACT,
        RegionId::S_HOD,
        RegionId::R_HOD,
        RegionId::R_HOD_MOD,
        RegionId::S_HODCMG,
        RegionId::R_HODCMG,
        RegionId::R_HODCMG_EQUI,
    ];

    pub fn name(self) -> &'static str {
        templates::name(self)
    }

    pub fn parse(s: &str) -> Option<RegionId> {
        RegionId::ALL.iter().copied().find(|r| r.name().eq_ignore_ascii_case(s.trim()))
    }

    /// Whether the region lives in the `(T1, S1, T2, S2)` space.
    pub fn is_split(self) -> bool {
        self.name().starts_with("S_")
    }

    pub fn variables(self) -> &'static [&'static str] {
        if self.is_split() {
            &SPLIT_VARS
        } else {
            &RATE_VARS
        }
    }

    /// Constant families the template can be instantiated with.
    pub fn families(self) -> &'static [Family] {
        use RegionId::*;
        match self {
            S_HK | R_HK | R_HK_EQUI | S_HK_MOD | R_HK_MOD => &[Family::Hk],
            S_CMG | S_CMG_COMP | R_CMG | R_CMG_EQUI => &[Family::Cmg, Family::ModCmg],
            S_MODCMG | R_MODCMG => &[Family::ModCmg],
            COMPACT => &[Family::Hk, Family::Cmg, Family::ModCmg],
            S_HOD | R_HOD | R_HOD_MOD => &[Family::Hod],
            S_HODCMG | R_HODCMG | R_HODCMG_EQUI => &[Family::HodCmg],
        }
    }

    /// Template rows over neutral lowercase constants.
    pub fn template(self) -> &'static [&'static str] {
        templates::rows(self)
    }
}

impl fmt::Display for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn styled(style: Style) -> impl Fn(&str) -> String {
    move |sym: &str| {
        let mut ch = sym.chars();
        let letter = ch.next().unwrap_or('?');
        let sender = ch.as_str().parse::<u8>().unwrap_or(0);
        style.name(letter, sender)
    }
}

/// The region with symbolic right-hand sides, spelled in `style`.
///
/// Rows carry labels `<id>.<n>` in template order, followed by the
/// nonnegativity rows.
pub fn build_symbolic(id: RegionId, style: Style) -> Result<IneqSystem> {
    let text: String = id
        .template()
        .iter()
        .enumerate()
        .map(|(n, row)| format!("{row}  # {}.{}\n", id.name(), n + 1))
        .collect();
    let raw = IneqSystem::parse(Mode::Symbolic, id.variables(), &text)?;
    let rename = styled(style);
    let mut sys = IneqSystem::new(Mode::Symbolic, id.variables());
    for r in raw.rows() {
        let rhs = match &r.rhs {
            Rhs::Sym(e) => Rhs::Sym(e.rename(&rename)),
            other => other.clone(),
        };
        sys.push(LinIneq { coeffs: r.coeffs.clone(), rhs, label: r.label.clone() })?;
    }
    sys.add_nonnegativity();
    Ok(sys)
}

/// Instantiates the region with numeric constants.
pub fn build(id: RegionId, c: &ConstantSet) -> Result<IneqSystem> {
    if !id.families().contains(&c.family) {
        let expected = id.families().iter().map(|f| f.name()).collect::<Vec<_>>().join(" or ");
        return Err(Error::FamilyMismatch { expected: format!("{expected} constants for {id}"), found: c.family.to_string() });
    }
    build_symbolic(id, c.style())?.evaluate(&c.lookup())
}

/// How far the row with `label` reaches past the region cut by the other
/// rows: positive means the row is active, `None` means the others leave
/// its direction uncapped.
pub fn row_slack(sys: &IneqSystem, label: &str) -> Result<Option<f64>> {
    let row = sys
        .rows()
        .iter()
        .find(|r| r.label == label)
        .ok_or_else(|| Error::Structure(format!("no row labeled `{label}`")))?;
    let mut others = sys.clone();
    others.retain(|r| r.label != label);
    let rhs = row.rhs.as_num().ok_or_else(|| Error::Structure("row slack needs a numeric system".into()))?;
    Ok(match maximize_over(&others, &row.coeffs) {
        LpResult::Optimal { value, .. } => Some(to_f64(&value) - rhs),
        LpResult::Infeasible => Some(f64::NEG_INFINITY),
        LpResult::Unbounded => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::geometry2d;

    #[test]
    fn row_counts() {
        let counts = [14, 9, 13, 12, 13, 8, 14, 10, 9, 13, 9, 7, 14, 13, 13, 8, 9, 13];
        for (id, n) in RegionId::ALL.iter().zip(counts) {
            assert_eq!(id.template().len(), n, "{id}");
            let sys = build_symbolic(*id, Style::Lower).unwrap();
            assert_eq!(sys.len(), n + id.variables().len(), "{id}");
        }
    }

    #[test]
    fn labels_and_style() {
        let s = build_symbolic(RegionId::R_HOD, Style::Upper).unwrap();
        let r = s.rows().iter().find(|r| r.label == "R_HOD.11").unwrap();
        assert_eq!(s.row_text(r), "2*R1 + R2 <= 2*A1 + E2 + F2");
        let s = build_symbolic(RegionId::S_HODCMG, Style::UpperPrimed).unwrap();
        assert_eq!(s.row_text(&s.rows()[0]), "S1 <= Ap1");
        assert_eq!(s.rows().last().unwrap().label, "nonneg.S2");
    }

    #[test]
    fn zero_constants_give_origin() {
        for id in RegionId::ALL {
            let c = ConstantSet::zero(id.families()[0]).unwrap();
            let sys = build(id, &c).unwrap();
            assert!(sys.contains(&[0.0; 4][..id.variables().len()], 0.0));
            if !id.is_split() {
                let g = geometry2d(&sys).unwrap();
                assert_eq!(g.vertices, alloc::vec![(0.0, 0.0)]);
                assert_eq!(g.area, 0.0);
            }
        }
    }

    #[test]
    fn family_checked() {
        let c = ConstantSet::zero(Family::Hk).unwrap();
        assert!(matches!(build(RegionId::R_HOD, &c), Err(Error::FamilyMismatch { .. })));
        assert!(build(RegionId::COMPACT, &c).is_ok());
    }

    #[test]
    fn parse_ids() {
        for id in RegionId::ALL {
            assert_eq!(RegionId::parse(id.name()), Some(id));
        }
        assert_eq!(RegionId::parse("r_hod"), Some(RegionId::R_HOD));
        assert_eq!(RegionId::parse("nope"), None);
    }
}
