use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use super::{build, row_slack, RegionId};
use crate::bounds::{bound_constants, collapse, constant_relations, ConstantSet, RelationFamily};
use crate::polytope::{equal, geometry2d, includes, project_rates, IneqSystem, Region2D, INCLUSION_TOL, VERTEX_TOL};
use crate::probspace::{Family, JointDist};
use crate::rational::{format_sig, Rational};
use crate::sample::lift;
use crate::{Result, TOL};

/// Area differences below this count as equal.
pub const AREA_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Reported without a verdict.
    Info,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Info => "info",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    /// Main numeric evidence: a violation, an excess or an area.
    pub value: f64,
    pub tolerance: f64,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn push(&mut self, name: &str, status: Status, value: f64, tolerance: f64, detail: String) {
        self.checks.push(CheckResult { name: name.to_string(), status, value, tolerance, detail });
    }

    fn verdict(&mut self, name: &str, ok: bool, value: f64, tolerance: f64, detail: String) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(name, status, value, tolerance, detail);
    }

    pub fn extend(&mut self, other: SuiteReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        let mut s = format!("{:<width$}  status  {:>16}  {:>8}  detail\n", "check", "value", "tol");
        for c in &self.checks {
            let _ = writeln!(
                s,
                "{:<width$}  {:<6}  {:>16}  {:>8}  {}",
                c.name,
                c.status.name(),
                format_sig(c.value, 12),
                format_sig(c.tolerance, 3),
                c.detail
            );
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("check,status,value,tolerance\n");
        for c in &self.checks {
            let _ = writeln!(s, "{},{},{},{}", c.name, c.status.name(), format_sig(c.value, 12), format_sig(c.tolerance, 12));
        }
        s
    }
}

fn vertices_text(r: &Region2D) -> String {
    let pts: Vec<String> =
        r.vertices.iter().map(|(x, y)| format!("({},{})", format_sig(*x, 6), format_sig(*y, 6))).collect();
    pts.join(" ")
}

/// Split-space and closed-form region of each family.
pub fn region_pair(family: Family) -> (RegionId, RegionId) {
    match family {
        Family::Hk | Family::GeneralIc => (RegionId::S_HK, RegionId::R_HK),
        Family::Hod => (RegionId::S_HOD, RegionId::R_HOD),
        Family::Cmg => (RegionId::S_CMG, RegionId::R_CMG),
        Family::ModCmg => (RegionId::S_MODCMG, RegionId::R_MODCMG),
        Family::HodCmg => (RegionId::S_HODCMG, RegionId::R_HODCMG),
    }
}

/// Projects the family's split region and compares it with the closed form.
pub fn crosscheck_fme(dist: &JointDist, family: Family) -> Result<SuiteReport> {
    let c = bound_constants(family, dist)?;
    crosscheck_constants(&c)
}

/// [`crosscheck_fme`] on precomputed constants.
pub fn crosscheck_constants(c: &ConstantSet) -> Result<SuiteReport> {
    let (split, closed) = region_pair(c.family);
    let projected = project_rates(&build(split, c)?)?;
    let closed_sys = build(closed, c)?;
    let (gp, gc) = (geometry2d(&projected)?, geometry2d(&closed_sys)?);
    let mut rep = SuiteReport::default();
    let name = format!("fme.{}", c.family.name());
    let same = equal(&projected, &closed_sys)?;
    rep.verdict(&format!("{name}.equal"), same, gc.area, INCLUSION_TOL, format!("{split} projected vs {closed}"));
    let agree = gp.same_vertices(&gc, VERTEX_TOL);
    rep.verdict(
        &format!("{name}.vertices"),
        agree,
        (gp.area - gc.area).abs(),
        VERTEX_TOL,
        format!("projected [{}] closed [{}]", vertices_text(&gp), vertices_text(&gc)),
    );
    if c.family == Family::Hod {
        for label in ["R_HOD.11", "R_HOD.13"] {
            let slack = row_slack(&closed_sys, label)?.unwrap_or(f64::INFINITY);
            let detail = if slack > VERTEX_TOL { "active" } else { "redundant here" };
            rep.push(&format!("{name}.{label}.slack"), Status::Info, slack, VERTEX_TOL, detail.to_string());
        }
    }
    Ok(rep)
}

fn relation_check(rep: &mut SuiteReport, name: &str, rf: RelationFamily, a: &ConstantSet, b: Option<&ConstantSet>) -> Result<()> {
    let r = constant_relations(rf, a, b)?;
    let worst = r
        .checks
        .iter()
        .map(|c| if c.name.contains(" = ") { (c.lhs - c.rhs).abs() } else { c.lhs - c.rhs })
        .fold(f64::NEG_INFINITY, f64::max);
    let failed: Vec<&str> = r.checks.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
    rep.verdict(name, r.all_hold, worst, TOL, failed.join("; "));
    Ok(())
}

fn inclusion_check(rep: &mut SuiteReport, name: &str, a: &IneqSystem, b: &IneqSystem) -> Result<()> {
    let inc = includes(a, b)?;
    let (excess, detail) = match &inc.witness {
        Some(w) => (w.excess, format!("witness {:?} violates {}", w.point, w.row)),
        None => (0.0, String::new()),
    };
    rep.verdict(name, inc.holds, excess, INCLUSION_TOL, detail);
    Ok(())
}

/// Every constant family on matched distributions built from `base`.
#[derive(Clone, Debug)]
pub struct MatchedConstants {
    pub hk: ConstantSet,
    pub cmg: ConstantSet,
    pub mod_cmg: ConstantSet,
    pub hod: ConstantSet,
    pub hod_cmg: ConstantSet,
}

impl MatchedConstants {
    pub fn new(base: &JointDist, lifted: &JointDist) -> Result<MatchedConstants> {
        let (cb, cl) = (collapse(base)?, collapse(lifted)?);
        Ok(MatchedConstants {
            hk: bound_constants(Family::Hk, base)?,
            cmg: bound_constants(Family::Cmg, &cb)?,
            mod_cmg: bound_constants(Family::ModCmg, &cb)?,
            hod: bound_constants(Family::Hod, lifted)?,
            hod_cmg: bound_constants(Family::HodCmg, &cl)?,
        })
    }
}

/// Lifts `base` with common parts of pmfs `k[0]`, `k[1]` and runs the
/// comparison checks between the independent and dependent regions.
pub fn compare_suite(base: &JointDist, k: [&[Rational]; 2]) -> Result<SuiteReport> {
    let pair = lift(base, k[0], k[1])?;
    let m = MatchedConstants::new(&pair.base, &pair.lifted)?;
    let trivial = k[0].len() == 1 && k[1].len() == 1;
    compare_constants(&m, trivial)
}

/// [`compare_suite`] on precomputed constants.
pub fn compare_constants(m: &MatchedConstants, trivial_common: bool) -> Result<SuiteReport> {
    let mut rep = SuiteReport::default();
    relation_check(&mut rep, "i.lift-order", RelationFamily::LiftOrder, &m.hk, Some(&m.hod))?;
    relation_check(&mut rep, "i.hod-collapse-equality", RelationFamily::HodCollapseEquality, &m.hod, Some(&m.hod_cmg))?;
    relation_check(&mut rep, "i.collapse-equality", RelationFamily::CollapseEquality, &m.hk, Some(&m.cmg))?;
    if trivial_common {
        relation_check(&mut rep, "i.lift-equality", RelationFamily::LiftEquality, &m.hk, Some(&m.hod))?;
    }

    let (s_hk, s_hod) = (build(RegionId::S_HK, &m.hk)?, build(RegionId::S_HOD, &m.hod)?);
    let rowwise = s_hk
        .rows()
        .iter()
        .zip(s_hod.rows())
        .map(|(a, b)| a.rhs.as_num().unwrap_or(0.0) - b.rhs.as_num().unwrap_or(0.0))
        .fold(f64::NEG_INFINITY, f64::max);
    rep.verdict("ii.split-rowwise", rowwise <= TOL, rowwise, TOL, "S_HK rhs minus S_HOD rhs".into());
    inclusion_check(&mut rep, "ii.split-inclusion", &s_hk, &s_hod)?;

    let r = |id, c| build(id, c);
    let (r_hk, r_hod) = (r(RegionId::R_HK, &m.hk)?, r(RegionId::R_HOD, &m.hod)?);
    let (r_hk_mod, r_hod_mod) = (r(RegionId::R_HK_MOD, &m.hk)?, r(RegionId::R_HOD_MOD, &m.hod)?);
    inclusion_check(&mut rep, "iii.R_HK<=R_HOD", &r_hk, &r_hod)?;
    inclusion_check(&mut rep, "iii.R_HK_MOD<=R_HOD_MOD", &r_hk_mod, &r_hod_mod)?;

    let (s_cmg, s_hodcmg) = (r(RegionId::S_CMG, &m.cmg)?, r(RegionId::S_HODCMG, &m.hod_cmg)?);
    let (r_cmg, r_hodcmg) = (r(RegionId::R_CMG, &m.cmg)?, r(RegionId::R_HODCMG, &m.hod_cmg)?);
    inclusion_check(&mut rep, "iv.S_CMG<=S_HODCMG", &s_cmg, &s_hodcmg)?;
    inclusion_check(&mut rep, "iv.R_CMG<=R_HODCMG", &r_cmg, &r_hodcmg)?;

    let r_hodcmg_equi = r(RegionId::R_HODCMG_EQUI, &m.hod_cmg)?;
    let (ab, ba) = (includes(&r_hod_mod, &r_hodcmg_equi)?, includes(&r_hodcmg_equi, &r_hod_mod)?);
    let excess = [&ab, &ba].iter().filter_map(|i| i.witness.as_ref()).map(|w| w.excess).fold(0.0, f64::max);
    let detail = [&ab, &ba]
        .iter()
        .filter_map(|i| i.witness.as_ref())
        .map(|w| format!("witness {:?} violates {}", w.point, w.row))
        .collect::<Vec<_>>()
        .join("; ");
    rep.verdict("v.R_HOD_MOD=R_HODCMG_EQUI", ab.holds && ba.holds, excess, INCLUSION_TOL, detail);

    let r_modcmg = r(RegionId::R_MODCMG, &m.mod_cmg)?;
    let same = equal(&r_hk, &r_modcmg)?;
    rep.verdict("vi.R_HK=R_MODCMG", same, 0.0, INCLUSION_TOL, String::new());

    let area = |s: &IneqSystem| geometry2d(s).map(|g| g.area);
    let (a_hk, a_hod) = (area(&r_hk)?, area(&r_hod)?);
    let (a_hk_mod, a_hod_mod) = (area(&r_hk_mod)?, area(&r_hod_mod)?);
    let (a_cmg, a_hodcmg) = (area(&r_cmg)?, area(&r_hodcmg)?);
    for (name, a, b) in [
        ("vii.area.R_HOD-R_HK", a_hod, a_hk),
        ("vii.area.R_HOD_MOD-R_HK_MOD", a_hod_mod, a_hk_mod),
        ("vii.area.R_HODCMG-R_CMG", a_hodcmg, a_cmg),
    ] {
        let delta = a - b;
        if trivial_common {
            rep.verdict(name, delta.abs() <= AREA_TOL, delta, AREA_TOL, "trivial common part".into());
        } else {
            let strict = if delta > AREA_TOL { "strictly larger" } else { "equal area" };
            rep.push(name, Status::Info, delta, AREA_TOL, strict.into());
        }
    }
    Ok(rep)
}
