//! Seeded sweeps that aggregate per-distribution checks.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use crate::bounds::{bound_constants, collapse, constant_relations, RelationFamily};
use crate::probspace::{build_joint, Family};
use crate::rational::format_sig;
use crate::regions::{compare_constants, crosscheck_constants, CheckResult, MatchedConstants, Status};
use crate::sample::{cmg_spec, hk_spec, hod_spec, lifted_pair, Shape};
use crate::Result;

/// Outcome of one named check across every sample of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct Tally {
    pub name: String,
    pub runs: usize,
    pub failures: usize,
    /// Only reported, never failing.
    pub info: bool,
    /// Largest value seen, e.g. the worst violation or the best area delta.
    pub max_value: f64,
    pub first_failure: Option<(u64, String)>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepReport {
    pub tallies: Vec<Tally>,
}

impl SweepReport {
    pub fn record(&mut self, name: &str, seed: u64, status: Status, value: f64, detail: &str) {
        let idx = match self.tallies.iter().position(|t| t.name == name) {
            Some(i) => i,
            None => {
                self.tallies.push(Tally {
                    name: name.to_string(),
                    runs: 0,
                    failures: 0,
                    info: status == Status::Info,
                    max_value: f64::NEG_INFINITY,
                    first_failure: None,
                });
                self.tallies.len() - 1
            }
        };
        let t = &mut self.tallies[idx];
        t.runs += 1;
        if value.is_finite() || value == f64::INFINITY {
            t.max_value = t.max_value.max(value);
        }
        if status == Status::Fail {
            t.failures += 1;
            if t.first_failure.is_none() {
                t.first_failure = Some((seed, detail.to_string()));
            }
        }
    }

    fn record_check(&mut self, prefix: &str, seed: u64, c: &CheckResult) {
        let name = format!("{prefix}{}", c.name);
        self.record(&name, seed, c.status, c.value, &c.detail);
    }

    pub fn extend(&mut self, other: SweepReport) {
        for t in other.tallies {
            match self.tallies.iter_mut().find(|x| x.name == t.name) {
                Some(x) => {
                    x.runs += t.runs;
                    x.failures += t.failures;
                    x.max_value = x.max_value.max(t.max_value);
                    if x.first_failure.is_none() {
                        x.first_failure = t.first_failure;
                    }
                }
                None => self.tallies.push(t),
            }
        }
    }

    pub fn get(&self, name: &str) -> Option<&Tally> {
        self.tallies.iter().find(|t| t.name == name)
    }

    pub fn passed(&self) -> bool {
        self.tallies.iter().all(|t| t.failures == 0)
    }

    pub fn to_text(&self) -> String {
        let width = self.tallies.iter().map(|t| t.name.len()).max().unwrap_or(5).max(5);
        let mut s = format!("{:<width$}  {:>5}  {:>5}  status  {:>14}  first failure\n", "check", "runs", "fail", "max value");
        for t in &self.tallies {
            let status = if t.info { "info" } else if t.failures == 0 { "pass" } else { "FAIL" };
            let first = t.first_failure.as_ref().map(|(seed, d)| format!("seed {seed}: {d}")).unwrap_or_default();
            let _ = writeln!(
                s,
                "{:<width$}  {:>5}  {:>5}  {:<6}  {:>14}  {}",
                t.name,
                t.runs,
                t.failures,
                status,
                format_sig(t.max_value, 8),
                first
            );
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("check,runs,failures,status,max_value\n");
        for t in &self.tallies {
            let status = if t.info { "info" } else if t.failures == 0 { "pass" } else { "FAIL" };
            let _ = writeln!(s, "{},{},{},{},{}", t.name, t.runs, t.failures, status, format_sig(t.max_value, 12));
        }
        s
    }
}

/// Seed of the `i`-th sample of a sweep started at `seed`.
pub fn sample_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64)
}

/// Projected split region against the closed form, for every family. HOD
/// samples are also run with the users swapped.
pub fn crosscheck_sweep(seed: u64, count: usize) -> Result<SweepReport> {
    let mut rep = SweepReport::default();
    for i in 0..count {
        let s = sample_seed(seed, i);
        let hk = build_joint(&hk_spec(s, Shape::SMALL))?;
        let hod = build_joint(&hod_spec(s, Shape::SMALL))?;
        let hod = bound_constants(Family::Hod, &hod)?;
        let mut sets = alloc::vec![bound_constants(Family::Hk, &hk)?, hod.swap_users(), hod];
        for f in [Family::Cmg, Family::ModCmg, Family::HodCmg] {
            sets.push(bound_constants(f, &build_joint(&cmg_spec(s, Shape::SMALL, f))?)?);
        }
        for c in &sets {
            for check in crosscheck_constants(c)?.checks {
                rep.record_check("", s, &check);
            }
        }
    }
    Ok(rep)
}

/// Relations among constants of single conforming distributions and of
/// their superposition collapses.
pub fn relation_sweep(seed: u64, count: usize) -> Result<SweepReport> {
    let mut rep = SweepReport::default();
    for i in 0..count {
        let s = sample_seed(seed, i);
        let hk_joint = build_joint(&hk_spec(s, Shape::SMALL))?;
        let hk = bound_constants(Family::Hk, &hk_joint)?;
        let cmg_of_hk = bound_constants(Family::Cmg, &collapse(&hk_joint)?)?;
        let hod_joint = build_joint(&hod_spec(s, Shape::SMALL))?;
        let hod = bound_constants(Family::Hod, &hod_joint)?;
        let hodcmg_of_hod = bound_constants(Family::HodCmg, &collapse(&hod_joint)?)?;
        let cmg = bound_constants(Family::Cmg, &build_joint(&cmg_spec(s, Shape::SMALL, Family::Cmg))?)?;
        let mod_cmg = bound_constants(Family::ModCmg, &build_joint(&cmg_spec(s, Shape::SMALL, Family::ModCmg))?)?;
        let runs = [
            (RelationFamily::HkIneq, &hk, None),
            (RelationFamily::HkIndependence, &hk, None),
            (RelationFamily::CmgIneq, &cmg, None),
            (RelationFamily::CmgIneq, &cmg_of_hk, None),
            (RelationFamily::ModCmgIneq, &mod_cmg, None),
            (RelationFamily::HodIneq, &hod, None),
            (RelationFamily::CollapseOrder, &hk, Some(&cmg_of_hk)),
            (RelationFamily::CollapseEquality, &hk, Some(&cmg_of_hk)),
            (RelationFamily::HodCollapseEquality, &hod, Some(&hodcmg_of_hod)),
        ];
        for (rf, a, b) in runs {
            let r = constant_relations(rf, a, b)?;
            let worst = r.checks.iter().map(|c| c.lhs - c.rhs).fold(f64::NEG_INFINITY, f64::max);
            let failed: Vec<&str> = r.checks.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
            let status = if r.all_hold { Status::Pass } else { Status::Fail };
            rep.record(rf.name(), s, status, worst, &failed.join("; "));
            for c in &r.excluded {
                let generic = c.name.replace(['1', '2'], "i");
                let name = format!("{}.excluded.{generic}", rf.name());
                let detail = if c.holds { "holds" } else { "counterexample" };
                rep.record(&name, s, Status::Info, c.lhs - c.rhs, detail);
            }
        }
    }
    Ok(rep)
}

/// Independent regions against lifted dependent ones. With `max_k = 1` the
/// common parts are trivial and every inclusion must be an equality.
pub fn lift_sweep(seed: u64, count: usize, max_k: usize) -> Result<SweepReport> {
    let mut rep = SweepReport::default();
    for i in 0..count {
        let s = sample_seed(seed, i);
        let pair = lifted_pair(s, max_k)?;
        let m = MatchedConstants::new(&pair.base, &pair.lifted)?;
        let trivial = pair.k_cards == [1, 1];
        let prefix = if max_k == 1 { "trivial-k." } else { "lift." };
        for check in compare_constants(&m, trivial)?.checks {
            rep.record_check(prefix, s, &check);
        }
    }
    Ok(rep)
}
