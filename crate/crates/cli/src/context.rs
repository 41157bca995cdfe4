//! Maps a distribution file onto the joint each constant family needs.

use std::path::Path;

use anyhow::{bail, Context as _, Result};
use icregion::bounds::{bound_constants, collapse, ConstantSet};
use icregion::probspace::{Family, JointDist};
use icregion::rational::{int, Rational};
use icregion::sample::lift;

use crate::distfile::{parse_dist, DistError, DistFile};

pub struct Context {
    pub file: DistFile,
    joint: JointDist,
}

impl Context {
    pub fn load(path: &Path) -> Result<Context, DistError> {
        let file = parse_dist(path)?;
        Context::new(file)
    }

    pub fn new(file: DistFile) -> Result<Context, DistError> {
        let joint = file.joint()?;
        Ok(Context { file, joint })
    }

    pub fn family(&self) -> Family {
        self.file.spec.family
    }

    pub fn joint(&self) -> &JointDist {
        &self.joint
    }

    /// Family used when none is requested.
    pub fn default_family(&self) -> Family {
        match self.family() {
            Family::GeneralIc => Family::Hod,
            f => f,
        }
    }

    /// Common parts declared by the file, or trivial ones.
    pub fn common(&self) -> [Vec<Rational>; 2] {
        self.file.common.clone().unwrap_or_else(|| [vec![int(1)], vec![int(1)]])
    }

    /// Joint whose constants of `family` describe this file. Independent
    /// files reach the dependent families through their lift.
    pub fn joint_for(&self, family: Family) -> Result<JointDist> {
        let own = self.family();
        let j = match (own, family) {
            (Family::Hk, Family::Hk) => self.joint.clone(),
            (Family::Hk, Family::Cmg | Family::ModCmg) => collapse(&self.joint)?,
            (Family::Hk, Family::Hod | Family::HodCmg) => {
                let [k1, k2] = self.common();
                let lifted = lift(&self.joint, &k1, &k2)?.lifted;
                if family == Family::Hod {
                    lifted
                } else {
                    collapse(&lifted)?
                }
            }
            (Family::Hod | Family::GeneralIc, Family::Hod) => self.joint.clone(),
            (Family::Hod | Family::GeneralIc, Family::HodCmg) => collapse(&self.joint)?,
            (a, b) if a.is_cmg_type() && b.is_cmg_type() => self.joint.clone(),
            _ => bail!("a {own} distribution does not define {family} constants"),
        };
        Ok(j)
    }

    pub fn constants(&self, family: Family) -> Result<ConstantSet> {
        let j = self.joint_for(family)?;
        bound_constants(family, &j).with_context(|| format!("computing {family} constants"))
    }

    /// First family in `candidates` this file can supply.
    pub fn pick(&self, candidates: &[Family]) -> Option<Family> {
        candidates.iter().copied().find(|f| self.joint_for(*f).is_ok())
    }
}
