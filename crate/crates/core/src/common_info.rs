//! The common-information example: independent uniform `U`, `W` over
//! `{0..3}` and `K` over `{0,1}`, lifted to `U_d = (U, K)`, `W_d = (W, K)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::probspace::{apply_map, wyner_lift, CommonPart, CondTable, Encoder, JointDist, VariableDecl};
use crate::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct CommonInfo {
    pub h_k: f64,
    pub h_ud: f64,
    pub h_wd: f64,
    pub h_ud_wd: f64,
    pub h_u_w: f64,
    pub i_ud_wd: f64,
    /// `I(U, W; U + W)`.
    pub i_sum: f64,
    /// `I(U_d, W_d; (U + W, 2K))`.
    pub i_lifted: f64,
    /// `I(U, W; (U + W, 2K))` on the unlifted pair.
    pub i_base: f64,
}

impl CommonInfo {
    /// Whether the lifted pair carries strictly more about `Y`.
    pub fn lemma_strict(&self) -> bool {
        self.i_lifted > self.i_base + crate::TOL
    }
}

/// Joint of `U, W, K, S = U + W, Y = 2S + K`.
pub fn base_joint() -> Result<JointDist> {
    let v = VariableDecl::new;
    let base = JointDist::uniform(vec![v("U", 4), v("W", 4), v("K", 2)])?;
    let sum: Vec<usize> = (0..16).map(|r| r / 4 + r % 4).collect();
    let y: Vec<usize> = (0..14).collect();
    let s = Encoder::from_table(&CondTable::deterministic("S", 7, &["U", "W"], &sum), 7)?;
    let with_s = apply_map(&base, &[s])?;
    let y = Encoder::from_table(&CondTable::deterministic("Y", 14, &["S", "K"], &y), 14)?;
    apply_map(&with_s, &[y])
}

pub fn compute() -> Result<CommonInfo> {
    let base = base_joint()?;
    let lifted = wyner_lift(&base, &[CommonPart::new("K", "U", "W")])?;
    Ok(CommonInfo {
        h_k: base.entropy(&["K"])?,
        h_ud: lifted.entropy(&["U"])?,
        h_wd: lifted.entropy(&["W"])?,
        h_ud_wd: lifted.entropy(&["U", "W"])?,
        h_u_w: base.entropy(&["U", "W"])?,
        i_ud_wd: lifted.info(&["U"], &["W"], &[])?,
        i_sum: base.info(&["U", "W"], &["S"], &[])?,
        i_lifted: lifted.info(&["U", "W"], &["Y"], &[])?,
        i_base: base.info(&["U", "W"], &["Y"], &[])?,
    })
}
