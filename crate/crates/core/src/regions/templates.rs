use super::RegionId;

const S_HK: [&str; 14] = [
    "S1 <= a1",
    "T1 <= b1",
    "T2 <= c1",
    "S1 + T1 <= d1",
    "S1 + T2 <= e1",
    "T1 + T2 <= f1",
    "S1 + T1 + T2 <= g1",
    "S2 <= a2",
    "T2 <= b2",
    "T1 <= c2",
    "S2 + T2 <= d2",
    "S2 + T1 <= e2",
    "T1 + T2 <= f2",
    "S2 + T1 + T2 <= g2",
];

const S_HK_MOD: [&str; 12] = [
    "S1 <= a1",
    "T1 <= b1",
    "S1 + T1 <= d1",
    "S1 + T2 <= e1",
    "T1 + T2 <= f1",
    "S1 + T1 + T2 <= g1",
    "S2 <= a2",
    "T2 <= b2",
    "S2 + T2 <= d2",
    "S2 + T1 <= e2",
    "T1 + T2 <= f2",
    "S2 + T1 + T2 <= g2",
];

const S_CMG: [&str; 8] = [
    "S1 <= a1",
    "S1 + T1 <= d1",
    "S1 + T2 <= e1",
    "S1 + T1 + T2 <= g1",
    "S2 <= a2",
    "S2 + T2 <= d2",
    "S2 + T1 <= e2",
    "S2 + T1 + T2 <= g2",
];

const S_CMG_COMP: [&str; 14] = [
    "S1 <= a1",
    "S1 + T1 <= d1",
    "S1 + T2 <= e1",
    "S1 + T1 + T2 <= g1",
    "S2 <= a2",
    "S2 + T2 <= d2",
    "S2 + T1 <= e2",
    "S2 + T1 + T2 <= g2",
    "T2 <= e1",
    "T1 <= e2",
    "T1 <= b1",
    "T2 <= b2",
    "T1 + T2 <= f1",
    "T1 + T2 <= f2",
];

const S_MODCMG: [&str; 10] = [
    "S1 <= a1",
    "T2 <= c1",
    "S1 + T1 <= d1",
    "S1 + T2 <= e1",
    "S1 + T1 + T2 <= g1",
    "S2 <= a2",
    "T1 <= c2",
    "S2 + T2 <= d2",
    "S2 + T1 <= e2",
    "S2 + T1 + T2 <= g2",
];

const R_HK: [&str; 9] = [
    "R1 <= d1",
    "R1 <= a1 + c2",
    "R2 <= d2",
    "R2 <= a2 + c1",
    "R1 + R2 <= a1 + g2",
    "R1 + R2 <= a2 + g1",
    "R1 + R2 <= e1 + e2",
    "2*R1 + R2 <= a1 + g1 + e2",
    "R1 + 2*R2 <= a2 + g2 + e1",
];

const R_HK_EQUI: [&str; 13] = [
    "R1 <= d1",
    "R1 <= a1 + c2",
    "R2 <= d2",
    "R2 <= a2 + c1",
    "R1 + R2 <= a1 + g2",
    "R1 + R2 <= a2 + g1",
    "R1 + R2 <= e1 + e2",
    "2*R1 + R2 <= a1 + g1 + e2",
    "R1 + 2*R2 <= a2 + g2 + e1",
    "2*R1 + R2 <= 2*a1 + e2 + f2",
    "R1 + 2*R2 <= 2*a2 + e1 + f1",
    "R1 <= a1 + e2",
    "R2 <= a2 + e1",
];

const R_HK_MOD: [&str; 13] = [
    "R1 <= d1",
    "R1 <= a1 + e2",
    "R1 <= a1 + f2",
    "R2 <= d2",
    "R2 <= a2 + e1",
    "R2 <= a2 + f1",
    "R1 + R2 <= a1 + g2",
    "R1 + R2 <= a2 + g1",
    "R1 + R2 <= e1 + e2",
    "2*R1 + R2 <= a1 + g1 + e2",
    "2*R1 + R2 <= 2*a1 + e2 + f2",
    "R1 + 2*R2 <= a2 + g2 + e1",
    "R1 + 2*R2 <= 2*a2 + e1 + f1",
];

const R_CMG: [&str; 9] = [
    "R1 <= d1",
    "R1 <= a1 + e2",
    "R2 <= d2",
    "R2 <= a2 + e1",
    "R1 + R2 <= a1 + g2",
    "R1 + R2 <= a2 + g1",
    "R1 + R2 <= e1 + e2",
    "2*R1 + R2 <= a1 + g1 + e2",
    "R1 + 2*R2 <= a2 + g2 + e1",
];

const R_CMG_EQUI: [&str; 13] = [
    "R1 <= d1",
    "R1 <= a1 + e2",
    "R2 <= d2",
    "R2 <= a2 + e1",
    "R1 + R2 <= a1 + g2",
    "R1 + R2 <= a2 + g1",
    "R1 + R2 <= e1 + e2",
    "2*R1 + R2 <= a1 + g1 + e2",
    "R1 + 2*R2 <= a2 + g2 + e1",
    "R1 <= a1 + f2",
    "R2 <= a2 + f1",
    "2*R1 + R2 <= 2*a1 + e2 + f2",
    "R1 + 2*R2 <= 2*a2 + e1 + f1",
];

const COMPACT: [&str; 7] = [
    "R1 <= d1",
    "R2 <= d2",
    "R1 + R2 <= a1 + g2",
    "R1 + R2 <= a2 + g1",
    "R1 + R2 <= e1 + e2",
    "2*R1 + R2 <= a1 + g1 + e2",
    "R1 + 2*R2 <= a2 + g2 + e1",
];

const R_HOD: [&str; 13] = [
    "R1 <= d1",
    "R1 <= a1 + c2",
    "R1 <= a1 + e2",
    "R2 <= d2",
    "R2 <= a2 + c1",
    "R2 <= a2 + e1",
    "R1 + R2 <= a2 + g1",
    "R1 + R2 <= a1 + g2",
    "R1 + R2 <= e1 + e2",
    "2*R1 + R2 <= a1 + g1 + e2",
    "2*R1 + R2 <= 2*a1 + e2 + f2",
    "R1 + 2*R2 <= a2 + g2 + e1",
    "R1 + 2*R2 <= 2*a2 + e1 + f1",
];

const R_HOD_MOD: [&str; 13] = [
    "R1 <= d1",
    "R1 <= a1 + e2",
    "R1 <= a1 + f2",
    "R2 <= d2",
    "R2 <= a2 + e1",
    "R2 <= a2 + f1",
    "R1 + R2 <= a1 + g2",
    "R1 + R2 <= a2 + g1",
    "R1 + R2 <= e1 + e2",
    "2*R1 + R2 <= 2*a1 + f2 + e2",
    "2*R1 + R2 <= g1 + a1 + e2",
    "R1 + 2*R2 <= 2*a2 + e1 + f1",
    "R1 + 2*R2 <= a2 + e1 + g2",
];

pub(super) fn name(id: RegionId) -> &'static str {
    use RegionId::*;
    match id {
        S_HK => "S_HK",
        R_HK => "R_HK",
        R_HK_EQUI => "R_HK_EQUI",
        S_HK_MOD => "S_HK_MOD",
        R_HK_MOD => "R_HK_MOD",
        S_CMG => "S_CMG",
        S_CMG_COMP => "S_CMG_COMP",
        S_MODCMG => "S_MODCMG",
        R_CMG => "R_CMG",
        R_CMG_EQUI => "R_CMG_EQUI",
        R_MODCMG => "R_MODCMG",
        COMPACT => "COMPACT",
        S_HOD => "S_HOD",
        R_HOD => "R_HOD",
        R_HOD_MOD => "R_HOD_MOD",
        S_HODCMG => "S_HODCMG",
        R_HODCMG => "R_HODCMG",
        R_HODCMG_EQUI => "R_HODCMG_EQUI",
    }
}

pub(super) fn rows(id: RegionId) -> &'static [&'static str] {
    match id {
        RegionId::S_HK | RegionId::S_HOD => &S_HK,
        RegionId::S_HK_MOD => &S_HK_MOD,
        RegionId::S_CMG | RegionId::S_HODCMG => &S_CMG,
        RegionId::S_CMG_COMP => &S_CMG_COMP,
        RegionId::S_MODCMG => &S_MODCMG,
        RegionId::R_HK | RegionId::R_MODCMG => &R_HK,
        RegionId::R_HK_EQUI => &R_HK_EQUI,
        RegionId::R_HK_MOD => &R_HK_MOD,
        RegionId::R_CMG | RegionId::R_HODCMG => &R_CMG,
        RegionId::R_CMG_EQUI | RegionId::R_HODCMG_EQUI => &R_CMG_EQUI,
        RegionId::COMPACT => &COMPACT,
        RegionId::R_HOD => &R_HOD,
        RegionId::R_HOD_MOD => &R_HOD_MOD,
    }
}
