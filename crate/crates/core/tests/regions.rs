use icregion::bounds::{bound_constants, ConstantSet};
use icregion::polytope::{equal, geometry2d, includes};
use icregion::probspace::{build_joint, Family};
use icregion::regions::{build, crosscheck_constants, nontrivial, row_slack, symbolic_projection, RegionId};
use icregion::sample::{hod_spec, Shape};
use icregion::sweep::{crosscheck_sweep, lift_sweep, relation_sweep, sample_seed};

#[test]
fn every_family_reduces_to_its_closed_form() {
    for (family, rows) in [(Family::Hk, 9), (Family::Hod, 13), (Family::Cmg, 9), (Family::ModCmg, 9), (Family::HodCmg, 9)] {
        let p = symbolic_projection(family).unwrap();
        assert!(p.matches_closed_form(), "{family}:\n{}", p.reduced);
        assert_eq!(nontrivial(&p.reduced).len(), rows, "{family}");
        assert!(p.raw_rows() > rows);
    }
}

#[test]
fn swapped_users_mirror_the_region() {
    let c = bound_constants(Family::Hod, &build_joint(&hod_spec(3, Shape::SMALL)).unwrap()).unwrap();
    let (a, b) = (build(RegionId::R_HOD, &c).unwrap(), build(RegionId::R_HOD, &c.swap_users()).unwrap());
    let (ga, gb) = (geometry2d(&a).unwrap(), geometry2d(&b).unwrap());
    let mirrored: Vec<(f64, f64)> = gb.vertices.iter().map(|&(x, y)| (y, x)).collect();
    assert!((ga.area - gb.area).abs() < 1e-12);
    assert!(ga.vertices.iter().all(|p| mirrored.iter().any(|q| (p.0 - q.0).abs() < 1e-9 && (p.1 - q.1).abs() < 1e-9)));
}

#[test]
fn dependent_rows_become_active() {
    let mut active = [false; 2];
    for i in 0..200 {
        let c = bound_constants(Family::Hod, &build_joint(&hod_spec(sample_seed(42, i), Shape::SMALL)).unwrap()).unwrap();
        for (k, set) in [c.clone(), c.swap_users()].iter().enumerate() {
            let label = if k == 0 { "R_HOD.11" } else { "R_HOD.13" };
            let sys = build(RegionId::R_HOD, set).unwrap();
            active[k] |= row_slack(&sys, label).unwrap().unwrap_or(0.0) > 1e-7;
        }
    }
    assert_eq!(active, [true, true]);
}

#[test]
fn modified_regions_contain_the_originals() {
    for i in 0..20 {
        let c = bound_constants(Family::Hod, &build_joint(&hod_spec(i, Shape::SMALL)).unwrap()).unwrap();
        let (r, m) = (build(RegionId::R_HOD, &c).unwrap(), build(RegionId::R_HOD_MOD, &c).unwrap());
        assert!(includes(&r, &m).unwrap().holds);
        assert!(crosscheck_constants(&c).unwrap().passed());
    }
}

#[test]
fn zero_constants_collapse_to_origin() {
    for id in [RegionId::R_HK, RegionId::R_HK_MOD, RegionId::COMPACT] {
        let z = ConstantSet::zero(id.families()[0]).unwrap();
        let g = geometry2d(&build(id, &z).unwrap()).unwrap();
        assert_eq!(g.vertices, [(0.0, 0.0)], "{id}");
    }
    let z = ConstantSet::zero(Family::Hod).unwrap();
    assert!(equal(&build(RegionId::R_HOD, &z).unwrap(), &build(RegionId::R_HOD_MOD, &z).unwrap()).unwrap());
}

#[test]
fn short_sweeps_are_clean() {
    assert!(crosscheck_sweep(1, 10).unwrap().passed());
    assert!(relation_sweep(1, 10).unwrap().passed());
    let rep = lift_sweep(1, 10, 3).unwrap();
    assert!(rep.get("lift.iii.R_HK<=R_HOD").unwrap().failures == 0);
    assert!(rep.get("lift.ii.split-inclusion").unwrap().failures == 0);
}
