use std::collections::HashMap;

use icregion::bounds::{bound_constants, subchannel_rates, Scheme, SubchannelVars};
use icregion::common_info;
use icregion::probspace::{build_joint, CondTable, FactorSpec, Family, JointDist, VariableDecl};
use icregion::rational::{int, ratio, Rational};
use icregion::sample::{hk_spec, hod_spec, lift, Shape};

/// Entropy of the marginal on `names`, summed cell by cell.
fn oracle_entropy(d: &JointDist, names: &[&str]) -> f64 {
    let radix = d.radix();
    let idx: Vec<usize> = names.iter().map(|n| d.index_of(n).unwrap()).collect();
    let mut marg: HashMap<Vec<usize>, f64> = HashMap::new();
    for cell in 0..d.cells() {
        let mut digits = vec![0; radix.len()];
        let mut rest = cell;
        for k in (0..radix.len()).rev() {
            digits[k] = rest % radix[k];
            rest /= radix[k];
        }
        let key = idx.iter().map(|&i| digits[i]).collect();
        *marg.entry(key).or_default() += d.prob_at(cell);
    }
    marg.values().filter(|&&p| p > 0.0).map(|p| -p * p.log2()).sum()
}

fn oracle_info(d: &JointDist, a: &[&str], b: &[&str], c: &[&str]) -> f64 {
    oracle_entropy(d, &[a, c].concat()) + oracle_entropy(d, &[b, c].concat())
        - oracle_entropy(d, &[a, b, c].concat())
        - oracle_entropy(d, c)
}

fn uniform_bits(n: usize) -> Vec<Rational> {
    vec![ratio(1, n as i64); n]
}

/// Binary uniform `U_i`, `W_i`, `X_i = 2 U_i + W_i`, and `Y_i = X_i`.
fn noiseless() -> FactorSpec {
    let v = VariableDecl::new;
    let rows: Vec<Vec<Rational>> =
        (0..16).map(|r| (0..16).map(|c| int((r == c) as i64)).collect()).collect();
    FactorSpec {
        family: Family::Hk,
        variables: vec![
            v("Q", 1),
            v("U1", 2),
            v("W1", 2),
            v("U2", 2),
            v("W2", 2),
            v("X1", 4),
            v("X2", 4),
            v("Y1", 4),
            v("Y2", 4),
        ],
        factors: vec![
            CondTable::new(&["Q"], &[], vec![vec![int(1)]]),
            CondTable::new(&["U1"], &["Q"], vec![uniform_bits(2)]),
            CondTable::new(&["W1"], &["Q"], vec![uniform_bits(2)]),
            CondTable::new(&["U2"], &["Q"], vec![uniform_bits(2)]),
            CondTable::new(&["W2"], &["Q"], vec![uniform_bits(2)]),
        ],
        encoders: vec![
            CondTable::deterministic("X1", 4, &["Q", "U1", "W1"], &[0, 1, 2, 3]),
            CondTable::deterministic("X2", 4, &["Q", "U2", "W2"], &[0, 1, 2, 3]),
        ],
        channel: CondTable::new(&["Y1", "Y2"], &["X1", "X2"], rows),
    }
}

#[test]
fn measures_match_oracle_on_samples() {
    for seed in 0..15 {
        let d = build_joint(&hod_spec(seed, Shape::SMALL)).unwrap();
        for (a, b, c) in [
            (&["U1"][..], &["W1"][..], &["Q"][..]),
            (&["Y1"], &["U1", "W1"], &["W2", "Q"]),
            (&["Y2"], &["X1"], &[]),
            (&["Y1", "Y2"], &["U2"], &["X1"]),
        ] {
            let got = d.info(a, b, c).unwrap();
            assert!((got - oracle_info(&d, a, b, c)).abs() < 1e-9, "seed {seed}: I({a:?};{b:?}|{c:?})");
        }
        let h = d.entropy(&["Y1", "Q"]).unwrap();
        assert!((h - oracle_entropy(&d, &["Y1", "Q"])).abs() < 1e-9);
    }
}

#[test]
fn noiseless_constants() {
    let c = bound_constants(Family::Hk, &build_joint(&noiseless()).unwrap()).unwrap();
    let want = [("a1", 1.0), ("b1", 1.0), ("c1", 0.0), ("d1", 2.0), ("e1", 1.0), ("f1", 1.0), ("g1", 2.0)];
    for (name, v) in want {
        assert!((c.get(name).unwrap() - v).abs() < 1e-12, "{name}");
        let mirror = name.replace('1', "2");
        assert!((c.get(&mirror).unwrap() - v).abs() < 1e-12, "{mirror}");
    }
}

#[test]
fn independent_output_gives_zero_constants() {
    let mut spec = noiseless();
    spec.channel = CondTable::new(&["Y1", "Y2"], &["X1", "X2"], vec![uniform_bits(16); 16]);
    let c = bound_constants(Family::Hk, &build_joint(&spec).unwrap()).unwrap();
    assert!(c.values.values().all(|v| v.abs() < 1e-12), "{:?}", c.values);
}

#[test]
fn lifted_constants_gain_common_entropy() {
    let base = build_joint(&noiseless()).unwrap();
    let pair = lift(&base, &uniform_bits(2), &uniform_bits(4)).unwrap();
    let small = bound_constants(Family::Hk, &pair.base).unwrap();
    let big = bound_constants(Family::Hod, &pair.lifted).unwrap();
    for (i, j) in [(1, 1.0), (2, 2.0)] {
        for l in ['a', 'd', 'e', 'g'] {
            let (lo, up) = (format!("{l}{i}"), format!("{}{i}", l.to_ascii_uppercase()));
            assert!((small.get(&lo).unwrap() - big.get(&up).unwrap()).abs() < 1e-9, "{up}");
        }
        for l in ['b', 'c', 'f'] {
            let (lo, up) = (format!("{l}{i}"), format!("{}{i}", l.to_ascii_uppercase()));
            assert!((small.get(&lo).unwrap() + j - big.get(&up).unwrap()).abs() < 1e-9, "{up}");
        }
        assert!((big.correlation[i - 1] - j).abs() < 1e-12);
    }
}

#[test]
fn subchannel_noiseless() {
    let d = build_joint(&noiseless()).unwrap();
    let v = SubchannelVars { u: "U1", w: "W1", x: Some("X1"), y: "Y1", q: Some("Q") };
    let sep = subchannel_rates(Scheme::Separate, &d, v).unwrap();
    let values: Vec<(&str, f64)> = sep.iter().map(|b| (b.lhs, b.value)).collect();
    assert_eq!(values.len(), 3);
    for ((lhs, v), want) in values.iter().zip([("S", 1.0), ("T", 1.0), ("S+T", 2.0)]) {
        assert_eq!(*lhs, want.0);
        assert!((v - want.1).abs() < 1e-12);
    }
    let sup = subchannel_rates(Scheme::Superposition, &d, v).unwrap();
    assert!((sup[1].value - 2.0).abs() < 1e-12);
}

#[test]
fn subchannel_separate_rejects_dependence() {
    let base = build_joint(&noiseless()).unwrap();
    let pair = lift(&base, &uniform_bits(2), &[int(1)]).unwrap();
    let v = SubchannelVars { u: "U1", w: "W1", x: Some("X1"), y: "Y1", q: Some("Q") };
    assert!(subchannel_rates(Scheme::Separate, &pair.lifted, v).is_err());
    let bin = subchannel_rates(Scheme::Binning, &pair.lifted, v).unwrap();
    assert!((bin[1].value - (1.0 + 1.0)).abs() < 1e-9);
}

#[test]
fn common_information_values() {
    let e = common_info::compute().unwrap();
    assert!((e.i_sum - 2.655_639_062_229_566).abs() < 1e-9);
    assert!((e.i_lifted - e.i_sum - 1.0).abs() < 1e-12);
    assert!(e.lemma_strict());
}

#[test]
fn lifting_never_loses_information() {
    for seed in 0..10 {
        let base = build_joint(&hk_spec(seed, Shape::LIFT_BASE)).unwrap();
        let pair = lift(&base, &uniform_bits(2), &[ratio(1, 4), ratio(3, 4)]).unwrap();
        for (a, b, c) in [
            (&["U1", "W1"][..], &["Y1"][..], &[][..]),
            (&["U1", "W1"], &["Y1"], &["W2"]),
            (&["U1"], &["Y1"], &["W1", "W2"]),
            (&["U1", "W2"], &["Y1"], &["W1"]),
            (&["W2"], &["Y1"], &["U1", "W1"]),
        ] {
            let up = pair.lifted.info(a, b, c).unwrap();
            let down = pair.base.info(a, b, c).unwrap();
            assert!(up >= down - 1e-9, "seed {seed}: {a:?} {b:?} {c:?}");
        }
    }
}
