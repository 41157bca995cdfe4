use icregion::binning_sim::{pool_rates, scaled_rates, simulate, simulate_direct, typical_set_test, TrialConfig};
use icregion::probspace::{build_joint, CondTable, FactorSpec, Family, VariableDecl};
use icregion::rational::{int, ratio, Rational};

/// Sender 1 through a binary symmetric channel with crossover 1/8; sender 2
/// silent. `dependent` correlates `U1` and `W1`.
fn bsc(dependent: bool) -> FactorSpec {
    let v = VariableDecl::new;
    let uw = if dependent {
        vec![ratio(3, 8), ratio(1, 8), ratio(1, 8), ratio(3, 8)]
    } else {
        vec![ratio(1, 4); 4]
    };
    let flip = |x: usize| -> Vec<Rational> { (0..4).map(|y| if x == y { ratio(7, 8) } else if x ^ 1 == y { ratio(1, 8) } else { int(0) }).collect() };
    FactorSpec {
        family: if dependent { Family::Hod } else { Family::Hk },
        variables: vec![v("Q", 1), v("U1", 2), v("W1", 2), v("U2", 1), v("W2", 1), v("X1", 4), v("X2", 1), v("Y1", 4), v("Y2", 1)],
        factors: if dependent {
            vec![
                CondTable::new(&["Q"], &[], vec![vec![int(1)]]),
                CondTable::new(&["U1", "W1"], &["Q"], vec![uw]),
                CondTable::new(&["U2", "W2"], &["Q"], vec![vec![int(1)]]),
            ]
        } else {
            vec![
                CondTable::new(&["Q"], &[], vec![vec![int(1)]]),
                CondTable::new(&["U1"], &["Q"], vec![vec![ratio(1, 2); 2]]),
                CondTable::new(&["W1"], &["Q"], vec![vec![ratio(1, 2); 2]]),
                CondTable::new(&["U2"], &["Q"], vec![vec![int(1)]]),
                CondTable::new(&["W2"], &["Q"], vec![vec![int(1)]]),
            ]
        },
        encoders: vec![
            CondTable::deterministic("X1", 4, &["Q", "U1", "W1"], &[0, 1, 2, 3]),
            CondTable::deterministic("X2", 1, &["Q", "U2", "W2"], &[0]),
        ],
        channel: CondTable::new(&["Y1", "Y2"], &["X1", "X2"], (0..4).map(flip).collect()),
    }
}

fn config(spec: &FactorSpec, scale: f64, slack: f64, seed: u64) -> TrialConfig {
    let rates = scaled_rates(spec, &[0.0, 1.0, 0.0, 0.0], scale).unwrap();
    let pool = pool_rates(spec, &rates, slack).unwrap();
    TrialConfig { n: 8, rates, pool, eps: 0.15, trials: 200, seed, modified_error: false }
}

#[test]
fn same_seed_same_outcomes() {
    let spec = bsc(true);
    let cfg = config(&spec, 0.8, 0.25, 3);
    assert_eq!(simulate(&spec, &cfg).unwrap(), simulate(&spec, &cfg).unwrap());
    let other = simulate(&spec, &TrialConfig { seed: 4, ..cfg.clone() }).unwrap();
    assert_ne!(other.outcomes, simulate(&spec, &cfg).unwrap().outcomes);
}

#[test]
fn larger_pool_never_adds_encoder_failures() {
    let spec = bsc(true);
    let small = simulate(&spec, &config(&spec, 0.8, 0.1, 9)).unwrap();
    let large = simulate(&spec, &config(&spec, 0.8, 0.4, 9)).unwrap();
    assert!(small.encoder_failure[0].count > 0);
    assert!(large.encoder_failure[0].count <= small.encoder_failure[0].count);
}

#[test]
fn trivial_binning_matches_direct_coding() {
    let spec = bsc(false);
    let mut cfg = config(&spec, 0.6, 0.0, 11);
    cfg.pool = [cfg.rates[1], cfg.rates[3]];
    let binned = simulate(&spec, &cfg).unwrap();
    let direct = simulate_direct(&spec, &cfg).unwrap();
    assert_eq!(binned.error, direct.error);
}

#[test]
fn pool_below_binning_condition_is_rejected() {
    let spec = bsc(true);
    let mut cfg = config(&spec, 0.8, 0.0, 1);
    cfg.pool[0] = cfg.rates[1];
    assert!(simulate(&spec, &cfg).is_err());
}

#[test]
fn typical_sequences() {
    let d = build_joint(&bsc(false)).unwrap().marginal(&["U1", "W1"]).unwrap();
    let balanced = vec![vec![0, 0, 1, 1, 0, 1, 0, 1], vec![0, 1, 0, 1, 1, 0, 0, 1]];
    assert!(typical_set_test(&d, &balanced, 0.1).unwrap());
    let skewed = vec![vec![0; 8], vec![0; 8]];
    assert!(!typical_set_test(&d, &skewed, 0.1).unwrap());
}
