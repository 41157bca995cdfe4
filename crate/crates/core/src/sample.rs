//! Seeded random distributions for sweeps.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::probspace::{
    build_joint, wyner_lift, CommonPart, CondTable, Family, FactorSpec, JointDist, VariableDecl,
};
use crate::rational::{ratio, Rational};
use crate::Result;

/// Alphabet limits for a sampled distribution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub max_q: usize,
    pub max_aux: usize,
    pub max_x: usize,
    pub max_y: usize,
    /// Common denominator of sampled probabilities.
    pub denom: u64,
}

impl Shape {
    pub const SMALL: Shape = Shape { max_q: 2, max_aux: 3, max_x: 3, max_y: 3, denom: 12 };
    /// Tighter limits for distributions that are lifted afterwards.
    pub const LIFT_BASE: Shape = Shape { max_q: 2, max_aux: 2, max_x: 3, max_y: 3, denom: 8 };
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A pmf over `n` outcomes with masses in multiples of `1/denom`.
pub fn pmf(rng: &mut impl Rng, n: usize, denom: u64) -> Vec<Rational> {
    let mut counts = vec![0u64; n];
    for _ in 0..denom {
        counts[rng.gen_range(0..n)] += 1;
    }
    counts.into_iter().map(|c| ratio(c as i64, denom as i64)).collect()
}

fn rows(rng: &mut impl Rng, parents: usize, n: usize, denom: u64) -> Vec<Vec<Rational>> {
    (0..parents).map(|_| pmf(rng, n, denom)).collect()
}

fn card(rng: &mut impl Rng, max: usize) -> usize {
    rng.gen_range(1..=max.max(1))
}

fn encoder(rng: &mut impl Rng, child: &str, x: usize, parents: &[&str], n_parents: usize) -> CondTable {
    let map: Vec<usize> = (0..n_parents).map(|_| rng.gen_range(0..x)).collect();
    CondTable::deterministic(child, x, parents, &map)
}

struct Cards {
    q: usize,
    u: [usize; 2],
    w: [usize; 2],
    x: [usize; 2],
    y: [usize; 2],
}

fn cards(rng: &mut impl Rng, s: Shape, with_u: bool) -> Cards {
    let mut pick = |m| card(rng, m);
    Cards {
        q: pick(s.max_q),
        u: if with_u { [pick(s.max_aux), pick(s.max_aux)] } else { [1, 1] },
        w: [pick(s.max_aux), pick(s.max_aux)],
        x: [pick(s.max_x), pick(s.max_x)],
        y: [pick(s.max_y), pick(s.max_y)],
    }
}

/// Half of the sampled channels are deterministic.
fn channel(rng: &mut impl Rng, c: &Cards, denom: u64) -> CondTable {
    let (inputs, outputs) = (c.x[0] * c.x[1], c.y[0] * c.y[1]);
    let table = if rng.gen_bool(0.5) {
        (0..inputs)
            .map(|_| {
                let k = rng.gen_range(0..outputs);
                (0..outputs).map(|j| ratio((j == k) as i64, 1)).collect()
            })
            .collect()
    } else {
        rows(rng, inputs, outputs, denom)
    };
    CondTable::new(&["Y1", "Y2"], &["X1", "X2"], table)
}

fn decls(c: &Cards, with_u: bool) -> Vec<VariableDecl> {
    let v = VariableDecl::new;
    let mut out = vec![v("Q", c.q)];
    if with_u {
        out.extend([v("U1", c.u[0]), v("W1", c.w[0]), v("U2", c.u[1]), v("W2", c.w[1])]);
    } else {
        out.extend([v("W1", c.w[0]), v("W2", c.w[1])]);
    }
    out.extend([v("X1", c.x[0]), v("X2", c.x[1]), v("Y1", c.y[0]), v("Y2", c.y[1])]);
    out
}

fn ic_encoders(rng: &mut impl Rng, c: &Cards) -> Vec<CondTable> {
    vec![
        encoder(rng, "X1", c.x[0], &["Q", "U1", "W1"], c.q * c.u[0] * c.w[0]),
        encoder(rng, "X2", c.x[1], &["Q", "U2", "W2"], c.q * c.u[1] * c.w[1]),
    ]
}

/// Independent `U_i`, `W_i` given `Q` and deterministic encoders.
pub fn hk_spec(seed: u64, s: Shape) -> FactorSpec {
    let mut r = rng(seed);
    let c = cards(&mut r, s, true);
    let d = s.denom;
    let factors = vec![
        CondTable::new(&["Q"], &[], rows(&mut r, 1, c.q, d)),
        CondTable::new(&["U1"], &["Q"], rows(&mut r, c.q, c.u[0], d)),
        CondTable::new(&["W1"], &["Q"], rows(&mut r, c.q, c.w[0], d)),
        CondTable::new(&["U2"], &["Q"], rows(&mut r, c.q, c.u[1], d)),
        CondTable::new(&["W2"], &["Q"], rows(&mut r, c.q, c.w[1], d)),
    ];
    let encoders = ic_encoders(&mut r, &c);
    let channel = channel(&mut r, &c, d);
    FactorSpec { family: Family::Hk, variables: decls(&c, true), factors, encoders, channel }
}

/// Arbitrarily correlated `(U_i, W_i)` given `Q` and deterministic encoders.
pub fn hod_spec(seed: u64, s: Shape) -> FactorSpec {
    let mut r = rng(seed);
    let c = cards(&mut r, s, true);
    let d = s.denom;
    let factors = vec![
        CondTable::new(&["Q"], &[], rows(&mut r, 1, c.q, d)),
        CondTable::new(&["U1", "W1"], &["Q"], rows(&mut r, c.q, c.u[0] * c.w[0], d)),
        CondTable::new(&["U2", "W2"], &["Q"], rows(&mut r, c.q, c.u[1] * c.w[1], d)),
    ];
    let encoders = ic_encoders(&mut r, &c);
    let channel = channel(&mut r, &c, d);
    FactorSpec { family: Family::Hod, variables: decls(&c, true), factors, encoders, channel }
}

/// Superposition-only distribution with random (not necessarily
/// deterministic) `p(x_i | q, w_i)`.
pub fn cmg_spec(seed: u64, s: Shape, family: Family) -> FactorSpec {
    let mut r = rng(seed);
    let c = cards(&mut r, s, false);
    let d = s.denom;
    let factors = vec![
        CondTable::new(&["Q"], &[], rows(&mut r, 1, c.q, d)),
        CondTable::new(&["W1"], &["Q"], rows(&mut r, c.q, c.w[0], d)),
        CondTable::new(&["X1"], &["Q", "W1"], rows(&mut r, c.q * c.w[0], c.x[0], d)),
        CondTable::new(&["W2"], &["Q"], rows(&mut r, c.q, c.w[1], d)),
        CondTable::new(&["X2"], &["Q", "W2"], rows(&mut r, c.q * c.w[1], c.x[1], d)),
    ];
    let channel = channel(&mut r, &c, d);
    FactorSpec { family, variables: decls(&c, false), factors, encoders: Vec::new(), channel }
}

/// A base independent distribution and its Wyner lift.
#[derive(Clone, Debug)]
pub struct LiftedPair {
    pub base: JointDist,
    pub lifted: JointDist,
    pub k_cards: [usize; 2],
}

/// Lifts `base` with independent common parts `K1`, `K2` of the given pmfs.
pub fn lift(base: &JointDist, k1: &[Rational], k2: &[Rational]) -> Result<LiftedPair> {
    let with_k = base.with_independent("K1", k1)?.with_independent("K2", k2)?;
    let lifted = wyner_lift(&with_k, &[CommonPart::sender(1), CommonPart::sender(2)])?;
    Ok(LiftedPair { base: base.clone(), lifted, k_cards: [k1.len(), k2.len()] })
}

/// Seeded lifted pair; `max_k = 1` gives the trivial common part.
pub fn lifted_pair(seed: u64, max_k: usize) -> Result<LiftedPair> {
    let base = build_joint(&hk_spec(seed, Shape::LIFT_BASE))?;
    let mut r = rng(seed ^ 0x6b5f_a1c3_0000_0000);
    let (n1, n2) = (card(&mut r, max_k), card(&mut r, max_k));
    let (k1, k2) = (pmf(&mut r, n1, 4), pmf(&mut r, n2, 4));
    lift(&base, &k1, &k2)
}
