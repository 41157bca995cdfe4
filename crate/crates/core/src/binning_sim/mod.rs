//! Monte-Carlo random-binning codebooks with strong-typicality decoding.
//!
//! Each trial draws a fresh codebook, sends one uniformly chosen message per
//! sender through the channel and decodes at both receivers. All randomness
//! of trial `t` comes from ChaCha8 streams keyed by `(seed, t)`, one stream
//! per purpose, so enlarging one codebook never perturbs the others and a
//! larger pool extends a smaller one.

mod typical;

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::bound_constants;
use crate::polytope::{ray_limit, IneqSystem};
use crate::probspace::{build_joint, Encoder, FactorSpec, Family, JointDist};
use crate::regions::{build, RegionId};
use crate::rational::to_f64;
use crate::{Error, Result, TOL};

pub use typical::{typical_set_test, TypicalTable};

/// Largest codebook or pool the simulator will allocate.
pub const MAX_BOOK: usize = 1 << 20;

/// Default typicality slack at short blocklengths.
pub const DEFAULT_EPS: f64 = 0.1;

#[derive(Clone, Debug, PartialEq)]
pub struct TrialConfig {
    pub n: usize,
    /// `(T1, S1, T2, S2)` in bits per symbol.
    pub rates: [f64; 4],
    /// Pool rates `(s1, s2)`.
    pub pool: [f64; 2],
    pub eps: f64,
    pub trials: usize,
    pub seed: u64,
    /// Ignore errors on the other sender's common message.
    pub modified_error: bool,
}

impl TrialConfig {
    pub fn common(&self, i: usize) -> f64 {
        self.rates[2 * i]
    }

    pub fn private(&self, i: usize) -> f64 {
        self.rates[2 * i + 1]
    }
}

/// An empirical frequency with its Wilson 95% interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub count: usize,
    pub trials: usize,
    pub rate: f64,
    pub low: f64,
    pub high: f64,
}

impl Estimate {
    pub fn new(count: usize, trials: usize) -> Estimate {
        let (low, high) = wilson(count, trials, 1.96);
        let rate = if trials == 0 { 0.0 } else { count as f64 / trials as f64 };
        Estimate { count, trials, rate, low, high }
    }
}

/// Wilson score interval for `k` successes in `n` trials.
pub fn wilson(k: usize, n: usize, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let (n, p) = (n as f64, k as f64 / n as f64);
    let denom = 1.0 + z * z / n;
    let centre = (p + z * z / (2.0 * n)) / denom;
    let half = z * libm::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimResult {
    /// Decoding error per receiver.
    pub error: [Estimate; 2],
    /// Trials where a sender's bin held no typical sequence.
    pub encoder_failure: [Estimate; 2],
    /// Per-trial decoding error flags.
    pub outcomes: Vec<[bool; 2]>,
}

/// One sender's codebook. Sequences are stored back to back, `n` symbols
/// each.
#[derive(Clone, Debug, PartialEq)]
pub struct Codebook {
    pub n: usize,
    pub w: Vec<u8>,
    pub pool: Vec<u8>,
    /// Pool indices in each bin.
    pub bins: Vec<Vec<u32>>,
    /// Bin of each pool index.
    pub bin_of: Vec<u32>,
}

impl Codebook {
    pub fn w_len(&self) -> usize {
        self.w.len() / self.n
    }

    pub fn pool_len(&self) -> usize {
        self.pool.len() / self.n
    }

    pub fn w_seq(&self, j: usize) -> &[u8] {
        &self.w[j * self.n..(j + 1) * self.n]
    }

    pub fn pool_seq(&self, l: usize) -> &[u8] {
        &self.pool[l * self.n..(l + 1) * self.n]
    }
}

/// `round(2^(n r))`, at least one.
pub fn book_size(n: usize, r: f64) -> Result<usize> {
    let size = libm::round(libm::exp2(n as f64 * r)).max(1.0);
    if !(size <= MAX_BOOK as f64) {
        return Err(Error::InfeasibleConfig(alloc::format!("2^({n}*{r}) sequences exceed {MAX_BOOK}")));
    }
    Ok(size as usize)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Scheme {
    Binning,
    Direct,
}

const Q_STREAM: u64 = 0;
const MSG_STREAM: u64 = 8;
const CHANNEL_STREAM: u64 = 7;

fn stream(seed: u64, trial: usize, k: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(trial as u64).to_le_bytes());
    let mut r = ChaCha8Rng::from_seed(key);
    r.set_stream(k);
    r
}

/// Cumulative conditional pmfs `p(child | parent)`.
struct Sampler {
    cum: Vec<Vec<f64>>,
}

impl Sampler {
    fn conditional(joint: &JointDist, child: &str, parent: Option<&str>) -> Result<Sampler> {
        let names: Vec<&str> = parent.into_iter().chain([child]).collect();
        let m = joint.marginal(&names)?;
        let c = m.cardinality(child)?;
        let rows = m.cells() / c;
        let cum = (0..rows)
            .map(|r| {
                let probs: Vec<f64> = (0..c).map(|x| m.prob_at(r * c + x)).collect();
                let total: f64 = probs.iter().sum();
                let mut acc = 0.0;
                probs
                    .iter()
                    .map(|p| {
                        acc += if total > 0.0 { p / total } else { 1.0 / c as f64 };
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(Sampler { cum })
    }

    fn channel(spec: &FactorSpec) -> Sampler {
        let cum = spec
            .channel
            .rows
            .iter()
            .map(|row| {
                let mut acc = 0.0;
                row.iter()
                    .map(|p| {
                        acc += to_f64(p);
                        acc
                    })
                    .collect()
            })
            .collect();
        Sampler { cum }
    }

    fn draw(&self, parent: usize, rng: &mut ChaCha8Rng) -> usize {
        let row = &self.cum[parent];
        let x: f64 = rng.gen();
        row.iter().position(|&c| x < c).unwrap_or(row.len() - 1)
    }

    fn extend(&self, parents: &[u8], rng: &mut ChaCha8Rng, out: &mut Vec<u8>) {
        out.extend(parents.iter().map(|&p| self.draw(p as usize, rng) as u8));
    }
}

struct Sender {
    w: Sampler,
    u: Sampler,
    encoder: Encoder,
    u_card: usize,
    w_card: usize,
    enc_typ: TypicalTable,
    dec_typ: TypicalTable,
    y_card: usize,
}

struct Model {
    q: Sampler,
    senders: [Sender; 2],
    channel: Sampler,
    x_cards: [usize; 2],
    corr: [f64; 2],
}

fn model(spec: &FactorSpec) -> Result<Model> {
    spec.validate()?;
    let joint = build_joint(spec)?;
    let encoders = spec.encoder_maps()?;
    if encoders.len() != 2 {
        return Err(Error::FamilyMismatch { expected: "a family with encoder tables".into(), found: spec.family.to_string() });
    }
    let q_given = if joint.has("Q") { Some("Q") } else { None };
    let mut corr = [0.0; 2];
    let mut senders = Vec::new();
    for i in 0..2 {
        let (u, w, wo, y) = NAMES[i];
        corr[i] = joint.info(&[u], &[w], &q_given.into_iter().collect::<Vec<_>>())?;
        senders.push(Sender {
            w: Sampler::conditional(&joint, w, q_given)?,
            u: Sampler::conditional(&joint, u, q_given)?,
            encoder: encoders[i].clone(),
            u_card: joint.cardinality(u)?,
            w_card: joint.cardinality(w)?,
            enc_typ: TypicalTable::new(&joint, &["Q", u, w])?,
            dec_typ: TypicalTable::new(&joint, &["Q", u, w, wo, y])?,
            y_card: joint.cardinality(y)?,
        });
    }
    let senders: [Sender; 2] = senders.try_into().map_err(|_| Error::Structure("two senders".into()))?;
    Ok(Model {
        q: Sampler::conditional(&joint, "Q", None)?,
        senders,
        channel: Sampler::channel(spec),
        x_cards: [joint.cardinality("X1")?, joint.cardinality("X2")?],
        corr,
    })
}

const NAMES: [(&str, &str, &str, &str); 2] = [("U1", "W1", "W2", "Y1"), ("U2", "W2", "W1", "Y2")];

fn check_config(cfg: &TrialConfig, m: &Model, scheme: Scheme) -> Result<()> {
    let bad = |msg: String| Err(Error::InfeasibleConfig(msg));
    if cfg.n == 0 || cfg.trials == 0 || !(cfg.eps > 0.0) {
        return bad("need n >= 1, trials >= 1 and eps > 0".into());
    }
    if cfg.rates.iter().chain(&cfg.pool).any(|r| !(*r >= 0.0)) {
        return bad("rates must be nonnegative".into());
    }
    if scheme == Scheme::Binning {
        for i in 0..2 {
            let slack = cfg.pool[i] - cfg.private(i);
            if slack < -TOL {
                return bad(alloc::format!("pool rate s{} below private rate S{}", i + 1, i + 1));
            }
            if slack < m.corr[i] - TOL {
                return bad(alloc::format!(
                    "binning condition fails for sender {}: s - S = {slack} < I(U;W|Q) = {}",
                    i + 1,
                    m.corr[i]
                ));
            }
        }
    }
    Ok(())
}

fn codebook(
    m: &Model,
    i: usize,
    cfg: &TrialConfig,
    trial: usize,
    q: &[u8],
    scheme: Scheme,
) -> Result<Codebook> {
    let s = &m.senders[i];
    let base = 1 + 3 * i as u64;
    let mut rw = stream(cfg.seed, trial, base);
    let mut rp = stream(cfg.seed, trial, base + 1);
    let mut rb = stream(cfg.seed, trial, base + 2);
    let n_w = book_size(cfg.n, cfg.common(i))?;
    let n_bins = book_size(cfg.n, cfg.private(i))?;
    let n_pool = match scheme {
        Scheme::Direct => n_bins,
        Scheme::Binning => book_size(cfg.n, cfg.pool[i])?.max(n_bins),
    };
    let (mut w, mut pool) = (Vec::with_capacity(n_w * cfg.n), Vec::with_capacity(n_pool * cfg.n));
    for _ in 0..n_w {
        s.w.extend(q, &mut rw, &mut w);
    }
    for _ in 0..n_pool {
        s.u.extend(q, &mut rp, &mut pool);
    }
    let bin_of: Vec<u32> = if n_pool == n_bins {
        (0..n_pool as u32).collect()
    } else {
        (0..n_pool).map(|_| rb.gen_range(0..n_bins as u32)).collect()
    };
    let mut bins = vec![Vec::new(); n_bins];
    for (l, &b) in bin_of.iter().enumerate() {
        bins[b as usize].push(l as u32);
    }
    Ok(Codebook { n: cfg.n, w, pool, bins, bin_of })
}

/// Picks the transmitted pool index for message `(j, b)`; `false` flags an
/// encoder failure.
fn encode(s: &Sender, book: &Codebook, q: &[u8], j: usize, b: usize, eps: f64, scheme: Scheme) -> (usize, bool) {
    let bin = &book.bins[b];
    if scheme == Scheme::Direct {
        return (bin[0] as usize, true);
    }
    let w = book.w_seq(j);
    match bin.iter().find(|&&l| s.enc_typ.typical(&[q, book.pool_seq(l as usize), w], eps)) {
        Some(&l) => (l as usize, true),
        None => (bin.first().map_or(0, |&l| l as usize), false),
    }
}

fn transmit(s: &Sender, q: &[u8], u: &[u8], w: &[u8]) -> Vec<usize> {
    (0..q.len())
        .map(|t| s.encoder.map[(q[t] as usize * s.u_card + u[t] as usize) * s.w_card + w[t] as usize])
        .collect()
}

/// Decodes at receiver `i`; returns whether it made an error.
fn decode(
    m: &Model,
    i: usize,
    books: &[Codebook; 2],
    q: &[u8],
    y: &[u8],
    truth: (usize, usize, usize),
    cfg: &TrialConfig,
) -> bool {
    let (own, other) = (&books[i], &books[1 - i]);
    let s = &m.senders[i];
    let ignore_other = cfg.modified_error || other.w_len() == 1;
    if own.w_len() * own.bins.len() == 1 && ignore_other {
        return false;
    }
    let mut found = BTreeSet::new();
    for j in 0..own.w_len() {
        let w = own.w_seq(j);
        for l in 0..own.pool_len() {
            let u = own.pool_seq(l);
            for k in 0..other.w_len() {
                if s.dec_typ.typical(&[q, u, w, other.w_seq(k), y], cfg.eps) {
                    found.insert((j, own.bin_of[l] as usize, if cfg.modified_error { 0 } else { k }));
                    if found.len() > 1 {
                        return true;
                    }
                }
            }
        }
    }
    let want = (truth.0, truth.1, if cfg.modified_error { 0 } else { truth.2 });
    found.len() != 1 || !found.contains(&want)
}

fn run(spec: &FactorSpec, cfg: &TrialConfig, scheme: Scheme) -> Result<SimResult> {
    let m = model(spec)?;
    check_config(cfg, &m, scheme)?;
    let mut errors = [0usize; 2];
    let mut failures = [0usize; 2];
    let mut outcomes = Vec::with_capacity(cfg.trials);
    for trial in 0..cfg.trials {
        let mut q = Vec::with_capacity(cfg.n);
        m.q.extend(&vec![0; cfg.n], &mut stream(cfg.seed, trial, Q_STREAM), &mut q);
        let books = [codebook(&m, 0, cfg, trial, &q, scheme)?, codebook(&m, 1, cfg, trial, &q, scheme)?];
        let mut rm = stream(cfg.seed, trial, MSG_STREAM);
        let mut sent = [(0, 0); 2];
        let mut xs: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
        for i in 0..2 {
            let (j, b) = (rm.gen_range(0..books[i].w_len()), rm.gen_range(0..books[i].bins.len()));
            let (l, ok) = encode(&m.senders[i], &books[i], &q, j, b, cfg.eps, scheme);
            failures[i] += usize::from(!ok);
            sent[i] = (j, b);
            xs[i] = transmit(&m.senders[i], &q, books[i].pool_seq(l), books[i].w_seq(j));
        }
        let mut rc = stream(cfg.seed, trial, CHANNEL_STREAM);
        let y2_card = m.senders[1].y_card;
        let (mut y1, mut y2) = (Vec::with_capacity(cfg.n), Vec::with_capacity(cfg.n));
        for t in 0..cfg.n {
            let y = m.channel.draw(xs[0][t] * m.x_cards[1] + xs[1][t], &mut rc);
            y1.push((y / y2_card) as u8);
            y2.push((y % y2_card) as u8);
        }
        let e1 = decode(&m, 0, &books, &q, &y1, (sent[0].0, sent[0].1, sent[1].0), cfg);
        let e2 = decode(&m, 1, &books, &q, &y2, (sent[1].0, sent[1].1, sent[0].0), cfg);
        errors[0] += usize::from(e1);
        errors[1] += usize::from(e2);
        outcomes.push([e1, e2]);
    }
    let est = |k: [usize; 2]| [Estimate::new(k[0], cfg.trials), Estimate::new(k[1], cfg.trials)];
    Ok(SimResult { error: est(errors), encoder_failure: est(failures), outcomes })
}

/// Random binning: pools of `2^(n s_i)` sequences thrown into `2^(n S_i)`
/// bins, typicality-searched encoding and joint-typicality decoding.
pub fn simulate(spec: &FactorSpec, cfg: &TrialConfig) -> Result<SimResult> {
    run(spec, cfg, Scheme::Binning)
}

/// Reference generator with one independent private codeword per message.
pub fn simulate_direct(spec: &FactorSpec, cfg: &TrialConfig) -> Result<SimResult> {
    run(spec, cfg, Scheme::Direct)
}

/// Largest multiple of `dir` inside a split-space region, e.g. the boundary
/// of `S_HOD` along `(0, 1, 0, 0)`.
pub fn boundary(region: &IneqSystem, dir: &[f64; 4]) -> Result<f64> {
    ray_limit(region, dir).ok_or_else(|| Error::Unbounded("direction leaves the region".into()))
}

/// `I(U_i; W_i | Q)` per sender, the minimum pool slack.
pub fn binning_slack(spec: &FactorSpec) -> Result<[f64; 2]> {
    Ok(model(spec)?.corr)
}

/// `scale` times the point where the ray along `dir` leaves `S_HOD` for the
/// spec's dependent-message constants.
pub fn scaled_rates(spec: &FactorSpec, dir: &[f64; 4], scale: f64) -> Result<[f64; 4]> {
    let c = bound_constants(Family::Hod, &build_joint(spec)?)?;
    let t = boundary(&build(RegionId::S_HOD, &c)?, dir)?;
    Ok(dir.map(|d| scale * t * d))
}

/// Pool rates `S_i + I(U_i; W_i | Q) + slack`.
pub fn pool_rates(spec: &FactorSpec, rates: &[f64; 4], slack: f64) -> Result<[f64; 2]> {
    let corr = binning_slack(spec)?;
    Ok([rates[1] + corr[0] + slack, rates[3] + corr[1] + slack])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_bounds() {
        let (lo, hi) = wilson(0, 100, 1.96);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.03 && hi < 0.04);
        let (lo, hi) = wilson(50, 100, 1.96);
        assert!((lo - 0.4038).abs() < 1e-3 && (hi - 0.5962).abs() < 1e-3);
    }

    #[test]
    fn sizes() {
        assert_eq!(book_size(10, 0.0).unwrap(), 1);
        assert_eq!(book_size(10, 0.5).unwrap(), 32);
        assert!(book_size(40, 1.0).is_err());
    }
}
