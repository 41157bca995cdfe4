use alloc::vec::Vec;

use crate::probspace::JointDist;
use crate::{Error, Result};

/// Masses of a joint over a fixed tuple of variables, laid out for fast
/// typicality tests.
#[derive(Clone, Debug)]
pub struct TypicalTable {
    radix: Vec<usize>,
    probs: Vec<f64>,
}

impl TypicalTable {
    pub fn new(dist: &JointDist, names: &[&str]) -> Result<TypicalTable> {
        let present: Vec<&str> = names.iter().copied().filter(|n| dist.has(n)).collect();
        let m = dist.marginal(&present)?;
        let radix = names.iter().map(|n| if dist.has(n) { m.cardinality(n) } else { Ok(1) }).collect::<Result<_>>()?;
        let probs = (0..m.cells()).map(|c| m.prob_at(c)).collect();
        Ok(TypicalTable { radix, probs })
    }

    /// Strong typicality: every cell's empirical frequency is within `eps`
    /// of its mass, and no zero-mass cell occurs.
    pub fn typical<T: Copy + Into<usize>>(&self, seqs: &[&[T]], eps: f64) -> bool {
        let n = seqs.first().map_or(0, |s| s.len());
        if n == 0 {
            return true;
        }
        let mut small = [0u32; 256];
        let mut large = Vec::new();
        let counts: &mut [u32] = if self.probs.len() <= small.len() {
            &mut small[..self.probs.len()]
        } else {
            large.resize(self.probs.len(), 0);
            &mut large
        };
        for t in 0..n {
            let mut idx = 0;
            for (s, r) in seqs.iter().zip(&self.radix) {
                idx = idx * r + if *r == 1 { 0 } else { s[t].into() };
            }
            if self.probs[idx] == 0.0 {
                return false;
            }
            counts[idx] += 1;
        }
        let inv = 1.0 / n as f64;
        counts.iter().zip(&self.probs).all(|(&c, &p)| (c as f64 * inv - p).abs() <= eps)
    }
}

/// Tests whether `sequences` (one per variable of `dist`, in order) are
/// jointly strongly typical.
pub fn typical_set_test(dist: &JointDist, sequences: &[Vec<usize>], eps: f64) -> Result<bool> {
    if sequences.len() != dist.variables().len() {
        return Err(Error::DimensionMismatch("one sequence per variable expected".into()));
    }
    let n = sequences.first().map_or(0, |s| s.len());
    if sequences.iter().any(|s| s.len() != n) {
        return Err(Error::DimensionMismatch("sequences differ in length".into()));
    }
    for (s, v) in sequences.iter().zip(dist.variables()) {
        if s.iter().any(|&x| x >= v.cardinality) {
            return Err(Error::DimensionMismatch(alloc::format!("symbol outside the alphabet of {}", v.name)));
        }
    }
    let names = dist.names();
    let table = TypicalTable::new(dist, &names)?;
    let refs: Vec<&[usize]> = sequences.iter().map(|s| s.as_slice()).collect();
    Ok(table.typical(&refs, eps))
}
