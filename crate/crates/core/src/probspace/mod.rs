//! Discrete joint distributions over named finite-alphabet variables.
//!
//! Masses are stored exactly as `u128` numerators over one shared `u128`
//! denominator, so normalization and marginals are exact integer sums.
//! Information measures are `f64` bits.

mod factor;
mod lift;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use alloc::format;
use core::cell::RefCell;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::rational::{lcm_u128, to_u128_pair, Rational};
use crate::{Error, Result, TOL};

pub use factor::{build_joint, canonical_order, CondTable, FactorSpec, Family};
pub use lift::{wyner_lift, CommonPart};

/// Hard cap on the number of cells of a dense table.
pub const MAX_CELLS: u128 = 10_000_000;

/// Negative CMI values down to this magnitude are floating-point noise.
pub const CLAMP: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableDecl {
    pub name: String,
    pub cardinality: usize,
}

impl VariableDecl {
    pub fn new(name: &str, cardinality: usize) -> Self {
        VariableDecl { name: name.to_string(), cardinality }
    }
}

fn cell_count(vars: &[VariableDecl]) -> Result<usize> {
    let mut cells: u128 = 1;
    for (i, v) in vars.iter().enumerate() {
        if v.cardinality == 0 {
            return Err(Error::ZeroCardinality(v.name.clone()));
        }
        if vars[..i].iter().any(|w| w.name == v.name) {
            return Err(Error::DuplicateVariable(v.name.clone()));
        }
        cells = cells.saturating_mul(v.cardinality as u128);
    }
    if cells > MAX_CELLS {
        return Err(Error::TooLarge { cells });
    }
    Ok(cells as usize)
}

/// Odometer over a mixed-radix index, last variable fastest.
pub(crate) struct Odometer<'a> {
    radix: &'a [usize],
    pub digits: Vec<usize>,
}

impl<'a> Odometer<'a> {
    pub fn new(radix: &'a [usize]) -> Self {
        Odometer { radix, digits: vec![0; radix.len()] }
    }

    pub fn step(&mut self) {
        let mut k = self.radix.len();
        while k > 0 {
            k -= 1;
            self.digits[k] += 1;
            if self.digits[k] < self.radix[k] {
                return;
            }
            self.digits[k] = 0;
        }
    }
}

/// Dense joint pmf with exact rational masses.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDist {
    vars: Vec<VariableDecl>,
    denom: u128,
    numer: Vec<u128>,
}

impl JointDist {
    /// Builds a distribution from integer numerators over `denom`.
    pub fn from_numerators(vars: Vec<VariableDecl>, numer: Vec<u128>, denom: u128) -> Result<Self> {
        let cells = cell_count(&vars)?;
        if numer.len() != cells {
            return Err(Error::DimensionMismatch(format!(
                "{} masses for {} cells",
                numer.len(),
                cells
            )));
        }
        let mut total: u128 = 0;
        for &n in &numer {
            total = total.checked_add(n).ok_or(Error::Overflow)?;
        }
        if denom == 0 || total != denom {
            return Err(Error::RowSum {
                table: "joint".to_string(),
                row: 0,
                sum: format!("{total}/{denom}"),
            });
        }
        let mut dist = JointDist { vars, denom, numer };
        dist.normalize_denominator();
        Ok(dist)
    }

    pub fn from_masses(vars: Vec<VariableDecl>, masses: &[Rational]) -> Result<Self> {
        let mut denom: u128 = 1;
        let mut pairs = Vec::with_capacity(masses.len());
        for m in masses {
            let (n, d) = to_u128_pair(m)?;
            denom = lcm_u128(denom, d).ok_or(Error::Overflow)?;
            pairs.push((n, d));
        }
        let numer = pairs
            .into_iter()
            .map(|(n, d)| n.checked_mul(denom / d).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Self::from_numerators(vars, numer, denom)
    }

    /// Evaluates `f` on every index tuple, row-major.
    pub fn from_fn(vars: Vec<VariableDecl>, mut f: impl FnMut(&[usize]) -> Rational) -> Result<Self> {
        let cells = cell_count(&vars)?;
        let radix: Vec<usize> = vars.iter().map(|v| v.cardinality).collect();
        let mut odo = Odometer::new(&radix);
        let mut masses = Vec::with_capacity(cells);
        for c in 0..cells {
            masses.push(f(&odo.digits));
            if c + 1 < cells {
                odo.step();
            }
        }
        Self::from_masses(vars, &masses)
    }

    pub fn uniform(vars: Vec<VariableDecl>) -> Result<Self> {
        let cells = cell_count(&vars)?;
        Self::from_numerators(vars, vec![1; cells], cells as u128)
    }

    fn normalize_denominator(&mut self) {
        let mut g = self.denom;
        for &n in &self.numer {
            if g == 1 {
                return;
            }
            g = g.gcd(&n);
        }
        if g > 1 {
            self.denom /= g;
            for n in &mut self.numer {
                *n /= g;
            }
        }
    }

    pub fn variables(&self) -> &[VariableDecl] {
        &self.vars
    }

    pub fn names(&self) -> Vec<&str> {
        self.vars.iter().map(|v| v.name.as_str()).collect()
    }

    pub fn has(&self, name: &str) -> bool {
        self.vars.iter().any(|v| v.name == name)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn cardinality(&self, name: &str) -> Result<usize> {
        Ok(self.vars[self.index_of(name)?].cardinality)
    }

    pub fn cells(&self) -> usize {
        self.numer.len()
    }

    pub fn denominator(&self) -> u128 {
        self.denom
    }

    pub fn numerators(&self) -> &[u128] {
        &self.numer
    }

    pub fn radix(&self) -> Vec<usize> {
        self.vars.iter().map(|v| v.cardinality).collect()
    }

    pub fn flat_index(&self, idx: &[usize]) -> Result<usize> {
        if idx.len() != self.vars.len() {
            return Err(Error::DimensionMismatch(format!(
                "index of length {} for {} variables",
                idx.len(),
                self.vars.len()
            )));
        }
        let mut flat = 0;
        for (v, &i) in self.vars.iter().zip(idx) {
            if i >= v.cardinality {
                return Err(Error::DimensionMismatch(format!("index {i} out of range for {}", v.name)));
            }
            flat = flat * v.cardinality + i;
        }
        Ok(flat)
    }

    pub fn mass(&self, idx: &[usize]) -> Result<Rational> {
        Ok(self.mass_at(self.flat_index(idx)?))
    }

    pub fn mass_at(&self, cell: usize) -> Rational {
        Rational::new(BigInt::from(self.numer[cell]), BigInt::from(self.denom))
    }

    pub fn prob_at(&self, cell: usize) -> f64 {
        self.numer[cell] as f64 / self.denom as f64
    }

    /// Sum of all masses as an exact rational; always 1.
    pub fn total(&self) -> Rational {
        let s: u128 = self.numer.iter().sum();
        Rational::new(BigInt::from(s), BigInt::from(self.denom))
    }

    pub(crate) fn mask(&self, names: &[&str]) -> Result<u64> {
        let mut m = 0u64;
        for n in names {
            m |= 1 << self.index_of(n)?;
        }
        Ok(m)
    }

    /// Marginal numerators over the variables set in `mask`, in declaration order.
    fn marginal_numer(&self, mask: u64) -> Vec<u128> {
        let n = self.vars.len();
        let mut stride = vec![0usize; n];
        let mut size = 1usize;
        for v in (0..n).rev() {
            if mask >> v & 1 == 1 {
                stride[v] = size;
                size *= self.vars[v].cardinality;
            }
        }
        let mut acc = vec![0u128; size];
        if mask == 0 {
            acc[0] = self.denom;
            return acc;
        }
        let radix = self.radix();
        let mut digits = vec![0usize; n];
        let mut m = 0usize;
        for &x in &self.numer {
            acc[m] += x;
            let mut k = n;
            while k > 0 {
                k -= 1;
                digits[k] += 1;
                m += stride[k];
                if digits[k] < radix[k] {
                    break;
                }
                digits[k] = 0;
                m -= stride[k] * radix[k];
            }
        }
        acc
    }

    /// Marginal over `names`, in the order given.
    pub fn marginal(&self, names: &[&str]) -> Result<JointDist> {
        let idx: Vec<usize> = names.iter().map(|n| self.index_of(n)).collect::<Result<_>>()?;
        let vars: Vec<VariableDecl> = idx.iter().map(|&i| self.vars[i].clone()).collect();
        cell_count(&vars)?;
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        let mask = sorted.iter().fold(0u64, |m, &i| m | 1 << i);
        let acc = self.marginal_numer(mask);
        if sorted == idx {
            return JointDist::from_numerators(vars, acc, self.denom);
        }
        // Permute from declaration order into the requested order.
        let radix_sorted: Vec<usize> = sorted.iter().map(|&i| self.vars[i].cardinality).collect();
        let radix_req: Vec<usize> = vars.iter().map(|v| v.cardinality).collect();
        let pos: Vec<usize> = idx.iter().map(|i| sorted.iter().position(|s| s == i).unwrap()).collect();
        let mut out = vec![0u128; acc.len()];
        let mut odo = Odometer::new(&radix_req);
        for (c, slot) in out.iter_mut().enumerate() {
            let mut flat = 0;
            for (k, &r) in radix_sorted.iter().enumerate() {
                let j = pos.iter().position(|&p| p == k).unwrap();
                flat = flat * r + odo.digits[j];
            }
            *slot = acc[flat];
            if c + 1 < acc.len() {
                odo.step();
            }
        }
        JointDist::from_numerators(vars, out, self.denom)
    }

    /// Independent product `self ⊗ other`; variable names must be disjoint.
    pub fn product(&self, other: &JointDist) -> Result<JointDist> {
        let mut vars = self.vars.clone();
        vars.extend(other.vars.iter().cloned());
        cell_count(&vars)?;
        let denom = self.denom.checked_mul(other.denom).ok_or(Error::Overflow)?;
        let mut numer = Vec::with_capacity(self.numer.len() * other.numer.len());
        for &a in &self.numer {
            for &b in &other.numer {
                numer.push(a.checked_mul(b).ok_or(Error::Overflow)?);
            }
        }
        JointDist::from_numerators(vars, numer, denom)
    }

    fn entropy_mask(&self, mask: u64) -> f64 {
        let d = self.denom as f64;
        let mut h = 0.0;
        for n in self.marginal_numer(mask) {
            if n > 0 {
                let p = n as f64 / d;
                h -= p * libm::log2(p);
            }
        }
        h
    }

    /// Joint entropy H(names) in bits.
    pub fn entropy(&self, names: &[&str]) -> Result<f64> {
        Ok(self.entropy_mask(self.mask(names)?))
    }

    pub fn cmi(&self, q: &InfoQuery) -> Result<f64> {
        cond_mutual_info(self, q)
    }

    /// Shorthand for `I(left; right | given)` with string slices.
    pub fn info(&self, left: &[&str], right: &[&str], given: &[&str]) -> Result<f64> {
        cond_mutual_info(self, &InfoQuery::new(left, right, given))
    }
}

/// `I(left; right | given)`; `given` may be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfoQuery {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub given: Vec<String>,
}

impl InfoQuery {
    pub fn new(left: &[&str], right: &[&str], given: &[&str]) -> Self {
        let own = |s: &[&str]| s.iter().map(|x| x.to_string()).collect();
        InfoQuery { left: own(left), right: own(right), given: own(given) }
    }

    /// Validates the query against `dist` and returns the three variable masks.
    fn masks(&self, dist: &JointDist) -> Result<(u64, u64, u64)> {
        let mut seen = BTreeMap::new();
        let mut masks = [0u64; 3];
        for (k, set) in [&self.left, &self.right, &self.given].into_iter().enumerate() {
            for name in set {
                let i = dist.index_of(name)?;
                if let Some(&prev) = seen.get(&i) {
                    if prev != k {
                        return Err(Error::OverlappingQuery(name.clone()));
                    }
                }
                seen.insert(i, k);
                masks[k] |= 1 << i;
            }
        }
        Ok((masks[0], masks[1], masks[2]))
    }
}

fn clamp(v: f64) -> f64 {
    if v < 0.0 && v >= -CLAMP {
        0.0
    } else {
        v
    }
}

pub fn cond_mutual_info(dist: &JointDist, q: &InfoQuery) -> Result<f64> {
    let (a, b, c) = q.masks(dist)?;
    let h = |m| dist.entropy_mask(m);
    Ok(clamp(h(a | c) + h(b | c) - h(a | b | c) - h(c)))
}

/// Memoizes subset entropies of one distribution across many queries.
pub struct InfoCache<'a> {
    dist: &'a JointDist,
    memo: RefCell<BTreeMap<u64, f64>>,
}

impl<'a> InfoCache<'a> {
    pub fn new(dist: &'a JointDist) -> Self {
        InfoCache { dist, memo: RefCell::new(BTreeMap::new()) }
    }

    pub fn dist(&self) -> &'a JointDist {
        self.dist
    }

    fn h(&self, mask: u64) -> f64 {
        if let Some(&v) = self.memo.borrow().get(&mask) {
            return v;
        }
        let v = self.dist.entropy_mask(mask);
        self.memo.borrow_mut().insert(mask, v);
        v
    }

    pub fn entropy(&self, names: &[&str]) -> Result<f64> {
        Ok(self.h(self.dist.mask(names)?))
    }

    pub fn info(&self, left: &[&str], right: &[&str], given: &[&str]) -> Result<f64> {
        let (a, b, c) = InfoQuery::new(left, right, given).masks(self.dist)?;
        Ok(clamp(self.h(a | c) + self.h(b | c) - self.h(a | b | c) - self.h(c)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MarkovCheck {
    pub holds: bool,
    pub violation: f64,
}

/// Checks `A → B → C` via `I(A; C | B) ≤ 1e-9`.
pub fn verify_markov(dist: &JointDist, a: &[&str], b: &[&str], c: &[&str]) -> Result<MarkovCheck> {
    let v = dist.info(a, c, b)?;
    Ok(MarkovCheck { holds: v <= TOL, violation: v })
}

/// Deterministic map `output = f(inputs)` given as a lookup table over the
/// row-major assignments of `inputs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoder {
    pub output: VariableDecl,
    pub inputs: Vec<String>,
    pub map: Vec<usize>,
}

impl Encoder {
    /// Reads a 0/1 conditional table with a single child.
    pub fn from_table(table: &CondTable, output_card: usize) -> Result<Self> {
        if table.child.len() != 1 {
            return Err(Error::Structure(format!("encoder {} must have one output", table.label())));
        }
        let mut map = Vec::with_capacity(table.rows.len());
        for (r, row) in table.rows.iter().enumerate() {
            if row.len() != output_card {
                return Err(Error::DimensionMismatch(format!(
                    "encoder {} row {r} has {} entries, expected {output_card}",
                    table.label(),
                    row.len()
                )));
            }
            let ones: Vec<usize> = row
                .iter()
                .enumerate()
                .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
                .map(|(i, _)| i)
                .collect();
            let is_one = |x: &Rational| num_traits::One::is_one(x);
            if ones.len() != 1 || !is_one(&row[ones[0]]) {
                return Err(Error::NotDeterministic { table: table.label(), row: r });
            }
            map.push(ones[0]);
        }
        Ok(Encoder {
            output: VariableDecl::new(&table.child[0], output_card),
            inputs: table.parents.clone(),
            map,
        })
    }
}

/// Extends the joint with one column per encoder output.
pub fn apply_map(dist: &JointDist, encoders: &[Encoder]) -> Result<JointDist> {
    let mut cur = dist.clone();
    for enc in encoders {
        let idx: Vec<usize> = enc.inputs.iter().map(|n| cur.index_of(n)).collect::<Result<_>>()?;
        let rows: usize = idx.iter().map(|&i| cur.vars[i].cardinality).product();
        if enc.map.len() != rows || enc.map.iter().any(|&x| x >= enc.output.cardinality) {
            return Err(Error::DimensionMismatch(format!("encoder for {} does not cover its inputs", enc.output.name)));
        }
        let mut vars = cur.vars.clone();
        vars.push(enc.output.clone());
        let k = enc.output.cardinality;
        let radix = cur.radix();
        let mut numer = vec![0u128; cur.numer.len() * k];
        let mut odo = Odometer::new(&radix);
        for (c, &x) in cur.numer.iter().enumerate() {
            let row = idx.iter().fold(0, |r, &i| r * radix[i] + odo.digits[i]);
            numer[c * k + enc.map[row]] = x;
            if c + 1 < cur.numer.len() {
                odo.step();
            }
        }
        cur = JointDist::from_numerators(vars, numer, cur.denom)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn bits(names: &[(&str, usize)]) -> Vec<VariableDecl> {
        names.iter().map(|(n, c)| VariableDecl::new(n, *c)).collect()
    }

    #[test]
    fn uniform_entropy() {
        let d = JointDist::uniform(bits(&[("A", 4), ("B", 2)])).unwrap();
        assert!((d.entropy(&["A"]).unwrap() - 2.0).abs() < 1e-12);
        assert!((d.entropy(&["A", "B"]).unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(d.info(&["A"], &["B"], &[]).unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_queries() {
        let d = JointDist::uniform(bits(&[("A", 2), ("B", 2)])).unwrap();
        assert_eq!(d.info(&["A"], &["A"], &[]), Err(Error::OverlappingQuery("A".into())));
        assert_eq!(d.info(&["Z"], &["A"], &[]), Err(Error::UnknownVariable("Z".into())));
    }

    #[test]
    fn marginal_reorders() {
        let d = JointDist::from_fn(bits(&[("A", 2), ("B", 3)]), |i| ratio((i[0] * 3 + i[1] + 1) as i64, 21)).unwrap();
        let m = d.marginal(&["B", "A"]).unwrap();
        for a in 0..2 {
            for b in 0..3 {
                assert_eq!(m.mass(&[b, a]).unwrap(), d.mass(&[a, b]).unwrap());
            }
        }
        let b = d.marginal(&["B"]).unwrap();
        assert_eq!(b.mass(&[0]).unwrap(), ratio(1 + 4, 21));
    }

    #[test]
    fn xor_encoder() {
        let d = JointDist::uniform(bits(&[("U", 2), ("W", 2)])).unwrap();
        let enc = Encoder { output: VariableDecl::new("X", 2), inputs: vec!["U".into(), "W".into()], map: vec![0, 1, 1, 0] };
        let j = apply_map(&d, &[enc]).unwrap();
        assert!(j.info(&["X"], &["U"], &[]).unwrap().abs() < 1e-12);
        assert!((j.info(&["X"], &["U"], &["W"]).unwrap() - 1.0).abs() < 1e-12);
        assert!(j.entropy(&["X"]).unwrap() - 1.0 < 1e-12);
        assert_eq!(j.info(&["X"], &["X"], &[]).is_err(), true);
    }

    #[test]
    fn bad_sum_rejected() {
        let e = JointDist::from_numerators(bits(&[("A", 2)]), vec![1, 1], 3);
        assert!(matches!(e, Err(Error::RowSum { .. })));
    }

    #[test]
    fn too_large() {
        let e = JointDist::uniform(bits(&[("A", 10000), ("B", 10000)]));
        assert!(matches!(e, Err(Error::TooLarge { .. })));
    }
}
