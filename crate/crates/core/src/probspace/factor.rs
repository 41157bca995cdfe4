use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::{cell_count, Encoder, JointDist, Odometer, VariableDecl};
use crate::rational::{format_rational, lcm_u128, to_u128_pair, Rational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    GeneralIc,
    Hk,
    Cmg,
    ModCmg,
    Hod,
    HodCmg,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::GeneralIc, Family::Hk, Family::Cmg, Family::ModCmg, Family::Hod, Family::HodCmg];

    pub fn name(self) -> &'static str {
        match self {
            Family::GeneralIc => "GENERAL_IC",
            Family::Hk => "HK",
            Family::Cmg => "CMG",
            Family::ModCmg => "MOD_CMG",
            Family::Hod => "HOD",
            Family::HodCmg => "HOD_CMG",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(s.trim()))
    }

    /// Families whose joint carries the message variables only through `W`.
    pub fn is_cmg_type(self) -> bool {
        matches!(self, Family::Cmg | Family::ModCmg | Family::HodCmg)
    }
}

impl core::fmt::Display for Family {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

const IC_ORDER: [&str; 9] = ["Q", "U1", "W1", "U2", "W2", "X1", "X2", "Y1", "Y2"];
const CMG_ORDER: [&str; 7] = ["Q", "W1", "W2", "X1", "X2", "Y1", "Y2"];

/// Variable order of the joint returned by [`build_joint`].
pub fn canonical_order(family: Family) -> &'static [&'static str] {
    if family.is_cmg_type() {
        &CMG_ORDER
    } else {
        &IC_ORDER
    }
}

/// Conditional table `p(child | parents)`. Rows run over the row-major
/// assignments of `parents`; columns over those of `child`.
#[derive(Clone, Debug, PartialEq)]
pub struct CondTable {
    pub child: Vec<String>,
    pub parents: Vec<String>,
    pub rows: Vec<Vec<Rational>>,
}

impl CondTable {
    pub fn new(child: &[&str], parents: &[&str], rows: Vec<Vec<Rational>>) -> Self {
        CondTable {
            child: child.iter().map(|s| s.to_string()).collect(),
            parents: parents.iter().map(|s| s.to_string()).collect(),
            rows,
        }
    }

    /// Deterministic table from a map over parent assignments.
    pub fn deterministic(child: &str, out_card: usize, parents: &[&str], map: &[usize]) -> Self {
        let rows = map
            .iter()
            .map(|&x| (0..out_card).map(|k| if k == x { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        CondTable::new(&[child], parents, rows)
    }

    pub fn label(&self) -> String {
        if self.parents.is_empty() {
            format!("p({})", self.child.join(","))
        } else {
            format!("p({}|{})", self.child.join(","), self.parents.join(","))
        }
    }

    fn check(&self, card: &dyn Fn(&str) -> Result<usize>) -> Result<()> {
        let prod = |names: &[String]| -> Result<usize> { names.iter().map(|n| card(n)).product() };
        let rows = prod(&self.parents)?;
        let cols = prod(&self.child)?;
        if self.rows.len() != rows {
            return Err(Error::DimensionMismatch(format!(
                "{} has {} rows, expected {rows}",
                self.label(),
                self.rows.len()
            )));
        }
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "{} row {r} has {} entries, expected {cols}",
                    self.label(),
                    row.len()
                )));
            }
            if row.iter().any(|x| x.is_negative()) {
                return Err(Error::NegativeEntry { table: self.label(), row: r });
            }
            let sum: Rational = row.iter().sum();
            if !sum.is_one() {
                return Err(Error::RowSum { table: self.label(), row: r, sum: format_rational(&sum) });
            }
        }
        Ok(())
    }

    fn is_deterministic(&self) -> Option<usize> {
        self.rows.iter().position(|row| {
            let ones = row.iter().filter(|x| x.is_one()).count();
            let zeros = row.iter().filter(|x| x.is_zero()).count();
            !(ones == 1 && zeros + 1 == row.len())
        })
    }

    fn signature(&self) -> (BTreeSet<&str>, BTreeSet<&str>) {
        (
            self.child.iter().map(|s| s.as_str()).collect(),
            self.parents.iter().map(|s| s.as_str()).collect(),
        )
    }
}

/// A factored joint distribution: source factors, encoder tables, channel.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorSpec {
    pub family: Family,
    pub variables: Vec<VariableDecl>,
    pub factors: Vec<CondTable>,
    pub encoders: Vec<CondTable>,
    pub channel: CondTable,
}

type Sig = (&'static [&'static str], &'static [&'static str]);

const HK_FACTORS: [Sig; 5] =
    [(&["Q"], &[]), (&["U1"], &["Q"]), (&["W1"], &["Q"]), (&["U2"], &["Q"]), (&["W2"], &["Q"])];
const HOD_FACTORS: [Sig; 3] = [(&["Q"], &[]), (&["U1", "W1"], &["Q"]), (&["U2", "W2"], &["Q"])];
const IC_ENCODERS: [Sig; 2] = [(&["X1"], &["Q", "U1", "W1"]), (&["X2"], &["Q", "U2", "W2"])];
const CMG_FACTORS: [Sig; 5] =
    [(&["Q"], &[]), (&["W1"], &["Q"]), (&["X1"], &["Q", "W1"]), (&["W2"], &["Q"]), (&["X2"], &["Q", "W2"])];
const CHANNEL: Sig = (&["Y1", "Y2"], &["X1", "X2"]);

fn template(family: Family) -> (&'static [Sig], &'static [Sig]) {
    match family {
        Family::Hk => (&HK_FACTORS, &IC_ENCODERS),
        Family::Hod | Family::GeneralIc => (&HOD_FACTORS, &IC_ENCODERS),
        Family::Cmg | Family::ModCmg | Family::HodCmg => (&CMG_FACTORS, &[]),
    }
}

fn matches(sig: &Sig, t: &CondTable) -> bool {
    let (c, p) = t.signature();
    c == sig.0.iter().copied().collect() && p == sig.1.iter().copied().collect()
}

impl FactorSpec {
    pub fn cardinality(&self, name: &str) -> Result<usize> {
        self.variables
            .iter()
            .find(|v| v.name == name)
            .map(|v| v.cardinality)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Checks every structural invariant without building the joint.
    pub fn validate(&self) -> Result<()> {
        cell_count(&self.variables)?;
        let order = canonical_order(self.family);
        let declared: BTreeSet<&str> = self.variables.iter().map(|v| v.name.as_str()).collect();
        let expected: BTreeSet<&str> = order.iter().copied().collect();
        if declared != expected {
            return Err(Error::Structure(format!(
                "family {} needs variables {:?}, found {:?}",
                self.family, expected, declared
            )));
        }
        let card = |n: &str| self.cardinality(n);
        for t in self.factors.iter().chain(&self.encoders).chain(core::iter::once(&self.channel)) {
            t.check(&card)?;
        }
        if self.family != Family::GeneralIc {
            for e in &self.encoders {
                if let Some(row) = e.is_deterministic() {
                    return Err(Error::NotDeterministic { table: e.label(), row });
                }
            }
        }
        let (factors, encoders) = template(self.family);
        for (sigs, tables, what) in [(factors, &self.factors, "factor"), (encoders, &self.encoders, "encoder")] {
            if tables.len() != sigs.len() {
                return Err(Error::Structure(format!(
                    "family {} expects {} {what} tables, found {}",
                    self.family,
                    sigs.len(),
                    tables.len()
                )));
            }
            for sig in sigs {
                if !tables.iter().any(|t| matches(sig, t)) {
                    return Err(Error::Structure(format!(
                        "family {} expects a {what} p({}|{})",
                        self.family,
                        sig.0.join(","),
                        sig.1.join(",")
                    )));
                }
            }
        }
        if !matches(&CHANNEL, &self.channel) {
            return Err(Error::Structure(format!("channel must be p(Y1,Y2|X1,X2), found {}", self.channel.label())));
        }
        Ok(())
    }

    /// Encoder tables as lookup maps (deterministic families only).
    pub fn encoder_maps(&self) -> Result<Vec<Encoder>> {
        self.encoders
            .iter()
            .map(|t| Encoder::from_table(t, self.cardinality(&t.child[0])?))
            .collect()
    }

    pub fn tables(&self) -> impl Iterator<Item = &CondTable> {
        self.factors.iter().chain(&self.encoders).chain(core::iter::once(&self.channel))
    }
}

/// Integer form of a table: entries scaled by the lcm of their denominators.
struct Scaled {
    lcm: u128,
    entries: Vec<u128>,
    stride: Vec<usize>,
}

fn scale(t: &CondTable, order: &[&str], card: &dyn Fn(&str) -> Result<usize>) -> Result<Scaled> {
    let mut lcm = 1u128;
    for row in &t.rows {
        for x in row {
            lcm = lcm_u128(lcm, to_u128_pair(x)?.1).ok_or(Error::Overflow)?;
        }
    }
    let mut entries = Vec::new();
    for row in &t.rows {
        for x in row {
            let (n, d) = to_u128_pair(x)?;
            entries.push(n.checked_mul(lcm / d).ok_or(Error::Overflow)?);
        }
    }
    // Flattened index is row-major over parents followed by child.
    let mut stride = vec![0usize; order.len()];
    let mut s = 1;
    for name in t.parents.iter().chain(&t.child).rev() {
        let pos = order.iter().position(|o| o == name).ok_or_else(|| Error::UnknownVariable(name.clone()))?;
        stride[pos] = s;
        s *= card(name)?;
    }
    Ok(Scaled { lcm, entries, stride })
}

/// Multiplies out the factorization into a dense joint in canonical order.
pub fn build_joint(spec: &FactorSpec) -> Result<JointDist> {
    spec.validate()?;
    let order = canonical_order(spec.family);
    let vars: Vec<VariableDecl> = order
        .iter()
        .map(|n| Ok(VariableDecl::new(n, spec.cardinality(n)?)))
        .collect::<Result<_>>()?;
    let cells = cell_count(&vars)?;
    let card = |n: &str| spec.cardinality(n);
    let tables: Vec<Scaled> = spec.tables().map(|t| scale(t, order, &card)).collect::<Result<_>>()?;
    let mut denom = 1u128;
    for t in &tables {
        denom = denom.checked_mul(t.lcm).ok_or(Error::Overflow)?;
    }
    let radix: Vec<usize> = vars.iter().map(|v| v.cardinality).collect();
    let mut odo = Odometer::new(&radix);
    let mut numer = Vec::with_capacity(cells);
    for c in 0..cells {
        let mut m = 1u128;
        for t in &tables {
            let i: usize = odo.digits.iter().zip(&t.stride).map(|(d, s)| d * s).sum();
            let e = t.entries[i];
            if e == 0 {
                m = 0;
                break;
            }
            m = m.checked_mul(e).ok_or(Error::Overflow)?;
        }
        numer.push(m);
        if c + 1 < cells {
            odo.step();
        }
    }
    JointDist::from_numerators(vars, numer, denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn half() -> Vec<Rational> {
        vec![ratio(1, 2), ratio(1, 2)]
    }

    /// Binary HK spec with identity-style encoders and a noiseless channel
    /// `Y1 = X1`, `Y2 = X2`.
    fn noiseless_hk() -> FactorSpec {
        let v = |n: &str, c| VariableDecl::new(n, c);
        let vars = vec![
            v("Q", 1), v("U1", 2), v("W1", 2), v("U2", 2), v("W2", 2), v("X1", 4), v("X2", 4), v("Y1", 4), v("Y2", 4),
        ];
        let channel_rows = (0..16)
            .map(|r| (0..16).map(|c| if c == r { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        FactorSpec {
            family: Family::Hk,
            variables: vars,
            factors: vec![
                CondTable::new(&["Q"], &[], vec![vec![Rational::one()]]),
                CondTable::new(&["U1"], &["Q"], vec![half()]),
                CondTable::new(&["W1"], &["Q"], vec![half()]),
                CondTable::new(&["U2"], &["Q"], vec![half()]),
                CondTable::new(&["W2"], &["Q"], vec![half()]),
            ],
            encoders: vec![
                CondTable::deterministic("X1", 4, &["Q", "U1", "W1"], &[0, 1, 2, 3]),
                CondTable::deterministic("X2", 4, &["Q", "U2", "W2"], &[0, 1, 2, 3]),
            ],
            channel: CondTable::new(&["Y1", "Y2"], &["X1", "X2"], channel_rows),
        }
    }

    #[test]
    fn dyadic_joint() {
        let j = build_joint(&noiseless_hk()).unwrap();
        assert_eq!(j.total(), Rational::one());
        assert_eq!(j.denominator(), 16);
        assert_eq!(j.names(), IC_ORDER.to_vec());
    }

    #[test]
    fn row_sum_error() {
        let mut s = noiseless_hk();
        s.factors[1].rows[0][0] = ratio(15, 32);
        let e = build_joint(&s).unwrap_err();
        assert!(matches!(e, Error::RowSum { .. }));
        assert!(alloc::string::ToString::to_string(&e).contains("factor row not summing to 1"));
    }

    #[test]
    fn stochastic_encoder_rejected() {
        let mut s = noiseless_hk();
        s.encoders[0].rows[0] = vec![ratio(1, 2), ratio(1, 2), Rational::zero(), Rational::zero()];
        assert!(matches!(build_joint(&s), Err(Error::NotDeterministic { .. })));
        s.family = Family::GeneralIc;
        s.factors = vec![
            CondTable::new(&["Q"], &[], vec![vec![Rational::one()]]),
            CondTable::new(&["U1", "W1"], &["Q"], vec![vec![ratio(1, 4); 4]]),
            CondTable::new(&["U2", "W2"], &["Q"], vec![vec![ratio(1, 4); 4]]),
        ];
        assert!(build_joint(&s).is_ok());
    }

    #[test]
    fn wrong_structure() {
        let mut s = noiseless_hk();
        s.factors[1] = CondTable::new(&["U1"], &[], vec![half()]);
        assert!(matches!(build_joint(&s), Err(Error::Structure(_))));
        let mut s = noiseless_hk();
        s.factors[1].rows.push(half());
        assert!(matches!(build_joint(&s), Err(Error::DimensionMismatch(_))));
    }
}
