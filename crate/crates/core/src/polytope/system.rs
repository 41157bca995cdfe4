use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::symexpr::{split_terms, write_term, SymExpr};
use crate::rational::{parse_rational, to_f64, Rational};
use crate::{Error, Result};

/// Numeric duplicate rows merge when their right sides agree this closely.
pub const MERGE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Numeric,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Rhs {
    Sym(SymExpr),
    Num(f64),
}

impl Rhs {
    pub fn as_sym(&self) -> Option<&SymExpr> {
        match self {
            Rhs::Sym(e) => Some(e),
            Rhs::Num(_) => None,
        }
    }

    pub fn as_num(&self) -> Option<f64> {
        match self {
            Rhs::Num(x) => Some(*x),
            Rhs::Sym(_) => None,
        }
    }

    pub(crate) fn combine(&self, a: &Rational, other: &Rhs, b: &Rational) -> Rhs {
        match (self, other) {
            (Rhs::Sym(x), Rhs::Sym(y)) => Rhs::Sym(&x.scaled(a) + &y.scaled(b)),
            (Rhs::Num(x), Rhs::Num(y)) => Rhs::Num(to_f64(a) * x + to_f64(b) * y),
            _ => unreachable!("mode checked at construction"),
        }
    }
}

impl fmt::Display for Rhs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rhs::Sym(e) => e.fmt(f),
            Rhs::Num(x) => write!(f, "{x}"),
        }
    }
}

/// `coeffs · vars <= rhs`, with `coeffs` aligned to the owning system's
/// variable list.
#[derive(Clone, Debug, PartialEq)]
pub struct LinIneq {
    pub coeffs: Vec<Rational>,
    pub rhs: Rhs,
    pub label: String,
}

impl LinIneq {
    pub fn is_trivial_lhs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IneqSystem {
    mode: Mode,
    variables: Vec<String>,
    rows: Vec<LinIneq>,
}

impl IneqSystem {
    pub fn new(mode: Mode, variables: &[&str]) -> Self {
        IneqSystem { mode, variables: variables.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub(crate) fn from_parts(mode: Mode, variables: Vec<String>, rows: Vec<LinIneq>) -> Self {
        IneqSystem { mode, variables, rows }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn rows(&self) -> &[LinIneq] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.variables
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn push(&mut self, row: LinIneq) -> Result<()> {
        if row.coeffs.len() != self.variables.len() {
            return Err(Error::DimensionMismatch(format!(
                "row with {} coefficients in a {}-variable system",
                row.coeffs.len(),
                self.variables.len()
            )));
        }
        let ok = matches!((self.mode, &row.rhs), (Mode::Symbolic, Rhs::Sym(_)) | (Mode::Numeric, Rhs::Num(_)));
        if !ok {
            return Err(Error::DimensionMismatch("row mode differs from system mode".to_string()));
        }
        self.rows.push(row);
        Ok(())
    }

    /// Adds `Σ coef·var <= rhs` from `(name, coef)` pairs.
    pub fn add(&mut self, label: &str, terms: &[(&str, i64)], rhs: Rhs) -> Result<()> {
        let mut coeffs = vec![Rational::zero(); self.variables.len()];
        for (n, c) in terms {
            coeffs[self.var_index(n)?] += Rational::from_integer((*c).into());
        }
        self.push(LinIneq { coeffs, rhs, label: label.to_string() })
    }

    /// Adds `-v <= 0` for every variable.
    pub fn add_nonnegativity(&mut self) {
        let zero = match self.mode {
            Mode::Symbolic => Rhs::Sym(SymExpr::zero()),
            Mode::Numeric => Rhs::Num(0.0),
        };
        for i in 0..self.variables.len() {
            let mut coeffs = vec![Rational::zero(); self.variables.len()];
            coeffs[i] = -Rational::one();
            let label = format!("nonneg.{}", self.variables[i]);
            self.rows.push(LinIneq { coeffs, rhs: zero.clone(), label });
        }
    }

    pub fn retain(&mut self, f: impl FnMut(&LinIneq) -> bool) {
        self.rows.retain(f);
    }

    /// Instantiates a symbolic system with numeric constants.
    pub fn evaluate(&self, value: &dyn Fn(&str) -> Option<f64>) -> Result<IneqSystem> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let rhs = match &r.rhs {
                    Rhs::Sym(e) => Rhs::Num(e.eval(value)?),
                    Rhs::Num(x) => Rhs::Num(*x),
                };
                Ok(LinIneq { coeffs: r.coeffs.clone(), rhs, label: r.label.clone() })
            })
            .collect::<Result<_>>()?;
        Ok(IneqSystem { mode: Mode::Numeric, variables: self.variables.clone(), rows })
    }

    /// Whether `point` satisfies every row within `tol` (numeric mode).
    pub fn contains(&self, point: &[f64], tol: f64) -> bool {
        self.rows.iter().all(|r| {
            let lhs: f64 = r.coeffs.iter().zip(point).map(|(c, x)| to_f64(c) * x).sum();
            lhs <= r.rhs.as_num().unwrap_or(f64::NAN) + tol
        })
    }

    /// Merges duplicate rows, keeping the first occurrence.
    pub fn dedup(&mut self) {
        let mut kept: Vec<LinIneq> = Vec::with_capacity(self.rows.len());
        for r in core::mem::take(&mut self.rows) {
            let dup = kept.iter().any(|k| {
                k.coeffs == r.coeffs
                    && match (&k.rhs, &r.rhs) {
                        (Rhs::Sym(a), Rhs::Sym(b)) => a == b,
                        (Rhs::Num(a), Rhs::Num(b)) => (a - b).abs() <= MERGE_TOL,
                        _ => false,
                    }
            });
            if !dup {
                kept.push(r);
            }
        }
        self.rows = kept;
    }

    /// Rows as a label-free set of `(coefficients, rhs)` keys (symbolic mode).
    pub fn row_set(&self) -> BTreeSet<(Vec<Rational>, SymExpr)> {
        self.rows
            .iter()
            .filter_map(|r| r.rhs.as_sym().map(|e| (r.coeffs.clone(), e.clone())))
            .collect()
    }

    pub fn row_text(&self, row: &LinIneq) -> String {
        let mut s = String::new();
        let mut first = true;
        for (c, v) in row.coeffs.iter().zip(&self.variables) {
            if !c.is_zero() {
                let _ = write_term(&mut s, first, c, Some(v));
                first = false;
            }
        }
        if first {
            s.push('0');
        }
        s.push_str(" <= ");
        s.push_str(&row.rhs.to_string());
        s
    }

    /// Reads the line-oriented text form produced by `Display`.
    ///
    /// Blank lines and text after `#` are ignored.
    pub fn parse(mode: Mode, variables: &[&str], text: &str) -> Result<IneqSystem> {
        let mut sys = IneqSystem::new(mode, variables);
        for (ln, raw) in text.lines().enumerate() {
            let (line, label) = match raw.split_once('#') {
                Some((l, c)) => (l, c.trim()),
                None => (raw, ""),
            };
            if line.trim().is_empty() {
                continue;
            }
            let err = |m: &str| Error::Parse(format!("line {}: {m}", ln + 1));
            let (lhs, rhs) = line.split_once("<=").ok_or_else(|| err("missing `<=`"))?;
            let mut coeffs = vec![Rational::zero(); variables.len()];
            if lhs.trim() != "0" {
                for (neg, tok) in split_terms(lhs).map_err(|e| err(&e.to_string()))? {
                    let (c, v) = match tok.split_once('*') {
                        Some((c, v)) => (parse_rational(c).map_err(|e| err(&e.to_string()))?, v.trim()),
                        None => (Rational::one(), tok),
                    };
                    let i = sys.var_index(v).map_err(|e| err(&e.to_string()))?;
                    coeffs[i] += if neg { -c } else { c };
                }
            }
            let rhs = match mode {
                Mode::Symbolic => Rhs::Sym(SymExpr::parse(rhs).map_err(|e| err(&e.to_string()))?),
                Mode::Numeric => Rhs::Num(rhs.trim().parse::<f64>().map_err(|_| err("bad number"))?),
            };
            let label = if label.is_empty() { format!("row{}", sys.len() + 1) } else { label.to_string() };
            sys.push(LinIneq { coeffs, rhs, label })?;
        }
        Ok(sys)
    }

    /// Text form with each row's label as a trailing comment.
    pub fn to_labeled_text(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            s.push_str(&self.row_text(r));
            s.push_str("  # ");
            s.push_str(&r.label);
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for IneqSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{}", self.row_text(r))?;
        }
        Ok(())
    }
}
