use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{format_rational, parse_rational, to_f64, Rational};
use crate::{Error, Result};

/// Linear combination of named constants plus a rational offset.
///
/// Zero coefficients are never stored, so derived `Eq` is structural
/// equality of the canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymExpr {
    terms: BTreeMap<String, Rational>,
    offset: Rational,
}

impl SymExpr {
    pub fn zero() -> Self {
        SymExpr::default()
    }

    pub fn constant(c: Rational) -> Self {
        SymExpr { terms: BTreeMap::new(), offset: c }
    }

    pub fn symbol(name: &str) -> Self {
        SymExpr::term(name, Rational::one())
    }

    pub fn term(name: &str, coef: Rational) -> Self {
        let mut e = SymExpr::zero();
        e.add_term(name, coef);
        e
    }

    /// Sum of the given symbols, each with coefficient one.
    pub fn sum_of(names: &[&str]) -> Self {
        let mut e = SymExpr::zero();
        for n in names {
            e.add_term(n, Rational::one());
        }
        e
    }

    pub fn add_term(&mut self, name: &str, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(name.to_string()).or_insert_with(Rational::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.remove(name);
        }
    }

    pub fn terms(&self) -> &BTreeMap<String, Rational> {
        &self.terms
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn coef(&self, name: &str) -> Rational {
        self.terms.get(name).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.offset.is_zero()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.terms.keys().map(|s| s.as_str())
    }

    pub fn scaled(&self, k: &Rational) -> SymExpr {
        if k.is_zero() {
            return SymExpr::zero();
        }
        SymExpr {
            terms: self.terms.iter().map(|(n, c)| (n.clone(), c * k)).collect(),
            offset: &self.offset * k,
        }
    }

    pub fn rename(&self, f: impl Fn(&str) -> String) -> SymExpr {
        let mut e = SymExpr::constant(self.offset.clone());
        for (n, c) in &self.terms {
            e.add_term(&f(n), c.clone());
        }
        e
    }

    pub fn eval(&self, value: &dyn Fn(&str) -> Option<f64>) -> Result<f64> {
        let mut v = to_f64(&self.offset);
        for (n, c) in &self.terms {
            let x = value(n).ok_or_else(|| Error::MissingConstant(n.clone()))?;
            v += to_f64(c) * x;
        }
        Ok(v)
    }

    /// Parses `"2*A1 + E2 - 1/2"`; a bare `"0"` is the zero expression.
    pub fn parse(s: &str) -> Result<SymExpr> {
        let mut e = SymExpr::zero();
        for (sign, tok) in split_terms(s)? {
            let (coef, sym) = match tok.split_once('*') {
                Some((c, n)) => (parse_rational(c)?, Some(n.trim())),
                None if tok.starts_with(|c: char| c.is_ascii_alphabetic()) => (Rational::one(), Some(tok)),
                None => match tok.find(|c: char| c.is_ascii_alphabetic()) {
                    // "2A1" shorthand
                    Some(i) => (parse_rational(&tok[..i])?, Some(&tok[i..])),
                    None => (parse_rational(tok)?, None),
                },
            };
            let coef = if sign { -coef } else { coef };
            match sym {
                Some(n) => {
                    if n.is_empty() || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                        return Err(Error::Parse(format!("bad symbol {n:?} in {s:?}")));
                    }
                    e.add_term(n, coef)
                }
                None => e.offset += coef,
            }
        }
        Ok(e)
    }
}

/// Splits `"a - b + c"` into `(negated, token)` pairs.
pub(crate) fn split_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty expression".to_string()));
    }
    let mut out = Vec::new();
    let mut neg = false;
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut expect_term = true;
    while i < bytes.len() {
        let b = bytes[i];
        if (b == b'+' || b == b'-') && expect_term && s[start..i].trim().is_empty() {
            if b == b'-' {
                neg = !neg;
            }
            start = i + 1;
        } else if (b == b'+' || b == b'-') && !expect_term {
            out.push((neg, s[start..i].trim()));
            neg = b == b'-';
            start = i + 1;
            expect_term = true;
        } else if !b.is_ascii_whitespace() {
            expect_term = false;
        }
        i += 1;
    }
    let last = s[start..].trim();
    if last.is_empty() {
        return Err(Error::Parse(format!("dangling operator in {s:?}")));
    }
    out.push((neg, last));
    Ok(out)
}

pub(crate) fn write_term(f: &mut dyn fmt::Write, first: bool, c: &Rational, name: Option<&str>) -> fmt::Result {
    let neg = c.is_negative();
    let a = c.abs();
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
        (true, false) => {}
    }
    match name {
        Some(n) if a.is_one() => f.write_str(n),
        Some(n) => write!(f, "{}*{}", format_rational(&a), n),
        None => f.write_str(&format_rational(&a)),
    }
}

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (n, c) in &self.terms {
            write_term(f, first, c, Some(n))?;
            first = false;
        }
        if !self.offset.is_zero() {
            write_term(f, first, &self.offset, None)?;
        }
        Ok(())
    }
}

impl Add for &SymExpr {
    type Output = SymExpr;
    fn add(self, rhs: &SymExpr) -> SymExpr {
        let mut e = self.clone();
        for (n, c) in &rhs.terms {
            e.add_term(n, c.clone());
        }
        e.offset += &rhs.offset;
        e
    }
}

impl Sub for &SymExpr {
    type Output = SymExpr;
    fn sub(self, rhs: &SymExpr) -> SymExpr {
        self + &-rhs
    }
}

impl Neg for &SymExpr {
    type Output = SymExpr;
    fn neg(self) -> SymExpr {
        self.scaled(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn canonical_form() {
        let a = SymExpr::parse("A1 + C2").unwrap();
        let b = SymExpr::parse("C2 + A1 + E1 - E1").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "A1 + C2");
        assert!((&a - &b).is_zero());
    }

    #[test]
    fn parse_forms() {
        let e = SymExpr::parse("2*A1 + E2 - 1/2").unwrap();
        assert_eq!(e.coef("A1"), int(2));
        assert_eq!(e.offset(), &ratio(-1, 2));
        assert_eq!(e.to_string(), "2*A1 + E2 - 1/2");
        assert_eq!(SymExpr::parse("2A1 + 2E2").unwrap().coef("E2"), int(2));
        assert_eq!(SymExpr::parse("-A1").unwrap().coef("A1"), int(-1));
        assert!(SymExpr::parse("0").unwrap().is_zero());
        assert!(SymExpr::parse("A1 +").is_err());
    }

    #[test]
    fn eval_missing() {
        let e = SymExpr::parse("a1 + 2*b1").unwrap();
        let v = e.eval(&|n| if n == "a1" { Some(1.0) } else { Some(0.5) }).unwrap();
        assert_eq!(v, 2.0);
        assert!(e.eval(&|_| None).is_err());
    }
}
