//! Exact arithmetic in the commutative coefficient ring Z[q^(1/2), q^(-1/2)].
//!
//! Every scalar in this crate is a Laurent polynomial in the formal square
//! root of q, with arbitrary-precision integer coefficients. Exponents are
//! kept in half-units: the stored key `h` stands for q^(h/2), so all exponent
//! bookkeeping stays in plain integer arithmetic.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of Z[q^(1/2), q^(-1/2)] in canonical form: a finite map from
/// half-unit exponents to nonzero integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct QScalar {
    terms: BTreeMap<i64, BigInt>,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        QScalar::from_int(1)
    }

    /// The monomial q^(h/2).
    pub fn qpow(h: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(h, BigInt::one());
        QScalar { terms }
    }

    pub fn from_int(n: i64) -> Self {
        QScalar::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !n.is_zero() {
            terms.insert(0, n);
        }
        QScalar { terms }
    }

    /// Single term c * q^(h/2).
    pub fn term(c: i64, h: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(h, BigInt::from(c));
        }
        QScalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    /// True when the scalar is a single term c * q^(h/2).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &QScalar) -> QScalar {
        let mut terms = self.terms.clone();
        for (h, c) in &other.terms {
            let entry = terms.entry(*h).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(h);
            }
        }
        QScalar { terms }
    }

    pub fn sub(&self, other: &QScalar) -> QScalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QScalar {
        QScalar {
            terms: self.terms.iter().map(|(h, c)| (*h, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &QScalar) -> QScalar {
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (ha, ca) in &self.terms {
            for (hb, cb) in &other.terms {
                let entry = terms.entry(ha + hb).or_insert_with(BigInt::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        QScalar { terms }
    }

    /// Multiply by q^(h/2).
    pub fn shifted(&self, h: i64) -> QScalar {
        QScalar {
            terms: self.terms.iter().map(|(k, c)| (k + h, c.clone())).collect(),
        }
    }

    /// Exact division in Z[q^(1/2), q^(-1/2)]; `None` when no exact quotient
    /// exists (the ring is not a field).
    pub fn checked_div(&self, divisor: &QScalar) -> Option<QScalar> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(QScalar::zero());
        }
        let amin = *self.terms.keys().next().unwrap();
        let bmin = *divisor.terms.keys().next().unwrap();
        let bmax = *divisor.terms.keys().next_back().unwrap();
        let blead = divisor.terms.get(&bmax).unwrap();

        let mut rem = self.clone();
        let mut quot = QScalar::zero();
        while !rem.is_zero() {
            let rmax = *rem.terms.keys().next_back().unwrap();
            let step_h = rmax - bmax;
            // Exponents of a valid quotient live in [amin - bmin, amax - bmax].
            if step_h < amin - bmin {
                return None;
            }
            let rlead = rem.terms.get(&rmax).unwrap();
            let (c, r) = num_integer::div_rem(rlead.clone(), blead.clone());
            if !r.is_zero() {
                return None;
            }
            let mut step_terms = BTreeMap::new();
            step_terms.insert(step_h, c);
            let step = QScalar { terms: step_terms };
            rem = rem.sub(&step.mul(divisor));
            quot = quot.add(&step);
        }
        Some(quot)
    }

    /// Evaluate at q^(1/2) = 1 (the classical specialization).
    pub fn specialize_q1(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (h, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *h == 0 {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "q^({}/2)", h)?;
            } else {
                write!(f, "{}*q^({}/2)", mag, h)?;
            }
        }
        Ok(())
    }
}

impl FromStr for QScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<QScalar> {
        let mut parser = ScalarParser::new(s);
        let v = parser.parse_sum()?;
        parser.expect_end()?;
        Ok(v)
    }
}

pub(crate) struct ScalarParser<'a> {
    chars: &'a [u8],
    pub(crate) pos: usize,
}

impl<'a> ScalarParser<'a> {
    pub(crate) fn new(s: &'a str) -> Self {
        ScalarParser {
            chars: s.as_bytes(),
            pos: 0,
        }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    pub(crate) fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    pub(crate) fn expect(&mut self, c: u8) -> Result<()> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            got => Err(Error::Parse(format!(
                "expected '{}' at byte {}, found {:?}",
                c as char,
                self.pos,
                got.map(|b| b as char)
            ))),
        }
    }

    pub(crate) fn expect_end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(Error::Parse(format!(
                "trailing input at byte {}: '{}'",
                self.pos, c as char
            ))),
        }
    }

    pub(crate) fn parse_integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&b'-') || self.chars.get(self.pos) == Some(&b'+') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self
            .chars
            .get(self.pos)
            .map(|c| c.is_ascii_digit())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(Error::Parse(format!("expected integer at byte {}", start)));
        }
        let text = std::str::from_utf8(&self.chars[start..self.pos]).unwrap();
        text.parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer '{}': {}", text, e)))
    }

    /// One summand: `c`, `q^(h/2)`, or `c*q^(h/2)` (the `*` is optional).
    fn parse_term(&mut self) -> Result<QScalar> {
        let mut coeff = BigInt::one();
        let mut saw_coeff = false;
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'-' || c == b'+' => {
                coeff = self.parse_integer()?;
                saw_coeff = true;
            }
            _ => {}
        }
        if self.peek() == Some(b'*') {
            self.bump();
        }
        if self.peek() == Some(b'q') {
            self.bump();
            self.expect(b'^')?;
            self.expect(b'(')?;
            let h = self.parse_integer()?;
            self.expect(b'/')?;
            let two = self.parse_integer()?;
            if two != BigInt::from(2) {
                return Err(Error::Parse("exponent must be written over 2".into()));
            }
            self.expect(b')')?;
            let h = i64::try_from(h).map_err(|_| Error::Parse("exponent too large".into()))?;
            let mut terms = BTreeMap::new();
            if !coeff.is_zero() {
                terms.insert(h, coeff);
            }
            Ok(QScalar { terms })
        } else if saw_coeff {
            Ok(QScalar::from_bigint(coeff))
        } else {
            Err(Error::Parse(format!(
                "expected scalar term at byte {}",
                self.pos
            )))
        }
    }

    pub(crate) fn parse_sum(&mut self) -> Result<QScalar> {
        let mut acc = self.parse_signed_term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.bump();
                    acc = acc.add(&self.parse_term()?);
                }
                b'-' => {
                    self.bump();
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_signed_term(&mut self) -> Result<QScalar> {
        if self.peek() == Some(b'-') {
            // A leading minus may belong to the coefficient itself.
            let save = self.pos;
            self.bump();
            if self.peek() == Some(b'q') {
                return Ok(self.parse_term()?.neg());
            }
            self.pos = save;
        }
        self.parse_term()
    }
}
