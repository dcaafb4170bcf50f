//! The quantum torus: skew Laurent arithmetic on monomials X^e twisted by a
//! skew-symmetric integer matrix, X^e * X^f = q^((1/2) e L f^T) X^(e+f).
//!
//! Elements are finite sums of monomials with [`QScalar`] coefficients, kept
//! in canonical form (no zero coefficients). Exact division is leading-term
//! elimination in the lexicographic order, bounded by the exponent box that
//! any true quotient must occupy.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::qring::{QScalar, ScalarParser};

/// An integer exponent vector; ordering is lexicographic.
#[derive(
    Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize,
)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn zeros(m: usize) -> Self {
        ExponentVector(vec![0; m])
    }

    /// Standard basis vector e_i (0-based index).
    pub fn basis(m: usize, i: usize) -> Self {
        let mut v = vec![0; m];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|a| -a).collect())
    }

    /// Componentwise positive and negative parts, e = pos - neg.
    pub fn split_signs(&self) -> (ExponentVector, ExponentVector) {
        let pos = ExponentVector(self.0.iter().map(|&a| a.max(0)).collect());
        let neg = ExponentVector(self.0.iter().map(|&a| (-a).max(0)).collect());
        (pos, neg)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, ")")
    }
}

/// Skew-symmetric m-by-m integer matrix defining the torus twist.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LambdaMatrix {
    entries: Vec<Vec<i64>>,
}

impl LambdaMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let m = entries.len();
        for row in &entries {
            if row.len() != m {
                return Err(Error::DimensionMismatch(format!(
                    "Lambda must be square, got row of length {} in a {}x{} matrix",
                    row.len(),
                    m,
                    m
                )));
            }
        }
        for i in 0..m {
            for j in 0..m {
                if entries[i][j] != -entries[j][i] {
                    return Err(Error::NotSkewSymmetric(i + 1, j + 1));
                }
            }
        }
        Ok(LambdaMatrix { entries })
    }

    pub fn zero(m: usize) -> Self {
        LambdaMatrix {
            entries: vec![vec![0; m]; m],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// The row vector e * Lambda.
    pub fn left_action(&self, e: &ExponentVector) -> Vec<i64> {
        let m = self.dim();
        let mut out = vec![0i64; m];
        for (i, &ei) in e.0.iter().enumerate() {
            if ei == 0 {
                continue;
            }
            for j in 0..m {
                out[j] += ei * self.entries[i][j];
            }
        }
        out
    }

    /// The twist exponent e * Lambda * f^T in half-units of q.
    pub fn twist(&self, e: &ExponentVector, f: &ExponentVector) -> Result<i64> {
        if e.len() != self.dim() || f.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "twist of vectors of lengths {} and {} against a {}x{} matrix",
                e.len(),
                f.len(),
                self.dim(),
                self.dim()
            )));
        }
        let row = self.left_action(e);
        Ok(row.iter().zip(&f.0).map(|(a, b)| a * b).sum())
    }

    pub fn is_invertible(&self) -> bool {
        !num_traits::Zero::is_zero(&crate::linalg::det_i64(&self.entries))
    }

    /// Restriction to a subset of indices (0-based), preserving order.
    pub fn restrict(&self, idx: &[usize]) -> LambdaMatrix {
        let entries = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.entries[i][j]).collect())
            .collect();
        LambdaMatrix { entries }
    }
}

/// Multiply the basis monomials X^e and X^f: returns the twist in half-units
/// together with the exponent sum.
pub fn monomial_mul(
    e: &ExponentVector,
    f: &ExponentVector,
    lambda: &LambdaMatrix,
) -> Result<(i64, ExponentVector)> {
    let twist = lambda.twist(e, f)?;
    Ok((twist, e.add(f)))
}

/// An element of the quantum torus in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusElement {
    dim: usize,
    terms: BTreeMap<ExponentVector, QScalar>,
}

impl TorusElement {
    pub fn zero(dim: usize) -> Self {
        TorusElement {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        TorusElement::monomial(ExponentVector::zeros(dim), QScalar::one())
    }

    pub fn scalar(dim: usize, c: QScalar) -> Self {
        TorusElement::monomial(ExponentVector::zeros(dim), c)
    }

    /// The basis monomial X^e.
    pub fn basis(e: ExponentVector) -> Self {
        TorusElement::monomial(e, QScalar::one())
    }

    pub fn monomial(e: ExponentVector, c: QScalar) -> Self {
        let dim = e.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        TorusElement { dim, terms }
    }

    pub fn from_terms(dim: usize, iter: impl IntoIterator<Item = (ExponentVector, QScalar)>) -> Self {
        let mut out = TorusElement::zero(dim);
        for (e, c) in iter {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: ExponentVector, c: QScalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(e.len(), self.dim);
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExponentVector, &QScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExponentVector) -> QScalar {
        self.terms.get(e).cloned().unwrap_or_else(QScalar::zero)
    }

    /// Lexicographically largest exponent.
    pub fn leading_exponent(&self) -> Option<&ExponentVector> {
        self.terms.keys().next_back()
    }

    /// The scalar content when the element is c * X^0; `None` otherwise.
    pub fn as_constant(&self) -> Option<QScalar> {
        if self.is_zero() {
            return Some(QScalar::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.is_zero() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn add(&self, other: &TorusElement) -> TorusElement {
        debug_assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TorusElement) -> TorusElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TorusElement {
        TorusElement {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &QScalar) -> TorusElement {
        if c.is_zero() {
            return TorusElement::zero(self.dim);
        }
        TorusElement::from_terms(
            self.dim,
            self.terms.iter().map(|(e, k)| (e.clone(), k.mul(c))),
        )
    }

    /// Twisted product: bilinear extension of the defining relation.
    pub fn elem_mul(&self, other: &TorusElement, lambda: &LambdaMatrix) -> Result<TorusElement> {
        if self.dim != other.dim || self.dim != lambda.dim() {
            return Err(Error::DimensionMismatch(format!(
                "product of elements of dims {} and {} over a {}x{} matrix",
                self.dim,
                other.dim,
                lambda.dim(),
                lambda.dim()
            )));
        }
        let mut out = TorusElement::zero(self.dim);
        for (e, ce) in &self.terms {
            let row = lambda.left_action(e);
            for (f, cf) in &other.terms {
                let twist: i64 = row.iter().zip(&f.0).map(|(a, b)| a * b).sum();
                out.add_term(e.add(f), ce.mul(cf).shifted(twist));
            }
        }
        Ok(out)
    }

    /// Integer power with nonnegative exponent.
    pub fn pow(&self, n: u32, lambda: &LambdaMatrix) -> Result<TorusElement> {
        let mut out = TorusElement::one(self.dim);
        for _ in 0..n {
            out = out.elem_mul(self, lambda)?;
        }
        Ok(out)
    }

    /// AB - BA.
    pub fn commutator(&self, other: &TorusElement, lambda: &LambdaMatrix) -> Result<TorusElement> {
        let ab = self.elem_mul(other, lambda)?;
        let ba = other.elem_mul(self, lambda)?;
        Ok(ab.sub(&ba))
    }

    /// Exact left-quotient: the unique C with `divisor * C = self` when it
    /// exists in the torus. Leading-term elimination in lexicographic order;
    /// a candidate quotient exponent escaping the box forced by the supports
    /// proves non-divisibility.
    pub fn exact_div(&self, divisor: &TorusElement, lambda: &LambdaMatrix) -> Result<TorusElement> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(TorusElement::zero(self.dim));
        }
        if self.dim != divisor.dim || self.dim != lambda.dim() {
            return Err(Error::DimensionMismatch(
                "exact_div dimensions disagree".into(),
            ));
        }
        let m = self.dim;
        // Per-coordinate bounds on any true quotient: in a twisted Laurent
        // ring the extreme exponents of a product add coordinatewise.
        let mut lo = vec![i64::MAX; m];
        let mut hi = vec![i64::MIN; m];
        for e in self.terms.keys() {
            for i in 0..m {
                lo[i] = lo[i].min(e.0[i]);
                hi[i] = hi[i].max(e.0[i]);
            }
        }
        let mut dlo = vec![i64::MAX; m];
        let mut dhi = vec![i64::MIN; m];
        for f in divisor.terms.keys() {
            for i in 0..m {
                dlo[i] = dlo[i].min(f.0[i]);
                dhi[i] = dhi[i].max(f.0[i]);
            }
        }
        for i in 0..m {
            lo[i] -= dlo[i];
            hi[i] -= dhi[i];
            if lo[i] > hi[i] {
                return Err(Error::NotDivisible);
            }
        }

        let fmax = divisor.leading_exponent().unwrap().clone();
        let clead = divisor.terms.get(&fmax).unwrap().clone();
        let mut rem = self.clone();
        let mut quot = TorusElement::zero(m);
        while !rem.is_zero() {
            let amax = rem.leading_exponent().unwrap().clone();
            let g = amax.sub(&fmax);
            if g.0.iter().enumerate().any(|(i, &x)| x < lo[i] || x > hi[i]) {
                return Err(Error::NotDivisible);
            }
            let twist = lambda.twist(&fmax, &g)?;
            let target = rem.terms.get(&amax).unwrap();
            let d = target
                .checked_div(&clead.shifted(twist))
                .ok_or(Error::NotDivisible)?;
            let step = TorusElement::monomial(g, d);
            rem = rem.sub(&divisor.elem_mul(&step, lambda)?);
            quot = quot.add(&step);
        }
        Ok(quot)
    }

    /// True when the element commutes with the whole torus, i.e. every
    /// monomial exponent e satisfies e * Lambda = 0.
    pub fn is_central(&self, lambda: &LambdaMatrix) -> bool {
        self.terms
            .keys()
            .all(|e| lambda.left_action(e).iter().all(|&x| x == 0))
    }

    /// Evaluate every coefficient at q^(1/2) = 1.
    pub fn specialize_q1(&self) -> BTreeMap<ExponentVector, BigInt> {
        self.terms
            .iter()
            .map(|(e, c)| (e.clone(), c.specialize_q1()))
            .filter(|(_, c)| !num_traits::Zero::is_zero(c))
            .collect()
    }

    /// Parse from the text form, e.g. `q^(1/2)*X^(1,-1) + 1`. The ambient
    /// dimension must be supplied because constants carry no exponent.
    pub fn parse(s: &str, dim: usize) -> Result<TorusElement> {
        let mut p = ScalarParser::new(s);
        let mut out = TorusElement::zero(dim);
        let mut first = true;
        loop {
            let sign = match p.peek() {
                None if first => {
                    return Err(Error::Parse("empty torus element".into()));
                }
                None => break,
                Some(b'+') => {
                    p.bump();
                    1
                }
                Some(b'-') => {
                    p.bump();
                    -1
                }
                Some(_) if first => 1,
                Some(c) => {
                    return Err(Error::Parse(format!(
                        "expected '+' or '-' between terms, found '{}'",
                        c as char
                    )));
                }
            };
            first = false;
            let (e, c) = parse_torus_term(&mut p, dim)?;
            let c = if sign < 0 { c.neg() } else { c };
            out.add_term(e, c);
        }
        Ok(out)
    }
}

fn parse_torus_term(p: &mut ScalarParser, dim: usize) -> Result<(ExponentVector, QScalar)> {
    let mut coeff = QScalar::one();
    let mut saw_scalar = false;
    match p.peek() {
        Some(b'(') => {
            p.bump();
            coeff = p.parse_sum()?;
            p.expect(b')')?;
            saw_scalar = true;
        }
        Some(c) if c.is_ascii_digit() || c == b'-' || c == b'q' => {
            // A single scalar factor such as `2`, `q^(1/2)` or `2*q^(1/2)`;
            // reuse the scalar parser on the longest scalar-shaped prefix.
            let start = p.pos;
            coeff = parse_single_scalar_factor(p)?;
            saw_scalar = p.pos > start;
        }
        _ => {}
    }
    if p.peek() == Some(b'*') {
        p.bump();
    }
    if p.peek() == Some(b'X') {
        p.bump();
        p.expect(b'^')?;
        p.expect(b'(')?;
        let mut entries = Vec::new();
        loop {
            let v = p.parse_integer()?;
            let v = i64::try_from(v).map_err(|_| Error::Parse("exponent too large".into()))?;
            entries.push(v);
            match p.peek() {
                Some(b',') => {
                    p.bump();
                }
                Some(b')') => {
                    p.bump();
                    break;
                }
                other => {
                    return Err(Error::Parse(format!(
                        "expected ',' or ')' in exponent, found {:?}",
                        other.map(|b| b as char)
                    )));
                }
            }
        }
        if entries.len() != dim {
            return Err(Error::Parse(format!(
                "exponent vector {} has length {}, expected {}",
                ExponentVector(entries.clone()),
                entries.len(),
                dim
            )));
        }
        Ok((ExponentVector(entries), coeff))
    } else if saw_scalar {
        Ok((ExponentVector::zeros(dim), coeff))
    } else {
        Err(Error::Parse(format!(
            "expected torus term at byte {}",
            p.pos
        )))
    }
}

/// A scalar factor made of an optional integer and an optional q-power,
/// e.g. `3`, `q^(-1/2)`, `3*q^(1/2)`, `-2`.
fn parse_single_scalar_factor(p: &mut ScalarParser) -> Result<QScalar> {
    let mut coeff: Option<BigInt> = None;
    if matches!(p.peek(), Some(c) if c.is_ascii_digit() || c == b'-') {
        coeff = Some(p.parse_integer()?);
    }
    let mut h = 0i64;
    let mut saw_q = false;
    let save = p.pos;
    let star = p.peek() == Some(b'*');
    if star {
        p.bump();
    }
    if p.peek() == Some(b'q') {
        p.bump();
        p.expect(b'^')?;
        p.expect(b'(')?;
        let hv = p.parse_integer()?;
        p.expect(b'/')?;
        let two = p.parse_integer()?;
        if two != BigInt::from(2) {
            return Err(Error::Parse("exponent must be written over 2".into()));
        }
        p.expect(b')')?;
        h = i64::try_from(hv).map_err(|_| Error::Parse("exponent too large".into()))?;
        saw_q = true;
    } else if star {
        // The '*' belongs to the X factor; hand it back.
        p.pos = save;
    }
    if coeff.is_none() && !saw_q {
        return Err(Error::Parse(format!("expected scalar at byte {}", p.pos)));
    }
    let c = coeff.unwrap_or_else(num_traits::One::one);
    let mut out = QScalar::zero();
    if !num_traits::Zero::is_zero(&c) {
        out = QScalar::from_bigint(c).mul(&QScalar::qpow(h));
    }
    Ok(out)
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Descending lexicographic order of exponents.
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let (sign_neg, body) = format_term(e, c);
            if i == 0 {
                if sign_neg {
                    write!(f, "-")?;
                }
            } else if sign_neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}", body)?;
        }
        Ok(())
    }
}

fn format_term(e: &ExponentVector, c: &QScalar) -> (bool, String) {
    use num_traits::Signed;
    if e.is_zero() {
        if c.num_terms() == 1 {
            let (h, k) = c.iter().next().unwrap();
            let neg = k.is_negative();
            let mag = QScalar::from_bigint(k.abs()).mul(&QScalar::qpow(*h));
            return (neg, mag.to_string());
        }
        return (false, format!("({})", c));
    }
    if c.is_one() {
        return (false, format!("X^{}", e));
    }
    if c.num_terms() == 1 {
        let (h, k) = c.iter().next().unwrap();
        let neg = k.is_negative();
        let mag = QScalar::from_bigint(k.abs()).mul(&QScalar::qpow(*h));
        if mag.is_one() {
            return (neg, format!("X^{}", e));
        }
        return (neg, format!("{}*X^{}", mag, e));
    }
    (false, format!("({})*X^{}", c, e))
}

/// All exponent vectors of length `m` with entries bounded by `radius` in
/// absolute value, in ascending lexicographic order.
pub fn window_exponents(m: usize, radius: i64) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    let mut cur = vec![-radius; m];
    if m == 0 {
        return vec![ExponentVector(Vec::new())];
    }
    loop {
        out.push(ExponentVector(cur.clone()));
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < radius {
                cur[i] += 1;
                for x in cur[i + 1..].iter_mut() {
                    *x = -radius;
                }
                break;
            }
        }
    }
}

/// All window exponents e with e * Lambda = 0; for invertible Lambda this is
/// exactly the zero vector.
pub fn central_exponents(lambda: &LambdaMatrix, window_radius: i64) -> Vec<ExponentVector> {
    window_exponents(lambda.dim(), window_radius)
        .into_iter()
        .filter(|e| lambda.left_action(e).iter().all(|&x| x == 0))
        .collect()
}
