//! Sparse exact-rational polynomials in graded indeterminates.
//!
//! Every indeterminate carries its own degree, so a polynomial is graded
//! without reference to any outside context. Monomials keep their factors
//! sorted by `(degree, index, family)` and a polynomial stores its terms in a
//! `BTreeMap`, so equality is syntactic and the text form is canonical.
//!
//! Text format: `3*c[1]^2 - 2*c[2]`, `1/2*N[1]^2 - 1/2*N[2]`, `x^3`. A
//! generator is a family letter followed by a bracketed index; a bare letter
//! is index 0. Degrees are not part of the text and are supplied by a
//! [`Grading`] when parsing.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub degree: u32,
    pub index: u32,
    pub family: char,
}

impl Var {
    pub fn new(family: char, index: u32, degree: u32) -> Self {
        Var {
            degree,
            index,
            family,
        }
    }

    /// Generator whose degree equals its index (`c[k]`, `N[k]`, ...).
    pub fn weighted(family: char, index: u32) -> Self {
        Var::new(family, index, index)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index == 0 {
            write!(f, "{}", self.family)
        } else {
            write!(f, "{}[{}]", self.family, self.index)
        }
    }
}

/// Product of generator powers; factors sorted, exponents positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn power(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_factors<I: IntoIterator<Item = (Var, u32)>>(factors: I) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in factors {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(v, e)| v.degree * e).sum()
    }

    /// Number of generator factors counted with multiplicity.
    pub fn length(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedPolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        GradedPolynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    /// Highest degree among the terms; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn homogeneous(&self, d: u32) -> Self {
        self.filter(|m| m.degree() == d)
    }

    pub fn truncated(&self, max_degree: u32) -> Self {
        self.filter(|m| m.degree() <= max_degree)
    }

    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Self {
        GradedPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GradedPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GradedPolynomial {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    /// Product with terms above `max_degree` dropped as they are formed.
    pub fn mul_truncated(&self, other: &Self, max_degree: u32) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            let d1 = m1.degree();
            if d1 > max_degree {
                continue;
            }
            for (m2, c2) in &other.terms {
                if d1 + m2.degree() <= max_degree {
                    out.add_term(m1.mul(m2), c1 * c2);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces every generator `v` for which `image(v)` is `Some` and keeps
    /// the others. Powers of each image are cached per call.
    pub fn substitute(&self, image: impl Fn(&Var) -> Option<GradedPolynomial>) -> Self {
        let mut powers: BTreeMap<(Var, u32), GradedPolynomial> = BTreeMap::new();
        let mut images: BTreeMap<Var, Option<GradedPolynomial>> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = Self::constant(c.clone());
            for &(v, e) in m.factors() {
                let img = images.entry(v).or_insert_with(|| image(&v)).clone();
                match img {
                    None => kept.push((v, e)),
                    Some(p) => {
                        let pw = powers
                            .entry((v, e))
                            .or_insert_with(|| p.pow(e))
                            .clone();
                        acc = &acc * &pw;
                    }
                }
            }
            let kept = Monomial::from_factors(kept);
            out += &acc.mul_monomial(&kept, &Rational::one());
        }
        out
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(v, _)| v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Parses the canonical text format, assigning degrees with `grading`.
    pub fn parse(text: &str, grading: &Grading) -> Result<Self> {
        Parser::new(text, grading).parse()
    }
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl FromStr for GradedPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GradedPolynomial::parse(s, &Grading::by_index())
    }
}

impl From<Rational> for GradedPolynomial {
    fn from(c: Rational) -> Self {
        GradedPolynomial::constant(c)
    }
}

impl<'a> Add<&'a GradedPolynomial> for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn add(self, rhs: &'a GradedPolynomial) -> GradedPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for GradedPolynomial {
    type Output = GradedPolynomial;
    fn add(mut self, rhs: GradedPolynomial) -> GradedPolynomial {
        self += &rhs;
        self
    }
}

impl<'a> AddAssign<&'a GradedPolynomial> for GradedPolynomial {
    fn add_assign(&mut self, rhs: &'a GradedPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<'a> SubAssign<&'a GradedPolynomial> for GradedPolynomial {
    fn sub_assign(&mut self, rhs: &'a GradedPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<'a> Sub<&'a GradedPolynomial> for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn sub(self, rhs: &'a GradedPolynomial) -> GradedPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for GradedPolynomial {
    type Output = GradedPolynomial;
    fn sub(mut self, rhs: GradedPolynomial) -> GradedPolynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn neg(self) -> GradedPolynomial {
        GradedPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for GradedPolynomial {
    type Output = GradedPolynomial;
    fn neg(self) -> GradedPolynomial {
        -&self
    }
}

impl<'a> Mul<&'a GradedPolynomial> for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn mul(self, rhs: &'a GradedPolynomial) -> GradedPolynomial {
        let mut out = GradedPolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for GradedPolynomial {
    type Output = GradedPolynomial;
    fn mul(self, rhs: GradedPolynomial) -> GradedPolynomial {
        &self * &rhs
    }
}

/// Assigns degrees to generators named in polynomial text.
#[derive(Clone, Debug, Default)]
pub struct Grading {
    scale: BTreeMap<char, u32>,
    explicit: BTreeMap<(char, u32), u32>,
    index_weight: bool,
}

impl Grading {
    /// Every indexed generator has degree equal to its index.
    pub fn by_index() -> Self {
        Grading {
            index_weight: true,
            ..Grading::default()
        }
    }

    /// Only generators registered with [`Grading::with_var`] or
    /// [`Grading::with_scale`] are accepted.
    pub fn strict() -> Self {
        Grading::default()
    }

    /// Generators of `family` get degree `factor * index`.
    pub fn with_scale(mut self, family: char, factor: u32) -> Self {
        self.scale.insert(family, factor);
        self
    }

    pub fn with_var(mut self, v: Var) -> Self {
        self.explicit.insert((v.family, v.index), v.degree);
        self
    }

    pub fn degree_of(&self, family: char, index: u32) -> Option<u32> {
        if let Some(&d) = self.explicit.get(&(family, index)) {
            return Some(d);
        }
        if index == 0 {
            return None;
        }
        if let Some(&s) = self.scale.get(&family) {
            return Some(s * index);
        }
        self.index_weight.then_some(index)
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    grading: &'a Grading,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, grading: &'a Grading) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            grading,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.pos, msg))
    }

    fn parse(mut self) -> Result<GradedPolynomial> {
        let mut out = GradedPolynomial::zero();
        if self.peek().is_none() {
            return self.err("empty polynomial");
        }
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    int(1)
                }
                Some(b'-') => {
                    self.pos += 1;
                    int(-1)
                }
                Some(_) if first => int(1),
                Some(_) => return self.err("expected '+' or '-'"),
                None => break,
            };
            first = false;
            let (m, c) = self.parse_term()?;
            out.add_term(m, c * sign);
        }
        Ok(out)
    }

    fn parse_term(&mut self) -> Result<(Monomial, Rational)> {
        let mut coeff = Rational::one();
        let mut factors = Vec::new();
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_digit() => coeff *= self.parse_number()?,
                Some(b) if b.is_ascii_alphabetic() => factors.push(self.parse_power()?),
                _ => return self.err("expected a number or a generator"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::from_factors(factors), coeff))
    }

    fn parse_uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(start, "integer out of range"))
    }

    fn parse_number(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let num: num_bigint::BigInt = self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(start, "bad integer"))?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let ds = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let den: num_bigint::BigInt = self.src[ds..self.pos]
                .parse()
                .map_err(|_| Error::parse(ds, "bad denominator"))?;
            if den.is_zero() {
                return Err(Error::parse(ds, "zero denominator"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn parse_power(&mut self) -> Result<(Var, u32)> {
        let v = self.parse_var()?;
        let e = if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.parse_uint()?;
            u32::try_from(e).map_err(|_| Error::parse(self.pos, "exponent too large"))?
        } else {
            1
        };
        Ok((v, e))
    }

    fn parse_var(&mut self) -> Result<Var> {
        self.skip_ws();
        let family = self.bytes[self.pos] as char;
        let at = self.pos;
        self.pos += 1;
        if self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
            return self.err("generator names are a single letter");
        }
        let index = if self.pos < self.bytes.len() && self.bytes[self.pos] == b'[' {
            self.pos += 1;
            let i = self.parse_uint()?;
            if self.peek() != Some(b']') {
                return self.err("expected ']'");
            }
            self.pos += 1;
            let i = u32::try_from(i).map_err(|_| Error::parse(at, "index too large"))?;
            if i == 0 {
                return Err(Error::parse(at, "bracketed index must be positive"));
            }
            i
        } else {
            0
        };
        match self.grading.degree_of(family, index) {
            Some(d) if d > 0 => Ok(Var::new(family, index, d)),
            _ => Err(Error::parse(
                at,
                format!("no degree known for generator {}", Var::new(family, index, 0)),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn c(k: u32) -> GradedPolynomial {
        GradedPolynomial::var(Var::weighted('c', k))
    }

    #[test]
    fn canonical_text_matches_example() {
        let p = (&c(1) * &c(1)).scale(&int(3)) - c(2).scale(&int(2));
        assert_eq!(p.to_string(), "3*c[1]^2 - 2*c[2]");
        assert_eq!("3*c[1]^2 - 2*c[2]".parse::<GradedPolynomial>().unwrap(), p);
    }

    #[test]
    fn parse_accepts_loose_spelling() {
        let p: GradedPolynomial = " - c[2]*2 + c[1] * 3 * c[1] + 0*c[3]".parse().unwrap();
        assert_eq!(p.to_string(), "3*c[1]^2 - 2*c[2]");
        let q: GradedPolynomial = "1/2*N[1]^2 - 1/2*N[2] + 4/8".parse().unwrap();
        assert_eq!(q.to_string(), "1/2 + 1/2*N[1]^2 - 1/2*N[2]");
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "c[", "c[0]", "3*", "c[1] c[2]", "1/0*c[1]", "x", "ab"] {
            assert!(bad.parse::<GradedPolynomial>().is_err(), "{bad:?}");
        }
        let grading = Grading::strict().with_var(Var::new('x', 0, 2));
        let p = GradedPolynomial::parse("1 + 3*x + 3*x^2", &grading).unwrap();
        assert_eq!(p.degree(), Some(4));
        assert_eq!(p.to_string(), "1 + 3*x + 3*x^2");
    }

    #[test]
    fn monomial_order_uses_degree_first() {
        let y = Var::new('y', 1, 6);
        let x = Var::new('x', 2, 2);
        let m = Monomial::from_factors([(y, 1), (x, 2)]);
        assert_eq!(m.to_string(), "x[2]^2*y[1]");
        assert_eq!(m.degree(), 10);
        assert_eq!(m.length(), 3);
    }

    #[test]
    fn substitution() {
        let p = &c(1) * &c(1) - c(2).scale(&int(2));
        let q = p.substitute(|v| (v.family == 'c').then(|| GradedPolynomial::var(Var::weighted('N', v.index))));
        assert_eq!(q.to_string(), "N[1]^2 - 2*N[2]");
        assert_eq!(q.substitute(|_| None), q);
    }

    #[test]
    fn truncated_product() {
        let a = GradedPolynomial::one() + c(1);
        let sq = a.mul_truncated(&a, 1);
        assert_eq!(sq.to_string(), "1 + 2*c[1]");
        assert_eq!(a.scale(&rat(0, 1)), GradedPolynomial::zero());
    }
}
