//! Quasisymmetric functions, noncommutative symmetric functions and free
//! algebra Hilbert series.
//!
//! `QSymm` uses the monomial basis `M_α` with the quasi-shuffle product and
//! the deconcatenation coproduct. `NSymm` is the free associative algebra on
//! generators `Z_n` of weight `n`; a word is stored as the composition of its
//! letter weights. The pairing `<w, M_α> = δ(w, α)` makes concatenation dual
//! to deconcatenation.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinat::{compositions_with_parts, Composition};
use crate::error::{Error, Result};
use crate::rational::{binomial, format_rational, parse_rational, Rational};
use crate::series::UniSeries;
use crate::symm::{convert, SymmBasis, SymmFn};

type Terms = BTreeMap<Composition, Rational>;

fn push(terms: &mut Terms, key: Composition, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = terms.entry(key.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        terms.remove(&key);
    }
}

/// Element of `QSymm` in the monomial quasisymmetric basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QSymm {
    coeffs: Terms,
}

impl QSymm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Composition::empty())
    }

    pub fn monomial(alpha: Composition) -> Self {
        Self::from_terms([(alpha, Rational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Composition, Rational)>) -> Self {
        let mut coeffs = Terms::new();
        for (a, c) in terms {
            push(&mut coeffs, a, c);
        }
        QSymm { coeffs }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &Rational)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, alpha: &Composition) -> Rational {
        self.coeffs.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.coeffs {
            push(&mut out.coeffs, a.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(a, x)| (a.clone(), x * c)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        quasi_shuffle(self, other)
    }
}

impl fmt::Display for QSymm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, "M")
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &Terms, symbol: &str) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (a, c)) in terms.iter().enumerate() {
        match (i, c.is_negative()) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        let abs = c.abs();
        if abs.is_one() {
            write!(f, "{symbol}{a}")?;
        } else {
            write!(f, "{}*{symbol}{a}", format_rational(&abs))?;
        }
    }
    Ok(())
}

/// Parses `c1*S(α1) + c2*S(α2) - ...` where `S` is the basis symbol.
fn parse_terms(text: &str, symbol: char) -> Result<Terms> {
    let mut out = Terms::new();
    let s = text.trim();
    if s == "0" {
        return Ok(out);
    }
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut first = true;
    while i < bytes.len() {
        while i < bytes.len() && bytes[i].is_whitespace() {
            i += 1;
        }
        let mut sign = Rational::one();
        if i < bytes.len() && (bytes[i] == '+' || bytes[i] == '-') {
            if bytes[i] == '-' {
                sign = -sign;
            }
            i += 1;
        } else if !first {
            return Err(Error::parse(i, "expected '+' or '-' between terms"));
        }
        first = false;
        while i < bytes.len() && bytes[i].is_whitespace() {
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i] != symbol {
            i += 1;
        }
        let prefix: String = bytes[start..i].iter().collect();
        let prefix = prefix.trim();
        let coeff = if prefix.is_empty() {
            Rational::one()
        } else {
            let num = prefix
                .strip_suffix('*')
                .ok_or_else(|| Error::parse(start, "expected '*' between coefficient and basis element"))?;
            parse_rational(num).ok_or_else(|| Error::parse(start, format!("bad coefficient {num:?}")))?
        };
        if i >= bytes.len() {
            return Err(Error::parse(i, format!("expected {symbol}(...)")));
        }
        let open = i + 1;
        let close = bytes[open..]
            .iter()
            .position(|&ch| ch == ')')
            .map(|p| open + p)
            .ok_or_else(|| Error::parse(open, "unclosed parenthesis"))?;
        let body: String = bytes[open..=close].iter().collect();
        let alpha: Composition = body.parse().map_err(|e| match e {
            Error::Parse { message, .. } => Error::parse(open, message),
            other => other,
        })?;
        push(&mut out, alpha, sign * coeff);
        i = close + 1;
    }
    Ok(out)
}

impl FromStr for QSymm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(QSymm {
            coeffs: parse_terms(s, 'M')?,
        })
    }
}

fn shuffle_compositions(a: &[u32], b: &[u32], memo: &mut HashMap<(Vec<u32>, Vec<u32>), Terms>) -> Terms {
    if a.is_empty() || b.is_empty() {
        let mut parts = a.to_vec();
        parts.extend_from_slice(b);
        return Terms::from([(Composition::new(parts).expect("positive parts"), Rational::one())]);
    }
    let key = (a.to_vec(), b.to_vec());
    if let Some(t) = memo.get(&key) {
        return t.clone();
    }
    let mut out = Terms::new();
    let prepend = |head: u32, rest: Terms, out: &mut Terms| {
        for (c, x) in rest {
            let mut parts = vec![head];
            parts.extend_from_slice(c.parts());
            push(out, Composition::new(parts).expect("positive parts"), x);
        }
    };
    prepend(a[0], shuffle_compositions(&a[1..], b, memo), &mut out);
    prepend(b[0], shuffle_compositions(a, &b[1..], memo), &mut out);
    prepend(a[0] + b[0], shuffle_compositions(&a[1..], &b[1..], memo), &mut out);
    memo.insert(key, out.clone());
    out
}

/// `M_α · M_β`, with `(a,α')*(b,β') = a(α'*β) + b(α*β') + (a+b)(α'*β')`.
pub fn quasi_shuffle(a: &QSymm, b: &QSymm) -> QSymm {
    let mut memo = HashMap::new();
    let mut out = Terms::new();
    for (x, cx) in &a.coeffs {
        for (y, cy) in &b.coeffs {
            for (z, n) in shuffle_compositions(x.parts(), y.parts(), &mut memo) {
                push(&mut out, z, cx * cy * n);
            }
        }
    }
    QSymm { coeffs: out }
}

/// Element of `QSymm ⊗ QSymm`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QSymmTensor {
    terms: BTreeMap<(Composition, Composition), Rational>,
}

impl QSymmTensor {
    pub fn add_term(&mut self, left: Composition, right: Composition, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let e = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Composition, Composition), &Rational)> {
        self.terms.iter()
    }

    /// Product in the tensor-square algebra, quasi-shuffling each side.
    pub fn mul(&self, other: &Self) -> Self {
        let mut memo = HashMap::new();
        let mut out = QSymmTensor::default();
        for ((l1, r1), a) in &self.terms {
            for ((l2, r2), b) in &other.terms {
                let left = shuffle_compositions(l1.parts(), l2.parts(), &mut memo);
                let right = shuffle_compositions(r1.parts(), r2.parts(), &mut memo);
                for (l, x) in &left {
                    for (r, y) in &right {
                        out.add_term(l.clone(), r.clone(), a * b * x * y);
                    }
                }
            }
        }
        out
    }
}

/// `Δ M_α = Σ_{α = β·γ} M_β ⊗ M_γ`.
pub fn deconcatenation(a: &QSymm) -> QSymmTensor {
    let mut out = QSymmTensor::default();
    for (alpha, c) in &a.coeffs {
        for (l, r) in alpha.splits() {
            out.add_term(l, r, c.clone());
        }
    }
    out
}

/// Element of `NSymm`: words in the generators `Z_n`, keyed by the
/// composition of letter weights.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NSymm {
    coeffs: Terms,
}

impl NSymm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Composition::empty())
    }

    pub fn word(w: Composition) -> Self {
        Self::from_terms([(w, Rational::one())])
    }

    /// The single-letter word `Z_n`.
    pub fn generator(n: u32) -> Result<Self> {
        Ok(Self::word(Composition::new(vec![n])?))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Composition, Rational)>) -> Self {
        let mut coeffs = Terms::new();
        for (w, c) in terms {
            push(&mut coeffs, w, c);
        }
        NSymm { coeffs }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            push(&mut out.coeffs, w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(w, x)| (w.clone(), x * c)))
    }

    /// Concatenation product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Terms::new();
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                push(&mut out, a.concat(b), x * y);
            }
        }
        NSymm { coeffs: out }
    }
}

impl fmt::Display for NSymm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, "Z")
    }
}

impl FromStr for NSymm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(NSymm {
            coeffs: parse_terms(s, 'Z')?,
        })
    }
}

/// `<w, M_α> = δ(w, α)`, extended bilinearly.
pub fn pairing(a: &NSymm, x: &QSymm) -> Rational {
    a.coeffs
        .iter()
        .filter_map(|(w, c)| x.coeffs.get(w).map(|d| c * d))
        .sum()
}

/// `<a ⊗ b, t>` for `t` in `QSymm ⊗ QSymm`.
pub fn pairing_tensor(a: &NSymm, b: &NSymm, t: &QSymmTensor) -> Rational {
    t.terms
        .iter()
        .map(|((l, r), c)| {
            let x = a.coeffs.get(l).cloned().unwrap_or_else(Rational::zero);
            let y = b.coeffs.get(r).cloned().unwrap_or_else(Rational::zero);
            c * x * y
        })
        .sum()
}

/// Ring map `NSymm -> Symm` sending the word `(i1, ..., ik)` to `h_{i1} ... h_{ik}`.
pub fn abelianize(a: &NSymm) -> SymmFn {
    SymmFn::from_terms(
        SymmBasis::H,
        a.coeffs.iter().map(|(w, c)| (w.to_partition(), c.clone())),
    )
}

/// Inclusion `Symm -> QSymm`: `m_λ` goes to the sum of `M_α` over the
/// distinct rearrangements `α` of `λ`. Inputs in other bases are converted
/// to the monomial basis first.
pub fn symm_into_qsymm(f: &SymmFn) -> QSymm {
    let m = convert(f, SymmBasis::M);
    let mut out = Terms::new();
    for (lambda, c) in m.terms() {
        for alpha in lambda.rearrangements() {
            push(&mut out, alpha, c.clone());
        }
    }
    QSymm { coeffs: out }
}

/// Allowed generator weights of a free algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorProfile {
    /// Every positive weight.
    All,
    /// `start, start + step, start + 2 step, ...`
    Arithmetic { start: u32, step: u32 },
    Explicit(BTreeSet<u32>),
}

impl GeneratorProfile {
    pub fn arithmetic(start: u32, step: u32) -> Result<Self> {
        if start == 0 || step == 0 {
            return Err(Error::domain("arithmetic profile needs positive start and step"));
        }
        Ok(GeneratorProfile::Arithmetic { start, step })
    }

    pub fn explicit(weights: impl IntoIterator<Item = u32>) -> Result<Self> {
        let set: BTreeSet<u32> = weights.into_iter().collect();
        if set.is_empty() {
            return Err(Error::domain("generator profile must be nonempty"));
        }
        if set.contains(&0) {
            return Err(Error::domain("generator weights must be positive"));
        }
        Ok(GeneratorProfile::Explicit(set))
    }

    pub fn contains(&self, w: u32) -> bool {
        match self {
            GeneratorProfile::All => w > 0,
            GeneratorProfile::Arithmetic { start, step } => w >= *start && (w - start) % step == 0,
            GeneratorProfile::Explicit(set) => set.contains(&w),
        }
    }

    /// Allowed weights not exceeding `n`, increasing.
    pub fn letters_up_to(&self, n: u32) -> Vec<u32> {
        (1..=n).filter(|&w| self.contains(w)).collect()
    }
}

impl FromStr for GeneratorProfile {
    type Err = Error;
    /// `all`, `arithmetic:START:STEP`, or a comma-separated weight list.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("all") {
            return Ok(GeneratorProfile::All);
        }
        if let Some(rest) = s.strip_prefix("arithmetic:") {
            let (a, b) = rest
                .split_once(':')
                .ok_or_else(|| Error::parse(0, "expected arithmetic:START:STEP"))?;
            let a = a.trim().parse().map_err(|_| Error::parse(0, "bad start"))?;
            let b = b.trim().parse().map_err(|_| Error::parse(0, "bad step"))?;
            return GeneratorProfile::arithmetic(a, b);
        }
        let weights: std::result::Result<Vec<u32>, _> = s.split(',').map(|w| w.trim().parse()).collect();
        let weights = weights.map_err(|_| Error::parse(0, format!("bad profile {s:?}")))?;
        GeneratorProfile::explicit(weights)
    }
}

/// Enumerates the Lyndon words of total weight `n` over the profile's
/// letters (ordered by weight), calling `visit` on each.
///
/// Words are grown letter by letter, keeping only prefixes of Lyndon words:
/// with `p` the period of the current prefix, a new letter equal to the one
/// `p` places back keeps the period, a larger one makes the whole prefix
/// its own period, and a smaller one can never be completed.
fn for_each_lyndon(n: u32, profile: &GeneratorProfile, visit: &mut dyn FnMut(&[u32])) {
    fn go(rest: u32, letters: &[u32], word: &mut Vec<u32>, period: usize, visit: &mut dyn FnMut(&[u32])) {
        if rest == 0 {
            if period == word.len() {
                visit(word);
            }
            return;
        }
        for &a in letters.iter().take_while(|&&a| a <= rest) {
            let next_period = if word.is_empty() {
                1
            } else {
                let back = word[word.len() - period];
                match a.cmp(&back) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => period,
                    std::cmp::Ordering::Greater => word.len() + 1,
                }
            };
            word.push(a);
            go(rest - a, letters, word, next_period, visit);
            word.pop();
        }
    }
    let letters = profile.letters_up_to(n);
    go(n, &letters, &mut Vec::new(), 0, visit);
}

/// All Lyndon words of weight `n` over the profile alphabet, sorted.
pub fn lyndon_generators(n: u32, profile: &GeneratorProfile) -> Result<Vec<Composition>> {
    if n == 0 {
        return Err(Error::domain("weight must be at least 1"));
    }
    let mut out = Vec::new();
    for_each_lyndon(n, profile, &mut |w| {
        out.push(Composition::new(w.to_vec()).expect("positive letters"))
    });
    out.sort();
    Ok(out)
}

pub fn lyndon_count(n: u32, profile: &GeneratorProfile) -> u64 {
    let mut count = 0u64;
    if n > 0 {
        for_each_lyndon(n, profile, &mut |_| count += 1);
    }
    count
}

/// Compositions of `n` whose parts are allowed by the profile.
pub fn profile_words(n: u32, profile: &GeneratorProfile) -> Vec<Composition> {
    compositions_with_parts(n, &|p| profile.contains(p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HilbertFlavor {
    /// Free associative algebra: word counts.
    Associative,
    /// Free Lie algebra, from the logarithm of the associative series.
    Lie,
    /// Free commutative algebra on the Lyndon words.
    PolynomialOnLyndon,
}

impl HilbertFlavor {
    pub fn name(self) -> &'static str {
        match self {
            HilbertFlavor::Associative => "associative",
            HilbertFlavor::Lie => "lie",
            HilbertFlavor::PolynomialOnLyndon => "polynomial-on-lyndon",
        }
    }
}

impl FromStr for HilbertFlavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "associative" => Ok(HilbertFlavor::Associative),
            "lie" => Ok(HilbertFlavor::Lie),
            "polynomial-on-lyndon" => Ok(HilbertFlavor::PolynomialOnLyndon),
            _ => Err(Error::domain(format!(
                "unknown flavor {s:?} (expected associative, lie or polynomial-on-lyndon)"
            ))),
        }
    }
}

/// Dimensions in degrees `0..=bound`.
pub fn free_algebra_hilbert(profile: &GeneratorProfile, bound: u32, flavor: HilbertFlavor) -> Result<Vec<BigInt>> {
    if bound == 0 {
        return Err(Error::domain("bound must be at least 1"));
    }
    let d = bound as usize;
    let mut assoc = vec![BigInt::zero(); d + 1];
    assoc[0] = BigInt::one();
    for n in 1..=d {
        for a in profile.letters_up_to(n as u32) {
            assoc[n] = &assoc[n] + &assoc[n - a as usize];
        }
    }
    match flavor {
        HilbertFlavor::Associative => Ok(assoc),
        HilbertFlavor::Lie => {
            let series = UniSeries::new(assoc.iter().map(|a| Rational::from_integer(a.clone())).collect());
            let log = series.log()?;
            let mut lie = vec![BigInt::zero(); d + 1];
            for n in 1..=d {
                let mut acc = Rational::zero();
                for k in (1..=n).filter(|k| n % k == 0) {
                    let mu = mobius((n / k) as u64);
                    if mu != 0 {
                        acc += log.coeff(k as u32) * Rational::from_integer(BigInt::from(mu * k as i64));
                    }
                }
                let value = acc / Rational::from_integer(BigInt::from(n));
                if !value.is_integer() {
                    return Err(Error::domain("free Lie dimension is not an integer"));
                }
                lie[n] = value.to_integer();
            }
            Ok(lie)
        }
        HilbertFlavor::PolynomialOnLyndon => {
            let mut out = vec![BigInt::zero(); d + 1];
            out[0] = BigInt::one();
            for n in 1..=d {
                let g = lyndon_count(n as u32, profile);
                if g == 0 {
                    continue;
                }
                let g = g.to_u32().ok_or_else(|| Error::domain("too many Lyndon words"))?;
                // Multiply by (1 - t^n)^{-g} = Σ_j C(g + j - 1, j) t^{nj}.
                let factor: Vec<BigInt> = (0..=d / n).map(|j| binomial(g + j as u32 - 1, j as u32)).collect();
                let mut next = vec![BigInt::zero(); d + 1];
                for (i, a) in out.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                    for (j, f) in factor.iter().enumerate() {
                        let k = i + n * j;
                        if k > d {
                            break;
                        }
                        next[k] += a * f;
                    }
                }
                out = next;
            }
            Ok(out)
        }
    }
}

/// Möbius function.
pub fn mobius(mut n: u64) -> i64 {
    if n == 1 {
        return 1;
    }
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::Partition;
    use crate::rational::int;

    fn c(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn m(parts: &[u32]) -> QSymm {
        QSymm::monomial(c(parts))
    }

    #[test]
    fn quasi_shuffle_examples() {
        assert_eq!(m(&[1]).mul(&m(&[1])).to_string(), "2*M(1,1) + M(2)");
        assert_eq!(m(&[2]).mul(&m(&[3])).to_string(), "M(2,3) + M(3,2) + M(5)");
        let x: QSymm = "M(1,2) - 3*M(4)".parse().unwrap();
        assert_eq!(QSymm::one().mul(&x), x);
        assert_eq!(x.to_string(), "M(1,2) - 3*M(4)");
    }

    #[test]
    fn deconcatenation_examples() {
        let d = deconcatenation(&m(&[1, 2]));
        let keys: Vec<_> = d.terms().map(|((l, r), _)| (l.to_string(), r.to_string())).collect();
        assert_eq!(keys.len(), 3);
        assert!(keys.contains(&("(1)".into(), "(2)".into())));
        let lhs = deconcatenation(&m(&[1]).mul(&m(&[1])));
        let rhs = deconcatenation(&m(&[1])).mul(&deconcatenation(&m(&[1])));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inclusion_and_abelianization() {
        let f = SymmFn::basis_element(SymmBasis::M, Partition::new(vec![2, 1]));
        assert_eq!(symm_into_qsymm(&f).to_string(), "M(1,2) + M(2,1)");
        let n2 = SymmFn::generator(SymmBasis::P, 2);
        assert_eq!(symm_into_qsymm(&n2), m(&[2]));
        let w: NSymm = "Z(2,3) - Z(3,2)".parse().unwrap();
        assert!(abelianize(&w).is_zero());
        let z1 = NSymm::generator(1).unwrap();
        let x = z1.mul(&z1).add(&NSymm::generator(2).unwrap().scale(&int(-2)));
        assert_eq!(abelianize(&x).to_string(), "h[1]^2 - 2*h[2]");
    }

    #[test]
    fn lyndon_examples() {
        let all = GeneratorProfile::All;
        assert_eq!(lyndon_generators(2, &all).unwrap(), vec![c(&[2])]);
        assert_eq!(lyndon_generators(3, &all).unwrap(), vec![c(&[1, 2]), c(&[3])]);
        let odd = GeneratorProfile::arithmetic(3, 2).unwrap();
        assert!(lyndon_generators(1, &odd).unwrap().is_empty());
        assert!(lyndon_generators(0, &all).is_err());
    }

    #[test]
    fn hilbert_examples() {
        let all = GeneratorProfile::All;
        let a = free_algebra_hilbert(&all, 4, HilbertFlavor::Associative).unwrap();
        assert_eq!(a, [1, 1, 2, 4, 8].map(BigInt::from).to_vec());
        let odd = GeneratorProfile::arithmetic(3, 2).unwrap();
        let a = free_algebra_hilbert(&odd, 8, HilbertFlavor::Associative).unwrap();
        assert_eq!(a[3..], [1, 0, 1, 1, 1, 2].map(BigInt::from));
        let p = free_algebra_hilbert(&all, 12, HilbertFlavor::PolynomialOnLyndon).unwrap();
        for n in 1..=12 {
            assert_eq!(p[n], BigInt::from(1u64 << (n - 1)));
        }
        let lie = free_algebra_hilbert(&all, 10, HilbertFlavor::Lie).unwrap();
        for n in 1..=10 {
            assert_eq!(lie[n], BigInt::from(lyndon_count(n as u32, &all)));
        }
    }

    #[test]
    fn profile_parsing() {
        assert_eq!("all".parse::<GeneratorProfile>().unwrap(), GeneratorProfile::All);
        assert!("arithmetic:5:4".parse::<GeneratorProfile>().unwrap().contains(9));
        assert!("3,5".parse::<GeneratorProfile>().unwrap().contains(5));
        assert!("0".parse::<GeneratorProfile>().is_err());
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
    }
}
