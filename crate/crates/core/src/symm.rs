//! The Hopf algebra of symmetric functions over the rationals.
//!
//! Four bases are supported: elementary (`c[k]`, the Chern classes),
//! power sums (`N[k]`, the Newton polynomials), complete homogeneous (`h[k]`)
//! and monomial (`m_λ`). An element is a linear combination of partitions
//! together with its basis tag; in the three multiplicative bases the
//! partition `λ` stands for the product of generators `g_{λ_1} g_{λ_2} ...`.
//!
//! Generator index always means polynomial weight. The topological degree of
//! a weight-`k` class is `2k`, so the "degree 4k+2" classes of `B(U/SO)` are
//! the odd weights here.
//!
//! Basis changes go through the elementary basis: Newton's identities give
//! the generator images for the power-sum and complete bases, and the
//! monomial basis uses the 0-1 matrix expansion of `e_μ` together with its
//! unitriangularity.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combinat::{partitions, partitions_with_parts, Partition};
use crate::error::{Error, Result};
use crate::linalg::{SparseEchelon, SparseVec};
use crate::poly::{GradedPolynomial, Monomial, Var};
use crate::rational::{binomial, format_rational, int, rat, Rational};
use crate::series::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymmBasis {
    /// Elementary symmetric functions, identified with Chern classes `c[k]`.
    E,
    /// Power sums, identified with Newton polynomials `N[k]`.
    P,
    /// Complete homogeneous symmetric functions `h[k]`.
    H,
    /// Monomial symmetric functions `m_λ`.
    M,
}

impl SymmBasis {
    pub fn family(self) -> char {
        match self {
            SymmBasis::E => 'c',
            SymmBasis::P => 'N',
            SymmBasis::H => 'h',
            SymmBasis::M => 'm',
        }
    }

    pub fn is_multiplicative(self) -> bool {
        self != SymmBasis::M
    }

    pub fn generator(self, k: u32) -> Var {
        Var::weighted(self.family(), k)
    }
}

impl FromStr for SymmBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "E" | "C" => Ok(SymmBasis::E),
            "P" | "N" => Ok(SymmBasis::P),
            "H" => Ok(SymmBasis::H),
            "M" => Ok(SymmBasis::M),
            _ => Err(Error::domain(format!("unknown basis {s:?} (expected E, P, H or M)"))),
        }
    }
}

/// A symmetric function in a chosen basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmFn {
    basis: SymmBasis,
    coeffs: BTreeMap<Partition, Rational>,
}

impl SymmFn {
    pub fn zero(basis: SymmBasis) -> Self {
        SymmFn {
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(basis: SymmBasis) -> Self {
        Self::basis_element(basis, Partition::empty())
    }

    pub fn basis_element(basis: SymmBasis, lambda: Partition) -> Self {
        let mut f = Self::zero(basis);
        f.add_term(lambda, Rational::one());
        f
    }

    /// The weight-`k` generator of a multiplicative basis (`m_(k)` for `M`).
    pub fn generator(basis: SymmBasis, k: u32) -> Self {
        Self::basis_element(basis, Partition::new(vec![k]))
    }

    pub fn from_terms(basis: SymmBasis, terms: impl IntoIterator<Item = (Partition, Rational)>) -> Self {
        let mut f = Self::zero(basis);
        for (l, c) in terms {
            f.add_term(l, c);
        }
        f
    }

    pub fn add_term(&mut self, lambda: Partition, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(lambda.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&lambda);
        }
    }

    /// Reads a polynomial in the generators of a multiplicative basis.
    pub fn from_polynomial(basis: SymmBasis, p: &GradedPolynomial) -> Result<Self> {
        if !basis.is_multiplicative() {
            return Err(Error::domain("the monomial basis has no polynomial generators"));
        }
        let mut f = Self::zero(basis);
        for (m, c) in p.terms() {
            let mut parts = Vec::new();
            for &(v, e) in m.factors() {
                if v.family != basis.family() || v.degree != v.index {
                    return Err(Error::domain(format!(
                        "generator {v} does not belong to the {basis:?} basis"
                    )));
                }
                parts.extend(std::iter::repeat_n(v.index, e as usize));
            }
            f.add_term(Partition::new(parts), c.clone());
        }
        Ok(f)
    }

    pub fn parse(basis: SymmBasis, text: &str) -> Result<Self> {
        Self::from_polynomial(basis, &text.parse()?)
    }

    pub fn to_polynomial(&self) -> Result<GradedPolynomial> {
        if !self.basis.is_multiplicative() {
            return Err(Error::domain("the monomial basis has no polynomial form"));
        }
        let fam = self.basis.family();
        Ok(GradedPolynomial::from_terms(self.coeffs.iter().map(|(l, c)| {
            let m = Monomial::from_factors(l.parts().iter().map(|&k| (Var::weighted(fam, k), 1)));
            (m, c.clone())
        })))
    }

    pub fn basis(&self) -> SymmBasis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, lambda: &Partition) -> Rational {
        self.coeffs.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn homogeneous(&self, k: u32) -> Self {
        SymmFn {
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(l, _)| l.weight() == k)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_weight(&self) -> u32 {
        self.coeffs.keys().map(Partition::weight).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.basis, self.coeffs.iter().map(|(l, a)| (l.clone(), a * c)))
    }

    fn same_basis(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::domain("operands are in different bases; convert first"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_basis(other)?;
        let mut out = self.clone();
        for (l, c) in &other.coeffs {
            out.add_term(l.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_basis(other)?;
        if !self.basis.is_multiplicative() {
            let a = convert(self, SymmBasis::E);
            let b = convert(other, SymmBasis::E);
            return Ok(convert(&a.mul(&b)?, self.basis));
        }
        let mut out = Self::zero(self.basis);
        for (l1, c1) in &self.coeffs {
            for (l2, c2) in &other.coeffs {
                out.add_term(l1.union(l2), c1 * c2);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SymmFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Ok(p) = self.to_polynomial() {
            return write!(f, "{p}");
        }
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "m{l}")?;
            } else {
                write!(f, "{}*m{l}", format_rational(&a))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum ImageKind {
    PowerInElementary,
    CompleteInElementary,
    ElementaryInPower,
    ElementaryInComplete,
}

#[derive(Default)]
struct Caches {
    images: Mutex<HashMap<ImageKind, Vec<GradedPolynomial>>>,
    e_in_m: Mutex<HashMap<Partition, Arc<BTreeMap<Partition, Rational>>>>,
    delta: Mutex<HashMap<Partition, Arc<HopfTensor>>>,
}

fn caches() -> &'static Caches {
    static CACHES: OnceLock<Caches> = OnceLock::new();
    CACHES.get_or_init(Caches::default)
}

fn gen_poly(basis: SymmBasis, k: u32) -> GradedPolynomial {
    if k == 0 {
        GradedPolynomial::one()
    } else {
        GradedPolynomial::var(basis.generator(k))
    }
}

fn sign(i: u32) -> Rational {
    if i % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// Image of the weight-`k` generator under one of Newton's identities.
fn image(kind: ImageKind, k: u32) -> GradedPolynomial {
    let mut all = caches().images.lock().expect("image cache poisoned");
    let table = all.entry(kind).or_insert_with(|| vec![GradedPolynomial::one()]);
    while table.len() <= k as usize {
        let n = table.len() as u32;
        let next = match kind {
            // N_n = sum_{i<n} (-1)^{i-1} c_i N_{n-i} + (-1)^{n-1} n c_n
            ImageKind::PowerInElementary => {
                let mut acc = gen_poly(SymmBasis::E, n).scale(&(sign(n - 1) * int(n as i64)));
                for i in 1..n {
                    acc += &(&gen_poly(SymmBasis::E, i) * &table[(n - i) as usize]).scale(&sign(i - 1));
                }
                acc
            }
            // h_n = sum_{i=1}^{n} (-1)^{i-1} c_i h_{n-i}
            ImageKind::CompleteInElementary => {
                let mut acc = GradedPolynomial::zero();
                for i in 1..=n {
                    acc += &(&gen_poly(SymmBasis::E, i) * &table[(n - i) as usize]).scale(&sign(i - 1));
                }
                acc
            }
            // n c_n = sum_{i=1}^{n} (-1)^{i-1} N_i c_{n-i}
            ImageKind::ElementaryInPower => {
                let mut acc = GradedPolynomial::zero();
                for i in 1..=n {
                    acc += &(&gen_poly(SymmBasis::P, i) * &table[(n - i) as usize]).scale(&sign(i - 1));
                }
                acc.scale(&rat(1, n as i64))
            }
            // c_n = sum_{i=1}^{n} (-1)^{i-1} h_i c_{n-i}
            ImageKind::ElementaryInComplete => {
                let mut acc = GradedPolynomial::zero();
                for i in 1..=n {
                    acc += &(&gen_poly(SymmBasis::H, i) * &table[(n - i) as usize]).scale(&sign(i - 1));
                }
                acc
            }
        };
        table.push(next);
    }
    table[k as usize].clone()
}

/// Newton polynomial `N_k(c_1, ..., c_k)`.
pub fn newton_polynomial(k: u32) -> GradedPolynomial {
    image(ImageKind::PowerInElementary, k)
}

/// Rewrites a multiplicative-basis element by substituting generator images.
fn substitute_generators(f: &SymmFn, target: SymmBasis, kind: ImageKind) -> SymmFn {
    let mut memo: HashMap<Partition, GradedPolynomial> = HashMap::new();
    fn product(
        l: &Partition,
        kind: ImageKind,
        memo: &mut HashMap<Partition, GradedPolynomial>,
    ) -> GradedPolynomial {
        if l.is_empty() {
            return GradedPolynomial::one();
        }
        if let Some(p) = memo.get(l) {
            return p.clone();
        }
        let rest = Partition::new(l.parts()[1..].to_vec());
        let p = &image(kind, l.parts()[0]) * &product(&rest, kind, memo);
        memo.insert(l.clone(), p.clone());
        p
    }
    let mut out = GradedPolynomial::zero();
    for (l, c) in f.terms() {
        out += &product(l, kind, &mut memo).scale(c);
    }
    SymmFn::from_polynomial(target, &out).expect("generator images stay in the target basis")
}

/// Number of 0-1 matrices with row sums `rows` and column sums `cols`.
fn count_01_matrices(rows: &[u32], cols: &[u32], memo: &mut HashMap<(usize, Vec<u32>), BigInt>) -> BigInt {
    fn go(r: usize, rows: &[u32], caps: Vec<u32>, memo: &mut HashMap<(usize, Vec<u32>), BigInt>) -> BigInt {
        if r == rows.len() {
            return if caps.is_empty() { BigInt::one() } else { BigInt::zero() };
        }
        if let Some(v) = memo.get(&(r, caps.clone())) {
            return v.clone();
        }
        // Group columns by remaining capacity; choose how many of each group
        // receive a 1 in this row.
        let mut groups: Vec<(u32, u32)> = Vec::new();
        for &c in &caps {
            match groups.last_mut() {
                Some((v, n)) if *v == c => *n += 1,
                _ => groups.push((c, 1)),
            }
        }
        let mut total = BigInt::zero();
        let mut pick = vec![0u32; groups.len()];
        fn choose(
            g: usize,
            left: u32,
            groups: &[(u32, u32)],
            pick: &mut Vec<u32>,
            r: usize,
            rows: &[u32],
            memo: &mut HashMap<(usize, Vec<u32>), BigInt>,
            total: &mut BigInt,
        ) {
            if g == groups.len() {
                if left != 0 {
                    return;
                }
                let mut ways = BigInt::one();
                let mut next = Vec::new();
                for (i, &(v, n)) in groups.iter().enumerate() {
                    ways *= binomial(n, pick[i]);
                    next.extend(std::iter::repeat_n(v, (n - pick[i]) as usize));
                    if v > 1 {
                        next.extend(std::iter::repeat_n(v - 1, pick[i] as usize));
                    }
                }
                next.sort_unstable_by(|a, b| b.cmp(a));
                *total += ways * go(r + 1, rows, next, memo);
                return;
            }
            for j in 0..=groups[g].1.min(left) {
                pick[g] = j;
                choose(g + 1, left - j, groups, pick, r, rows, memo, total);
            }
            pick[g] = 0;
        }
        choose(0, rows[r], &groups, &mut pick, r, rows, memo, &mut total);
        memo.insert((r, caps), total.clone());
        total
    }
    let mut caps = cols.to_vec();
    caps.sort_unstable_by(|a, b| b.cmp(a));
    go(0, rows, caps, memo)
}

/// `e_μ` expanded in the monomial basis.
fn elementary_in_monomial(mu: &Partition) -> Arc<BTreeMap<Partition, Rational>> {
    if let Some(row) = caches().e_in_m.lock().expect("cache poisoned").get(mu) {
        return row.clone();
    }
    let mut memo = HashMap::new();
    let row: BTreeMap<Partition, Rational> = partitions(mu.weight())
        .into_iter()
        .filter_map(|lambda| {
            let n = count_01_matrices(mu.parts(), lambda.parts(), &mut memo);
            (!n.is_zero()).then(|| (lambda, Rational::from_integer(n)))
        })
        .collect();
    let row = Arc::new(row);
    caches()
        .e_in_m
        .lock()
        .expect("cache poisoned")
        .insert(mu.clone(), row.clone());
    row
}

fn elementary_to_monomial(f: &SymmFn) -> SymmFn {
    let mut out = SymmFn::zero(SymmBasis::M);
    for (mu, c) in f.terms() {
        for (lambda, n) in elementary_in_monomial(mu).iter() {
            out.add_term(lambda.clone(), c * n);
        }
    }
    out
}

/// `e_{λ'} = m_λ + (terms lower in dominance order)`, so peeling off the
/// lexicographically largest monomial term always terminates.
fn monomial_to_elementary(f: &SymmFn) -> SymmFn {
    let mut rest = f.coeffs.clone();
    let mut out = SymmFn::zero(SymmBasis::E);
    while let Some((lambda, a)) = rest.iter().next_back().map(|(l, c)| (l.clone(), c.clone())) {
        let mu = lambda.conjugate();
        let row = elementary_in_monomial(&mu);
        debug_assert!(row.get(&lambda).is_some_and(|c| c.is_one()));
        for (nu, n) in row.iter() {
            let e = rest.entry(nu.clone()).or_insert_with(Rational::zero);
            *e -= &a * n;
            if e.is_zero() {
                rest.remove(nu);
            }
        }
        out.add_term(mu, a);
    }
    out
}

/// Change of basis. Exact, weight-preserving and invertible.
pub fn convert(f: &SymmFn, target: SymmBasis) -> SymmFn {
    use SymmBasis::*;
    match (f.basis, target) {
        (a, b) if a == b => f.clone(),
        (P, E) => substitute_generators(f, E, ImageKind::PowerInElementary),
        (H, E) => substitute_generators(f, E, ImageKind::CompleteInElementary),
        (M, E) => monomial_to_elementary(f),
        (E, P) => substitute_generators(f, P, ImageKind::ElementaryInPower),
        (E, H) => substitute_generators(f, H, ImageKind::ElementaryInComplete),
        (E, M) => elementary_to_monomial(f),
        (_, b) => convert(&convert(f, E), b),
    }
}

/// Element of `Symm ⊗ Symm` in the elementary basis on both sides.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HopfTensor {
    terms: BTreeMap<(Partition, Partition), Rational>,
}

impl HopfTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, left: Partition, right: Partition, c: Rational) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&(Partition, Partition), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, other: &HopfTensor, c: &Rational) {
        for ((l, r), a) in &other.terms {
            self.add_term(l.clone(), r.clone(), a * c);
        }
    }

    pub fn mul(&self, other: &HopfTensor) -> HopfTensor {
        let mut out = HopfTensor::zero();
        for ((l1, r1), a) in &self.terms {
            for ((l2, r2), b) in &other.terms {
                out.add_term(l1.union(l2), r1.union(r2), a * b);
            }
        }
        out
    }

    /// `f ⊗ 1 + 1 ⊗ f` for `f` in the elementary basis.
    pub fn primitive_image(f: &SymmFn) -> HopfTensor {
        let f = convert(f, SymmBasis::E);
        let mut out = HopfTensor::zero();
        for (l, c) in f.terms() {
            out.add_term(l.clone(), Partition::empty(), c.clone());
            out.add_term(Partition::empty(), l.clone(), c.clone());
        }
        out
    }

    pub fn into_sparse(self) -> SparseVec<(Partition, Partition)> {
        self.terms
    }
}

impl fmt::Display for HopfTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let side = |l: &Partition| SymmFn::basis_element(SymmBasis::E, l.clone()).to_string();
        for (i, ((l, r), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*({} ⊗ {})", format_rational(c), side(l), side(r))?;
        }
        Ok(())
    }
}

fn delta_generator(n: u32) -> HopfTensor {
    let mut t = HopfTensor::zero();
    for i in 0..=n {
        t.add_term(Partition::new(vec![i]), Partition::new(vec![n - i]), Rational::one());
    }
    t
}

/// `Δ(c_λ) = ∏ Δ(c_{λ_i})`, cached.
fn delta_elementary(lambda: &Partition) -> Arc<HopfTensor> {
    if let Some(t) = caches().delta.lock().expect("cache poisoned").get(lambda) {
        return t.clone();
    }
    let t = if lambda.is_empty() {
        let mut one = HopfTensor::zero();
        one.add_term(Partition::empty(), Partition::empty(), Rational::one());
        one
    } else {
        let rest = Partition::new(lambda.parts()[1..].to_vec());
        delta_generator(lambda.parts()[0]).mul(&delta_elementary(&rest))
    };
    let t = Arc::new(t);
    caches()
        .delta
        .lock()
        .expect("cache poisoned")
        .insert(lambda.clone(), t.clone());
    t
}

/// Coproduct `Δc_n = Σ_{i+j=n} c_i ⊗ c_j`, extended multiplicatively.
/// Inputs in other bases are converted to the elementary basis first.
pub fn coproduct(f: &SymmFn) -> HopfTensor {
    let f = convert(f, SymmBasis::E);
    let mut out = HopfTensor::zero();
    for (l, c) in f.terms() {
        out.add_scaled(&delta_elementary(l), c);
    }
    out
}

/// `Δf - f ⊗ 1 - 1 ⊗ f`.
pub fn primitive_defect(f: &SymmFn) -> HopfTensor {
    let mut d = coproduct(f);
    d.add_scaled(&HopfTensor::primitive_image(f), &int(-1));
    d
}

pub fn is_primitive(f: &SymmFn) -> bool {
    primitive_defect(f).is_zero()
}

/// Counit applied to the left tensor factor.
pub fn counit_left(t: &HopfTensor) -> SymmFn {
    let mut out = SymmFn::zero(SymmBasis::E);
    for ((l, r), c) in t.terms() {
        if l.is_empty() {
            out.add_term(r.clone(), c.clone());
        }
    }
    out
}

/// Compares `(Δ ⊗ id)Δf` with `(id ⊗ Δ)Δf`.
pub fn is_coassociative_on(f: &SymmFn) -> bool {
    type Triple = BTreeMap<(Partition, Partition, Partition), Rational>;
    fn push(t: &mut Triple, key: (Partition, Partition, Partition), c: Rational) {
        let e = t.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            t.remove(&key);
        }
    }
    let d = coproduct(f);
    let mut left = Triple::new();
    let mut right = Triple::new();
    for ((a, b), c) in d.terms() {
        for ((a1, a2), c1) in delta_elementary(a).terms() {
            push(&mut left, (a1.clone(), a2.clone(), b.clone()), c * c1);
        }
        for ((b1, b2), c2) in delta_elementary(b).terms() {
            push(&mut right, (a.clone(), b1.clone(), b2.clone()), c * c2);
        }
    }
    left == right
}

/// Where the families of odd-weight generators start.
///
/// With `FromZero` the families are indexed by `k ≥ 0`, so weight 1 (the
/// degree-2 primitive `N_1`, exterior degree 1, polynomial degree 2) is
/// included. With `FromOne` they are indexed by `i > 0` and start at weight 3
/// (exterior degree 5, polynomial degree 6).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorConvention {
    #[default]
    FromZero,
    FromOne,
}

impl GeneratorConvention {
    /// Smallest family index: 0 or 1.
    pub fn first_index(self) -> u32 {
        match self {
            GeneratorConvention::FromZero => 0,
            GeneratorConvention::FromOne => 1,
        }
    }

    /// Odd weights `2i+1` allowed by the convention, up to `max`.
    pub fn odd_weights(self, max: u32) -> impl Iterator<Item = u32> {
        (self.first_index()..).map(|i| 2 * i + 1).take_while(move |&w| w <= max)
    }

    pub fn name(self) -> &'static str {
        match self {
            GeneratorConvention::FromZero => "k>=0",
            GeneratorConvention::FromOne => "i>0",
        }
    }
}

impl FromStr for GeneratorConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "k>=0" | "k≥0" | "from-zero" | "k0" => Ok(GeneratorConvention::FromZero),
            "i>0" | "from-one" | "i1" => Ok(GeneratorConvention::FromOne),
            _ => Err(Error::Config(format!(
                "unknown generator convention {s:?} (expected k>=0 or i>0)"
            ))),
        }
    }
}

/// Which Hopf algebra of characteristic classes is modelled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HopfModel {
    /// `H*(BU; Q)`: polynomial on all Chern classes.
    BU,
    /// Image of `H*(B(U/SO); Q)` in `H*(BU; Q)`: the subalgebra generated by
    /// the odd d-classes (weights 1, 3, 5, ...; topological degrees 4k+2).
    BUmodSO,
}

impl FromStr for HopfModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_', '/'], "").as_str() {
            "bu" => Ok(HopfModel::BU),
            "bumodso" | "buso" => Ok(HopfModel::BUmodSO),
            _ => Err(Error::domain(format!("unknown model {s:?} (expected bu or bumodso)"))),
        }
    }
}

/// Algebra generators of the model up to weight `k`, in the elementary basis.
fn model_generators(model: HopfModel, k: u32) -> BTreeMap<u32, SymmFn> {
    match model {
        HopfModel::BU => (1..=k)
            .map(|j| (j, SymmFn::generator(SymmBasis::E, j)))
            .collect(),
        HopfModel::BUmodSO => {
            if k == 0 {
                return BTreeMap::new();
            }
            let d = d_classes(k);
            (1..=k)
                .filter(|j| j % 2 == 1)
                .map(|j| {
                    let f = SymmFn::from_polynomial(SymmBasis::E, d.component(j))
                        .expect("d-classes are polynomials in Chern classes");
                    (j, f)
                })
                .collect()
        }
    }
}

/// All products of model generators of total weight `k`, labelled by the
/// partition of generator weights.
fn model_monomials(model: HopfModel, k: u32) -> Vec<(Partition, SymmFn)> {
    let gens = model_generators(model, k);
    partitions_with_parts(k, &|p| gens.contains_key(&p))
        .into_iter()
        .map(|lambda| {
            let mut f = SymmFn::one(SymmBasis::E);
            for p in lambda.parts() {
                f = f.mul(&gens[p]).expect("same basis");
            }
            (lambda, f)
        })
        .collect()
}

fn as_sparse(f: &SymmFn) -> SparseVec<Partition> {
    convert(f, SymmBasis::E)
        .terms()
        .map(|(l, c)| (l.clone(), c.clone()))
        .collect()
}

/// Basis of the primitives of weight `k` in the model, found by solving
/// `Δf = f ⊗ 1 + 1 ⊗ f` over all weight-`k` products of model generators.
///
/// Each basis vector is returned in the elementary basis, scaled so that its
/// `N_k` coefficient is 1 when that coefficient is nonzero.
pub fn primitive_space(k: u32, model: HopfModel) -> Vec<SymmFn> {
    if k == 0 {
        return Vec::new();
    }
    let candidates = model_monomials(model, k);
    let mut ech: SparseEchelon<(Partition, Partition)> = SparseEchelon::new();
    for (_, g) in &candidates {
        ech.insert(primitive_defect(g).into_sparse());
    }
    let top = Partition::new(vec![k]);
    ech.kernel()
        .iter()
        .map(|combo| {
            let mut f = SymmFn::zero(SymmBasis::E);
            for (c, (_, g)) in combo.iter().zip(&candidates) {
                if !c.is_zero() {
                    f = f.add(&g.scale(c)).expect("same basis");
                }
            }
            let lead = convert(&f, SymmBasis::P).coeff(&top);
            if lead.is_zero() {
                f
            } else {
                f.scale(&(Rational::one() / lead))
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Indecomposables {
    pub weight: u32,
    pub dimension: usize,
    /// Generators spanning a complement of the decomposables, elementary basis.
    pub representatives: Vec<SymmFn>,
}

/// `I/I²` in weight `k`: weight-`k` span of the model modulo the span of
/// products of two or more generators.
pub fn indecomposables(k: u32, model: HopfModel) -> Indecomposables {
    let mut ech: SparseEchelon<Partition> = SparseEchelon::new();
    let monomials = if k == 0 { Vec::new() } else { model_monomials(model, k) };
    let (singles, products): (Vec<_>, Vec<_>) = monomials.into_iter().partition(|(l, _)| l.len() == 1);
    for (_, f) in &products {
        ech.insert(as_sparse(f));
    }
    let dec_rank = ech.rank();
    let mut representatives = Vec::new();
    for (_, f) in singles {
        if ech.insert(as_sparse(&f)) {
            representatives.push(f);
        }
    }
    Indecomposables {
        weight: k,
        dimension: ech.rank() - dec_rank,
        representatives,
    }
}

/// True when every term is a product of at least two generators.
pub fn is_decomposable(p: &GradedPolynomial) -> bool {
    p.terms().all(|(m, _)| m.length() >= 2)
}

/// Series with weight-`k` component `u` exponentiated factor by factor:
/// `∏ exp(u_i)`, each `u_i` homogeneous.
pub fn product_of_exponentials(exponents: &[GradedPolynomial], bound: u32) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(bound);
    for u in exponents {
        if u.is_zero() {
            continue;
        }
        let factor = TruncatedSeries::from_polynomial(u, bound)
            .exp()
            .expect("exponents have no constant term");
        acc = acc.mul(&factor).expect("same bound");
    }
    acc
}

/// `Σ c_k = ∏_{i≥0} exp((-1)^i N_{i+1} / (i+1))`, expanded in the `N[k]`.
pub fn chern_from_newton(bound: u32) -> TruncatedSeries {
    let exponents: Vec<GradedPolynomial> = (1..=bound)
        .map(|k| gen_poly(SymmBasis::P, k).scale(&(sign(k - 1) * rat(1, k as i64))))
        .collect();
    product_of_exponentials(&exponents, bound)
}

fn chern_series(bound: u32, alternating: bool) -> TruncatedSeries {
    TruncatedSeries::from_fn(bound, |k| {
        let g = gen_poly(SymmBasis::E, k);
        if alternating {
            g.scale(&sign(k))
        } else {
            g
        }
    })
    .expect("generators are homogeneous")
}

/// `Σ d_i = (Σ (-1)^i c_i) / (Σ c_i)`, expanded in the Chern classes.
pub fn d_classes(bound: u32) -> TruncatedSeries {
    let plain = chern_series(bound, false);
    let alternating = chern_series(bound, true);
    alternating
        .mul(&plain.inv().expect("constant term 1"))
        .expect("same bound")
}

/// `∏_{i≥0} exp(-2 N_{2i+1} / (2i+1))` with each `N_k` first rewritten in
/// Chern classes.
pub fn d_classes_exp_product(bound: u32) -> TruncatedSeries {
    let exponents: Vec<GradedPolynomial> = (1..=bound)
        .filter(|k| k % 2 == 1)
        .map(|k| newton_polynomial(k).scale(&rat(-2, k as i64)))
        .collect();
    product_of_exponentials(&exponents, bound)
}

/// `Σ a_i = (Σ b_i)(Σ (-1)^i b_i)` in the homology generators `b[i]`.
pub fn a_classes(bound: u32) -> TruncatedSeries {
    let b = |alternating: bool| {
        TruncatedSeries::from_fn(bound, |k| {
            let g = if k == 0 {
                GradedPolynomial::one()
            } else {
                GradedPolynomial::var(Var::weighted('b', k))
            };
            if alternating {
                g.scale(&sign(k))
            } else {
                g
            }
        })
        .expect("homogeneous")
    };
    b(false).mul(&b(true)).expect("same bound")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// Quotient form of the d-classes against the exponential-product form.
    DClasses,
    /// Exponential form of the total Chern class against Newton's identities.
    ChernNewton,
    /// Odd a-classes vanish mod decomposables, even ones are `2 b_{2i}` mod decomposables.
    AClasses,
}

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::DClasses => "d-classes",
            Identity::ChernNewton => "chern-newton",
            Identity::AClasses => "a-classes",
        }
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d-classes" => Ok(Identity::DClasses),
            "chern-newton" => Ok(Identity::ChernNewton),
            "a-classes" => Ok(Identity::AClasses),
            _ => Err(Error::domain(format!(
                "unknown identity {s:?} (expected d-classes, chern-newton or a-classes)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchStatus {
    ExactMatch,
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub max_weight: u32,
    pub status: MatchStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch_weight: Option<u32>,
}

/// Checks an identity weight by weight, exactly, up to `max_weight`.
pub fn check_identity(which: Identity, max_weight: u32) -> Result<IdentityReport> {
    if max_weight == 0 {
        return Err(Error::domain("max weight must be at least 1"));
    }
    let mismatch: Option<u32> = match which {
        Identity::DClasses => {
            let quotient = d_classes(max_weight);
            let product = d_classes_exp_product(max_weight);
            (0..=max_weight).find(|&k| quotient.component(k) != product.component(k))
        }
        Identity::ChernNewton => {
            let series = chern_from_newton(max_weight);
            (0..=max_weight).find(|&k| {
                let expected = if k == 0 {
                    SymmFn::one(SymmBasis::P)
                } else {
                    convert(&SymmFn::generator(SymmBasis::E, k), SymmBasis::P)
                };
                SymmFn::from_polynomial(SymmBasis::P, series.component(k)).ok() != Some(expected)
            })
        }
        Identity::AClasses => {
            let a = a_classes(max_weight);
            (1..=max_weight).find(|&k| {
                let ak = a.component(k);
                if k % 2 == 1 {
                    !is_decomposable(ak)
                } else {
                    let lead = GradedPolynomial::var(Var::weighted('b', k)).scale(&int(2));
                    !is_decomposable(&(ak - &lead))
                }
            })
        }
    };
    Ok(IdentityReport {
        identity: which.name().to_string(),
        max_weight,
        status: if mismatch.is_some() {
            MatchStatus::Mismatch
        } else {
            MatchStatus::ExactMatch
        },
        first_mismatch_weight: mismatch,
    })
}
