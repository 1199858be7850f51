//! Tor over connected graded algebras via the reduced bar complex, and the
//! Hilbert series of the coefficient rings built from odd exterior and even
//! polynomial generators.
//!
//! The bar complex in homological degree `s` is `I^{⊗s}` for the
//! augmentation ideal `I`. An element `[a_1|...|a_s]` has internal degree
//! `Σ|a_i|` and total degree `s + Σ|a_i|`. The differential is
//!
//! ```text
//! d[a_1|...|a_s] = Σ_i (-1)^{e_i} [a_1|...|a_i a_{i+1}|...|a_s],   e_i = Σ_{j≤i} (|a_j| + 1).
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::rational::{int, Rational};
use crate::symm::GeneratorConvention;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub degree: u32,
}

/// Connected graded algebra given by a basis of its augmentation ideal and a
/// multiplication table. The unit is implicit.
#[derive(Clone, Debug)]
pub struct GradedAlgebraPresentation {
    basis: Vec<BasisElement>,
    products: HashMap<(usize, usize), Vec<(usize, Rational)>>,
    /// Degree through which basis and products are known; `None` when the
    /// algebra is finite and fully listed.
    exact_through: Option<u32>,
}

impl GradedAlgebraPresentation {
    /// Builds a presentation, checking degrees are positive and products
    /// are degree-additive. Missing table entries are zero.
    pub fn new(
        basis: Vec<BasisElement>,
        products: HashMap<(usize, usize), Vec<(usize, Rational)>>,
        exact_through: Option<u32>,
    ) -> Result<Self> {
        if basis.iter().any(|b| b.degree == 0) {
            return Err(Error::domain("augmentation ideal elements need positive degree"));
        }
        for (&(i, j), terms) in &products {
            if i >= basis.len() || j >= basis.len() {
                return Err(Error::domain("product table refers to a missing basis element"));
            }
            for (k, _) in terms {
                let expected = basis[i].degree + basis[j].degree;
                if *k >= basis.len() || basis[*k].degree != expected {
                    return Err(Error::domain(format!(
                        "product {}·{} is not homogeneous of degree {expected}",
                        basis[i].name, basis[j].name
                    )));
                }
            }
        }
        Ok(GradedAlgebraPresentation {
            basis,
            products,
            exact_through,
        })
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn exact_through(&self) -> Option<u32> {
        self.exact_through
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        self.products.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Checks `(ab)c = a(bc)` on all basis triples within the known range.
    pub fn is_associative(&self) -> bool {
        let n = self.basis.len();
        let limit = self.exact_through.unwrap_or(u32::MAX);
        let mul_vec = |v: &BTreeMap<usize, Rational>, j: usize, left: bool| {
            let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, c) in v {
                let terms = if left { self.product(*k, j) } else { self.product(j, *k) };
                for (m, d) in terms {
                    *out.entry(*m).or_insert_with(Rational::zero) += c * d;
                }
            }
            out.retain(|_, c| !c.is_zero());
            out
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let deg = self.basis[a].degree + self.basis[b].degree + self.basis[c].degree;
                    if deg > limit {
                        continue;
                    }
                    let ab: BTreeMap<_, _> = self.product(a, b).iter().cloned().collect();
                    let bc: BTreeMap<_, _> = self.product(b, c).iter().cloned().collect();
                    if mul_vec(&ab, c, true) != mul_vec(&bc, a, false) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn generator_names(degrees: &[u32]) -> Vec<String> {
    let mut seen: HashMap<u32, u32> = HashMap::new();
    let repeated: HashMap<u32, bool> = degrees
        .iter()
        .map(|d| (*d, degrees.iter().filter(|e| *e == d).count() > 1))
        .collect();
    degrees
        .iter()
        .map(|d| {
            let k = seen.entry(*d).or_insert(0);
            *k += 1;
            if repeated[d] {
                format!("y{d}_{k}")
            } else {
                format!("y{d}")
            }
        })
        .collect()
}

/// Exterior algebra on odd-degree generators, listed through degree `bound`.
pub fn exterior_algebra(degrees: &[u32], bound: u32) -> Result<GradedAlgebraPresentation> {
    if let Some(d) = degrees.iter().find(|&&d| d == 0 || d % 2 == 0) {
        return Err(Error::domain(format!(
            "exterior generators must have odd positive degree (got {d})"
        )));
    }
    if degrees.len() > 20 {
        return Err(Error::domain("at most 20 exterior generators are supported"));
    }
    let names = generator_names(degrees);
    let mut index: HashMap<u32, usize> = HashMap::new();
    let mut basis = Vec::new();
    for mask in 1u32..(1 << degrees.len()) {
        let degree: u32 = (0..degrees.len()).filter(|i| mask >> i & 1 == 1).map(|i| degrees[i]).sum();
        if degree > bound {
            continue;
        }
        let name = (0..degrees.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| names[i].as_str())
            .collect::<Vec<_>>()
            .join("*");
        index.insert(mask, basis.len());
        basis.push(BasisElement { name, degree });
    }
    let masks: Vec<u32> = {
        let mut m: Vec<(usize, u32)> = index.iter().map(|(m, i)| (*i, *m)).collect();
        m.sort();
        m.into_iter().map(|(_, m)| m).collect()
    };
    let mut products = HashMap::new();
    for (i, &a) in masks.iter().enumerate() {
        for (j, &b) in masks.iter().enumerate() {
            if a & b != 0 {
                continue;
            }
            let Some(&k) = index.get(&(a | b)) else {
                continue;
            };
            // Moving each generator of `b` past the larger generators of `a`.
            let swaps: u32 = (0..degrees.len())
                .filter(|q| b >> q & 1 == 1)
                .map(|q| (a >> (q + 1)).count_ones())
                .sum();
            let sign = if swaps % 2 == 0 { int(1) } else { int(-1) };
            products.insert((i, j), vec![(k, sign)]);
        }
    }
    let total: u32 = degrees.iter().sum();
    let exact_through = (total > bound).then_some(bound);
    GradedAlgebraPresentation::new(basis, products, exact_through)
}

/// `Q ⊕ V` with all products of positive-degree elements zero.
pub fn square_zero_extension(degrees: &[u32], bound: u32) -> Result<GradedAlgebraPresentation> {
    if degrees.contains(&0) {
        return Err(Error::domain("square-zero generators need positive degree"));
    }
    let names = generator_names(degrees);
    let basis: Vec<BasisElement> = degrees
        .iter()
        .zip(names)
        .filter(|(d, _)| **d <= bound)
        .map(|(d, name)| BasisElement { name, degree: *d })
        .collect();
    let complete = degrees.iter().all(|d| *d <= bound);
    GradedAlgebraPresentation::new(basis, HashMap::new(), (!complete).then_some(bound))
}

/// Parses `exterior:5,9`, `squarezero:5,9` or `trivial`.
pub fn parse_algebra(text: &str, bound: u32) -> Result<GradedAlgebraPresentation> {
    let text = text.trim();
    if text == "trivial" || text == "Q" {
        return GradedAlgebraPresentation::new(Vec::new(), HashMap::new(), None);
    }
    let (kind, list) = text
        .split_once(':')
        .ok_or_else(|| Error::parse(0, "expected exterior:<d,...> or squarezero:<d,...>"))?;
    let degrees: Vec<u32> = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::parse(kind.len() + 1, format!("bad degree {s:?}")))
        })
        .collect::<Result<_>>()?;
    match kind.trim() {
        "exterior" => exterior_algebra(&degrees, bound),
        "squarezero" | "square-zero" => square_zero_extension(&degrees, bound),
        other => Err(Error::parse(0, format!("unknown algebra kind {other:?}"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum TorCell {
    Known(usize),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorTable {
    pub total_bound: u32,
    /// Every cell `(s, t)` with `s + t ≤ total_bound` whose bar group is
    /// nonzero, or which cannot be determined from the truncation.
    pub cells: BTreeMap<(u32, u32), TorCell>,
    /// `d ∘ d = 0` on every computed bidegree.
    pub d_squared_zero: bool,
}

impl TorTable {
    pub fn dim(&self, s: u32, t: u32) -> TorCell {
        self.cells.get(&(s, t)).copied().unwrap_or(TorCell::Known(0))
    }

    /// Dimension per total degree; `None` where some cell is unknown.
    pub fn total_degree_dims(&self) -> Vec<Option<u64>> {
        let mut out = vec![Some(0u64); self.total_bound as usize + 1];
        for (&(s, t), cell) in &self.cells {
            let slot = &mut out[(s + t) as usize];
            *slot = match (*slot, cell) {
                (Some(a), TorCell::Known(b)) => Some(a + *b as u64),
                _ => None,
            };
        }
        out
    }

    /// `s,t,total,dim` rows for nonzero or unknown cells.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,t,total,dim\n");
        for (&(s, t), cell) in &self.cells {
            match cell {
                TorCell::Known(0) => {}
                TorCell::Known(d) => writeln!(out, "{s},{t},{},{d}", s + t).unwrap(),
                TorCell::Unknown => writeln!(out, "{s},{t},{},unknown", s + t).unwrap(),
            }
        }
        out
    }
}

/// Bar basis: sequences of basis indices with `s` entries and internal degree `t`.
fn bar_basis(alg: &GradedAlgebraPresentation, s: u32, t: u32) -> Vec<Vec<usize>> {
    fn go(alg: &GradedAlgebraPresentation, s: u32, t: u32, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if s == 0 {
            if t == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for (i, b) in alg.basis.iter().enumerate() {
            if b.degree <= t {
                cur.push(i);
                go(alg, s - 1, t - b.degree, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(alg, s, t, &mut Vec::new(), &mut out);
    out
}

type Chain = BTreeMap<Vec<usize>, Rational>;

fn bar_differential(alg: &GradedAlgebraPresentation, word: &[usize]) -> Chain {
    let mut out = Chain::new();
    let mut e = 0u32;
    for i in 0..word.len().saturating_sub(1) {
        e += alg.basis[word[i]].degree + 1;
        let sign = if e % 2 == 0 { int(1) } else { int(-1) };
        for (k, c) in alg.product(word[i], word[i + 1]) {
            let mut w = word[..i].to_vec();
            w.push(*k);
            w.extend_from_slice(&word[i + 2..]);
            let entry = out.entry(w.clone()).or_insert_with(Rational::zero);
            *entry += &sign * c;
            if entry.is_zero() {
                out.remove(&w);
            }
        }
    }
    out
}

/// Rank of `d: B_{s,t} -> B_{s-1,t}`, and whether `d ∘ d` vanishes on `B_{s,t}`.
fn differential_rank(alg: &GradedAlgebraPresentation, s: u32, t: u32) -> (usize, bool) {
    if s < 2 {
        return (0, true);
    }
    let source = bar_basis(alg, s, t);
    let target = bar_basis(alg, s - 1, t);
    let column: HashMap<&Vec<usize>, usize> = target.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut squares_vanish = true;
    let rows: Vec<Vec<Rational>> = source
        .iter()
        .map(|w| {
            let image = bar_differential(alg, w);
            let mut again = Chain::new();
            for (v, c) in &image {
                for (u, d) in bar_differential(alg, v) {
                    *again.entry(u).or_insert_with(Rational::zero) += c * d;
                }
            }
            if again.values().any(|c| !c.is_zero()) {
                squares_vanish = false;
            }
            let mut row = vec![Rational::zero(); target.len()];
            for (v, c) in image {
                row[column[&v]] = c;
            }
            row
        })
        .collect();
    (rank(&rows), squares_vanish)
}

/// `Tor^A(Q, Q)` in total degrees `≤ total_bound`.
///
/// Cells whose internal degree exceeds the presentation's known range are
/// reported as [`TorCell::Unknown`]. Asking for more than twice the known
/// range is an error.
pub fn tor_via_bar(alg: &GradedAlgebraPresentation, total_bound: u32) -> Result<TorTable> {
    if let Some(d) = alg.exact_through {
        if total_bound > 2 * d {
            return Err(Error::Truncation {
                requested: total_bound,
                available: d,
            });
        }
    }
    let min_degree = alg.basis.iter().map(|b| b.degree).min();
    let mut cells: Vec<(u32, u32)> = vec![(0, 0)];
    if let Some(m) = min_degree {
        for s in 1..=total_bound {
            for t in s * m..=total_bound - s {
                cells.push((s, t));
            }
        }
    }
    let known = |t: u32| alg.exact_through.is_none_or(|d| t <= d);
    let computed: Vec<((u32, u32), TorCell, bool)> = cells
        .par_iter()
        .map(|&(s, t)| {
            if (s, t) == (0, 0) {
                return ((0, 0), TorCell::Known(1), true);
            }
            if !known(t) {
                return ((s, t), TorCell::Unknown, true);
            }
            let dim = bar_basis(alg, s, t).len();
            if dim == 0 {
                return ((s, t), TorCell::Known(0), true);
            }
            let (rank_out, ok_out) = differential_rank(alg, s, t);
            let (rank_in, ok_in) = differential_rank(alg, s + 1, t);
            ((s, t), TorCell::Known(dim - rank_out - rank_in), ok_out && ok_in)
        })
        .collect();
    let d_squared_zero = computed.iter().all(|(_, _, ok)| *ok);
    let cells = computed
        .into_iter()
        .filter(|(_, cell, _)| *cell != TorCell::Known(0))
        .map(|(k, cell, _)| (k, cell))
        .collect();
    Ok(TorTable {
        total_bound,
        cells,
        d_squared_zero,
    })
}

/// Coefficients of `∏_d (1 - t^d)^{-1}` through degree `bound`.
pub fn predicted_polynomial_series(degrees: &[u32], bound: u32) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); bound as usize + 1];
    out[0] = BigInt::one();
    for &d in degrees.iter().filter(|&&d| d > 0) {
        let d = d as usize;
        for k in d..out.len() {
            let prev = out[k - d].clone();
            out[k] += prev;
        }
    }
    out
}

/// Coefficients of `∏_d (1 + t^d)` through degree `bound`.
pub fn exterior_series(degrees: &[u32], bound: u32) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); bound as usize + 1];
    out[0] = BigInt::one();
    for &d in degrees.iter().filter(|&&d| d > 0) {
        let d = d as usize;
        for k in (d..out.len()).rev() {
            let prev = out[k - d].clone();
            out[k] += prev;
        }
    }
    out
}

pub fn convolve(a: &[BigInt], b: &[BigInt], bound: u32) -> Vec<BigInt> {
    let n = bound as usize + 1;
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate().take(n).filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    /// Exterior algebra on generators in degrees `4i+1`.
    SOmega,
    /// Exterior on `4i+1` tensor polynomial on `4i+2`.
    Thh,
    /// Positive-degree part of the polynomial algebra on `4i+2`.
    KTheoryFiber,
}

impl FromStr for CoefficientRing {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "somega" => Ok(CoefficientRing::SOmega),
            "thh" => Ok(CoefficientRing::Thh),
            "ktheoryfiber" | "ktheory-fiber" | "k-theory-fiber" => Ok(CoefficientRing::KTheoryFiber),
            _ => Err(Error::domain(format!(
                "unknown coefficient ring {s:?} (expected sOmega, THH or KTheoryFiber)"
            ))),
        }
    }
}

/// Degrees `4i+1` allowed by the convention, up to `bound`.
pub fn exterior_generator_degrees(convention: GeneratorConvention, bound: u32) -> Vec<u32> {
    (convention.first_index()..)
        .map(|i| 4 * i + 1)
        .take_while(|&d| d <= bound)
        .collect()
}

/// Degrees `4i+2` allowed by the convention, up to `bound`.
pub fn polynomial_generator_degrees(convention: GeneratorConvention, bound: u32) -> Vec<u32> {
    (convention.first_index()..)
        .map(|i| 4 * i + 2)
        .take_while(|&d| d <= bound)
        .collect()
}

/// Dimensions in degrees `0..=bound`.
pub fn coefficient_ring_series(which: CoefficientRing, bound: u32, convention: GeneratorConvention) -> Vec<BigInt> {
    let ext = exterior_series(&exterior_generator_degrees(convention, bound), bound);
    let poly = predicted_polynomial_series(&polynomial_generator_degrees(convention, bound), bound);
    match which {
        CoefficientRing::SOmega => ext,
        CoefficientRing::Thh => convolve(&ext, &poly, bound),
        CoefficientRing::KTheoryFiber => {
            let mut p = poly;
            p[0] = BigInt::zero();
            p
        }
    }
}
