//! Multiple zeta values with certified error bounds.
//!
//! Index convention: `ζ(s_1, ..., s_k) = Σ_{i_1 < ... < i_k} i_1^{-s_1} ... i_k^{-s_k}`,
//! summation indices *increasing*. This is what the monomial quasisymmetric
//! function `M_(s_1,...,s_k)` becomes under `x_i ↦ 1/i`. The more common
//! decreasing convention `n_1 > ... > n_k` corresponds to the reversed
//! composition, so `ζ(1,2)` here is Euler's `ζ(2,1) = ζ(3)`.
//!
//! Evaluation splits the iterated integral at `1/2`. A classical index
//! `(t_1, ..., t_k)` is the word `x0^{t_1-1} x1 ... x0^{t_k-1} x1`, and
//!
//! ```text
//! ζ(w) = Σ_{w = u v} L(reverse(swap(u))) · L(v),
//! ```
//!
//! where `L` of a word ending in `x1` is a multiple polylogarithm at `1/2`:
//! `Li_{m_1,...,m_r}(1/2) = Σ_{n_1 > ... > n_r ≥ 1} 2^{-n_1} / (n_1^{m_1} ... n_r^{m_r})`.
//! Every term is positive, so a truncated sum is a lower bound and the
//! geometric tail gives an upper bound. The inner nested sum is at most
//! `(1 + ln n)^{r-1}`, which makes the tail bound explicit.

use std::fmt;

use num_traits::Signed;
use serde::Serialize;

use crate::combinat::Composition;
use crate::error::{Error, Result};
use crate::qsym::{quasi_shuffle, QSymm};
use crate::rational::{to_f64_with_error, Rational};

const EPS: f64 = f64::EPSILON;

/// A double together with a bound on its distance from the true value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CertifiedReal {
    pub value: f64,
    pub error_bound: f64,
}

impl CertifiedReal {
    pub fn exact(value: f64) -> Self {
        CertifiedReal {
            value,
            error_bound: 0.0,
        }
    }

    pub fn new(value: f64, error_bound: f64) -> Self {
        CertifiedReal { value, error_bound }
    }

    pub fn from_rational(q: &Rational) -> Self {
        let (value, error_bound) = to_f64_with_error(q);
        CertifiedReal { value, error_bound }
    }

    pub fn lower(&self) -> f64 {
        self.value - self.error_bound
    }

    pub fn upper(&self) -> f64 {
        self.value + self.error_bound
    }

    pub fn contains(&self, x: f64) -> bool {
        (x - self.value).abs() <= self.error_bound
    }

    /// True when `other`'s enclosure lies inside this one.
    pub fn encloses(&self, other: &CertifiedReal) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn add(&self, other: &Self) -> Self {
        let value = self.value + other.value;
        CertifiedReal {
            value,
            error_bound: self.error_bound + other.error_bound + value.abs() * EPS,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CertifiedReal {
            value: -self.value,
            error_bound: self.error_bound,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let value = self.value * other.value;
        CertifiedReal {
            value,
            error_bound: self.value.abs() * other.error_bound
                + other.value.abs() * self.error_bound
                + self.error_bound * other.error_bound
                + value.abs() * EPS,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.mul(&CertifiedReal::from_rational(q))
    }
}

impl fmt::Display for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:e}", self.value, self.error_bound)
    }
}

/// Closed interval of positive reals.
#[derive(Clone, Copy, Debug)]
struct Positive {
    lo: f64,
    hi: f64,
}

impl Positive {
    const ONE: Positive = Positive { lo: 1.0, hi: 1.0 };

    fn mul(self, o: Positive) -> Positive {
        Positive {
            lo: self.lo * o.lo * (1.0 - 2.0 * EPS),
            hi: self.hi * o.hi * (1.0 + 2.0 * EPS),
        }
    }

    fn add(self, o: Positive) -> Positive {
        Positive {
            lo: (self.lo + o.lo) * (1.0 - 2.0 * EPS),
            hi: (self.hi + o.hi) * (1.0 + 2.0 * EPS),
        }
    }
}

/// Letters of the iterated-integral word: `false` for `x0`, `true` for `x1`.
fn classical_word(classical: &[u32]) -> Vec<bool> {
    let mut w = Vec::new();
    for &t in classical {
        w.extend(std::iter::repeat_n(false, (t - 1) as usize));
        w.push(true);
    }
    w
}

/// Exponents `m_1, ..., m_r` of a word ending in `x1`.
fn polylog_exponents(word: &[bool]) -> Vec<u32> {
    let mut out = Vec::new();
    let mut run = 1;
    for &letter in word {
        if letter {
            out.push(run);
            run = 1;
        } else {
            run += 1;
        }
    }
    out
}

/// `Li_m(1/2)` from `n_1 ≤ terms`, as an interval.
fn polylog_half(m: &[u32], terms: u32) -> Positive {
    if m.is_empty() {
        return Positive::ONE;
    }
    let r = m.len();
    // inner[i] = Σ over n > n_{i+2} > ... > n_r ≥ 1 of the deeper factors.
    let mut inner = vec![0.0f64; r];
    inner[r - 1] = 1.0;
    let mut sum = 0.0f64;
    let mut scale = 1.0f64;
    for n in 1..=terms {
        scale *= 0.5;
        let nf = n as f64;
        sum += scale * nf.powi(-(m[0] as i32)) * inner[0];
        for i in 0..r - 1 {
            inner[i] += nf.powi(-(m[i + 1] as i32)) * inner[i + 1];
        }
    }
    let delta = (4.0 * terms as f64 + 8.0 * (r as f64 + 2.0)) * EPS;
    let tail = polylog_tail(r, m[0], terms);
    Positive {
        lo: sum * (1.0 - delta),
        hi: (sum + tail) * (1.0 + delta),
    }
}

/// Bound on `Σ_{n > N} 2^{-n} n^{-m_1} (1 + ln n)^{r-1}`.
fn polylog_tail(r: usize, m1: u32, big_n: u32) -> f64 {
    let n1 = big_n as f64 + 1.0;
    let log_factor = |x: f64| (1.0 + x.ln()).powi(r as i32 - 1);
    let first = 0.5f64.powf(n1) * n1.powi(-(m1 as i32)) * log_factor(n1);
    let ratio = 0.5 * (log_factor(n1 + 1.0) / log_factor(n1));
    assert!(ratio < 1.0, "tail ratio must be below 1");
    first / (1.0 - ratio) * (1.0 + 8.0 * EPS)
}

/// `ζ` of a classical (decreasing-convention) index as an interval.
fn zeta_interval(classical: &[u32], terms: u32) -> Positive {
    let word = classical_word(classical);
    let mut total = Positive { lo: 0.0, hi: 0.0 };
    for j in 0..=word.len() {
        let head: Vec<bool> = word[..j].iter().rev().map(|&x| !x).collect();
        let tail = &word[j..];
        let left = polylog_half(&polylog_exponents(&head), terms);
        let right = polylog_half(&polylog_exponents(tail), terms);
        total = total.add(left.mul(right));
    }
    total
}

pub fn is_admissible(idx: &Composition) -> bool {
    idx.parts().last().is_none_or(|&s| s >= 2)
}

/// Certified value of `ζ(idx)` in the increasing-index convention, with
/// error bound at most `target_error`. The empty index evaluates to 1.
pub fn mzv_eval(idx: &Composition, target_error: f64) -> Result<CertifiedReal> {
    if !(target_error > 0.0) {
        return Err(Error::domain("target error must be positive"));
    }
    if !is_admissible(idx) {
        return Err(Error::Divergent {
            index: idx.to_string(),
        });
    }
    if idx.is_empty() {
        return Ok(CertifiedReal::exact(1.0));
    }
    let classical: Vec<u32> = idx.reversed().parts().to_vec();
    let mut terms = 24u32;
    let mut previous = f64::INFINITY;
    loop {
        let iv = zeta_interval(&classical, terms);
        let half = (iv.hi - iv.lo) / 2.0;
        let value = iv.lo + half;
        // Widen for the rounding of the midpoint itself.
        let radius = half * (1.0 + 4.0 * EPS) + value * EPS;
        if radius <= target_error {
            return Ok(CertifiedReal::new(value, radius));
        }
        // Once more terms stop shrinking the enclosure, rounding dominates.
        if radius > 0.5 * previous || terms >= 4096 {
            return Err(Error::Precision(target_error));
        }
        previous = radius;
        terms += terms / 2;
    }
}

fn inadmissible_terms(q: &QSymm) -> Vec<String> {
    q.terms()
        .filter(|(a, _)| !is_admissible(a))
        .map(|(a, _)| a.to_string())
        .collect()
}

/// `𝛇(q) = Σ c_α ζ(α)`, with the error budget split evenly across terms.
pub fn zeta_specialize(q: &QSymm, target_error: f64) -> Result<CertifiedReal> {
    if !(target_error > 0.0) {
        return Err(Error::domain("target error must be positive"));
    }
    let bad = inadmissible_terms(q);
    if !bad.is_empty() {
        return Err(Error::Divergent {
            index: bad.join(", "),
        });
    }
    let n = q.terms().count().max(1) as f64;
    let mut acc = CertifiedReal::exact(0.0);
    for (alpha, c) in q.terms() {
        let weight = c.abs();
        let (w, _) = to_f64_with_error(&weight);
        let per_term = target_error / (2.0 * n * w.max(1.0));
        let z = mzv_eval(alpha, per_term)?;
        acc = acc.add(&z.scale(c));
    }
    if acc.error_bound > target_error {
        return Err(Error::Precision(target_error));
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomomorphismReport {
    /// `𝛇(a) · 𝛇(b)`.
    pub product_of_values: CertifiedReal,
    /// `𝛇(a * b)`, the quasi-shuffle evaluated directly.
    pub value_of_product: CertifiedReal,
    pub difference: f64,
    pub allowed: f64,
    pub pass: bool,
}

/// Compares `𝛇(a)𝛇(b)` with `𝛇(a * b)`. Passes when the difference is at
/// most `tol` plus both propagated error bounds.
pub fn homomorphism_check(a: &QSymm, b: &QSymm, tol: f64) -> Result<HomomorphismReport> {
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let target = tol / 10.0;
    let za = zeta_specialize(a, target)?;
    let zb = zeta_specialize(b, target)?;
    let product = quasi_shuffle(a, b);
    let zab = zeta_specialize(&product, target)?;
    let lhs = za.mul(&zb);
    let difference = (lhs.value - zab.value).abs();
    let allowed = tol + lhs.error_bound + zab.error_bound;
    Ok(HomomorphismReport {
        product_of_values: lhs,
        value_of_product: zab,
        difference,
        allowed,
        pass: difference <= allowed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn single_zeta_values() {
        let z2 = mzv_eval(&idx(&[2]), 1e-9).unwrap();
        assert!(z2.error_bound <= 1e-9);
        assert!(z2.contains(std::f64::consts::PI.powi(2) / 6.0));
        let z3 = mzv_eval(&idx(&[3]), 1e-9).unwrap();
        assert!(z3.contains(1.202_056_903_159_594_2));
        let z4 = mzv_eval(&idx(&[4]), 1e-12).unwrap();
        assert!(z4.contains(std::f64::consts::PI.powi(4) / 90.0));
    }

    #[test]
    fn euler_relation() {
        let a = mzv_eval(&idx(&[1, 2]), 1e-10).unwrap();
        let b = mzv_eval(&idx(&[3]), 1e-10).unwrap();
        assert!((a.value - b.value).abs() <= 2e-8);
        let pi4 = std::f64::consts::PI.powi(4);
        assert!(mzv_eval(&idx(&[2, 2]), 1e-11).unwrap().contains(pi4 / 120.0));
        assert!(mzv_eval(&idx(&[1, 1, 2]), 1e-11).unwrap().contains(pi4 / 90.0));
    }

    #[test]
    fn divergence_and_precision() {
        assert!(matches!(mzv_eval(&idx(&[1]), 1e-6), Err(Error::Divergent { .. })));
        assert!(matches!(mzv_eval(&idx(&[2, 1]), 1e-6), Err(Error::Divergent { .. })));
        assert!(matches!(mzv_eval(&idx(&[2]), 1e-20), Err(Error::Precision(_))));
        assert!(mzv_eval(&idx(&[2]), 0.0).is_err());
        assert_eq!(mzv_eval(&Composition::empty(), 1e-9).unwrap().value, 1.0);
    }

    #[test]
    fn specialization_and_stuffle() {
        let zero = zeta_specialize(&QSymm::zero(), 1e-9).unwrap();
        assert_eq!((zero.value, zero.error_bound), (0.0, 0.0));
        let m2 = QSymm::monomial(idx(&[2]));
        let m3 = QSymm::monomial(idx(&[3]));
        let r = homomorphism_check(&m2, &m2, 1e-7).unwrap();
        assert!(r.pass, "{r:?}");
        let r = homomorphism_check(&m2, &m3, 1e-7).unwrap();
        assert!(r.pass, "{r:?}");
        let m1 = QSymm::monomial(idx(&[1]));
        assert!(homomorphism_check(&m1, &m2, 1e-7).is_err());
    }

    #[test]
    fn refinement_is_nested() {
        let mut prev = mzv_eval(&idx(&[2, 3]), 1e-6).unwrap();
        for target in [1e-9, 1e-12] {
            let next = mzv_eval(&idx(&[2, 3]), target).unwrap();
            assert!(prev.encloses(&next), "{prev} vs {next}");
            prev = next;
        }
    }
}
