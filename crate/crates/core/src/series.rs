//! Truncated power series.
//!
//! [`TruncatedSeries`] is a graded series: component `k` is a homogeneous
//! [`GradedPolynomial`] of degree `k`, and nothing above the bound `D` is
//! stored. The bound is part of the value; binary operations on different
//! bounds fail instead of re-truncating.
//!
//! [`UniSeries`] is a one-variable series `sum a_k x^k` whose coefficients
//! live in any [`Coeff`] ring: exact rationals, polynomials in symbolic
//! constants, or certified reals.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{GradedPolynomial, Monomial, Var};
use crate::rational::{int, rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    components: Vec<GradedPolynomial>,
}

impl TruncatedSeries {
    pub fn zero(bound: u32) -> Self {
        TruncatedSeries {
            components: vec![GradedPolynomial::zero(); bound as usize + 1],
        }
    }

    pub fn one(bound: u32) -> Self {
        let mut s = Self::zero(bound);
        s.components[0] = GradedPolynomial::one();
        s
    }

    /// Splits `p` into homogeneous components and drops everything above `bound`.
    pub fn from_polynomial(p: &GradedPolynomial, bound: u32) -> Self {
        let mut s = Self::zero(bound);
        for (m, c) in p.terms() {
            let d = m.degree();
            if d <= bound {
                s.components[d as usize].add_term(m.clone(), c.clone());
            }
        }
        s
    }

    /// Builds a series from `f(k)` for `k = 0..=bound`; each value must be
    /// homogeneous of degree `k`.
    pub fn from_fn(bound: u32, mut f: impl FnMut(u32) -> GradedPolynomial) -> Result<Self> {
        let components: Vec<_> = (0..=bound).map(&mut f).collect();
        for (k, c) in components.iter().enumerate() {
            if !c.is_homogeneous_of(k as u32) {
                return Err(Error::domain(format!(
                    "component {k} is not homogeneous of degree {k}: {c}"
                )));
            }
        }
        Ok(TruncatedSeries { components })
    }

    pub fn bound(&self) -> u32 {
        (self.components.len() - 1) as u32
    }

    pub fn component(&self, k: u32) -> &GradedPolynomial {
        &self.components[k as usize]
    }

    pub fn components(&self) -> &[GradedPolynomial] {
        &self.components
    }

    pub fn to_polynomial(&self) -> GradedPolynomial {
        let mut p = GradedPolynomial::zero();
        for c in &self.components {
            p += c;
        }
        p
    }

    fn check_bound(&self, other: &Self) -> Result<()> {
        if self.bound() != other.bound() {
            return Err(Error::BoundMismatch {
                left: self.bound(),
                right: other.bound(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_bound(other)?;
        Ok(TruncatedSeries {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_bound(other)?;
        Ok(TruncatedSeries {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Degreewise convolution truncated at the common bound.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_bound(other)?;
        let bound = self.bound() as usize;
        let components = (0..=bound)
            .into_par_iter()
            .map(|n| {
                let mut acc = GradedPolynomial::zero();
                for k in 0..=n {
                    let (a, b) = (&self.components[k], &other.components[n - k]);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    if a.is_one() {
                        acc += b;
                    } else if b.is_one() {
                        acc += a;
                    } else {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect();
        Ok(TruncatedSeries { components })
    }

    fn require_unit_constant(&self) -> Result<()> {
        if !self.components[0].is_one() {
            return Err(Error::ConstantTerm { expected: "1" });
        }
        Ok(())
    }

    /// Multiplicative inverse; requires constant term 1.
    pub fn inv(&self) -> Result<Self> {
        self.require_unit_constant()?;
        let bound = self.bound() as usize;
        let mut out = vec![GradedPolynomial::one()];
        for n in 1..=bound {
            let mut acc = GradedPolynomial::zero();
            for k in 1..=n {
                let a = &self.components[k];
                if !a.is_zero() {
                    acc -= &(a * &out[n - k]);
                }
            }
            out.push(acc);
        }
        Ok(TruncatedSeries { components: out })
    }

    /// `exp` of a series with zero constant term, via `n e_n = sum k a_k e_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.components[0].is_zero() {
            return Err(Error::ConstantTerm { expected: "0" });
        }
        let bound = self.bound() as usize;
        let mut out = vec![GradedPolynomial::one()];
        for n in 1..=bound {
            let mut acc = GradedPolynomial::zero();
            for k in 1..=n {
                let a = &self.components[k];
                if !a.is_zero() && !out[n - k].is_zero() {
                    acc += &(a * &out[n - k]).scale(&int(k as i64));
                }
            }
            out.push(acc.scale(&rat(1, n as i64)));
        }
        Ok(TruncatedSeries { components: out })
    }

    /// `log` of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        self.require_unit_constant()?;
        let bound = self.bound() as usize;
        let mut out = vec![GradedPolynomial::zero()];
        for n in 1..=bound {
            let mut acc = self.components[n].scale(&int(n as i64));
            for k in 1..n {
                let a = &self.components[n - k];
                if !a.is_zero() && !out[k].is_zero() {
                    acc -= &(&out[k] * a).scale(&int(k as i64));
                }
            }
            out.push(acc.scale(&rat(1, n as i64)));
        }
        Ok(TruncatedSeries { components: out })
    }

    /// If every term is a power of one degree-1 generator, returns that
    /// generator and the coefficient list.
    pub fn as_univariate(&self) -> Option<(Option<Var>, UniSeries<Rational>)> {
        let mut var: Option<Var> = None;
        let mut coeffs = vec![<Rational as Zero>::zero(); self.components.len()];
        for (k, comp) in self.components.iter().enumerate() {
            for (m, c) in comp.terms() {
                match m.factors() {
                    [] => coeffs[0] = c.clone(),
                    [(v, e)] if v.degree == 1 && *e as usize == k => {
                        if var.is_some_and(|w| w != *v) {
                            return None;
                        }
                        var = Some(*v);
                        coeffs[k] = c.clone();
                    }
                    _ => return None,
                }
            }
        }
        Some((var, UniSeries::new(coeffs)))
    }

    pub fn from_univariate(var: Var, s: &UniSeries<Rational>) -> Self {
        let mut out = Self::zero(s.bound());
        for (k, c) in s.coeffs().iter().enumerate() {
            out.components[k] = GradedPolynomial::term(Monomial::power(var, k as u32), c.clone());
        }
        out
    }

    /// Compositional inverse of `f = x + O(x^2)` in a single degree-1 variable.
    pub fn compose_inverse(&self) -> Result<Self> {
        let (var, uni) = self
            .as_univariate()
            .ok_or(Error::NotCompositionallyInvertible)?;
        let var = var.ok_or(Error::NotCompositionallyInvertible)?;
        let g = uni.compose_inverse()?;
        Ok(Self::from_univariate(var, &g))
    }
}

/// Coefficient ring for [`UniSeries`].
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, q: &Rational) -> Self;
    fn from_rational(q: &Rational) -> Self {
        Self::one().scale(q)
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
}

impl Coeff for GradedPolynomial {
    fn zero() -> Self {
        GradedPolynomial::zero()
    }
    fn one() -> Self {
        GradedPolynomial::one()
    }
    fn is_zero(&self) -> bool {
        GradedPolynomial::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, q: &Rational) -> Self {
        GradedPolynomial::scale(self, q)
    }
}

/// `sum_{k=0}^{D} a_k x^k`, truncated at `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct UniSeries<R: Coeff> {
    coeffs: Vec<R>,
}

impl<R: Coeff> UniSeries<R> {
    /// The bound is `coeffs.len() - 1`; an empty vector is treated as `[0]`.
    pub fn new(mut coeffs: Vec<R>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(R::zero());
        }
        UniSeries { coeffs }
    }

    pub fn zero(bound: u32) -> Self {
        UniSeries {
            coeffs: vec![R::zero(); bound as usize + 1],
        }
    }

    pub fn one(bound: u32) -> Self {
        Self::monomial(R::one(), 0, bound)
    }

    /// The series `x`.
    pub fn x(bound: u32) -> Self {
        Self::monomial(R::one(), 1, bound)
    }

    pub fn monomial(c: R, k: u32, bound: u32) -> Self {
        let mut s = Self::zero(bound);
        if k <= bound {
            s.coeffs[k as usize] = c;
        }
        s
    }

    pub fn bound(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: u32) -> &R {
        &self.coeffs[k as usize]
    }

    /// Same series with a smaller or larger bound (missing terms are zero).
    pub fn with_bound(&self, bound: u32) -> Self {
        let mut coeffs: Vec<R> = self.coeffs.iter().take(bound as usize + 1).cloned().collect();
        coeffs.resize(bound as usize + 1, R::zero());
        UniSeries { coeffs }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.bound() != other.bound() {
            return Err(Error::BoundMismatch {
                left: self.bound(),
                right: other.bound(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(UniSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(UniSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn scale(&self, q: &Rational) -> Self {
        UniSeries {
            coeffs: self.coeffs.iter().map(|a| a.scale(q)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.coeffs.len();
        let mut out = vec![R::zero(); d];
        for i in 0..d {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..d - i {
                if !other.coeffs[j].is_zero() {
                    out[i + j] = out[i + j].add(&self.coeffs[i].mul(&other.coeffs[j]));
                }
            }
        }
        Ok(UniSeries { coeffs: out })
    }

    pub fn inv(&self) -> Result<Self> {
        if self.coeffs[0] != R::one() {
            return Err(Error::ConstantTerm { expected: "1" });
        }
        let d = self.coeffs.len();
        let mut out = vec![R::one()];
        for n in 1..d {
            let mut acc = R::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = acc.sub(&self.coeffs[k].mul(&out[n - k]));
                }
            }
            out.push(acc);
        }
        Ok(UniSeries { coeffs: out })
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm { expected: "0" });
        }
        let d = self.coeffs.len();
        let mut out = vec![R::one()];
        for n in 1..d {
            let mut acc = R::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = acc.add(&self.coeffs[k].mul(&out[n - k]).scale(&int(k as i64)));
                }
            }
            out.push(acc.scale(&rat(1, n as i64)));
        }
        Ok(UniSeries { coeffs: out })
    }

    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != R::one() {
            return Err(Error::ConstantTerm { expected: "1" });
        }
        let d = self.coeffs.len();
        let mut out = vec![R::zero()];
        for n in 1..d {
            let mut acc = self.coeffs[n].scale(&int(n as i64));
            for k in 1..n {
                if !self.coeffs[n - k].is_zero() {
                    acc = acc.sub(&out[k].mul(&self.coeffs[n - k]).scale(&int(k as i64)));
                }
            }
            out.push(acc.scale(&rat(1, n as i64)));
        }
        Ok(UniSeries { coeffs: out })
    }

    /// `self(g)` for `g` with zero constant term, by Horner's rule.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.check(g)?;
        if !g.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm { expected: "0" });
        }
        let bound = self.bound();
        let mut acc = Self::zero(bound);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g)?;
            acc.coeffs[0] = acc.coeffs[0].add(c);
        }
        Ok(acc)
    }

    /// `g` with `self(g(x)) = x` for `self = x + O(x^2)`.
    ///
    /// Solved degree by degree: with `g` correct below `n`, the coefficient
    /// of `x^n` in `self(g)` is `g_n` plus terms in lower coefficients only.
    pub fn compose_inverse(&self) -> Result<Self> {
        if self.bound() == 0 {
            return Err(Error::NotCompositionallyInvertible);
        }
        if !self.coeffs[0].is_zero() || self.coeffs[1] != R::one() {
            return Err(Error::NotCompositionallyInvertible);
        }
        let bound = self.bound();
        let mut g = Self::x(bound);
        for n in 2..=bound as usize {
            let partial = self.with_bound(n as u32).compose(&g.with_bound(n as u32))?;
            g.coeffs[n] = R::zero().sub(&partial.coeffs[n]);
        }
        Ok(g)
    }

    pub fn map<S: Coeff>(&self, f: impl Fn(&R) -> S) -> UniSeries<S> {
        UniSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;

    fn c(k: u32) -> GradedPolynomial {
        GradedPolynomial::var(Var::weighted('c', k))
    }

    fn series(text: &str, bound: u32) -> TruncatedSeries {
        TruncatedSeries::from_polynomial(&text.parse().unwrap(), bound)
    }

    #[test]
    fn difference_of_squares() {
        let a = series("1 + c[1]", 4);
        let b = series("1 - c[1]", 4);
        assert_eq!(a.mul(&b).unwrap(), series("1 - c[1]^2", 4));
        assert_eq!(TruncatedSeries::one(4).mul(&a).unwrap(), a);
    }

    #[test]
    fn hand_convolution_degree_two() {
        // (1 + c1 + c2)(1 - c1 + c1^2 - c1^3): degree 2 is c1^2 - c1^2 + c2.
        let a = series("1 + c[1] + c[2]", 3);
        let b = series("1 - c[1] + c[1]^2 - c[1]^3", 3);
        assert_eq!(a.mul(&b).unwrap().component(2), &c(2));
    }

    #[test]
    fn mismatched_bounds_fail() {
        let err = series("1", 2).mul(&series("1", 3)).unwrap_err();
        assert_eq!(err, Error::BoundMismatch { left: 2, right: 3 });
    }

    #[test]
    fn geometric_inverse() {
        let inv = series("1 + c[1]", 3).inv().unwrap();
        assert_eq!(inv, series("1 - c[1] + c[1]^2 - c[1]^3", 3));
        assert_eq!(TruncatedSeries::one(5).inv().unwrap(), TruncatedSeries::one(5));
        assert!(series("2 + c[1]", 3).inv().is_err());
        assert!(series("c[1]", 3).inv().is_err());
    }

    #[test]
    fn inverse_degree_three() {
        let a = series("1 + c[1] + c[2]", 3);
        let inv = a.inv().unwrap();
        assert_eq!(inv.component(3), &"-c[1]^3 + 2*c[1]*c[2]".parse().unwrap());
        assert_eq!(a.mul(&inv).unwrap(), TruncatedSeries::one(3));
    }

    #[test]
    fn exp_and_log_examples() {
        assert_eq!(TruncatedSeries::zero(4).exp().unwrap(), TruncatedSeries::one(4));
        let e = series("-2*N[1]", 3).exp().unwrap();
        assert_eq!(e.component(2), &"2*N[1]^2".parse().unwrap());
        let l = series("1 + c[1]", 2).log().unwrap();
        assert_eq!(l, series("c[1] - 1/2*c[1]^2", 2));
        assert!(series("1 + c[1]", 2).exp().is_err());
        assert!(series("c[1]", 2).log().is_err());
    }

    #[test]
    fn compose_inverse_examples() {
        let x = series("t[1]", 5);
        assert_eq!(x.compose_inverse().unwrap(), x);
        let f = series("t[1] + t[1]^2", 4);
        assert_eq!(
            f.compose_inverse().unwrap(),
            series("t[1] - t[1]^2 + 2*t[1]^3 - 5*t[1]^4", 4)
        );
        // x/(1-x) and x/(1+x) are mutually inverse.
        let f = series("t[1] + t[1]^2 + t[1]^3 + t[1]^4 + t[1]^5", 5);
        let g = series("t[1] - t[1]^2 + t[1]^3 - t[1]^4 + t[1]^5", 5);
        assert_eq!(f.compose_inverse().unwrap(), g);
        assert!(series("2*t[1]", 3).compose_inverse().is_err());
        assert!(series("c[2]", 3).compose_inverse().is_err());
    }

    #[test]
    fn univariate_ring_ops() {
        let f = UniSeries::new(vec![int(0), int(1), int(1)]);
        let g = f.compose_inverse().unwrap();
        assert_eq!(f.compose(&g).unwrap(), UniSeries::x(2));
        let e = UniSeries::new(vec![int(0), int(1), int(0), int(0)]).exp().unwrap();
        assert_eq!(e.coeffs(), &[int(1), int(1), rat(1, 2), rat(1, 6)]);
        assert_eq!(e.log().unwrap().coeffs(), &[int(0), int(1), int(0), int(0)]);
    }
}
