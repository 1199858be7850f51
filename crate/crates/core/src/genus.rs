//! Genera of small manifold models and their deformations.
//!
//! A [`ManifoldModel`] is a truncated polynomial cohomology ring (generators
//! in real degree 2 for the projective-space factors) together with the
//! total Chern class of the tangent bundle and a volume monomial. Chern roots
//! are never introduced: the multiplicative class of a characteristic series
//! `Q` is `exp(Σ_k ℓ_k N_k(c))` with `log Q = Σ ℓ_k x^k` and `N_k` the Newton
//! polynomials in the Chern classes.
//!
//! Series coefficients are polynomials in degree-0 parameters, so the same
//! code evaluates genera over the rationals, symbolically in deformation
//! parameters `t[k]`, or symbolically in `g` (Euler's constant) and `z[k]`
//! (`ζ(k)`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mzv::{mzv_eval, CertifiedReal};
use crate::poly::{GradedPolynomial, Grading, Monomial, Var};
use crate::rational::{inv_factorial, int, parse_rational, rat, Rational};
use crate::series::UniSeries;
use crate::symm::{d_classes, newton_polynomial, GeneratorConvention};
use crate::tor::{coefficient_ring_series, convolve, CoefficientRing};
use crate::combinat::Composition;

/// Euler's constant, nearest double.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub fn gamma_var() -> Var {
    Var::new('g', 0, 0)
}

pub fn zeta_var(k: u32) -> Var {
    Var::new('z', k, 0)
}

pub fn deformation_var(k: u32) -> Var {
    Var::new('t', k, 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub var: Var,
    /// Largest nonvanishing power: `var^(nilpotency + 1) = 0`.
    pub nilpotency: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldModel {
    pub name: String,
    pub dim_c: u32,
    pub generators: Vec<Generator>,
    pub total_chern: GradedPolynomial,
    pub volume: Monomial,
}

#[derive(Debug, Deserialize, Serialize)]
struct ModelFile {
    name: String,
    dim_c: u32,
    generators: Vec<GeneratorFile>,
    total_chern: String,
    volume_monomial: String,
}

#[derive(Debug, Deserialize, Serialize)]
struct GeneratorFile {
    sym: String,
    deg: u32,
    nilpotency: u32,
}

fn parse_sym(sym: &str, degree: u32) -> Result<Var> {
    let sym = sym.trim();
    let mut chars = sym.chars();
    let family = chars
        .next()
        .filter(|c| c.is_ascii_alphabetic())
        .ok_or_else(|| Error::parse(0, format!("generator symbol {sym:?} must start with a letter")))?;
    let rest: String = chars.collect();
    let index = if rest.is_empty() {
        0
    } else {
        rest.strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| Error::parse(1, format!("bad generator symbol {sym:?}")))?
    };
    if matches!(family, 'c' | 'g' | 't' | 'z' | 'y') {
        return Err(Error::domain(format!(
            "generator letter {family:?} is reserved for Chern classes or parameters"
        )));
    }
    Ok(Var::new(family, index, degree))
}

impl ManifoldModel {
    /// Validates and assembles a model.
    pub fn new(
        name: impl Into<String>,
        dim_c: u32,
        generators: Vec<Generator>,
        total_chern: GradedPolynomial,
        volume: Monomial,
    ) -> Result<Self> {
        let m = ManifoldModel {
            name: name.into(),
            dim_c,
            generators,
            total_chern,
            volume,
        };
        let vars: BTreeSet<Var> = m.generators.iter().map(|g| g.var).collect();
        if vars.len() != m.generators.len() {
            return Err(Error::domain("generator symbols must be distinct"));
        }
        if let Some(g) = m.generators.iter().find(|g| g.var.degree == 0 || g.var.degree % 2 == 1) {
            return Err(Error::domain(format!(
                "generator {} must have positive even degree",
                g.var
            )));
        }
        if m.total_chern.constant_term() != Rational::one() {
            return Err(Error::ConstantTerm { expected: "1" });
        }
        if m.total_chern.vars().iter().any(|v| !vars.contains(v)) {
            return Err(Error::domain("total Chern class uses an undeclared generator"));
        }
        if m.volume.degree() != 2 * dim_c || m.volume.factors().iter().any(|(v, _)| !vars.contains(v)) {
            return Err(Error::domain(format!(
                "volume monomial must be a product of generators of degree {}",
                2 * dim_c
            )));
        }
        if m.reduce(&GradedPolynomial::term(m.volume.clone(), Rational::one())).is_zero() {
            return Err(Error::domain("volume monomial vanishes in the cohomology ring"));
        }
        Ok(m)
    }

    /// A point: no generators, trivial tangent data.
    pub fn point() -> Self {
        ManifoldModel {
            name: "point".into(),
            dim_c: 0,
            generators: Vec::new(),
            total_chern: GradedPolynomial::one(),
            volume: Monomial::one(),
        }
    }

    /// `CP^n` with `c = (1 + x)^(n+1)`.
    pub fn projective_space(n: u32) -> Result<Self> {
        if n == 0 {
            return Ok(Self::point());
        }
        let x = Var::new('x', 0, 2);
        let one_plus_x = &GradedPolynomial::one() + &GradedPolynomial::var(x);
        let chern = one_plus_x.pow(n + 1);
        let m = ManifoldModel {
            name: format!("CP{n}"),
            dim_c: n,
            generators: vec![Generator { var: x, nilpotency: n }],
            total_chern: GradedPolynomial::zero(),
            volume: Monomial::power(x, n),
        };
        let total_chern = m.reduce(&chern);
        ManifoldModel::new(m.name, n, m.generators, total_chern, m.volume)
    }

    /// `self × other`; the second factor's generator indices are shifted
    /// past the first factor's.
    pub fn product(&self, other: &ManifoldModel) -> Result<Self> {
        let offset = self.generators.iter().map(|g| g.var.index + 1).max().unwrap_or(0);
        let shift = |v: &Var| Var::new(v.family, v.index + offset, v.degree);
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().map(|g| Generator {
            var: shift(&g.var),
            nilpotency: g.nilpotency,
        }));
        let other_chern = other
            .total_chern
            .substitute(|v| Some(GradedPolynomial::var(shift(v))));
        let volume = self.volume.mul(&Monomial::from_factors(
            other.volume.factors().iter().map(|(v, e)| (shift(v), *e)),
        ));
        let name = format!("{}x{}", self.name, other.name);
        let dim_c = self.dim_c + other.dim_c;
        let mut m = ManifoldModel {
            name,
            dim_c,
            generators,
            total_chern: GradedPolynomial::zero(),
            volume,
        };
        m.total_chern = m.reduce(&(&self.total_chern * &other_chern));
        ManifoldModel::new(m.name, dim_c, m.generators, m.total_chern, m.volume)
    }

    /// Moves a class of the second factor into `self × other`.
    pub fn shift_from_second_factor(&self, p: &GradedPolynomial) -> GradedPolynomial {
        let offset = self.generators.iter().map(|g| g.var.index + 1).max().unwrap_or(0);
        p.substitute(|v| {
            (v.degree > 0).then(|| GradedPolynomial::var(Var::new(v.family, v.index + offset, v.degree)))
        })
    }

    /// `CPn` for `n ≤ 6`, `point`, or products such as `CP1xCP2`.
    pub fn catalog(name: &str) -> Result<Self> {
        let name = name.trim();
        let factors: Vec<&str> = name.split('x').collect();
        if factors.len() > 1 {
            let mut acc = Self::catalog(factors[0])?;
            for f in &factors[1..] {
                acc = acc.product(&Self::catalog(f)?)?;
            }
            return Ok(acc);
        }
        if name.eq_ignore_ascii_case("point") || name.eq_ignore_ascii_case("pt") {
            return Ok(Self::point());
        }
        let n = name
            .strip_prefix("CP")
            .and_then(|n| n.parse::<u32>().ok())
            .filter(|n| (1..=6).contains(n))
            .ok_or_else(|| Error::domain(format!("unknown manifold {name:?} (catalog: point, CP1..CP6 and products like CP1xCP2)")))?;
        Self::projective_space(n)
    }

    pub fn catalog_names() -> Vec<String> {
        (1..=6).map(|n| format!("CP{n}")).collect()
    }

    /// Reads the JSON presentation format.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| Error::parse(e.column(), e.to_string()))?;
        let mut generators = Vec::new();
        let mut grading = Grading::strict();
        for g in &file.generators {
            let var = parse_sym(&g.sym, g.deg)?;
            grading = grading.with_var(var);
            generators.push(Generator {
                var,
                nilpotency: g.nilpotency,
            });
        }
        let total_chern = GradedPolynomial::parse(&file.total_chern, &grading)?;
        let volume_poly = GradedPolynomial::parse(&file.volume_monomial, &grading)?;
        let mut terms = volume_poly.terms();
        let volume = match (terms.next(), terms.next()) {
            (Some((m, c)), None) if c.is_one() => m.clone(),
            _ => return Err(Error::domain("volume_monomial must be a single monomial with coefficient 1")),
        };
        let probe = ManifoldModel {
            name: file.name.clone(),
            dim_c: file.dim_c,
            generators: generators.clone(),
            total_chern: GradedPolynomial::zero(),
            volume: volume.clone(),
        };
        let total_chern = probe.reduce(&total_chern);
        ManifoldModel::new(file.name, file.dim_c, generators, total_chern, volume)
    }

    pub fn to_json(&self) -> String {
        let file = ModelFile {
            name: self.name.clone(),
            dim_c: self.dim_c,
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorFile {
                    sym: g.var.to_string(),
                    deg: g.var.degree,
                    nilpotency: g.nilpotency,
                })
                .collect(),
            total_chern: self.total_chern.to_string(),
            volume_monomial: self.volume.to_string(),
        };
        serde_json::to_string(&file).expect("model serializes")
    }

    /// Grading that knows this model's generators, for parsing classes.
    pub fn grading(&self) -> Grading {
        self.generators.iter().fold(Grading::strict(), |g, gen| g.with_var(gen.var))
    }

    /// Parses a cohomology class written in the model's generators.
    pub fn parse_class(&self, text: &str) -> Result<GradedPolynomial> {
        Ok(self.reduce(&GradedPolynomial::parse(text, &self.grading())?))
    }

    fn is_model_var(&self, v: &Var) -> bool {
        self.generators.iter().any(|g| g.var == *v)
    }

    fn nilpotency(&self, v: &Var) -> Option<u32> {
        self.generators.iter().find(|g| g.var == *v).map(|g| g.nilpotency)
    }

    /// Degree of the cohomology part of a monomial (parameters have degree 0).
    fn cohomology_degree(&self, m: &Monomial) -> u32 {
        m.degree()
    }

    /// Reduction modulo the nilpotency relations and degrees above `2n`.
    pub fn reduce(&self, p: &GradedPolynomial) -> GradedPolynomial {
        p.filter(|m| {
            self.cohomology_degree(m) <= 2 * self.dim_c
                && m.factors()
                    .iter()
                    .all(|(v, e)| self.nilpotency(v).is_none_or(|k| *e <= k))
        })
    }

    pub fn multiply(&self, a: &GradedPolynomial, b: &GradedPolynomial) -> GradedPolynomial {
        self.reduce(&a.mul_truncated(b, 2 * self.dim_c))
    }

    /// `c_j` of the tangent bundle.
    pub fn chern_class(&self, j: u32) -> GradedPolynomial {
        self.total_chern.homogeneous(2 * j)
    }

    /// Evaluates a polynomial in the Chern classes `c[j]` on this model.
    pub fn pull_back(&self, p: &GradedPolynomial) -> GradedPolynomial {
        let out = p.substitute(|v| (v.family == 'c' && v.index > 0).then(|| self.chern_class(v.index)));
        self.reduce(&out)
    }

    /// `exp(u)` in the cohomology ring, for `u` of positive degree.
    pub fn ring_exp(&self, u: &GradedPolynomial) -> GradedPolynomial {
        let mut acc = GradedPolynomial::one();
        let mut power = GradedPolynomial::one();
        for j in 1..=self.dim_c {
            power = self.multiply(&power, u);
            if power.is_zero() {
                break;
            }
            acc += &power.scale(&inv_factorial(j));
        }
        acc
    }

    /// Pairing with the fundamental class: the coefficient of the volume
    /// monomial, as a polynomial in any parameters present.
    pub fn integrate(&self, p: &GradedPolynomial) -> GradedPolynomial {
        let mut out = GradedPolynomial::zero();
        for (m, c) in p.terms() {
            let (params, cohomology): (Vec<_>, Vec<_>) =
                m.factors().iter().cloned().partition(|(v, _)| !self.is_model_var(v));
            if Monomial::from_factors(cohomology) == self.volume {
                out.add_term(Monomial::from_factors(params), c.clone());
            }
        }
        out
    }

    /// Betti numbers by real degree `0..=2n`.
    pub fn betti(&self) -> Vec<u64> {
        let mut out = vec![0u64; 2 * self.dim_c as usize + 1];
        fn go(gens: &[Generator], deg: u32, max: u32, out: &mut Vec<u64>) {
            let Some((g, rest)) = gens.split_first() else {
                out[deg as usize] += 1;
                return;
            };
            for e in 0..=g.nilpotency {
                let d = deg + e * g.var.degree;
                if d > max {
                    break;
                }
                go(rest, d, max, out);
            }
        }
        go(&self.generators, 0, 2 * self.dim_c, &mut out);
        out
    }
}

impl fmt::Display for ManifoldModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// `ch_k = N_k(c) / k!`, and `ch_0 = n`.
pub fn chern_character(m: &ManifoldModel, k: u32) -> GradedPolynomial {
    if k == 0 {
        return GradedPolynomial::constant(int(m.dim_c as i64));
    }
    if k > m.dim_c {
        return GradedPolynomial::zero();
    }
    m.pull_back(&newton_polynomial(k)).scale(&inv_factorial(k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesForm {
    /// `Q(x) = 1 + ...`
    Characteristic,
    /// `f(x) = x + ...`, with `Q(x) = x / f(x)`.
    Exponential,
}

/// A genus, given by its characteristic series or by its exponential.
#[derive(Clone, Debug, PartialEq)]
pub struct GenusSeries {
    form: SeriesForm,
    series: UniSeries<GradedPolynomial>,
}

fn constant_series(coeffs: Vec<Rational>) -> UniSeries<GradedPolynomial> {
    UniSeries::new(coeffs.into_iter().map(GradedPolynomial::constant).collect())
}

impl GenusSeries {
    pub fn characteristic(series: UniSeries<GradedPolynomial>) -> Result<Self> {
        if !series.coeff(0).is_one() {
            return Err(Error::ConstantTerm { expected: "1" });
        }
        Ok(GenusSeries {
            form: SeriesForm::Characteristic,
            series,
        })
    }

    pub fn exponential(series: UniSeries<GradedPolynomial>) -> Result<Self> {
        if series.bound() == 0 || !series.coeff(0).is_zero() || !series.coeff(1).is_one() {
            return Err(Error::NotCompositionallyInvertible);
        }
        Ok(GenusSeries {
            form: SeriesForm::Exponential,
            series,
        })
    }

    pub fn from_rational_characteristic(coeffs: Vec<Rational>) -> Result<Self> {
        Self::characteristic(constant_series(coeffs))
    }

    pub fn from_rational_exponential(coeffs: Vec<Rational>) -> Result<Self> {
        Self::exponential(constant_series(coeffs))
    }

    /// `(x/2) / sinh(x/2)`.
    pub fn a_hat(bound: u32) -> Self {
        let denom: Vec<Rational> = (0..=bound)
            .map(|k| {
                if k % 2 == 0 {
                    inv_factorial(k + 1) * Rational::new(1.into(), num_bigint::BigInt::from(2u32).pow(k))
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let q = UniSeries::new(denom).inv().expect("constant term 1");
        Self::characteristic(q.map(|c| GradedPolynomial::constant(c.clone()))).expect("Q(0) = 1")
    }

    /// `x / (1 - e^{-x})`.
    pub fn todd(bound: u32) -> Self {
        let denom: Vec<Rational> = (0..=bound)
            .map(|k| {
                let s = if k % 2 == 0 { int(1) } else { int(-1) };
                s * inv_factorial(k + 1)
            })
            .collect();
        let q = UniSeries::new(denom).inv().expect("constant term 1");
        Self::characteristic(q.map(|c| GradedPolynomial::constant(c.clone()))).expect("Q(0) = 1")
    }

    /// `x / tanh(x)`.
    pub fn l_genus(bound: u32) -> Self {
        let cosh: Vec<Rational> = (0..=bound)
            .map(|k| if k % 2 == 0 { inv_factorial(k) } else { Rational::zero() })
            .collect();
        let sinh_over_x: Vec<Rational> = (0..=bound)
            .map(|k| if k % 2 == 0 { inv_factorial(k + 1) } else { Rational::zero() })
            .collect();
        let q = UniSeries::new(cosh)
            .mul(&UniSeries::new(sinh_over_x).inv().expect("constant term 1"))
            .expect("same bound");
        Self::characteristic(q.map(|c| GradedPolynomial::constant(c.clone()))).expect("Q(0) = 1")
    }

    /// Looks up `A-hat`, `Todd`, `L` or `Gamma` (the symbolic Γ-exponential).
    pub fn named(name: &str, bound: u32) -> Result<Self> {
        match name.to_ascii_lowercase().replace(['-', '_', ' '], "").as_str() {
            "ahat" | "â" => Ok(Self::a_hat(bound)),
            "todd" | "td" => Ok(Self::todd(bound)),
            "l" | "signature" => Ok(Self::l_genus(bound)),
            "gamma" => gamma_exponential(bound + 1),
            _ => Err(Error::domain(format!(
                "unknown genus series {name:?} (expected A-hat, Todd, L or Gamma)"
            ))),
        }
    }

    pub fn form(&self) -> SeriesForm {
        self.form
    }

    pub fn series(&self) -> &UniSeries<GradedPolynomial> {
        &self.series
    }

    /// `Q(x)`; from an exponential `f` this is `(f(x)/x)^{-1}`, one order shorter.
    pub fn to_characteristic(&self) -> Result<UniSeries<GradedPolynomial>> {
        match self.form {
            SeriesForm::Characteristic => Ok(self.series.clone()),
            SeriesForm::Exponential => {
                let shifted = UniSeries::new(self.series.coeffs()[1..].to_vec());
                shifted.inv()
            }
        }
    }

    /// `f(x) = x / Q(x)`.
    pub fn to_exponential(&self) -> Result<UniSeries<GradedPolynomial>> {
        match self.form {
            SeriesForm::Exponential => Ok(self.series.clone()),
            SeriesForm::Characteristic => {
                let inv = self.series.inv()?;
                let mut coeffs = vec![GradedPolynomial::zero()];
                coeffs.extend(inv.coeffs()[..inv.coeffs().len() - 1].iter().cloned());
                Ok(UniSeries::new(coeffs))
            }
        }
    }
}

/// Total multiplicative class `∏ Q(x_i)` of the tangent bundle.
pub fn multiplicative_class(m: &ManifoldModel, rho: &GenusSeries) -> Result<GradedPolynomial> {
    let q = rho.to_characteristic()?;
    if q.bound() < m.dim_c {
        return Err(Error::Truncation {
            requested: m.dim_c,
            available: q.bound(),
        });
    }
    let log_q = q.with_bound(m.dim_c).log()?;
    let mut exponent = GradedPolynomial::zero();
    for k in 1..=m.dim_c {
        let l = log_q.coeff(k);
        if !l.is_zero() {
            exponent += &(l * &m.pull_back(&newton_polynomial(k)));
        }
    }
    Ok(m.ring_exp(&m.reduce(&exponent)))
}

/// Genus of `m`: the multiplicative class paired with the fundamental class.
pub fn genus(m: &ManifoldModel, rho: &GenusSeries) -> Result<GradedPolynomial> {
    Ok(m.integrate(&multiplicative_class(m, rho)?))
}

/// Same as [`genus`] for series with rational coefficients.
pub fn genus_rational(m: &ManifoldModel, rho: &GenusSeries) -> Result<Rational> {
    let g = genus(m, rho)?;
    if g.vars().is_empty() {
        Ok(g.constant_term())
    } else {
        Err(Error::domain("genus has symbolic coefficients"))
    }
}

/// Value on `CP^n` from the exponential: `(n+1) [y^{n+1}] f^{-1}(y)`.
pub fn genus_from_exponential(f: &UniSeries<GradedPolynomial>, n: u32) -> Result<GradedPolynomial> {
    if f.bound() < n + 1 {
        return Err(Error::Truncation {
            requested: n + 1,
            available: f.bound(),
        });
    }
    let g = f.with_bound(n + 1).compose_inverse()?;
    Ok(g.coeff(n + 1).scale(&int(n as i64 + 1)))
}

/// `1/Γ(x) = x · exp(γx − Σ_{k≥2} (−1)^k ζ(k) x^k / k)` through `x^bound`,
/// with `γ` and `ζ(k)` kept as the symbols `g` and `z[k]`.
pub fn gamma_exponential(bound: u32) -> Result<GenusSeries> {
    if bound < 1 {
        return Err(Error::domain("bound must be at least 1"));
    }
    let mut exponent = vec![GradedPolynomial::zero(); bound as usize];
    if bound >= 2 {
        exponent[1] = GradedPolynomial::var(gamma_var());
    }
    for k in 2..bound {
        let sign = if k % 2 == 0 { -1 } else { 1 };
        exponent[k as usize] = GradedPolynomial::var(zeta_var(k)).scale(&rat(sign, k as i64));
    }
    let e = UniSeries::new(exponent).exp()?;
    let mut coeffs = vec![GradedPolynomial::zero()];
    coeffs.extend(e.coeffs().iter().cloned());
    GenusSeries::exponential(UniSeries::new(coeffs))
}

/// Evaluates a polynomial whose variables all have certified values.
pub fn evaluate_certified(
    p: &GradedPolynomial,
    value: &dyn Fn(&Var) -> Option<CertifiedReal>,
) -> Result<CertifiedReal> {
    let mut acc = CertifiedReal::exact(0.0);
    for (m, c) in p.terms() {
        let mut term = CertifiedReal::from_rational(c);
        for (v, e) in m.factors() {
            let x = value(v).ok_or_else(|| Error::domain(format!("no value supplied for {v}")))?;
            for _ in 0..*e {
                term = term.mul(&x);
            }
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Numeric values of `g` and `z[k]`: Euler's constant and certified `ζ(k)`.
pub fn zeta_values(max_k: u32, target_error: f64) -> Result<BTreeMap<Var, CertifiedReal>> {
    let mut out = BTreeMap::new();
    out.insert(gamma_var(), CertifiedReal::new(EULER_GAMMA, 1e-16));
    for k in 2..=max_k {
        let z = mzv_eval(&Composition::new(vec![k])?, target_error)?;
        out.insert(zeta_var(k), z);
    }
    Ok(out)
}

/// One deformation parameter value.
#[derive(Clone, Debug, PartialEq)]
pub enum ParamValue {
    Rational(Rational),
    /// `re + i·im` with rational parts.
    Complex(Rational, Rational),
    Certified(CertifiedReal),
    /// Left as the symbol `t[k]`.
    Symbolic,
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::rational::format_rational;
        match self {
            ParamValue::Rational(q) => write!(f, "{}", format_rational(q)),
            ParamValue::Complex(re, im) => write!(f, "{} + {}*i", format_rational(re), format_rational(im)),
            ParamValue::Certified(c) => write!(f, "{c}"),
            ParamValue::Symbolic => f.write_str("symbolic"),
        }
    }
}

/// Parameters `t_k` for odd `k`, attached to `ch_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationParameters {
    values: BTreeMap<u32, ParamValue>,
}

impl DeformationParameters {
    /// Checks every `k` is odd, and `k ≥ 3` under the `i > 0` convention.
    pub fn new(values: BTreeMap<u32, ParamValue>, convention: GeneratorConvention) -> Result<Self> {
        for &k in values.keys() {
            if k % 2 == 0 {
                return Err(Error::domain(format!("deformation index {k} must be odd")));
            }
            if k == 1 && convention == GeneratorConvention::FromOne {
                return Err(Error::domain("t_1 is excluded under the i>0 convention"));
            }
        }
        Ok(DeformationParameters { values })
    }

    pub fn zero() -> Self {
        DeformationParameters {
            values: BTreeMap::new(),
        }
    }

    /// Parses `1:1/3,3:0`, `1:2i`, `1:1/2+3i` or `3:t` (symbolic).
    pub fn parse(text: &str, convention: GeneratorConvention) -> Result<Self> {
        let mut values = BTreeMap::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once(':')
                .ok_or_else(|| Error::parse(0, format!("expected k:value, got {item:?}")))?;
            let k: u32 = k.trim().parse().map_err(|_| Error::parse(0, format!("bad index {k:?}")))?;
            values.insert(k, parse_param_value(v.trim())?);
        }
        Self::new(values, convention)
    }

    pub fn values(&self) -> &BTreeMap<u32, ParamValue> {
        &self.values
    }

    /// Topological degree carried by `t_k`: `4·((k−1)/2) + 2`.
    pub fn degree_tag(k: u32) -> u32 {
        4 * ((k - 1) / 2) + 2
    }

    /// Entrywise sum; only rational entries can be added.
    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut values = self.values.clone();
        for (k, v) in &other.values {
            let sum = match (values.get(k), v) {
                (None, v) => v.clone(),
                (Some(ParamValue::Rational(a)), ParamValue::Rational(b)) => ParamValue::Rational(a + b),
                _ => return Err(Error::domain("only rational parameters can be added")),
            };
            values.insert(*k, sum);
        }
        Ok(DeformationParameters { values })
    }
}

fn parse_param_value(v: &str) -> Result<ParamValue> {
    if v == "t" {
        return Ok(ParamValue::Symbolic);
    }
    if let Some(body) = v.strip_suffix('i') {
        // `b i`, `a+b i` or `a-b i`.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im.trim_start_matches('+') {
            "" => "1",
            "-" => "-1",
            s => s,
        };
        let re = parse_rational(re).ok_or_else(|| Error::parse(0, format!("bad real part {re:?}")))?;
        let im = parse_rational(im).ok_or_else(|| Error::parse(0, format!("bad imaginary part {im:?}")))?;
        return Ok(ParamValue::Complex(re, im));
    }
    parse_rational(v)
        .map(ParamValue::Rational)
        .ok_or_else(|| Error::parse(0, format!("bad parameter value {v:?}")))
}

/// `Q(x) · exp(Σ_k t_k x^k / k!)` with each `t_k` a polynomial coefficient.
pub fn deform_series(rho: &GenusSeries, t: &BTreeMap<u32, GradedPolynomial>) -> Result<GenusSeries> {
    let q = rho.to_characteristic()?;
    let bound = q.bound();
    let mut exponent = vec![GradedPolynomial::zero(); bound as usize + 1];
    for (&k, tk) in t {
        if k <= bound {
            exponent[k as usize] = tk.scale(&inv_factorial(k));
        }
    }
    let factor = UniSeries::new(exponent).exp()?;
    GenusSeries::characteristic(q.mul(&factor)?)
}

/// The deformed genus as a polynomial in the symbols `t[k]` for the given odd `k`.
pub fn deform_genus_symbolic(m: &ManifoldModel, rho: &GenusSeries, ks: &[u32]) -> Result<GradedPolynomial> {
    let t: BTreeMap<u32, GradedPolynomial> = ks
        .iter()
        .map(|&k| (k, GradedPolynomial::var(deformation_var(k))))
        .collect();
    genus(m, &deform_series(rho, &t)?)
}

#[derive(Clone, Debug, PartialEq)]
pub enum DeformedValue {
    Exact(Rational),
    Complex(Complex<Rational>),
    Certified(CertifiedReal),
    Symbolic(GradedPolynomial),
}

impl fmt::Display for DeformedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::rational::format_rational;
        match self {
            DeformedValue::Exact(q) => write!(f, "{}", format_rational(q)),
            DeformedValue::Complex(z) => write!(f, "{} + {}*i", format_rational(&z.re), format_rational(&z.im)),
            DeformedValue::Certified(c) => write!(f, "{c}"),
            DeformedValue::Symbolic(p) => write!(f, "{p}"),
        }
    }
}

/// Pairing of `exp(Σ t_k ch_k(τ)) · (multiplicative class of ρ)` with `[M]`.
pub fn deform_genus(m: &ManifoldModel, rho: &GenusSeries, params: &DeformationParameters) -> Result<DeformedValue> {
    let ks: Vec<u32> = params.values.keys().copied().collect();
    let symbolic = deform_genus_symbolic(m, rho, &ks)?;
    let values = &params.values;
    let has = |pred: fn(&ParamValue) -> bool| values.values().any(pred);
    if has(|v| matches!(v, ParamValue::Symbolic)) || !rho_is_numeric(rho) {
        let p = symbolic.substitute(|v| match (v.family, values.get(&v.index)) {
            ('t', Some(ParamValue::Rational(q))) => Some(GradedPolynomial::constant(q.clone())),
            _ => None,
        });
        return Ok(DeformedValue::Symbolic(p));
    }
    let lookup = |v: &Var| values.get(&v.index).filter(|_| v.family == 't');
    if has(|v| matches!(v, ParamValue::Certified(_))) {
        if has(|v| matches!(v, ParamValue::Complex(..))) {
            return Err(Error::domain("certified parameters cannot be mixed with complex ones"));
        }
        let value = evaluate_certified(&symbolic, &|v| match lookup(v)? {
            ParamValue::Certified(c) => Some(*c),
            ParamValue::Rational(q) => Some(CertifiedReal::from_rational(q)),
            _ => None,
        })?;
        return Ok(DeformedValue::Certified(value));
    }
    if has(|v| matches!(v, ParamValue::Complex(..))) {
        let mut acc = Complex::new(Rational::zero(), Rational::zero());
        for (mono, c) in symbolic.terms() {
            let mut term = Complex::new(c.clone(), Rational::zero());
            for (v, e) in mono.factors() {
                let z = match lookup(v) {
                    Some(ParamValue::Complex(re, im)) => Complex::new(re.clone(), im.clone()),
                    Some(ParamValue::Rational(q)) => Complex::new(q.clone(), Rational::zero()),
                    _ => return Err(Error::domain(format!("no value supplied for {v}"))),
                };
                for _ in 0..*e {
                    term = term * z.clone();
                }
            }
            acc = acc + term;
        }
        return Ok(DeformedValue::Complex(acc));
    }
    let exact = symbolic.substitute(|v| match lookup(v) {
        Some(ParamValue::Rational(q)) => Some(GradedPolynomial::constant(q.clone())),
        _ => None,
    });
    Ok(DeformedValue::Exact(exact.constant_term()))
}

fn rho_is_numeric(rho: &GenusSeries) -> bool {
    rho.series().coeffs().iter().all(|c| c.vars().is_empty())
}

/// Parameters of `Â_ζ`: `t_{2k+1} = ζ(2k+1)` for `k ≥ 1` with `2k+1 ≤ max_k`.
pub fn a_hat_zeta_parameters(max_k: u32, target_error: f64) -> Result<DeformationParameters> {
    let mut values = BTreeMap::new();
    for k in (3..=max_k).step_by(2) {
        let z = mzv_eval(&Composition::new(vec![k])?, target_error)?;
        values.insert(k, ParamValue::Certified(z));
    }
    DeformationParameters::new(values, GeneratorConvention::FromOne)
}

/// `ch_k(TM) + ch_k(conjugate TM) = 0`, conjugation sending `c_i` to `(−1)^i c_i`.
pub fn diagonal_vanishing_check(m: &ManifoldModel, k: u32) -> bool {
    if k == 0 {
        return m.dim_c == 0;
    }
    let ch = chern_character(m, k);
    let conj = if k <= m.dim_c {
        let n = newton_polynomial(k).substitute(|v| {
            (v.family == 'c' && v.index % 2 == 1).then(|| GradedPolynomial::var(*v).scale(&int(-1)))
        });
        m.pull_back(&n).scale(&inv_factorial(k))
    } else {
        GradedPolynomial::zero()
    };
    (&ch + &conj).is_zero()
}

/// `ch_k(T(M×N)) = ch_k(TM) ⊗ 1 + 1 ⊗ ch_k(TN)` for odd `k`.
pub fn primitivity_check(m: &ManifoldModel, n: &ManifoldModel, k: u32) -> Result<bool> {
    if k % 2 == 0 {
        return Err(Error::domain("primitivity is checked for odd k only"));
    }
    let product = m.product(n)?;
    let lhs = chern_character(&product, k);
    let rhs = &chern_character(m, k) + &m.shift_from_second_factor(&chern_character(n, k));
    Ok(lhs == rhs)
}

/// Betti series of `m` convolved with the `sΩ` coefficient series.
pub fn morphism_module_series(m: &ManifoldModel, bound: u32, convention: GeneratorConvention) -> Vec<num_bigint::BigInt> {
    let betti: Vec<num_bigint::BigInt> = m.betti().into_iter().map(Into::into).collect();
    let coefficients = coefficient_ring_series(CoefficientRing::SOmega, bound, convention);
    convolve(&betti, &coefficients, bound)
}

pub fn y_var(degree: u32) -> Var {
    Var::new('y', degree, degree)
}

/// Image of a class under the coaction, `Σ_α (x · d(τ)^α) ⊗ β_α`, keyed by
/// the monomial `y^α`. `β_α = y^α / α!` is the basis dual to the monomials
/// of the polynomial coefficient ring, so `y[4i+2]` pairs with `d_{2i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coaction {
    pub terms: BTreeMap<Monomial, GradedPolynomial>,
}

impl Coaction {
    pub fn counit(&self) -> GradedPolynomial {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_default()
    }
}

fn odd_d_classes(m: &ManifoldModel, convention: GeneratorConvention) -> Vec<(Var, GradedPolynomial)> {
    if m.dim_c == 0 {
        return Vec::new();
    }
    let d = d_classes(m.dim_c);
    convention
        .odd_weights(m.dim_c)
        .map(|j| (y_var(2 * j), m.pull_back(d.component(j))))
        .filter(|(_, p)| !p.is_zero())
        .collect()
}

/// Coaction of `x` retaining terms `β_α` with `|y^α| ≤ bound`.
pub fn coaction(m: &ManifoldModel, x: &GradedPolynomial, bound: u32, convention: GeneratorConvention) -> Coaction {
    let classes = odd_d_classes(m, convention);
    let mut terms = BTreeMap::new();
    fn go(
        m: &ManifoldModel,
        classes: &[(Var, GradedPolynomial)],
        bound: u32,
        current: &GradedPolynomial,
        label: Monomial,
        terms: &mut BTreeMap<Monomial, GradedPolynomial>,
    ) {
        let Some(((y, d), rest)) = classes.split_first() else {
            if !current.is_zero() {
                terms.insert(label, current.clone());
            }
            return;
        };
        let mut value = current.clone();
        let mut label = label;
        loop {
            go(m, rest, bound, &value, label.clone(), terms);
            label = label.mul(&Monomial::var(*y));
            value = m.multiply(&value, d);
            if label.degree() > bound || value.is_zero() {
                break;
            }
        }
    }
    go(m, &classes, bound, &m.reduce(x), Monomial::one(), &mut terms);
    Coaction { terms }
}

/// `(coaction ⊗ id) ∘ coaction = (id ⊗ Δ) ∘ coaction` on `x`, where `Δ` is
/// the divided-power coproduct `Δβ_α = Σ_{α'+α''=α} β_{α'} ⊗ β_{α''}`.
pub fn coaction_is_coassociative(m: &ManifoldModel, x: &GradedPolynomial, bound: u32, convention: GeneratorConvention) -> bool {
    type Double = BTreeMap<(Monomial, Monomial), GradedPolynomial>;
    let mut left: Double = BTreeMap::new();
    let mut right: Double = BTreeMap::new();
    let first = coaction(m, x, bound, convention);
    for (alpha, class) in &first.terms {
        let inner = coaction(m, class, bound, convention);
        for (alpha1, class1) in inner.terms {
            if alpha1.degree() + alpha.degree() <= bound {
                left.insert((alpha1, alpha.clone()), class1);
            }
        }
        for (a1, a2) in monomial_splits(alpha) {
            right.insert((a1, a2), class.clone());
        }
    }
    left == right
}

/// All ways to write `y^α = y^{α'} y^{α''}`.
fn monomial_splits(m: &Monomial) -> Vec<(Monomial, Monomial)> {
    let mut out = vec![(Monomial::one(), Monomial::one())];
    for &(v, e) in m.factors() {
        let mut next = Vec::new();
        for (a, b) in &out {
            for i in 0..=e {
                next.push((a.mul(&Monomial::power(v, i)), b.mul(&Monomial::power(v, e - i))));
            }
        }
        out = next;
    }
    out
}

impl FromStr for ManifoldModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::catalog(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(n: u32) -> ManifoldModel {
        ManifoldModel::projective_space(n).unwrap()
    }

    fn x() -> GradedPolynomial {
        GradedPolynomial::var(Var::new('x', 0, 2))
    }

    #[test]
    fn chern_character_examples() {
        assert_eq!(chern_character(&cp(3), 0), GradedPolynomial::constant(int(3)));
        assert_eq!(chern_character(&cp(1), 1), x().scale(&int(2)));
        assert_eq!(chern_character(&cp(2), 2), x().pow(2).scale(&rat(3, 2)));
    }

    #[test]
    fn classical_genera() {
        let a = GenusSeries::a_hat(8);
        assert_eq!(genus_rational(&cp(1), &a).unwrap(), int(0));
        assert_eq!(genus_rational(&cp(2), &a).unwrap(), rat(-1, 8));
        let td = GenusSeries::todd(8);
        for n in 1..=6 {
            assert_eq!(genus_rational(&cp(n), &td).unwrap(), int(1), "CP{n}");
        }
        assert_eq!(genus_rational(&cp(2), &GenusSeries::l_genus(4)).unwrap(), int(1));
    }

    #[test]
    fn exponential_path() {
        let f = UniSeries::new(vec![int(0), int(1), int(1), int(0)]).map(|c| GradedPolynomial::constant(c.clone()));
        assert_eq!(genus_from_exponential(&f, 1).unwrap(), GradedPolynomial::constant(int(-2)));
        let id = UniSeries::new(vec![int(0), int(1), int(0), int(0)]).map(|c| GradedPolynomial::constant(c.clone()));
        assert!(genus_from_exponential(&id, 2).unwrap().is_zero());
        assert!(genus_from_exponential(&id, 0).unwrap().is_one());
    }

    #[test]
    fn gamma_coefficients() {
        let g = gamma_exponential(5).unwrap();
        let s = g.series();
        assert!(s.coeff(1).is_one());
        assert_eq!(s.coeff(2).to_string(), "g");
        assert_eq!(s.coeff(3).to_string(), "1/2*g^2 - 1/2*z[2]");
    }

    #[test]
    fn deformation_examples() {
        let a = GenusSeries::a_hat(6);
        let conv = GeneratorConvention::FromZero;
        let t = DeformationParameters::parse("1:1/3", conv).unwrap();
        assert_eq!(deform_genus(&cp(1), &a, &t).unwrap(), DeformedValue::Exact(rat(2, 3)));
        let t = DeformationParameters::parse("1:2i", conv).unwrap();
        let DeformedValue::Complex(z) = deform_genus(&cp(1), &a, &t).unwrap() else {
            panic!("expected complex value")
        };
        assert!(z.re.is_zero());
        assert_eq!(z.im, int(4));
        let zero = deform_genus(&cp(2), &a, &DeformationParameters::zero()).unwrap();
        assert_eq!(zero, DeformedValue::Exact(rat(-1, 8)));
        assert!(DeformationParameters::parse("2:1", conv).is_err());
        assert!(DeformationParameters::parse("1:1", GeneratorConvention::FromOne).is_err());
    }

    #[test]
    fn diagonal_and_primitivity() {
        assert!(diagonal_vanishing_check(&cp(1), 1));
        assert!(!diagonal_vanishing_check(&cp(2), 2));
        assert!(primitivity_check(&cp(1), &cp(1), 1).unwrap());
        assert!(primitivity_check(&cp(1), &cp(2), 3).unwrap());
        assert!(primitivity_check(&cp(1), &cp(2), 2).is_err());
    }

    #[test]
    fn morphism_series_examples() {
        let conv = GeneratorConvention::FromOne;
        let s: Vec<i64> = morphism_module_series(&cp(1), 5, conv)
            .iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect();
        assert_eq!(s, [1, 0, 1, 0, 0, 1]);
        let p = morphism_module_series(&ManifoldModel::point(), 9, conv);
        assert_eq!(p, coefficient_ring_series(CoefficientRing::SOmega, 9, conv));
    }

    #[test]
    fn coaction_examples() {
        let conv = GeneratorConvention::FromZero;
        let pt = coaction(&ManifoldModel::point(), &GradedPolynomial::one(), 12, conv);
        assert_eq!(pt.terms.len(), 1);
        let c = coaction(&cp(1), &GradedPolynomial::one(), 12, conv);
        assert_eq!(c.terms[&Monomial::var(y_var(2))], x().scale(&int(-4)));
        let m = cp(2);
        for class in [GradedPolynomial::one(), x(), x().pow(2)] {
            assert_eq!(coaction(&m, &class, 12, conv).counit(), class);
            assert!(coaction_is_coassociative(&m, &class, 12, conv));
        }
    }

    #[test]
    fn json_models() {
        let text = r#"{"name":"P2","dim_c":2,"generators":[{"sym":"x","deg":2,"nilpotency":2}],
                       "total_chern":"1 + 3*x + 3*x^2","volume_monomial":"x^2"}"#;
        let m = ManifoldModel::from_json(text).unwrap();
        assert_eq!(m.total_chern, cp(2).total_chern);
        let back = ManifoldModel::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
        assert!(ManifoldModel::from_json(r#"{"name":"bad"}"#).is_err());
        let prod = ManifoldModel::catalog("CP1xCP1").unwrap();
        assert_eq!(prod.total_chern.to_string(), "1 + 2*x + 4*x*x[1] + 2*x[1]");
    }
}
