//! The verification suite behind the `acceptance` subcommand.
//!
//! Each check has an id, a minimum truncation degree and a body returning a
//! short detail string on success. Checks whose minimum degree exceeds the
//! configured one are reported as skipped. Checks run in parallel and the
//! report is sorted by id.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::Composition;
use crate::error::{Error, Result};
use crate::genus::{
    coaction, coaction_is_coassociative, deform_series, diagonal_vanishing_check, gamma_exponential,
    genus, genus_from_exponential, genus_rational, zeta_values, evaluate_certified, GenusSeries,
    ManifoldModel,
};
use crate::mzv::{homomorphism_check, mzv_eval};
use crate::poly::{GradedPolynomial, Var};
use crate::qsym::{free_algebra_hilbert, GeneratorProfile, HilbertFlavor, QSymm};
use crate::rational::{int, rat, Rational};
use crate::symm::{check_identity, convert, primitive_space, GeneratorConvention, HopfModel, Identity, MatchStatus, SymmBasis, SymmFn};
use crate::tor::{
    coefficient_ring_series, exterior_algebra, predicted_polynomial_series, square_zero_extension, tor_via_bar,
    CoefficientRing,
};
use crate::genus::primitivity_check;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub degree: u32,
    pub target_error: f64,
    pub convention: GeneratorConvention,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            degree: 30,
            target_error: 1e-10,
            convention: GeneratorConvention::FromZero,
            seed: 20240917,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: u32,
    pub name: &'static str,
    pub outcome: Outcome,
    pub detail: String,
    /// Wall time; kept out of serialized reports so they stay reproducible.
    #[serde(skip)]
    pub seconds: f64,
}

impl CheckResult {
    pub fn line(&self) -> String {
        let tag = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skipped => "SKIP",
        };
        format!("[{tag}] {:>2} {:<24} {}", self.id, self.name, self.detail)
    }
}

type Body = fn(&SuiteConfig) -> std::result::Result<String, String>;

struct Check {
    id: u32,
    name: &'static str,
    min_degree: u32,
    body: Body,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e: Error| e.to_string())
}

fn cp(n: u32) -> std::result::Result<ManifoldModel, String> {
    lift(ManifoldModel::projective_space(n))
}

const CHECKS: &[Check] = &[
    Check { id: 1, name: "d-class identity", min_degree: 30, body: d_class_identity },
    Check { id: 2, name: "a-class structure", min_degree: 12, body: a_class_structure },
    Check { id: 3, name: "primitives", min_degree: 12, body: primitives },
    Check { id: 4, name: "diagonal vanishing", min_degree: 12, body: diagonal_vanishing },
    Check { id: 5, name: "primitivity", min_degree: 6, body: primitivity },
    Check { id: 6, name: "torsor law", min_degree: 2, body: torsor_law },
    Check { id: 7, name: "genus engine", min_degree: 6, body: genus_engine },
    Check { id: 8, name: "gamma exponential", min_degree: 4, body: gamma_check },
    Check { id: 9, name: "koszul duality", min_degree: 24, body: koszul_duality },
    Check { id: 10, name: "qsymm polynomiality", min_degree: 12, body: qsymm_polynomiality },
    Check { id: 11, name: "multiple zeta values", min_degree: 6, body: mzv_checks },
    Check { id: 12, name: "series tables", min_degree: 20, body: series_tables },
    Check { id: 13, name: "coaction", min_degree: 12, body: coaction_check },
];

pub fn check_names() -> Vec<(u32, &'static str)> {
    CHECKS.iter().map(|c| (c.id, c.name)).collect()
}

/// Runs every check; `only` restricts to the listed ids when nonempty.
pub fn run(config: &SuiteConfig, only: &[u32]) -> Vec<CheckResult> {
    let mut results: Vec<CheckResult> = CHECKS
        .par_iter()
        .filter(|c| only.is_empty() || only.contains(&c.id))
        .map(|c| {
            if config.degree < c.min_degree {
                return CheckResult {
                    id: c.id,
                    name: c.name,
                    outcome: Outcome::Skipped,
                    detail: format!("needs degree {} (configured {})", c.min_degree, config.degree),
                    seconds: 0.0,
                };
            }
            let start = Instant::now();
            let r = (c.body)(config);
            let seconds = start.elapsed().as_secs_f64();
            let (outcome, detail) = match r {
                Ok(d) => (Outcome::Pass, d),
                Err(d) => (Outcome::Fail, d),
            };
            CheckResult { id: c.id, name: c.name, outcome, detail, seconds }
        })
        .collect();
    results.sort_by_key(|r| r.id);
    results
}

fn d_class_identity(_: &SuiteConfig) -> std::result::Result<String, String> {
    let start = Instant::now();
    let report = lift(check_identity(Identity::DClasses, 30))?;
    let secs = start.elapsed().as_secs_f64();
    ensure(report.status == MatchStatus::ExactMatch, || {
        format!("mismatch at weight {:?}", report.first_mismatch_weight)
    })?;
    ensure(secs < 30.0, || format!("took {secs:.1}s"))?;
    Ok("exact through weight 30".into())
}

fn a_class_structure(_: &SuiteConfig) -> std::result::Result<String, String> {
    let report = lift(check_identity(Identity::AClasses, 12))?;
    ensure(report.status == MatchStatus::ExactMatch, || {
        format!("mismatch at weight {:?}", report.first_mismatch_weight)
    })?;
    Ok("odd classes decomposable, even classes 2b mod decomposables, weight <= 12".into())
}

fn primitives(_: &SuiteConfig) -> std::result::Result<String, String> {
    for k in 1..=12u32 {
        let space = primitive_space(k, HopfModel::BUmodSO);
        let expected = if k % 2 == 1 { 1 } else { 0 };
        ensure(space.len() == expected, || format!("weight {k}: dimension {}", space.len()))?;
        if let Some(f) = space.first() {
            let newton = SymmFn::generator(SymmBasis::P, k);
            ensure(convert(f, SymmBasis::P) == newton, || format!("weight {k}: not a multiple of N_{k}"))?;
        }
    }
    Ok("1-dimensional in odd weights, spanned by N_k, weight <= 12".into())
}

fn diagonal_vanishing(_: &SuiteConfig) -> std::result::Result<String, String> {
    let mut count = 0;
    for n in 1..=6 {
        let m = cp(n)?;
        for k in (1..2 * n).step_by(2) {
            ensure(diagonal_vanishing_check(&m, k), || format!("CP{n}, k={k}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} cases"))
}

fn primitivity(_: &SuiteConfig) -> std::result::Result<String, String> {
    let models: Vec<ManifoldModel> = (1..=3).map(cp).collect::<std::result::Result<_, _>>()?;
    let mut count = 0;
    for a in &models {
        for b in &models {
            for k in (1..=a.dim_c + b.dim_c).step_by(2) {
                ensure(lift(primitivity_check(a, b, k))?, || format!("{a} x {b}, k={k}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} cases"))
}

fn random_parameters(rng: &mut ChaCha8Rng, convention: GeneratorConvention) -> BTreeMap<u32, GradedPolynomial> {
    [1u32, 3, 5]
        .into_iter()
        .filter(|&k| k >= 2 * convention.first_index() + 1)
        .map(|k| {
            let q = rat(rng.gen_range(-20..=20), rng.gen_range(1..=9));
            (k, GradedPolynomial::constant(q))
        })
        .collect()
}

fn torsor_law(config: &SuiteConfig) -> std::result::Result<String, String> {
    let rho = GenusSeries::a_hat(6);
    let models = vec![cp(1)?, cp(2)?, lift(ManifoldModel::catalog("CP1xCP1"))?];
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let zero = lift(deform_series(&rho, &BTreeMap::new()))?;
    ensure(zero == rho, || "t = 0 changes the series".into())?;
    for trial in 0..20 {
        let t = random_parameters(&mut rng, config.convention);
        let s = random_parameters(&mut rng, config.convention);
        let mut sum = t.clone();
        for (k, v) in &s {
            let entry = sum.entry(*k).or_default();
            *entry = &*entry + v;
        }
        let twice = lift(deform_series(&rho, &t).and_then(|r| deform_series(&r, &s)))?;
        let once = lift(deform_series(&rho, &sum))?;
        for m in &models {
            let a = lift(genus(m, &twice))?;
            let b = lift(genus(m, &once))?;
            ensure(a == b, || format!("trial {trial} on {m}: {a} vs {b}"))?;
        }
    }
    Ok("20 random parameter pairs on CP1, CP2, CP1xCP1".into())
}

/// `1 - e^{-x}`, whose characteristic series is `x / (1 - e^{-x})`.
fn todd_exponential(bound: u32) -> GenusSeries {
    let coeffs = (0..=bound)
        .map(|k| match k {
            0 => Rational::zero(),
            k if k % 2 == 1 => crate::rational::inv_factorial(k),
            k => -crate::rational::inv_factorial(k),
        })
        .collect();
    GenusSeries::from_rational_exponential(coeffs).expect("x + O(x^2)")
}

fn genus_engine(_: &SuiteConfig) -> std::result::Result<String, String> {
    let a_hat = lift(genus_rational(&cp(2)?, &GenusSeries::a_hat(6)))?;
    ensure(a_hat == rat(-1, 8), || format!("A-hat(CP2) = {a_hat}"))?;
    let todd = GenusSeries::todd(8);
    for n in 1..=6 {
        let v = lift(genus_rational(&cp(n)?, &todd))?;
        ensure(v.is_one(), || format!("Todd(CP{n}) = {v}"))?;
    }
    let f = todd_exponential(8);
    let q = GenusSeries::characteristic(lift(f.to_characteristic())?).map_err(|e| e.to_string())?;
    for n in 1..=4 {
        let via_f = lift(genus_from_exponential(f.series(), n))?;
        let via_q = lift(genus(&cp(n)?, &q))?;
        ensure(via_f == via_q && via_q.is_one(), || format!("CP{n}: {via_f} vs {via_q}"))?;
    }
    Ok("A-hat(CP2) = -1/8, Todd = 1 through CP6, both paths agree through CP4".into())
}

fn gamma_check(config: &SuiteConfig) -> std::result::Result<String, String> {
    let series = lift(gamma_exponential(4))?;
    let values = lift(zeta_values(3, config.target_error.min(1e-12)))?;
    // Independent expansion of exp(γx − ζ(2)x²/2 + ζ(3)x³/3) in floating point.
    let gamma = 0.577_215_664_901_532_9_f64;
    let z2 = std::f64::consts::PI.powi(2) / 6.0;
    let z3 = 1.202_056_903_159_594_3_f64;
    let u = [0.0, gamma, -z2 / 2.0, z3 / 3.0];
    let mut e = [1.0, 0.0, 0.0, 0.0];
    for n in 1..4 {
        e[n] = (1..=n).map(|k| k as f64 * u[k] * e[n - k]).sum::<f64>() / n as f64;
    }
    let mut worst = 0.0f64;
    for k in 1..=4u32 {
        let c = lift(evaluate_certified(series.series().coeff(k), &|v: &Var| values.get(v).copied()))?;
        let oracle = e[k as usize - 1];
        let diff = (c.value - oracle).abs();
        worst = worst.max(diff);
        ensure(diff <= 1e-10, || format!("[x^{k}]: {} vs {oracle}", c.value))?;
    }
    Ok(format!("max deviation {worst:.1e}"))
}

fn ordered_words(letters: &[u32], bound: u32) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); bound as usize + 1];
    out[0] = BigInt::one();
    for n in 1..=bound as usize {
        for &l in letters {
            if l as usize <= n {
                out[n] = &out[n] + &out[n - l as usize];
            }
        }
    }
    out
}

fn koszul_duality(_: &SuiteConfig) -> std::result::Result<String, String> {
    let start = Instant::now();
    let ext = lift(exterior_algebra(&[5, 9], 24))?;
    let table = lift(tor_via_bar(&ext, 24))?;
    ensure(table.d_squared_zero, || "d^2 != 0 (exterior)".into())?;
    let predicted = predicted_polynomial_series(&[6, 10], 24);
    for (n, got) in table.total_degree_dims().iter().enumerate() {
        let want = u64::try_from(&predicted[n]).ok();
        ensure(*got == want, || format!("exterior, degree {n}: {got:?} vs {want:?}"))?;
    }
    let sq = lift(square_zero_extension(&[5, 9], 22))?;
    let table = lift(tor_via_bar(&sq, 22))?;
    ensure(table.d_squared_zero, || "d^2 != 0 (square-zero)".into())?;
    let words = ordered_words(&[6, 10], 22);
    for (n, got) in table.total_degree_dims().iter().enumerate() {
        let want = u64::try_from(&words[n]).ok();
        ensure(*got == want, || format!("square-zero, degree {n}: {got:?} vs {want:?}"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok("exterior through 24, square-zero through 22".into())
}

fn qsymm_polynomiality(_: &SuiteConfig) -> std::result::Result<String, String> {
    let dims = lift(free_algebra_hilbert(&GeneratorProfile::All, 12, HilbertFlavor::PolynomialOnLyndon))?;
    for (n, d) in dims.iter().enumerate() {
        let want = if n == 0 { BigInt::one() } else { BigInt::one() << (n - 1) };
        ensure(*d == want, || format!("degree {n}: {d} vs {want}"))?;
    }
    Ok("polynomial on Lyndon words gives 2^(n-1) through 12".into())
}

fn random_composition(rng: &mut ChaCha8Rng, max_weight: u32) -> Composition {
    loop {
        let weight = rng.gen_range(2..=max_weight);
        let mut parts = Vec::new();
        let mut left = weight;
        while left > 0 {
            let p = rng.gen_range(1..=left);
            parts.push(p);
            left -= p;
        }
        let c = Composition::new(parts).expect("positive parts");
        if crate::mzv::is_admissible(&c) {
            return c;
        }
    }
}

fn mzv_checks(config: &SuiteConfig) -> std::result::Result<String, String> {
    let zeta2 = lift(mzv_eval(&lift(Composition::new(vec![2]))?, 1e-8))?;
    let pi2_6 = std::f64::consts::PI.powi(2) / 6.0;
    ensure(zeta2.error_bound <= 1e-8 && zeta2.contains(pi2_6), || format!("zeta(2) = {zeta2}"))?;
    let z12 = lift(mzv_eval(&lift(Composition::new(vec![1, 2]))?, 1e-9))?;
    let z3 = lift(mzv_eval(&lift(Composition::new(vec![3]))?, 1e-9))?;
    ensure((z12.value - z3.value).abs() <= 2e-8, || format!("(1,2) = {z12}, (3) = {z3}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5eed);
    for trial in 0..10 {
        let a = random_composition(&mut rng, 4);
        let rest = 6 - a.weight();
        let b = if rest >= 2 {
            random_composition(&mut rng, rest)
        } else {
            lift(Composition::new(vec![2]))?
        };
        let b = if a.weight() + b.weight() > 6 { lift(Composition::new(vec![2]))? } else { b };
        let report = lift(homomorphism_check(&QSymm::monomial(a.clone()), &QSymm::monomial(b.clone()), 1e-8))?;
        ensure(report.pass, || format!("trial {trial}: {a} * {b} differs by {:e}", report.difference))?;
    }
    let one = lift(Composition::new(vec![1]))?;
    ensure(matches!(mzv_eval(&one, 1e-8), Err(Error::Divergent { .. })), || "zeta(1) accepted".into())?;
    Ok(format!("zeta(2) = {zeta2}"))
}

/// Subsets of `degrees` by sum.
fn subset_counts(degrees: &[u32], bound: u32) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); bound as usize + 1];
    fn go(degrees: &[u32], sum: u32, bound: u32, out: &mut [BigInt]) {
        match degrees.split_first() {
            None => out[sum as usize] += 1,
            Some((&d, rest)) => {
                go(rest, sum, bound, out);
                if sum + d <= bound {
                    go(rest, sum + d, bound, out);
                }
            }
        }
    }
    go(degrees, 0, bound, &mut out);
    out
}

/// Multisets of `degrees` by sum.
fn multiset_counts(degrees: &[u32], bound: u32) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); bound as usize + 1];
    fn go(degrees: &[u32], sum: u32, bound: u32, out: &mut [BigInt]) {
        match degrees.split_first() {
            None => out[sum as usize] += 1,
            Some((&d, rest)) => {
                let mut s = sum;
                while s <= bound {
                    go(rest, s, bound, out);
                    s += d;
                }
            }
        }
    }
    go(degrees, 0, bound, &mut out);
    out
}

fn series_tables(config: &SuiteConfig) -> std::result::Result<String, String> {
    let bound = 20;
    let first = config.convention.first_index();
    let ext: Vec<u32> = (first..).map(|i| 4 * i + 1).take_while(|&d| d <= bound).collect();
    let poly: Vec<u32> = (first..).map(|i| 4 * i + 2).take_while(|&d| d <= bound).collect();
    let somega = subset_counts(&ext, bound);
    let mut fiber = multiset_counts(&poly, bound);
    fiber[0] = BigInt::zero();
    // Pairs (subset of exterior degrees, multiset of polynomial degrees).
    let mut thh = vec![BigInt::zero(); bound as usize + 1];
    let all_poly = multiset_counts(&poly, bound);
    for (i, a) in somega.iter().enumerate() {
        for (j, b) in all_poly.iter().enumerate() {
            if i + j <= bound as usize {
                thh[i + j] += a * b;
            }
        }
    }
    for (which, oracle) in [
        (CoefficientRing::SOmega, &somega),
        (CoefficientRing::KTheoryFiber, &fiber),
        (CoefficientRing::Thh, &thh),
    ] {
        let got = coefficient_ring_series(which, bound, config.convention);
        ensure(&got == oracle, || format!("{which:?}: {got:?} vs {oracle:?}"))?;
    }
    Ok("sOmega, K-theory fiber and THH through degree 20".into())
}

fn coaction_check(config: &SuiteConfig) -> std::result::Result<String, String> {
    let m = cp(2)?;
    let x = GradedPolynomial::var(Var::new('x', 0, 2));
    for (i, class) in [GradedPolynomial::one(), x.clone(), &x * &x, x.scale(&int(3)) + GradedPolynomial::one()]
        .iter()
        .enumerate()
    {
        let c = coaction(&m, class, 12, config.convention);
        ensure(c.counit() == m.reduce(class), || format!("counit fails on class {i}"))?;
        ensure(coaction_is_coassociative(&m, class, 12, config.convention), || {
            format!("coassociativity fails on class {i}")
        })?;
    }
    Ok("counital and coassociative on CP2 through degree 12".into())
}
