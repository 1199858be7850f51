//! End-to-end acceptance criteria, each checked against an oracle written
//! out independently here. One PASS/FAIL line per criterion is written
//! straight to stderr so it shows up even when test output is captured.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use gtalg::combinat::Composition;
use gtalg::genus::{
    chern_character, coaction, coaction_is_coassociative, deform_series, diagonal_vanishing_check,
    evaluate_certified, gamma_exponential, genus, genus_from_exponential, genus_rational, primitivity_check,
    y_var, zeta_values, GenusSeries, ManifoldModel,
};
use gtalg::mzv::{homomorphism_check, is_admissible, mzv_eval};
use gtalg::qsym::{free_algebra_hilbert, lyndon_count, lyndon_generators, GeneratorProfile, HilbertFlavor, QSymm};
use gtalg::rational::{int, rat};
use gtalg::symm::{
    a_classes, check_identity, convert, d_classes, is_decomposable, primitive_space, GeneratorConvention,
    HopfModel, Identity, MatchStatus, SymmBasis, SymmFn,
};
use gtalg::tor::{
    coefficient_ring_series, exterior_algebra, predicted_polynomial_series, square_zero_extension, tor_via_bar,
    CoefficientRing,
};
use gtalg::{Error, GradedPolynomial, Monomial, Rational, UniSeries, Var};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: gtalg::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn cp(n: u32) -> ManifoldModel {
    ManifoldModel::projective_space(n).unwrap()
}

fn x_var() -> Var {
    Var::new('x', 0, 2)
}

/// Truncated product of univariate rational series.
fn series_mul(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `1 / a` for `a(0) = 1`, by the recurrence on coefficients.
fn series_inv(a: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    out[0] = Rational::one();
    for n in 1..len {
        let mut s = Rational::zero();
        for k in 1..=n.min(a.len() - 1) {
            s += &a[k] * &out[n - k];
        }
        out[n] = -s;
    }
    out
}

/// `exp(a)` for `a(0) = 0`, via `n e_n = Σ k a_k e_{n-k}`.
fn series_exp(a: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    out[0] = Rational::one();
    for n in 1..len {
        let mut s = Rational::zero();
        for k in 1..=n.min(a.len() - 1) {
            s += Rational::from_integer(BigInt::from(k)) * &a[k] * &out[n - k];
        }
        out[n] = s / Rational::from_integer(BigInt::from(n));
    }
    out
}

fn factorial(n: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * int(k as i64))
}

/// Elementary symmetric values `e_j(roots)`.
fn elementary(roots: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::one()];
    for r in roots {
        let mut next = e.clone();
        next.push(Rational::zero());
        for j in 1..next.len() {
            next[j] = &e.get(j).cloned().unwrap_or_default() + r * &e[j - 1];
        }
        e = next;
    }
    e
}

/// Value of a polynomial in `c[j]` at `c_j = e_j(roots)`.
fn at_roots(p: &GradedPolynomial, roots: &[Rational]) -> Rational {
    let e = elementary(roots);
    let v = p.substitute(|v| {
        (v.family == 'c').then(|| GradedPolynomial::constant(e.get(v.index as usize).cloned().unwrap_or_default()))
    });
    assert!(v.vars().is_empty(), "unexpected variables in {p}");
    v.constant_term()
}

/// `[x^n] Q(x)^{n+1}`: the genus of `CP^n` by the residue formula.
fn residue_genus(q: &[Rational], n: usize) -> Rational {
    let mut acc = vec![Rational::one()];
    for _ in 0..=n {
        acc = series_mul(&acc, q, n + 1);
    }
    acc[n].clone()
}

fn d_class_identity() -> Check {
    let start = Instant::now();
    let report = ok(check_identity(Identity::DClasses, 30))?;
    let secs = start.elapsed().as_secs_f64();
    ensure(report.status == MatchStatus::ExactMatch, || format!("{report:?}"))?;
    ensure(secs < 30.0, || format!("took {secs:.1}s"))?;
    // Oracle: at roots x_i, the d-series is ∏ (1 - x_i t) / (1 + x_i t).
    let roots = [int(1), int(2), rat(-1, 3), rat(5, 7)];
    let len = 31;
    let mut minus = vec![Rational::one()];
    let mut plus = vec![Rational::one()];
    for r in &roots {
        minus = series_mul(&minus, &[Rational::one(), -r.clone()], len);
        plus = series_mul(&plus, &[Rational::one(), r.clone()], len);
    }
    let expected = series_mul(&minus, &series_inv(&plus, len), len);
    let d = d_classes(30);
    for k in 0..=30u32 {
        let got = at_roots(d.component(k), &roots);
        ensure(got == expected[k as usize], || format!("weight {k}: {got} vs {}", expected[k as usize]))?;
    }
    Ok(format!("exact through weight 30 in {secs:.2}s, specialization oracle agrees"))
}

fn a_class_structure() -> Check {
    let report = ok(check_identity(Identity::AClasses, 12))?;
    ensure(report.status == MatchStatus::ExactMatch, || format!("{report:?}"))?;
    let b = |k: u32| {
        if k == 0 {
            GradedPolynomial::one()
        } else {
            GradedPolynomial::var(Var::weighted('b', k))
        }
    };
    let a = a_classes(12);
    for n in 1..=12u32 {
        // a_n = Σ_{i+j=n} (-1)^j b_i b_j.
        let mut oracle = GradedPolynomial::zero();
        for j in 0..=n {
            let term = &b(n - j) * &b(j);
            oracle += &term.scale(&int(if j % 2 == 0 { 1 } else { -1 }));
        }
        ensure(a.component(n) == &oracle, || format!("a_{n} = {} vs {oracle}", a.component(n)))?;
        if n % 2 == 1 {
            ensure(is_decomposable(&oracle), || format!("a_{n} not decomposable"))?;
        } else {
            let rest = &oracle - &b(n).scale(&int(2));
            ensure(is_decomposable(&rest), || format!("a_{n} - 2b_{n} not decomposable"))?;
        }
    }
    Ok("a_odd decomposable, a_even = 2b mod decomposables, weight <= 12".into())
}

fn primitives() -> Check {
    let roots = [int(2), rat(-1, 2), int(3), rat(1, 5), int(-1)];
    for k in 1..=12u32 {
        let space = primitive_space(k, HopfModel::BUmodSO);
        let expected = usize::from(k % 2 == 1);
        ensure(space.len() == expected, || format!("weight {k}: dimension {}", space.len()))?;
        if let Some(f) = space.first() {
            ensure(convert(f, SymmBasis::P) == SymmFn::generator(SymmBasis::P, k), || {
                format!("weight {k}: not N_{k}")
            })?;
            // Oracle: as a polynomial in Chern classes, N_k evaluates to Σ x_i^k.
            let e = ok(convert(f, SymmBasis::E).to_polynomial())?;
            let power_sum: Rational = roots.iter().map(|r| num_traits::pow(r.clone(), k as usize)).sum();
            ensure(at_roots(&e, &roots) == power_sum, || format!("weight {k}: power-sum value"))?;
        }
    }
    Ok("dimension 1 in odd weights, 0 in even, spanned by N_k, weight <= 12".into())
}

fn diagonal_vanishing() -> Check {
    let mut cases = 0;
    for n in 1..=6u32 {
        let m = cp(n);
        for k in 1..=n {
            // Oracle: TM ⊕ C = (n+1) L, so ch_k = (n+1) x^k / k!.
            let oracle = GradedPolynomial::term(Monomial::power(x_var(), k), int(n as i64 + 1) / factorial(k));
            ensure(chern_character(&m, k) == oracle, || format!("ch_{k}(CP{n})"))?;
        }
        for k in (1..2 * n).step_by(2) {
            ensure(diagonal_vanishing_check(&m, k), || format!("CP{n}, k = {k}"))?;
            cases += 1;
        }
    }
    ensure(!diagonal_vanishing_check(&cp(2), 2), || "even k vanished".into())?;
    Ok(format!("{cases} odd cases vanish; even k = 2 on CP2 does not"))
}

fn primitivity() -> Check {
    let mut cases = 0;
    for a in 1..=3u32 {
        for b in 1..=3u32 {
            let (m, n) = (cp(a), cp(b));
            let product = m.product(&n).unwrap();
            let x1 = Var::new('x', 1, 2);
            for k in (1..=a + b).step_by(2) {
                ensure(ok(primitivity_check(&m, &n, k))?, || format!("CP{a} x CP{b}, k = {k}"))?;
                let mut oracle = GradedPolynomial::zero();
                if k <= a {
                    oracle.add_term(Monomial::power(x_var(), k), int(a as i64 + 1) / factorial(k));
                }
                if k <= b {
                    oracle.add_term(Monomial::power(x1, k), int(b as i64 + 1) / factorial(k));
                }
                ensure(chern_character(&product, k) == oracle, || format!("ch_{k}(CP{a} x CP{b}) oracle"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn a_hat_coeffs(len: usize) -> Vec<Rational> {
    // (x/2)/sinh(x/2) = 1 / Σ (x/2)^{2j} / (2j+1)!.
    let denom: Vec<Rational> = (0..len)
        .map(|k| {
            if k % 2 == 0 {
                Rational::one() / (factorial(k as u32 + 1) * num_traits::pow(int(2), k))
            } else {
                Rational::zero()
            }
        })
        .collect();
    series_inv(&denom, len)
}

fn torsor_law() -> Check {
    let rho = GenusSeries::a_hat(6);
    let q = a_hat_coeffs(7);
    let models = [cp(1), cp(2), ManifoldModel::catalog("CP1xCP1").unwrap()];
    let zero = ok(deform_series(&rho, &BTreeMap::new()))?;
    ensure(zero == rho, || "t = 0 changes the series".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut random = || -> BTreeMap<u32, Rational> {
        [1u32, 3, 5].into_iter().map(|k| (k, rat(rng.gen_range(-30..=30), rng.gen_range(1..=11)))).collect()
    };
    let lift = |t: &BTreeMap<u32, Rational>| -> BTreeMap<u32, GradedPolynomial> {
        t.iter().map(|(k, v)| (*k, GradedPolynomial::constant(v.clone()))).collect()
    };
    for trial in 0..20 {
        let t = random();
        let s = random();
        let sum: BTreeMap<u32, Rational> = t.iter().map(|(k, v)| (*k, v + &s[k])).collect();
        let twice = ok(deform_series(&rho, &lift(&t)).and_then(|r| deform_series(&r, &lift(&s))))?;
        let once = ok(deform_series(&rho, &lift(&sum)))?;
        // Oracle: deformed characteristic series Q(x) exp(Σ t_k x^k / k!).
        let mut exponent = vec![Rational::zero(); 7];
        for (k, v) in &sum {
            exponent[*k as usize] = v / factorial(*k);
        }
        let deformed = series_mul(&q, &series_exp(&exponent, 7), 7);
        for (i, m) in models.iter().enumerate() {
            let a = ok(genus(m, &twice))?;
            let b = ok(genus(m, &once))?;
            ensure(a == b, || format!("trial {trial}, {}: {a} vs {b}", m.name))?;
            let oracle = match i {
                0 => residue_genus(&deformed, 1),
                1 => residue_genus(&deformed, 2),
                _ => num_traits::pow(residue_genus(&deformed, 1), 2),
            };
            ensure(b == GradedPolynomial::constant(oracle.clone()), || {
                format!("trial {trial}, {}: {b} vs residue {oracle}", m.name)
            })?;
        }
    }
    Ok("20 random pairs on CP1, CP2, CP1xCP1 match each other and the residue formula".into())
}

fn genus_engine() -> Check {
    let a = ok(genus_rational(&cp(2), &GenusSeries::a_hat(6)))?;
    ensure(a == rat(-1, 8), || format!("A-hat(CP2) = {a}"))?;
    ensure(residue_genus(&a_hat_coeffs(3), 2) == rat(-1, 8), || "residue oracle".into())?;
    let todd = GenusSeries::todd(8);
    for n in 1..=6 {
        let v = ok(genus_rational(&cp(n), &todd))?;
        ensure(v.is_one(), || format!("Todd(CP{n}) = {v}"))?;
    }
    // 1 - e^{-x} is the exponential of the Todd genus; e^x - 1 gives (-1)^n.
    for (sign, expected_sign) in [(-1i64, 1i64), (1, -1)] {
        let exp_coeffs: Vec<Rational> = (0..=8u32)
            .map(|k| {
                if k == 0 {
                    Rational::zero()
                } else {
                    num_traits::pow(int(sign), k as usize - 1) / factorial(k)
                }
            })
            .collect();
        let f = ok(GenusSeries::from_rational_exponential(exp_coeffs))?;
        let q = ok(f.to_characteristic().and_then(GenusSeries::characteristic))?;
        for n in 1..=4u32 {
            let via_f = ok(genus_from_exponential(f.series(), n))?;
            let via_q = ok(genus(&cp(n), &q))?;
            let want = GradedPolynomial::constant(num_traits::pow(int(expected_sign), n as usize));
            ensure(via_f == via_q && via_q == want, || format!("CP{n}: {via_f} vs {via_q}"))?;
        }
    }
    Ok("A-hat(CP2) = -1/8, Todd(CPn) = 1 for n <= 6, exponential path agrees for n <= 4".into())
}

fn gamma() -> Check {
    let g = ok(gamma_exponential(4))?;
    let values = ok(zeta_values(3, 1e-12))?;
    // Taylor coefficients of 1/Γ(x) at 0 from standard tables.
    let table = [0.0, 1.0, 0.577_215_664_901_532_9, -0.655_878_071_520_253_8, -0.042_002_635_034_095_2];
    let mut worst = 0.0f64;
    for (k, want) in table.iter().enumerate() {
        let v = ok(evaluate_certified(g.series().coeff(k as u32), &|v| values.get(v).copied()))?;
        let diff = (v.value - want).abs();
        worst = worst.max(diff);
        ensure(diff <= 1e-10, || format!("[x^{k}] = {} vs {want}", v.value))?;
    }
    Ok(format!("coefficients through x^4 within {worst:.1e}"))
}

fn partition_counts(parts: &[u32], bound: usize) -> Vec<BigInt> {
    // Multisets by brute-force recursion over multiplicities.
    fn go(parts: &[u32], sum: usize, bound: usize, out: &mut Vec<BigInt>) {
        match parts.split_first() {
            None => out[sum] += 1,
            Some((&p, rest)) => {
                let mut s = sum;
                while s <= bound {
                    go(rest, s, bound, out);
                    s += p as usize;
                }
            }
        }
    }
    let mut out = vec![BigInt::zero(); bound + 1];
    go(parts, 0, bound, &mut out);
    out
}

fn word_counts(letters: &[u32], bound: usize) -> Vec<BigInt> {
    // Sequences by brute-force recursion over the next letter.
    fn go(letters: &[u32], sum: usize, bound: usize, out: &mut Vec<BigInt>) {
        out[sum] += 1;
        for &l in letters {
            if sum + l as usize <= bound {
                go(letters, sum + l as usize, bound, out);
            }
        }
    }
    let mut out = vec![BigInt::zero(); bound + 1];
    go(letters, 0, bound, &mut out);
    out
}

fn subset_counts(items: &[u32], bound: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); bound + 1];
    for mask in 0u32..(1 << items.len()) {
        let s: u32 = (0..items.len()).filter(|i| mask >> i & 1 == 1).map(|i| items[i]).sum();
        if s as usize <= bound {
            out[s as usize] += 1;
        }
    }
    out
}

fn koszul_duality() -> Check {
    let start = Instant::now();
    let predicted = predicted_polynomial_series(&[6, 10], 24);
    ensure(predicted == partition_counts(&[6, 10], 24), || "predicted series vs partition oracle".into())?;
    let table = ok(exterior_algebra(&[5, 9], 24).and_then(|a| tor_via_bar(&a, 24)))?;
    ensure(table.d_squared_zero, || "d^2 != 0".into())?;
    for (n, got) in table.total_degree_dims().iter().enumerate() {
        let want = u64::try_from(&predicted[n]).ok();
        ensure(*got == want, || format!("exterior, total degree {n}: {got:?} vs {want:?}"))?;
    }
    let words = word_counts(&[6, 10], 22);
    let table = ok(square_zero_extension(&[5, 9], 22).and_then(|a| tor_via_bar(&a, 22)))?;
    ensure(table.d_squared_zero, || "d^2 != 0".into())?;
    for (n, got) in table.total_degree_dims().iter().enumerate() {
        let want = u64::try_from(&words[n]).ok();
        ensure(*got == want, || format!("square-zero, total degree {n}: {got:?} vs {want:?}"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("both tables exact in {secs:.2}s"))
}

fn qsymm_polynomiality() -> Check {
    let all = GeneratorProfile::All;
    // Oracle: ∏_n (1 - t^n)^{-L_n} with L_n the Lyndon counts.
    let mut product = vec![Rational::zero(); 13];
    product[0] = Rational::one();
    for n in 1..=12usize {
        let count = lyndon_count(n as u32, &all);
        let listed = ok(lyndon_generators(n as u32, &all))?;
        ensure(listed.len() as u64 == count, || format!("degree {n}: listed vs counted"))?;
        let mut geometric = vec![Rational::zero(); 13];
        for j in (0..=12).step_by(n) {
            geometric[j] = Rational::one();
        }
        for _ in 0..count {
            product = series_mul(&product, &geometric, 13);
        }
    }
    let hilbert = ok(free_algebra_hilbert(&all, 12, HilbertFlavor::PolynomialOnLyndon))?;
    for n in 0..=12usize {
        let want = if n == 0 { BigInt::one() } else { BigInt::one() << (n - 1) };
        ensure(product[n] == Rational::from_integer(want.clone()), || format!("degree {n}: product {}", product[n]))?;
        ensure(hilbert[n] == want, || format!("degree {n}: hilbert {}", hilbert[n]))?;
    }
    Ok("polynomial algebra on Lyndon compositions has 2^(n-1) in degree n <= 12".into())
}

fn random_admissible(rng: &mut ChaCha8Rng, max_weight: u32) -> Composition {
    loop {
        let mut parts = Vec::new();
        let mut left = rng.gen_range(2..=max_weight);
        while left > 0 {
            let p = rng.gen_range(1..=left);
            parts.push(p);
            left -= p;
        }
        let c = Composition::new(parts).unwrap();
        if is_admissible(&c) {
            return c;
        }
    }
}

fn multiple_zeta() -> Check {
    let z2 = ok(mzv_eval(&"(2)".parse().unwrap(), 1e-8))?;
    let pi2_6 = std::f64::consts::PI.powi(2) / 6.0;
    ensure((z2.value - pi2_6).abs() <= 1e-8 && z2.contains(pi2_6), || format!("zeta(2) = {z2}"))?;
    let z12 = ok(mzv_eval(&"(1,2)".parse().unwrap(), 1e-9))?;
    let z3 = ok(mzv_eval(&"(3)".parse().unwrap(), 1e-9))?;
    ensure((z12.value - z3.value).abs() <= 2e-8, || format!("{z12} vs {z3}"))?;
    ensure((z3.value - 1.202_056_903_159_594_3).abs() <= 2e-9, || format!("zeta(3) = {z3}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..10 {
        let a = random_admissible(&mut rng, 4);
        let b = random_admissible(&mut rng, (6 - a.weight()).max(2));
        let b = if a.weight() + b.weight() > 6 { "(2)".parse().unwrap() } else { b };
        ensure(a.weight() + b.weight() <= 6, || "weight".into())?;
        let r = ok(homomorphism_check(&QSymm::monomial(a.clone()), &QSymm::monomial(b.clone()), 1e-8))?;
        ensure(r.pass, || format!("trial {trial}: {a} * {b}: difference {:e}", r.difference))?;
    }
    ensure(matches!(mzv_eval(&"(1)".parse().unwrap(), 1e-8), Err(Error::Divergent { .. })), || {
        "zeta(1) accepted".into()
    })?;
    Ok(format!("zeta(2) = {z2}; 10 stuffle checks pass; zeta(1) rejected"))
}

fn series_tables() -> Check {
    for convention in [GeneratorConvention::FromZero, GeneratorConvention::FromOne] {
        let first = convention.first_index();
        let ext: Vec<u32> = (first..).map(|i| 4 * i + 1).take_while(|&d| d <= 20).collect();
        let poly: Vec<u32> = (first..).map(|i| 4 * i + 2).take_while(|&d| d <= 20).collect();
        let somega = subset_counts(&ext, 20);
        let polys = partition_counts(&poly, 20);
        let mut fiber = polys.clone();
        fiber[0] = BigInt::zero();
        let mut thh = vec![BigInt::zero(); 21];
        for i in 0..=20 {
            for j in 0..=20 - i {
                thh[i + j] += &somega[i] * &polys[j];
            }
        }
        for (ring, oracle) in
            [(CoefficientRing::SOmega, somega), (CoefficientRing::KTheoryFiber, fiber), (CoefficientRing::Thh, thh)]
        {
            let got = coefficient_ring_series(ring, 20, convention);
            ensure(got == oracle, || format!("{ring:?} ({}): {got:?}", convention.name()))?;
        }
    }
    Ok("sOmega, K-theory fiber and THH through degree 20, both conventions".into())
}

fn coaction_check() -> Check {
    let m = cp(2);
    let x = GradedPolynomial::var(x_var());
    let conv = GeneratorConvention::FromZero;
    for class in [GradedPolynomial::one(), x.clone(), &x * &x, &GradedPolynomial::one() - &x.scale(&int(2))] {
        let c = coaction(&m, &class, 12, conv);
        ensure(c.counit() == class, || format!("counit on {class}"))?;
        ensure(coaction_is_coassociative(&m, &class, 12, conv), || format!("coassociativity on {class}"))?;
    }
    // Oracle: d_1 = -2 c_1 = -6x on CP2, so 1 ↦ ... + (-6x) ⊗ β[y2] + (18x^2) ⊗ β[y2^2].
    let c = coaction(&m, &GradedPolynomial::one(), 12, conv);
    let y2 = y_var(2);
    ensure(c.terms[&Monomial::var(y2)] == x.scale(&int(-6)), || "degree-2 term".into())?;
    ensure(c.terms[&Monomial::power(y2, 2)] == (&x * &x).scale(&int(36)), || "y2^2 term".into())?;
    Ok("counit and coassociativity on CP2 through degree 12".into())
}

#[test]
fn acceptance_criteria() {
    let checks: [(&str, fn() -> Check); 13] = [
        ("d-class identity", d_class_identity),
        ("a-class structure", a_class_structure),
        ("primitives", primitives),
        ("diagonal vanishing", diagonal_vanishing),
        ("primitivity", primitivity),
        ("torsor law", torsor_law),
        ("genus engine", genus_engine),
        ("gamma exponential", gamma),
        ("koszul duality", koszul_duality),
        ("qsymm polynomiality", qsymm_polynomiality),
        ("multiple zeta values", multiple_zeta),
        ("series tables", series_tables),
        ("coaction", coaction_check),
    ];
    let mut failures = Vec::new();
    let mut err = std::io::stderr();
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        writeln!(err, "acceptance {:>2} {tag} {name} ({secs:.2}s): {detail}", i + 1).unwrap();
        if result.is_err() {
            failures.push(format!("{} {name}: {detail}", i + 1));
        }
    }
    assert!(failures.is_empty(), "failed criteria:\n{}", failures.join("\n"));
}

#[test]
fn library_suite_agrees() {
    let results = gtalg::acceptance::run(&gtalg::acceptance::SuiteConfig::default(), &[]);
    assert_eq!(results.len(), 13);
    for r in &results {
        assert_eq!(r.outcome, gtalg::acceptance::Outcome::Pass, "{}", r.line());
    }
}

#[test]
fn uni_series_reexport_is_usable() {
    let s: UniSeries<Rational> = UniSeries::new(vec![int(1), int(1)]);
    assert_eq!(s.inv().unwrap().coeff(1), &int(-1));
}
