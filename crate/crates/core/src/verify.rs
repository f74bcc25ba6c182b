//! Randomized and exhaustive checks of the valuation laws.
//!
//! Each check returns `Ok(true)` when the law holds exactly. Resource-limit
//! and other errors are reported as failures by the suite runner.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::builtins::{self, Builtin, IndexGroup};
use crate::egf::TruncatedEGF;
use crate::error::{Error, Result};
use crate::groupoid::{self, Component, FiniteGroupoid, GradedGroupoid, GroupAction};
use crate::numeric::{factorial, multinomial, Rational, SizeVector};
use crate::species::{self, Species, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Valuation,
    Inverse,
    Quotient,
    Factorial,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "valuation" => Ok(Suite::Valuation),
            "inverse" => Ok(Suite::Inverse),
            "quotient" => Ok(Suite::Quotient),
            "factorial" => Ok(Suite::Factorial),
            "all" => Ok(Suite::All),
            _ => Err(Error::validation(format!("unknown suite: {s}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Valuation => "valuation",
            Suite::Inverse => "inverse",
            Suite::Quotient => "quotient",
            Suite::Factorial => "factorial",
            Suite::All => "all",
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Config {
    pub order: usize,
    pub seed: u64,
    pub trials: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { order: 8, seed: 0, trials: 20 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawTally {
    pub law: String,
    pub passed: u64,
    pub failed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub order: usize,
    pub seed: u64,
    pub trials: usize,
    pub laws: Vec<LawTally>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.laws.iter().all(|l| l.failed == 0)
    }

    fn record(&mut self, law: &str, outcome: Result<bool>, context: impl FnOnce() -> String) {
        let idx = match self.laws.iter().position(|l| l.law == law) {
            Some(i) => i,
            None => {
                self.laws.push(LawTally { law: law.to_string(), passed: 0, failed: 0, first_failure: None });
                self.laws.len() - 1
            }
        };
        let tally = &mut self.laws[idx];
        match outcome {
            Ok(true) => tally.passed += 1,
            Ok(false) => {
                tally.failed += 1;
                tally.first_failure.get_or_insert_with(context);
            }
            Err(e) => {
                tally.failed += 1;
                tally.first_failure.get_or_insert_with(|| format!("{}: {e}", context()));
            }
        }
    }
}

pub fn run(suite: Suite, config: &Config) -> Report {
    let mut report = Report { suite, order: config.order, seed: config.seed, trials: config.trials, laws: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let suites = match suite {
        Suite::All => vec![Suite::Valuation, Suite::Inverse, Suite::Quotient, Suite::Factorial],
        s => vec![s],
    };
    for s in suites {
        match s {
            Suite::Valuation => valuation_suite(&mut report, config, &mut rng),
            Suite::Inverse => inverse_suite(&mut report, config, &mut rng),
            Suite::Quotient => quotient_suite(&mut report, config, &mut rng),
            Suite::Factorial => factorial_suite(&mut report, config, &mut rng),
            Suite::All => unreachable!(),
        }
    }
    report
}

fn valuation_suite(report: &mut Report, config: &Config, rng: &mut ChaCha8Rng) {
    let catalog = Builtin::catalog();
    let compose_order = config.order.min(6);
    for _ in 0..config.trials {
        let a = random_graded_groupoid(rng);
        let b = random_graded_groupoid(rng);
        for (law, ok) in groupoid_laws(&a, &b) {
            report.record(law, Ok(ok), || format!("{a:?}, {b:?}"));
        }
        let fb = catalog.choose(rng).expect("nonempty");
        let gb = catalog.choose(rng).expect("nonempty");
        let pair = builtins::make(fb).and_then(|f| builtins::make(gb).map(|g| (f, g)));
        match pair {
            Ok((f, g)) => {
                for (law, outcome) in species_laws(&f, &g, config.order, compose_order) {
                    report.record(law, outcome, || format!("{fb}, {gb}"));
                }
                let n_max = config.order.min(6);
                let strategies =
                    product_strategy_laws(&f, &g, n_max).into_iter().chain(inverse_strategy_laws(&g, n_max));
                for (law, outcome) in strategies {
                    report.record(law, outcome, || format!("{fb}, {gb}"));
                }
                report.record("substitute_xy", substitute_xy_law(&f, config.order), || fb.to_string());
            }
            Err(e) => report.record("build", Err(e), || format!("{fb}, {gb}")),
        }
    }
    for b in all_builtins() {
        report.record("closed_form", closed_form_law(&b, config.order), || b.to_string());
    }
}

fn inverse_suite(report: &mut Report, config: &Config, rng: &mut ChaCha8Rng) {
    let order = config.order;
    match inverse_family() {
        Ok(family) => {
            for (name, f) in &family {
                report.record("geominv", inverse_law(f, order), || name.clone());
                for (a, b) in [(1, 2), (2, 3)] {
                    report.record("scaledrecip", scaled_reciprocal_law(a, b, f, order), || format!("{a},{b},{name}"));
                }
            }
        }
        Err(e) => report.record("geominv", Err(e), || "family".into()),
    }
    for (a, b) in [(1, 2), (2, 3), (3, 5)] {
        report.record("binpow", binomial_power_law(a, b, order), || format!("{a},{b}"));
    }
    let catalog = Builtin::catalog();
    for _ in 0..config.trials {
        let fb = catalog.choose(rng).expect("nonempty");
        let (a, b) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let f = builtins::make(fb).map(|f| species::positive_part(&f));
        match f {
            Ok(f) => {
                report.record("geominv", inverse_law(&f, order), || format!("pospart({fb})"));
                report
                    .record("scaledrecip", scaled_reciprocal_law(a, b, &f, order), || format!("{a},{b},pospart({fb})"));
            }
            Err(e) => report.record("geominv", Err(e), || fb.to_string()),
        }
        report.record("binpow", binomial_power_law(a, b, order), || format!("{a},{b}"));
    }
}

fn quotient_suite(report: &mut Report, config: &Config, rng: &mut ChaCha8Rng) {
    for _ in 0..config.trials {
        let action = match random_group(rng) {
            Ok(a) => a,
            Err(e) => {
                report.record("quotient", Err(e), || "group".into());
                continue;
            }
        };
        let desc = || format!("degree {} order {}", action.degree(), action.order());
        report.record("quotient", Ok(quotient_law(&action)), desc);
        let n = rng.gen_range(0..=3);
        report.record("power_quotient", power_quotient_law(n, &action), || format!("n={n}, {}", desc()));
    }
    for n in 0..=4 {
        for k in 1..=4 {
            report.record("inertia_sum", inertia_sum_law(n, k), || format!("n={n}, k={k}"));
        }
    }
    for k in 1..=4 {
        for group in [IndexGroup::Symmetric, IndexGroup::Cyclic] {
            let b = Builtin::PG(k, group);
            report.record("pg_series", closed_form_law(&b, config.order), || b.to_string());
        }
    }
}

fn factorial_suite(report: &mut Report, config: &Config, rng: &mut ChaCha8Rng) {
    for _ in 0..config.trials {
        let g = random_groupoid(rng);
        let n = rng.gen_range(0..=6);
        report.record("rising_factorial", Ok(rising_factorial_law(&g, n)), || format!("{g:?}, n={n}"));
    }
    for n in 1..=4 {
        report.record("incfact_identity", incfact_identity(n, config.order.max(10)), || format!("N={n}"));
        report.record("decfact_identity", decfact_identity(n, config.order.max(10)), || format!("N={n}"));
    }
}

fn random_groupoid(rng: &mut ChaCha8Rng) -> FiniteGroupoid {
    let count = rng.gen_range(0..=4);
    FiniteGroupoid::from_components((0..count).map(|_| {
        let objects: u32 = rng.gen_range(1..=4);
        let aut: u32 = rng.gen_range(1..=6);
        Component::new(objects, aut).expect("positive")
    }))
}

fn random_graded_groupoid(rng: &mut ChaCha8Rng) -> GradedGroupoid {
    GradedGroupoid::new(random_groupoid(rng), random_groupoid(rng))
}

/// A random closed permutation group of degree at most 6.
pub fn random_group(rng: &mut impl Rng) -> Result<GroupAction> {
    let degree = rng.gen_range(1..=6);
    let count = rng.gen_range(1..=2);
    let gens: Vec<Vec<usize>> = (0..count)
        .map(|_| {
            let mut p: Vec<usize> = (0..degree).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    GroupAction::from_generators(degree, &gens)
}

/// Cardinality respects sums and products and changes sign under negation.
pub fn groupoid_laws(a: &GradedGroupoid, b: &GradedGroupoid) -> Vec<(&'static str, bool)> {
    let (ca, cb) = (a.cardinality(), b.cardinality());
    let three = BigUint::from(3u8);
    vec![
        ("groupoid_sum", a.disjoint_union(b).cardinality() == &ca + &cb),
        ("groupoid_product", a.graded_product(b).cardinality() == &ca * &cb),
        ("groupoid_negate", a.negate().cardinality() == -ca.clone()),
        ("groupoid_unit", a.graded_product(&GradedGroupoid::unit()).cardinality() == ca.clone()),
        ("groupoid_replicate", a.replicate(&three).cardinality() == ca * Rational::from(3)),
    ]
}

fn egf_eq(lhs: Result<TruncatedEGF>, rhs: Result<TruncatedEGF>) -> Result<bool> {
    Ok(lhs? == rhs?)
}

/// `|F+G|`, `|FG|`, `|F×G|`, `|∂F|` to `order` and `|F∘G₊|` to `compose_order`.
pub fn species_laws(f: &Species, g: &Species, order: usize, compose_order: usize) -> Vec<(&'static str, Result<bool>)> {
    let ef = f.egf(order);
    let eg = g.egf(order);
    let both = |op: fn(&TruncatedEGF, &TruncatedEGF) -> Result<TruncatedEGF>| match (&ef, &eg) {
        (Ok(a), Ok(b)) => op(a, b),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    };
    let gp = species::positive_part(g);
    vec![
        ("sum", egf_eq(species::sum(f, g).and_then(|s| s.egf(order)), both(TruncatedEGF::add))),
        ("product", egf_eq(species::product(f, g).and_then(|s| s.egf(order)), both(TruncatedEGF::mul))),
        ("hadamard", egf_eq(species::hadamard(f, g).and_then(|s| s.egf(order)), both(TruncatedEGF::hadamard))),
        (
            "derivative",
            egf_eq(
                species::derivative(f, 0).and_then(|s| s.egf(order)),
                f.egf(order + 1).and_then(|e| e.derivative(0)),
            ),
        ),
        (
            "compose",
            egf_eq(
                species::compose(f, std::slice::from_ref(&gp)).and_then(|s| s.egf(compose_order)),
                f.egf(compose_order).and_then(|e| e.compose(&[gp.egf(compose_order)?])),
            ),
        ),
    ]
}

fn same_values(a: &Species, b: &Species, n_max: usize) -> Result<bool> {
    for n in 0..=n_max {
        if a.at(n)? != b.at(n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn compare(a: Result<Species>, b: Result<Species>, n_max: usize) -> Result<bool> {
    same_values(&a?, &b?, n_max)
}

/// Counting products agree structurally with the other strategies up to size `n_max`.
pub fn product_strategy_laws(f: &Species, g: &Species, n_max: usize) -> Vec<(&'static str, Result<bool>)> {
    let by = |s: Strategy| species::product_with(f, g, s);
    vec![
        ("product_labeled", compare(by(Strategy::Counting), by(Strategy::Labeled), n_max)),
        ("product_compositions", compare(by(Strategy::Counting), by(Strategy::Compositions), n_max)),
    ]
}

/// `geominv(F₊)` by counting agrees structurally with the other strategies up to size `n_max`.
pub fn inverse_strategy_laws(f: &Species, n_max: usize) -> Vec<(&'static str, Result<bool>)> {
    let fp = species::positive_part(f);
    let by = |s: Strategy| species::geom_inverse_with(&fp, s);
    vec![
        ("geominv_labeled", compare(by(Strategy::Counting), by(Strategy::Labeled), n_max)),
        ("geominv_compositions", compare(by(Strategy::Counting), by(Strategy::Compositions), n_max)),
    ]
}

/// `substitute_xy(F)` and `compose(F, [XY])` agree at every `(a, b)` with `a + b <= total`.
pub fn substitute_xy_law(f: &Species, total: usize) -> Result<bool> {
    let direct = species::substitute_xy(f)?;
    let composed = species::compose(f, &[builtins::make(&Builtin::XY)?])?;
    for n in SizeVector::up_to_total(2, total) {
        if direct.value(&n)? != composed.value(&n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The four species named in the inverse theorems.
pub fn inverse_family() -> Result<Vec<(String, Species)>> {
    let exp_plus = species::positive_part(&builtins::make(&Builtin::Exp)?);
    let z = builtins::make(&Builtin::ZPow(1))?;
    let z2 = species::constant_species(1, GradedGroupoid::positive(groupoid::cyclic(2)?))?;
    let z2_exp = species::product(&z2, &exp_plus)?;
    let dz_plus = species::positive_part(&species::derivative(&z, 0)?);
    Ok(vec![
        ("pospart(Exp)".into(), exp_plus),
        ("Zpow(1)".into(), z),
        ("prod(Zbar2,pospart(Exp))".into(), z2_exp),
        ("pospart(d/dx1(Zpow(1)))".into(), dz_plus),
    ])
}

/// `|geominv(F)| · (1 + |F|) = 1`.
pub fn inverse_law(f: &Species, order: usize) -> Result<bool> {
    let inv = species::geom_inverse(f)?.egf(order)?;
    let one = TruncatedEGF::one(f.sorts(), order);
    Ok(inv.mul(&one.add(&f.egf(order)?)?)? == one)
}

/// `|scaledrecip(a, b, F)| · (a/b + |F|) = 1`.
pub fn scaled_reciprocal_law(a: usize, b: usize, f: &Species, order: usize) -> Result<bool> {
    let s = species::scaled_reciprocal(a, b, f)?.egf(order)?;
    let one = TruncatedEGF::one(f.sorts(), order);
    let shift = one.scalar_mul(&Rational::new(a as i64, b as i64)?);
    Ok(s.mul(&shift.add(&f.egf(order)?)?)? == one)
}

/// `|binpow(a, b)| = (1 + x)^{-a/b}`.
pub fn binomial_power_law(a: usize, b: usize, order: usize) -> Result<bool> {
    let lhs = species::binomial_power(a, b)?.egf(order)?;
    Ok(lhs == TruncatedEGF::binomial_series(&-Rational::new(a as i64, b as i64)?, order))
}

/// `|x/G| = |x| / |G|`.
pub fn quotient_law(action: &GroupAction) -> bool {
    let expect = Rational::new(action.degree() as i64, action.order() as i64).expect("nonzero order");
    groupoid::quotient(action).cardinality() == expect
}

/// `|[n]^k / G| = n^k / |G|` with `k` the degree of `G`.
pub fn power_quotient_law(n: usize, action: &GroupAction) -> Result<bool> {
    let k = action.degree();
    let q = groupoid::power_quotient(n, k, action)?;
    let expect = Rational::from(num_traits::pow(BigUint::from(n), k)) * Rational::unit_fraction(&action.order().into());
    Ok(q.cardinality() == expect)
}

/// `|I([n]^k / S_k)| = Σ_{s_1+...+s_n=k} (k; s) / (s_1! ... s_n!)`.
pub fn inertia_sum_law(n: usize, k: usize) -> Result<bool> {
    let sym = GroupAction::symmetric(k)?;
    let lhs = groupoid::power_quotient(n, k, &sym)?.inertia().cardinality();
    let mut rhs = Rational::zero();
    for s in weak_compositions(k, n) {
        let denom: BigUint = s.iter().map(|&p| factorial(p)).product();
        rhs += Rational::from(multinomial(k, &s)?) * Rational::unit_fraction(&denom);
    }
    Ok(lhs == rhs)
}

fn weak_compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in weak_compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `|G^{(n)}| = |G|^{(n)}`.
pub fn rising_factorial_law(g: &FiniteGroupoid, n: usize) -> bool {
    groupoid::increasing_factorial_groupoid(g, n).cardinality() == g.cardinality().rising(n)
}

/// `|IncFact(N)| = x^{1-N} ∫^{(N)} (e^x - 1)/x`.
pub fn incfact_identity(n: usize, order: usize) -> Result<bool> {
    let lhs = builtins::make(&Builtin::IncFact(n))?.egf(order)?;
    let e = TruncatedEGF::exp_series(order + 1);
    let rhs = e
        .sub(&TruncatedEGF::one_series(order + 1))?
        .monomial_div(1)?
        .integrate_n(0, n)?
        .monomial_div(n - 1)?
        .truncate(order);
    Ok(lhs == rhs)
}

/// `|One + (N! ∂^N DecFact(N))₊| = N! (e^x - π_N(e^x)) / x^N`.
pub fn decfact_identity(n: usize, order: usize) -> Result<bool> {
    let dec = builtins::make(&Builtin::DecFact(n))?;
    let shifted = species::scalar_replicate(&species::derivative_n(&dec, 0, n)?, factorial(n));
    let lhs = species::sum(&species::one(1)?, &species::positive_part(&shifted))?.egf(order)?;
    let e = TruncatedEGF::exp_series(order + n);
    let rhs = e.sub(&e.pi_n(n)?)?.monomial_div(n)?.scalar_mul(&factorial(n).into());
    Ok(lhs == rhs)
}

/// Every builtin, including the two-sort ones.
pub fn all_builtins() -> Vec<Builtin> {
    let mut all = Builtin::catalog();
    all.extend([Builtin::Xi(1), Builtin::Xi(2), Builtin::One2, Builtin::Exp2, Builtin::XY]);
    all
}

pub fn closed_form_law(b: &Builtin, order: usize) -> Result<bool> {
    Ok(builtins::make(b)?.egf(order)? == closed_form(b, order)?)
}

fn series_from(order: usize, coeff: impl Fn(usize) -> Result<Rational>) -> Result<TruncatedEGF> {
    TruncatedEGF::from_coeffs((0..=order).map(coeff).collect::<Result<_>>()?)
}

/// `∫ h(x)/x dx` with zero constant term.
fn integral_over_x(h: &TruncatedEGF, order: usize) -> Result<TruncatedEGF> {
    Ok(h.monomial_div(1)?.integrate_n(0, 1)?.truncate(order))
}

/// The generating series each builtin is expected to have, built from
/// analytic series where one exists.
pub fn closed_form(b: &Builtin, order: usize) -> Result<TruncatedEGF> {
    let recip = |n: BigUint| Rational::unit_fraction(&n);
    match b {
        Builtin::X => Ok(TruncatedEGF::x_series(order)),
        Builtin::Xi(i) => TruncatedEGF::variable(2, i - 1, order),
        Builtin::One => Ok(TruncatedEGF::one_series(order)),
        Builtin::One2 => Ok(TruncatedEGF::one(2, order)),
        Builtin::Exp => Ok(TruncatedEGF::exp_series(order)),
        Builtin::Exp2 => TruncatedEGF::exp_all(2, order),
        Builtin::XY => TruncatedEGF::variable(2, 0, order)?.mul(&TruncatedEGF::variable(2, 1, order)?),
        Builtin::SPow(p) => series_from(order, |n| Ok(recip(num_traits::pow(factorial(n), *p)))),
        Builtin::ZPow(p) => series_from(order, |n| {
            Ok(if n == 0 { Rational::zero() } else { recip(num_traits::pow(BigUint::from(n), *p)) })
        }),
        Builtin::E(p) => TruncatedEGF::exp_scaled(*p, order),
        Builtin::GroupBar(a) => Ok(TruncatedEGF::one_series(order).scalar_mul(&Rational::new(1, *a as i64)?)),
        Builtin::RisingZ(p) => series_from(order, |n| {
            Ok(if n == 0 { Rational::zero() } else { Rational::from(*p as i64).rising(n).recip()? })
        }),
        Builtin::Psubsets => series_from(order, |n| Ok((0..=n).map(|k| recip(factorial(k))).sum())),
        Builtin::IncFact(p) => series_from(order, |n| {
            Ok(if n == 0 { Rational::zero() } else { Rational::from(n as i64).rising(*p).recip()? })
        }),
        Builtin::DecFact(p) => series_from(order, |n| {
            Ok(if n < *p { Rational::zero() } else { Rational::from(n as i64).falling(*p).recip()? })
        }),
        Builtin::PG(k, group) => {
            let g = group.action(*k)?.order();
            series_from(order, |n| Ok(Rational::from(num_traits::pow(BigUint::from(n), *k)) * recip(BigUint::from(g))))
        }
        Builtin::Isinh => integral_over_x(&TruncatedEGF::sinh_series(order + 1), order),
        Builtin::Icosh => {
            let c = TruncatedEGF::cosh_series(order + 1).sub(&TruncatedEGF::one_series(order + 1))?;
            integral_over_x(&c, order)
        }
        Builtin::Si => integral_over_x(&TruncatedEGF::sin_series(order + 1), order),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_small() {
        let config = Config { order: 5, seed: 7, trials: 4 };
        for suite in [Suite::Valuation, Suite::Inverse, Suite::Quotient, Suite::Factorial] {
            let report = run(suite, &config);
            assert!(report.all_passed(), "{suite}: {:?}", report.laws);
            assert!(!report.laws.is_empty());
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let config = Config { order: 4, seed: 11, trials: 3 };
        assert_eq!(run(Suite::All, &config), run(Suite::All, &config));
    }

    #[test]
    fn failures_are_tallied() {
        let mut report = Report { suite: Suite::All, order: 0, seed: 0, trials: 0, laws: Vec::new() };
        report.record("x", Ok(true), String::new);
        report.record("x", Ok(false), || "first".into());
        report.record("x", Err(Error::domain("boom")), || "second".into());
        assert_eq!(report.laws[0].passed, 1);
        assert_eq!(report.laws[0].failed, 2);
        assert_eq!(report.laws[0].first_failure.as_deref(), Some("first"));
        assert!(!report.all_passed());
    }

    #[test]
    fn inertia_example() {
        assert!(inertia_sum_law(3, 2).unwrap());
        assert_eq!(weak_compositions(2, 2).len(), 3);
    }

    #[test]
    fn catalog_closed_forms() {
        for b in all_builtins() {
            assert!(closed_form_law(&b, 6).unwrap(), "{b}");
        }
    }
}
