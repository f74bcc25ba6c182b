//! Bernoulli and Euler numbers and polynomials.
//!
//! Every table can be produced along independent routes:
//!
//! * `Species`: coefficients of a graded species built from the builtins,
//! * `Series`: exact truncated series division,
//! * `ClosedFormula`: the composition-sum formula (classical Bernoulli only),
//! * `Oracle`: the classical recurrences, which share no code with the
//!   other routes beyond rational arithmetic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::builtins::{self, Builtin};
use crate::egf::{Polynomial, TruncatedEGF};
use crate::error::{Error, Result};
use crate::groupoid::{self, GradedGroupoid};
use crate::numeric::{binomial, enumerate_compositions, factorial, Rational, DEFAULT_COMPOSITION_CAP};
use crate::species::{self, Species};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Species,
    Series,
    ClosedFormula,
    Oracle,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Species => "species",
            Route::Series => "series",
            Route::ClosedFormula => "closed_formula",
            Route::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "name")]
pub enum NumberKind {
    Bernoulli,
    /// `(f, N)`-Bernoulli numbers; `f` is described by name.
    BernoulliGeneralized {
        f: String,
        n: usize,
    },
    Euler,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NumberTable {
    pub kind: NumberKind,
    pub route: Route,
    pub values: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "name")]
pub enum PolynomialKind {
    BernoulliPoly { f: String, n: usize },
    EulerPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolynomialTable {
    pub kind: PolynomialKind,
    pub route: Route,
    pub polys: Vec<Polynomial>,
}

fn check_species_order(m: usize) -> Result<()> {
    if m > species::GEOM_INVERSE_CAP {
        return Err(Error::limit("geominv", m, species::GEOM_INVERSE_CAP));
    }
    Ok(())
}

/// `1/∂Z`, i.e. `(1 + ∂Z₊)^{-1}`.
pub fn bernoulli_species_expr() -> Result<Species> {
    let dz = species::derivative(&builtins::make(&Builtin::ZPow(1))?, 0)?;
    species::geom_inverse(&species::positive_part(&dz))
}

pub fn bernoulli_species(m: usize) -> Result<NumberTable> {
    check_species_order(m)?;
    let values = species::coefficients(&bernoulli_species_expr()?, m)?;
    Ok(NumberTable { kind: NumberKind::Bernoulli, route: Route::Species, values })
}

/// `B_n = Σ_{a_1+...+a_k=n} (-1)^k n! / ((a_1+1)! ... (a_k+1)!)`.
pub fn bernoulli_closed_formula(m: usize) -> Result<NumberTable> {
    if m > DEFAULT_COMPOSITION_CAP {
        return Err(Error::limit("compositions", m, DEFAULT_COMPOSITION_CAP));
    }
    // (n+1)! <= 26! fits in u128, so terms are tallied by denominator and summed once.
    let small_fact: Vec<u128> = (0..=m + 1)
        .scan(1u128, |f, k| {
            *f *= k.max(1) as u128;
            Some(*f)
        })
        .collect();
    let mut values = vec![Rational::one()];
    for n in 1..=m {
        let mut tally: BTreeMap<u128, i64> = BTreeMap::new();
        for parts in enumerate_compositions(n)? {
            let denom: u128 = parts.iter().map(|&a| small_fact[a + 1]).product();
            *tally.entry(denom).or_default() += if parts.len() % 2 == 1 { -1 } else { 1 };
        }
        let sum: Rational =
            tally.into_iter().map(|(d, c)| Rational::from(c) * Rational::unit_fraction(&BigUint::from(d))).sum();
        values.push(sum * Rational::from(factorial(n)));
    }
    Ok(NumberTable { kind: NumberKind::Bernoulli, route: Route::ClosedFormula, values })
}

/// `x / (e^x - 1)` by series division.
pub fn bernoulli_series(m: usize) -> Result<NumberTable> {
    let table = bernoulli_generalized(&TruncatedEGF::exp_series(m + 1), 1, m)?;
    Ok(NumberTable { kind: NumberKind::Bernoulli, route: Route::Series, values: table.values })
}

/// Classical recurrence `Σ_{k=0}^{n} binom(n+1, k) B_k = 0`, `B_0 = 1`.
pub fn bernoulli_oracle(m: usize) -> NumberTable {
    let mut values: Vec<Rational> = vec![Rational::one()];
    for n in 1..=m {
        let s: Rational = (0..n).map(|k| Rational::from(binomial(n + 1, k)) * &values[k]).sum();
        values.push(-(s * Rational::new(1, (n + 1) as i64).expect("nonzero")));
    }
    NumberTable { kind: NumberKind::Bernoulli, route: Route::Oracle, values }
}

/// `(x^N / N!) / (f(x) - π_N(f)(x))`, series route.
///
/// `f` must be known to order at least `m + N`.
pub fn bernoulli_generalized(f: &TruncatedEGF, n: usize, m: usize) -> Result<NumberTable> {
    let recip = generalized_denominator_inverse(f, n, m)?;
    Ok(NumberTable {
        kind: NumberKind::BernoulliGeneralized { f: "series".into(), n },
        route: Route::Series,
        values: recip.coeffs1(),
    })
}

fn generalized_denominator_inverse(f: &TruncatedEGF, n: usize, m: usize) -> Result<TruncatedEGF> {
    if f.vars() != 1 {
        return Err(Error::domain("generalized Bernoulli numbers need a one-variable series"));
    }
    if n == 0 {
        return Err(Error::domain("N must be positive"));
    }
    if f.order() < m + n {
        return Err(Error::domain(format!("series known to order {} but {} is needed", f.order(), m + n)));
    }
    if f.coeff1(n).is_zero() {
        return Err(Error::domain(format!("f_{n} = 0")));
    }
    let tail = f.sub(&f.pi_n(n)?)?;
    let scaled = tail.monomial_div(n)?.scalar_mul(&Rational::from(factorial(n)));
    Ok(scaled.reciprocal()?.truncate(m))
}

/// `(1 + N! ∂^N (F × Z_(N))₊)^{-1}`.
pub fn bernoulli_generalized_species_expr(f: &Species, n: usize) -> Result<Species> {
    if f.sorts() != 1 {
        return Err(Error::domain("generalized Bernoulli species needs a single-sort F"));
    }
    if n == 0 {
        return Err(Error::domain("N must be positive"));
    }
    if !f.at(n)?.is_unit() {
        return Err(Error::domain(format!("F([{n}]) must be the unit groupoid")));
    }
    let had = species::hadamard(f, &builtins::make(&Builtin::DecFact(n))?)?;
    let shifted = species::scalar_replicate(&species::derivative_n(&had, 0, n)?, factorial(n));
    species::geom_inverse(&species::positive_part(&shifted))
}

pub fn bernoulli_generalized_species(f: &Species, n: usize, m: usize) -> Result<NumberTable> {
    check_species_order(m)?;
    let values = species::coefficients(&bernoulli_generalized_species_expr(f, n)?, m)?;
    Ok(NumberTable {
        kind: NumberKind::BernoulliGeneralized { f: f.name().to_string(), n },
        route: Route::Species,
        values,
    })
}

/// `Σ_n B^f_{N,n}(x) y^n/n! = (y^N/N!) f(xy) / (f(y) - π_N(f)(y))`, series route.
///
/// `f` must be known to order at least `2m + N`.
pub fn bernoulli_polynomials_series(f: &TruncatedEGF, n: usize, m: usize) -> Result<PolynomialTable> {
    let order = 2 * m;
    let recip = generalized_denominator_inverse(f, n, order)?;
    let gen = f.substitute_product(order)?.mul(&recip.embed(1)?)?;
    let mut polys = gen.extract_polynomials()?;
    polys.truncate(m + 1);
    Ok(PolynomialTable { kind: PolynomialKind::BernoulliPoly { f: "series".into(), n }, route: Route::Series, polys })
}

/// `F(XY) / (1 + N! ∂^N (F × Z_(N))₊)` as a two-sort species.
pub fn bernoulli_polynomials_species_expr(f: &Species, n: usize) -> Result<Species> {
    let recip = bernoulli_generalized_species_expr(f, n)?;
    species::product(&species::substitute_xy(f)?, &species::promote(&recip, 1)?)
}

pub fn bernoulli_polynomials_species(f: &Species, n: usize, m: usize) -> Result<PolynomialTable> {
    check_species_order(m)?;
    let gen = bernoulli_polynomials_species_expr(f, n)?.egf(2 * m)?;
    let mut polys = gen.extract_polynomials()?;
    polys.truncate(m + 1);
    Ok(PolynomialTable {
        kind: PolynomialKind::BernoulliPoly { f: f.name().to_string(), n },
        route: Route::Species,
        polys,
    })
}

/// `B_n(x) = Σ_k binom(n, k) B_k x^{n-k}` from the recurrence oracle.
pub fn bernoulli_polynomials_oracle(m: usize) -> PolynomialTable {
    let b = bernoulli_oracle(m).values;
    let polys = (0..=m)
        .map(|n| {
            let coeffs = (0..=n).map(|j| Rational::from(binomial(n, j)) * &b[n - j]).collect();
            Polynomial::new(coeffs)
        })
        .collect();
    PolynomialTable { kind: PolynomialKind::BernoulliPoly { f: "Exp".into(), n: 1 }, route: Route::Oracle, polys }
}

/// `(1 + Z̄₂ Exp₊)^{-1}`.
pub fn euler_species_expr() -> Result<Species> {
    let z2 = species::constant_species(1, GradedGroupoid::positive(groupoid::cyclic(2)?))?;
    let exp_plus = species::positive_part(&builtins::make(&Builtin::Exp)?);
    species::geom_inverse(&species::product(&z2, &exp_plus)?)
}

pub fn euler_numbers_species(m: usize) -> Result<NumberTable> {
    check_species_order(m)?;
    let values = species::coefficients(&euler_species_expr()?, m)?;
    Ok(NumberTable { kind: NumberKind::Euler, route: Route::Species, values })
}

/// `2 / (1 + e^x)` by series reciprocal.
pub fn euler_numbers_series(m: usize) -> Result<NumberTable> {
    let half = Rational::new(1, 2)?;
    let denom = TruncatedEGF::exp_series(m).add(&TruncatedEGF::one_series(m))?.scalar_mul(&half);
    Ok(NumberTable { kind: NumberKind::Euler, route: Route::Series, values: denom.reciprocal()?.coeffs1() })
}

/// `E_n(0)` from the polynomial recurrence oracle.
pub fn euler_numbers_oracle(m: usize) -> NumberTable {
    let values = euler_polynomials_oracle(m).polys.iter().map(|p| p.coeff(0)).collect();
    NumberTable { kind: NumberKind::Euler, route: Route::Oracle, values }
}

/// `Exp(XY) / (1 + Z̄₂ Exp₊(Y))`.
pub fn euler_polynomials_species_expr() -> Result<Species> {
    let exp_xy = species::substitute_xy(&builtins::make(&Builtin::Exp)?)?;
    species::product(&exp_xy, &species::promote(&euler_species_expr()?, 1)?)
}

pub fn euler_polynomials_species(m: usize) -> Result<PolynomialTable> {
    check_species_order(m)?;
    let mut polys = euler_polynomials_species_expr()?.egf(2 * m)?.extract_polynomials()?;
    polys.truncate(m + 1);
    Ok(PolynomialTable { kind: PolynomialKind::EulerPoly, route: Route::Species, polys })
}

/// `2 e^{xy} / (1 + e^y)` by series arithmetic.
pub fn euler_polynomials_series(m: usize) -> Result<PolynomialTable> {
    let order = 2 * m;
    let half = Rational::new(1, 2)?;
    let recip =
        TruncatedEGF::exp_series(order).add(&TruncatedEGF::one_series(order))?.scalar_mul(&half).reciprocal()?;
    let gen = TruncatedEGF::exp_series(order).substitute_product(order)?.mul(&recip.embed(1)?)?;
    let mut polys = gen.extract_polynomials()?;
    polys.truncate(m + 1);
    Ok(PolynomialTable { kind: PolynomialKind::EulerPoly, route: Route::Series, polys })
}

/// `E_n(x) = x^n - (1/2) Σ_{k<n} binom(n,k) E_k(x)`, from `E_n(x+1) + E_n(x) = 2x^n`.
pub fn euler_polynomials_oracle(m: usize) -> PolynomialTable {
    let half = Rational::new(1, 2).expect("nonzero");
    let mut polys: Vec<Polynomial> = Vec::with_capacity(m + 1);
    for n in 0..=m {
        let mut p = Polynomial::monomial(n);
        for (k, ek) in polys.iter().enumerate() {
            p = p.sub(&ek.scale(&(Rational::from(binomial(n, k)) * &half)));
        }
        polys.push(p);
    }
    PolynomialTable { kind: PolynomialKind::EulerPoly, route: Route::Oracle, polys }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn first_bernoulli_numbers() {
        let expect = vec![r(1, 1), r(-1, 2), r(1, 6), r(0, 1), r(-1, 30)];
        assert_eq!(bernoulli_oracle(4).values, expect);
        assert_eq!(bernoulli_species(4).unwrap().values, expect);
        assert_eq!(bernoulli_closed_formula(4).unwrap().values, expect);
        assert_eq!(bernoulli_series(4).unwrap().values, expect);
    }

    #[test]
    fn closed_formula_terms() {
        let t = bernoulli_closed_formula(2).unwrap().values;
        assert_eq!(t[0], r(1, 1));
        assert_eq!(t[1], r(-1, 2));
        // (2) -> -1/3, (1,1) -> +1/2
        assert_eq!(t[2], r(-1, 3) + r(1, 2));
        assert!(bernoulli_closed_formula(26).is_err());
    }

    #[test]
    fn generalized_n2() {
        let t = bernoulli_generalized(&TruncatedEGF::exp_series(12), 2, 10).unwrap();
        assert_eq!(t.values[..3], [r(1, 1), r(-1, 3), r(1, 18)]);
        let exp = builtins::make(&Builtin::Exp).unwrap();
        let s = bernoulli_generalized_species(&exp, 2, 10).unwrap();
        assert_eq!(s.values, t.values);
        let t1 = bernoulli_generalized(&TruncatedEGF::exp_series(11), 1, 10).unwrap();
        assert_eq!(t1.values, bernoulli_oracle(10).values);
    }

    #[test]
    fn generalized_preconditions() {
        let x = TruncatedEGF::x_series(12);
        assert!(matches!(bernoulli_generalized(&x, 2, 8), Err(Error::Domain(_))));
        let z = builtins::make(&Builtin::ZPow(1)).unwrap();
        assert!(matches!(bernoulli_generalized_species(&z, 2, 5), Err(Error::Domain(_))));
        assert!(bernoulli_generalized(&TruncatedEGF::exp_series(5), 2, 10).is_err());
    }

    #[test]
    fn bernoulli_polynomials_small() {
        let exp = builtins::make(&Builtin::Exp).unwrap();
        let s = bernoulli_polynomials_species(&exp, 1, 4).unwrap();
        assert_eq!(s.polys[1], Polynomial::new(vec![r(-1, 2), r(1, 1)]));
        assert_eq!(s.polys[2], Polynomial::new(vec![r(1, 6), r(-1, 1), r(1, 1)]));
        let series = bernoulli_polynomials_series(&TruncatedEGF::exp_series(9), 1, 4).unwrap();
        assert_eq!(s.polys, series.polys);
        assert_eq!(s.polys, bernoulli_polynomials_oracle(4).polys);
    }

    #[test]
    fn euler_values() {
        let expect = vec![r(1, 1), r(-1, 2), r(0, 1), r(1, 4)];
        assert_eq!(euler_numbers_series(3).unwrap().values, expect);
        assert_eq!(euler_numbers_species(3).unwrap().values, expect);
        assert_eq!(euler_numbers_oracle(3).values, expect);
        let p = euler_polynomials_species(3).unwrap();
        assert_eq!(p.polys[1], Polynomial::new(vec![r(-1, 2), r(1, 1)]));
        assert_eq!(p.polys, euler_polynomials_oracle(3).polys);
        assert_eq!(p.polys, euler_polynomials_series(3).unwrap().polys);
    }

    #[test]
    fn table_json() {
        let t = bernoulli_oracle(2);
        let j = serde_json::to_value(&t).unwrap();
        assert_eq!(j["values"], serde_json::json!(["1/1", "-1/2", "1/6"]));
        let p = euler_polynomials_oracle(1);
        let j = serde_json::to_value(&p).unwrap();
        assert_eq!(j["polys"][1], serde_json::json!(["-1/2", "1/1"]));
    }
}
