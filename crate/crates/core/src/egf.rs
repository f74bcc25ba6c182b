//! Truncated exponential generating series over [`Rational`] in one or two
//! variables.
//!
//! A series `f = Σ c_a x^a / a!` is stored densely for every size vector with
//! total degree at most `order`. All operations are exact.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{binomial, factorial, Rational, SizeVector};

/// Default truncation order for one-variable series.
pub const DEFAULT_ORDER_1: usize = 20;
/// Default truncation order for two-variable series.
pub const DEFAULT_ORDER_2: usize = 12;

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedEGF {
    vars: usize,
    order: usize,
    coeffs: Vec<Rational>,
}

fn index_of(vars: usize, a: &SizeVector) -> usize {
    match vars {
        1 => a.get(0),
        _ => {
            let d = a.total();
            d * (d + 1) / 2 + a.get(1)
        }
    }
}

fn dense_len(vars: usize, order: usize) -> usize {
    match vars {
        1 => order + 1,
        _ => (order + 1) * (order + 2) / 2,
    }
}

fn check_vars(vars: usize) -> Result<()> {
    if vars == 1 || vars == 2 {
        Ok(())
    } else {
        Err(Error::domain(format!("series have 1 or 2 variables, got {vars}")))
    }
}

impl TruncatedEGF {
    pub fn zero(vars: usize, order: usize) -> Result<Self> {
        check_vars(vars)?;
        Ok(TruncatedEGF { vars, order, coeffs: vec![Rational::zero(); dense_len(vars, order)] })
    }

    /// Builds a series from a coefficient rule evaluated at every size vector up to `order`.
    pub fn from_fn(vars: usize, order: usize, mut coeff: impl FnMut(&SizeVector) -> Rational) -> Result<Self> {
        let mut f = TruncatedEGF::zero(vars, order)?;
        for a in SizeVector::up_to_total(vars, order) {
            let c = coeff(&a);
            f.coeffs[index_of(vars, &a)] = c;
        }
        Ok(f)
    }

    pub fn try_from_fn(
        vars: usize,
        order: usize,
        mut coeff: impl FnMut(&SizeVector) -> Result<Rational>,
    ) -> Result<Self> {
        let mut f = TruncatedEGF::zero(vars, order)?;
        for a in SizeVector::up_to_total(vars, order) {
            f.coeffs[index_of(vars, &a)] = coeff(&a)?;
        }
        Ok(f)
    }

    /// One-variable series from its EGF coefficients `c_0, c_1, ...`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("a series needs at least its constant term"));
        }
        Ok(TruncatedEGF { vars: 1, order: coeffs.len() - 1, coeffs })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `x^a / a!`; zero beyond the truncation order.
    pub fn coeff(&self, a: &SizeVector) -> Rational {
        if a.sorts() != self.vars || a.total() > self.order {
            return Rational::zero();
        }
        self.coeffs[index_of(self.vars, a)].clone()
    }

    fn c(&self, a: &SizeVector) -> &Rational {
        &self.coeffs[index_of(self.vars, a)]
    }

    /// One-variable coefficient shortcut.
    pub fn coeff1(&self, n: usize) -> Rational {
        self.coeff(&SizeVector::single(n))
    }

    /// One-variable coefficients `c_0..=c_order`.
    pub fn coeffs1(&self) -> Vec<Rational> {
        (0..=self.order).map(|n| self.coeff1(n)).collect()
    }

    /// `(size vector, coefficient)` pairs in total-degree order.
    pub fn entries(&self) -> Vec<(SizeVector, Rational)> {
        SizeVector::up_to_total(self.vars, self.order)
            .into_iter()
            .map(|a| {
                let c = self.c(&a).clone();
                (a, c)
            })
            .collect()
    }

    pub fn truncate(&self, order: usize) -> TruncatedEGF {
        let order = order.min(self.order);
        TruncatedEGF::from_fn(self.vars, order, |a| self.c(a).clone()).expect("vars already valid")
    }

    fn same_vars(&self, other: &TruncatedEGF) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::domain(format!("series variable mismatch: {} vs {}", self.vars, other.vars)));
        }
        Ok(())
    }

    fn zip_with(&self, other: &TruncatedEGF, op: impl Fn(&Rational, &Rational) -> Rational) -> Result<TruncatedEGF> {
        self.same_vars(other)?;
        let order = self.order.min(other.order);
        TruncatedEGF::from_fn(self.vars, order, |a| op(self.c(a), other.c(a)))
    }

    pub fn add(&self, other: &TruncatedEGF) -> Result<TruncatedEGF> {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &TruncatedEGF) -> Result<TruncatedEGF> {
        self.zip_with(other, |x, y| x - y)
    }

    /// Coefficientwise (Hadamard) product.
    pub fn hadamard(&self, other: &TruncatedEGF) -> Result<TruncatedEGF> {
        self.zip_with(other, |x, y| x * y)
    }

    pub fn scalar_mul(&self, r: &Rational) -> TruncatedEGF {
        TruncatedEGF { vars: self.vars, order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn neg(&self) -> TruncatedEGF {
        self.scalar_mul(&Rational::from(-1))
    }

    /// Series product, i.e. binomial convolution of EGF coefficients.
    pub fn mul(&self, other: &TruncatedEGF) -> Result<TruncatedEGF> {
        self.same_vars(other)?;
        let order = self.order.min(other.order);
        let binom = BinomialTable::new(order);
        TruncatedEGF::from_fn(self.vars, order, |n| {
            let mut acc = Rational::zero();
            for k in n.below() {
                let (fk, gk) = (self.c(&k), other.c(&n.checked_sub(&k).unwrap()));
                if fk.is_zero() || gk.is_zero() {
                    continue;
                }
                acc += binom.multi(n, &k) * fk * gk;
            }
            acc
        })
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<TruncatedEGF> {
        let c0 = self.c(&SizeVector::zero(self.vars)).clone();
        if c0.is_zero() {
            return Err(Error::domain("reciprocal of a series with zero constant term"));
        }
        let inv0 = c0.recip()?;
        let binom = BinomialTable::new(self.order);
        let mut h = TruncatedEGF::zero(self.vars, self.order)?;
        for n in SizeVector::up_to_total(self.vars, self.order) {
            let value = if n.is_zero() {
                inv0.clone()
            } else {
                let mut acc = Rational::zero();
                for k in n.below().filter(|k| !k.is_zero()) {
                    let fk = self.c(&k);
                    if fk.is_zero() {
                        continue;
                    }
                    acc += binom.multi(&n, &k) * fk * h.c(&n.checked_sub(&k).unwrap());
                }
                -(acc * &inv0)
            };
            h.coeffs[index_of(self.vars, &n)] = value;
        }
        Ok(h)
    }

    pub fn divide(&self, divisor: &TruncatedEGF) -> Result<TruncatedEGF> {
        self.mul(&divisor.reciprocal()?)
    }

    /// `f(g_1, ..., g_s)` where `s` is the variable count of `self` and every
    /// `g_i` has zero constant term.
    pub fn compose(&self, inner: &[TruncatedEGF]) -> Result<TruncatedEGF> {
        if inner.len() != self.vars {
            return Err(Error::domain(format!("compose needs {} inner series, got {}", self.vars, inner.len())));
        }
        let t = inner[0].vars;
        for g in inner {
            if g.vars != t {
                return Err(Error::domain("inner series disagree on variable count"));
            }
            if !g.c(&SizeVector::zero(t)).is_zero() {
                return Err(Error::domain("compose needs inner series with zero constant term"));
            }
        }
        let order = inner.iter().map(|g| g.order).min().unwrap().min(self.order);
        let powers: Vec<Vec<TruncatedEGF>> = inner
            .iter()
            .map(|g| {
                let g = g.truncate(order);
                let mut ps = vec![TruncatedEGF::one(t, order)];
                for _ in 0..order {
                    let next = ps.last().unwrap().mul(&g)?;
                    ps.push(next);
                }
                Ok(ps)
            })
            .collect::<Result<_>>()?;
        let mut out = TruncatedEGF::zero(t, order)?;
        for a in SizeVector::up_to_total(self.vars, order) {
            let c = self.c(&a);
            if c.is_zero() {
                continue;
            }
            let weight = c.checked_div(&Rational::from(a.factorial()))?;
            let mut term = powers[0][a.get(0)].clone();
            if self.vars == 2 {
                term = term.mul(&powers[1][a.get(1)])?;
            }
            out = out.add(&term.scalar_mul(&weight))?;
        }
        Ok(out)
    }

    /// `∂/∂x_i` (0-based `i`): shifts coefficients down by one in coordinate `i`.
    pub fn derivative(&self, i: usize) -> Result<TruncatedEGF> {
        if i >= self.vars {
            return Err(Error::domain(format!("variable index {i} out of range")));
        }
        let order = self.order.saturating_sub(1);
        let e = SizeVector::unit(self.vars, i);
        TruncatedEGF::from_fn(self.vars, order, |a| self.coeff(&a.add(&e)))
    }

    /// `N`-fold antiderivative in variable `i` with every integration constant zero.
    pub fn integrate_n(&self, i: usize, times: usize) -> Result<TruncatedEGF> {
        if i >= self.vars {
            return Err(Error::domain(format!("variable index {i} out of range")));
        }
        TruncatedEGF::from_fn(self.vars, self.order + times, |a| {
            if a.get(i) < times {
                Rational::zero()
            } else {
                self.coeff(&a.with_entry(i, a.get(i) - times))
            }
        })
    }

    /// Keeps the terms of total degree below `n`.
    pub fn pi_n(&self, n: usize) -> Result<TruncatedEGF> {
        if n == 0 {
            return Err(Error::domain("pi_n needs N >= 1"));
        }
        Ok(TruncatedEGF::from_fn(self.vars, self.order, |a| {
            if a.total() < n {
                self.c(a).clone()
            } else {
                Rational::zero()
            }
        })
        .expect("vars already valid"))
    }

    /// Divides a one-variable series by the monomial `x^n`; all coefficients
    /// below degree `n` must vanish. The shift is done on ordinary power
    /// series coefficients `c_k / k!`.
    pub fn monomial_div(&self, n: usize) -> Result<TruncatedEGF> {
        if self.vars != 1 {
            return Err(Error::domain("monomial_div is defined for one-variable series"));
        }
        if n > self.order {
            return Err(Error::domain(format!("cannot divide by x^{n} at order {}", self.order)));
        }
        if let Some(k) = (0..n).find(|&k| !self.coeff1(k).is_zero()) {
            return Err(Error::domain(format!("monomial_div by x^{n}: coefficient of degree {k} is nonzero")));
        }
        let ordinary: Vec<Rational> =
            (0..=self.order).map(|k| self.coeff1(k).checked_div(&factorial(k).into())).collect::<Result<_>>()?;
        let coeffs = (0..=self.order - n).map(|k| &ordinary[k + n] * Rational::from(factorial(k))).collect();
        TruncatedEGF::from_coeffs(coeffs)
    }

    /// `f(x y)` as a two-variable series: the coefficient of `x^n y^n/(n! n!)`
    /// is `c_n · n!`. The result has total order `2 * self.order` capped at `order`.
    pub fn substitute_product(&self, order: usize) -> Result<TruncatedEGF> {
        if self.vars != 1 {
            return Err(Error::domain("substitute_product needs a one-variable series"));
        }
        let order = order.min(2 * self.order);
        TruncatedEGF::from_fn(2, order, |a| {
            if a.get(0) == a.get(1) {
                self.coeff1(a.get(0)) * Rational::from(factorial(a.get(0)))
            } else {
                Rational::zero()
            }
        })
    }

    /// Embeds a one-variable series as a function of variable `var` in two variables.
    pub fn embed(&self, var: usize) -> Result<TruncatedEGF> {
        if self.vars != 1 || var > 1 {
            return Err(Error::domain("embed maps a one-variable series into variable 0 or 1 of two"));
        }
        TruncatedEGF::from_fn(2, self.order, |a| {
            if a.get(1 - var) == 0 {
                self.coeff1(a.get(var))
            } else {
                Rational::zero()
            }
        })
    }

    /// For a two-variable series, the `n`-th polynomial `Σ_a c_(a,n) x^a / a!`.
    pub fn extract_polynomials(&self) -> Result<Vec<Polynomial>> {
        if self.vars != 2 {
            return Err(Error::domain("extract_polynomials needs a two-variable series"));
        }
        let polys = (0..=self.order)
            .map(|n| {
                let coeffs = (0..=self.order - n)
                    .map(|a| self.coeff(&SizeVector::pair(a, n)) * Rational::unit_fraction(&factorial(a)))
                    .collect();
                Polynomial::new(coeffs)
            })
            .collect();
        Ok(polys)
    }

    pub fn one(vars: usize, order: usize) -> TruncatedEGF {
        TruncatedEGF::from_fn(vars, order, |a| if a.is_zero() { Rational::one() } else { Rational::zero() })
            .expect("vars checked by caller")
    }

    pub fn one_series(order: usize) -> TruncatedEGF {
        TruncatedEGF::one(1, order)
    }

    /// The coordinate function `x_i`.
    pub fn variable(vars: usize, i: usize, order: usize) -> Result<TruncatedEGF> {
        if i >= vars {
            return Err(Error::domain("variable index out of range"));
        }
        let e = SizeVector::unit(vars, i);
        TruncatedEGF::from_fn(vars, order, |a| if *a == e { Rational::one() } else { Rational::zero() })
    }

    pub fn x_series(order: usize) -> TruncatedEGF {
        TruncatedEGF::variable(1, 0, order).expect("valid")
    }

    pub fn exp_series(order: usize) -> TruncatedEGF {
        TruncatedEGF::from_fn(1, order, |_| Rational::one()).expect("valid")
    }

    /// `e^{x_1 + ... + x_s}`.
    pub fn exp_all(vars: usize, order: usize) -> Result<TruncatedEGF> {
        TruncatedEGF::from_fn(vars, order, |_| Rational::one())
    }

    /// `e^{x/N}`.
    pub fn exp_scaled(n: usize, order: usize) -> Result<TruncatedEGF> {
        if n == 0 {
            return Err(Error::domain("exp_scaled needs N >= 1"));
        }
        let inv = Rational::new(1, n as i64)?;
        TruncatedEGF::from_fn(1, order, |a| inv.pow(a.get(0) as u32))
    }

    fn periodic(order: usize, pattern: [i64; 4]) -> TruncatedEGF {
        TruncatedEGF::from_fn(1, order, |a| Rational::from(pattern[a.get(0) % 4])).expect("valid")
    }

    pub fn sinh_series(order: usize) -> TruncatedEGF {
        TruncatedEGF::periodic(order, [0, 1, 0, 1])
    }

    pub fn cosh_series(order: usize) -> TruncatedEGF {
        TruncatedEGF::periodic(order, [1, 0, 1, 0])
    }

    pub fn sin_series(order: usize) -> TruncatedEGF {
        TruncatedEGF::periodic(order, [0, 1, 0, -1])
    }

    pub fn cos_series(order: usize) -> TruncatedEGF {
        TruncatedEGF::periodic(order, [1, 0, -1, 0])
    }

    /// `(1 + x)^e`: EGF coefficient at `n` is the falling factorial `(e)_n`.
    pub fn binomial_series(exponent: &Rational, order: usize) -> TruncatedEGF {
        TruncatedEGF::from_fn(1, order, |a| exponent.falling(a.get(0))).expect("valid")
    }
}

impl fmt::Debug for TruncatedEGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EGF[vars={}, order={}]{{", self.vars, self.order)?;
        for (i, (a, c)) in self.entries().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}: {c}")?;
        }
        f.write_str("}")
    }
}

/// Binomial coefficients as rationals, for the convolution inner loops.
struct BinomialTable {
    rows: Vec<Vec<Rational>>,
}

impl BinomialTable {
    fn new(order: usize) -> Self {
        let rows = (0..=order).map(|n| (0..=n).map(|k| Rational::from(binomial(n, k))).collect()).collect();
        BinomialTable { rows }
    }

    fn multi(&self, n: &SizeVector, k: &SizeVector) -> Rational {
        n.entries().iter().zip(k.entries()).map(|(&n, &k)| self.rows[n][k].clone()).product()
    }
}

/// JSON form: `{"vars": v, "order": M, "coeffs": [["a1[,a2]", "p/q"], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EgfJson {
    pub vars: usize,
    pub order: usize,
    pub coeffs: Vec<(String, Rational)>,
}

impl From<&TruncatedEGF> for EgfJson {
    fn from(f: &TruncatedEGF) -> Self {
        EgfJson {
            vars: f.vars,
            order: f.order,
            coeffs: f.entries().into_iter().map(|(a, c)| (a.to_string(), c)).collect(),
        }
    }
}

impl TryFrom<&EgfJson> for TruncatedEGF {
    type Error = Error;

    fn try_from(j: &EgfJson) -> Result<Self> {
        let mut f = TruncatedEGF::zero(j.vars, j.order)?;
        for (key, c) in &j.coeffs {
            let entries = key
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::validation(format!("bad size vector {key:?}")))?;
            let a = SizeVector::new(&entries)?;
            if a.sorts() != j.vars || a.total() > j.order {
                return Err(Error::validation(format!("size vector {key:?} outside vars/order")));
            }
            f.coeffs[index_of(j.vars, &a)] = c.clone();
        }
        Ok(f)
    }
}

/// Dense univariate polynomial over the rationals, constant term first,
/// trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        Polynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, r: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from(k as i64)).collect())
    }

    /// `p(x + 1)`.
    pub fn shift_by_one(&self) -> Polynomial {
        let x_plus_one = Polynomial::new(vec![Rational::one(), Rational::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Polynomial::zero(), |acc, c| acc.mul(&x_plus_one).add(&Polynomial::constant(c.clone())))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let mag_str = if mag.denom() == &1.into() { mag.numer().to_string() } else { mag.to_string() };
            match k {
                0 => f.write_str(&mag_str)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag_str}*")?;
                    }
                    f.write_str("x")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn linear_ops() {
        let e = TruncatedEGF::exp_series(6);
        let z = TruncatedEGF::zero(1, 6).unwrap();
        assert_eq!(e.add(&z).unwrap(), e);
        assert!(e.sub(&TruncatedEGF::one_series(6)).unwrap().coeff1(0).is_zero());
        assert_eq!(e.scalar_mul(&Rational::from(2)).coeffs1(), ints(&[2; 7]));
        let two_var = TruncatedEGF::one(2, 3);
        assert!(matches!(e.add(&two_var), Err(Error::Domain(_))));
        assert_eq!(e.add(&TruncatedEGF::exp_series(3)).unwrap().order(), 3);
    }

    #[test]
    fn multiplication() {
        let e = TruncatedEGF::exp_series(8);
        assert_eq!(e.mul(&e).unwrap().coeffs1(), (0..=8).map(|n| Rational::from(1i64 << n)).collect::<Vec<_>>());
        assert_eq!(e.mul(&TruncatedEGF::one_series(8)).unwrap(), e);
        let x = TruncatedEGF::x_series(4);
        assert_eq!(x.mul(&x).unwrap().coeffs1(), ints(&[0, 0, 2, 0, 0]));
    }

    #[test]
    fn composition_and_inverses() {
        let e = TruncatedEGF::exp_series(8);
        assert_eq!(e.compose(&[TruncatedEGF::x_series(8)]).unwrap(), e);
        let alt: Vec<_> = (0..=8).map(|n| Rational::from(if n % 2 == 0 { 1 } else { -1 })).collect();
        assert_eq!(e.reciprocal().unwrap().coeffs1(), alt);
        let em1 = e.sub(&TruncatedEGF::one_series(8)).unwrap();
        assert!(em1.reciprocal().is_err());
        assert!(e.compose(std::slice::from_ref(&e)).is_err());
        // x / (e^x - 1) via monomial division
        let b = em1.monomial_div(1).unwrap().reciprocal().unwrap();
        assert_eq!(b.coeffs1()[..5], [r(1, 1), r(-1, 2), r(1, 6), r(0, 1), r(-1, 30)]);
    }

    #[test]
    fn derivative_integral_projection() {
        let e = TruncatedEGF::exp_series(8);
        let f = e.integrate_n(0, 1).unwrap();
        assert_eq!(f.derivative(0).unwrap(), e);
        // ∫ (e^x - 1)/x = Σ_{n≥1} x^n/(n n!)
        let q = e.sub(&TruncatedEGF::one_series(8)).unwrap().monomial_div(1).unwrap();
        let z = q.integrate_n(0, 1).unwrap();
        assert_eq!(z.coeff1(0), Rational::zero());
        for n in 1..=8 {
            assert_eq!(z.coeff1(n), r(1, n as i64));
        }
        assert_eq!(e.pi_n(1).unwrap().coeffs1(), ints(&[1, 0, 0, 0, 0, 0, 0, 0, 0]));
        assert_eq!(e.pi_n(2).unwrap().coeffs1()[..3], ints(&[1, 1, 0])[..]);
        assert!(e.pi_n(0).is_err());
    }

    #[test]
    fn monomial_division() {
        let e = TruncatedEGF::exp_series(10);
        let low = e.sub(&e.pi_n(2).unwrap()).unwrap();
        let d = low.monomial_div(2).unwrap();
        assert_eq!(d.coeff1(0), r(1, 2));
        assert_eq!(d.order(), 8);
        assert!(matches!(e.monomial_div(1), Err(Error::Domain(_))));
    }

    #[test]
    fn binomial_series_coefficients() {
        let b = TruncatedEGF::binomial_series(&r(-1, 2), 3);
        assert_eq!(b.coeffs1(), vec![r(1, 1), r(-1, 2), r(3, 4), r(-15, 8)]);
    }

    #[test]
    fn polynomials_from_two_variable_series() {
        let order = 10;
        let y = TruncatedEGF::exp_series(order);
        // 2 e^{xy} / (1 + e^y)
        let denom = y.add(&TruncatedEGF::one_series(order)).unwrap().scalar_mul(&r(1, 2)).reciprocal().unwrap();
        let gen =
            TruncatedEGF::exp_series(order).substitute_product(order).unwrap().mul(&denom.embed(1).unwrap()).unwrap();
        let polys = gen.extract_polynomials().unwrap();
        assert_eq!(polys[1], Polynomial::new(vec![r(-1, 2), r(1, 1)]));
        // y e^{xy} / (e^y - 1)
        let em1 = y.sub(&TruncatedEGF::one_series(order)).unwrap();
        let bden = em1.monomial_div(1).unwrap().reciprocal().unwrap();
        let gen =
            TruncatedEGF::exp_series(order).substitute_product(order).unwrap().mul(&bden.embed(1).unwrap()).unwrap();
        let polys = gen.extract_polynomials().unwrap();
        assert_eq!(polys[2], Polynomial::new(vec![r(1, 6), r(-1, 1), r(1, 1)]));
        // constant in x
        let c = TruncatedEGF::exp_series(4).embed(1).unwrap().extract_polynomials().unwrap();
        assert!(c.iter().all(|p| p == &Polynomial::constant(Rational::one())));
        assert!(TruncatedEGF::exp_series(3).extract_polynomials().is_err());
    }

    #[test]
    fn hadamard_and_constructors() {
        let e = TruncatedEGF::exp_series(6);
        assert_eq!(e.hadamard(&e).unwrap(), e);
        let s = TruncatedEGF::sin_series(6).hadamard(&TruncatedEGF::cos_series(6)).unwrap();
        assert!(s.coeffs1().iter().all(Rational::is_zero));
        assert_eq!(TruncatedEGF::exp_scaled(3, 3).unwrap().coeff1(2), r(1, 9));
        assert_eq!(
            TruncatedEGF::sinh_series(4).add(&TruncatedEGF::cosh_series(4)).unwrap(),
            TruncatedEGF::exp_series(4)
        );
    }

    #[test]
    fn json_shape() {
        let f = TruncatedEGF::exp_series(1);
        let j = serde_json::to_string(&EgfJson::from(&f)).unwrap();
        assert_eq!(j, r#"{"vars":1,"order":1,"coeffs":[["0","1/1"],["1","1/1"]]}"#);
        let g = TruncatedEGF::one(2, 1);
        let j = EgfJson::from(&g);
        assert_eq!(j.coeffs[1].0, "1,0");
        assert_eq!(TruncatedEGF::try_from(&j).unwrap(), g);
    }

    #[test]
    fn polynomial_helpers() {
        let p = Polynomial::new(vec![r(1, 6), r(-1, 1), r(1, 1)]);
        assert_eq!(p.to_string(), "x^2 - x + 1/6");
        assert_eq!(p.derivative(), Polynomial::new(vec![r(-1, 1), r(2, 1)]));
        assert_eq!(p.shift_by_one().sub(&p), Polynomial::new(vec![r(0, 1), r(2, 1)]));
        assert_eq!(p.eval(&r(0, 1)), r(1, 6));
        assert_eq!(Polynomial::zero().degree(), None);
    }
}
