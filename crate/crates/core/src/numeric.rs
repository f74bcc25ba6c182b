//! Exact rational arithmetic and the small counting utilities shared by the
//! rest of the crate.
//!
//! [`Rational`] wraps `num_rational::BigRational`, which is always kept in
//! lowest terms with a positive denominator, so structural equality is value
//! equality. Serialized form is `"p/q"` (`"0/1"` for zero).

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default cap on `n` for set-partition enumeration.
pub const DEFAULT_PARTITION_CAP: usize = 10;
/// Default cap on `n` for integer-composition enumeration.
pub const DEFAULT_COMPOSITION_CAP: usize = 25;

/// Exact arbitrary-precision fraction in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::domain("zero denominator"));
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// `1 / d` for a positive integer `d`.
    pub fn unit_fraction(d: &BigUint) -> Self {
        Rational(BigRational::new(BigInt::one(), BigInt::from(d.clone())))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational> {
        Rational::one().checked_div(self)
    }

    pub fn pow(&self, exp: u32) -> Rational {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Rising factorial `r (r+1) ... (r+n-1)`.
    pub fn rising(&self, n: usize) -> Rational {
        (0..n).fold(Rational::one(), |acc, i| acc * (self + &Rational::from_integer(i)))
    }

    /// Falling factorial `r (r-1) ... (r-n+1)`.
    pub fn falling(&self, n: usize) -> Rational {
        (0..n).fold(Rational::one(), |acc, i| acc * (self - &Rational::from_integer(i)))
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.0.to_f64()
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigUint> for Rational {
    fn from(n: BigUint) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

impl From<&BigUint> for Rational {
    fn from(n: &BigUint) -> Self {
        Rational::from_integer(BigInt::from(n.clone()))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"p/q"` or a bare integer `"p"`; the result is normalized.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::validation(format!("not a rational: {s:?}"));
        match s.trim().split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                Rational::new(p, q)
            }
            None => Ok(Rational::from_integer(s.trim().parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign_tr:ident, $assign_method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl $assign_tr<&Rational> for Rational {
            fn $assign_method(&mut self, rhs: &Rational) {
                self.0.$assign_method(&rhs.0);
            }
        }
        impl $assign_tr<Rational> for Rational {
            fn $assign_method(&mut self, rhs: Rational) {
                self.0.$assign_method(rhs.0);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |a, b| a * b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Dispatches one of the four field operations; only division can fail.
pub fn rat_arith(a: &Rational, b: &Rational, op: ArithOp) -> Result<Rational> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    // Exact at every step: the running value is binom(n-k+i, i).
    (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - k + i) / BigUint::from(i))
}

/// `n! / prod(parts_i!)`; the parts must sum to `n`.
pub fn multinomial(n: usize, parts: &[usize]) -> Result<BigUint> {
    let total: usize = parts.iter().sum();
    if total != n {
        return Err(Error::domain(format!("multinomial parts sum to {total}, expected {n}")));
    }
    let mut acc = BigUint::one();
    let mut used = 0;
    for &p in parts {
        used += p;
        acc *= binomial(used, p);
    }
    Ok(acc)
}

/// Bell number via the Bell triangle.
pub fn bell(n: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().cloned().unwrap());
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}

pub fn big_gcd(a: &BigUint, b: &BigUint) -> BigUint {
    a.gcd(b)
}

/// A size vector `(a_1, ..., a_s)` with one entry per sort, `s` in {1, 2}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SizeVector {
    entries: [usize; 2],
    sorts: u8,
}

impl SizeVector {
    pub fn new(entries: &[usize]) -> Result<Self> {
        match entries {
            [a] => Ok(SizeVector::single(*a)),
            [a, b] => Ok(SizeVector::pair(*a, *b)),
            _ => Err(Error::domain(format!("size vectors have 1 or 2 entries, got {}", entries.len()))),
        }
    }

    pub fn single(n: usize) -> Self {
        SizeVector { entries: [n, 0], sorts: 1 }
    }

    pub fn pair(a: usize, b: usize) -> Self {
        SizeVector { entries: [a, b], sorts: 2 }
    }

    /// The all-zero vector with the given number of sorts.
    ///
    /// Panics if `sorts` is not 1 or 2.
    pub fn zero(sorts: usize) -> Self {
        match sorts {
            1 => SizeVector::single(0),
            2 => SizeVector::pair(0, 0),
            _ => panic!("unsupported sort count {sorts}"),
        }
    }

    /// Unit vector `e_i` (0-based `i`).
    pub fn unit(sorts: usize, i: usize) -> Self {
        let mut v = SizeVector::zero(sorts);
        v.entries[i] = 1;
        v
    }

    pub fn sorts(&self) -> usize {
        self.sorts as usize
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries[..self.sorts as usize]
    }

    pub fn get(&self, i: usize) -> usize {
        self.entries()[i]
    }

    pub fn total(&self) -> usize {
        self.entries().iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total() == 0
    }

    pub fn add(&self, other: &SizeVector) -> SizeVector {
        debug_assert_eq!(self.sorts, other.sorts);
        let mut v = *self;
        v.entries[0] += other.entries[0];
        v.entries[1] += other.entries[1];
        v
    }

    pub fn checked_sub(&self, other: &SizeVector) -> Option<SizeVector> {
        let mut v = *self;
        v.entries[0] = self.entries[0].checked_sub(other.entries[0])?;
        v.entries[1] = self.entries[1].checked_sub(other.entries[1])?;
        Some(v)
    }

    pub fn with_entry(&self, i: usize, value: usize) -> SizeVector {
        let mut v = *self;
        v.entries[i] = value;
        v
    }

    /// `a! = a_1! ... a_s!`.
    pub fn factorial(&self) -> BigUint {
        self.entries().iter().map(|&a| factorial(a)).product()
    }

    /// `prod_i binom(self_i, k_i)`.
    pub fn binomial(&self, k: &SizeVector) -> BigUint {
        self.entries().iter().zip(k.entries()).map(|(&n, &k)| binomial(n, k)).product()
    }

    /// Every `k` with `0 <= k <= self` componentwise, in lexicographic order.
    pub fn below(&self) -> impl Iterator<Item = SizeVector> {
        let me = *self;
        let second = if me.sorts == 2 { me.entries[1] } else { 0 };
        (0..=me.entries[0])
            .flat_map(move |a| (0..=second).map(move |b| SizeVector { entries: [a, b], sorts: me.sorts }))
    }

    /// Every size vector of the given sort count with total at most `order`,
    /// ordered by total degree, then lexicographically.
    pub fn up_to_total(sorts: usize, order: usize) -> Vec<SizeVector> {
        let mut out = Vec::new();
        for d in 0..=order {
            if sorts == 1 {
                out.push(SizeVector::single(d));
            } else {
                for a in (0..=d).rev() {
                    out.push(SizeVector::pair(a, d - a));
                }
            }
        }
        out
    }
}

impl fmt::Display for SizeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.entries() {
            [a] => write!(f, "{a}"),
            [a, b] => write!(f, "{a},{b}"),
            _ => unreachable!(),
        }
    }
}

impl fmt::Debug for SizeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Lazy stream of the integer compositions of `n` (ordered lists of positive
/// parts summing to `n`).
///
/// Order: `[n]` first, then by cut positions read right to left, so for
/// `n = 3` the stream is `[3], [2,1], [1,2], [1,1,1]`.
#[derive(Debug, Clone)]
pub struct Compositions {
    n: usize,
    next_mask: u64,
    end: u64,
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.next_mask >= self.end {
            return None;
        }
        let mask = self.next_mask;
        self.next_mask += 1;
        // Bit (n-1-p) set means "cut after position p", p in 1..n.
        let mut parts = Vec::new();
        let mut run = 0;
        for p in 1..=self.n {
            run += 1;
            let cut = p == self.n || (mask >> (self.n - 1 - p)) & 1 == 1;
            if cut {
                parts.push(run);
                run = 0;
            }
        }
        Some(parts)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next_mask) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Compositions {}

pub fn enumerate_compositions(n: usize) -> Result<Compositions> {
    enumerate_compositions_capped(n, DEFAULT_COMPOSITION_CAP)
}

pub fn enumerate_compositions_capped(n: usize, cap: usize) -> Result<Compositions> {
    if n == 0 {
        return Err(Error::domain("compositions are enumerated for n >= 1"));
    }
    if n > cap || n > 63 {
        return Err(Error::limit("enumerate_compositions", n, cap));
    }
    Ok(Compositions { n, next_mask: 0, end: 1u64 << (n - 1) })
}

/// Lazy stream of the set partitions of `{0, ..., n-1}`, in lexicographic
/// order of restricted growth strings. Each item lists its blocks ordered by
/// least element, each block sorted.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    rgs: Vec<usize>,
    maxes: Vec<usize>,
    done: bool,
}

impl SetPartitions {
    fn blocks(&self) -> Vec<Vec<usize>> {
        let count = self.rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); count];
        for (elem, &b) in self.rgs.iter().enumerate() {
            blocks[b].push(elem);
        }
        blocks
    }

    fn advance(&mut self) {
        let n = self.rgs.len();
        // Find the rightmost position that can still grow.
        for i in (1..n).rev() {
            if self.rgs[i] <= self.maxes[i - 1] {
                self.rgs[i] += 1;
                self.maxes[i] = self.maxes[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.maxes[j] = self.maxes[i];
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<Vec<usize>>;

    fn next(&mut self) -> Option<Vec<Vec<usize>>> {
        if self.done {
            return None;
        }
        let out = self.blocks();
        self.advance();
        Some(out)
    }
}

pub fn enumerate_set_partitions(n: usize) -> Result<SetPartitions> {
    enumerate_set_partitions_capped(n, DEFAULT_PARTITION_CAP)
}

pub fn enumerate_set_partitions_capped(n: usize, cap: usize) -> Result<SetPartitions> {
    if n > cap {
        return Err(Error::limit("enumerate_set_partitions", n, cap));
    }
    Ok(SetPartitions { rgs: vec![0; n], maxes: vec![0; n], done: false })
}
