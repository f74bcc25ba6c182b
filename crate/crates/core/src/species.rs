//! Rational species in one or two sorts.
//!
//! A [`Species`] is a node in an expression DAG whose value at a size vector
//! is a [`GradedGroupoid`]. Values are computed on demand at the groupoid
//! level and memoized per node, so valuation identities such as
//! `|F G| = |F| |G|` are consequences of the constructions, not of series
//! arithmetic.
//!
//! Products and geometric inverses are evaluated either by multiplicity
//! counting over size vectors (fast) or by explicit enumeration over a
//! concrete labeled set (oracle mode). Both produce structurally equal
//! groupoids. Composition always enumerates set partitions.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_traits::One;

use crate::egf::TruncatedEGF;
use crate::error::{Error, Result};
use crate::groupoid::{self, Component, FiniteGroupoid, GradedGroupoid};
use crate::numeric::{self, factorial, multinomial, Rational, SizeVector};

/// Largest total size at which a counting product is evaluated.
pub const PRODUCT_CAP: usize = 30;
/// Largest total size at which a counting geometric inverse is evaluated.
pub const GEOM_INVERSE_CAP: usize = 25;
/// Largest total size at which the integer-composition geometric inverse is evaluated.
pub const COMPOSITIONS_CAP: usize = 16;
/// Largest total size at which composition (set-partition enumeration) is evaluated.
pub const COMPOSE_CAP: usize = 8;
/// Largest total size for labeled product enumeration (subsets).
pub const LABELED_PRODUCT_CAP: usize = 16;
/// Largest total size for labeled geometric-inverse enumeration (ordered set partitions).
pub const LABELED_INVERSE_CAP: usize = 7;

/// How labeled sums are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// Sum over size vectors weighted by binomial multiplicities.
    #[default]
    Counting,
    /// Geometric inverse only: sum over integer (vector) compositions weighted
    /// by multinomials. Products fall back to counting.
    Compositions,
    /// Explicit enumeration over a concrete labeled set.
    Labeled,
}

type AtomFn = dyn Fn(&SizeVector) -> Result<GradedGroupoid> + Send + Sync;

enum Kind {
    Atom(Box<AtomFn>),
    Sum(Species, Species),
    Product(Species, Species, Strategy),
    Hadamard(Species, Species),
    Derivative { inner: Species, sort: usize, times: usize },
    Compose(Species, Vec<Species>),
    SubstituteXY(Species),
    GeomInverse(Species, Strategy),
    PositivePart(Species),
    Constant(GradedGroupoid),
    Promote(Species, usize),
    Replicate(Species, BigUint),
    Negate(Species),
    BinomialPower(FiniteGroupoid),
}

struct Node {
    sorts: usize,
    name: String,
    kind: Kind,
    memo: RwLock<HashMap<SizeVector, Arc<GradedGroupoid>>>,
}

/// A rational species: a uniform rule from size vectors to graded groupoids.
///
/// Cloning is cheap and shares the memo table.
#[derive(Clone)]
pub struct Species(Arc<Node>);

impl fmt::Debug for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Species({}; sorts={})", self.0.name, self.0.sorts)
    }
}

fn check_sorts(sorts: usize) -> Result<()> {
    if sorts == 1 || sorts == 2 {
        Ok(())
    } else {
        Err(Error::domain(format!("species have 1 or 2 sorts, got {sorts}")))
    }
}

fn same_sorts(op: &str, f: &Species, g: &Species) -> Result<()> {
    if f.sorts() != g.sorts() {
        return Err(Error::domain(format!("{op}: sort mismatch ({} vs {})", f.sorts(), g.sorts())));
    }
    Ok(())
}

fn require_positive(op: &str, f: &Species) -> Result<()> {
    if !f.is_positive()? {
        return Err(Error::domain(format!("{op}: operand {} is nonempty at the empty set", f.name())));
    }
    Ok(())
}

impl Species {
    fn make(sorts: usize, name: String, kind: Kind) -> Species {
        Species(Arc::new(Node { sorts, name, kind, memo: RwLock::new(HashMap::new()) }))
    }

    /// A species given by an explicit rule. The rule must depend only on the size vector.
    pub fn atom(
        sorts: usize,
        name: impl Into<String>,
        rule: impl Fn(&SizeVector) -> Result<GradedGroupoid> + Send + Sync + 'static,
    ) -> Result<Species> {
        check_sorts(sorts)?;
        Ok(Species::make(sorts, name.into(), Kind::Atom(Box::new(rule))))
    }

    pub fn sorts(&self) -> usize {
        self.0.sorts
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    /// Value at a size vector, memoized.
    pub fn value(&self, n: &SizeVector) -> Result<Arc<GradedGroupoid>> {
        if n.sorts() != self.sorts() {
            return Err(Error::domain(format!(
                "species {} has {} sorts, evaluated at {n:?}",
                self.name(),
                self.sorts()
            )));
        }
        if let Some(v) = self.0.memo.read().expect("memo poisoned").get(n) {
            return Ok(v.clone());
        }
        let v = Arc::new(self.compute(n)?);
        // Values are deterministic, so concurrent inserts of the same key are benign.
        self.0.memo.write().expect("memo poisoned").insert(*n, v.clone());
        Ok(v)
    }

    /// Single-sort convenience for [`Species::value`].
    pub fn at(&self, n: usize) -> Result<Arc<GradedGroupoid>> {
        self.value(&SizeVector::single(n))
    }

    /// Whether the value at the empty set is `(∅, ∅)`.
    pub fn is_positive(&self) -> Result<bool> {
        Ok(self.value(&SizeVector::zero(self.sorts()))?.is_empty())
    }

    /// Generating series `Σ_a |F([a])| x^a / a!` truncated at total order `order`.
    pub fn egf(&self, order: usize) -> Result<TruncatedEGF> {
        TruncatedEGF::try_from_fn(self.sorts(), order, |a| Ok(self.value(a)?.cardinality()))
    }

    fn compute(&self, n: &SizeVector) -> Result<GradedGroupoid> {
        match &self.0.kind {
            Kind::Atom(rule) => rule(n),
            Kind::Sum(f, g) => Ok(f.value(n)?.disjoint_union(&*g.value(n)?)),
            Kind::Product(f, g, Strategy::Labeled) => labeled_product(f, g, n),
            Kind::Product(f, g, _) => counting_product(f, g, n),
            Kind::Hadamard(f, g) => Ok(f.value(n)?.graded_product(&*g.value(n)?)),
            Kind::Derivative { inner, sort, times } => {
                inner.value(&n.with_entry(*sort, n.get(*sort) + times)).map(|v| (*v).clone())
            }
            Kind::Compose(f, gs) => compose_value(f, gs, n),
            Kind::SubstituteXY(f) => {
                let (a, b) = (n.get(0), n.get(1));
                if a != b {
                    return Ok(GradedGroupoid::empty());
                }
                let bij = GradedGroupoid::positive(groupoid::discrete_big(&factorial(a)));
                Ok(f.at(a)?.graded_product(&bij))
            }
            Kind::GeomInverse(f, Strategy::Counting) => self.recursive_inverse(f, n),
            Kind::GeomInverse(f, Strategy::Compositions) => composition_inverse(f, n),
            Kind::GeomInverse(f, Strategy::Labeled) => labeled_inverse(f, n),
            Kind::PositivePart(f) => {
                if n.is_zero() {
                    Ok(GradedGroupoid::empty())
                } else {
                    Ok((*f.value(n)?).clone())
                }
            }
            Kind::Constant(h) => Ok(if n.is_zero() { h.clone() } else { GradedGroupoid::empty() }),
            Kind::Promote(f, j) => {
                if n.get(1 - j) != 0 {
                    Ok(GradedGroupoid::empty())
                } else {
                    Ok((*f.at(n.get(*j))?).clone())
                }
            }
            Kind::Replicate(f, m) => Ok(f.value(n)?.replicate(m)),
            Kind::Negate(f) => Ok(f.value(n)?.negate()),
            Kind::BinomialPower(g) => {
                let k = n.get(0);
                Ok(GradedGroupoid::signed(groupoid::increasing_factorial_groupoid(g, k), k % 2 == 1))
            }
        }
    }

    /// First-block recursion `R(n) = ⊔_{0<j<=n} binom(n,j) · (-1)·F(j)×R(n-j)`.
    fn recursive_inverse(&self, f: &Species, n: &SizeVector) -> Result<GradedGroupoid> {
        if n.total() > GEOM_INVERSE_CAP {
            return Err(Error::limit("geominv", n.total(), GEOM_INVERSE_CAP));
        }
        if n.is_zero() {
            return Ok(GradedGroupoid::unit());
        }
        let mut out = GradedGroupoid::empty();
        for j in n.below().filter(|j| !j.is_zero()) {
            let fj = f.value(&j)?;
            if fj.is_empty() {
                continue;
            }
            let rest = self.value(&n.checked_sub(&j).expect("j <= n"))?;
            if rest.is_empty() {
                continue;
            }
            out.absorb_scaled(&fj.graded_product(&rest).negate(), &n.binomial(&j));
        }
        Ok(out)
    }
}

fn counting_product(f: &Species, g: &Species, n: &SizeVector) -> Result<GradedGroupoid> {
    if n.total() > PRODUCT_CAP {
        return Err(Error::limit("prod", n.total(), PRODUCT_CAP));
    }
    let mut out = GradedGroupoid::empty();
    for k in n.below() {
        let fk = f.value(&k)?;
        if fk.is_empty() {
            continue;
        }
        let gk = g.value(&n.checked_sub(&k).expect("k <= n"))?;
        if gk.is_empty() {
            continue;
        }
        out.absorb_scaled(&fk.graded_product(&gk), &n.binomial(&k));
    }
    Ok(out)
}

/// Sort of each element of the concrete labeled set `[n_0] ⊔ [n_1]`.
fn labels(n: &SizeVector) -> Vec<usize> {
    let mut out = vec![0; n.get(0)];
    if n.sorts() == 2 {
        out.extend(std::iter::repeat_n(1, n.get(1)));
    }
    out
}

fn size_of_mask(sorts_of: &[usize], sorts: usize, mask: u64) -> SizeVector {
    let mut v = SizeVector::zero(sorts);
    for (e, &s) in sorts_of.iter().enumerate() {
        if mask >> e & 1 == 1 {
            v = v.with_entry(s, v.get(s) + 1);
        }
    }
    v
}

fn size_of_block(sorts_of: &[usize], sorts: usize, block: &[usize]) -> SizeVector {
    let mut v = SizeVector::zero(sorts);
    for &e in block {
        let s = sorts_of[e];
        v = v.with_entry(s, v.get(s) + 1);
    }
    v
}

fn labeled_product(f: &Species, g: &Species, n: &SizeVector) -> Result<GradedGroupoid> {
    if n.total() > LABELED_PRODUCT_CAP {
        return Err(Error::limit("prod (labeled)", n.total(), LABELED_PRODUCT_CAP));
    }
    let sorts_of = labels(n);
    let full = (1u64 << sorts_of.len()) - 1;
    let mut out = GradedGroupoid::empty();
    for mask in 0..=full {
        let k = size_of_mask(&sorts_of, n.sorts(), mask);
        let rest = size_of_mask(&sorts_of, n.sorts(), full & !mask);
        out.absorb(&f.value(&k)?.graded_product(&*g.value(&rest)?));
    }
    Ok(out)
}

/// Ordered sequences of nonzero size vectors summing to `n`.
fn vector_compositions(n: &SizeVector) -> Vec<Vec<SizeVector>> {
    if n.is_zero() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in n.below().filter(|j| !j.is_zero()) {
        for mut tail in vector_compositions(&n.checked_sub(&first).expect("first <= n")) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

fn composition_inverse(f: &Species, n: &SizeVector) -> Result<GradedGroupoid> {
    if n.total() > COMPOSITIONS_CAP {
        return Err(Error::limit("geominv (compositions)", n.total(), COMPOSITIONS_CAP));
    }
    let mut out = GradedGroupoid::empty();
    if n.is_zero() {
        return Ok(GradedGroupoid::unit());
    }
    for parts in vector_compositions(n) {
        let mut mult = BigUint::one();
        for s in 0..n.sorts() {
            let coords: Vec<usize> = parts.iter().map(|p| p.get(s)).collect();
            mult *= multinomial(n.get(s), &coords)?;
        }
        let mut term = GradedGroupoid::unit();
        for p in &parts {
            term = term.graded_product(&*f.value(p)?);
            if term.is_empty() {
                break;
            }
        }
        if parts.len() % 2 == 1 {
            term = term.negate();
        }
        out.absorb_scaled(&term, &mult);
    }
    Ok(out)
}

/// All ordered set partitions (sequences of nonempty disjoint blocks covering `mask`).
fn ordered_set_partitions(mask: u64) -> Vec<Vec<u64>> {
    if mask == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    // Iterate over nonempty submasks of `mask`.
    let mut sub = mask;
    while sub != 0 {
        for mut tail in ordered_set_partitions(mask & !sub) {
            tail.insert(0, sub);
            out.push(tail);
        }
        sub = (sub - 1) & mask;
    }
    out
}

fn labeled_inverse(f: &Species, n: &SizeVector) -> Result<GradedGroupoid> {
    if n.total() > LABELED_INVERSE_CAP {
        return Err(Error::limit("geominv (labeled)", n.total(), LABELED_INVERSE_CAP));
    }
    let sorts_of = labels(n);
    let full = (1u64 << sorts_of.len()) - 1;
    let mut out = GradedGroupoid::empty();
    for blocks in ordered_set_partitions(full) {
        let mut term = GradedGroupoid::unit();
        for &b in &blocks {
            term = term.graded_product(&*f.value(&size_of_mask(&sorts_of, n.sorts(), b))?);
        }
        if blocks.len() % 2 == 1 {
            term = term.negate();
        }
        out.absorb(&term);
    }
    Ok(out)
}

fn compose_value(f: &Species, gs: &[Species], n: &SizeVector) -> Result<GradedGroupoid> {
    if n.total() > COMPOSE_CAP {
        return Err(Error::limit("compose", n.total(), COMPOSE_CAP));
    }
    let sorts_of = labels(n);
    let colors = gs.len();
    let mut out = GradedGroupoid::empty();
    for partition in numeric::enumerate_set_partitions_capped(sorts_of.len(), COMPOSE_CAP)? {
        // For each block, the colours whose species is nonempty on it.
        let mut options: Vec<Vec<(usize, Arc<GradedGroupoid>)>> = Vec::with_capacity(partition.len());
        for block in &partition {
            let size = size_of_block(&sorts_of, n.sorts(), block);
            let mut opts = Vec::new();
            for (c, g) in gs.iter().enumerate() {
                let v = g.value(&size)?;
                if !v.is_empty() {
                    opts.push((c, v));
                }
            }
            if opts.is_empty() {
                break;
            }
            options.push(opts);
        }
        if options.len() != partition.len() {
            continue;
        }
        // Odometer over colourings.
        let mut choice = vec![0usize; options.len()];
        loop {
            let mut counts = vec![0usize; colors];
            let mut term = GradedGroupoid::unit();
            for (opts, &i) in options.iter().zip(&choice) {
                counts[opts[i].0] += 1;
                term = term.graded_product(&opts[i].1);
            }
            let outer = f.value(&SizeVector::new(&counts)?)?;
            out.absorb(&outer.graded_product(&term));
            let mut pos = 0;
            while pos < choice.len() {
                choice[pos] += 1;
                if choice[pos] < options[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == choice.len() {
                break;
            }
        }
    }
    Ok(out)
}

/// The species that is `(∅, ∅)` everywhere.
pub fn zero(sorts: usize) -> Result<Species> {
    check_sorts(sorts)?;
    Ok(Species::make(sorts, "0".into(), Kind::Constant(GradedGroupoid::empty())))
}

/// The unit species: the unit groupoid at the empty set, empty elsewhere.
pub fn one(sorts: usize) -> Result<Species> {
    constant_species(sorts, GradedGroupoid::unit())
}

/// `H` at the empty set, empty elsewhere.
pub fn constant_species(sorts: usize, h: GradedGroupoid) -> Result<Species> {
    check_sorts(sorts)?;
    Ok(Species::make(sorts, format!("const{h:?}"), Kind::Constant(h)))
}

pub fn sum(f: &Species, g: &Species) -> Result<Species> {
    same_sorts("sum", f, g)?;
    Ok(Species::make(f.sorts(), format!("sum({},{})", f.name(), g.name()), Kind::Sum(f.clone(), g.clone())))
}

pub fn product(f: &Species, g: &Species) -> Result<Species> {
    product_with(f, g, Strategy::Counting)
}

pub fn product_with(f: &Species, g: &Species, strategy: Strategy) -> Result<Species> {
    same_sorts("prod", f, g)?;
    Ok(Species::make(
        f.sorts(),
        format!("prod({},{})", f.name(), g.name()),
        Kind::Product(f.clone(), g.clone(), strategy),
    ))
}

pub fn hadamard(f: &Species, g: &Species) -> Result<Species> {
    same_sorts("had", f, g)?;
    Ok(Species::make(f.sorts(), format!("had({},{})", f.name(), g.name()), Kind::Hadamard(f.clone(), g.clone())))
}

/// `∂_i F` with 0-based sort index `i`.
pub fn derivative(f: &Species, sort: usize) -> Result<Species> {
    derivative_n(f, sort, 1)
}

/// `∂_i^times F`.
pub fn derivative_n(f: &Species, sort: usize, times: usize) -> Result<Species> {
    if sort >= f.sorts() {
        return Err(Error::domain(format!("derivative: sort index {} out of range", sort + 1)));
    }
    Ok(Species::make(
        f.sorts(),
        format!("d{}^{}({})", sort + 1, times, f.name()),
        Kind::Derivative { inner: f.clone(), sort, times },
    ))
}

/// `F(G_1, ..., G_s)`; every `G_j` must be positive and share one sort count.
pub fn compose(f: &Species, gs: &[Species]) -> Result<Species> {
    if gs.len() != f.sorts() {
        return Err(Error::domain(format!(
            "compose: {} has {} sorts but {} inner species given",
            f.name(),
            f.sorts(),
            gs.len()
        )));
    }
    let t = gs[0].sorts();
    for g in gs {
        if g.sorts() != t {
            return Err(Error::domain("compose: inner species disagree on sorts"));
        }
        require_positive("compose", g)?;
    }
    let names: Vec<&str> = gs.iter().map(Species::name).collect();
    Ok(Species::make(t, format!("compose({},{})", f.name(), names.join(",")), Kind::Compose(f.clone(), gs.to_vec())))
}

/// `F(XY)` evaluated directly as `F(a) × Bij(a, b)`.
pub fn substitute_xy(f: &Species) -> Result<Species> {
    if f.sorts() != 1 {
        return Err(Error::domain("substitute_xy needs a single-sort species"));
    }
    Ok(Species::make(2, format!("xy({})", f.name()), Kind::SubstituteXY(f.clone())))
}

/// `(1 + F)^{-1}` for positive `F`.
pub fn geom_inverse(f: &Species) -> Result<Species> {
    geom_inverse_with(f, Strategy::Counting)
}

pub fn geom_inverse_with(f: &Species, strategy: Strategy) -> Result<Species> {
    require_positive("geominv", f)?;
    Ok(Species::make(f.sorts(), format!("geominv({})", f.name()), Kind::GeomInverse(f.clone(), strategy)))
}

pub fn positive_part(f: &Species) -> Species {
    Species::make(f.sorts(), format!("pospart({})", f.name()), Kind::PositivePart(f.clone()))
}

/// Lifts a single-sort species into coordinate `to_sort` (0-based) of a two-sort species.
pub fn promote(f: &Species, to_sort: usize) -> Result<Species> {
    if f.sorts() != 1 || to_sort > 1 {
        return Err(Error::domain("promote lifts a single-sort species into sort 1 or 2 of two"));
    }
    Ok(Species::make(2, format!("promote{}({})", to_sort + 1, f.name()), Kind::Promote(f.clone(), to_sort)))
}

/// `m`-fold disjoint union of `F`.
pub fn scalar_replicate(f: &Species, m: impl Into<BigUint>) -> Species {
    let m = m.into();
    Species::make(f.sorts(), format!("rep({m},{})", f.name()), Kind::Replicate(f.clone(), m))
}

pub fn negate_species(f: &Species) -> Species {
    Species::make(f.sorts(), format!("negate({})", f.name()), Kind::Negate(f.clone()))
}

/// `Z_a^{⊔b} / (1 + Z_a^{⊔b} F)`, whose valuation is `1 / (a/b + |F|)`.
pub fn scaled_reciprocal(a: usize, b: usize, f: &Species) -> Result<Species> {
    if a == 0 || b == 0 {
        return Err(Error::domain("scaledrecip needs positive a and b"));
    }
    require_positive("scaledrecip", f)?;
    let c = Component::group(a)?;
    let h = GradedGroupoid::positive(FiniteGroupoid::from_component_with_multiplicity(c, BigUint::from(b)));
    let k = constant_species(f.sorts(), h)?;
    product(&k, &geom_inverse(&product(&k, f)?)?)
}

/// `1/(1+X)^{a/b}`: at size `n`, `(-1)^n G^{(n)}` with `G` = `a` copies of `Z_b`.
pub fn binomial_power(a: usize, b: usize) -> Result<Species> {
    if b == 0 {
        return Err(Error::domain("binpow needs positive b"));
    }
    let g = FiniteGroupoid::from_component_with_multiplicity(Component::group(b)?, BigUint::from(a));
    Ok(Species::make(1, format!("binpow({a},{b})"), Kind::BinomialPower(g)))
}

/// Cardinality of every value up to total order `order`, as a series.
pub fn egf_of(f: &Species, order: usize) -> Result<TruncatedEGF> {
    f.egf(order)
}

/// Exact generating series check helper: `|F|` as a vector of single-sort coefficients.
pub fn coefficients(f: &Species, order: usize) -> Result<Vec<Rational>> {
    Ok(f.egf(order)?.coeffs1())
}
