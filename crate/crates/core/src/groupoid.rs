//! Skeletal finite groupoids and Z/2-graded groupoids.
//!
//! A finite groupoid is stored as a multiset of connected components, each
//! described by its object count and the order of the automorphism group of
//! any of its objects. Multiplicities are kept as big integers so that the
//! replicated unions produced by species products never have to be expanded.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{factorial, Rational};

/// Cap on the number of tuples `n^k` enumerated by [`power_quotient`].
pub const DEFAULT_TUPLE_CAP: u64 = 100_000;
/// Cap on the group order produced by [`GroupAction::from_generators`].
pub const DEFAULT_GROUP_CAP: usize = 10_000;

/// One connected component: `objects` isomorphic objects, each with an
/// automorphism group of order `aut`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Component {
    objects: BigUint,
    aut: BigUint,
}

impl Component {
    pub fn new(objects: impl Into<BigUint>, aut: impl Into<BigUint>) -> Result<Self> {
        let (objects, aut) = (objects.into(), aut.into());
        if objects.is_zero() || aut.is_zero() {
            return Err(Error::domain("component object count and automorphism order must be positive"));
        }
        Ok(Component { objects, aut })
    }

    pub fn unit() -> Self {
        Component { objects: BigUint::one(), aut: BigUint::one() }
    }

    /// A one-object component with automorphism group of the given order.
    pub fn group(aut: impl Into<BigUint>) -> Result<Self> {
        Component::new(BigUint::one(), aut)
    }

    pub fn objects(&self) -> &BigUint {
        &self.objects
    }

    pub fn aut_order(&self) -> &BigUint {
        &self.aut
    }

    fn times(&self, other: &Component) -> Component {
        Component { objects: &self.objects * &other.objects, aut: &self.aut * &other.aut }
    }
}

impl fmt::Debug for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.objects, self.aut)
    }
}

/// A finite groupoid as a canonical multiset of components.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FiniteGroupoid {
    comps: BTreeMap<Component, BigUint>,
}

impl FiniteGroupoid {
    pub fn empty() -> Self {
        FiniteGroupoid::default()
    }

    /// The terminal groupoid: one object, trivial automorphisms.
    pub fn unit() -> Self {
        FiniteGroupoid::from_component(Component::unit())
    }

    pub fn from_component(c: Component) -> Self {
        FiniteGroupoid::from_component_with_multiplicity(c, BigUint::one())
    }

    pub fn from_component_with_multiplicity(c: Component, mult: BigUint) -> Self {
        let mut g = FiniteGroupoid::empty();
        g.insert(c, mult);
        g
    }

    pub fn from_components(pairs: impl IntoIterator<Item = Component>) -> Self {
        let mut g = FiniteGroupoid::empty();
        for c in pairs {
            g.insert(c, BigUint::one());
        }
        g
    }

    fn insert(&mut self, c: Component, mult: BigUint) {
        if mult.is_zero() {
            return;
        }
        *self.comps.entry(c).or_insert_with(BigUint::zero) += mult;
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    /// Distinct components with their multiplicities, in canonical order.
    pub fn components(&self) -> impl Iterator<Item = (&Component, &BigUint)> {
        self.comps.iter()
    }

    /// Number of connected components, counted with multiplicity.
    pub fn component_count(&self) -> BigUint {
        self.comps.values().sum()
    }

    /// Baez-Dolan cardinality: the sum of `1/aut` over isomorphism classes.
    pub fn cardinality(&self) -> Rational {
        self.comps.iter().map(|(c, m)| Rational::from(m) * Rational::unit_fraction(&c.aut)).sum()
    }

    pub fn disjoint_union(&self, other: &FiniteGroupoid) -> FiniteGroupoid {
        let mut out = self.clone();
        out.absorb(other);
        out
    }

    pub(crate) fn absorb(&mut self, other: &FiniteGroupoid) {
        for (c, m) in &other.comps {
            self.insert(c.clone(), m.clone());
        }
    }

    pub(crate) fn absorb_scaled(&mut self, other: &FiniteGroupoid, scale: &BigUint) {
        if scale.is_zero() {
            return;
        }
        for (c, m) in &other.comps {
            self.insert(c.clone(), m * scale);
        }
    }

    pub fn product(&self, other: &FiniteGroupoid) -> FiniteGroupoid {
        let mut out = FiniteGroupoid::empty();
        for (c1, m1) in &self.comps {
            for (c2, m2) in &other.comps {
                out.insert(c1.times(c2), m1 * m2);
            }
        }
        out
    }

    /// `m`-fold disjoint union of `self`.
    pub fn replicate(&self, m: &BigUint) -> FiniteGroupoid {
        let mut out = FiniteGroupoid::empty();
        out.absorb_scaled(self, m);
        out
    }

    /// Keeps objects and their automorphisms, drops all other morphisms.
    pub fn inertia(&self) -> FiniteGroupoid {
        let mut out = FiniteGroupoid::empty();
        for (c, m) in &self.comps {
            out.insert(Component { objects: BigUint::one(), aut: c.aut.clone() }, m * &c.objects);
        }
        out
    }

    /// Expanded `[objects, aut]` list (one entry per component copy).
    ///
    /// Fails if the expansion would exceed `max_entries`.
    pub fn expanded(&self, max_entries: usize) -> Result<Vec<(BigUint, BigUint)>> {
        let total = self.component_count();
        if total > BigUint::from(max_entries) {
            return Err(Error::limit("groupoid expansion", total.to_u64().unwrap_or(u64::MAX), max_entries));
        }
        let mut out = Vec::new();
        for (c, m) in &self.comps {
            let m = m.to_usize().unwrap_or(0);
            out.extend(std::iter::repeat_n((c.objects.clone(), c.aut.clone()), m));
        }
        Ok(out)
    }
}

impl fmt::Debug for FiniteGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (c, m)) in self.comps.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if m.is_one() {
                write!(f, "{c:?}")?;
            } else {
                write!(f, "{m}x{c:?}")?;
            }
        }
        f.write_str("}")
    }
}

/// A pair (positive part, negative part). No cancellation is ever applied.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct GradedGroupoid {
    pub pos: FiniteGroupoid,
    pub neg: FiniteGroupoid,
}

impl GradedGroupoid {
    pub fn new(pos: FiniteGroupoid, neg: FiniteGroupoid) -> Self {
        GradedGroupoid { pos, neg }
    }

    pub fn empty() -> Self {
        GradedGroupoid::default()
    }

    pub fn unit() -> Self {
        GradedGroupoid::positive(FiniteGroupoid::unit())
    }

    pub fn positive(g: FiniteGroupoid) -> Self {
        GradedGroupoid { pos: g, neg: FiniteGroupoid::empty() }
    }

    pub fn negative(g: FiniteGroupoid) -> Self {
        GradedGroupoid { pos: FiniteGroupoid::empty(), neg: g }
    }

    /// `g` placed in the positive part when `negative` is false, else the negative part.
    pub fn signed(g: FiniteGroupoid, negative: bool) -> Self {
        if negative {
            GradedGroupoid::negative(g)
        } else {
            GradedGroupoid::positive(g)
        }
    }

    pub fn is_empty(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }

    /// Structurally the unit `(1, ∅)`.
    pub fn is_unit(&self) -> bool {
        self.neg.is_empty() && self.pos == FiniteGroupoid::unit()
    }

    pub fn cardinality(&self) -> Rational {
        self.pos.cardinality() - self.neg.cardinality()
    }

    pub fn disjoint_union(&self, other: &GradedGroupoid) -> GradedGroupoid {
        GradedGroupoid { pos: self.pos.disjoint_union(&other.pos), neg: self.neg.disjoint_union(&other.neg) }
    }

    pub(crate) fn absorb(&mut self, other: &GradedGroupoid) {
        self.pos.absorb(&other.pos);
        self.neg.absorb(&other.neg);
    }

    pub(crate) fn absorb_scaled(&mut self, other: &GradedGroupoid, scale: &BigUint) {
        self.pos.absorb_scaled(&other.pos, scale);
        self.neg.absorb_scaled(&other.neg, scale);
    }

    /// `(a1,b1) x (a2,b2) = (a1 a2 ⊔ b1 b2, a1 b2 ⊔ a2 b1)`.
    pub fn graded_product(&self, other: &GradedGroupoid) -> GradedGroupoid {
        let pos = self.pos.product(&other.pos).disjoint_union(&self.neg.product(&other.neg));
        let neg = self.pos.product(&other.neg).disjoint_union(&other.pos.product(&self.neg));
        GradedGroupoid { pos, neg }
    }

    pub fn negate(&self) -> GradedGroupoid {
        GradedGroupoid { pos: self.neg.clone(), neg: self.pos.clone() }
    }

    pub fn replicate(&self, m: &BigUint) -> GradedGroupoid {
        GradedGroupoid { pos: self.pos.replicate(m), neg: self.neg.replicate(m) }
    }
}

impl fmt::Debug for GradedGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} - {:?})", self.pos, self.neg)
    }
}

/// A permutation group acting on `{0, ..., degree-1}`, stored as its full
/// element list. Permutations are image lists: `p[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    degree: usize,
    elements: Vec<Vec<usize>>,
}

fn compose_perm(p: &[usize], q: &[usize]) -> Vec<usize> {
    // (p ∘ q)(i) = p(q(i))
    q.iter().map(|&i| p[i]).collect()
}

fn check_perm(degree: usize, p: &[usize]) -> Result<()> {
    if p.len() != degree {
        return Err(Error::validation(format!("permutation {p:?} has length {} not {degree}", p.len())));
    }
    let mut seen = vec![false; degree];
    for &x in p {
        if x >= degree || seen[x] {
            return Err(Error::validation(format!("{p:?} is not a permutation of degree {degree}")));
        }
        seen[x] = true;
    }
    Ok(())
}

impl GroupAction {
    /// Builds from an explicit element list (0-based image lists) and checks
    /// that it is a group.
    pub fn new(degree: usize, elements: Vec<Vec<usize>>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::validation("action degree must be positive"));
        }
        for p in &elements {
            check_perm(degree, p)?;
        }
        let set: HashSet<&Vec<usize>> = elements.iter().collect();
        if set.len() != elements.len() {
            return Err(Error::validation("duplicate group elements"));
        }
        let identity: Vec<usize> = (0..degree).collect();
        if !set.contains(&identity) {
            return Err(Error::validation("element list lacks the identity"));
        }
        // A finite subset of a group closed under composition is a subgroup.
        for p in &elements {
            for q in &elements {
                if !set.contains(&compose_perm(p, q)) {
                    return Err(Error::validation(format!("not closed: {p:?} ∘ {q:?} missing")));
                }
            }
        }
        let order = BigUint::from(elements.len());
        if (factorial(degree) % &order) != BigUint::zero() {
            return Err(Error::validation("group order does not divide degree!"));
        }
        let mut elements = elements;
        elements.sort();
        Ok(GroupAction { degree, elements })
    }

    /// Same as [`GroupAction::new`] but with 1-based image lists.
    pub fn from_one_based(degree: usize, elements: Vec<Vec<usize>>) -> Result<Self> {
        GroupAction::new(degree, to_zero_based(elements)?)
    }

    /// Closure of the given generators (0-based), capped at `cap` elements.
    pub fn from_generators_capped(degree: usize, generators: &[Vec<usize>], cap: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::validation("action degree must be positive"));
        }
        for g in generators {
            check_perm(degree, g)?;
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let q = compose_perm(g, &p);
                if seen.insert(q.clone()) {
                    if seen.len() > cap {
                        return Err(Error::limit("group closure", seen.len(), cap));
                    }
                    queue.push_back(q);
                }
            }
        }
        let mut elements: Vec<_> = seen.into_iter().collect();
        elements.sort();
        Ok(GroupAction { degree, elements })
    }

    pub fn from_generators(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        GroupAction::from_generators_capped(degree, generators, DEFAULT_GROUP_CAP)
    }

    pub fn trivial(degree: usize) -> Result<Self> {
        GroupAction::from_generators(degree, &[])
    }

    pub fn symmetric(degree: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if degree >= 2 {
            let mut swap: Vec<usize> = (0..degree).collect();
            swap.swap(0, 1);
            gens.push(swap);
            gens.push((0..degree).map(|i| (i + 1) % degree).collect());
        }
        GroupAction::from_generators(degree, &gens)
    }

    pub fn cyclic(degree: usize) -> Result<Self> {
        let rot: Vec<usize> = (0..degree).map(|i| (i + 1) % degree.max(1)).collect();
        GroupAction::from_generators(degree, &[rot])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }
}

fn to_zero_based(perms: Vec<Vec<usize>>) -> Result<Vec<Vec<usize>>> {
    perms
        .into_iter()
        .map(|p| {
            p.into_iter()
                .map(|x| x.checked_sub(1).ok_or_else(|| Error::validation("1-based permutation contains 0")))
                .collect()
        })
        .collect()
}

/// Skeletal quotient groupoid `x/G`: one component per orbit, with the
/// orbit size as object count and the stabilizer order as automorphism order.
pub fn quotient(action: &GroupAction) -> FiniteGroupoid {
    orbit_quotient(action.degree, action.order(), |x, out| {
        out.extend(action.elements.iter().map(|g| g[x]));
    })
}

fn orbit_quotient(points: usize, group_order: usize, mut images: impl FnMut(usize, &mut Vec<usize>)) -> FiniteGroupoid {
    let mut visited = vec![false; points];
    let mut out = FiniteGroupoid::empty();
    let mut buf = Vec::new();
    for x in 0..points {
        if visited[x] {
            continue;
        }
        buf.clear();
        images(x, &mut buf);
        let mut orbit = 0usize;
        for &y in &buf {
            if !visited[y] {
                visited[y] = true;
                orbit += 1;
            }
        }
        let c = Component { objects: BigUint::from(orbit), aut: BigUint::from(group_order / orbit) };
        out.insert(c, BigUint::one());
    }
    out
}

/// `[n]^k / G` for a group `G` permuting the `k` tuple positions.
pub fn power_quotient(n: usize, k: usize, action: &GroupAction) -> Result<FiniteGroupoid> {
    power_quotient_capped(n, k, action, DEFAULT_TUPLE_CAP)
}

pub fn power_quotient_capped(n: usize, k: usize, action: &GroupAction, cap: u64) -> Result<FiniteGroupoid> {
    if k == 0 || action.degree != k {
        return Err(Error::domain(format!("index action has degree {} but k = {k}", action.degree)));
    }
    let count = (n as u64).checked_pow(k as u32).filter(|&c| c <= cap);
    let Some(count) = count else {
        return Err(Error::limit("power_quotient", (n as u64).saturating_pow(k as u32), cap));
    };
    let count = count as usize;
    let mut digits = vec![0usize; k];
    Ok(orbit_quotient(count, action.order(), |code, out| {
        let mut c = code;
        for d in digits.iter_mut().take(k) {
            *d = c % n;
            c /= n;
        }
        for g in &action.elements {
            // Position i of the image tuple receives the entry at g(i).
            let mut img = 0usize;
            for i in (0..k).rev() {
                img = img * n + digits[g[i]];
            }
            out.push(img);
        }
    }))
}

/// `G^{(n)} = G × (G ⊔ [1]) × ... × (G ⊔ [n-1])`.
pub fn increasing_factorial_groupoid(g: &FiniteGroupoid, n: usize) -> FiniteGroupoid {
    (0..n).fold(FiniteGroupoid::unit(), |acc, i| acc.product(&g.disjoint_union(&discrete(i))))
}

/// Cyclic group `Z_n` as a one-object groupoid.
pub fn cyclic(n: usize) -> Result<FiniteGroupoid> {
    if n == 0 {
        return Err(Error::domain("cyclic group order must be positive"));
    }
    Ok(FiniteGroupoid::from_component(Component::group(n)?))
}

/// `S_n^N` as a one-object groupoid, automorphism order `(n!)^N`.
pub fn symmetric_power(n: usize, power: u32) -> Result<FiniteGroupoid> {
    if n == 0 || power == 0 {
        return Err(Error::domain("symmetric_power needs positive n and N"));
    }
    Ok(FiniteGroupoid::from_component(Component::group(num_traits::pow(factorial(n), power as usize))?))
}

/// A finite set of size `m` viewed as a discrete groupoid.
pub fn discrete(m: usize) -> FiniteGroupoid {
    discrete_big(&BigUint::from(m))
}

pub fn discrete_big(m: &BigUint) -> FiniteGroupoid {
    FiniteGroupoid::from_component_with_multiplicity(Component::unit(), m.clone())
}

/// A group of the given order viewed as a one-object groupoid.
pub fn group(order: usize) -> Result<FiniteGroupoid> {
    if order == 0 {
        return Err(Error::domain("group order must be positive"));
    }
    Ok(FiniteGroupoid::from_component(Component::group(order)?))
}

/// JSON groupoid description: `{"components": [[objects, aut], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidFile {
    pub components: Vec<[u64; 2]>,
}

/// JSON graded description: `{"pos": {...}, "neg": {...}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedGroupoidFile {
    pub pos: GroupoidFile,
    pub neg: GroupoidFile,
}

/// JSON action description, either explicit elements or generators, 1-based.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionFile {
    Elements { degree: usize, elements: Vec<Vec<usize>> },
    Generators { degree: usize, generators: Vec<Vec<usize>> },
}

impl TryFrom<&GroupoidFile> for FiniteGroupoid {
    type Error = Error;

    fn try_from(f: &GroupoidFile) -> Result<Self> {
        let comps = f.components.iter().map(|&[k, a]| Component::new(k, a)).collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroupoid::from_components(comps))
    }
}

impl TryFrom<&GradedGroupoidFile> for GradedGroupoid {
    type Error = Error;

    fn try_from(f: &GradedGroupoidFile) -> Result<Self> {
        Ok(GradedGroupoid::new((&f.pos).try_into()?, (&f.neg).try_into()?))
    }
}

impl TryFrom<&ActionFile> for GroupAction {
    type Error = Error;

    fn try_from(f: &ActionFile) -> Result<Self> {
        match f {
            ActionFile::Elements { degree, elements } => GroupAction::from_one_based(*degree, elements.clone()),
            ActionFile::Generators { degree, generators } => {
                GroupAction::from_generators(*degree, &to_zero_based(generators.clone())?)
            }
        }
    }
}

/// Parses a groupoid or action description into graded form. Plain
/// descriptions have an empty negative part; an action becomes its quotient
/// groupoid `x/G`.
pub fn parse_groupoid_json(text: &str) -> Result<GradedGroupoid> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::validation(format!("invalid JSON: {e}")))?;
    if value.get("degree").is_some() {
        let f: ActionFile = serde_json::from_value(value).map_err(|e| Error::validation(format!("bad action: {e}")))?;
        Ok(GradedGroupoid::positive(quotient(&(&f).try_into()?)))
    } else if value.get("pos").is_some() || value.get("neg").is_some() {
        let f: GradedGroupoidFile =
            serde_json::from_value(value).map_err(|e| Error::validation(format!("bad graded groupoid: {e}")))?;
        (&f).try_into()
    } else {
        let f: GroupoidFile =
            serde_json::from_value(value).map_err(|e| Error::validation(format!("bad groupoid: {e}")))?;
        Ok(GradedGroupoid::positive((&f).try_into()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    fn comp(k: u32, a: u32) -> Component {
        Component::new(k, a).unwrap()
    }

    #[test]
    fn cardinality_examples() {
        assert_eq!(FiniteGroupoid::empty().cardinality().to_string(), "0/1");
        let g = FiniteGroupoid::from_components(vec![comp(1, 2); 3]);
        assert_eq!(g.cardinality(), r(3, 2));
        let graded = GradedGroupoid::new(FiniteGroupoid::unit(), cyclic(2).unwrap());
        assert_eq!(graded.cardinality(), r(1, 2));
    }

    #[test]
    fn union_and_product() {
        let a = FiniteGroupoid::from_component(comp(1, 2));
        let b = FiniteGroupoid::from_component(comp(1, 3));
        assert_eq!(FiniteGroupoid::empty().disjoint_union(&a), a);
        assert_eq!(a.disjoint_union(&b).cardinality(), r(5, 6));
        let p = a.product(&b);
        assert_eq!(p, FiniteGroupoid::from_component(comp(1, 6)));
        assert_eq!(FiniteGroupoid::unit().product(&a), a);
        let two = a.disjoint_union(&a);
        let p2 = two.product(&b);
        assert_eq!(p2, FiniteGroupoid::from_components(vec![comp(1, 6), comp(1, 6)]));
        assert_eq!(p2.cardinality(), r(1, 3));
        assert!(a.product(&FiniteGroupoid::empty()).is_empty());
    }

    #[test]
    fn graded_sign_rule() {
        let minus_one = GradedGroupoid::negative(FiniteGroupoid::unit());
        assert_eq!(minus_one.graded_product(&minus_one), GradedGroupoid::unit());
        let x = GradedGroupoid::new(cyclic(3).unwrap(), cyclic(5).unwrap());
        assert_eq!(GradedGroupoid::unit().graded_product(&x), x);
        let g = GradedGroupoid::positive(FiniteGroupoid::from_components(vec![comp(1, 2); 3]));
        let h = GradedGroupoid::negative(cyclic(3).unwrap());
        assert_eq!(g.graded_product(&h).cardinality(), r(-1, 2));
    }

    #[test]
    fn negation() {
        let a = GradedGroupoid::positive(cyclic(4).unwrap());
        assert_eq!(a.negate(), GradedGroupoid::negative(cyclic(4).unwrap()));
        assert_eq!(a.negate().negate(), a);
        assert_eq!(a.negate().cardinality(), -a.cardinality());
    }

    #[test]
    fn inertia_examples() {
        let one = FiniteGroupoid::from_component(comp(1, 7));
        assert_eq!(one.inertia(), one);
        let g = FiniteGroupoid::from_component(comp(3, 2));
        assert_eq!(g.inertia(), FiniteGroupoid::from_components(vec![comp(1, 2); 3]));
        assert_eq!(g.inertia().cardinality(), r(3, 2));
        let act = GroupAction::new(3, vec![vec![0, 1, 2], vec![1, 0, 2]]).unwrap();
        assert_eq!(quotient(&act).inertia().cardinality(), r(5, 2));
    }

    #[test]
    fn quotient_examples() {
        let q = quotient(&GroupAction::trivial(4).unwrap());
        assert_eq!(q, discrete(4));
        let act = GroupAction::new(3, vec![vec![0, 1, 2], vec![1, 0, 2]]).unwrap();
        let q = quotient(&act);
        assert_eq!(q, FiniteGroupoid::from_components(vec![comp(2, 1), comp(1, 2)]));
        assert_eq!(q.cardinality(), r(3, 2));
        let not_closed = GroupAction::new(3, vec![vec![0, 1, 2], vec![1, 2, 0]]);
        assert!(matches!(not_closed, Err(Error::Validation(_))));
        assert!(GroupAction::new(3, vec![vec![1, 0, 2]]).is_err());
    }

    #[test]
    fn power_quotient_examples() {
        let s2 = GroupAction::symmetric(2).unwrap();
        assert_eq!(power_quotient(2, 2, &s2).unwrap().cardinality(), r(2, 1));
        assert_eq!(power_quotient(3, 2, &s2).unwrap().cardinality(), r(9, 2));
        let z3 = GroupAction::cyclic(3).unwrap();
        assert_eq!(power_quotient(2, 3, &z3).unwrap().cardinality(), r(8, 3));
        for n in 1..6 {
            assert_eq!(power_quotient(n, 2, &s2).unwrap().cardinality(), r((n * n) as i64, 2));
        }
        assert!(matches!(power_quotient(11, 5, &GroupAction::trivial(5).unwrap()), Err(Error::ResourceLimit { .. })));
        assert!(power_quotient(0, 2, &s2).unwrap().is_empty());
    }

    #[test]
    fn increasing_factorial_examples() {
        let g = FiniteGroupoid::from_component(comp(1, 2));
        assert_eq!(increasing_factorial_groupoid(&g, 0), FiniteGroupoid::unit());
        assert_eq!(increasing_factorial_groupoid(&g, 1), g);
        assert_eq!(increasing_factorial_groupoid(&g, 2).cardinality(), r(3, 4));
    }

    #[test]
    fn named_groupoids() {
        assert_eq!(cyclic(5).unwrap().cardinality(), r(1, 5));
        assert_eq!(discrete(4).cardinality(), r(4, 1));
        let s = symmetric_power(3, 2).unwrap();
        assert_eq!(s, FiniteGroupoid::from_component(comp(1, 36)));
        assert_eq!(group(6).unwrap().cardinality(), r(1, 6));
        assert!(cyclic(0).is_err());
        assert!(group(0).is_err());
    }

    #[test]
    fn groupoid_json() {
        let g = parse_groupoid_json(r#"{"components": [[1,2],[1,2],[1,2]]}"#).unwrap();
        assert_eq!(g.cardinality().to_string(), "3/2");
        let g = parse_groupoid_json(r#"{"pos": {"components": [[1,1]]}, "neg": {"components": [[1,1]]}}"#).unwrap();
        assert_eq!(g.cardinality().to_string(), "0/1");
        assert!(parse_groupoid_json(r#"{"components": [[0,2]]}"#).is_err());
        assert!(parse_groupoid_json("[").is_err());
        let q = parse_groupoid_json(r#"{"degree": 3, "generators": [[2,1,3]]}"#).unwrap();
        assert_eq!(q.cardinality().to_string(), "3/2");
        let act: ActionFile = serde_json::from_str(r#"{"degree": 3, "generators": [[2,1,3]]}"#).unwrap();
        let act = GroupAction::try_from(&act).unwrap();
        assert_eq!(act.order(), 2);
    }

    #[test]
    fn generator_closure() {
        assert_eq!(GroupAction::symmetric(4).unwrap().order(), 24);
        assert_eq!(GroupAction::cyclic(5).unwrap().order(), 5);
        assert!(matches!(
            GroupAction::from_generators_capped(5, &[vec![1, 0, 2, 3, 4], vec![1, 2, 3, 4, 0]], 50),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
