use proptest::prelude::*;

use ratspec::builtins::{Builtin, IndexGroup};
use ratspec::egf::TruncatedEGF;
use ratspec::expr::{self, Expr};
use ratspec::groupoid::{self, Component, FiniteGroupoid, GradedGroupoid, GroupAction};
use ratspec::numeric::{bell, enumerate_compositions, enumerate_set_partitions};
use ratspec::Rational;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..25).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

fn groupoid() -> impl Strategy<Value = FiniteGroupoid> {
    prop::collection::vec((1u32..5, 1u32..8), 0..5)
        .prop_map(|cs| FiniteGroupoid::from_components(cs.into_iter().map(|(k, a)| Component::new(k, a).unwrap())))
}

fn graded() -> impl Strategy<Value = GradedGroupoid> {
    (groupoid(), groupoid()).prop_map(|(p, n)| GradedGroupoid::new(p, n))
}

fn permutation(degree: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..degree).collect::<Vec<_>>()).prop_shuffle()
}

fn action() -> impl Strategy<Value = GroupAction> {
    (1usize..=6)
        .prop_flat_map(|d| (Just(d), prop::collection::vec(permutation(d), 1..3)))
        .prop_map(|(d, gens)| GroupAction::from_generators(d, &gens).unwrap())
}

fn series(order: usize) -> impl Strategy<Value = TruncatedEGF> {
    prop::collection::vec(rational(), order + 1).prop_map(|c| TruncatedEGF::from_coeffs(c).unwrap())
}

fn series_without_constant(order: usize) -> impl Strategy<Value = TruncatedEGF> {
    prop::collection::vec(rational(), order).prop_map(|mut c| {
        c.insert(0, Rational::zero());
        TruncatedEGF::from_coeffs(c).unwrap()
    })
}

fn builtin() -> impl Strategy<Value = Builtin> {
    let simple = prop::sample::select(vec![
        Builtin::X,
        Builtin::Xi(1),
        Builtin::Xi(2),
        Builtin::One,
        Builtin::Exp,
        Builtin::One2,
        Builtin::Exp2,
        Builtin::Psubsets,
        Builtin::Isinh,
        Builtin::Icosh,
        Builtin::Si,
        Builtin::XY,
    ]);
    let gens = prop::collection::vec(prop::collection::vec(1usize..5, 1..4), 1..3);
    prop_oneof![
        simple,
        (0usize..100).prop_map(Builtin::SPow),
        (0usize..100).prop_map(Builtin::ZPow),
        (0usize..100).prop_map(Builtin::E),
        (0usize..100).prop_map(Builtin::GroupBar),
        (0usize..100).prop_map(Builtin::RisingZ),
        (0usize..100).prop_map(Builtin::IncFact),
        (0usize..100).prop_map(Builtin::DecFact),
        (0usize..6).prop_map(|k| Builtin::PG(k, IndexGroup::Symmetric)),
        (0usize..6).prop_map(|k| Builtin::PG(k, IndexGroup::Cyclic)),
        (0usize..6, gens).prop_map(|(k, g)| Builtin::PG(k, IndexGroup::Generated(g))),
    ]
}

fn expression() -> impl Strategy<Value = Expr> {
    builtin().prop_map(Expr::Builtin).prop_recursive(4, 24, 3, |inner| {
        let b = || inner.clone().prop_map(Box::new);
        prop_oneof![
            (b(), b()).prop_map(|(x, y)| Expr::Sum(x, y)),
            (b(), b()).prop_map(|(x, y)| Expr::Prod(x, y)),
            (b(), b()).prop_map(|(x, y)| Expr::Had(x, y)),
            (1usize..=2, b()).prop_map(|(i, x)| Expr::Deriv(i, x)),
            (b(), prop::collection::vec(inner.clone(), 1..3)).prop_map(|(f, gs)| Expr::Compose(f, gs)),
            b().prop_map(Expr::GeomInv),
            (1usize..9, 1usize..9, b()).prop_map(|(p, q, x)| Expr::ScaledRecip(p, q, x)),
            (0usize..9, 1usize..9).prop_map(|(p, q)| Expr::BinPow(p, q)),
            b().prop_map(Expr::PosPart),
            b().prop_map(Expr::Negate),
            (0u64..1000, b()).prop_map(|(m, x)| Expr::Rep(m, x)),
            (1usize..=2, b()).prop_map(|(j, x)| Expr::Promote(j, x)),
            b().prop_map(Expr::Xy),
        ]
    })
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a - &a, Rational::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * a.recip().unwrap(), Rational::one());
        }
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn cardinality_is_a_valuation(a in graded(), b in graded()) {
        prop_assert_eq!(a.disjoint_union(&b).cardinality(), a.cardinality() + b.cardinality());
        prop_assert_eq!(a.graded_product(&b).cardinality(), a.cardinality() * b.cardinality());
        prop_assert_eq!(a.negate().cardinality(), -a.cardinality());
        prop_assert_eq!(a.negate().negate(), a.clone());
        prop_assert_eq!(a.graded_product(&GradedGroupoid::unit()), a);
    }

    #[test]
    fn inertia_is_idempotent(g in groupoid()) {
        let i = g.inertia();
        prop_assert_eq!(i.inertia(), i.clone());
        prop_assert!(i.cardinality() >= g.cardinality() || g.is_empty());
    }

    #[test]
    fn quotient_cardinality(g in action()) {
        let q = groupoid::quotient(&g);
        prop_assert_eq!(q.cardinality(), Rational::new(g.degree() as i64, g.order() as i64).unwrap());
    }

    #[test]
    fn rising_factorial_law(g in groupoid(), n in 0usize..=6) {
        let lhs = groupoid::increasing_factorial_groupoid(&g, n).cardinality();
        prop_assert_eq!(lhs, g.cardinality().rising(n));
    }

    #[test]
    fn series_ring_laws(f in series(6), g in series(6), h in series(6)) {
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
        let leibniz = f.derivative(0).unwrap().mul(&g.truncate(5)).unwrap()
            .add(&f.truncate(5).mul(&g.derivative(0).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(f.mul(&g).unwrap().derivative(0).unwrap(), leibniz);
        if !f.coeff1(0).is_zero() {
            prop_assert_eq!(f.mul(&f.reciprocal().unwrap()).unwrap(), TruncatedEGF::one_series(6));
        }
    }

    #[test]
    fn composition_is_associative(f in series(5), g in series_without_constant(5), h in series_without_constant(5)) {
        let left = f.compose(std::slice::from_ref(&g)).unwrap().compose(std::slice::from_ref(&h)).unwrap();
        let right = f.compose(&[g.compose(&[h]).unwrap()]).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn binomial_series_exponents_add(a in rational(), b in rational()) {
        let product = TruncatedEGF::binomial_series(&a, 6).mul(&TruncatedEGF::binomial_series(&b, 6)).unwrap();
        prop_assert_eq!(product, TruncatedEGF::binomial_series(&(&a + &b), 6));
        let inverse = TruncatedEGF::binomial_series(&a, 6).mul(&TruncatedEGF::binomial_series(&-a.clone(), 6)).unwrap();
        prop_assert_eq!(inverse, TruncatedEGF::one_series(6));
    }

    #[test]
    fn enumeration_counts(n in 1usize..=10) {
        prop_assert_eq!(enumerate_compositions(n).unwrap().count(), 1usize << (n - 1));
        prop_assert_eq!(num_bigint::BigUint::from(enumerate_set_partitions(n).unwrap().count()), bell(n));
    }

    #[test]
    fn expression_round_trip(e in expression()) {
        let text = e.to_string();
        prop_assert_eq!(expr::parse(&text).unwrap(), e);
    }
}
