//! The catalog of concrete species.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::groupoid::{self, Component, FiniteGroupoid, GradedGroupoid, GroupAction};
use crate::numeric::{binomial, factorial, SizeVector};
use crate::species::Species;

/// Index group used by the `PG` builtin.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IndexGroup {
    Symmetric,
    Cyclic,
    /// Closure of explicit generators, as 1-based image lists.
    Generated(Vec<Vec<usize>>),
}

impl IndexGroup {
    pub fn action(&self, k: usize) -> Result<GroupAction> {
        match self {
            IndexGroup::Symmetric => GroupAction::symmetric(k),
            IndexGroup::Cyclic => GroupAction::cyclic(k),
            IndexGroup::Generated(gens) => {
                let zero_based = gens
                    .iter()
                    .map(|p| {
                        p.iter()
                            .map(|&x| x.checked_sub(1).ok_or_else(|| Error::validation("permutations are 1-based")))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                GroupAction::from_generators(k, &zero_based)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// Singleton species in one sort.
    X,
    /// `X_i` in two sorts (1-based `i`).
    Xi(usize),
    One,
    Exp,
    /// `1` in two sorts.
    One2,
    /// `Exp` in two sorts.
    Exp2,
    /// `S^N`: automorphisms `S_n^N`.
    SPow(usize),
    /// `Z^N`: automorphisms `Z_n^N`, empty at the empty set. `ZPow(1)` is `Z`.
    ZPow(usize),
    /// `E_N`: automorphisms `Z_N^n`.
    E(usize),
    /// `Ḡ` for a group of order `a`.
    GroupBar(usize),
    /// `(Z_N)^{( )}`: automorphisms `Z_N × ... × Z_{N+n-1}`, empty at the empty set.
    RisingZ(usize),
    /// Subsets with bijections between them.
    Psubsets,
    /// `Z^{(N)}`: automorphisms `Z_n × ... × Z_{n+N-1}`, empty at the empty set.
    IncFact(usize),
    /// `Z_{(N)}`: automorphisms `Z_n × ... × Z_{n-N+1}` for `n >= N`.
    DecFact(usize),
    /// `P_G`: the quotient `x^k / G`.
    PG(usize, IndexGroup),
    Isinh,
    Icosh,
    Si,
    XY,
}

impl Builtin {
    pub fn sorts(&self) -> usize {
        match self {
            Builtin::Xi(_) | Builtin::One2 | Builtin::Exp2 | Builtin::XY => 2,
            _ => 1,
        }
    }

    /// Single-sort builtins with representative parameters.
    pub fn catalog() -> Vec<Builtin> {
        vec![
            Builtin::X,
            Builtin::One,
            Builtin::Exp,
            Builtin::SPow(1),
            Builtin::SPow(2),
            Builtin::ZPow(1),
            Builtin::ZPow(2),
            Builtin::E(2),
            Builtin::E(3),
            Builtin::GroupBar(4),
            Builtin::RisingZ(2),
            Builtin::Psubsets,
            Builtin::IncFact(1),
            Builtin::IncFact(2),
            Builtin::IncFact(3),
            Builtin::DecFact(1),
            Builtin::DecFact(2),
            Builtin::PG(2, IndexGroup::Symmetric),
            Builtin::PG(3, IndexGroup::Cyclic),
            Builtin::Isinh,
            Builtin::Icosh,
            Builtin::Si,
        ]
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::X => f.write_str("X"),
            Builtin::Xi(i) => write!(f, "X{i}"),
            Builtin::One => f.write_str("One"),
            Builtin::Exp => f.write_str("Exp"),
            Builtin::One2 => f.write_str("One2"),
            Builtin::Exp2 => f.write_str("Exp2"),
            Builtin::SPow(n) => write!(f, "Spow({n})"),
            Builtin::ZPow(n) => write!(f, "Zpow({n})"),
            Builtin::E(n) => write!(f, "E({n})"),
            Builtin::GroupBar(a) => write!(f, "GroupBar({a})"),
            Builtin::RisingZ(n) => write!(f, "RisingZ({n})"),
            Builtin::Psubsets => f.write_str("Psubsets"),
            Builtin::IncFact(n) => write!(f, "IncFact({n})"),
            Builtin::DecFact(n) => write!(f, "DecFact({n})"),
            Builtin::PG(k, g) => {
                write!(f, "PG({k},")?;
                match g {
                    IndexGroup::Symmetric => f.write_str("sym")?,
                    IndexGroup::Cyclic => f.write_str("cyc")?,
                    IndexGroup::Generated(gens) => {
                        for (i, p) in gens.iter().enumerate() {
                            if i > 0 {
                                f.write_str(",")?;
                            }
                            let items: Vec<String> = p.iter().map(usize::to_string).collect();
                            write!(f, "[{}]", items.join(","))?;
                        }
                    }
                }
                f.write_str(")")
            }
            Builtin::Isinh => f.write_str("Isinh"),
            Builtin::Icosh => f.write_str("Icosh"),
            Builtin::Si => f.write_str("Si"),
            Builtin::XY => f.write_str("XY"),
        }
    }
}

fn one_object(aut: BigUint) -> GradedGroupoid {
    GradedGroupoid::positive(FiniteGroupoid::from_component(Component::group(aut).expect("aut > 0")))
}

fn product_range(lo: usize, hi_exclusive: usize) -> BigUint {
    (lo..hi_exclusive).map(BigUint::from).product()
}

fn positive_param(name: &str, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain(format!("{name} needs a positive parameter")));
    }
    Ok(())
}

/// Builds the species for a catalog entry.
pub fn make(spec: &Builtin) -> Result<Species> {
    let name = spec.to_string();
    match spec.clone() {
        Builtin::X => {
            Species::atom(1, name, |n| Ok(if n.get(0) == 1 { GradedGroupoid::unit() } else { GradedGroupoid::empty() }))
        }
        Builtin::Xi(i) => {
            if !(1..=2).contains(&i) {
                return Err(Error::domain("X_i needs i in {1, 2}"));
            }
            let e = SizeVector::unit(2, i - 1);
            Species::atom(2, name, move |n| Ok(if *n == e { GradedGroupoid::unit() } else { GradedGroupoid::empty() }))
        }
        Builtin::One => Species::atom(1, name, unit_at_zero),
        Builtin::One2 => Species::atom(2, name, unit_at_zero),
        Builtin::Exp => Species::atom(1, name, |_| Ok(GradedGroupoid::unit())),
        Builtin::Exp2 => Species::atom(2, name, |_| Ok(GradedGroupoid::unit())),
        Builtin::SPow(p) => {
            positive_param("Spow", p)?;
            Species::atom(1, name, move |n| Ok(one_object(num_traits::pow(factorial(n.get(0)), p))))
        }
        Builtin::ZPow(p) => {
            positive_param("Zpow", p)?;
            Species::atom(1, name, move |n| {
                let k = n.get(0);
                Ok(if k == 0 { GradedGroupoid::empty() } else { one_object(num_traits::pow(BigUint::from(k), p)) })
            })
        }
        Builtin::E(p) => {
            positive_param("E", p)?;
            Species::atom(1, name, move |n| Ok(one_object(num_traits::pow(BigUint::from(p), n.get(0)))))
        }
        Builtin::GroupBar(a) => {
            positive_param("GroupBar", a)?;
            Species::atom(1, name, move |n| {
                Ok(if n.get(0) == 0 { one_object(BigUint::from(a)) } else { GradedGroupoid::empty() })
            })
        }
        Builtin::RisingZ(p) => {
            positive_param("RisingZ", p)?;
            Species::atom(1, name, move |n| {
                let k = n.get(0);
                Ok(if k == 0 { GradedGroupoid::empty() } else { one_object(product_range(p, p + k)) })
            })
        }
        Builtin::Psubsets => Species::atom(1, name, |n| {
            let k = n.get(0);
            let comps = (0..=k).map(|j| Component::new(binomial(k, j), factorial(j)).expect("positive"));
            Ok(GradedGroupoid::positive(FiniteGroupoid::from_components(comps)))
        }),
        Builtin::IncFact(p) => {
            positive_param("IncFact", p)?;
            Species::atom(1, name, move |n| {
                let k = n.get(0);
                Ok(if k == 0 { GradedGroupoid::empty() } else { one_object(product_range(k, k + p)) })
            })
        }
        Builtin::DecFact(p) => {
            positive_param("DecFact", p)?;
            Species::atom(1, name, move |n| {
                let k = n.get(0);
                Ok(if k < p { GradedGroupoid::empty() } else { one_object(product_range(k - p + 1, k + 1)) })
            })
        }
        Builtin::PG(k, g) => {
            positive_param("PG", k)?;
            let action = g.action(k)?;
            Species::atom(1, name, move |n| {
                Ok(GradedGroupoid::positive(groupoid::power_quotient(n.get(0), k, &action)?))
            })
        }
        Builtin::Isinh => Species::atom(1, name, |n| {
            let k = n.get(0);
            Ok(if k % 2 == 1 { one_object(BigUint::from(k)) } else { GradedGroupoid::empty() })
        }),
        Builtin::Icosh => Species::atom(1, name, |n| {
            let k = n.get(0);
            Ok(if k % 2 == 0 && k >= 2 { one_object(BigUint::from(k)) } else { GradedGroupoid::empty() })
        }),
        Builtin::Si => Species::atom(1, name, |n| {
            let k = n.get(0);
            if k % 2 == 0 {
                return Ok(GradedGroupoid::empty());
            }
            let g = one_object(BigUint::from(k));
            // Sign (-1)^((k-1)/2), matching the series ∫ sin(x)/x dx.
            Ok(if (k - 1) / 2 % 2 == 1 { g.negate() } else { g })
        }),
        Builtin::XY => Species::atom(2, name, |n| {
            Ok(if *n == SizeVector::pair(1, 1) { GradedGroupoid::unit() } else { GradedGroupoid::empty() })
        }),
    }
}

fn unit_at_zero(n: &SizeVector) -> Result<GradedGroupoid> {
    Ok(if n.is_zero() { GradedGroupoid::unit() } else { GradedGroupoid::empty() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::egf::TruncatedEGF;
    use crate::numeric::Rational;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn e_n_is_exp_of_x_over_n() {
        let f = make(&Builtin::E(3)).unwrap().egf(8).unwrap();
        assert_eq!(f, TruncatedEGF::exp_scaled(3, 8).unwrap());
    }

    #[test]
    fn s_pow_coefficients() {
        let f = make(&Builtin::SPow(2)).unwrap().egf(5).unwrap();
        for n in 0..=5 {
            let fac = Rational::from(factorial(n));
            assert_eq!(f.coeff1(n), (&fac * &fac).recip().unwrap());
        }
    }

    #[test]
    fn si_third_coefficient() {
        let f = make(&Builtin::Si).unwrap().egf(5).unwrap();
        assert_eq!(f.coeff1(1), r(1, 1));
        assert_eq!(f.coeff1(3), r(-1, 3));
        assert_eq!(f.coeff1(5), r(1, 5));
    }

    #[test]
    fn basic_values() {
        assert_eq!(make(&Builtin::Exp).unwrap().egf(5).unwrap(), TruncatedEGF::exp_series(5));
        let z = make(&Builtin::ZPow(1)).unwrap().egf(4).unwrap();
        assert_eq!(z.coeffs1(), vec![r(0, 1), r(1, 1), r(1, 2), r(1, 3), r(1, 4)]);
        let p = make(&Builtin::Psubsets).unwrap().egf(4).unwrap();
        assert_eq!(p.coeff1(3), r(8, 3));
        let d = make(&Builtin::DecFact(3)).unwrap();
        assert_eq!(d.at(3).unwrap().cardinality(), r(1, 6));
        assert!(d.at(2).unwrap().is_empty());
        let ic = make(&Builtin::Icosh).unwrap();
        assert!(ic.at(0).unwrap().is_empty());
        assert_eq!(ic.at(4).unwrap().cardinality(), r(1, 4));
        let xy = make(&Builtin::XY).unwrap();
        assert_eq!(*xy.value(&SizeVector::pair(1, 1)).unwrap(), GradedGroupoid::unit());
        let pg = make(&Builtin::PG(2, IndexGroup::Symmetric)).unwrap();
        assert_eq!(pg.at(3).unwrap().cardinality(), r(9, 2));
    }

    #[test]
    fn invalid_parameters() {
        assert!(make(&Builtin::E(0)).is_err());
        assert!(make(&Builtin::DecFact(0)).is_err());
        assert!(make(&Builtin::Xi(3)).is_err());
        assert!(make(&Builtin::PG(3, IndexGroup::Generated(vec![vec![1, 1, 2]]))).is_err());
    }

    #[test]
    fn display_names() {
        assert_eq!(Builtin::PG(3, IndexGroup::Generated(vec![vec![2, 3, 1]])).to_string(), "PG(3,[2,3,1])");
        assert_eq!(Builtin::ZPow(1).to_string(), "Zpow(1)");
    }
}
