//! Exact arithmetic over the formal-parameter ring: Gaussian-rational
//! coefficients times Laurent monomials in the physical symbols, with graded
//! perturbative truncation.

mod order;
mod rational;
mod scalar;
mod series;
mod symbol;

pub use order::{GradedOrder, JointCap};
pub use rational::GaussianRational;
pub use scalar::{Monomial, ParamValues, Scalar};
pub use series::{perturbative_sqrt, reciprocal};
pub use symbol::{Symbol, ALL_SYMBOLS};

use crate::error::Result;

pub(crate) fn ser_scalar<S: serde::Serializer>(
    s: &Scalar,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&s.render())
}

/// Shorthand for a real rational constant.
pub fn q(num: i64, den: i64) -> Scalar {
    Scalar::ratio(num, den)
}

/// Shorthand for a single symbol.
pub fn s(sym: Symbol) -> Scalar {
    Scalar::sym(sym)
}

/// `c * Π sym^k` with rational `c = num/den`.
pub fn mono(num: i64, den: i64, pairs: &[(Symbol, i32)]) -> Scalar {
    Scalar::monomial(GaussianRational::ratio(num, den), pairs)
}

/// κ = eθB/4ħc written in primitive symbols.
pub fn kappa_expanded() -> Scalar {
    Scalar::sym(Symbol::Kappa).expand_derived()
}

impl Scalar {
    pub fn reciprocal(&self, order: &GradedOrder) -> Result<Scalar> {
        reciprocal(self, order)
    }

    pub fn perturbative_sqrt(&self, order: &GradedOrder) -> Result<Scalar> {
        perturbative_sqrt(self, order)
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    const POOL: [Symbol; 6] = [
        Symbol::Charge,
        Symbol::B,
        Symbol::Theta,
        Symbol::Kappa,
        Symbol::Hbar,
        Symbol::Mass,
    ];

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        prop::collection::vec(
            (
                -5i64..=5,
                1i64..=4,
                -1i64..=1,
                prop::collection::vec((0usize..POOL.len(), -1i32..=2), 0..3),
            ),
            0..4,
        )
        .prop_map(|terms| {
            Scalar::from_terms(terms.into_iter().map(|(n, d, im, pairs)| {
                let c = GaussianRational::new(
                    num_rational::BigRational::new(n.into(), d.into()),
                    num_rational::BigRational::from_integer(im.into()),
                );
                let m = Monomial::from_pairs(pairs.into_iter().map(|(i, k)| (POOL[i], k)));
                (m, c)
            }))
        })
    }

    fn theta_nonneg(s: &Scalar) -> bool {
        s.terms()
            .all(|(m, _)| m.effective_degree(Symbol::Theta) >= 0)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assume!(theta_nonneg(&a) && theta_nonneg(&b) && theta_nonneg(&c));
            let order = GradedOrder::default();
            prop_assert_eq!(order.mul(&a, &b), order.mul(&b, &a));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(
                order.mul(&order.mul(&a, &b), &c),
                order.mul(&a, &order.mul(&b, &c))
            );
            prop_assert_eq!(
                order.mul(&a, &(&b + &c)),
                &order.mul(&a, &b) + &order.mul(&a, &c)
            );
        }

        #[test]
        fn truncation_properties(a in arb_scalar(), b in arb_scalar()) {
            prop_assume!(theta_nonneg(&a) && theta_nonneg(&b));
            let order = GradedOrder::theta_first_order_drop_e2();
            let first = GradedOrder::default();
            prop_assert_eq!(first.truncate(&first.truncate(&a)), first.truncate(&a));
            prop_assert_eq!(order.truncate(&order.truncate(&a)), order.truncate(&a));
            prop_assert_eq!(
                first.truncate(&(&a + &b)),
                &first.truncate(&a) + &first.truncate(&b)
            );
            prop_assert_eq!(
                first.truncate(&(&a * &b)),
                first.truncate(&(&first.truncate(&a) * &first.truncate(&b)))
            );
        }

        #[test]
        fn expand_then_contract_is_equivalent(a in arb_scalar()) {
            prop_assert!(a.contract_derived().equivalent(&a));
            prop_assert_eq!(a.expand_derived().expand_derived(), a.expand_derived());
        }

        #[test]
        fn reciprocal_and_sqrt_round_trip(eps in arb_scalar(), k in 1i64..4) {
            let order = GradedOrder::default();
            prop_assume!(theta_nonneg(&eps));
            // 1 + θ·eps is near identity whenever eps is θ-free
            let eps = eps.set_zero(Symbol::Theta);
            let s = &(Scalar::integer(k * k)) + &(&eps * &Scalar::sym(Symbol::Theta));
            let r = s.reciprocal(&order).unwrap();
            prop_assert_eq!(order.mul(&r, &s), Scalar::one());
            let root = s.perturbative_sqrt(&order).unwrap();
            prop_assert_eq!(order.mul(&root, &root), order.truncate(&s));
        }
    }
}
