use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::scalar::{Monomial, Scalar};
use super::symbol::Symbol;

/// Bound on the combined effective degree of a set of symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointCap {
    pub symbols: BTreeSet<Symbol>,
    pub max_degree: i32,
}

/// Perturbative truncation policy.
///
/// A monomial survives when its effective degree (derived symbols counted
/// through their expansion) in every capped symbol is within the cap and every
/// joint cap holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedOrder {
    caps: BTreeMap<Symbol, i32>,
    joint_caps: Vec<JointCap>,
}

impl Default for GradedOrder {
    /// First order in θ.
    fn default() -> Self {
        GradedOrder::unbounded().with_cap(Symbol::Theta, 1)
    }
}

impl GradedOrder {
    pub fn unbounded() -> Self {
        GradedOrder {
            caps: BTreeMap::new(),
            joint_caps: Vec::new(),
        }
    }

    pub fn theta_first_order() -> Self {
        GradedOrder::default()
    }

    /// First order in θ with the second-order coupling terms (e²θ) dropped.
    pub fn theta_first_order_drop_e2() -> Self {
        GradedOrder::default().with_joint_cap([Symbol::Charge, Symbol::Rho, Symbol::Theta], 2)
    }

    pub fn with_cap(mut self, sym: Symbol, max: i32) -> Self {
        self.caps.insert(sym, max);
        self
    }

    pub fn with_joint_cap<I: IntoIterator<Item = Symbol>>(mut self, syms: I, max: i32) -> Self {
        self.joint_caps.push(JointCap {
            symbols: syms.into_iter().collect(),
            max_degree: max,
        });
        self
    }

    pub fn without_joint_caps(&self) -> Self {
        GradedOrder {
            caps: self.caps.clone(),
            joint_caps: Vec::new(),
        }
    }

    pub fn has_joint_caps(&self) -> bool {
        !self.joint_caps.is_empty()
    }

    pub fn caps(&self) -> impl Iterator<Item = (Symbol, i32)> + '_ {
        self.caps.iter().map(|(s, k)| (*s, *k))
    }

    pub fn joint_caps(&self) -> &[JointCap] {
        &self.joint_caps
    }

    pub fn admits(&self, m: &Monomial) -> bool {
        self.caps
            .iter()
            .all(|(s, max)| m.effective_degree(*s) <= *max)
            && self.joint_caps.iter().all(|jc| {
                jc.symbols
                    .iter()
                    .map(|s| m.effective_degree(*s))
                    .sum::<i32>()
                    <= jc.max_degree
            })
    }

    pub fn truncate(&self, s: &Scalar) -> Scalar {
        if self.caps.is_empty() && self.joint_caps.is_empty() {
            return s.clone();
        }
        Scalar::from_terms(
            s.terms()
                .filter(|(m, _)| self.admits(m))
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.truncate(&(a * b))
    }

    /// Sum of the effective degrees in the individually capped symbols, or
    /// `None` if any of them is negative.
    pub(crate) fn graded_degree(&self, m: &Monomial) -> Option<i32> {
        let mut total = 0;
        for s in self.caps.keys() {
            let d = m.effective_degree(*s);
            if d < 0 {
                return None;
            }
            total += d;
        }
        Some(total)
    }
}

impl fmt::Display for GradedOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.caps.iter().map(|(s, k)| format!("{s}<={k}")).collect();
        for jc in &self.joint_caps {
            let names: Vec<&str> = jc.symbols.iter().map(|s| s.name()).collect();
            parts.push(format!("deg({})<={}", names.join("+"), jc.max_degree));
        }
        if parts.is_empty() {
            f.write_str("unbounded")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::GaussianRational;

    #[test]
    fn kappa_squared_is_truncated() {
        let order = GradedOrder::default();
        let two_kappa = Scalar::sym(Symbol::Kappa).scale(&GaussianRational::integer(2));
        let a = Scalar::one() - two_kappa.clone();
        let b = Scalar::one() + two_kappa;
        assert_eq!(order.mul(&a, &b), Scalar::one());
    }

    #[test]
    fn joint_cap_drops_e2_theta_only() {
        let order = GradedOrder::theta_first_order_drop_e2();
        let e = Scalar::sym(Symbol::Charge);
        let theta = Scalar::sym(Symbol::Theta);
        let e2theta = &(&e * &e) * &theta;
        let etheta = &e * &theta;
        let e2 = &e * &e;
        let s = &(&e2theta + &etheta) + &e2;
        assert_eq!(order.truncate(&s), &etheta + &e2);
        // κ·e carries e²θ through κ
        let ke = &Scalar::sym(Symbol::Kappa) * &e;
        assert!(order.truncate(&ke).is_zero());
    }
}
