use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::expr::{join_signed, push_power, render_term, Powers, WeylExpr, COORD_NAMES};
use crate::scalars::{GaussianRational, GradedOrder, Scalar, Symbol};

/// Commuting polynomial in `(r, p)`. Keys reuse [`Powers`] with `d` holding
/// the momentum exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassicalPoly {
    dim: usize,
    terms: BTreeMap<Powers, Scalar>,
}

impl ClassicalPoly {
    pub fn zero(dim: usize) -> Self {
        ClassicalPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Scalar) -> Self {
        let mut out = Self::zero(dim);
        out.add_term(Powers::unit(dim), &c);
        out
    }

    pub fn coord(dim: usize, alpha: usize) -> Self {
        let mut p = Powers::unit(dim);
        p.r[alpha] = 1;
        let mut out = Self::zero(dim);
        out.add_term(p, &Scalar::one());
        out
    }

    pub fn momentum(dim: usize, alpha: usize) -> Self {
        let mut p = Powers::unit(dim);
        p.d[alpha] = 1;
        let mut out = Self::zero(dim);
        out.add_term(p, &Scalar::one());
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Powers, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, powers: &Powers) -> Scalar {
        self.terms.get(powers).cloned().unwrap_or_default()
    }

    pub fn max_p_degree(&self) -> u32 {
        self.terms.keys().map(Powers::d_degree).max().unwrap_or(0)
    }

    pub fn max_r_degree(&self) -> u32 {
        self.terms.keys().map(Powers::r_degree).max().unwrap_or(0)
    }

    pub fn as_scalar(&self) -> Option<Scalar> {
        if self
            .terms
            .keys()
            .all(|p| p.r_degree() == 0 && p.d_degree() == 0)
        {
            Some(self.coeff(&Powers::unit(self.dim)))
        } else {
            None
        }
    }

    fn add_term(&mut self, p: Powers, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let sum = self.coeff(&p) + c;
        if sum.is_zero() {
            self.terms.remove(&p);
        } else {
            self.terms.insert(p, sum);
        }
    }

    /// Coordinate polynomial multiplying `p^pp`.
    pub fn momentum_coeff(&self, pp: &[u32]) -> ClassicalPoly {
        let mut out = ClassicalPoly::zero(self.dim);
        for (p, c) in &self.terms {
            if p.d == pp {
                out.add_term(
                    Powers {
                        r: p.r.clone(),
                        d: vec![0; self.dim],
                    },
                    c,
                );
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> ClassicalPoly {
        let mut out = ClassicalPoly::zero(self.dim);
        for (p, v) in &self.terms {
            out.add_term(p.clone(), &(v * c));
        }
        out
    }

    pub fn truncate(&self, order: &GradedOrder) -> ClassicalPoly {
        let mut out = ClassicalPoly::zero(self.dim);
        for (p, v) in &self.terms {
            out.add_term(p.clone(), &order.truncate(v));
        }
        out
    }

    pub fn expand_derived(&self) -> ClassicalPoly {
        let mut out = ClassicalPoly::zero(self.dim);
        for (p, v) in &self.terms {
            out.add_term(p.clone(), &v.expand_derived());
        }
        out
    }

    pub fn equivalent(&self, other: &ClassicalPoly) -> bool {
        (self - other).expand_derived().is_zero()
    }

    pub fn mul(&self, other: &ClassicalPoly, order: &GradedOrder) -> ClassicalPoly {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = ClassicalPoly::zero(self.dim);
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                let p = Powers {
                    r: pa.r.iter().zip(&pb.r).map(|(a, b)| a + b).collect(),
                    d: pa.d.iter().zip(&pb.d).map(|(a, b)| a + b).collect(),
                };
                out.add_term(p, &order.truncate(&(ca * cb)));
            }
        }
        out
    }

    /// Partial derivative with respect to `r_α`.
    pub fn partial_r(&self, alpha: usize) -> ClassicalPoly {
        let mut out = ClassicalPoly::zero(self.dim);
        for (p, c) in &self.terms {
            let k = p.r[alpha];
            if k > 0 {
                let mut q = p.clone();
                q.r[alpha] -= 1;
                out.add_term(q, &c.scale(&GaussianRational::integer(k as i64)));
            }
        }
        out
    }

    /// Coordinate polynomial as a derivative-free [`WeylExpr`]; momenta are
    /// dropped.
    pub fn to_coordinate_expr(&self) -> WeylExpr {
        let mut out = WeylExpr::zero(self.dim);
        for (p, c) in &self.terms {
            if p.d_degree() == 0 {
                out = &out + &WeylExpr::term(self.dim, c.clone(), p.clone());
            }
        }
        out
    }

    pub fn from_coordinate_expr(e: &WeylExpr) -> ClassicalPoly {
        let mut out = ClassicalPoly::zero(e.dim());
        for (p, c) in e.terms() {
            if p.d_degree() == 0 {
                out.add_term(p.clone(), c);
            }
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(p, _)| p.r_degree() + p.d_degree());
        let parts: Vec<String> = ordered
            .into_iter()
            .map(|(p, c)| {
                let mut factors = Vec::new();
                for (a, k) in p.r.iter().enumerate() {
                    push_power(&mut factors, COORD_NAMES[a].to_string(), *k);
                }
                for (a, k) in p.d.iter().enumerate() {
                    push_power(&mut factors, format!("p_{}", COORD_NAMES[a]), *k);
                }
                render_term(c, &factors.join("*"))
            })
            .collect();
        join_signed(&parts)
    }
}

/// Replaces `p_α = −iħ∂_α` by the c-number momentum: `∂^n ↦ (i/ħ)^{|n|} p^n`.
pub fn classicalize(h: &WeylExpr) -> ClassicalPoly {
    let mut out = ClassicalPoly::zero(h.dim());
    for (p, c) in h.terms() {
        let n = p.d_degree();
        let phase = match n % 4 {
            0 => GaussianRational::one(),
            1 => GaussianRational::i(),
            2 => GaussianRational::integer(-1),
            _ => -GaussianRational::i(),
        };
        let factor = Scalar::monomial(phase, &[(Symbol::Hbar, -(n as i32))]);
        out.add_term(p.clone(), &(c * &factor));
    }
    out
}

impl fmt::Display for ClassicalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &ClassicalPoly {
    type Output = ClassicalPoly;
    fn add(self, rhs: &ClassicalPoly) -> ClassicalPoly {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), c);
        }
        out
    }
}

impl Sub for &ClassicalPoly {
    type Output = ClassicalPoly;
    fn sub(self, rhs: &ClassicalPoly) -> ClassicalPoly {
        self + &(-rhs)
    }
}

impl Neg for &ClassicalPoly {
    type Output = ClassicalPoly;
    fn neg(self) -> ClassicalPoly {
        self.scale(&Scalar::integer(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hbar() -> Scalar {
        Scalar::sym(Symbol::Hbar)
    }

    #[test]
    fn momentum_maps_to_p() {
        let p = WeylExpr::momentum(2, 0);
        assert_eq!(classicalize(&p), ClassicalPoly::momentum(2, 0));
        let order = GradedOrder::unbounded();
        let xp = WeylExpr::coord(2, 0).mul(&p, &order).unwrap();
        assert_eq!(
            classicalize(&xp),
            ClassicalPoly::coord(2, 0).mul(&ClassicalPoly::momentum(2, 0), &order)
        );
        // −ħ²∂² ↦ p²
        let dd = WeylExpr::deriv(2, 0)
            .pow(2, &order)
            .scale(&-(&hbar() * &hbar()));
        assert_eq!(classicalize(&dd).render(), "p_x^2");
    }

    #[test]
    fn momentum_coefficients_and_derivatives() {
        let order = GradedOrder::unbounded();
        let x = ClassicalPoly::coord(2, 0);
        let py = ClassicalPoly::momentum(2, 1);
        let h = &x.mul(&py, &order).scale(&Scalar::sym(Symbol::B)) + &py;
        let c = h.momentum_coeff(&[0, 1]);
        assert_eq!(c.render(), "1 + B*x");
        assert_eq!(c.partial_r(0).as_scalar(), Some(Scalar::sym(Symbol::B)));
    }
}
