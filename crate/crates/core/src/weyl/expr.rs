use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalars::{GaussianRational, GradedOrder, Scalar, Symbol};

pub(crate) const COORD_NAMES: [&str; 3] = ["x", "y", "z"];

/// Exponents of one normal-ordered word `r^r · ∂^d`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Powers {
    pub r: Vec<u32>,
    pub d: Vec<u32>,
}

impl Powers {
    pub fn unit(dim: usize) -> Self {
        Powers {
            r: vec![0; dim],
            d: vec![0; dim],
        }
    }

    pub fn r_degree(&self) -> u32 {
        self.r.iter().sum()
    }

    pub fn d_degree(&self) -> u32 {
        self.d.iter().sum()
    }
}

/// Generator factor for [`WeylExpr::normal_order`].
#[derive(Debug, Clone, PartialEq)]
pub enum Factor {
    Coord(usize),
    Deriv(usize),
    Scalar(Scalar),
}

/// Polynomial in coordinates `r_α` and derivatives `∂_α` with [`Scalar`]
/// coefficients, kept in normal order (coordinates left of derivatives).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylExpr {
    dim: usize,
    terms: BTreeMap<Powers, Scalar>,
}

fn check_dim(dim: usize) {
    assert!((1..=3).contains(&dim), "unsupported dimension {dim}");
}

impl WeylExpr {
    pub fn zero(dim: usize) -> Self {
        check_dim(dim);
        WeylExpr {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, Scalar::one())
    }

    pub fn scalar(dim: usize, c: Scalar) -> Self {
        Self::term(dim, c, Powers::unit(dim))
    }

    pub fn term(dim: usize, c: Scalar, powers: Powers) -> Self {
        let mut e = Self::zero(dim);
        assert_eq!(powers.r.len(), dim);
        assert_eq!(powers.d.len(), dim);
        e.add_term(powers, &c);
        e
    }

    /// Coordinate `r_α`.
    pub fn coord(dim: usize, alpha: usize) -> Self {
        let mut p = Powers::unit(dim);
        p.r[alpha] += 1;
        Self::term(dim, Scalar::one(), p)
    }

    /// Derivative `∂_α`.
    pub fn deriv(dim: usize, alpha: usize) -> Self {
        let mut p = Powers::unit(dim);
        p.d[alpha] += 1;
        Self::term(dim, Scalar::one(), p)
    }

    /// Canonical momentum `p_α = −iħ∂_α`.
    pub fn momentum(dim: usize, alpha: usize) -> Self {
        let c = Scalar::monomial(-GaussianRational::i(), &[(Symbol::Hbar, 1)]);
        Self::deriv(dim, alpha).scale(&c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Powers, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, powers: &Powers) -> Scalar {
        self.terms.get(powers).cloned().unwrap_or_default()
    }

    /// Coefficient of `r^r ∂^d` given as exponent slices.
    pub fn coeff_of(&self, r: &[u32], d: &[u32]) -> Scalar {
        self.coeff(&Powers {
            r: r.to_vec(),
            d: d.to_vec(),
        })
    }

    /// Constant term.
    pub fn constant_part(&self) -> Scalar {
        self.coeff(&Powers::unit(self.dim))
    }

    /// Single scalar when the expression has no coordinate or derivative.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(p, _)| p.r_degree() == 0 && p.d_degree() == 0)
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn max_r_degree(&self) -> u32 {
        self.terms.keys().map(Powers::r_degree).max().unwrap_or(0)
    }

    pub fn max_d_degree(&self) -> u32 {
        self.terms.keys().map(Powers::d_degree).max().unwrap_or(0)
    }

    /// True when no derivative appears.
    pub fn is_coordinate_polynomial(&self) -> bool {
        self.max_d_degree() == 0
    }

    fn add_term(&mut self, p: Powers, c: &Scalar) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            Entry::Occupied(mut slot) => {
                let sum = slot.get() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
        }
    }

    fn map_coeffs<F: Fn(&Scalar) -> Scalar>(&self, f: F) -> WeylExpr {
        let mut out = WeylExpr::zero(self.dim);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), &f(c));
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> WeylExpr {
        self.map_coeffs(|v| v * c)
    }

    pub fn truncate(&self, order: &GradedOrder) -> WeylExpr {
        self.map_coeffs(|v| order.truncate(v))
    }

    pub fn expand_derived(&self) -> WeylExpr {
        self.map_coeffs(Scalar::expand_derived)
    }

    pub fn contract_derived(&self) -> WeylExpr {
        self.map_coeffs(Scalar::contract_derived)
    }

    pub fn set_zero(&self, sym: Symbol) -> WeylExpr {
        self.map_coeffs(|v| v.set_zero(sym))
    }

    /// Equality after expanding derived symbols in every coefficient.
    pub fn equivalent(&self, other: &WeylExpr) -> bool {
        self.dim == other.dim && (self - other).expand_derived().is_zero()
    }

    /// Normal-ordered product, coefficients truncated by `order`.
    pub fn mul(&self, other: &WeylExpr, order: &GradedOrder) -> Result<WeylExpr> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = WeylExpr::zero(self.dim);
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                let coeff = order.truncate(&(ca * cb));
                if coeff.is_zero() {
                    continue;
                }
                for (p, k) in reorder(pa, pb) {
                    out.add_term(p, &coeff.scale(&GaussianRational::integer(k)));
                }
            }
        }
        Ok(out)
    }

    /// `[a, b] = ab − ba`, truncated.
    pub fn commutator(&self, other: &WeylExpr, order: &GradedOrder) -> Result<WeylExpr> {
        Ok(&self.mul(other, order)? - &other.mul(self, order)?)
    }

    /// Normal-orders a word of generators.
    pub fn normal_order(dim: usize, factors: &[Factor]) -> Result<WeylExpr> {
        let mut acc = WeylExpr::one(dim);
        let order = GradedOrder::unbounded();
        for f in factors {
            let next = match f {
                Factor::Coord(a) | Factor::Deriv(a) if *a >= dim => {
                    return Err(Error::DimensionMismatch(*a + 1, dim));
                }
                Factor::Coord(a) => WeylExpr::coord(dim, *a),
                Factor::Deriv(a) => WeylExpr::deriv(dim, *a),
                Factor::Scalar(s) => WeylExpr::scalar(dim, s.clone()),
            };
            acc = acc.mul(&next, &order)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, k: u32, order: &GradedOrder) -> WeylExpr {
        let mut acc = WeylExpr::one(self.dim);
        for _ in 0..k {
            acc = acc.mul(self, order).expect("same dimension");
        }
        acc
    }

    /// Formal adjoint: `r† = r`, `∂† = −∂`, coefficients conjugated, order
    /// reversed.
    pub fn adjoint(&self, order: &GradedOrder) -> WeylExpr {
        let mut out = WeylExpr::zero(self.dim);
        for (p, c) in &self.terms {
            let sign = if p.d_degree() % 2 == 0 { 1 } else { -1 };
            let d_part = WeylExpr::term(
                self.dim,
                c.conj().scale(&GaussianRational::integer(sign)),
                Powers {
                    r: vec![0; self.dim],
                    d: p.d.clone(),
                },
            );
            let r_part = WeylExpr::term(
                self.dim,
                Scalar::one(),
                Powers {
                    r: p.r.clone(),
                    d: vec![0; self.dim],
                },
            );
            out = &out + &d_part.mul(&r_part, order).expect("same dimension");
        }
        out
    }

    /// `[∂_α, ·]`: differentiates the coordinate dependence of every term.
    pub fn partial(&self, alpha: usize) -> WeylExpr {
        let mut out = WeylExpr::zero(self.dim);
        for (p, c) in &self.terms {
            let k = p.r[alpha];
            if k == 0 {
                continue;
            }
            let mut q = p.clone();
            q.r[alpha] -= 1;
            out.add_term(q, &c.scale(&GaussianRational::integer(k as i64)));
        }
        out
    }

    /// Acts on a coordinate polynomial: `(self ∘ f)` applied to the constant 1.
    pub fn apply(&self, f: &WeylExpr) -> Result<WeylExpr> {
        let prod = self.mul(f, &GradedOrder::unbounded())?;
        let mut out = WeylExpr::zero(self.dim);
        for (p, c) in &prod.terms {
            if p.d_degree() == 0 {
                out.add_term(p.clone(), c);
            }
        }
        Ok(out)
    }

    /// Substitutes each coordinate by a coordinate polynomial. Only defined
    /// for coordinate polynomials.
    pub fn substitute_coords(&self, subs: &[WeylExpr], order: &GradedOrder) -> Result<WeylExpr> {
        if subs.len() != self.dim {
            return Err(Error::DimensionMismatch(subs.len(), self.dim));
        }
        if !self.is_coordinate_polynomial() || subs.iter().any(|s| !s.is_coordinate_polynomial()) {
            return Err(Error::UnsupportedField(
                "substitution requires coordinate polynomials".to_string(),
            ));
        }
        let mut out = WeylExpr::zero(self.dim);
        for (p, c) in &self.terms {
            let mut acc = WeylExpr::scalar(self.dim, c.clone());
            for (alpha, k) in p.r.iter().enumerate() {
                acc = acc.mul(&subs[alpha].pow(*k, order), order)?;
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Deterministic text rendering, e.g. `(1 - 2*kappa)*x*d_y + i*hbar`.
    /// Terms are sorted by total degree, then by exponents.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(p, _)| p.r_degree() + p.d_degree());
        let parts: Vec<String> = ordered
            .into_iter()
            .map(|(p, c)| render_term(c, &word(p, "d_")))
            .collect();
        join_signed(&parts)
    }
}

fn word(p: &Powers, deriv_prefix: &str) -> String {
    let mut factors = Vec::new();
    for (a, k) in p.r.iter().enumerate() {
        push_power(&mut factors, COORD_NAMES[a].to_string(), *k);
    }
    for (a, k) in p.d.iter().enumerate() {
        push_power(
            &mut factors,
            format!("{deriv_prefix}{}", COORD_NAMES[a]),
            *k,
        );
    }
    factors.join("*")
}

pub(crate) fn push_power(factors: &mut Vec<String>, name: String, k: u32) {
    match k {
        0 => {}
        1 => factors.push(name),
        _ => factors.push(format!("{name}^{k}")),
    }
}

/// `coeff*word` with parentheses around multi-term coefficients.
pub(crate) fn render_term(c: &Scalar, word: &str) -> String {
    let text = c.render();
    if word.is_empty() {
        return if c.len() > 1 {
            format!("({text})")
        } else {
            text
        };
    }
    if c.is_one() {
        word.to_string()
    } else if c.len() > 1 {
        format!("({text})*{word}")
    } else if text == "-1" {
        format!("-{word}")
    } else {
        format!("{text}*{word}")
    }
}

pub(crate) fn join_signed(parts: &[String]) -> String {
    let mut out = String::new();
    for (i, part) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(part);
        } else if let Some(rest) = part.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(part);
        }
    }
    out
}

/// Expansion of `r^{a.r} ∂^{a.d} · r^{b.r} ∂^{b.d}` into normal-ordered words
/// with integer multiplicities, using
/// `∂^n r^m = Σ_k C(n,k) m!/(m−k)! r^{m−k} ∂^{n−k}` per coordinate.
fn reorder(a: &Powers, b: &Powers) -> Vec<(Powers, i64)> {
    let dim = a.r.len();
    let mut acc: Vec<(Powers, i64)> = vec![(
        Powers {
            r: a.r.clone(),
            d: b.d.clone(),
        },
        1,
    )];
    for alpha in 0..dim {
        let n = a.d[alpha];
        let m = b.r[alpha];
        let mut next = Vec::new();
        for (p, mult) in &acc {
            for k in 0..=n.min(m) {
                let weight = binomial(n, k) * falling(m, k);
                let mut q = p.clone();
                q.r[alpha] += m - k;
                q.d[alpha] += n - k;
                next.push((q, mult * weight));
            }
        }
        acc = next;
    }
    acc
}

fn binomial(n: u32, k: u32) -> i64 {
    let mut acc: i64 = 1;
    for j in 0..k as i64 {
        acc = acc * (n as i64 - j) / (j + 1);
    }
    acc
}

fn falling(m: u32, k: u32) -> i64 {
    (0..k as i64).map(|j| m as i64 - j).product()
}

impl fmt::Display for WeylExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &WeylExpr {
    type Output = WeylExpr;
    fn add(self, rhs: &WeylExpr) -> WeylExpr {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), c);
        }
        out
    }
}

impl Sub for &WeylExpr {
    type Output = WeylExpr;
    fn sub(self, rhs: &WeylExpr) -> WeylExpr {
        self + &(-rhs)
    }
}

impl Neg for &WeylExpr {
    type Output = WeylExpr;
    fn neg(self) -> WeylExpr {
        self.map_coeffs(|c| -c)
    }
}

impl Neg for WeylExpr {
    type Output = WeylExpr;
    fn neg(self) -> WeylExpr {
        -&self
    }
}

impl Add for WeylExpr {
    type Output = WeylExpr;
    fn add(self, rhs: WeylExpr) -> WeylExpr {
        &self + &rhs
    }
}

impl Sub for WeylExpr {
    type Output = WeylExpr;
    fn sub(self, rhs: WeylExpr) -> WeylExpr {
        &self - &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Factor::{Coord, Deriv};

    fn unbounded() -> GradedOrder {
        GradedOrder::unbounded()
    }

    fn x() -> WeylExpr {
        WeylExpr::coord(2, 0)
    }

    fn y() -> WeylExpr {
        WeylExpr::coord(2, 1)
    }

    fn dx() -> WeylExpr {
        WeylExpr::deriv(2, 0)
    }

    fn dy() -> WeylExpr {
        WeylExpr::deriv(2, 1)
    }

    fn m(a: &WeylExpr, b: &WeylExpr) -> WeylExpr {
        a.mul(b, &unbounded()).unwrap()
    }

    #[test]
    fn leibniz_rewrite() {
        let e = WeylExpr::normal_order(2, &[Deriv(0), Coord(0)]).unwrap();
        assert_eq!(e, &m(&x(), &dx()) + &WeylExpr::one(2));
        assert_eq!(e.render(), "1 + x*d_x");
        let xd = WeylExpr::normal_order(2, &[Coord(0), Deriv(0)]).unwrap();
        assert_eq!(xd, m(&x(), &dx()));
    }

    #[test]
    fn derivative_past_square() {
        let e = WeylExpr::normal_order(2, &[Deriv(0), Coord(0), Coord(0)]).unwrap();
        let x2 = m(&x(), &x());
        let expected = &m(&x2, &dx()) + &x().scale(&Scalar::integer(2));
        assert_eq!(e, expected);
        // acting on x³: ∂(x²·x³) = 5x⁴, and x²·3x² + 2x·x³ = 5x⁴
        let x3 = m(&x2, &x());
        let lhs = e.apply(&x3).unwrap();
        assert_eq!(lhs, m(&x3, &x()).scale(&Scalar::integer(5)));
    }

    #[test]
    fn mixed_product() {
        let a = m(&x(), &dy());
        let b = m(&y(), &dx());
        let got = m(&a, &b);
        let xy = m(&x(), &y());
        let expected = &m(&m(&xy, &dx()), &dy()) + &m(&x(), &dx());
        assert_eq!(got, expected);
    }

    #[test]
    fn canonical_pair() {
        let p = WeylExpr::momentum(2, 0);
        let c = p.commutator(&x(), &unbounded()).unwrap();
        let expected = Scalar::monomial(-GaussianRational::i(), &[(Symbol::Hbar, 1)]);
        assert_eq!(c.as_scalar(), Some(expected));
        assert!(p.commutator(&p, &unbounded()).unwrap().is_zero());
        assert_eq!(m(&WeylExpr::one(2), &p), p);
    }

    #[test]
    fn dimension_mismatch() {
        let a = WeylExpr::coord(3, 2);
        assert_eq!(
            a.mul(&x(), &unbounded()),
            Err(Error::DimensionMismatch(3, 2))
        );
        assert!(WeylExpr::normal_order(2, &[Coord(2)]).is_err());
    }

    #[test]
    fn adjoint_of_momentum_and_mixed_word() {
        let p = WeylExpr::momentum(2, 0);
        assert_eq!(p.adjoint(&unbounded()), p);
        // (x ∂_x)† = −∂_x x = −x∂_x − 1
        let xd = m(&x(), &dx());
        assert_eq!(xd.adjoint(&unbounded()), -(&xd + &WeylExpr::one(2)));
        let xp = m(&x(), &p);
        let sym = &xp + &xp.adjoint(&unbounded());
        assert_eq!(sym.adjoint(&unbounded()), sym);
    }

    #[test]
    fn partial_and_substitution() {
        let f = &m(&x(), &x()).scale(&Scalar::sym(Symbol::B)) + &y();
        assert_eq!(
            f.partial(0),
            x().scale(&(Scalar::integer(2) * Scalar::sym(Symbol::B)))
        );
        let shifted = f
            .substitute_coords(&[&x() + &WeylExpr::one(2), y()], &unbounded())
            .unwrap();
        assert_eq!(shifted.constant_part(), Scalar::sym(Symbol::B));
    }

    #[test]
    fn rendering() {
        let c = Scalar::one() - Scalar::sym(Symbol::Kappa).scale(&GaussianRational::integer(2));
        let e = &m(&x(), &dy()).scale(&c) - &WeylExpr::scalar(2, Scalar::sym(Symbol::Hbar));
        assert_eq!(e.render(), "-hbar + (1 - 2*kappa)*x*d_y");
        assert_eq!(WeylExpr::zero(2).render(), "0");
        assert_eq!((-dx()).render(), "-d_x");
    }
}
