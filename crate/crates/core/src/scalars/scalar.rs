use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;

use super::rational::GaussianRational;
use super::symbol::Symbol;
use crate::error::{Error, Result};

/// Numeric parameter assignment used to evaluate scalars.
pub type ParamValues = BTreeMap<Symbol, f64>;

/// Product of integer powers of symbols, kept sorted with no zero exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Symbol, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn symbol(sym: Symbol) -> Self {
        Monomial(vec![(sym, 1)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (Symbol, i32)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<Symbol, i32> = BTreeMap::new();
        for (s, k) in pairs {
            *acc.entry(s).or_insert(0) += k;
        }
        Monomial(acc.into_iter().filter(|(_, k)| *k != 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Symbol, i32)> + '_ {
        self.0.iter().copied()
    }

    pub fn exponent(&self, sym: Symbol) -> i32 {
        self.0
            .iter()
            .find(|(s, _)| *s == sym)
            .map_or(0, |(_, k)| *k)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_pairs(self.iter().chain(other.iter()))
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial::from_pairs(self.iter().map(|(s, e)| (s, e * k)))
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    /// Degree in a primitive symbol, counting what derived symbols carry
    /// (κ contributes one power of θ and one of e).
    pub fn effective_degree(&self, primitive: Symbol) -> i32 {
        self.iter().map(|(s, k)| k * s.content(primitive)).sum()
    }

    pub fn has_derived(&self) -> bool {
        self.iter().any(|(s, _)| s.is_derived())
    }

    /// Squared monomial root, if every exponent is even.
    pub fn sqrt(&self) -> Option<Monomial> {
        if self.iter().all(|(_, k)| k % 2 == 0) {
            Some(Monomial(self.iter().map(|(s, k)| (s, k / 2)).collect()))
        } else {
            None
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(s, k)| {
                if k == 1 {
                    s.name().to_string()
                } else {
                    format!("{}^{}", s.name(), k)
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Exact element of the formal-parameter ring: a finite sum of Gaussian
/// rational coefficients times Laurent monomials.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Scalar {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::constant(GaussianRational::one())
    }

    pub fn i() -> Self {
        Scalar::constant(GaussianRational::i())
    }

    pub fn integer(n: i64) -> Self {
        Scalar::constant(GaussianRational::integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::constant(GaussianRational::ratio(num, den))
    }

    pub fn constant(c: GaussianRational) -> Self {
        Scalar::term(c, Monomial::one())
    }

    pub fn sym(s: Symbol) -> Self {
        Scalar::term(GaussianRational::one(), Monomial::symbol(s))
    }

    pub fn sym_pow(s: Symbol, k: i32) -> Self {
        Scalar::term(GaussianRational::one(), Monomial::from_pairs([(s, k)]))
    }

    /// Single term `c * Π s^k`.
    pub fn monomial(c: GaussianRational, pairs: &[(Symbol, i32)]) -> Self {
        Scalar::term(c, Monomial::from_pairs(pairs.iter().copied()))
    }

    pub fn term(c: GaussianRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Scalar { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussianRational)>>(iter: I) -> Self {
        let mut s = Scalar::zero();
        for (m, c) in iter {
            s.add_term(m, &c);
        }
        s
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
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

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// Coefficient of the empty monomial.
    pub fn constant_part(&self) -> GaussianRational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn single_term(&self) -> Option<(&Monomial, &GaussianRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Scalar {
        Scalar::from_terms(self.terms.iter().map(|(m, v)| (m.clone(), v * c)))
    }

    pub fn conj(&self) -> Scalar {
        Scalar::from_terms(self.terms.iter().map(|(m, v)| (m.clone(), v.conj())))
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact inverse of a single-term scalar.
    pub fn inv_single(&self) -> Option<Scalar> {
        let (m, c) = self.single_term()?;
        Some(Scalar::term(c.inv()?, m.inv()))
    }

    /// Exact division by a single-term scalar.
    pub fn div_single(&self, divisor: &Scalar) -> Option<Scalar> {
        Some(self * &divisor.inv_single()?)
    }

    /// Rewrites κ, λ and ω into primitive symbols.
    pub fn expand_derived(&self) -> Scalar {
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            if !m.has_derived() {
                out.add_term(m.clone(), c);
                continue;
            }
            let mut coeff = c.clone();
            let mut pairs: Vec<(Symbol, i32)> = Vec::new();
            for (s, k) in m.iter() {
                match s.expansion() {
                    Some(((num, den), exps)) => {
                        let q = BigRational::new(num.into(), den.into());
                        let factor = GaussianRational::real(q.pow(k));
                        coeff = &coeff * &factor;
                        pairs.extend(exps.iter().map(|(p, e)| (*p, e * k)));
                    }
                    None => pairs.push((s, k)),
                }
            }
            out.add_term(Monomial::from_pairs(pairs), &coeff);
        }
        out
    }

    /// Presentation helper: greedily folds primitive products back into κ and
    /// λ (and the product κλ = emEθ/4ħ). The result equals the input after
    /// [`Scalar::expand_derived`].
    pub fn contract_derived(&self) -> Scalar {
        const KAPPA: (i64, &[(Symbol, i32)]) = (
            4,
            &[
                (Symbol::Charge, 1),
                (Symbol::B, 1),
                (Symbol::Theta, 1),
                (Symbol::C, -1),
                (Symbol::Hbar, -1),
            ],
        );
        const LAMBDA: (i64, &[(Symbol, i32)]) = (
            1,
            &[
                (Symbol::Mass, 1),
                (Symbol::EField, 1),
                (Symbol::B, -1),
                (Symbol::C, 1),
            ],
        );
        const KAPPA_LAMBDA: (i64, &[(Symbol, i32)]) = (
            4,
            &[
                (Symbol::Charge, 1),
                (Symbol::Mass, 1),
                (Symbol::EField, 1),
                (Symbol::Theta, 1),
                (Symbol::Hbar, -1),
            ],
        );
        let patterns: [(&[(Symbol, i32)], i64, &[(Symbol, i32)]); 3] = [
            (KAPPA.1, KAPPA.0, &[(Symbol::Kappa, 1)]),
            (LAMBDA.1, LAMBDA.0, &[(Symbol::Lambda, 1)]),
            (
                KAPPA_LAMBDA.1,
                KAPPA_LAMBDA.0,
                &[(Symbol::Kappa, 1), (Symbol::Lambda, 1)],
            ),
        ];
        let expanded = self.expand_derived();
        let mut out = Scalar::zero();
        for (m, c) in expanded.terms() {
            let mut m = m.clone();
            let mut c = c.clone();
            for (pattern, factor, replacement) in patterns.iter() {
                loop {
                    let fits = pattern.iter().all(|(s, k)| {
                        let have = m.exponent(*s);
                        if *k > 0 {
                            have >= *k
                        } else {
                            have <= *k
                        }
                    });
                    if !fits {
                        break;
                    }
                    let removed = Monomial::from_pairs(pattern.iter().map(|(s, k)| (*s, -k)));
                    m = m
                        .mul(&removed)
                        .mul(&Monomial::from_pairs(replacement.iter().copied()));
                    c = &c * &GaussianRational::integer(*factor);
                }
            }
            out.add_term(m, &c);
        }
        out
    }

    /// Sets a primitive symbol to zero: drops every term that carries it
    /// (directly or through a derived symbol).
    ///
    /// Panics if a term carries a negative power of the symbol.
    pub fn set_zero(&self, sym: Symbol) -> Scalar {
        Scalar::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let deg = m.effective_degree(sym);
            assert!(
                deg >= 0,
                "cannot set {sym} to zero in a term with {sym}^{deg}"
            );
            (deg == 0).then(|| (m.clone(), c.clone()))
        }))
    }

    /// Floating evaluation after expanding derived symbols.
    pub fn substitute_numeric(&self, values: &ParamValues) -> Result<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in self.expand_derived().terms() {
            let mut v = c.to_complex();
            for (s, k) in m.iter() {
                let x = values
                    .get(&s)
                    .ok_or_else(|| Error::UnboundSymbol(s.name().to_string()))?;
                v *= x.powi(k);
            }
            total += v;
        }
        Ok(total)
    }

    /// Symbols occurring anywhere in the scalar.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = self
            .terms
            .keys()
            .flat_map(|m| m.iter().map(|(s, _)| s))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Equality of the primitive-symbol expansions.
    pub fn equivalent(&self, other: &Scalar) -> bool {
        (self - other).expand_derived().is_zero()
    }

    /// Canonical text rendering.
    ///
    /// Grammar: `sum := ["-"] term ((" + " | " - ") term)*`,
    /// `term := coeff | [coeff "*"] monomial`, `monomial := sym ["^" int] ("*" sym ["^" int])*`,
    /// `coeff := int ["/" int] | [rational "*"] "i" | "(" rational ("+"|"-") [rational "*"] "i" ")"`.
    /// Terms appear in canonical monomial order; zero renders as `0`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        // lower total degree first, then the canonical monomial order
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(m, _)| m.iter().map(|(_, k)| k.unsigned_abs()).sum::<u32>());
        let mut out = String::new();
        for (idx, (m, c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative_for_display();
            match (idx, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mag = c.render_magnitude();
            if m.is_one() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&m.to_string());
            } else {
                out.push_str(&mag);
                out.push('*');
                out.push_str(&m.to_string());
            }
        }
        out
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl From<GaussianRational> for Scalar {
    fn from(c: GaussianRational) -> Self {
        Scalar::constant(c)
    }
}

impl From<Symbol> for Scalar {
    fn from(s: Symbol) -> Self {
        Scalar::sym(s)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), -c)))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &Scalar) -> Scalar {
                (&self).$f(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
