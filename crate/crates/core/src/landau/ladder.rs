use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{GaussianRational, Scalar, Symbol};

/// Generators of the two commuting oscillator sectors. The declaration order
/// is the normal order: creation operators left of annihilation operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LadderOp {
    BDag,
    DDag,
    B,
    D,
}

impl LadderOp {
    fn name(self) -> &'static str {
        match self {
            LadderOp::BDag => "b†",
            LadderOp::DDag => "d†",
            LadderOp::B => "b",
            LadderOp::D => "d",
        }
    }
}

/// Polynomial in `b, b†, d, d†` with `[b, b†] = comm_bb`, `[d, d†] = comm_dd`
/// and all cross commutators zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderExpr {
    terms: BTreeMap<Vec<LadderOp>, Scalar>,
    comm_bb: Scalar,
    comm_dd: Scalar,
}

impl LadderExpr {
    /// Zero expression with `[b, b†] = comm_bb` and `[d, d†] = −comm_bb`.
    pub fn zero(comm_bb: Scalar) -> Self {
        LadderExpr {
            terms: BTreeMap::new(),
            comm_dd: -&comm_bb,
            comm_bb,
        }
    }

    pub fn constant(c: Scalar, comm_bb: Scalar) -> Self {
        Self::word(c, Vec::new(), comm_bb)
    }

    pub fn word(c: Scalar, word: Vec<LadderOp>, comm_bb: Scalar) -> Self {
        let mut e = Self::zero(comm_bb);
        e.add_term(word, &c);
        e.normal_ordered()
    }

    pub fn comm_bb(&self) -> &Scalar {
        &self.comm_bb
    }

    pub fn comm_dd(&self) -> &Scalar {
        &self.comm_dd
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<LadderOp>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[LadderOp]) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, word: Vec<LadderOp>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let sum = self.coeff(&word) + c;
        if sum.is_zero() {
            self.terms.remove(&word);
        } else {
            self.terms.insert(word, sum);
        }
    }

    fn bracket(&self, a: LadderOp, b: LadderOp) -> Scalar {
        match (a, b) {
            (LadderOp::B, LadderOp::BDag) => self.comm_bb.clone(),
            (LadderOp::BDag, LadderOp::B) => -&self.comm_bb,
            (LadderOp::D, LadderOp::DDag) => self.comm_dd.clone(),
            (LadderOp::DDag, LadderOp::D) => -&self.comm_dd,
            _ => Scalar::zero(),
        }
    }

    /// Rewrites every word into normal order using `XY = YX + [X, Y]`.
    pub fn normal_ordered(&self) -> LadderExpr {
        let mut out = LadderExpr::zero(self.comm_bb.clone());
        let mut pending: Vec<(Vec<LadderOp>, Scalar)> = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        while let Some((word, c)) = pending.pop() {
            match word.windows(2).position(|w| w[0] > w[1]) {
                None => out.add_term(word, &c),
                Some(i) => {
                    let mut swapped = word.clone();
                    swapped.swap(i, i + 1);
                    pending.push((swapped, c.clone()));
                    let k = self.bracket(word[i], word[i + 1]);
                    if !k.is_zero() {
                        let mut shorter = word[..i].to_vec();
                        shorter.extend_from_slice(&word[i + 2..]);
                        pending.push((shorter, &c * &k));
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &LadderExpr) -> LadderExpr {
        let mut out = LadderExpr::zero(self.comm_bb.clone());
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.add_term(w, &(ca * cb));
            }
        }
        out.normal_ordered()
    }

    pub fn add(&self, other: &LadderExpr) -> LadderExpr {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> LadderExpr {
        let mut out = LadderExpr::zero(self.comm_bb.clone());
        for (w, v) in &self.terms {
            out.add_term(w.clone(), &(v * c));
        }
        out
    }

    pub fn expand_derived(&self) -> LadderExpr {
        let mut out = LadderExpr::zero(self.comm_bb.clone());
        for (w, v) in &self.terms {
            out.add_term(w.clone(), &v.expand_derived());
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(w, _)| w.len());
        let parts: Vec<String> = ordered
            .into_iter()
            .map(|(w, c)| {
                let word: Vec<&str> = w.iter().map(|o| o.name()).collect();
                crate::weyl::render_term(c, &word.join("*"))
            })
            .collect();
        crate::weyl::join_signed(&parts)
    }
}

impl fmt::Display for LadderExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `n(n−1)…(n−k+1)` in the level symbol `n`.
fn falling_level(k: usize) -> Scalar {
    let n = Scalar::sym(Symbol::Level);
    (0..k).fold(Scalar::one(), |acc, j| {
        &acc * &(&n - &Scalar::constant(GaussianRational::integer(j as i64)))
    })
}

/// `⟨n| l |n⟩` in the `b`-sector number state with symbolic level `n`:
/// `⟨n|b†^j b^k|n⟩ = δ_jk (comm_bb)^k n!/(n−k)!`.
pub fn expectation_number_state(l: &LadderExpr) -> Result<Scalar> {
    let mut total = Scalar::zero();
    for (word, c) in l.normal_ordered().terms() {
        if word
            .iter()
            .any(|o| matches!(o, LadderOp::D | LadderOp::DDag))
        {
            return Err(Error::NotInLadderSpan(format!(
                "number-state expectation needs b-sector words only: {}",
                l.render()
            )));
        }
        let j = word.iter().filter(|o| **o == LadderOp::BDag).count();
        let k = word.len() - j;
        if j == k {
            total = &total + &(c * &(&l.comm_bb.pow(k as u32) * &falling_level(k)));
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use LadderOp::*;

    fn cbb() -> Scalar {
        Scalar::sym(Symbol::Omega)
    }

    #[test]
    fn annihilator_past_creator() {
        let e = LadderExpr::word(Scalar::one(), vec![B, BDag], cbb());
        assert_eq!(e.coeff(&[BDag, B]), Scalar::one());
        assert_eq!(e.coeff(&[]), cbb());
        let d = LadderExpr::word(Scalar::one(), vec![D, DDag], cbb());
        assert_eq!(d.coeff(&[]), -cbb());
        let cross = LadderExpr::word(Scalar::one(), vec![B, DDag], cbb());
        assert_eq!(cross.coeff(&[DDag, B]), Scalar::one());
        assert_eq!(cross.coeff(&[]), Scalar::zero());
    }

    #[test]
    fn number_state_rules() {
        let b = LadderExpr::word(Scalar::one(), vec![B], cbb());
        assert!(expectation_number_state(&b).unwrap().is_zero());
        let n = LadderExpr::word(Scalar::one(), vec![BDag, B], cbb());
        assert_eq!(
            expectation_number_state(&n).unwrap(),
            &Scalar::sym(Symbol::Level) * &cbb()
        );
        let one = LadderExpr::constant(Scalar::one(), cbb());
        assert_eq!(expectation_number_state(&one).unwrap(), Scalar::one());
        // b b† = b†b + c  →  (n + 1) c
        let bbd = LadderExpr::word(Scalar::one(), vec![B, BDag], cbb());
        let expected = &(&Scalar::sym(Symbol::Level) + &Scalar::one()) * &cbb();
        assert_eq!(expectation_number_state(&bbd).unwrap(), expected);
        let d = LadderExpr::word(Scalar::one(), vec![D], cbb());
        assert!(expectation_number_state(&d).is_err());
    }
}
