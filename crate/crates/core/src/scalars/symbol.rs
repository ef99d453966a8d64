use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Named physical parameters of the formal-parameter ring.
///
/// The declaration order is the canonical order used for monomial sorting and
/// rendering. `Kappa`, `Lambda` and `Omega` are derived: each stands for a fixed
/// monomial in primitive symbols (see [`Symbol::expansion`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Symbol {
    Rho,
    RhoE,
    Charge,
    Mass,
    Mu,
    Dipole,
    LambdaE,
    LambdaM,
    EField,
    B,
    Area,
    Theta,
    K1,
    K2,
    K3,
    Level,
    Kappa,
    Lambda,
    Omega,
    C,
    Hbar,
    S1,
    S2,
}

pub const ALL_SYMBOLS: [Symbol; 23] = [
    Symbol::Rho,
    Symbol::RhoE,
    Symbol::Charge,
    Symbol::Mass,
    Symbol::Mu,
    Symbol::Dipole,
    Symbol::LambdaE,
    Symbol::LambdaM,
    Symbol::EField,
    Symbol::B,
    Symbol::Area,
    Symbol::Theta,
    Symbol::K1,
    Symbol::K2,
    Symbol::K3,
    Symbol::Level,
    Symbol::Kappa,
    Symbol::Lambda,
    Symbol::Omega,
    Symbol::C,
    Symbol::Hbar,
    Symbol::S1,
    Symbol::S2,
];

impl Symbol {
    pub fn name(self) -> &'static str {
        match self {
            Symbol::Rho => "rho",
            Symbol::RhoE => "rho_e",
            Symbol::Charge => "e",
            Symbol::Mass => "m",
            Symbol::Mu => "mu",
            Symbol::Dipole => "d",
            Symbol::LambdaE => "lambda_e",
            Symbol::LambdaM => "lambda_m",
            Symbol::EField => "E",
            Symbol::B => "B",
            Symbol::Area => "S",
            Symbol::Theta => "theta",
            Symbol::K1 => "k1",
            Symbol::K2 => "k2",
            Symbol::K3 => "k3",
            Symbol::Level => "n",
            Symbol::Kappa => "kappa",
            Symbol::Lambda => "lambda",
            Symbol::Omega => "omega",
            Symbol::C => "c",
            Symbol::Hbar => "hbar",
            Symbol::S1 => "s1",
            Symbol::S2 => "s2",
        }
    }

    pub fn is_derived(self) -> bool {
        matches!(self, Symbol::Kappa | Symbol::Lambda | Symbol::Omega)
    }

    /// Rational prefactor `(numerator, denominator)` and primitive exponents of a
    /// derived symbol: κ = eθB/4ħc, λ = mcE/B, ω = eB/mc.
    pub fn expansion(self) -> Option<((i64, i64), &'static [(Symbol, i32)])> {
        match self {
            Symbol::Kappa => Some((
                (1, 4),
                &[
                    (Symbol::Charge, 1),
                    (Symbol::B, 1),
                    (Symbol::Theta, 1),
                    (Symbol::C, -1),
                    (Symbol::Hbar, -1),
                ],
            )),
            Symbol::Lambda => Some((
                (1, 1),
                &[
                    (Symbol::Mass, 1),
                    (Symbol::EField, 1),
                    (Symbol::B, -1),
                    (Symbol::C, 1),
                ],
            )),
            Symbol::Omega => Some((
                (1, 1),
                &[
                    (Symbol::Charge, 1),
                    (Symbol::Mass, -1),
                    (Symbol::B, 1),
                    (Symbol::C, -1),
                ],
            )),
            _ => None,
        }
    }

    /// Exponent of the primitive symbol `primitive` carried by one power of `self`.
    pub fn content(self, primitive: Symbol) -> i32 {
        if self == primitive {
            return 1;
        }
        match self.expansion() {
            Some((_, exps)) => exps
                .iter()
                .find(|(s, _)| *s == primitive)
                .map_or(0, |(_, k)| *k),
            None => 0,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Symbol {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_SYMBOLS
            .iter()
            .copied()
            .find(|sym| sym.name() == s)
            .ok_or_else(|| format!("unknown symbol `{s}`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for sym in ALL_SYMBOLS {
            assert_eq!(sym.name().parse::<Symbol>().unwrap(), sym);
        }
        assert!("hbar2".parse::<Symbol>().is_err());
    }

    #[test]
    fn table_order_matches_declaration() {
        let mut sorted = ALL_SYMBOLS;
        sorted.sort();
        assert_eq!(sorted, ALL_SYMBOLS);
    }

    #[test]
    fn kappa_carries_one_theta() {
        assert_eq!(Symbol::Kappa.content(Symbol::Theta), 1);
        assert_eq!(Symbol::Kappa.content(Symbol::Charge), 1);
        assert_eq!(Symbol::Lambda.content(Symbol::Theta), 0);
        assert_eq!(Symbol::Omega.content(Symbol::Mass), -1);
        assert_eq!(Symbol::Theta.content(Symbol::Theta), 1);
    }
}
