//! Operator realizations of the deformed phase-space algebra and their
//! symbolic verification.

mod algebra;
mod conditions;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use algebra::{
    verify_algebra, verify_jacobi, AlgebraRelations, RelationCheck, VerificationReport,
};
pub use conditions::{check_conditions, ConditionsReport};

use crate::error::{Error, Result};
use crate::scalars::{GradedOrder, Scalar, Symbol};
use crate::weyl::{GaugeFieldSpec, WeylExpr};

pub(crate) const DIM: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RealizationKind {
    /// Covariant-derivative realization built from the gauge field.
    GeneralR1R2,
    /// Realization using only the field strength.
    GaugeInvariant,
    /// Hall realization without the second-order coupling terms.
    Hall1,
    /// Hall realization keeping the second-order coupling terms.
    Hall2,
    /// Hall realization from the field-strength form.
    Hall3,
}

pub const ALL_KINDS: [RealizationKind; 5] = [
    RealizationKind::GeneralR1R2,
    RealizationKind::GaugeInvariant,
    RealizationKind::Hall1,
    RealizationKind::Hall2,
    RealizationKind::Hall3,
];

pub const HALL_KINDS: [RealizationKind; 3] = [
    RealizationKind::Hall1,
    RealizationKind::Hall2,
    RealizationKind::Hall3,
];

impl RealizationKind {
    pub fn name(self) -> &'static str {
        match self {
            RealizationKind::GeneralR1R2 => "general_r1r2",
            RealizationKind::GaugeInvariant => "gauge_invariant",
            RealizationKind::Hall1 => "hall_1",
            RealizationKind::Hall2 => "hall_2",
            RealizationKind::Hall3 => "hall_3",
        }
    }

    pub fn is_hall(self) -> bool {
        matches!(
            self,
            RealizationKind::Hall1 | RealizationKind::Hall2 | RealizationKind::Hall3
        )
    }

    /// Whether the second-order coupling flag may be set explicitly.
    pub fn accepts_keep_flag(self) -> bool {
        matches!(self, RealizationKind::GeneralR1R2 | RealizationKind::Hall2)
    }
}

impl fmt::Display for RealizationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RealizationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ALL_KINDS
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnsupportedRealization(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealizationOptions {
    /// Keep the e²θ (ρ²θ) terms. Ignored by the Hall kinds, which fix it.
    pub keep_second_order_coupling: bool,
    /// Coupling ρ; the Hall setting is ρ = −e/c.
    pub coupling: Scalar,
}

impl Default for RealizationOptions {
    fn default() -> Self {
        RealizationOptions {
            keep_second_order_coupling: true,
            coupling: electron_coupling(),
        }
    }
}

impl RealizationOptions {
    pub fn keep(mut self, keep: bool) -> Self {
        self.keep_second_order_coupling = keep;
        self
    }

    pub fn with_coupling(mut self, rho: Scalar) -> Self {
        self.coupling = rho;
        self
    }
}

/// ρ = −e/c.
pub fn electron_coupling() -> Scalar {
    Scalar::monomial(
        crate::scalars::GaussianRational::integer(-1),
        &[(Symbol::Charge, 1), (Symbol::C, -1)],
    )
}

/// `θ^{αβ} = θ ε_{αβ}` with `ε₁₂ = +1`.
pub fn theta_matrix() -> [[Scalar; DIM]; DIM] {
    let t = Scalar::sym(Symbol::Theta);
    [[Scalar::zero(), t.clone()], [-t, Scalar::zero()]]
}

/// Pair `(r̂_α, p̂_α)` with its truncation policy.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    kind: RealizationKind,
    field: GaugeFieldSpec,
    keep_second_order_coupling: bool,
    coupling: Scalar,
    r_hat: Vec<WeylExpr>,
    p_hat: Vec<WeylExpr>,
    order: GradedOrder,
}

impl Realization {
    pub fn kind(&self) -> RealizationKind {
        self.kind
    }

    pub fn field(&self) -> &GaugeFieldSpec {
        &self.field
    }

    pub fn keeps_second_order_coupling(&self) -> bool {
        self.keep_second_order_coupling
    }

    pub fn coupling(&self) -> &Scalar {
        &self.coupling
    }

    pub fn r_hat(&self) -> &[WeylExpr] {
        &self.r_hat
    }

    pub fn p_hat(&self) -> &[WeylExpr] {
        &self.p_hat
    }

    pub fn order(&self) -> &GradedOrder {
        &self.order
    }

    pub fn dim(&self) -> usize {
        DIM
    }

    /// Same realization with replaced operators (used for mutation tests).
    pub fn with_operators(mut self, r_hat: Vec<WeylExpr>, p_hat: Vec<WeylExpr>) -> Self {
        self.r_hat = r_hat;
        self.p_hat = p_hat;
        self
    }

    /// The θ → 0 limit of the operators.
    pub fn undeformed(&self) -> (Vec<WeylExpr>, Vec<WeylExpr>) {
        (
            self.r_hat
                .iter()
                .map(|e| e.set_zero(Symbol::Theta))
                .collect(),
            self.p_hat
                .iter()
                .map(|e| e.set_zero(Symbol::Theta))
                .collect(),
        )
    }
}

/// Minimal-coupling pair `(r_α, −iħ∂_α − ρA_α)`.
pub fn minimal_coupling(
    field: &GaugeFieldSpec,
    coupling: &Scalar,
) -> (Vec<WeylExpr>, Vec<WeylExpr>) {
    let dim = field.dim();
    let r = (0..dim).map(|a| WeylExpr::coord(dim, a)).collect();
    let p = (0..dim)
        .map(|a| &WeylExpr::momentum(dim, a) - &field.components()[a].scale(coupling))
        .collect();
    (r, p)
}

/// Builds the operator pair for `kind`.
///
/// The Hall kinds are written directly in the symmetric gauge and require a
/// uniform field `F₁₂ = B`; the general kinds accept any field passing
/// [`check_conditions`].
pub fn build_realization(
    kind: RealizationKind,
    field: &GaugeFieldSpec,
    options: &RealizationOptions,
) -> Result<Realization> {
    if field.dim() != DIM {
        return Err(Error::UnsupportedDimension(field.dim()));
    }
    let report = check_conditions(field);
    if !report.pass {
        return Err(Error::ConditionsViolated(report.detail));
    }
    let strength = field
        .constant_strength()
        .ok_or_else(|| Error::ConditionsViolated("field strength is not constant".into()))?;
    let keep = match kind {
        RealizationKind::Hall1 => false,
        RealizationKind::Hall2 | RealizationKind::Hall3 | RealizationKind::GaugeInvariant => true,
        RealizationKind::GeneralR1R2 => options.keep_second_order_coupling,
    };
    let order = if keep {
        GradedOrder::theta_first_order()
    } else {
        GradedOrder::theta_first_order_drop_e2()
    };
    let coupling = if kind.is_hall() {
        electron_coupling()
    } else {
        options.coupling.clone()
    };
    let (r_hat, p_hat) = match kind {
        RealizationKind::GeneralR1R2 => covariant_pair(field, &strength, &coupling),
        RealizationKind::GaugeInvariant => field_strength_pair(&strength, &coupling),
        _ => {
            if strength[0][1] != Scalar::sym(Symbol::B) {
                return Err(Error::UnsupportedField(format!(
                    "{kind} requires the uniform field F12 = B, got {}",
                    strength[0][1]
                )));
            }
            hall_pair(kind)
        }
    };
    Ok(Realization {
        kind,
        field: field.clone(),
        keep_second_order_coupling: keep,
        coupling,
        r_hat: r_hat.iter().map(|e| e.truncate(&order)).collect(),
        p_hat: p_hat.iter().map(|e| e.truncate(&order)).collect(),
        order,
    })
}

fn hbar_inv_half() -> Scalar {
    Scalar::monomial(
        crate::scalars::GaussianRational::ratio(1, 2),
        &[(Symbol::Hbar, -1)],
    )
}

/// `p̂_α = D_α − (ρ/2ħ) F_{αβ} θ^{βγ} D_γ`, `r̂_α = r_α − (1/2ħ) θ_{αβ} D_β`.
fn covariant_pair(
    field: &GaugeFieldSpec,
    f: &[Vec<Scalar>],
    rho: &Scalar,
) -> (Vec<WeylExpr>, Vec<WeylExpr>) {
    let th = theta_matrix();
    let (r, d) = minimal_coupling(field, rho);
    let half = hbar_inv_half();
    let mut p_hat = Vec::new();
    let mut r_hat = Vec::new();
    for a in 0..DIM {
        let mut p = d[a].clone();
        let mut x = r[a].clone();
        for b in 0..DIM {
            for g in 0..DIM {
                let c = &(&(rho * &half) * &f[a][b]) * &th[b][g];
                p = &p - &d[g].scale(&c);
            }
            x = &x - &d[b].scale(&(&half * &th[a][b]));
        }
        p_hat.push(p);
        r_hat.push(x);
    }
    (r_hat, p_hat)
}

/// `p̂_α = −iħ∂_α + (ρ/2) F_{αβ}(r_β + 2iθ^{βγ}∂_γ)`,
/// `r̂_α = r_α − (1/2ħ) θ_{αβ}(−iħ∂_β − (ρ/2) F_{βγ} r_γ)`.
fn field_strength_pair(f: &[Vec<Scalar>], rho: &Scalar) -> (Vec<WeylExpr>, Vec<WeylExpr>) {
    let th = theta_matrix();
    let half_rho = rho * &Scalar::ratio(1, 2);
    let two_i = Scalar::i() * Scalar::integer(2);
    let inner_p: Vec<WeylExpr> = (0..DIM)
        .map(|b| {
            let mut e = WeylExpr::coord(DIM, b);
            for g in 0..DIM {
                e = &e + &WeylExpr::deriv(DIM, g).scale(&(&two_i * &th[b][g]));
            }
            e
        })
        .collect();
    let inner_r: Vec<WeylExpr> = (0..DIM)
        .map(|b| {
            let mut e = WeylExpr::momentum(DIM, b);
            for g in 0..DIM {
                e = &e - &WeylExpr::coord(DIM, g).scale(&(&half_rho * &f[b][g]));
            }
            e
        })
        .collect();
    let half = hbar_inv_half();
    let mut p_hat = Vec::new();
    let mut r_hat = Vec::new();
    for a in 0..DIM {
        let mut p = WeylExpr::momentum(DIM, a);
        let mut x = WeylExpr::coord(DIM, a);
        for b in 0..DIM {
            p = &p + &inner_p[b].scale(&(&half_rho * &f[a][b]));
            x = &x - &inner_r[b].scale(&(&half * &th[a][b]));
        }
        p_hat.push(p);
        r_hat.push(x);
    }
    (r_hat, p_hat)
}

/// The three Hall realizations in the symmetric gauge:
/// `p̂_i = a p_i − s (eB/2c) ε_{ij} r_j`, `r̂_i = u r_i − (θ/2ħ) ε_{ij} p_j`.
fn hall_pair(kind: RealizationKind) -> (Vec<WeylExpr>, Vec<WeylExpr>) {
    let kappa = Scalar::sym(Symbol::Kappa);
    let one = Scalar::one();
    let k = |n: i64| kappa.scale(&crate::scalars::GaussianRational::integer(n));
    let (a, s, u) = match kind {
        RealizationKind::Hall1 => (&one - &k(2), one.clone(), &one - &kappa),
        RealizationKind::Hall2 => (&one - &k(2), &one - &k(2), &one - &kappa),
        _ => (&one - &k(4), one.clone(), &one + &kappa),
    };
    let eb2c = Scalar::monomial(
        crate::scalars::GaussianRational::ratio(1, 2),
        &[(Symbol::Charge, 1), (Symbol::B, 1), (Symbol::C, -1)],
    );
    let theta2h = Scalar::monomial(
        crate::scalars::GaussianRational::ratio(1, 2),
        &[(Symbol::Theta, 1), (Symbol::Hbar, -1)],
    );
    let eps = [[0i64, 1], [-1, 0]];
    let mut p_hat = Vec::new();
    let mut r_hat = Vec::new();
    for i in 0..DIM {
        let mut p = WeylExpr::momentum(DIM, i).scale(&a);
        let mut x = WeylExpr::coord(DIM, i).scale(&u);
        for (j, e) in eps[i].iter().enumerate() {
            if *e == 0 {
                continue;
            }
            let sign = Scalar::integer(*e);
            p = &p - &WeylExpr::coord(DIM, j).scale(&(&(&s * &eb2c) * &sign));
            x = &x - &WeylExpr::momentum(DIM, j).scale(&(&theta2h * &sign));
        }
        p_hat.push(p);
        r_hat.push(x);
    }
    (r_hat, p_hat)
}
