use serde::Serialize;

use super::{PhaseKind, PhaseResult};
use crate::error::{Error, Result};
use crate::scalars::{ser_scalar, GaussianRational, Scalar, Symbol};

/// Dipoles along z with radial line sources: `∇·E = λ_e/s′` on a patch of
/// area `s′` and `∇·B = λ_m/s″` on a patch of area `s″`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DipoleConfig {
    #[serde(serialize_with = "ser_scalar")]
    pub mu: Scalar,
    #[serde(serialize_with = "ser_scalar")]
    pub d: Scalar,
    #[serde(serialize_with = "ser_scalar")]
    pub lambda_e: Scalar,
    #[serde(serialize_with = "ser_scalar")]
    pub lambda_m: Scalar,
    #[serde(serialize_with = "ser_scalar")]
    pub s1: Scalar,
    #[serde(serialize_with = "ser_scalar")]
    pub s2: Scalar,
}

impl Default for DipoleConfig {
    fn default() -> Self {
        Self::symbolic()
    }
}

impl DipoleConfig {
    pub fn symbolic() -> Self {
        DipoleConfig {
            mu: Scalar::sym(Symbol::Mu),
            d: Scalar::sym(Symbol::Dipole),
            lambda_e: Scalar::sym(Symbol::LambdaE),
            lambda_m: Scalar::sym(Symbol::LambdaM),
            s1: Scalar::sym(Symbol::S1),
            s2: Scalar::sym(Symbol::S2),
        }
    }

    /// No electric line source.
    pub fn ac() -> Self {
        DipoleConfig {
            lambda_e: Scalar::zero(),
            ..Self::symbolic()
        }
    }

    /// No magnetic line source.
    pub fn hmw() -> Self {
        DipoleConfig {
            lambda_m: Scalar::zero(),
            ..Self::symbolic()
        }
    }

    fn kind(&self) -> PhaseKind {
        match (self.lambda_e.is_zero(), self.lambda_m.is_zero()) {
            (true, false) => PhaseKind::Ac,
            (false, true) => PhaseKind::Hmw,
            _ => PhaseKind::Anandan,
        }
    }

    /// The two source patches with their coupled field strength `ρF₁₂`.
    pub fn patches(&self) -> Result<Vec<DipolePatch>> {
        let inv_c = Scalar::sym_pow(Symbol::C, -1);
        let inv = |s: &Scalar| {
            s.inv_single()
                .ok_or_else(|| Error::NotPerturbativelyInvertible(s.render()))
        };
        Ok(vec![
            DipolePatch {
                density: -&(&(&(&self.mu * &self.lambda_e) * &inv_c) * &inv(&self.s1)?),
                area: self.s1.clone(),
            },
            DipolePatch {
                density: &(&(&self.d * &self.lambda_m) * &inv_c) * &inv(&self.s2)?,
                area: self.s2.clone(),
            },
        ])
    }
}

/// Region of constant `ρF₁₂ = density` and the given area.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DipolePatch {
    #[serde(serialize_with = "ser_scalar")]
    pub density: Scalar,
    #[serde(serialize_with = "ser_scalar")]
    pub area: Scalar,
}

/// `Φ_A = (1/ħ) Σ_p ρF_p s_p` and its deformation.
///
/// The quadratic-in-F flux term is evaluated in the factorized patch model:
/// the total flux times the sum of patch densities, giving the factor
/// `1 − (θ/ħ) Σ_p ρF_p`.
pub fn anandan_phase(cfg: &DipoleConfig) -> Result<PhaseResult> {
    let inv_hbar = Scalar::sym_pow(Symbol::Hbar, -1);
    let patches = cfg.patches()?;
    let mut flux = Scalar::zero();
    let mut density_sum = Scalar::zero();
    for p in &patches {
        flux = &flux + &(&p.density * &p.area);
        density_sum = &density_sum + &p.density;
    }
    let base = &flux * &inv_hbar;
    let theta_over_hbar = Scalar::monomial(
        GaussianRational::one(),
        &[(Symbol::Theta, 1), (Symbol::Hbar, -1)],
    );
    let factor = &Scalar::one() - &(&theta_over_hbar * &density_sum);
    let absolute = &base * &factor;
    Ok(PhaseResult {
        kind: cfg.kind(),
        label: cfg.kind().name().to_string(),
        base,
        factor,
        absolute,
    })
}
