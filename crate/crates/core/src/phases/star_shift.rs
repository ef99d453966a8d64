use super::{DeformedGaugeField, Formulation};
use crate::error::Result;
use crate::scalars::{GaussianRational, GradedOrder, Scalar, Symbol};
use crate::weyl::{GaugeFieldSpec, WeylExpr};

const K_SYMBOLS: [Symbol; 3] = [Symbol::K1, Symbol::K2, Symbol::K3];

/// `θ^{αβ}` with the deformation confined to the first two axes.
pub(crate) fn theta_entry(alpha: usize, beta: usize) -> Scalar {
    match (alpha, beta) {
        (0, 1) => Scalar::sym(Symbol::Theta),
        (1, 0) => -Scalar::sym(Symbol::Theta),
        _ => Scalar::zero(),
    }
}

/// `Ã_α = A_α − (1/2ħ) θ^{βσ}(ħk_σ + ρA_σ) ∂_β A_α` with free kinetic
/// momentum eigenvalues `k_σ`.
pub fn star_shift_potential(a: &GaugeFieldSpec, rho: &Scalar) -> Result<Vec<WeylExpr>> {
    let dim = a.dim();
    let order = GradedOrder::theta_first_order();
    let hbar = Scalar::sym(Symbol::Hbar);
    let half_inv_hbar = Scalar::monomial(GaussianRational::ratio(1, 2), &[(Symbol::Hbar, -1)]);
    let shifted_momentum: Vec<WeylExpr> = (0..dim)
        .map(|s| {
            &WeylExpr::scalar(dim, &hbar * &Scalar::sym(K_SYMBOLS[s]))
                + &a.components()[s].scale(rho)
        })
        .collect();
    let mut out = Vec::with_capacity(dim);
    for al in 0..dim {
        let mut e = a.components()[al].clone();
        for be in 0..dim {
            let grad = a.components()[al].partial(be);
            if grad.is_zero() {
                continue;
            }
            for (s, q) in shifted_momentum.iter().enumerate() {
                let th = theta_entry(be, s);
                if th.is_zero() {
                    continue;
                }
                let term = q.mul(&grad, &order)?.scale(&(&half_inv_hbar * &th));
                e = &e - &term;
            }
        }
        out.push(e.truncate(&order));
    }
    Ok(out)
}

/// The star-shift potential with the coupling absorbed, labelled as a
/// comparison output. Its phase depends on the particle momentum through `k`.
pub fn star_shift_gauge_field(a: &GaugeFieldSpec, rho: &Scalar) -> Result<DeformedGaugeField> {
    let components = star_shift_potential(a, rho)?
        .iter()
        .map(|c| c.scale(rho))
        .collect();
    Ok(DeformedGaugeField {
        components,
        region: a.region(),
        formulation: Formulation::StarShiftComparison,
        label: "comparison: star-shift formulation".to_string(),
    })
}
