//! Effective classical Hamiltonians, the momentum-integrated deformed gauge
//! field and the loop phases built from it.

mod dipole;
mod numeric;
mod star_shift;

use serde::Serialize;

pub use dipole::{anandan_phase, DipoleConfig, DipolePatch};
pub use numeric::{enclosed_area, flux_form_value, loop_phase_numeric, Contour};
pub use star_shift::{star_shift_gauge_field, star_shift_potential};

use crate::error::{Error, Result};
use crate::realization::{Realization, RealizationKind};
use crate::scalars::{ser_scalar, GaussianRational, GradedOrder, Scalar, Symbol};
use crate::weyl::{classicalize, ClassicalPoly, Region, WeylExpr};

/// `H_eff = a_{αβ} p_α p_β + b_α p_α + c` with `a` coordinate-free.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticHamiltonian {
    pub a: Vec<Vec<Scalar>>,
    pub b: Vec<WeylExpr>,
    pub c: WeylExpr,
    pub order: GradedOrder,
    pub region: Region,
    pub label: String,
}

impl QuadraticHamiltonian {
    pub fn dim(&self) -> usize {
        self.b.len()
    }
}

/// How a deformed gauge field was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Formulation {
    /// Momentum integration of the effective Hamiltonian.
    PathIntegral,
    /// Coordinate shift by the kinetic-momentum eigenvalue. Comparison only.
    StarShiftComparison,
}

/// Deformed gauge field `𝒜_α` entering `Φ = (i/ħ)∮𝒜·dr`. The coupling is
/// already absorbed, so `𝒜 = ρA` at θ = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformedGaugeField {
    pub components: Vec<WeylExpr>,
    pub region: Region,
    pub formulation: Formulation,
    pub label: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PhaseKind {
    #[serde(rename = "AB")]
    Ab,
    Anandan,
    #[serde(rename = "AC")]
    Ac,
    #[serde(rename = "HMW")]
    Hmw,
}

impl PhaseKind {
    pub fn name(self) -> &'static str {
        match self {
            PhaseKind::Ab => "AB",
            PhaseKind::Anandan => "Anandan",
            PhaseKind::Ac => "AC",
            PhaseKind::Hmw => "HMW",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseResult {
    pub kind: PhaseKind,
    pub label: String,
    #[serde(serialize_with = "ser_scalar")]
    pub base: Scalar,
    #[serde(serialize_with = "ser_scalar")]
    pub factor: Scalar,
    #[serde(serialize_with = "ser_scalar")]
    pub absolute: Scalar,
}

fn realization_label(r: &Realization) -> String {
    match r.kind() {
        RealizationKind::GeneralR1R2 if r.keeps_second_order_coupling() => {
            "general_r1r2 (keep e2)".to_string()
        }
        RealizationKind::GeneralR1R2 => "general_r1r2 (drop e2)".to_string(),
        k => k.name().to_string(),
    }
}

/// Classical form of `p̂²/2m`, truncated at first order in θ.
pub fn effective_hamiltonian(r: &Realization) -> Result<QuadraticHamiltonian> {
    let dim = r.dim();
    let order = GradedOrder::theta_first_order();
    let inv_2m = Scalar::monomial(GaussianRational::ratio(1, 2), &[(Symbol::Mass, -1)]);
    let mut h = WeylExpr::zero(dim);
    for p in r.p_hat() {
        h = &h + &p.mul(p, &order)?.scale(&inv_2m);
    }
    let classical = classicalize(&h.truncate(&order)).truncate(&order);
    if classical.max_p_degree() > 2 {
        return Err(Error::NonQuadratic(classical.render()));
    }
    let unit = |alpha: usize| {
        let mut v = vec![0u32; dim];
        v[alpha] += 1;
        v
    };
    let mut a = vec![vec![Scalar::zero(); dim]; dim];
    for al in 0..dim {
        for be in 0..dim {
            let mut pp = unit(al);
            pp[be] += 1;
            let coeff = classical.momentum_coeff(&pp);
            let s = coeff
                .as_scalar()
                .ok_or_else(|| Error::CoordinateDependentMass(coeff.render()))?;
            a[al][be] = if al == be {
                s
            } else {
                s.scale(&GaussianRational::ratio(1, 2))
            };
        }
    }
    let b = (0..dim)
        .map(|al| classical.momentum_coeff(&unit(al)).to_coordinate_expr())
        .collect();
    let c = classical.momentum_coeff(&vec![0; dim]).to_coordinate_expr();
    Ok(QuadraticHamiltonian {
        a,
        b,
        c,
        order,
        region: r.field().region(),
        label: realization_label(r),
    })
}

fn det(m: &[Vec<Scalar>], order: &GradedOrder) -> Scalar {
    match m.len() {
        1 => m[0][0].clone(),
        2 => order.truncate(&(&(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]))),
        n => {
            let mut total = Scalar::zero();
            for j in 0..n {
                let c = cofactor(m, 0, j, order);
                total = &total + &(&m[0][j] * &c);
            }
            order.truncate(&total)
        }
    }
}

fn cofactor(m: &[Vec<Scalar>], i: usize, j: usize, order: &GradedOrder) -> Scalar {
    let minor: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .filter(|(r, _)| *r != i)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(c, _)| *c != j)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect();
    let d = det(&minor, order);
    if (i + j) % 2 == 0 {
        d
    } else {
        -d
    }
}

/// `a⁻¹` through the adjugate and the perturbative reciprocal of `det a`.
pub fn invert_matrix(m: &[Vec<Scalar>], order: &GradedOrder) -> Result<Vec<Vec<Scalar>>> {
    let n = m.len();
    let inv_det = det(m, order).reciprocal(order)?;
    if n == 1 {
        return Ok(vec![vec![inv_det]]);
    }
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| order.mul(&cofactor(m, j, i, order), &inv_det))
                .collect()
        })
        .collect())
}

/// `𝒜_α = −½ a⁻¹_{αβ} b_β`, truncated.
pub fn deformed_gauge_field(q: &QuadraticHamiltonian) -> Result<DeformedGaugeField> {
    let inv = invert_matrix(&q.a, &q.order)?;
    let minus_half = Scalar::ratio(-1, 2);
    let components = (0..q.dim())
        .map(|al| {
            let mut e = WeylExpr::zero(q.dim());
            for (be, b) in q.b.iter().enumerate() {
                e = &e + &b.scale(&(&minus_half * &inv[al][be]));
            }
            e.truncate(&q.order)
        })
        .collect();
    Ok(DeformedGaugeField {
        components,
        region: q.region,
        formulation: Formulation::PathIntegral,
        label: q.label.clone(),
    })
}

/// Checks `a·(−2𝒜) = b` after truncation.
pub fn gauge_field_identity(q: &QuadraticHamiltonian, f: &DeformedGaugeField) -> bool {
    (0..q.dim()).all(|al| {
        let mut lhs = WeylExpr::zero(q.dim());
        for (be, comp) in f.components.iter().enumerate() {
            lhs = &lhs + &comp.scale(&(&q.a[al][be] * &Scalar::integer(-2)));
        }
        lhs.truncate(&q.order)
            .equivalent(&q.b[al].truncate(&q.order))
    })
}

/// Coefficients `(c_α, m_αβ)` of a field `𝒜_α = c_α + m_αβ r_β`.
pub(crate) fn linear_parts(f: &DeformedGaugeField) -> Result<(Vec<Scalar>, Vec<Vec<Scalar>>)> {
    let dim = f.components.len();
    let zero = vec![0u32; dim];
    let mut consts = Vec::new();
    let mut lin = Vec::new();
    for comp in &f.components {
        if !comp.is_coordinate_polynomial() || comp.max_r_degree() > 1 {
            return Err(Error::NonLinearField(comp.render()));
        }
        consts.push(comp.coeff_of(&zero, &zero));
        lin.push(
            (0..dim)
                .map(|b| {
                    let mut r = zero.clone();
                    r[b] = 1;
                    comp.coeff_of(&r, &zero)
                })
                .collect(),
        );
    }
    Ok((consts, lin))
}

/// `Φ = (i/ħ)(∂₁𝒜₂ − ∂₂𝒜₁)·S` with `S` the enclosed flux area, and its factor
/// relative to the θ → 0 value.
pub fn loop_phase_flux(f: &DeformedGaugeField) -> Result<PhaseResult> {
    if f.components.len() < 2 {
        return Err(Error::UnsupportedDimension(f.components.len()));
    }
    let (_, lin) = linear_parts(f)?;
    let curl = &lin[1][0] - &lin[0][1];
    let i_over_hbar = Scalar::monomial(GaussianRational::i(), &[(Symbol::Hbar, -1)]);
    let absolute = &(&i_over_hbar * &curl) * &Scalar::sym(Symbol::Area);
    let base = absolute.set_zero(Symbol::Theta);
    let factor = if base.is_zero() {
        if !absolute.is_zero() {
            return Err(Error::NotPerturbativelyInvertible(base.render()));
        }
        Scalar::one()
    } else {
        absolute
            .div_single(&base)
            .ok_or_else(|| Error::NotPerturbativelyInvertible(base.render()))?
    };
    Ok(PhaseResult {
        kind: PhaseKind::Ab,
        label: f.label.clone(),
        base,
        factor,
        absolute,
    })
}

/// Full pipeline: realization → effective Hamiltonian → `𝒜` → flux phase.
pub fn ab_phase(r: &Realization) -> Result<PhaseResult> {
    let q = effective_hamiltonian(r)?;
    loop_phase_flux(&deformed_gauge_field(&q)?)
}

/// `Φ_AB = −ieBS/ħc`, i.e. `−2πi·BS/Φ₀` with `Φ₀ = hc/e`.
pub fn ab_base_phase() -> Scalar {
    Scalar::monomial(
        -GaussianRational::i(),
        &[
            (Symbol::Charge, 1),
            (Symbol::B, 1),
            (Symbol::Area, 1),
            (Symbol::Hbar, -1),
            (Symbol::C, -1),
        ],
    )
}

/// `H_eff` rendered in classical variables.
pub fn render_effective(q: &QuadraticHamiltonian) -> String {
    let mut poly = ClassicalPoly::zero(q.dim());
    for al in 0..q.dim() {
        for be in 0..q.dim() {
            let pa = ClassicalPoly::momentum(q.dim(), al);
            let pb = ClassicalPoly::momentum(q.dim(), be);
            poly = &poly + &pa.mul(&pb, &q.order).scale(&q.a[al][be]);
        }
        let b = ClassicalPoly::from_coordinate_expr(&q.b[al]);
        poly = &poly + &b.mul(&ClassicalPoly::momentum(q.dim(), al), &q.order);
    }
    poly = &poly + &ClassicalPoly::from_coordinate_expr(&q.c);
    poly.render()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::{build_realization, RealizationOptions};
    use crate::scalars::mono;
    use crate::weyl::GaugeFieldSpec;

    fn realization(kind: RealizationKind, keep: bool) -> Realization {
        build_realization(
            kind,
            &GaugeFieldSpec::solenoid(1.0),
            &RealizationOptions::default().keep(keep),
        )
        .unwrap()
    }

    /// `eθB/2ħc`.
    fn half_k() -> Scalar {
        mono(
            1,
            2,
            &[
                (Symbol::Charge, 1),
                (Symbol::Theta, 1),
                (Symbol::B, 1),
                (Symbol::Hbar, -1),
                (Symbol::C, -1),
            ],
        )
    }

    fn one_plus(s: &Scalar) -> Scalar {
        &Scalar::one() + s
    }

    #[test]
    fn dropped_coupling_coefficients() {
        // a = (1/2m)(1 − eFθ/2ħc)², b_i = (e/mc)(1 − eFθ/2ħc) A_i
        let q = effective_hamiltonian(&realization(RealizationKind::GeneralR1R2, false)).unwrap();
        let o = GradedOrder::theta_first_order();
        let w = &Scalar::one() - &half_k();
        let a_exp = o.truncate(&(&mono(1, 2, &[(Symbol::Mass, -1)]) * &(&w * &w)));
        assert!(q.a[0][0].equivalent(&a_exp));
        assert!(q.a[1][1].equivalent(&a_exp));
        assert!(q.a[0][1].is_zero() && q.a[1][0].is_zero());
        let field = GaugeFieldSpec::uniform_b();
        let e_mc = mono(
            1,
            1,
            &[(Symbol::Charge, 1), (Symbol::Mass, -1), (Symbol::C, -1)],
        );
        for i in 0..2 {
            let b_exp = field.components()[i].scale(&(&e_mc * &w)).truncate(&o);
            assert!(q.b[i].equivalent(&b_exp), "{} vs {}", q.b[i], b_exp);
        }
    }

    #[test]
    fn field_strength_coefficients() {
        // a = (1/2m)(1 − eFθ/ħc)², b_i = −(eB/2mc)(1 − eFθ/ħc) ε_ij r_j
        let q = effective_hamiltonian(&realization(RealizationKind::GaugeInvariant, true)).unwrap();
        let o = GradedOrder::theta_first_order();
        let w = &Scalar::one() - &(&half_k() * &Scalar::integer(2));
        let a_exp = o.truncate(&(&mono(1, 2, &[(Symbol::Mass, -1)]) * &(&w * &w)));
        assert!(q.a[0][0].equivalent(&a_exp));
        let pref = &mono(
            -1,
            2,
            &[
                (Symbol::Charge, 1),
                (Symbol::B, 1),
                (Symbol::Mass, -1),
                (Symbol::C, -1),
            ],
        ) * &w;
        let bx = WeylExpr::coord(2, 1).scale(&pref).truncate(&o);
        let by = WeylExpr::coord(2, 0).scale(&-&pref).truncate(&o);
        assert!(q.b[0].equivalent(&bx));
        assert!(q.b[1].equivalent(&by));
    }

    #[test]
    fn undeformed_is_minimal_coupling() {
        let q = effective_hamiltonian(&realization(RealizationKind::GeneralR1R2, true)).unwrap();
        let a0 = q.a[0][0].set_zero(Symbol::Theta);
        assert_eq!(a0, mono(1, 2, &[(Symbol::Mass, -1)]));
        let field = GaugeFieldSpec::uniform_b();
        let e_mc = mono(
            1,
            1,
            &[(Symbol::Charge, 1), (Symbol::Mass, -1), (Symbol::C, -1)],
        );
        assert!(q.b[0]
            .set_zero(Symbol::Theta)
            .equivalent(&field.components()[0].scale(&e_mc)));
    }

    #[test]
    fn gauge_field_from_coefficients() {
        let q = effective_hamiltonian(&realization(RealizationKind::GeneralR1R2, false)).unwrap();
        let f = deformed_gauge_field(&q).unwrap();
        assert!(gauge_field_identity(&q, &f));
        let minus_e_c = mono(-1, 1, &[(Symbol::Charge, 1), (Symbol::C, -1)]);
        let field = GaugeFieldSpec::uniform_b();
        let exp = field.components()[0].scale(&(&minus_e_c * &one_plus(&half_k())));
        assert!(f.components[0].equivalent(&exp.truncate(&q.order)));

        let q2 = effective_hamiltonian(&realization(RealizationKind::GeneralR1R2, true)).unwrap();
        let f2 = deformed_gauge_field(&q2).unwrap();
        assert!(gauge_field_identity(&q2, &f2));
        assert!(f2.components[1].equivalent(&field.components()[1].scale(&minus_e_c)));
    }

    #[test]
    fn zero_b_gives_zero_field() {
        let q = QuadraticHamiltonian {
            a: vec![
                vec![Scalar::one(), Scalar::zero()],
                vec![Scalar::zero(), Scalar::one()],
            ],
            b: vec![WeylExpr::zero(2), WeylExpr::zero(2)],
            c: WeylExpr::zero(2),
            order: GradedOrder::theta_first_order(),
            region: Region::Uniform,
            label: "free".into(),
        };
        let f = deformed_gauge_field(&q).unwrap();
        assert!(f.components.iter().all(WeylExpr::is_zero));
        let p = loop_phase_flux(&f).unwrap();
        assert!(p.absolute.is_zero() && p.factor.is_one());
    }

    #[test]
    fn ab_factors() {
        let hk = half_k();
        let cases = [
            (RealizationKind::GeneralR1R2, false, one_plus(&hk)),
            (RealizationKind::GeneralR1R2, true, Scalar::one()),
            (
                RealizationKind::GaugeInvariant,
                true,
                one_plus(&(&hk * &Scalar::integer(2))),
            ),
        ];
        for (kind, keep, expected) in cases {
            let p = ab_phase(&realization(kind, keep)).unwrap();
            assert_eq!(p.base, ab_base_phase(), "{kind}");
            assert!(p.factor.equivalent(&expected), "{kind}: {}", p.factor);
            assert!(p.factor.set_zero(Symbol::Theta).is_one());
        }
    }

    #[test]
    fn ab_factor_ordering() {
        let f = |kind, keep| ab_phase(&realization(kind, keep)).unwrap().factor;
        let one = Scalar::one();
        let drop = f(RealizationKind::GeneralR1R2, false);
        let keep = f(RealizationKind::GeneralR1R2, true);
        let gi = f(RealizationKind::GaugeInvariant, true);
        assert!(keep.is_one());
        assert!((&gi - &one).equivalent(&(&(&drop - &one) * &Scalar::integer(2))));
    }

    #[test]
    fn non_invertible_mass_matrix() {
        let q = QuadraticHamiltonian {
            a: vec![
                vec![Scalar::sym(Symbol::Theta), Scalar::zero()],
                vec![Scalar::zero(), Scalar::one()],
            ],
            b: vec![WeylExpr::coord(2, 1), WeylExpr::zero(2)],
            c: WeylExpr::zero(2),
            order: GradedOrder::theta_first_order(),
            region: Region::Uniform,
            label: "singular".into(),
        };
        assert!(matches!(
            deformed_gauge_field(&q),
            Err(Error::NotPerturbativelyInvertible(_))
        ));
    }

    #[test]
    fn quadratic_field_rejected() {
        let o = GradedOrder::unbounded();
        let x = WeylExpr::coord(2, 0);
        let f = DeformedGaugeField {
            components: vec![WeylExpr::zero(2), x.mul(&x, &o).unwrap()],
            region: Region::Uniform,
            formulation: Formulation::PathIntegral,
            label: "quadratic".into(),
        };
        assert!(matches!(loop_phase_flux(&f), Err(Error::NonLinearField(_))));
    }
}
