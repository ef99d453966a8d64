use serde::Serialize;

use super::conditions::{check_conditions, ConditionsReport};
use super::{theta_matrix, Realization, RealizationKind, DIM};
use crate::error::{Error, Result};
use crate::scalars::{GaussianRational, GradedOrder, Scalar, Symbol};
use crate::weyl::WeylExpr;

/// Right-hand sides of the deformed commutation relations.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraRelations {
    /// `[r̂_α, r̂_β]`
    pub rr: Vec<Vec<WeylExpr>>,
    /// `[p̂_α, p̂_β]`
    pub pp: Vec<Vec<WeylExpr>>,
    /// `[r̂_α, p̂_β]`
    pub rp: Vec<Vec<WeylExpr>>,
    /// `[p̂_α, r̂_β]`
    pub pr: Vec<Vec<WeylExpr>>,
}

fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Scalar::zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

fn lift(m: Vec<Vec<Scalar>>) -> Vec<Vec<WeylExpr>> {
    m.into_iter()
        .map(|row| row.into_iter().map(|s| WeylExpr::scalar(DIM, s)).collect())
        .collect()
}

impl AlgebraRelations {
    /// `[r̂,r̂] = iθ`, `[p̂,p̂] = iħρF − iρ²FθF`, `[r̂,p̂] = iħδ − iρθF`,
    /// `[p̂,r̂] = −iħδ + iρFθ`, for a constant field strength `F`.
    pub fn general(f: &[Vec<Scalar>], rho: &Scalar) -> Self {
        let th: Vec<Vec<Scalar>> = theta_matrix().iter().map(|r| r.to_vec()).collect();
        let i = Scalar::i();
        let ih = &i * &Scalar::sym(Symbol::Hbar);
        let n = f.len();
        let delta = |a: usize, b: usize| {
            if a == b {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        };
        let theta_f = mat_mul(&th, f);
        let f_theta = mat_mul(f, &th);
        let f_theta_f = mat_mul(&f_theta, f);
        let rho2 = rho * rho;
        let build = |g: &dyn Fn(usize, usize) -> Scalar| -> Vec<Vec<Scalar>> {
            (0..n).map(|a| (0..n).map(|b| g(a, b)).collect()).collect()
        };
        AlgebraRelations {
            rr: lift(build(&|a, b| &i * &th[a][b])),
            pp: lift(build(&|a, b| {
                &(&(&ih * rho) * &f[a][b]) - &(&(&i * &rho2) * &f_theta_f[a][b])
            })),
            rp: lift(build(&|a, b| {
                &(&ih * &delta(a, b)) - &(&(&i * rho) * &theta_f[a][b])
            })),
            pr: lift(build(&|a, b| {
                &(&(-&ih) * &delta(a, b)) + &(&(&i * rho) * &f_theta[a][b])
            })),
        }
    }

    /// Planar Hall algebra: `[x̂,ŷ] = iθ`,
    /// `[p̂_i,p̂_j] = −(ieBħ/c)(1 − eBθ/ħc) ε_ij`, `[r̂_i,p̂_j] = iħ(1 − eθB/ħc) δ_ij`.
    pub fn hall() -> Self {
        let theta = Scalar::sym(Symbol::Theta);
        let ebt = Scalar::monomial(
            GaussianRational::one(),
            &[
                (Symbol::Charge, 1),
                (Symbol::B, 1),
                (Symbol::Theta, 1),
                (Symbol::Hbar, -1),
                (Symbol::C, -1),
            ],
        );
        let deform = &Scalar::one() - &ebt;
        let pp = &Scalar::monomial(
            -GaussianRational::i(),
            &[
                (Symbol::Charge, 1),
                (Symbol::B, 1),
                (Symbol::Hbar, 1),
                (Symbol::C, -1),
            ],
        ) * &deform;
        let rp = &Scalar::monomial(GaussianRational::i(), &[(Symbol::Hbar, 1)]) * &deform;
        let z = Scalar::zero;
        let i = Scalar::i();
        AlgebraRelations {
            rr: lift(vec![vec![z(), &i * &theta], vec![-(&i * &theta), z()]]),
            pp: lift(vec![vec![z(), pp.clone()], vec![-pp, z()]]),
            rp: lift(vec![vec![rp.clone(), z()], vec![z(), rp.clone()]]),
            pr: lift(vec![vec![-rp.clone(), z()], vec![z(), -rp]]),
        }
    }

    /// The relations a realization is meant to satisfy.
    pub fn for_realization(r: &Realization) -> Result<Self> {
        if r.kind().is_hall() {
            return Ok(Self::hall());
        }
        let f = r
            .field()
            .constant_strength()
            .ok_or_else(|| Error::ConditionsViolated("field strength is not constant".into()))?;
        Ok(Self::general(&f, r.coupling()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub residual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub kind: RealizationKind,
    pub order: String,
    pub relations: Vec<RelationCheck>,
    pub jacobi: Vec<RelationCheck>,
    pub conditions: ConditionsReport,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.conditions.pass
            && self.relations.iter().all(|c| c.pass)
            && self.jacobi.iter().all(|c| c.pass)
    }

    /// Merges the Jacobi results of `other` into this report.
    pub fn with_jacobi(mut self, other: VerificationReport) -> Self {
        self.jacobi = other.jacobi;
        self
    }
}

const NAMES: [&str; 2] = ["x", "y"];

fn generators(r: &Realization) -> Vec<(String, &WeylExpr)> {
    let mut out = Vec::new();
    for (a, e) in r.r_hat().iter().enumerate() {
        out.push((format!("r_{}", NAMES[a]), e));
    }
    for (a, e) in r.p_hat().iter().enumerate() {
        out.push((format!("p_{}", NAMES[a]), e));
    }
    out
}

fn check(
    name: String,
    expected: &WeylExpr,
    computed: &WeylExpr,
    order: &GradedOrder,
) -> RelationCheck {
    let expected = expected.expand_derived().truncate(order);
    let computed = computed.expand_derived().truncate(order);
    let residual = &computed - &expected;
    RelationCheck {
        name,
        expected: expected.render(),
        computed: computed.render(),
        residual: residual.render(),
        pass: residual.is_zero(),
    }
}

/// Computes every pairwise commutator of the realization and compares it
/// with `target` after truncation.
pub fn verify_algebra(r: &Realization, target: &AlgebraRelations) -> VerificationReport {
    let order = r.order();
    let mut relations = Vec::new();
    let blocks: [(&str, &str, &[WeylExpr], &[WeylExpr], &Vec<Vec<WeylExpr>>); 4] = [
        ("r", "r", r.r_hat(), r.r_hat(), &target.rr),
        ("p", "p", r.p_hat(), r.p_hat(), &target.pp),
        ("r", "p", r.r_hat(), r.p_hat(), &target.rp),
        ("p", "r", r.p_hat(), r.r_hat(), &target.pr),
    ];
    for (bi, (ln, rn, left, right, tgt)) in blocks.iter().enumerate() {
        for a in 0..DIM {
            for b in 0..DIM {
                if bi < 2 && a >= b {
                    continue;
                }
                let computed = left[a]
                    .commutator(&right[b], order)
                    .expect("realization operators share the dimension");
                let name = format!("[{ln}_{},{rn}_{}]", NAMES[a], NAMES[b]);
                relations.push(check(name, &tgt[a][b], &computed, order));
            }
        }
    }
    VerificationReport {
        kind: r.kind(),
        order: order.to_string(),
        relations,
        jacobi: Vec::new(),
        conditions: check_conditions(r.field()),
    }
}

/// Jacobi identity for every triple (with repetition) of generators.
pub fn verify_jacobi(r: &Realization) -> VerificationReport {
    let order = r.order();
    let gens = generators(r);
    let br = |a: &WeylExpr, b: &WeylExpr| a.commutator(b, order).expect("same dimension");
    let zero = WeylExpr::zero(DIM);
    let mut jacobi = Vec::new();
    for i in 0..gens.len() {
        for j in i..gens.len() {
            for k in j..gens.len() {
                let (a, b, c) = (gens[i].1, gens[j].1, gens[k].1);
                let total = &(&br(a, &br(b, c)) + &br(b, &br(c, a))) + &br(c, &br(a, b));
                let name = format!("jacobi({},{},{})", gens[i].0, gens[j].0, gens[k].0);
                jacobi.push(check(name, &zero, &total, order));
            }
        }
    }
    VerificationReport {
        kind: r.kind(),
        order: order.to_string(),
        relations: Vec::new(),
        jacobi,
        conditions: check_conditions(r.field()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::{build_realization, electron_coupling, RealizationOptions, ALL_KINDS};
    use crate::weyl::GaugeFieldSpec;

    fn build(kind: RealizationKind, keep: bool) -> Realization {
        let opts = RealizationOptions::default().keep(keep);
        build_realization(kind, &GaugeFieldSpec::uniform_b(), &opts).unwrap()
    }

    #[test]
    fn every_kind_satisfies_its_algebra() {
        for kind in ALL_KINDS {
            for keep in [true, false] {
                let r = build(kind, keep);
                let target = AlgebraRelations::for_realization(&r).unwrap();
                let report = verify_algebra(&r, &target).with_jacobi(verify_jacobi(&r));
                assert!(report.pass(), "{kind} keep={keep}: {report:#?}");
                assert_eq!(report.relations.len(), 10);
                assert_eq!(report.jacobi.len(), 20);
            }
        }
    }

    #[test]
    fn general_target_reduces_to_hall_target() {
        let f = GaugeFieldSpec::uniform_b().constant_strength().unwrap();
        let g = AlgebraRelations::general(&f, &electron_coupling());
        let h = AlgebraRelations::hall();
        for (a, b) in [
            (&g.rr, &h.rr),
            (&g.pp, &h.pp),
            (&g.rp, &h.rp),
            (&g.pr, &h.pr),
        ] {
            for i in 0..DIM {
                for j in 0..DIM {
                    assert!(a[i][j].equivalent(&b[i][j]), "{} vs {}", a[i][j], b[i][j]);
                }
            }
        }
    }

    #[test]
    fn symbolic_coupling_realizations() {
        let rho = Scalar::sym(Symbol::Rho);
        for kind in [
            RealizationKind::GeneralR1R2,
            RealizationKind::GaugeInvariant,
        ] {
            let opts = RealizationOptions::default().with_coupling(rho.clone());
            let r = build_realization(kind, &GaugeFieldSpec::uniform_b(), &opts).unwrap();
            let target = AlgebraRelations::for_realization(&r).unwrap();
            assert!(verify_algebra(&r, &target).pass(), "{kind}");
        }
    }

    #[test]
    fn flipped_sign_is_detected() {
        let r = build(RealizationKind::Hall2, true);
        let mut p = r.p_hat().to_vec();
        let x = WeylExpr::coord(DIM, 0);
        // negate the coordinate term of p̂_y
        let coeff = p[1].coeff_of(&[1, 0], &[0, 0]);
        p[1] = &p[1] - &x.scale(&(&coeff * &Scalar::integer(2)));
        let bad = r.clone().with_operators(r.r_hat().to_vec(), p);
        let report = verify_algebra(&bad, &AlgebraRelations::hall());
        assert!(!report.pass());
        assert!(report
            .relations
            .iter()
            .any(|c| c.name == "[p_x,p_y]" && !c.pass));
    }

    #[test]
    fn relation_pairs_are_consistent() {
        let h = AlgebraRelations::hall();
        for a in 0..DIM {
            for b in 0..DIM {
                assert!((&h.pr[a][b] + &h.rp[b][a]).is_zero());
                assert!((&h.pp[a][b] + &h.pp[b][a]).is_zero());
                assert!((&h.rr[a][b] + &h.rr[b][a]).is_zero());
            }
        }
    }
}
