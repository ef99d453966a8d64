use std::thread;

use num_complex::Complex64;

use super::report::{Check, Report, Row};
use super::{Command, PhaseConfig, RunConfig};
use crate::error::{Error, Result};
use crate::landau::{
    build_hall_hamiltonian, current_operator, expectation_number_state, express_in_ladder,
    hall_conductivity, to_canonical_landau, CanonicalLandauForm,
};
use crate::oracle::{commutator_residual, ladder_check, oracle_target, FockRep};
use crate::phases::{
    anandan_phase, deformed_gauge_field, effective_hamiltonian, flux_form_value,
    gauge_field_identity, loop_phase_flux, loop_phase_numeric, star_shift_gauge_field, Contour,
    DeformedGaugeField, DipoleConfig, PhaseResult,
};
use crate::realization::{
    build_realization, electron_coupling, verify_algebra, verify_jacobi, AlgebraRelations,
    Realization, RealizationKind, RealizationOptions, ALL_KINDS, HALL_KINDS,
};
use crate::scalars::{mono, GradedOrder, ParamValues, Scalar, Symbol};
use crate::weyl::{GaugeFieldSpec, WeylExpr};

const VERIFY_TOLERANCE: f64 = 1e-6;
const PHASE_TOLERANCE: f64 = 1e-8;

pub fn run(cfg: &RunConfig) -> Result<Report> {
    match cfg.command {
        Command::Verify => run_verify(cfg),
        Command::Table1 => run_table1(cfg),
        Command::Phase => run_phase(cfg),
    }
}

fn zero_theta(s: &Scalar) -> Scalar {
    s.set_zero(Symbol::Theta).set_zero(Symbol::Kappa)
}

fn zero_theta_expr(e: &WeylExpr) -> WeylExpr {
    e.set_zero(Symbol::Theta).set_zero(Symbol::Kappa)
}

fn zero_theta_table(t: &[Vec<WeylExpr>]) -> Vec<Vec<WeylExpr>> {
    t.iter().map(|row| row.iter().map(zero_theta_expr).collect()).collect()
}

fn zero_theta_form(f: &CanonicalLandauForm) -> CanonicalLandauForm {
    f.set_zero(Symbol::Theta).set_zero(Symbol::Kappa)
}

fn options(kind: RealizationKind, keep: bool) -> RealizationOptions {
    RealizationOptions::default().keep(keep || kind != RealizationKind::GeneralR1R2)
}

/// `computed` must reduce to the scalar `expected`.
fn operator_is_scalar(name: String, expected: &Scalar, computed: &WeylExpr) -> Check {
    match computed.as_scalar() {
        Some(s) => Check::scalar(name, expected, &s),
        None => Check::exact(name, expected.render(), computed.render(), "not a scalar", false),
    }
}

fn format_complex(z: Complex64) -> String {
    format!("{:.12e}{:+.12e}i", z.re, z.im)
}

/// Symbolic algebra, Jacobi, field conditions, oracle commutators and (for
/// the Hall kinds) the ladder algebra, per kind.
pub fn run_verify(cfg: &RunConfig) -> Result<Report> {
    let values = cfg.values()?;
    let tol = cfg.tolerance.unwrap_or(VERIFY_TOLERANCE);
    let field = cfg.field_or(GaugeFieldSpec::uniform_b())?;
    let kinds = if cfg.kinds.is_empty() { ALL_KINDS.to_vec() } else { cfg.kinds.clone() };
    let rep = FockRep::with_default_length(cfg.levels, &values)?;
    let at_zero = cfg.theta_is_zero()?;
    let results: Vec<Result<Vec<Check>>> = thread::scope(|s| {
        let handles: Vec<_> = kinds
            .iter()
            .map(|&kind| {
                let (field, values, rep) = (&field, &values, &rep);
                s.spawn(move || verify_kind(kind, cfg.keep_e2, field, values, rep, tol, at_zero))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("verification thread panicked")).collect()
    });
    let mut checks = Vec::new();
    for r in results {
        checks.extend(r?);
    }
    Ok(Report::new(cfg.clone(), Vec::new(), checks))
}

fn verify_kind(
    kind: RealizationKind,
    keep: bool,
    field: &GaugeFieldSpec,
    values: &ParamValues,
    rep: &FockRep,
    tol: f64,
    at_zero: bool,
) -> Result<Vec<Check>> {
    let r = build_realization(kind, field, &options(kind, keep))?;
    let mut checks = Vec::new();

    let (sym_r, target) = {
        let t = AlgebraRelations::for_realization(&r)?;
        if at_zero {
            let zr = r.clone().with_operators(
                r.r_hat().iter().map(zero_theta_expr).collect(),
                r.p_hat().iter().map(zero_theta_expr).collect(),
            );
            let zt = AlgebraRelations {
                rr: zero_theta_table(&t.rr),
                pp: zero_theta_table(&t.pp),
                rp: zero_theta_table(&t.rp),
                pr: zero_theta_table(&t.pr),
            };
            (zr, zt)
        } else {
            (r.clone(), t)
        }
    };
    let report = verify_algebra(&sym_r, &target).with_jacobi(verify_jacobi(&sym_r));
    for (group, list) in [("algebra", &report.relations), ("jacobi", &report.jacobi)] {
        for c in list {
            checks.push(Check::exact(
                format!("{kind}/{group}/{}", c.name),
                c.expected.clone(),
                c.computed.clone(),
                c.residual.clone(),
                c.pass,
            ));
        }
    }
    let cond = &report.conditions;
    checks.push(Check::exact(
        format!("{kind}/conditions"),
        "constant field strength, commuting components",
        cond.detail.clone(),
        if cond.pass { "0" } else { "nonzero" },
        cond.pass,
    ));

    let oracle = commutator_residual(&r, &oracle_target(&r)?, values, rep, tol)?;
    for e in &oracle.entries {
        checks.push(numeric_residual(format!("{kind}/oracle/{}", e.name), e.residual, tol));
    }

    if kind.is_hall() {
        let h = build_hall_hamiltonian(&r)?;
        let form = to_canonical_landau(&h)?;
        checks.extend(landau_algebra(kind, &form, at_zero)?);
        let ladder = ladder_check(&r, &form, values, rep, tol)?;
        for e in &ladder.entries {
            checks.push(numeric_residual(format!("{kind}/ladder/{}", e.name), e.residual, tol));
        }
    }
    Ok(checks)
}

fn numeric_residual(name: String, residual: f64, tol: f64) -> Check {
    Check::numeric(name, format!("<= {tol:e}"), format!("{residual:.6e}"), residual, tol)
}

/// `[b,b†] = −[d,d†] = 2mħγβω`, `[b,d] = [b,d†] = 0`; at θ = 0 the
/// commutator must be the undeformed `2mħω`.
fn landau_algebra(kind: RealizationKind, form: &CanonicalLandauForm, at_zero: bool) -> Result<Vec<Check>> {
    let o = GradedOrder::theta_first_order();
    let form = if at_zero { zero_theta_form(form) } else { form.clone() };
    let l = form.ladder_operators();
    let c = if at_zero {
        mono(2, 1, &[(Symbol::Mass, 1), (Symbol::Hbar, 1), (Symbol::Omega, 1)])
    } else {
        form.comm_bb(&o)
    };
    let name = |rel: &str| format!("{kind}/landau/{rel}");
    Ok(vec![
        operator_is_scalar(name("[b,b†]"), &c, &l.b.commutator(&l.b_dag, &o)?),
        operator_is_scalar(name("[d,d†]"), &-&c, &l.d.commutator(&l.d_dag, &o)?),
        operator_is_scalar(name("[b,d]"), &Scalar::zero(), &l.b.commutator(&l.d, &o)?),
        operator_is_scalar(name("[b,d†]"), &Scalar::zero(), &l.b.commutator(&l.d_dag, &o)?),
    ])
}

fn display(s: &Scalar, cfg: &RunConfig, at_zero: bool) -> String {
    let s = if at_zero { zero_theta(s) } else { s.clone() };
    if cfg.expand { s.expand_derived() } else { s }.render()
}

/// Landau coefficients, Hall conductivity, ⟨J_x⟩, reconstruction and
/// Hermiticity for the Hall kinds.
pub fn run_table1(cfg: &RunConfig) -> Result<Report> {
    let kinds = if cfg.kinds.is_empty() { HALL_KINDS.to_vec() } else { cfg.kinds.clone() };
    let at_zero = cfg.theta_is_zero()?;
    let field = GaugeFieldSpec::uniform_b();
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut sigmas = Vec::new();
    for kind in kinds {
        let r = build_realization(kind, &field, &options(kind, false))?;
        let h = build_hall_hamiltonian(&r)?;
        let form = to_canonical_landau(&h)?;
        let o = &h.order;
        let sigma = hall_conductivity(&form, o)?;
        rows.push(
            Row::new(kind.name())
                .with("gamma", display(&form.gamma, cfg, at_zero))
                .with("beta", display(&form.beta, cfg, at_zero))
                .with("lambda_plus", display(&form.lambda_plus, cfg, at_zero))
                .with("lambda_minus", display(&form.lambda_minus, cfg, at_zero))
                .with("sigma_H", display(&sigma, cfg, at_zero)),
        );

        let rebuilt = form.reconstruct(o)?;
        let diff = (&rebuilt - &h.h).expand_derived();
        checks.push(Check::exact(
            format!("{kind}/reconstruct"),
            h.h.render(),
            rebuilt.render(),
            diff.render(),
            diff.is_zero(),
        ));
        checks.push(Check::exact(
            format!("{kind}/hermitian"),
            "H",
            "H†",
            if h.is_hermitian() { "0" } else { "nonzero" },
            h.is_hermitian(),
        ));
        let jx = express_in_ladder(&current_operator(&h, 0)?, &form, o)?;
        checks.push(Check::scalar(format!("{kind}/<J_x>"), &Scalar::zero(), &expectation_number_state(&jx)?));
        let jy = express_in_ladder(&current_operator(&h, 1)?, &form, o)?;
        let sigma_e = &sigma * &Scalar::sym(Symbol::EField);
        checks.push(Check::scalar(format!("{kind}/<J_y>"), &sigma_e, &expectation_number_state(&jy)?));
        if at_zero {
            let z = zero_theta_form(&form);
            let lam = Scalar::sym(Symbol::Lambda);
            checks.push(Check::scalar(format!("{kind}/theta=0/gamma"), &Scalar::one(), &z.gamma));
            checks.push(Check::scalar(format!("{kind}/theta=0/beta"), &Scalar::one(), &z.beta));
            checks.push(Check::scalar(format!("{kind}/theta=0/lambda_plus"), &lam, &z.lambda_plus));
            checks.push(Check::scalar(format!("{kind}/theta=0/lambda_minus"), &lam, &z.lambda_minus));
        }
        sigmas.push((kind, sigma));
    }
    let find = |k| sigmas.iter().find(|(kk, _)| *kk == k).map(|(_, s)| s);
    if let (Some(s1), Some(s3)) = (find(RealizationKind::Hall1), find(RealizationKind::Hall3)) {
        checks.push(Check::scalar("sigma_H/hall_1 = hall_3", s1, s3));
    }
    Ok(Report::new(cfg.clone(), rows, checks))
}

fn phase_row(p: &PhaseResult, cfg: &RunConfig, at_zero: bool) -> Row {
    Row::new(p.label.clone())
        .with("kind", p.kind.name())
        .with("base", display(&p.base, cfg, at_zero))
        .with("factor", display(&p.factor, cfg, at_zero))
        .with("absolute", display(&p.absolute, cfg, at_zero))
}

fn theta_limit(p: &PhaseResult) -> Check {
    Check::scalar(format!("{}/theta->0 factor", p.label), &Scalar::one(), &zero_theta(&p.factor))
}

fn quadrature(p: &PhaseResult, f: &DeformedGaugeField, cfg: &RunConfig, values: &ParamValues, tol: f64) -> Result<Check> {
    let c = &cfg.contour;
    let contour = Contour::circle(c.center, c.radius, c.samples)?;
    let exact = flux_form_value(p, f.region, &contour, values)?;
    let numeric = loop_phase_numeric(f, &contour, values)?;
    let err = (numeric - exact).norm();
    let rel = if exact.norm() > 0.0 { err / exact.norm() } else { err };
    Ok(Check::numeric(
        format!("{}/quadrature", p.label),
        format_complex(exact),
        format_complex(numeric),
        rel,
        tol,
    ))
}

/// Phase catalog for one configuration.
pub fn run_phase(cfg: &RunConfig) -> Result<Report> {
    let phase = cfg
        .phase
        .ok_or_else(|| Error::Config("phase requires a configuration name".into()))?;
    let values = cfg.values()?;
    let tol = cfg.tolerance.unwrap_or(PHASE_TOLERANCE);
    let at_zero = cfg.theta_is_zero()?;
    let solenoid = GaugeFieldSpec::solenoid(cfg.contour.solenoid_radius);
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    match phase {
        PhaseConfig::Ab => {
            let configs: Vec<(RealizationKind, bool)> = if cfg.kinds.is_empty() {
                vec![
                    (RealizationKind::GeneralR1R2, false),
                    (RealizationKind::GeneralR1R2, true),
                    (RealizationKind::GaugeInvariant, true),
                ]
            } else {
                cfg.kinds.iter().map(|&k| (k, cfg.keep_e2)).collect()
            };
            let field = cfg.field_or(solenoid)?;
            for (kind, keep) in configs {
                let r: Realization = build_realization(kind, &field, &options(kind, keep))?;
                let q = effective_hamiltonian(&r)?;
                let f = deformed_gauge_field(&q)?;
                let p = loop_phase_flux(&f)?;
                let identity = gauge_field_identity(&q, &f);
                checks.push(Check::exact(
                    format!("{}/gauge field identity", p.label),
                    "b",
                    "a*(-2A)",
                    if identity { "0" } else { "nonzero" },
                    identity,
                ));
                checks.push(theta_limit(&p));
                checks.push(quadrature(&p, &f, cfg, &values, tol)?);
                rows.push(phase_row(&p, cfg, at_zero));
            }
        }
        PhaseConfig::StarShiftAb => {
            let field = cfg.field_or(solenoid)?;
            let f = star_shift_gauge_field(&field, &electron_coupling())?;
            let p = loop_phase_flux(&f)?;
            checks.push(theta_limit(&p));
            checks.push(quadrature(&p, &f, cfg, &values, tol)?);
            rows.push(phase_row(&p, cfg, at_zero));
        }
        PhaseConfig::Anandan | PhaseConfig::Ac | PhaseConfig::Hmw => {
            let dc = match phase {
                PhaseConfig::Ac => DipoleConfig::ac(),
                PhaseConfig::Hmw => DipoleConfig::hmw(),
                _ => DipoleConfig::symbolic(),
            };
            let p = anandan_phase(&dc)?;
            checks.push(theta_limit(&p));
            rows.push(phase_row(&p, cfg, at_zero));
        }
    }
    Ok(Report::new(cfg.clone(), rows, checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::OutputFormat;

    fn cfg(command: Command) -> RunConfig {
        RunConfig {
            command,
            ..RunConfig::default()
        }
    }

    #[test]
    fn verify_hall_2_passes() {
        let c = RunConfig {
            kinds: vec![RealizationKind::Hall2],
            levels: 16,
            ..cfg(Command::Verify)
        };
        let r = run(&c).unwrap();
        assert!(r.pass, "{}", r.to_text());
        assert!(r.checks.iter().any(|c| c.name == "hall_2/oracle/[p_x,p_y]"));
        assert!(r.checks.iter().any(|c| c.name == "hall_2/ladder/[b,b†]"));
        assert!(r.checks.windows(2).all(|w| w[0].name <= w[1].name));
    }

    #[test]
    fn verify_hall_3_at_zero_theta() {
        let c = RunConfig {
            kinds: vec![RealizationKind::Hall3],
            theta: Some(0.0),
            levels: 16,
            ..cfg(Command::Verify)
        };
        let r = run(&c).unwrap();
        assert!(r.pass, "{}", r.to_text());
        let bb = r.checks.iter().find(|c| c.name == "hall_3/landau/[b,b†]").unwrap();
        assert_eq!(bb.expected, "2*m*omega*hbar");
    }

    #[test]
    fn table1_zero_theta_rows() {
        let c = RunConfig {
            theta: Some(0.0),
            ..cfg(Command::Table1)
        };
        let r = run(&c).unwrap();
        assert!(r.pass, "{}", r.to_text());
        for row in &r.rows {
            let get = |k: &str| &row.values.iter().find(|(n, _)| n == k).unwrap().1;
            assert_eq!(get("gamma"), "1");
            assert_eq!(get("beta"), "1");
            assert_eq!(get("lambda_plus"), "lambda");
            assert_eq!(get("lambda_minus"), "lambda");
        }
    }

    #[test]
    fn phase_reports_are_deterministic() {
        let c = RunConfig {
            phase: Some(PhaseConfig::Ab),
            format: OutputFormat::Json,
            contour: crate::cli::ContourConfig {
                samples: 400,
                ..Default::default()
            },
            ..cfg(Command::Phase)
        };
        let a = run(&c).unwrap();
        assert!(a.pass, "{}", a.to_text());
        assert_eq!(a.rows.len(), 3);
        assert_eq!(a.to_json(), run(&c).unwrap().to_json());
    }

    #[test]
    fn zero_theta_phase_factor_is_one() {
        for phase in [PhaseConfig::Ab, PhaseConfig::Hmw, PhaseConfig::StarShiftAb] {
            let c = RunConfig {
                phase: Some(phase),
                theta: Some(0.0),
                ..cfg(Command::Phase)
            };
            let r = run(&c).unwrap();
            assert!(r.pass);
            for row in &r.rows {
                assert_eq!(row.values[2], ("factor".to_string(), "1".to_string()));
            }
        }
    }
}
