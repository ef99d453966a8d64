use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{linear_parts, DeformedGaugeField, PhaseResult};
use crate::error::{Error, Result};
use crate::scalars::{ParamValues, Scalar, Symbol};
use crate::weyl::Region;

/// Circular loop in the plane, sampled uniformly in angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Contour {
    pub center: [f64; 2],
    pub radius: f64,
    pub samples: usize,
}

impl Contour {
    pub fn circle(center: [f64; 2], radius: f64, samples: usize) -> Result<Self> {
        if samples < 8 {
            return Err(Error::InvalidContour(format!(
                "{samples} samples (need at least 8)"
            )));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidContour(format!("radius {radius}")));
        }
        if !center.iter().all(|c| c.is_finite()) {
            return Err(Error::InvalidContour(format!("center {center:?}")));
        }
        Ok(Contour {
            center,
            radius,
            samples,
        })
    }

    fn center_distance(&self) -> f64 {
        self.center[0].hypot(self.center[1])
    }
}

/// Where the contour lies relative to the solenoid.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Placement {
    Interior,
    Exterior { solenoid_radius: f64 },
}

fn placement(region: Region, contour: &Contour) -> Result<Placement> {
    match region {
        Region::Uniform => Ok(Placement::Interior),
        Region::Solenoid { radius } => {
            let dc = contour.center_distance();
            let min = (contour.radius - dc).abs();
            let max = contour.radius + dc;
            if max < radius {
                Ok(Placement::Interior)
            } else if min > radius {
                Ok(Placement::Exterior {
                    solenoid_radius: radius,
                })
            } else {
                Err(Error::ContourIntersectsBoundary { min, max, radius })
            }
        }
    }
}

/// Area carrying flux inside the contour.
pub fn enclosed_area(region: Region, contour: &Contour) -> Result<f64> {
    Ok(match placement(region, contour)? {
        Placement::Interior => PI * contour.radius * contour.radius,
        Placement::Exterior { solenoid_radius } => {
            if contour.center_distance() < contour.radius {
                PI * solenoid_radius * solenoid_radius
            } else {
                0.0
            }
        }
    })
}

fn eval(s: &Scalar, values: &ParamValues) -> Result<Complex64> {
    s.substitute_numeric(values)
}

/// Symbolic flux-form phase evaluated with the area enclosed by `contour`.
pub fn flux_form_value(
    phase: &PhaseResult,
    region: Region,
    contour: &Contour,
    values: &ParamValues,
) -> Result<Complex64> {
    let mut bound = values.clone();
    bound.insert(Symbol::Area, enclosed_area(region, contour)?);
    eval(&phase.absolute, &bound)
}

/// `(i/ħ)∮𝒜·dr` by the composite trapezoid rule.
///
/// Inside the solenoid (or everywhere for a uniform region) the linear field
/// is used as given. Outside, the curl part is replaced by the pure-flux field
/// `(C R_s²/2)(−y, x)/r²`, which matches it at `r = R_s`; the gradient part
/// is kept.
pub fn loop_phase_numeric(
    f: &DeformedGaugeField,
    contour: &Contour,
    values: &ParamValues,
) -> Result<Complex64> {
    let contour = Contour::circle(contour.center, contour.radius, contour.samples)?;
    if f.components.len() < 2 {
        return Err(Error::UnsupportedDimension(f.components.len()));
    }
    let (consts, lin) = linear_parts(f)?;
    let c: Vec<Complex64> = consts[..2]
        .iter()
        .map(|s| eval(s, values))
        .collect::<Result<_>>()?;
    let m: Vec<Vec<Complex64>> = lin[..2]
        .iter()
        .map(|row| {
            row[..2]
                .iter()
                .map(|s| eval(s, values))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let hbar = eval(&Scalar::sym(Symbol::Hbar), values)?;
    let curl = m[1][0] - m[0][1];
    let half_curl = curl * 0.5;
    // symmetric part of m: the pure-gauge piece
    let sym = [
        [m[0][0], (m[0][1] + m[1][0]) * 0.5],
        [(m[0][1] + m[1][0]) * 0.5, m[1][1]],
    ];
    let place = placement(f.region, &contour)?;
    let field = |x: f64, y: f64| -> [Complex64; 2] {
        let grad = [
            c[0] + sym[0][0] * x + sym[0][1] * y,
            c[1] + sym[1][0] * x + sym[1][1] * y,
        ];
        let rot = match place {
            Placement::Interior => [-half_curl * y, half_curl * x],
            Placement::Exterior { solenoid_radius } => {
                let s = half_curl * (solenoid_radius * solenoid_radius / (x * x + y * y));
                [-s * y, s * x]
            }
        };
        [grad[0] + rot[0], grad[1] + rot[1]]
    };
    let n = contour.samples;
    let dt = 2.0 * PI / n as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let t = k as f64 * dt;
        let (sin, cos) = t.sin_cos();
        let x = contour.center[0] + contour.radius * cos;
        let y = contour.center[1] + contour.radius * sin;
        let a = field(x, y);
        total += a[0] * (-contour.radius * sin) + a[1] * (contour.radius * cos);
    }
    Ok(Complex64::i() / hbar * total * dt)
}
