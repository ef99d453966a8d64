use serde::Serialize;

use crate::weyl::{GaugeFieldSpec, Region};

/// Outcome of the consistency conditions `∇_α F_{βγ} = 0` (per constant
/// region) and `[F, F] = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionsReport {
    pub gradient_free: bool,
    /// Always true for the commuting fields handled here.
    pub commuting: bool,
    /// Radius of a region boundary where the conditions are not imposed.
    pub excluded_boundary: Option<f64>,
    pub pass: bool,
    pub detail: String,
}

pub fn check_conditions(field: &GaugeFieldSpec) -> ConditionsReport {
    let dim = field.dim();
    let mut offending = Vec::new();
    for (a, row) in field.field_strength().iter().enumerate() {
        for (b, f) in row.iter().enumerate() {
            for g in 0..dim {
                let grad = f.partial(g);
                if !grad.is_zero() {
                    offending.push(format!("d{g} F{a}{b} = {grad}"));
                }
            }
        }
    }
    let excluded_boundary = match field.region() {
        Region::Uniform => None,
        Region::Solenoid { radius } => Some(radius),
    };
    let gradient_free = offending.is_empty();
    let detail = if gradient_free {
        match excluded_boundary {
            None => "field strength constant".to_string(),
            Some(r) => format!("field strength constant in each region; boundary r = {r} excluded"),
        }
    } else {
        offending.join("; ")
    };
    ConditionsReport {
        gradient_free,
        commuting: true,
        excluded_boundary,
        pass: gradient_free,
        detail,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{GradedOrder, Scalar, Symbol};
    use crate::weyl::WeylExpr;

    #[test]
    fn uniform_and_solenoid_pass() {
        let r = check_conditions(&GaugeFieldSpec::uniform_b());
        assert!(r.pass && r.excluded_boundary.is_none());
        let s = check_conditions(&GaugeFieldSpec::solenoid(1.0));
        assert!(s.pass);
        assert_eq!(s.excluded_boundary, Some(1.0));
    }

    #[test]
    fn linear_field_strength_fails() {
        // A_y = B x²/2 gives F12 = B x
        let o = GradedOrder::unbounded();
        let x = WeylExpr::coord(2, 0);
        let a_y = x
            .mul(&x, &o)
            .unwrap()
            .scale(&(Scalar::sym(Symbol::B) * Scalar::ratio(1, 2)));
        let f = GaugeFieldSpec::new(vec![WeylExpr::zero(2), a_y], Region::Uniform).unwrap();
        let r = check_conditions(&f);
        assert!(!r.pass);
        assert!(r.detail.contains("F01"));
    }
}
