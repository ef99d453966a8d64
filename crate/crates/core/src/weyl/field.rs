use serde::Serialize;

use super::expr::WeylExpr;
use crate::error::{Error, Result};
use crate::scalars::{Scalar, Symbol};

/// Spatial support of a gauge field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    /// The components hold everywhere.
    Uniform,
    /// The components hold inside a disk of the given radius; outside, the
    /// field strength vanishes (pure-flux exterior).
    Solenoid { radius: f64 },
}

/// Commuting gauge field `A_α(r)` with polynomial components.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeFieldSpec {
    dim: usize,
    components: Vec<WeylExpr>,
    field_strength: Vec<Vec<WeylExpr>>,
    region: Region,
}

impl GaugeFieldSpec {
    pub fn new(components: Vec<WeylExpr>, region: Region) -> Result<Self> {
        let dim = components.len();
        if !(2..=3).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        for (alpha, a) in components.iter().enumerate() {
            if a.dim() != dim {
                return Err(Error::DimensionMismatch(a.dim(), dim));
            }
            if !a.is_coordinate_polynomial() {
                return Err(Error::UnsupportedField(format!(
                    "component {alpha} contains derivatives: {a}"
                )));
            }
        }
        let field_strength = (0..dim)
            .map(|a| {
                (0..dim)
                    .map(|b| &components[b].partial(a) - &components[a].partial(b))
                    .collect()
            })
            .collect();
        Ok(GaugeFieldSpec {
            dim,
            components,
            field_strength,
            region,
        })
    }

    /// Symmetric gauge `A = (−By/2, Bx/2[, 0])`, so that `F₁₂ = B`.
    pub fn symmetric(dim: usize, b: Scalar) -> Result<Self> {
        if !(2..=3).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        let half_b = &b * &Scalar::ratio(1, 2);
        let mut comps = vec![
            WeylExpr::coord(dim, 1).scale(&-&half_b),
            WeylExpr::coord(dim, 0).scale(&half_b),
        ];
        if dim == 3 {
            comps.push(WeylExpr::zero(3));
        }
        Self::new(comps, Region::Uniform)
    }

    /// Symmetric-gauge uniform field `B` in the plane.
    pub fn uniform_b() -> Self {
        Self::symmetric(2, Scalar::sym(Symbol::B)).expect("dimension 2")
    }

    /// Uniform field `B` inside a solenoid of the given radius.
    pub fn solenoid(radius: f64) -> Self {
        Self::uniform_b().with_region(Region::Solenoid { radius })
    }

    pub fn with_region(mut self, region: Region) -> Self {
        self.region = region;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[WeylExpr] {
        &self.components
    }

    pub fn region(&self) -> Region {
        self.region
    }

    /// `F_{αβ} = ∂_α A_β − ∂_β A_α` inside the region where the components hold.
    pub fn field_strength(&self) -> &[Vec<WeylExpr>] {
        &self.field_strength
    }

    /// Constant field-strength matrix, if every entry is coordinate-free.
    pub fn constant_strength(&self) -> Option<Vec<Vec<Scalar>>> {
        self.field_strength
            .iter()
            .map(|row| row.iter().map(WeylExpr::as_scalar).collect())
            .collect()
    }
}
