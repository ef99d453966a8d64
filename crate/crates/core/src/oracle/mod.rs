//! Numerical oracle: truncated two-mode Fock representations of coordinates
//! and derivatives, used to cross-check the symbolic results.

mod checks;

use std::collections::HashMap;

use ndarray::linalg::kron;
use ndarray::{s, Array2};
use num_complex::Complex64;

pub use checks::{
    commutator_residual, kernel_relations, ladder_check, number_state_check, oracle_target,
    quadrature_convergence, realize_numeric, scaling_ratios, vacuum_check, NumericRealization,
    ResidualEntry, ResidualReport,
};

use crate::error::{Error, Result};
use crate::scalars::{ParamValues, Symbol};
use crate::weyl::WeylExpr;

type Mat = Array2<Complex64>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Truncated representation with `levels` states per mode. The two-mode
/// state `|i, j⟩` has flat index `i·N + j`.
#[derive(Debug, Clone)]
pub struct FockRep {
    levels: usize,
    length: f64,
    x1: Mat,
    d1: Mat,
}

impl FockRep {
    /// `x = ℓ(a + a†)/√2`, `∂ = (a − a†)/(√2 ℓ)` in each mode.
    pub fn new(levels: usize, length: f64) -> Self {
        assert!(levels >= 2, "need at least two levels per mode");
        assert!(
            length > 0.0 && length.is_finite(),
            "length scale must be positive"
        );
        let mut a = Mat::zeros((levels, levels));
        for k in 1..levels {
            a[[k - 1, k]] = c((k as f64).sqrt());
        }
        let ad = a.t().to_owned();
        let r2 = std::f64::consts::SQRT_2;
        let x1 = (&a + &ad).mapv(|v| v * (length / r2));
        let d1 = (&a - &ad).mapv(|v| v / (r2 * length));
        FockRep {
            levels,
            length,
            x1,
            d1,
        }
    }

    /// Oscillator length `√(ħ/mω)` with `ω = eB/mc`; 1 when the field is zero.
    pub fn with_default_length(levels: usize, values: &ParamValues) -> Result<Self> {
        let get = |s: Symbol| {
            values
                .get(&s)
                .copied()
                .ok_or_else(|| Error::UnboundSymbol(s.name().to_string()))
        };
        let eb_over_c = get(Symbol::Charge)? * get(Symbol::B)? / get(Symbol::C)?;
        let length = if eb_over_c == 0.0 {
            1.0
        } else {
            (get(Symbol::Hbar)? / eb_over_c.abs()).sqrt()
        };
        Ok(Self::new(levels, length))
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Mode indices below this bound form the protected subspace.
    pub fn protected_levels(&self) -> usize {
        self.levels / 2
    }

    fn single_identity(&self) -> Mat {
        Mat::eye(self.levels)
    }

    fn single_mode(&self, coord: u32, deriv: u32, cache: &mut HashMap<(u32, u32), Mat>) -> Mat {
        if let Some(m) = cache.get(&(coord, deriv)) {
            return m.clone();
        }
        let mut m = self.single_identity();
        for _ in 0..coord {
            m = m.dot(&self.x1);
        }
        for _ in 0..deriv {
            m = m.dot(&self.d1);
        }
        cache.insert((coord, deriv), m.clone());
        m
    }

    /// Matrix of a planar expression, each term coordinates-first.
    pub fn realize(&self, e: &WeylExpr, values: &ParamValues) -> Result<FockOperator> {
        if e.dim() != 2 {
            return Err(Error::UnsupportedDimension(e.dim()));
        }
        let mut cache = HashMap::new();
        let mut out = FockOperator::zero(self.levels);
        for (p, coeff) in e.terms() {
            let v = coeff.substitute_numeric(values)?;
            let a = self.single_mode(p.r[0], p.d[0], &mut cache).mapv(|z| z * v);
            let b = self.single_mode(p.r[1], p.d[1], &mut cache);
            out.terms.push((a, b));
        }
        Ok(out)
    }

    pub fn identity(&self) -> FockOperator {
        FockOperator::identity(self.levels)
    }

    /// Dense `N²×N²` matrices of `x`, `y`, `∂_x`, `∂_y`.
    pub fn x(&self) -> Mat {
        kron(&self.x1, &self.single_identity())
    }

    pub fn y(&self) -> Mat {
        kron(&self.single_identity(), &self.x1)
    }

    pub fn dx(&self) -> Mat {
        kron(&self.d1, &self.single_identity())
    }

    pub fn dy(&self) -> Mat {
        kron(&self.single_identity(), &self.d1)
    }
}

/// Operator on the two-mode space stored as `Σ A_k ⊗ B_k`.
#[derive(Debug, Clone)]
pub struct FockOperator {
    levels: usize,
    terms: Vec<(Mat, Mat)>,
}

impl FockOperator {
    pub fn zero(levels: usize) -> Self {
        FockOperator {
            levels,
            terms: Vec::new(),
        }
    }

    pub fn identity(levels: usize) -> Self {
        Self::scalar(levels, c(1.0))
    }

    pub fn scalar(levels: usize, v: Complex64) -> Self {
        FockOperator {
            levels,
            terms: vec![(Mat::eye(levels).mapv(|z| z * v), Mat::eye(levels))],
        }
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn scale(&self, v: Complex64) -> Self {
        FockOperator {
            levels: self.levels,
            terms: self
                .terms
                .iter()
                .map(|(a, b)| (a.mapv(|z| z * v), b.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &FockOperator) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        FockOperator {
            levels: self.levels,
            terms,
        }
    }

    pub fn sub(&self, other: &FockOperator) -> Self {
        self.add(&other.scale(c(-1.0)))
    }

    pub fn mul(&self, other: &FockOperator) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, b) in &self.terms {
            for (p, q) in &other.terms {
                terms.push((a.dot(p), b.dot(q)));
            }
        }
        FockOperator {
            levels: self.levels,
            terms,
        }
    }

    pub fn commutator(&self, other: &FockOperator) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Hermitian conjugate.
    pub fn adjoint(&self) -> Self {
        FockOperator {
            levels: self.levels,
            terms: self
                .terms
                .iter()
                .map(|(a, b)| (a.t().mapv(|z| z.conj()), b.t().mapv(|z| z.conj())))
                .collect(),
        }
    }

    /// Block on the states with both mode indices below `h`.
    pub fn restricted(&self, h: usize) -> Mat {
        let mut out = Mat::zeros((h * h, h * h));
        for (a, b) in &self.terms {
            out = out + kron(&a.slice(s![..h, ..h]), &b.slice(s![..h, ..h]));
        }
        out
    }

    pub fn to_dense(&self) -> Mat {
        let n = self.levels * self.levels;
        let mut out = Mat::zeros((n, n));
        for (a, b) in &self.terms {
            out = out + kron(a, b);
        }
        out
    }

    /// Acts on a state written as an `N×N` array `ψ[i, j]`.
    pub fn apply(&self, psi: &Mat) -> Mat {
        let mut out = Mat::zeros(psi.raw_dim());
        for (a, b) in &self.terms {
            out = out + a.dot(psi).dot(&b.t());
        }
        out
    }
}

/// `max |M_ij|`.
pub fn max_abs(m: &Mat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `⟨φ|ψ⟩` for states stored as `N×N` arrays.
pub fn inner(phi: &Mat, psi: &Mat) -> Complex64 {
    phi.iter().zip(psi.iter()).map(|(a, b)| a.conj() * b).sum()
}
