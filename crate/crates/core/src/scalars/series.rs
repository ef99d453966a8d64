//! Perturbative inverse and square root of near-identity scalars.

use num_rational::BigRational;

use super::order::GradedOrder;
use super::rational::GaussianRational;
use super::scalar::Scalar;
use crate::error::{Error, Result};

const MAX_SERIES_TERMS: usize = 64;

/// Splits `s = lead * (1 + eps)` where `lead` is the unique term of graded
/// degree zero and every term of `eps` carries a capped symbol.
fn split_leading(s: &Scalar, order: &GradedOrder) -> Option<(Scalar, Scalar)> {
    let mut lead = None;
    for (m, c) in s.terms() {
        match order.graded_degree(m)? {
            0 if lead.is_some() => return None,
            0 => lead = Some(Scalar::term(c.clone(), m.clone())),
            _ => {}
        }
    }
    let lead = lead?;
    let lead_inv = lead.inv_single()?;
    let eps = order.truncate(&(&(s - &lead) * &lead_inv));
    Some((lead, eps))
}

/// Σ_k coeff(k) ε^k, summed until the powers vanish under truncation.
fn sum_series<F>(eps: &Scalar, order: &GradedOrder, coeff: F) -> Result<Scalar>
where
    F: Fn(usize) -> GaussianRational,
{
    let mut total = Scalar::one();
    let mut power = Scalar::one();
    for k in 1..=MAX_SERIES_TERMS {
        power = order.mul(&power, eps);
        if power.is_zero() {
            return Ok(total);
        }
        total = &total + &power.scale(&coeff(k));
    }
    Err(Error::NotPerturbativelyInvertible(format!(
        "{} (series did not terminate under {order})",
        eps.render()
    )))
}

/// `s⁻¹` as a truncated geometric series around the leading term.
pub fn reciprocal(s: &Scalar, order: &GradedOrder) -> Result<Scalar> {
    let (lead, eps) =
        split_leading(s, order).ok_or_else(|| Error::NotPerturbativelyInvertible(s.render()))?;
    let lead_inv = lead
        .inv_single()
        .ok_or_else(|| Error::NotPerturbativelyInvertible(s.render()))?;
    let series = sum_series(&eps, order, |k| {
        if k % 2 == 0 {
            GaussianRational::one()
        } else {
            GaussianRational::integer(-1)
        }
    })?;
    Ok(order.mul(&lead_inv, &series))
}

/// Positive-branch square root via the binomial series.
pub fn perturbative_sqrt(s: &Scalar, order: &GradedOrder) -> Result<Scalar> {
    let (lead, eps) =
        split_leading(s, order).ok_or_else(|| Error::NotPerfectSquareLeading(s.render()))?;
    let (m, c) = lead
        .single_term()
        .ok_or_else(|| Error::NotPerfectSquareLeading(s.render()))?;
    let root_m = m
        .sqrt()
        .ok_or_else(|| Error::NotPerfectSquareLeading(s.render()))?;
    let root_c = c
        .sqrt_positive()
        .ok_or_else(|| Error::NotPerfectSquareLeading(s.render()))?;
    let series = sum_series(&eps, order, binomial_half)?;
    Ok(order.mul(&Scalar::term(root_c, root_m), &series))
}

/// Generalized binomial coefficient C(1/2, k).
fn binomial_half(k: usize) -> GaussianRational {
    let half = BigRational::new(1.into(), 2.into());
    let mut acc = BigRational::from_integer(1.into());
    for j in 0..k {
        let j = BigRational::from_integer((j as i64).into());
        acc = acc * (&half - &j) / (&j + BigRational::from_integer(1.into()));
    }
    GaussianRational::real(acc)
}
