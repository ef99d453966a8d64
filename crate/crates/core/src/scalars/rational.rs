use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact element of Q[i].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn integer(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Self::new(&self.re / &norm, -(&self.im / &norm)))
    }

    /// Positive rational square root of a positive real perfect square.
    pub fn sqrt_positive(&self) -> Option<Self> {
        if !self.is_real() || !self.re.is_positive() {
            return None;
        }
        let num = exact_sqrt(self.re.numer())?;
        let den = exact_sqrt(self.re.denom())?;
        Some(Self::real(BigRational::new(num, den)))
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Sign used when rendering a term with a leading `-`.
    pub(crate) fn is_negative_for_display(&self) -> bool {
        if self.re.is_zero() {
            self.im.is_negative()
        } else {
            self.re.is_negative() && self.im.is_zero()
        }
    }
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let root = n.sqrt();
    (&root * &root == *n).then_some(root)
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl GaussianRational {
    /// Rendering of the absolute value used inside a signed sum, e.g. `3/4`,
    /// `i`, `1/2*i` or `(1/2+3*i)`.
    pub(crate) fn render_magnitude(&self) -> String {
        let flip = self.is_negative_for_display();
        let v = if flip { -self } else { self.clone() };
        if v.im.is_zero() {
            fmt_rational(&v.re)
        } else if v.re.is_zero() {
            if v.im.is_one() {
                "i".to_string()
            } else {
                format!("{}*i", fmt_rational(&v.im))
            }
        } else {
            let sign = if v.im.is_negative() { "-" } else { "+" };
            let im = v.im.abs();
            let im_txt = if im.is_one() {
                "i".to_string()
            } else {
                format!("{}*i", fmt_rational(&im))
            };
            format!("({}{}{})", fmt_rational(&v.re), sign, im_txt)
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negative_for_display() {
            write!(f, "-{}", self.render_magnitude())
        } else {
            f.write_str(&self.render_magnitude())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_one_plus_i() {
        let z = GaussianRational::new(BigRational::one(), BigRational::one());
        let inv = z.inv().unwrap();
        assert_eq!(&z * &inv, GaussianRational::one());
        assert_eq!(
            inv,
            GaussianRational::new(
                BigRational::new(1.into(), 2.into()),
                BigRational::new((-1).into(), 2.into())
            )
        );
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn square_roots() {
        assert_eq!(
            GaussianRational::ratio(9, 4).sqrt_positive(),
            Some(GaussianRational::ratio(3, 2))
        );
        assert_eq!(GaussianRational::ratio(2, 1).sqrt_positive(), None);
        assert_eq!(GaussianRational::integer(-4).sqrt_positive(), None);
        assert_eq!(GaussianRational::i().sqrt_positive(), None);
    }

    #[test]
    fn rendering() {
        assert_eq!(GaussianRational::ratio(-3, 4).to_string(), "-3/4");
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!((-&GaussianRational::i()).to_string(), "-i");
        let z = GaussianRational::new(
            BigRational::new(1.into(), 2.into()),
            BigRational::from_integer((-3).into()),
        );
        assert_eq!(z.to_string(), "(1/2-3*i)");
    }
}
