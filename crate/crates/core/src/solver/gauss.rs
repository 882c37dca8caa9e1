//! Gaussian rationals: complex numbers with arbitrary-precision rational
//! real and imaginary parts. The coefficient field of the exact solver.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussQ {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussQ {
    pub fn zero() -> Self {
        GaussQ { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        GaussQ { re: BigRational::one(), im: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        GaussQ { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Dyadic rounding of a complex double at denominator 2^48.
    pub fn from_f64_dyadic(re: f64, im: f64) -> Self {
        GaussQ { re: dyadic(re), im: dyadic(im) }
    }

    pub fn add(&self, other: &GaussQ) -> GaussQ {
        GaussQ { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    pub fn sub(&self, other: &GaussQ) -> GaussQ {
        GaussQ { re: &self.re - &other.re, im: &self.im - &other.im }
    }

    pub fn neg(&self) -> GaussQ {
        GaussQ { re: -self.re.clone(), im: -self.im.clone() }
    }

    pub fn mul(&self, other: &GaussQ) -> GaussQ {
        GaussQ {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn inv(&self) -> GaussQ {
        let norm = &self.re * &self.re + &self.im * &self.im;
        assert!(!norm.is_zero(), "division by zero Gaussian rational");
        GaussQ { re: &self.re / &norm, im: -(&self.im / &norm) }
    }

    pub fn div(&self, other: &GaussQ) -> GaussQ {
        self.mul(&other.inv())
    }

    /// Rough magnitude used only for pivoting/diagnostics.
    pub fn to_f64(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

const DYADIC_BITS: u32 = 48;

fn dyadic(x: f64) -> BigRational {
    assert!(x.is_finite(), "cannot convert non-finite float");
    let scale = (1u64 << DYADIC_BITS) as f64;
    let scaled = (x * scale).round();
    BigRational::new(
        BigInt::from(scaled as i64),
        BigInt::from(1u64 << DYADIC_BITS),
    )
}

fn rational_to_f64(r: &BigRational) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // crude but sufficient: go through string only when the parts are huge
    let nf = bigint_to_f64(num);
    let df = bigint_to_f64(den);
    nf / df
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    let (sign, digits) = n.to_u64_digits();
    let mut value = 0.0f64;
    for d in digits.iter().rev() {
        value = value * 1.8446744073709552e19 + *d as f64;
    }
    if sign == num_bigint::Sign::Minus {
        -value
    } else {
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let a = GaussQ::from_f64_dyadic(0.5, -0.25);
        let b = GaussQ::from_f64_dyadic(2.0, 1.0);
        let prod = a.mul(&b);
        let back = prod.div(&b);
        assert_eq!(back, a);
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn dyadic_rounding_is_exact_for_representable() {
        let a = GaussQ::from_f64_dyadic(0.375, 0.0);
        assert_eq!(a.re, BigRational::new(BigInt::from(3), BigInt::from(8)));
    }

    #[test]
    fn inverse_of_i() {
        let i = GaussQ { re: BigRational::zero(), im: BigRational::one() };
        let inv = i.inv();
        assert_eq!(inv.re, BigRational::zero());
        assert_eq!(inv.im, -BigRational::one());
    }
}
