//! Dense univariate polynomials with exact rational coefficients.
//!
//! `VarPoly` stores coefficients in ascending order of the indeterminate.
//! Invariant: no trailing zero coefficients; the zero polynomial is empty.
//! The indeterminate carries no name here; it is attached on serialization
//! (`d` for the lattice polynomials, `t` for characteristic polynomials of
//! `P(n)`, `s` for the truncated R-transform, `x` elsewhere).

use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct VarPoly {
    coeffs: Vec<Rational>,
}

impl VarPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        VarPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        VarPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * X^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The falling factorial `X (X-1) ... (X-n+1)` expanded.
    pub fn falling_factorial(n: usize) -> Self {
        (0..n).fold(VarPoly::constant(Rational::one()), |acc, k| {
            acc * VarPoly::new(vec![int(-(k as i64)), Rational::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `X^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + crate::rational::to_f64(c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coeff().recip();
        self.scale(&lc)
    }

    /// Euclidean division. Panics when `divisor` is zero.
    pub fn div_rem(&self, divisor: &VarPoly) -> (VarPoly, VarPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.leading_coeff().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (VarPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (VarPoly::new(quot), VarPoly::new(rem))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &VarPoly) -> VarPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `p(X + c)`
    pub fn shift(&self, c: &Rational) -> VarPoly {
        let lin = VarPoly::new(vec![c.clone(), Rational::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(VarPoly::zero(), |acc, a| acc * lin.clone() + VarPoly::constant(a.clone()))
    }

    /// Scales by the positive factor `1 / |lc|`; signs at every point are unchanged.
    pub(crate) fn normalize_positive(&self) -> VarPoly {
        if self.is_zero() {
            return self.clone();
        }
        let s = self.leading_coeff().abs().recip();
        self.scale(&s)
    }
}

impl Add for VarPoly {
    type Output = VarPoly;
    fn add(self, rhs: VarPoly) -> VarPoly {
        &self + &rhs
    }
}

impl Add<&VarPoly> for &VarPoly {
    type Output = VarPoly;
    fn add(self, rhs: &VarPoly) -> VarPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        VarPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for VarPoly {
    type Output = VarPoly;
    fn sub(self, rhs: VarPoly) -> VarPoly {
        &self - &rhs
    }
}

impl Sub<&VarPoly> for &VarPoly {
    type Output = VarPoly;
    fn sub(self, rhs: &VarPoly) -> VarPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        VarPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for VarPoly {
    type Output = VarPoly;
    fn neg(self) -> VarPoly {
        VarPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul<&VarPoly> for &VarPoly {
    type Output = VarPoly;
    fn mul(self, rhs: &VarPoly) -> VarPoly {
        if self.is_zero() || rhs.is_zero() {
            return VarPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        VarPoly::new(out)
    }
}

impl Mul<&VarPoly> for VarPoly {
    type Output = VarPoly;
    fn mul(self, rhs: &VarPoly) -> VarPoly {
        &self * rhs
    }
}

impl Mul for VarPoly {
    type Output = VarPoly;
    fn mul(self, rhs: VarPoly) -> VarPoly {
        &self * &rhs
    }
}

impl One for VarPoly {
    fn one() -> Self {
        VarPoly::constant(Rational::one())
    }
}

impl Zero for VarPoly {
    fn zero() -> Self {
        VarPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for VarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "X")?,
                (1, false) => write!(f, "{mag}*X")?,
                (_, true) => write!(f, "X^{k}")?,
                (_, false) => write!(f, "{mag}*X^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn falling_factorial_expansion() {
        assert_eq!(VarPoly::falling_factorial(0), VarPoly::one());
        assert_eq!(VarPoly::falling_factorial(3), VarPoly::from_integers(&[0, 2, -3, 1]));
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)(x-2)(x+3) and (x-1)(x+5)
        let a = VarPoly::from_integers(&[6, -7, 0, 1]);
        let b = VarPoly::from_integers(&[-5, 4, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert_eq!(a.gcd(&b), VarPoly::from_integers(&[-1, 1]));
        assert_eq!(VarPoly::zero().gcd(&VarPoly::zero()), VarPoly::zero());
    }

    #[test]
    fn shift_and_derivative() {
        let p = VarPoly::from_integers(&[-1, 0, 1]);
        assert_eq!(p.shift(&int(1)), VarPoly::from_integers(&[0, 2, 1]));
        assert_eq!(p.derivative(), VarPoly::from_integers(&[0, 2]));
        assert_eq!(p.eval(&rat(1, 2)), rat(-3, 4));
        assert_eq!(format!("{}", VarPoly::from_integers(&[0, 2, -3, 1])), "X^3 - 3*X^2 + 2*X");
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = VarPoly::from_integers(&[1, 0, 0]);
        assert_eq!(p.degree(), Some(0));
        assert!(VarPoly::from_integers(&[0, 0]).is_zero());
    }
}
