//! Monic polynomials in the signed-coefficient convention
//! `p(x) = Σ_{i=0}^d (-1)^i a_i x^{d-i}` with `a_0 = 1`.
//!
//! With this convention `a_i` is the `i`-th elementary symmetric polynomial of
//! the roots, and every transform in the crate is stated directly in the `a_i`.
//! Conversion to ordinary coefficients only happens at the I/O boundary.

mod roots;
mod sturm;

pub use roots::DEFAULT_ROOT_TOL;
pub use sturm::{square_free_decomposition, sturm_distinct_real_roots, RealRootedness, RootCount};

use num_complex::Complex64;
use num_traits::{One, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{int, sign_pow, to_f64, Rational};
use crate::varpoly::VarPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonicPoly {
    a: Vec<Rational>,
}

/// Moments `m_1..m_N` of a polynomial: `m_n = (1/d) Σ r_i^n` over the roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSequence {
    entries: Vec<Rational>,
    degree: Option<usize>,
}

impl MomentSequence {
    pub fn new(entries: Vec<Rational>, degree: Option<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::domain("a moment sequence needs at least one entry"));
        }
        Ok(MomentSequence { entries, degree })
    }

    /// `m_1..m_N`; `entries()[n-1]` is `m_n`.
    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Degree of the polynomial the moments came from, when known.
    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    /// `m_n` for `n >= 1`.
    pub fn get(&self, n: usize) -> Option<&Rational> {
        n.checked_sub(1).and_then(|i| self.entries.get(i))
    }
}

impl MonicPoly {
    /// From the signed coefficients `a_0..a_d`; requires `d >= 1` and `a_0 = 1`.
    pub fn new(a: Vec<Rational>) -> Result<Self> {
        match a.first() {
            None => Err(Error::domain("a polynomial needs at least the coefficient a_0")),
            Some(_) if a.len() < 2 => Err(Error::domain("degree must be at least 1")),
            Some(lead) if !lead.is_one() => Err(Error::NotMonic(lead.clone())),
            Some(_) => Ok(MonicPoly { a }),
        }
    }

    /// `x^d`
    pub fn monomial(d: usize) -> Self {
        assert!(d >= 1);
        let mut a = vec![Rational::zero(); d + 1];
        a[0] = Rational::one();
        MonicPoly { a }
    }

    /// From ordinary coefficients listed from the leading one down:
    /// `c_0 x^d + c_1 x^{d-1} + ... + c_d`, with `c_0 = 1`.
    pub fn from_plain_coefficients(c: &[Rational]) -> Result<Self> {
        let a = c.iter().enumerate().map(|(i, ci)| ci * sign_pow(i)).collect();
        Self::new(a)
    }

    /// `Π (x - r_i)`; `a_i` is the `i`-th elementary symmetric polynomial of the roots.
    pub fn from_roots(roots: &[Rational]) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::domain("from_roots needs at least one root"));
        }
        let mut e = vec![Rational::zero(); roots.len() + 1];
        e[0] = Rational::one();
        for (k, r) in roots.iter().enumerate() {
            for i in (1..=k + 1).rev() {
                let prev = &e[i - 1] * r;
                e[i] += prev;
            }
        }
        Ok(MonicPoly { a: e })
    }

    pub fn from_varpoly(p: &VarPoly) -> Result<Self> {
        let d = p.degree().ok_or_else(|| Error::domain("zero polynomial"))?;
        let plain: Vec<Rational> = (0..=d).map(|i| p.coeff(d - i)).collect();
        Self::from_plain_coefficients(&plain)
    }

    pub fn degree(&self) -> usize {
        self.a.len() - 1
    }

    /// `a_0..a_d`
    pub fn a(&self) -> &[Rational] {
        &self.a
    }

    /// `a_i`, extended by zero for `i > d`.
    pub fn coeff(&self, i: usize) -> Rational {
        self.a.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Ordinary coefficients from the leading one down.
    pub fn plain_coefficients(&self) -> Vec<Rational> {
        self.a.iter().enumerate().map(|(i, ai)| ai * sign_pow(i)).collect()
    }

    /// The same polynomial as an ascending-coefficient `VarPoly` in `x`.
    pub fn to_varpoly(&self) -> VarPoly {
        let mut plain = self.plain_coefficients();
        plain.reverse();
        VarPoly::new(plain)
    }

    /// `D_λ p(x) = λ^{-d} p(λx)`, i.e. `a_i ↦ λ^{-i} a_i`; roots are divided by `λ`.
    /// `D_0 p = x^d`.
    pub fn dilate(&self, lambda: &Rational) -> MonicPoly {
        if lambda.is_zero() {
            return MonicPoly::monomial(self.degree());
        }
        let inv = lambda.recip();
        let mut scale = Rational::one();
        let a = self
            .a
            .iter()
            .map(|ai| {
                let v = ai * &scale;
                scale *= &inv;
                v
            })
            .collect();
        MonicPoly { a }
    }

    /// The polynomial whose roots are those of `self` shifted by `+c`, i.e. `p(x - c)`.
    pub fn translate(&self, c: &Rational) -> MonicPoly {
        MonicPoly::from_varpoly(&self.to_varpoly().shift(&-c)).expect("translation keeps p monic")
    }

    /// Moments `m_1..m_N` from the Newton identities
    /// `k a_k = Σ_{i=1}^k (-1)^{i-1} a_{k-i} b_i` with `a_k = 0` for `k > d`.
    /// Exact; no roots are computed.
    pub fn moments(&self, count: usize) -> MomentSequence {
        let d = self.degree();
        let mut power_sums: Vec<Rational> = Vec::with_capacity(count);
        for k in 1..=count {
            // (-1)^{k-1} b_k = k a_k - Σ_{i=1}^{k-1} (-1)^{i-1} a_{k-i} b_i
            let mut acc = self.coeff(k) * int(k as i64);
            for (i, b) in power_sums.iter().enumerate() {
                let i = i + 1;
                let term = self.coeff(k - i) * b;
                if i % 2 == 1 {
                    acc -= term;
                } else {
                    acc += term;
                }
            }
            power_sums.push(if k % 2 == 1 { acc } else { -acc });
        }
        let d_inv = int(d as i64).recip();
        MomentSequence {
            entries: power_sums.into_iter().map(|b| b * &d_inv).collect(),
            degree: Some(d),
        }
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        self.a
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (i, ai)| acc * x + ai * sign_pow(i))
    }

    pub fn evaluate_f64(&self, x: f64) -> f64 {
        self.a.iter().enumerate().fold(0.0, |acc, (i, ai)| {
            let c = to_f64(ai);
            acc * x + if i % 2 == 0 { c } else { -c }
        })
    }

    pub fn evaluate_complex(&self, z: Complex64) -> Complex64 {
        self.a.iter().enumerate().fold(Complex64::new(0.0, 0.0), |acc, (i, ai)| {
            let c = to_f64(ai);
            acc * z + if i % 2 == 0 { c } else { -c }
        })
    }

    /// Numeric roots with multiplicity, sorted by real then imaginary part.
    ///
    /// Roots are computed per square-free factor (Aberth iteration from a fixed
    /// starting configuration), so repeated roots are returned exactly repeated.
    /// Every root satisfies `|p(z)| <= tol * max(1, Σ |c_i| |z|^{d-i})`.
    pub fn roots(&self, tol: f64) -> Result<Vec<Complex64>> {
        roots::roots(self, tol)
    }

    /// Exact real-root counts from square-free decomposition and Sturm sequences.
    pub fn real_root_count(&self) -> RootCount {
        sturm::count_real_roots(self)
    }

    /// `Yes` iff all `d` roots (with multiplicity) are real. With `require_distinct`,
    /// a real-rooted polynomial with a repeated root is reported as `Boundary`.
    pub fn is_real_rooted(&self, require_distinct: bool) -> RealRootedness {
        self.real_root_count().classify(require_distinct)
    }

    pub fn has_distinct_real_roots(&self) -> bool {
        self.is_real_rooted(true) == RealRootedness::Yes
    }

    /// Mean of the roots, `a_1 / d`.
    pub fn root_mean(&self) -> Rational {
        &self.a[1] / int(self.degree() as i64)
    }
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, c) in self.plain_coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = d - i;
            let neg = c < &Rational::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}
