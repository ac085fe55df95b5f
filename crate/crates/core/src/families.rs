//! Closed-form polynomial families: the central-limit (Hermite) polynomial,
//! the finite free Poisson polynomials, and rescaled convolution powers.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::convolution::boxplus_power;
use crate::error::{Error, Result};
use crate::polynomial::MonicPoly;
use crate::rational::{factorial, falling_factorial, int, powi, sign_pow, sqrt_approx, Rational};
use crate::varpoly::VarPoly;

/// Digits kept when `√n` is irrational in [`clt_rescaled_sum`].
pub const SQRT_DIGITS: u32 = 50;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum HermiteScaling {
    /// `κ_2 = 1`.
    #[default]
    Unit,
    /// `κ_2 = 1 - 1/d`.
    Marcus,
}

/// The fixed point of the finite free central limit theorem: cumulants
/// `(0, κ_2, 0, ..., 0)`, i.e. `a_{2i} = (d)_{2i}/d^i · (-κ_2)^i/(2^i i!)` and odd
/// coefficients zero. With `κ_2 = 1` this is `d^{-d/2} He_d(√d x)`.
pub fn hermite_clt(d: usize, scaling: HermiteScaling) -> Result<MonicPoly> {
    if d == 0 {
        return Err(Error::domain("degree must be at least 1"));
    }
    let dq = int(d as i64);
    let kappa2 = match scaling {
        HermiteScaling::Unit => Rational::one(),
        HermiteScaling::Marcus => Rational::one() - dq.recip(),
    };
    let a = (0..=d)
        .map(|k| {
            if k % 2 == 1 {
                return Rational::zero();
            }
            let i = k / 2;
            falling_factorial(&dq, k) / powi(&dq, i as i64) * powi(&-&kappa2, i as i64)
                / Rational::from_integer(factorial(i) << i)
        })
        .collect();
    MonicPoly::new(a)
}

/// Probabilists' Hermite polynomial `He_d(x) = d! Σ_i (-1)^i x^{d-2i} / (i! (d-2i)! 2^i)`.
pub fn hermite_polynomial(d: usize) -> VarPoly {
    let df = Rational::from_integer(factorial(d));
    let mut c = vec![Rational::zero(); d + 1];
    for i in 0..=d / 2 {
        let den = Rational::from_integer(factorial(i) * factorial(d - 2 * i) * (num_bigint::BigInt::one() << i));
        c[d - 2 * i] = &df * sign_pow(i) / den;
    }
    VarPoly::new(c)
}

/// The finite free Poisson polynomial: all cumulants equal `λ`,
/// `a_n = (d)_n (dλ)_n / (d^n n!)`. Requires `dλ` to be a positive integer.
pub fn finite_poisson(lambda: &Rational, d: usize) -> Result<MonicPoly> {
    if d == 0 {
        return Err(Error::domain("degree must be at least 1"));
    }
    let dq = int(d as i64);
    let dl = lambda * &dq;
    if !dl.is_integer() || !dl.is_positive() {
        return Err(Error::domain(format!("d·λ must be a positive integer, got {dl}")));
    }
    let a = (0..=d)
        .map(|n| {
            falling_factorial(&dq, n) * falling_factorial(&dl, n)
                / (powi(&dq, n as i64) * Rational::from_integer(factorial(n)))
        })
        .collect();
    MonicPoly::new(a)
}

/// Result of [`clt_rescaled_sum`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RescaledSum {
    pub poly: MonicPoly,
    /// True when `√n` is rational and the result is exact.
    pub exact: bool,
    /// Bound on `|a_i - a_i^{exact}|` over all coefficients; zero when exact.
    pub coeff_error_bound: f64,
}

/// `p^{⊞_d n}` with its roots divided by `√n`; cumulants become `n^{1-r/2} κ_r`.
///
/// The input must be centered (`κ_1 = 0`). When `n` is not a perfect square,
/// `√n` is replaced by a rational approximation with [`SQRT_DIGITS`] digits.
pub fn clt_rescaled_sum(p: &MonicPoly, n: u64) -> Result<RescaledSum> {
    if n == 0 {
        return Err(Error::domain("number of summands must be positive"));
    }
    if !p.root_mean().is_zero() {
        return Err(Error::domain(format!(
            "clt_rescaled_sum needs a centered polynomial (κ_1 = 0), got κ_1 = {}; translate it first",
            p.root_mean()
        )));
    }
    let nq = Rational::from_integer(n.into());
    let summed = boxplus_power(p, &nq)?;
    let (root, exact) = sqrt_approx(&nq, SQRT_DIGITS);
    let poly = summed.dilate(&root);
    let coeff_error_bound = if exact {
        0.0
    } else {
        // λ̂ = √n (1 + δ) with |δ| ≤ 10^{-SQRT_DIGITS-1}/√n; a_i carries λ^{-i}
        let delta = 10f64.powi(-(SQRT_DIGITS as i32) - 1) / (n as f64).sqrt();
        poly.a()
            .iter()
            .enumerate()
            .map(|(i, a)| a.abs().to_f64().unwrap_or(f64::INFINITY) * (i as f64) * delta * 1.01)
            .fold(0.0, f64::max)
    };
    Ok(RescaledSum { poly, exact, coeff_error_bound })
}

/// Largest absolute coefficient difference.
pub fn coefficient_distance(p: &MonicPoly, q: &MonicPoly) -> Result<Rational> {
    if p.degree() != q.degree() {
        return Err(Error::Dimension("degrees differ".into()));
    }
    Ok(p.a()
        .iter()
        .zip(q.a())
        .map(|(x, y)| (x - y).abs())
        .fold(Rational::zero(), |m, v| if v > m { v } else { m }))
}
