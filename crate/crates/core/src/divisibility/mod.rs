//! Infinite divisibility: Hankel positivity of cumulant sequences, the
//! classification of infinitely divisible polynomials, real-rootedness
//! thresholds for convolution powers, and the Cramer counterexample.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::convolution::{boxplus, boxplus_power};
use crate::error::{Error, Result};
use crate::polynomial::{MonicPoly, RealRootedness};
use crate::rational::{exact_sqrt, int, rat, Rational};
use crate::transforms::{
    coefficients_from_cumulants, cumulant_from_moments_at, cumulants_from_coefficients, rescale_cumulants,
    CumulantVector,
};

/// `M_ij = κ_{i+j}` for `1 <= i, j <= ⌊d/2⌋`, from `seq = κ_1..κ_d`.
pub fn hankel_matrix(seq: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    if seq.len() < 2 {
        return Err(Error::domain("a Hankel test needs at least κ_1 and κ_2"));
    }
    let m = seq.len() / 2;
    Ok((1..=m).map(|i| (1..=m).map(|j| seq[i + j - 1].clone()).collect()).collect())
}

fn determinant(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            if f.is_zero() {
                continue;
            }
            for k in c..n {
                let v = &f * &a[c][k];
                a[r][k] -= v;
            }
        }
    }
    det
}

/// Leading principal minors of the Hankel matrix, exactly.
pub fn hankel_leading_minors(seq: &[Rational]) -> Result<Vec<Rational>> {
    let h = hankel_matrix(seq)?;
    Ok((1..=h.len())
        .map(|k| determinant(h[..k].iter().map(|row| row[..k].to_vec()).collect()))
        .collect())
}

/// Exact positive semidefiniteness of a symmetric rational matrix.
///
/// A negative diagonal entry fails. A zero diagonal entry needs a zero row,
/// which is then dropped. Otherwise eliminate a positive pivot and recurse on
/// the Schur complement.
pub fn is_positive_semidefinite(m: &[Vec<Rational>]) -> bool {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    loop {
        let n = a.len();
        if n == 0 {
            return true;
        }
        if a.iter().enumerate().any(|(i, row)| row[i].is_negative()) {
            return false;
        }
        if let Some(z) = (0..n).find(|&i| a[i][i].is_zero()) {
            if a[z].iter().any(|v| !v.is_zero()) {
                return false;
            }
            a.remove(z);
            for row in &mut a {
                row.remove(z);
            }
            continue;
        }
        let pivot = a[0][0].clone();
        let first: Vec<Rational> = a[0].clone();
        a = (1..n)
            .map(|i| (1..n).map(|j| &a[i][j] - &first[i] * &first[j] / &pivot).collect())
            .collect();
    }
}

/// Whether `Σ α_i α_j κ_{i+j} >= 0` on the largest window a degree-`d` sequence
/// supports: the Hankel matrix of size `⌊d/2⌋`.
pub fn is_conditionally_positive_definite(seq: &[Rational]) -> Result<bool> {
    Ok(is_positive_semidefinite(&hankel_matrix(seq)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    InfinitelyDivisible,
    NotInfinitelyDivisible,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IDReport {
    /// Roots shifted to mean zero and, when `√κ_2` is rational, scaled to `κ_2 = 1`.
    pub centered_normalized: MonicPoly,
    /// False when `κ_2` is zero or not a rational square, so only centering was applied.
    pub normalized: bool,
    pub cpd_standard: bool,
    pub cpd_rescaled: bool,
    pub higher_cumulants_zero: bool,
    pub verdict: Verdict,
}

/// Classifies a real-rooted polynomial: after centering and normalizing, it is
/// infinitely divisible iff every cumulant of order 3 and up vanishes. Whether
/// `κ_n = 0` does not depend on the scale, so an irrational `√κ_2` is no obstacle.
pub fn infinite_divisibility_report(p: &MonicPoly) -> Result<IDReport> {
    if p.is_real_rooted(false) == RealRootedness::No {
        return Err(Error::domain("infinite divisibility is only defined for real-rooted polynomials"));
    }
    let centered = p.translate(&-p.root_mean());
    let k = cumulants_from_coefficients(&centered)?;
    let kappa2 = k.get(2).cloned().unwrap_or_else(Rational::zero);
    let (centered_normalized, normalized) = match exact_sqrt(&kappa2) {
        Some(s) if kappa2.is_positive() => (centered.dilate(&s), true),
        _ => (centered, false),
    };
    let k = cumulants_from_coefficients(&centered_normalized)?;
    let higher_cumulants_zero = k.kappa().iter().skip(2).all(Zero::is_zero);
    let (cpd_standard, cpd_rescaled) = if k.d() < 2 {
        (true, true)
    } else {
        (
            is_conditionally_positive_definite(k.kappa())?,
            is_conditionally_positive_definite(rescale_cumulants(&k).kappa())?,
        )
    };
    let verdict = if higher_cumulants_zero { Verdict::InfinitelyDivisible } else { Verdict::NotInfinitelyDivisible };
    Ok(IDReport { centered_normalized, normalized, cpd_standard, cpd_rescaled, higher_cumulants_zero, verdict })
}

/// `(c_1, c_2)` with `κ_4 = c_1 m_4 + c_2 m_2^2` for centered polynomials of degree `d >= 4`.
pub fn centered_fourth_cumulant_coefficients(d: usize) -> Result<(Rational, Rational)> {
    if d < 4 {
        return Err(Error::domain("κ_4 needs d >= 4"));
    }
    let dq = int(d as i64);
    let c1 = cumulant_from_moments_at(&[int(0), int(0), int(0), int(1)], &dq, 4)?;
    let c2 = cumulant_from_moments_at(&[int(0), int(1), int(0), int(0)], &dq, 4)?;
    Ok((c1, c2))
}

/// Grid of the threshold scan: `1/16, 1/8, ...` doubling up to `t_max`, which is
/// appended when it is not itself a grid point.
pub fn threshold_grid(t_max: &Rational) -> Vec<Rational> {
    let mut grid = Vec::new();
    let mut t = rat(1, 16);
    while &t <= t_max {
        grid.push(t.clone());
        t *= int(2);
    }
    if grid.last() != Some(t_max) && t_max.is_positive() {
        grid.push(t_max.clone());
    }
    grid
}

fn distinct_real_at(p: &MonicPoly, t: &Rational) -> Result<bool> {
    Ok(boxplus_power(p, t)?.has_distinct_real_roots())
}

/// Smallest `t` on the grid of [`threshold_grid`] from which every sampled power
/// `p^{⊞t}` has `d` distinct real roots, refined by `steps` bisection steps
/// between the last failing and first passing grid points. `None` when
/// `p^{⊞t_max}` itself fails.
pub fn real_rooted_threshold(p: &MonicPoly, t_max: &Rational, steps: u32) -> Result<Option<Rational>> {
    if p.a().iter().skip(1).all(Zero::is_zero) {
        return Err(Error::domain("every power of x^d is x^d; the threshold is undefined"));
    }
    if !t_max.is_positive() {
        return Err(Error::domain("t_max must be positive"));
    }
    let grid = threshold_grid(t_max);
    let ok: Vec<bool> = grid.par_iter().map(|t| distinct_real_at(p, t)).collect::<Result<_>>()?;
    if !ok.last().copied().unwrap_or(false) {
        return Ok(None);
    }
    let Some(bad) = ok.iter().rposition(|&b| !b) else {
        return Ok(Some(grid[0].clone()));
    };
    let (mut lo, mut hi) = (grid[bad].clone(), grid[bad + 1].clone());
    for _ in 0..steps {
        let mid = (&lo + &hi) / int(2);
        if distinct_real_at(p, &mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CramerExample {
    /// Cumulants `(0, 1, ε, 0, ..., 0)`.
    pub p_plus: MonicPoly,
    /// Cumulants `(0, 1, -ε, 0, ..., 0)`.
    pub p_minus: MonicPoly,
    /// `p_plus ⊞ p_minus`, cumulants `(0, 2, 0, ..., 0)`.
    pub convolution: MonicPoly,
    /// `p_plus^{⊞1/2} ⊞ p_minus^{⊞1/2}`, which is exactly the Hermite polynomial.
    pub halved_convolution: MonicPoly,
    pub plus_real_rooted: bool,
    pub minus_real_rooted: bool,
}

/// Two polynomials, neither a dilation of the Hermite polynomial, whose
/// convolution is one.
pub fn cramer_counterexample(d: usize, eps: &Rational) -> Result<CramerExample> {
    if d < 3 {
        return Err(Error::domain("the construction needs κ_3, so d >= 3"));
    }
    let build = |sign: i64| -> Result<MonicPoly> {
        let mut kappa = vec![Rational::zero(); d];
        kappa[1] = int(1);
        kappa[2] = eps * int(sign);
        coefficients_from_cumulants(&CumulantVector::standard(kappa)?)
    };
    let p_plus = build(1)?;
    let p_minus = build(-1)?;
    let convolution = boxplus(&p_plus, &p_minus)?;
    let half = rat(1, 2);
    let halved_convolution = boxplus(&boxplus_power(&p_plus, &half)?, &boxplus_power(&p_minus, &half)?)?;
    Ok(CramerExample {
        plus_real_rooted: p_plus.is_real_rooted(false) == RealRootedness::Yes,
        minus_real_rooted: p_minus.is_real_rooted(false) == RealRootedness::Yes,
        p_plus,
        p_minus,
        convolution,
        halved_convolution,
    })
}

/// Largest `ε` found by bisection on `(0, eps_max]` for which both Cramer
/// polynomials are real-rooted, or `None` if even `eps_max / 2^steps` fails.
pub fn cramer_epsilon(d: usize, eps_max: &Rational, steps: u32) -> Result<Option<Rational>> {
    let works = |e: &Rational| -> Result<bool> {
        let ex = cramer_counterexample(d, e)?;
        Ok(ex.plus_real_rooted && ex.minus_real_rooted)
    };
    if works(eps_max)? {
        return Ok(Some(eps_max.clone()));
    }
    let mut lo = eps_max.clone();
    for _ in 0..steps {
        lo /= int(2);
        if works(&lo)? {
            break;
        }
    }
    if !works(&lo)? {
        return Ok(None);
    }
    let mut hi = &lo * int(2);
    for _ in 0..steps {
        let mid = (&lo + &hi) / int(2);
        if works(&mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(lo))
}

#[cfg(test)]
mod tests;
