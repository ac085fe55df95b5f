//! Numeric roots by Aberth–Ehrlich iteration on each square-free factor.

use num_complex::Complex64;
use num_traits::Zero;

use super::sturm::{square_free_decomposition, sturm_distinct_real_roots};
use super::MonicPoly;
use crate::error::{Error, Result};
use crate::rational::to_f64;
use crate::varpoly::VarPoly;

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
const MAX_ITERATIONS: usize = 2000;

pub(crate) fn roots(p: &MonicPoly, tol: f64) -> Result<Vec<Complex64>> {
    if !(tol > 0.0) {
        return Err(Error::domain("root tolerance must be positive"));
    }
    let mut out = Vec::with_capacity(p.degree());
    for (factor, mult) in square_free_decomposition(&p.to_varpoly()) {
        let mut zs = factor_roots(&factor)?;
        if sturm_distinct_real_roots(&factor) == factor.degree().unwrap_or(0) {
            zs.iter_mut().for_each(|z| z.im = 0.0);
        }
        for z in zs {
            out.extend(std::iter::repeat_n(z, mult));
        }
    }
    let coeffs: Vec<f64> = p.plain_coefficients().iter().map(to_f64).collect();
    let worst = out
        .iter()
        .map(|&z| scaled_residual(&coeffs, z))
        .fold(0.0f64, f64::max);
    if worst > tol {
        return Err(Error::NoConvergence { iterations: MAX_ITERATIONS, residual: worst });
    }
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(out)
}

/// `|p(z)| / max(1, Σ |c_i| |z|^{d-i})` for descending coefficients `c`.
fn scaled_residual(coeffs: &[f64], z: Complex64) -> f64 {
    let (val, mag) = coeffs.iter().fold((Complex64::zero(), 0.0f64), |(v, m), &c| {
        (v * z + c, m * z.norm() + c.abs())
    });
    val.norm() / mag.max(1.0)
}

/// Roots of a monic square-free factor (ascending coefficients).
fn factor_roots(f: &VarPoly) -> Result<Vec<Complex64>> {
    let deg = f.degree().unwrap_or(0);
    // descending, monic
    let c: Vec<f64> = (0..=deg).rev().map(|k| to_f64(&f.coeff(k))).collect();
    match deg {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![Complex64::new(-c[1] / c[0], 0.0)]),
        _ => {}
    }
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for &ci in &c {
            dp = dp * z + p;
            p = p * z + ci;
        }
        (p, dp)
    };

    // Start on a circle around the root centroid; the phase offset keeps the
    // configuration off the real axis symmetry.
    let n = deg as f64;
    let center = -c[1] / (n * c[0]);
    let shifted = VarPoly::new((0..=deg).map(|k| f.coeff(k)).collect()).shift(&rational_from_f64(center));
    let radius = (1..=deg)
        .map(|i| to_f64(&shifted.coeff(deg - i)).abs().powf(1.0 / i as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n + 0.4;
            Complex64::new(center, 0.0) + Complex64::from_polar(radius, theta)
        })
        .collect();

    for _ in 0..MAX_ITERATIONS {
        let mut max_step = 0.0f64;
        for k in 0..deg {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..deg).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    // Newton polish on the simple roots
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*zk);
            if dp.norm() > 0.0 {
                let next = *zk - p / dp;
                if next.is_finite() && eval(next).0.norm() <= p.norm() {
                    *zk = next;
                }
            }
        }
    }
    Ok(z)
}

fn rational_from_f64(x: f64) -> crate::rational::Rational {
    crate::rational::Rational::from_float(x).unwrap_or_else(crate::rational::Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat, Rational};

    fn plain(c: &[Rational]) -> MonicPoly {
        MonicPoly::from_plain_coefficients(c).unwrap()
    }

    #[test]
    fn sqrt_two() {
        let r = plain(&[int(1), int(0), int(-2)]).roots(DEFAULT_ROOT_TOL).unwrap();
        assert!((r[0].re + 2f64.sqrt()).abs() < 1e-10 && r[0].im == 0.0);
        assert!((r[1].re - 2f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn monomial_has_zero_roots() {
        let r = MonicPoly::monomial(5).roots(DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(r, vec![Complex64::zero(); 5]);
    }

    #[test]
    fn poisson_quarter_roots() {
        let p = plain(&[int(1), int(-1), int(0), int(0), int(0)]);
        let r = p.roots(DEFAULT_ROOT_TOL).unwrap();
        let re: Vec<f64> = r.iter().map(|z| z.re).collect();
        assert_eq!(re, vec![0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn complex_pair() {
        let p = plain(&[int(1), rat(-4, 3), rat(1, 6), rat(1, 54), rat(5, 2592)]);
        let r = p.roots(DEFAULT_ROOT_TOL).unwrap();
        let expected = [(-0.0472193, -0.0656519), (-0.0472193, 0.0656519), (0.250561, 0.0), (1.17721, 0.0)];
        for (z, (re, im)) in r.iter().zip(expected) {
            assert!((z.re - re).abs() < 1e-5 && (z.im - im).abs() < 1e-5, "{z}");
        }
    }

    #[test]
    fn rejects_nonpositive_tolerance() {
        assert!(MonicPoly::monomial(2).roots(0.0).is_err());
    }
}
