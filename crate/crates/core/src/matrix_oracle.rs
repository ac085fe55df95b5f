//! Monte-Carlo check of `⊞_d` as the expected characteristic polynomial of
//! `A + Q B Qᵀ` over Haar-distributed orthogonal `Q`.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polynomial::{MonicPoly, RealRootedness, DEFAULT_ROOT_TOL};
use crate::rational::to_f64;

pub const MIN_SAMPLES: usize = 1000;
/// Samples per independent RNG stream.
pub const CHUNK: usize = 4096;
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix, with the
/// columns of `Q` multiplied by the signs of `diag(R)`.
pub fn sample_haar_orthogonal<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::from_fn(d, d, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..d {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// Coefficients `a_0..a_d` of `det(xI - M)` in the signed convention, by the
/// Faddeev-LeVerrier recursion.
pub fn char_poly(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    let d = m.nrows();
    if m.ncols() != d {
        return Err(Error::Dimension(format!("matrix is {}x{}, not square", d, m.ncols())));
    }
    let scale = m.amax().max(1.0);
    if (m - m.transpose()).amax() > SYMMETRY_TOL * scale {
        return Err(Error::domain("char_poly expects a symmetric matrix"));
    }
    Ok(faddeev_leverrier(m))
}

fn faddeev_leverrier(m: &DMatrix<f64>) -> Vec<f64> {
    let d = m.nrows();
    // c_{d-k} = -tr(M M_k)/k with M_k = M M_{k-1} + c_{d-k+1} I; a_k = (-1)^k c_{d-k}
    let mut a = vec![1.0; d + 1];
    let mut mk = DMatrix::<f64>::zeros(d, d);
    let mut c_prev = 1.0;
    for k in 1..=d {
        mk = m * &mk;
        for i in 0..d {
            mk[(i, i)] += c_prev;
        }
        let c = -(m * &mk).trace() / k as f64;
        a[k] = if k % 2 == 0 { c } else { -c };
        c_prev = c;
    }
    a
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MCEstimate {
    pub d: usize,
    pub samples: usize,
    pub coeff_mean: Vec<f64>,
    pub coeff_stderr: Vec<f64>,
    pub seed: u64,
}

impl MCEstimate {
    /// Per coefficient: `|exact - mean| <= sigmas · stderr + floor`.
    pub fn agrees_with(&self, exact: &MonicPoly, sigmas: f64, floor: f64) -> Vec<bool> {
        exact
            .a()
            .iter()
            .zip(self.coeff_mean.iter().zip(&self.coeff_stderr))
            .map(|(a, (m, s))| (to_f64(a) - m).abs() <= sigmas * s + floor)
            .collect()
    }
}

/// Running mean and sum of squared deviations per coefficient.
#[derive(Clone)]
struct Welford {
    n: usize,
    mean: Vec<f64>,
    m2: Vec<f64>,
}

impl Welford {
    fn new(len: usize) -> Self {
        Welford { n: 0, mean: vec![0.0; len], m2: vec![0.0; len] }
    }

    fn push(&mut self, x: &[f64]) {
        self.n += 1;
        let n = self.n as f64;
        for ((m, s), &v) in self.mean.iter_mut().zip(&mut self.m2).zip(x) {
            let delta = v - *m;
            *m += delta / n;
            *s += delta * (v - *m);
        }
    }

    fn merge(mut self, other: &Welford) -> Welford {
        if other.n == 0 {
            return self;
        }
        let (na, nb) = (self.n as f64, other.n as f64);
        let n = na + nb;
        for i in 0..self.mean.len() {
            let delta = other.mean[i] - self.mean[i];
            self.mean[i] += delta * nb / n;
            self.m2[i] += other.m2[i] + delta * delta * na * nb / n;
        }
        self.n += other.n;
        self
    }
}

fn real_roots(p: &MonicPoly, name: &str) -> Result<Vec<f64>> {
    if p.is_real_rooted(false) != RealRootedness::Yes {
        return Err(Error::domain(format!("{name} must be real-rooted for the matrix model")));
    }
    Ok(p.roots(DEFAULT_ROOT_TOL)?.iter().map(|z| z.re).collect())
}

/// Estimates `p ⊞_d q` by averaging `char_poly(A + Q B Qᵀ)` over `samples` Haar
/// draws, with `A`, `B` diagonal root matrices. Chunk `i` draws from the ChaCha
/// stream `(seed, i)` and chunks are merged in index order, so the result is
/// reproducible bit for bit.
pub fn mc_boxplus(p: &MonicPoly, q: &MonicPoly, samples: usize, seed: u64) -> Result<MCEstimate> {
    let d = p.degree();
    if q.degree() != d {
        return Err(Error::Dimension(format!("degrees {d} and {} differ", q.degree())));
    }
    if samples < MIN_SAMPLES {
        return Err(Error::domain(format!("need at least {MIN_SAMPLES} samples, got {samples}")));
    }
    let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(real_roots(p, "p")?));
    let b = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(real_roots(q, "q")?));
    let chunks = samples.div_ceil(CHUNK);
    let partial: Vec<Welford> = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let count = CHUNK.min(samples - i * CHUNK);
            let mut w = Welford::new(d + 1);
            for _ in 0..count {
                let qm = sample_haar_orthogonal(d, &mut rng);
                let mut m = &a + &qm * &b * qm.transpose();
                // symmetrize away rounding so the recursion sees an exactly symmetric matrix
                m = (&m + m.transpose()) * 0.5;
                w.push(&faddeev_leverrier(&m));
            }
            w
        })
        .collect();
    let total = partial.iter().fold(Welford::new(d + 1), |acc, w| acc.merge(w));
    let n = total.n as f64;
    let mut coeff_mean = total.mean;
    coeff_mean[0] = 1.0;
    let coeff_stderr = total.m2.iter().map(|s| (s / (n - 1.0)).max(0.0).sqrt() / n.sqrt()).collect();
    Ok(MCEstimate { d, samples, coeff_mean, coeff_stderr, seed })
}
