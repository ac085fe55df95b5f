//! Exact transforms between coefficients, moments and finite free cumulants.
//!
//! Every transform is a literal sum over the set-partition lattice `P(n)`.
//! Summands depend on a partition only through its block sizes, so the sums
//! run over the memoized type classes of [`lattice_table`], each weighted by
//! the number of partitions of that type.
//!
//! Cumulants are the `d` coefficients of the truncated R-transform, computed
//! in closed form as
//!
//! ```text
//! κ_n = (-d)^n / (d (n-1)!) Σ_{π ∈ P(n)} (-1)^{|π|} N!_π a_π (|π|-1)! / (d)_π
//! a_n = (d)_n / (d^n n!)    Σ_{π ∈ P(n)} d^{|π|} μ(0_n, π) κ_π
//! ```
//!
//! and the moment-cumulant relations use the interval sums over `π ⪰ σ`.

mod lattice_poly;

pub use lattice_poly::{p_sigma, p_sigma_join_form, p_sigma_leading_coefficient, q_sigma, JOIN_FORM_SIGN};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{check_size, lattice_table, TypeClass};
use crate::polynomial::{MomentSequence, MonicPoly};
use crate::rational::{factorial, falling_factorial, int, powi, sign_pow, Rational};
use crate::varpoly::VarPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CumulantVariant {
    /// `κ_n`, with leading term `d^n/(d)_n · m_n`.
    Standard,
    /// `κ̃_n = (d)_n/d^n · κ_n`, with leading term `m_n`.
    Rescaled,
}

impl CumulantVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            CumulantVariant::Standard => "standard",
            CumulantVariant::Rescaled => "rescaled",
        }
    }
}

/// Finite free cumulants `κ_1..κ_d` of a degree-`d` polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CumulantVector {
    d: usize,
    kappa: Vec<Rational>,
    variant: CumulantVariant,
}

impl CumulantVector {
    pub fn new(d: usize, kappa: Vec<Rational>, variant: CumulantVariant) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("degree must be at least 1"));
        }
        if kappa.len() != d {
            return Err(Error::Dimension(format!(
                "a degree-{d} polynomial has exactly {d} cumulants, got {}",
                kappa.len()
            )));
        }
        Ok(CumulantVector { d, kappa, variant })
    }

    pub fn standard(kappa: Vec<Rational>) -> Result<Self> {
        Self::new(kappa.len(), kappa, CumulantVariant::Standard)
    }

    pub fn zeros(d: usize) -> Self {
        CumulantVector { d, kappa: vec![Rational::zero(); d], variant: CumulantVariant::Standard }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn variant(&self) -> CumulantVariant {
        self.variant
    }

    /// `κ_1..κ_d`; `kappa()[n-1]` is `κ_n`.
    pub fn kappa(&self) -> &[Rational] {
        &self.kappa
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        n.checked_sub(1).and_then(|i| self.kappa.get(i))
    }

    /// Toggles between the standard and rescaled variants.
    pub fn rescale(&self) -> CumulantVector {
        let d = int(self.d as i64);
        let kappa = self
            .kappa
            .iter()
            .enumerate()
            .map(|(i, k)| {
                let n = i + 1;
                let factor = falling_factorial(&d, n) / powi(&d, n as i64);
                match self.variant {
                    CumulantVariant::Standard => k * factor,
                    CumulantVariant::Rescaled => k / factor,
                }
            })
            .collect();
        let variant = match self.variant {
            CumulantVariant::Standard => CumulantVariant::Rescaled,
            CumulantVariant::Rescaled => CumulantVariant::Standard,
        };
        CumulantVector { d: self.d, kappa, variant }
    }

    pub fn to_standard(&self) -> CumulantVector {
        match self.variant {
            CumulantVariant::Standard => self.clone(),
            CumulantVariant::Rescaled => self.rescale(),
        }
    }

    /// Componentwise `t · κ` (same variant).
    pub fn scale(&self, t: &Rational) -> CumulantVector {
        CumulantVector {
            d: self.d,
            kappa: self.kappa.iter().map(|k| k * t).collect(),
            variant: self.variant,
        }
    }

    /// Componentwise sum; both vectors must share degree and variant.
    pub fn add(&self, other: &CumulantVector) -> Result<CumulantVector> {
        if self.d != other.d || self.variant != other.variant {
            return Err(Error::Dimension("cumulant vectors differ in degree or variant".into()));
        }
        Ok(CumulantVector {
            d: self.d,
            kappa: self.kappa.iter().zip(&other.kappa).map(|(a, b)| a + b).collect(),
            variant: self.variant,
        })
    }
}

pub fn rescale_cumulants(k: &CumulantVector) -> CumulantVector {
    k.rescale()
}

/// `Σ_{classes} count_all · f(class)`
fn sum_over_types(n: usize, mut f: impl FnMut(&TypeClass) -> Result<Rational>) -> Result<Rational> {
    let table = lattice_table(n)?;
    let mut acc = Rational::zero();
    for class in table.classes() {
        acc += f(class)? * int(class.count_all as i64);
    }
    Ok(acc)
}

fn product_over_blocks(sizes: &[usize], f: &[Rational]) -> Rational {
    sizes.iter().fold(Rational::one(), |acc, &s| acc * &f[s])
}

fn factorials(n: usize) -> Vec<Rational> {
    (0..=n).map(|k| Rational::from_integer(factorial(k))).collect()
}

/// `(d)_k` for `k = 0..=n`, refusing zero values (`d` would be an integer below `n`).
fn nonzero_falling(d: &Rational, n: usize) -> Result<Vec<Rational>> {
    let ff: Vec<Rational> = (0..=n).map(|k| falling_factorial(d, k)).collect();
    if ff.iter().any(Zero::is_zero) {
        return Err(Error::domain(format!(
            "(d)_k vanishes for d = {d} and some k <= {n}; cumulants of order {n} need d >= {n}"
        )));
    }
    Ok(ff)
}

/// `κ_n` from `a_1..a_n` at degree `d` (rational `d` allowed, `(d)_k ≠ 0`).
fn cumulant_from_coefficients_at(a: &[Rational], d: &Rational, n: usize) -> Result<Rational> {
    let ff = nonzero_falling(d, n)?;
    let fact = factorials(n);
    // g_s = s! a_s / (d)_s
    let g: Vec<Rational> = (0..=n)
        .map(|s| if s == 0 { Rational::one() } else { &fact[s] * coeff_at(a, s) / &ff[s] })
        .collect();
    let sum = sum_over_types(n, |class| {
        let k = class.num_blocks();
        Ok(sign_pow(k) * &fact[k - 1] * product_over_blocks(&class.sizes, &g))
    })?;
    let minus_d = -d;
    Ok(powi(&minus_d, n as i64) / (d * &fact[n - 1]) * sum)
}

fn coeff_at(a: &[Rational], s: usize) -> Rational {
    a.get(s).cloned().unwrap_or_else(Rational::zero)
}

/// `κ_1..κ_d` from the coefficients.
pub fn cumulants_from_coefficients(p: &MonicPoly) -> Result<CumulantVector> {
    let d = p.degree();
    check_size(d)?;
    let dq = int(d as i64);
    let kappa = (1..=d)
        .map(|n| cumulant_from_coefficients_at(p.a(), &dq, n))
        .collect::<Result<Vec<_>>>()?;
    CumulantVector::new(d, kappa, CumulantVariant::Standard)
}

/// `a_1..a_upto` from cumulant values at degree `d`; missing `κ_j` count as zero.
pub(crate) fn coefficients_from_cumulant_values(kappa: &[Rational], d: &Rational, upto: usize) -> Result<Vec<Rational>> {
    let fact = factorials(upto);
    let mut k = vec![Rational::zero(); upto + 1];
    for (i, v) in kappa.iter().take(upto).enumerate() {
        k[i + 1] = v.clone();
    }
    let mut a = vec![Rational::one()];
    for n in 1..=upto {
        let sum = sum_over_types(n, |class| {
            Ok(powi(d, class.num_blocks() as i64) * int(class.mobius) * product_over_blocks(&class.sizes, &k))
        })?;
        a.push(falling_factorial(d, n) / (powi(d, n as i64) * &fact[n]) * sum);
    }
    Ok(a)
}

/// Inverse of [`cumulants_from_coefficients`].
pub fn coefficients_from_cumulants(k: &CumulantVector) -> Result<MonicPoly> {
    let k = k.to_standard();
    check_size(k.d())?;
    let a = coefficients_from_cumulant_values(k.kappa(), &int(k.d() as i64), k.d())?;
    MonicPoly::new(a)
}

/// `a_n = (1/n!) Σ_{π ∈ P(n)} d^{|π|} μ(0, π) m_π` for `n = 1..d`.
pub fn coefficients_from_moments(m: &MomentSequence, d: usize) -> Result<MonicPoly> {
    check_size(d)?;
    if m.len() < d {
        return Err(Error::Dimension(format!(
            "a degree-{d} polynomial needs {d} moments, got {}",
            m.len()
        )));
    }
    let dq = int(d as i64);
    let fact = factorials(d);
    let mut mv = vec![Rational::zero()];
    mv.extend(m.entries().iter().take(d).cloned());
    let mut a = vec![Rational::one()];
    for n in 1..=d {
        let sum = sum_over_types(n, |class| {
            Ok(powi(&dq, class.num_blocks() as i64) * int(class.mobius) * product_over_blocks(&class.sizes, &mv))
        })?;
        a.push(sum / &fact[n]);
    }
    MonicPoly::new(a)
}

/// `m_n = (-1)^n/(d (n-1)!) Σ_{π ∈ P(n)} (-1)^{|π|} N!_π (|π|-1)! a_π` with `a_k = 0`
/// for `k > d`. Beyond the partition cap the Newton identities are used instead.
pub fn moments_from_coefficients(p: &MonicPoly, count: usize) -> Result<MomentSequence> {
    if count == 0 {
        return Err(Error::domain("need at least one moment"));
    }
    if count > crate::partitions::partition_cap() {
        return Ok(p.moments(count));
    }
    let d = int(p.degree() as i64);
    let fact = factorials(count);
    // g_s = s! a_s
    let g: Vec<Rational> = (0..=count).map(|s| &fact[s] * p.coeff(s)).collect();
    let entries = (1..=count)
        .map(|n| {
            let sum = sum_over_types(n, |class| {
                let k = class.num_blocks();
                Ok(sign_pow(k) * &fact[k - 1] * product_over_blocks(&class.sizes, &g))
            })?;
            Ok(sign_pow(n) / (&d * &fact[n - 1]) * sum)
        })
        .collect::<Result<Vec<_>>>()?;
    MomentSequence::new(entries, Some(p.degree()))
}

/// `Σ_{π ⪰ σ} (-1)^{|π|} (|π|-1)! / (d)_π` for the class of `σ`.
fn interval_sum_inverse(n: usize, class_index: usize, ff: &[Rational], fact: &[Rational]) -> Result<Rational> {
    let table = lattice_table(n)?;
    let mut acc = Rational::zero();
    for &(j, c) in table.coarsenings(class_index) {
        let rho = &table.classes()[j];
        let k = rho.num_blocks();
        acc += sign_pow(k) * &fact[k - 1] * int(c as i64) / product_over_blocks(&rho.sizes, ff);
    }
    Ok(acc)
}

/// `P_σ(d) = Σ_{π ⪰ σ} (-1)^{|π|} (d)_π (|π|-1)!` evaluated at a rational `d`.
pub(crate) fn interval_sum_falling(n: usize, class_index: usize, ff: &[Rational], fact: &[Rational]) -> Result<Rational> {
    let table = lattice_table(n)?;
    let mut acc = Rational::zero();
    for &(j, c) in table.coarsenings(class_index) {
        let rho = &table.classes()[j];
        let k = rho.num_blocks();
        acc += sign_pow(k) * &fact[k - 1] * int(c as i64) * product_over_blocks(&rho.sizes, ff);
    }
    Ok(acc)
}

/// The single cumulant `κ_n` at degree `d` from `m_1..m_n`:
///
/// `κ_n = (-1)^n d^{n-1}/(n-1)! Σ_σ d^{|σ|} μ(0,σ) m_σ Σ_{π ⪰ σ} (-1)^{|π|}(|π|-1)!/(d)_π`.
///
/// The cost depends on `n` only, so `d` may be large.
pub fn cumulant_from_moments_at(m: &[Rational], d: &Rational, n: usize) -> Result<Rational> {
    check_size(n)?;
    if m.len() < n {
        return Err(Error::Dimension(format!("κ_{n} needs {n} moments, got {}", m.len())));
    }
    let ff = nonzero_falling(d, n)?;
    let fact = factorials(n);
    let mut mv = vec![Rational::zero()];
    mv.extend(m.iter().take(n).cloned());
    let table = lattice_table(n)?;
    let mut sum = Rational::zero();
    for (i, class) in table.classes().iter().enumerate() {
        let inner = interval_sum_inverse(n, i, &ff, &fact)?;
        sum += int(class.count_all as i64)
            * powi(d, class.num_blocks() as i64)
            * int(class.mobius)
            * product_over_blocks(&class.sizes, &mv)
            * inner;
    }
    Ok(sign_pow(n) * powi(d, n as i64 - 1) / &fact[n - 1] * sum)
}

/// `κ_1..κ_d` from the first `d` moments.
pub fn cumulants_from_moments(m: &MomentSequence, d: usize) -> Result<CumulantVector> {
    check_size(d)?;
    if m.len() < d {
        return Err(Error::Dimension(format!(
            "a degree-{d} polynomial needs {d} moments, got {}",
            m.len()
        )));
    }
    let dq = int(d as i64);
    let kappa = (1..=d)
        .map(|n| cumulant_from_moments_at(m.entries(), &dq, n))
        .collect::<Result<Vec<_>>>()?;
    CumulantVector::new(d, kappa, CumulantVariant::Standard)
}

/// `m_1..m_count` from cumulant values at a rational degree `d`:
///
/// `m_n = (-1)^n/(d^{n+1}(n-1)!) Σ_σ d^{|σ|} μ(0,σ) κ_σ P_σ(d)`,
///
/// with `κ_j = 0` for `j` past the end of `kappa`.
pub fn moments_from_cumulant_values(kappa: &[Rational], d: &Rational, count: usize) -> Result<Vec<Rational>> {
    check_size(count)?;
    if d.is_zero() {
        return Err(Error::domain("degree d must be nonzero"));
    }
    let mut k = vec![Rational::zero(); count + 1];
    for (i, v) in kappa.iter().take(count).enumerate() {
        k[i + 1] = v.clone();
    }
    let fact = factorials(count);
    let ff: Vec<Rational> = (0..=count).map(|j| falling_factorial(d, j)).collect();
    (1..=count)
        .map(|n| {
            let table = lattice_table(n)?;
            let mut sum = Rational::zero();
            for (i, class) in table.classes().iter().enumerate() {
                let kp = product_over_blocks(&class.sizes, &k);
                if kp.is_zero() {
                    continue;
                }
                sum += int(class.count_all as i64)
                    * powi(d, class.num_blocks() as i64)
                    * int(class.mobius)
                    * kp
                    * interval_sum_falling(n, i, &ff, &fact)?;
            }
            Ok(sign_pow(n) / (powi(d, n as i64 + 1) * &fact[n - 1]) * sum)
        })
        .collect()
}

/// Moments `m_1..m_count` of the polynomial with cumulants `k`.
pub fn moments_from_cumulants(k: &CumulantVector, count: usize) -> Result<MomentSequence> {
    let k = k.to_standard();
    let entries = moments_from_cumulant_values(k.kappa(), &int(k.d() as i64), count)?;
    MomentSequence::new(entries, Some(k.d()))
}

/// `R̃_p(s) = Σ_{j=0}^{d-1} κ_{j+1} s^j`.
pub fn truncated_r_transform(p: &MonicPoly) -> Result<VarPoly> {
    Ok(VarPoly::new(cumulants_from_coefficients(p)?.kappa().to_vec()))
}
