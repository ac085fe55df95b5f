//! Free cumulants over non-crossing partitions, and how the finite free
//! cumulants approach them as the degree grows.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{check_size, lattice_table};
use crate::polynomial::MomentSequence;
use crate::rational::{int, serde_one, serde_vec, Rational};
use crate::transforms::cumulant_from_moments_at;

/// Free cumulants `r_1..r_N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FreeCumulantVector {
    #[serde(with = "serde_vec")]
    entries: Vec<Rational>,
}

impl FreeCumulantVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::domain("free cumulant vector needs at least r_1"));
        }
        Ok(FreeCumulantVector { entries })
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// `r_n`, zero past the stored entries.
    pub fn get(&self, n: usize) -> Rational {
        n.checked_sub(1)
            .and_then(|i| self.entries.get(i))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

/// `Σ_{π ∈ NC(n), π ≠ 1_n} r_π`, plus `r_n` itself when `include_top`.
fn nc_sum(r: &[Rational], n: usize, include_top: bool) -> Result<Rational> {
    let table = lattice_table(n)?;
    let mut acc = Rational::zero();
    for class in table.classes() {
        if class.count_noncrossing == 0 || (!include_top && class.num_blocks() == 1) {
            continue;
        }
        let prod = class.sizes.iter().fold(Rational::one(), |p, &s| p * &r[s]);
        acc += prod * int(class.count_noncrossing as i64);
    }
    Ok(acc)
}

/// `m_n = Σ_{π ∈ NC(n)} r_π` for `n = 1..count`; entries past `r` count as zero.
pub fn free_moments_from_free_cumulants(r: &FreeCumulantVector, count: usize) -> Result<MomentSequence> {
    check_size(count)?;
    let rv: Vec<Rational> = (0..=count).map(|n| r.get(n)).collect();
    let entries = (1..=count).map(|n| nc_sum(&rv, n, true)).collect::<Result<Vec<_>>>()?;
    MomentSequence::new(entries, None)
}

/// Inverts the non-crossing moment-cumulant formula triangularly:
/// `r_n = m_n - Σ_{π ∈ NC(n), π ≠ 1_n} r_π`.
pub fn free_cumulants_from_moments(m: &MomentSequence, count: usize) -> Result<FreeCumulantVector> {
    check_size(count)?;
    if m.len() < count {
        return Err(Error::Dimension(format!("{count} free cumulants need {count} moments, got {}", m.len())));
    }
    let mut r = vec![Rational::zero(); count + 1];
    for n in 1..=count {
        r[n] = m.get(n).expect("length checked") - nc_sum(&r, n, false)?;
    }
    r.remove(0);
    FreeCumulantVector::new(r)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub d: usize,
    #[serde(with = "serde_one")]
    pub finite_kappa: Rational,
    #[serde(with = "serde_one")]
    pub error: Rational,
}

/// `κ_n^{(d)}` of the moments generated by `r`, against `r_n`, for several `d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub n: usize,
    #[serde(with = "serde_one")]
    pub free_kappa: Rational,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    pub fn errors(&self) -> Vec<&Rational> {
        self.rows.iter().map(|r| &r.error).collect()
    }
}

/// For each `d`, the finite free cumulant `κ_n^{(d)}` of the moment sequence with
/// free cumulants `r`, and the exact error `|κ_n^{(d)} - r_n|`. Requires `d >= n`.
pub fn convergence_report(r: &FreeCumulantVector, n: usize, d_values: &[usize]) -> Result<ConvergenceReport> {
    check_size(n)?;
    if let Some(&d) = d_values.iter().find(|&&d| d < n) {
        return Err(Error::domain(format!("κ_{n} is only defined for degree d >= {n}, got d = {d}")));
    }
    let m = free_moments_from_free_cumulants(r, n)?;
    let free_kappa = r.get(n);
    let rows = d_values
        .iter()
        .map(|&d| {
            let k = cumulant_from_moments_at(m.entries(), &int(d as i64), n)?;
            let error = (&k - &free_kappa).abs();
            Ok(ConvergenceRow { d, finite_kappa: k, error })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport { n, free_kappa, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_noncrossing, enumerate_partitions, multiplicative_extension};
    use crate::rational::{powi, rat};
    use crate::transforms::q_sigma;
    use proptest::prelude::*;

    fn fcv(v: &[Rational]) -> FreeCumulantVector {
        FreeCumulantVector::new(v.to_vec()).unwrap()
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
    }

    #[test]
    fn semicircle_and_point_mass() {
        let m = free_moments_from_free_cumulants(&fcv(&[int(0), int(1)]), 6).unwrap();
        assert_eq!(m.entries(), &[int(0), int(1), int(0), int(2), int(0), int(5)]);
        let z = free_moments_from_free_cumulants(&fcv(&[int(0)]), 5).unwrap();
        assert!(z.entries().iter().all(Zero::is_zero));
        let ones = free_moments_from_free_cumulants(&fcv(&[int(1)]), 7).unwrap();
        assert!(ones.entries().iter().all(One::is_one));

        let c = rat(-3, 2);
        let point = MomentSequence::new((1..=4).map(|k| powi(&c, k)).collect(), None).unwrap();
        assert_eq!(free_cumulants_from_moments(&point, 4).unwrap().entries(), &[c, int(0), int(0), int(0)]);
        let sc = MomentSequence::new(vec![int(0), int(1), int(0), int(2)], None).unwrap();
        assert_eq!(free_cumulants_from_moments(&sc, 4).unwrap().entries(), &[int(0), int(1), int(0), int(0)]);
        let z = MomentSequence::new(vec![int(0); 3], None).unwrap();
        assert!(free_cumulants_from_moments(&z, 3).unwrap().entries().iter().all(Zero::is_zero));
    }

    #[test]
    fn convergence_examples() {
        let sc = fcv(&[int(0), int(1)]);
        let rep = convergence_report(&sc, 1, &[1, 5, 100]).unwrap();
        assert!(rep.rows.iter().all(|r| r.error.is_zero()));
        // m_2 = 1, so κ_2^{(d)} = d/(d-1): the error is 1/(d-1), not 0
        let rep = convergence_report(&sc, 2, &[2, 4, 1000]).unwrap();
        for row in &rep.rows {
            let d = int(row.d as i64);
            assert_eq!(row.finite_kappa, &d / (&d - int(1)));
        }
        let r = fcv(&[int(0), int(1), int(1)]);
        let rep = convergence_report(&r, 4, &[8, 16, 32, 64]).unwrap();
        let e = rep.errors();
        assert!(e.windows(2).all(|w| w[1] < w[0]), "{e:?}");
        assert!(matches!(convergence_report(&r, 4, &[3]), Err(Error::Domain(_))));
    }

    #[test]
    fn mixed_signs_can_delay_monotone_decay() {
        // the 1/d and higher-order parts of κ_5^{(d)} - r_5 nearly cancel at d = 16,
        // so the error grows from 16 to 32 before settling into the 1/d decay
        let r = fcv(&[int(-2), rat(3, 4), int(2), int(1), int(-1), rat(2, 3)]);
        let rep = convergence_report(&r, 5, &[16, 32, 64, 128, 256]).unwrap();
        let e = rep.errors();
        assert!(*e[0] < rat(1, 1000));
        assert!(e[1] > e[0]);
        assert!(e[1..].windows(2).all(|w| *w[1] <= w[0] * rat(65, 100)), "{e:?}");
    }

    #[test]
    fn nc_identity_with_q_sigma() {
        // m_n = Σ_{σ ∈ NC(n)} Q_σ(d) / d^{n+1-|σ|} κ_σ
        let kappa = [rat(1, 2), rat(-1, 3), int(2), rat(3, 5), rat(-2, 7), rat(1, 9)];
        for d in [rat(6, 1), rat(15, 2), rat(41, 3)] {
            let m = crate::transforms::moments_from_cumulant_values(&kappa, &d, 6).unwrap();
            for n in 1..=6 {
                let mut sum = Rational::zero();
                for sigma in enumerate_noncrossing(n).unwrap() {
                    let q = q_sigma(&sigma).unwrap().eval(&d);
                    let k = multiplicative_extension(&kappa, &sigma).unwrap();
                    sum += q / powi(&d, (n + 1 - sigma.num_blocks()) as i64) * k;
                }
                assert_eq!(sum, m[n - 1], "n = {n}, d = {d}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn inverse_pair(r in proptest::collection::vec(small_rational(), 1..=10)) {
            let n = r.len();
            let m = free_moments_from_free_cumulants(&fcv(&r), n).unwrap();
            prop_assert_eq!(free_cumulants_from_moments(&m, n).unwrap(), fcv(&r));
        }

        #[test]
        fn matches_brute_force(r in proptest::collection::vec(small_rational(), 1..=8)) {
            let n = r.len();
            let m = free_moments_from_free_cumulants(&fcv(&r), n).unwrap();
            for k in 1..=n {
                let brute: Rational = enumerate_noncrossing(k)
                    .unwrap()
                    .iter()
                    .map(|p| multiplicative_extension(&r, p).unwrap())
                    .sum();
                let via_filter: Rational = enumerate_partitions(k)
                    .unwrap()
                    .iter()
                    .filter(|p| p.is_noncrossing())
                    .map(|p| multiplicative_extension(&r, p).unwrap())
                    .sum();
                prop_assert_eq!(&brute, m.get(k).unwrap());
                prop_assert_eq!(&via_filter, m.get(k).unwrap());
            }
        }
    }
}
