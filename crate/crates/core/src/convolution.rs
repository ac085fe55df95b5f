//! Finite free additive convolution and its fractional powers.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::polynomial::MonicPoly;
use crate::rational::{falling_factorial, int, Rational};
use crate::transforms::{coefficients_from_cumulants, cumulants_from_coefficients};

/// `p ⊞_d q` from the coefficient formula
/// `a_k = Σ_{i+j=k} (d-i)!(d-j)!/(d!(d-i-j)!) a^p_i a^q_j`.
///
/// The weight equals `(d)_k / ((d)_i (d)_j)`, which is how it is evaluated.
pub fn boxplus(p: &MonicPoly, q: &MonicPoly) -> Result<MonicPoly> {
    let d = p.degree();
    if q.degree() != d {
        return Err(Error::Dimension(format!(
            "finite free convolution needs equal degrees, got {d} and {}",
            q.degree()
        )));
    }
    let dq = int(d as i64);
    let ff: Vec<Rational> = (0..=d).map(|k| falling_factorial(&dq, k)).collect();
    let pa: Vec<Rational> = p.a().iter().zip(&ff).map(|(a, f)| a / f).collect();
    let qa: Vec<Rational> = q.a().iter().zip(&ff).map(|(a, f)| a / f).collect();
    let a = (0..=d)
        .map(|k| {
            let s = (0..=k).fold(Rational::zero(), |acc, i| acc + &pa[i] * &qa[k - i]);
            s * &ff[k]
        })
        .collect();
    MonicPoly::new(a)
}

/// `p^{⊞_d t}`: the polynomial with cumulants `t · κ_n(p)`.
///
/// For `t < 1` the result may have complex roots even when `p` is real-rooted.
pub fn boxplus_power(p: &MonicPoly, t: &Rational) -> Result<MonicPoly> {
    if !t.is_positive() {
        return Err(Error::domain(format!("convolution power needs t > 0, got {t}")));
    }
    let k = cumulants_from_coefficients(p)?;
    coefficients_from_cumulants(&k.scale(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::transforms::truncated_r_transform;
    use proptest::prelude::*;

    fn poly(a: &[Rational]) -> MonicPoly {
        let mut v = vec![int(1)];
        v.extend_from_slice(a);
        MonicPoly::new(v).unwrap()
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=6).prop_map(|(n, d)| rat(n, d))
    }

    fn poly_of_degree(d: usize) -> impl Strategy<Value = MonicPoly> {
        proptest::collection::vec(small_rational(), d).prop_map(|a| poly(&a))
    }

    fn pair(max_d: usize) -> impl Strategy<Value = (MonicPoly, MonicPoly)> {
        (1..=max_d).prop_flat_map(|d| (poly_of_degree(d), poly_of_degree(d)))
    }

    fn triple(max_d: usize) -> impl Strategy<Value = (MonicPoly, MonicPoly, MonicPoly)> {
        (1..=max_d).prop_flat_map(|d| (poly_of_degree(d), poly_of_degree(d), poly_of_degree(d)))
    }

    /// `(1/d!) Σ_σ Π_i (x - r_i - s_{σ(i)})`, which equals `p ⊞_d q` for real roots.
    fn permutation_average(r: &[Rational], s: &[Rational]) -> MonicPoly {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 1 {
                return vec![vec![0]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let d = r.len();
        let all = perms(d);
        let mut acc = vec![Rational::zero(); d + 1];
        for sigma in &all {
            let roots: Vec<Rational> = (0..d).map(|i| &r[i] + &s[sigma[i]]).collect();
            for (slot, a) in acc.iter_mut().zip(MonicPoly::from_roots(&roots).unwrap().a()) {
                *slot += a;
            }
        }
        let n = int(all.len() as i64);
        MonicPoly::new(acc.into_iter().map(|a| a / &n).collect()).unwrap()
    }

    #[test]
    fn examples() {
        let p = poly(&[rat(1, 2), rat(-3, 2), int(2)]);
        assert_eq!(boxplus(&p, &MonicPoly::monomial(3)).unwrap(), p);
        let a = MonicPoly::from_roots(&[int(3)]).unwrap();
        let b = MonicPoly::from_roots(&[rat(-1, 2)]).unwrap();
        assert_eq!(boxplus(&a, &b).unwrap(), MonicPoly::from_roots(&[rat(5, 2)]).unwrap());
        let x2m1 = poly(&[int(0), int(-1)]);
        assert_eq!(boxplus(&x2m1, &x2m1).unwrap(), poly(&[int(0), int(-2)]));
        assert!(matches!(boxplus(&x2m1, &MonicPoly::monomial(3)), Err(Error::Dimension(_))));
    }

    #[test]
    fn agrees_with_permutation_average() {
        let r = [int(1), int(-2), rat(1, 3)];
        let s = [int(0), rat(5, 2), int(-1)];
        let p = MonicPoly::from_roots(&r).unwrap();
        let q = MonicPoly::from_roots(&s).unwrap();
        assert_eq!(boxplus(&p, &q).unwrap(), permutation_average(&r, &s));
    }

    #[test]
    fn power_examples() {
        let p = poly(&[rat(1, 2), rat(-3, 2), int(2)]);
        assert_eq!(boxplus_power(&p, &int(1)).unwrap(), p);
        assert_eq!(boxplus_power(&p, &int(2)).unwrap(), boxplus(&p, &p).unwrap());
        // Poisson(1/4, 4) = x^4 - x^3
        let poisson = poly(&[int(1), int(0), int(0), int(0)]);
        let expected = MonicPoly::from_plain_coefficients(&[int(1), rat(-4, 3), rat(1, 6), rat(1, 54), rat(5, 2592)]).unwrap();
        assert_eq!(boxplus_power(&poisson, &rat(4, 3)).unwrap(), expected);
        assert!(matches!(boxplus_power(&p, &int(0)), Err(Error::Domain(_))));
        assert!(matches!(boxplus_power(&p, &rat(-1, 2)), Err(Error::Domain(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn cumulants_are_additive((p, q) in pair(10)) {
            let pq = boxplus(&p, &q).unwrap();
            let kp = cumulants_from_coefficients(&p).unwrap();
            let kq = cumulants_from_coefficients(&q).unwrap();
            prop_assert_eq!(cumulants_from_coefficients(&pq).unwrap(), kp.add(&kq).unwrap());
            let r = truncated_r_transform(&p).unwrap() + truncated_r_transform(&q).unwrap();
            prop_assert_eq!(truncated_r_transform(&pq).unwrap(), r);
            prop_assert_eq!(boxplus(&q, &p).unwrap(), pq);
        }

        #[test]
        fn associative((p, q, r) in triple(8)) {
            let left = boxplus(&boxplus(&p, &q).unwrap(), &r).unwrap();
            let right = boxplus(&p, &boxplus(&q, &r).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn semigroup(p in (1usize..=8).prop_flat_map(poly_of_degree), s in (1i64..=9, 1i64..=4), t in (1i64..=9, 1i64..=4)) {
            let s = rat(s.0, s.1);
            let t = rat(t.0, t.1);
            let lhs = boxplus_power(&p, &(&s + &t)).unwrap();
            let rhs = boxplus(&boxplus_power(&p, &s).unwrap(), &boxplus_power(&p, &t).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn integer_power_is_repeated_sum(p in (1usize..=8).prop_flat_map(poly_of_degree), m in 1i64..=5) {
            let mut acc = p.clone();
            for _ in 1..m {
                acc = boxplus(&acc, &p).unwrap();
            }
            prop_assert_eq!(boxplus_power(&p, &int(m)).unwrap(), acc);
        }
    }
}
