use proptest::prelude::*;

use super::*;
use crate::families::{finite_poisson, hermite_clt, HermiteScaling};
use crate::rational::falling_factorial;

fn hermite(d: usize) -> MonicPoly {
    hermite_clt(d, HermiteScaling::Unit).unwrap()
}

#[test]
fn cpd_examples() {
    let mut h = vec![int(0); 6];
    h[1] = int(1);
    assert!(is_conditionally_positive_definite(&h).unwrap());
    assert!(is_conditionally_positive_definite(&vec![int(1); 7]).unwrap());
    let kt = [int(1), rat(3, 4), rat(3, 8), rat(3, 32)];
    assert!(!is_conditionally_positive_definite(&kt).unwrap());
    assert_eq!(hankel_leading_minors(&kt).unwrap(), vec![rat(3, 4), rat(-9, 128)]);
    // the same values come out of the Poisson polynomial itself
    let k = cumulants_from_coefficients(&finite_poisson(&int(1), 4).unwrap()).unwrap();
    assert_eq!(rescale_cumulants(&k).kappa(), &kt);
    assert!(is_conditionally_positive_definite(k.kappa()).unwrap());
    assert!(matches!(is_conditionally_positive_definite(&[int(1)]), Err(Error::Domain(_))));
}

#[test]
fn psd_boundary_cases() {
    let m = |rows: &[&[i64]]| -> Vec<Vec<Rational>> { rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect() };
    assert!(is_positive_semidefinite(&m(&[&[0, 0], &[0, 0]])));
    assert!(is_positive_semidefinite(&m(&[&[1, 1], &[1, 1]])));
    assert!(!is_positive_semidefinite(&m(&[&[0, 1], &[1, 0]])));
    assert!(!is_positive_semidefinite(&m(&[&[0, 0], &[0, -1]])));
    assert!(is_positive_semidefinite(&m(&[&[1, 0, 1], &[0, 0, 0], &[1, 0, 1]])));
    assert!(!is_positive_semidefinite(&m(&[&[1, 2], &[2, 3]])));
}

#[test]
fn report_examples() {
    for d in 1..=8 {
        let r = infinite_divisibility_report(&hermite(d)).unwrap();
        assert_eq!(r.verdict, Verdict::InfinitelyDivisible, "d = {d}");
        assert!(r.cpd_standard && r.cpd_rescaled);
        assert_eq!(r.centered_normalized, hermite(d));
        let r = infinite_divisibility_report(&MonicPoly::monomial(d)).unwrap();
        assert_eq!(r.verdict, Verdict::InfinitelyDivisible);
        assert!(!r.normalized);
    }
    for d in 3..=8 {
        let p = finite_poisson(&rat(1, d as i64), d).unwrap();
        let r = infinite_divisibility_report(&p).unwrap();
        assert_eq!(r.verdict, Verdict::NotInfinitelyDivisible, "d = {d}");
    }
    // a dilated, shifted Hermite is recognised: roots scaled by 1/2 then shifted by 3
    let h = hermite(5).dilate(&int(2)).translate(&int(3));
    let r = infinite_divisibility_report(&h).unwrap();
    assert!(r.normalized);
    assert_eq!(r.centered_normalized, hermite(5));
    assert_eq!(r.verdict, Verdict::InfinitelyDivisible);
    // κ_2 = 2 is not a rational square: verdict still decided
    let h2 = boxplus(&hermite(4), &hermite(4)).unwrap();
    let r = infinite_divisibility_report(&h2).unwrap();
    assert!(!r.normalized);
    assert_eq!(r.verdict, Verdict::InfinitelyDivisible);
    let complex = MonicPoly::from_plain_coefficients(&[int(1), int(0), int(1)]).unwrap();
    assert!(matches!(infinite_divisibility_report(&complex), Err(Error::Domain(_))));
}

#[test]
fn fourth_cumulant_constants() {
    for d in 4..=10usize {
        let dq = int(d as i64);
        let base = crate::rational::powi(&dq, 4) / falling_factorial(&dq, 4);
        let (c1, c2) = centered_fourth_cumulant_coefficients(d).unwrap();
        assert_eq!(c1, base);
        assert_eq!(c2, -base * int(2 * d as i64 - 3) / int(d as i64 - 1));
    }
    let (c1, c2) = centered_fourth_cumulant_coefficients(4).unwrap();
    assert_eq!((c1, c2), (rat(32, 3), rat(-160, 9)));
}

#[test]
fn threshold_examples() {
    let t_max = int(1 << 20);
    for d in 2..=6 {
        assert_eq!(real_rooted_threshold(&hermite(d), &t_max, 10).unwrap(), Some(rat(1, 16)));
    }
    let poisson = finite_poisson(&rat(1, 4), 4).unwrap();
    assert!(!distinct_real_at(&poisson, &rat(4, 3)).unwrap());
    assert!(distinct_real_at(&poisson, &int(4)).unwrap());
    let t = real_rooted_threshold(&poisson, &t_max, 12).unwrap().unwrap();
    assert!(t > rat(4, 3) && t <= int(4), "threshold {t}");
    let p = MonicPoly::from_roots(&[int(-1), int(0), int(2)]).unwrap();
    assert!(distinct_real_at(&p, &int(1)).unwrap());
    assert!(matches!(real_rooted_threshold(&MonicPoly::monomial(3), &t_max, 4), Err(Error::Domain(_))));
    // x^4 - x^3 at t <= 1 has a repeated root, so a tiny t_max gives no threshold
    assert_eq!(real_rooted_threshold(&poisson, &rat(1, 2), 4).unwrap(), None);
}

#[test]
fn cramer_examples() {
    for d in 3..=8 {
        for eps in [rat(1, 32), rat(1, 5), int(3)] {
            let ex = cramer_counterexample(d, &eps).unwrap();
            let k = cumulants_from_coefficients(&ex.convolution).unwrap();
            for (i, v) in k.kappa().iter().enumerate() {
                assert_eq!(*v, if i == 1 { int(2) } else { int(0) });
            }
            assert_eq!(ex.halved_convolution, hermite(d));
            assert_ne!(ex.p_plus, hermite(d));
            // p_minus is p_plus reflected through 0
            assert_eq!(ex.p_minus, ex.p_plus.dilate(&int(-1)));
        }
        let ex = cramer_counterexample(d, &int(0)).unwrap();
        assert_eq!(ex.p_plus, hermite(d));
        assert_eq!(ex.p_minus, hermite(d));
    }
    let ex = cramer_counterexample(4, &rat(1, 64)).unwrap();
    assert!(ex.plus_real_rooted && ex.minus_real_rooted);
    let eps = cramer_epsilon(4, &int(1), 20).unwrap().unwrap();
    assert!(eps >= rat(1, 64));
    assert!(cramer_counterexample(2, &rat(1, 2)).is_err());
}

fn real_rooted_poly(max_d: usize) -> impl Strategy<Value = MonicPoly> {
    (2..=max_d).prop_flat_map(|d| {
        proptest::collection::vec((-8i64..=8, 1i64..=3).prop_map(|(a, b)| rat(a, b)), d)
            .prop_map(|roots| MonicPoly::from_roots(&roots).unwrap())
    })
}

fn distinct_rooted_poly(max_d: usize) -> impl Strategy<Value = MonicPoly> {
    (2..=max_d).prop_flat_map(|d| {
        proptest::sample::subsequence((-12i64..=12).collect::<Vec<_>>(), d)
            .prop_map(|roots| MonicPoly::from_roots(&roots.iter().map(|&r| rat(r, 2)).collect::<Vec<_>>()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn necessary_conditions_chain(p in real_rooted_poly(8)) {
        let r = infinite_divisibility_report(&p).unwrap();
        if r.verdict == Verdict::InfinitelyDivisible {
            prop_assert!(r.cpd_standard && r.cpd_rescaled);
        }
        if r.cpd_rescaled {
            prop_assert!(r.cpd_standard);
        }
    }

    #[test]
    fn only_hermite_is_divisible(p in real_rooted_poly(8)) {
        let r = infinite_divisibility_report(&p).unwrap();
        if r.normalized {
            let is_h = r.centered_normalized == hermite(p.degree());
            prop_assert_eq!(r.verdict == Verdict::InfinitelyDivisible, is_h);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn thresholds_exist(p in distinct_rooted_poly(6)) {
        let t = real_rooted_threshold(&p, &int(1 << 20), 8).unwrap();
        prop_assert!(t.is_some());
        let t = t.unwrap();
        prop_assert!(boxplus_power(&p, &(t * int(2))).unwrap().has_distinct_real_roots());
    }
}
