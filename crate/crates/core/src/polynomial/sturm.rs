//! Exact real-root counting: Yun square-free decomposition plus Sturm sequences.

use num_traits::Signed;

use super::MonicPoly;
use crate::varpoly::VarPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealRootedness {
    Yes,
    No,
    /// Every root is real but some root is repeated, and distinct roots were asked for.
    Boundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootCount {
    pub degree: usize,
    /// Number of distinct real roots.
    pub distinct_real: usize,
    /// Real roots counted with multiplicity.
    pub real_with_multiplicity: usize,
    /// Number of distinct complex roots (degree of the square-free part).
    pub distinct_roots: usize,
}

impl RootCount {
    pub fn classify(&self, require_distinct: bool) -> RealRootedness {
        if self.real_with_multiplicity < self.degree {
            RealRootedness::No
        } else if require_distinct && self.distinct_roots < self.degree {
            RealRootedness::Boundary
        } else {
            RealRootedness::Yes
        }
    }
}

/// `p = Π f_i^{i}` with each `f_i` monic, square-free and pairwise coprime.
/// Returns the nontrivial `(f_i, i)`.
pub fn square_free_decomposition(p: &VarPoly) -> Vec<(VarPoly, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = p.monic();
    let dp = p.derivative();
    let c = p.gcd(&dp);
    let mut w = p.div_rem(&c).0;
    let mut y = dp.div_rem(&c).0;
    let mut z = &y - &w.derivative();
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let g = w.gcd(&z);
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.clone(), i));
        }
        w = w.div_rem(&g).0;
        y = z.div_rem(&g).0;
        z = &y - &w.derivative();
        i += 1;
    }
    out
}

/// Number of distinct real roots of `f` over the whole line (Sturm's theorem).
/// `f` should be square-free; otherwise distinct roots are still counted correctly.
pub fn sturm_distinct_real_roots(f: &VarPoly) -> usize {
    let Some(deg) = f.degree() else { return 0 };
    if deg == 0 {
        return 0;
    }
    let mut seq = vec![f.normalize_positive(), f.derivative().normalize_positive()];
    loop {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push((-r).normalize_positive());
    }
    // sign at +inf is the sign of the leading coefficient; at -inf it flips for odd degree
    let signs_at = |neg_inf: bool| -> Vec<bool> {
        seq.iter()
            .map(|q| {
                let positive = q.leading_coeff().is_positive();
                let odd = q.degree().unwrap_or(0) % 2 == 1;
                if neg_inf && odd {
                    !positive
                } else {
                    positive
                }
            })
            .collect()
    };
    let changes = |s: Vec<bool>| s.windows(2).filter(|w| w[0] != w[1]).count();
    changes(signs_at(true)) - changes(signs_at(false))
}

pub(crate) fn count_real_roots(p: &MonicPoly) -> RootCount {
    let factors = square_free_decomposition(&p.to_varpoly());
    let mut count = RootCount {
        degree: p.degree(),
        distinct_real: 0,
        real_with_multiplicity: 0,
        distinct_roots: 0,
    };
    for (f, mult) in &factors {
        let real = sturm_distinct_real_roots(f);
        count.distinct_real += real;
        count.real_with_multiplicity += real * mult;
        count.distinct_roots += f.degree().unwrap_or(0);
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat, Rational};

    fn plain(c: &[Rational]) -> MonicPoly {
        MonicPoly::from_plain_coefficients(c).unwrap()
    }

    #[test]
    fn classic_cases() {
        let x2m1 = plain(&[int(1), int(0), int(-1)]);
        let x2p1 = plain(&[int(1), int(0), int(1)]);
        assert_eq!(x2m1.is_real_rooted(false), RealRootedness::Yes);
        assert_eq!(x2p1.is_real_rooted(false), RealRootedness::No);
        let fractional = plain(&[int(1), rat(-4, 3), rat(1, 6), rat(1, 54), rat(5, 2592)]);
        assert_eq!(fractional.is_real_rooted(false), RealRootedness::No);
        let c = fractional.real_root_count();
        assert_eq!((c.distinct_real, c.distinct_roots), (2, 4));
    }

    #[test]
    fn repeated_roots() {
        let p = MonicPoly::from_roots(&[int(0), int(0), int(0), int(1)]).unwrap();
        assert_eq!(p.is_real_rooted(false), RealRootedness::Yes);
        assert_eq!(p.is_real_rooted(true), RealRootedness::Boundary);
        let c = p.real_root_count();
        assert_eq!((c.distinct_real, c.real_with_multiplicity), (2, 4));
        // (x^2+1)^2 (x-3)
        let q = VarPoly::from_integers(&[1, 0, 1]);
        let full = &(&q * &q) * &VarPoly::from_integers(&[-3, 1]);
        let m = MonicPoly::from_varpoly(&full).unwrap();
        assert_eq!(m.is_real_rooted(false), RealRootedness::No);
        assert_eq!(m.real_root_count().real_with_multiplicity, 1);
    }

    #[test]
    fn yun_decomposition() {
        // (x-1)^3 (x+2)^2 x
        let a = VarPoly::from_integers(&[-1, 1]);
        let b = VarPoly::from_integers(&[2, 1]);
        let x = VarPoly::from_integers(&[0, 1]);
        let p = &(&(&(&a * &a) * &a) * &(&b * &b)) * &x;
        let f = square_free_decomposition(&p);
        assert_eq!(f, vec![(x, 1), (b, 2), (a, 3)]);
    }

    #[test]
    fn sturm_counts() {
        // (x-1)(x-2)(x-3)(x^2+1)
        let p = &VarPoly::from_integers(&[-6, 11, -6, 1]) * &VarPoly::from_integers(&[1, 0, 1]);
        assert_eq!(sturm_distinct_real_roots(&p), 3);
        assert_eq!(sturm_distinct_real_roots(&VarPoly::from_integers(&[5])), 0);
    }
}
