//! The interval polynomials `P_σ(d)` and their monic normalizations `Q_σ(d)`.

use crate::error::Result;
use crate::partitions::{check_size, lattice_table, mobius_from_zero_sizes, RgsIter, SetPartition};
use crate::rational::{factorial, int, rat, sign_pow, Rational};
use crate::varpoly::VarPoly;

/// `Σ_{ρ ∨ σ = 1_n} d^{|ρ|} μ(0_n, ρ) = JOIN_FORM_SIGN · P_σ(d)`.
///
/// Checked exhaustively for every `σ` with `n <= 8` in the tests.
pub const JOIN_FORM_SIGN: i64 = -1;

/// Integer coefficients of `(d)_s`, ascending in `d`.
fn falling_poly(s: usize) -> Vec<i128> {
    let mut c = vec![1i128];
    for j in 0..s as i128 {
        let mut next = vec![0i128; c.len() + 1];
        for (k, &v) in c.iter().enumerate() {
            next[k + 1] += v;
            next[k] -= j * v;
        }
        c = next;
    }
    c
}

fn mul_poly(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn to_varpoly(c: &[i128]) -> VarPoly {
    VarPoly::new(c.iter().map(|&v| Rational::from_integer(v.into())).collect())
}

/// `P_σ(d) = Σ_{π ⪰ σ} (-1)^{|π|} (d)_π (|π|-1)!`, from the defining sum.
///
/// Walks all of `P(n)` and keeps the coarsenings of `σ`; the summand only
/// depends on the type of `π`, so matches are tallied per type first.
pub fn p_sigma(sigma: &SetPartition) -> Result<VarPoly> {
    let n = sigma.n();
    check_size(n)?;
    let table = lattice_table(n)?;
    let blocks = sigma.blocks();
    let mut tally = vec![0u64; table.classes().len()];
    let mut sizes = vec![0usize; n];
    let mut it = RgsIter::new(n);
    'outer: while let Some(pi) = it.advance() {
        for block in &blocks {
            let l = pi[block[0] - 1];
            if block.iter().any(|&e| pi[e - 1] != l) {
                continue 'outer;
            }
        }
        sizes.iter_mut().for_each(|s| *s = 0);
        let mut k = 0;
        for &l in pi {
            sizes[l as usize] += 1;
            k = k.max(l as usize + 1);
        }
        tally[table.class_of(&sizes[..k]).expect("type of a partition of n")] += 1;
    }
    let falling: Vec<Vec<i128>> = (0..=n).map(falling_poly).collect();
    let mut acc = vec![0i128; n + 1];
    for (class, &count) in table.classes().iter().zip(&tally) {
        if count == 0 {
            continue;
        }
        let k = class.num_blocks();
        let weight = (count as i128) * if k % 2 == 0 { 1 } else { -1 } * (1..k as i128).product::<i128>();
        let prod = class.sizes.iter().fold(vec![1i128], |p, &s| mul_poly(&p, &falling[s]));
        for (i, v) in prod.iter().enumerate() {
            acc[i] += weight * v;
        }
    }
    Ok(to_varpoly(&acc))
}

/// `Σ_{ρ ∈ P(n), ρ ∨ σ = 1_n} d^{|ρ|} μ(0_n, ρ)`; equals `JOIN_FORM_SIGN · P_σ(d)`.
pub fn p_sigma_join_form(sigma: &SetPartition) -> Result<VarPoly> {
    let n = sigma.n();
    check_size(n)?;
    let s = sigma.labels();
    let mut acc = vec![0i128; n + 1];
    let mut sizes = vec![0usize; n];
    let mut it = RgsIter::new(n);
    while let Some(rho) = it.advance() {
        if !crate::partitions::joins_to_one(rho, s) {
            continue;
        }
        sizes.iter_mut().for_each(|x| *x = 0);
        let mut k = 0;
        for &l in rho {
            sizes[l as usize] += 1;
            k = k.max(l as usize + 1);
        }
        acc[k] += mobius_from_zero_sizes(&sizes[..k]) as i128;
    }
    Ok(to_varpoly(&acc))
}

/// `Q_σ = (n+1-|σ|)! / ((-1)^{|σ|} (n-1)! n_σ) · P_σ`, monic of degree `n+1-|σ|`.
pub fn q_sigma(sigma: &SetPartition) -> Result<VarPoly> {
    let n = sigma.n();
    let k = sigma.num_blocks();
    let p = p_sigma(sigma)?;
    let num = Rational::from_integer(factorial(n + 1 - k));
    let den = sign_pow(k) * Rational::from_integer(factorial(n - 1)) * int(sigma.block_size_product() as i64);
    Ok(p.scale(&(num / den)))
}

/// Leading coefficient of `P_σ`: `(-1)^{|σ|} (n-1)! n_σ / (n+1-|σ|)!`.
pub fn p_sigma_leading_coefficient(sigma: &SetPartition) -> Rational {
    let n = sigma.n();
    let k = sigma.num_blocks();
    sign_pow(k) * Rational::from_integer(factorial(n - 1)) * rat(sigma.block_size_product() as i64, 1)
        / Rational::from_integer(factorial(n + 1 - k))
}
