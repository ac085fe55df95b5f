//! Finite free convolution of two polynomials and fractional convolution powers.
//!
//! cargo run --example convolution

use finfree::convolution::{boxplus, boxplus_power};
use finfree::families::finite_poisson;
use finfree::polynomial::{MonicPoly, DEFAULT_ROOT_TOL};
use finfree::rational::{int, rat};

fn main() -> finfree::error::Result<()> {
    let p = MonicPoly::from_roots(&[int(-1), int(1)])?;
    let q = MonicPoly::from_roots(&[int(0), int(3)])?;
    println!("p         = {p}");
    println!("q         = {q}");
    println!("p ⊞ q     = {}", boxplus(&p, &q)?);
    println!("p ⊞ p     = {}", boxplus(&p, &p)?);

    // x^d is the identity
    let r = MonicPoly::from_roots(&[rat(1, 2), int(-2), int(5)])?;
    assert_eq!(boxplus(&r, &MonicPoly::monomial(3))?, r);

    // real roots can be lost below t = 1
    let poisson = finite_poisson(&rat(1, 4), 4)?;
    let pow = boxplus_power(&poisson, &rat(4, 3))?;
    println!("\nPoiss(1/4, 4)        = {poisson}");
    println!("Poiss(1/4, 4)^{{4/3}}  = {pow}");
    for z in pow.roots(DEFAULT_ROOT_TOL)? {
        println!("  root {:+.6} {:+.6}i", z.re, z.im);
    }
    println!("distinct real roots at t = 4: {}", boxplus_power(&poisson, &int(4))?.has_distinct_real_roots());
    Ok(())
}
