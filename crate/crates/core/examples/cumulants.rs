//! Coefficients, moments and finite free cumulants of one polynomial, and the
//! truncated R-transform.
//!
//! cargo run --example cumulants

use finfree::polynomial::MonicPoly;
use finfree::rational::{int, rat};
use finfree::transforms::{
    coefficients_from_cumulants, cumulants_from_coefficients, cumulants_from_moments, moments_from_coefficients,
    rescale_cumulants, truncated_r_transform,
};

fn main() -> finfree::error::Result<()> {
    let p = MonicPoly::from_roots(&[int(-2), rat(1, 2), int(1), int(3)])?;
    let d = p.degree();
    let k = cumulants_from_coefficients(&p)?;
    let m = moments_from_coefficients(&p, d + 2)?;
    println!("p       = {p}");
    println!("a       = {:?}", p.a().iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("moments = {:?}", m.entries().iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("κ       = {:?}", k.kappa().iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("κ̃       = {:?}", rescale_cumulants(&k).kappa().iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("R_d(s)  = {}", truncated_r_transform(&p)?);

    // every path lands on the same objects
    assert_eq!(coefficients_from_cumulants(&k)?, p);
    assert_eq!(cumulants_from_moments(&m, d)?, k);
    println!("round trips are exact");
    Ok(())
}
