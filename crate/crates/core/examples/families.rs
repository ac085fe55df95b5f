//! Hermite and Poisson polynomials, and the finite free central limit theorem.
//!
//! cargo run --example families

use finfree::families::{clt_rescaled_sum, coefficient_distance, finite_poisson, hermite_clt, HermiteScaling};
use finfree::polynomial::MonicPoly;
use finfree::rational::{int, rat, to_f64};
use finfree::transforms::{coefficients_from_cumulants, cumulants_from_coefficients, CumulantVector};

fn main() -> finfree::error::Result<()> {
    for d in [2, 4, 6] {
        let h = hermite_clt(d, HermiteScaling::Unit)?;
        println!("Hermite d={d}: {h}   κ = {:?}", cumulants_from_coefficients(&h)?.kappa().iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    println!("Marcus scaling d=4: {}", hermite_clt(4, HermiteScaling::Marcus)?);

    for (lambda, d) in [(rat(1, 4), 4), (int(1), 4), (int(2), 3)] {
        println!("Poiss({lambda}, {d}) = {}", finite_poisson(&lambda, d)?);
    }

    // a centered polynomial, summed n times and rescaled by √n, tends to the
    // Hermite polynomial with the same κ_2
    let p = MonicPoly::from_roots(&[int(-1), int(-1), int(0), int(2)])?;
    let k = cumulants_from_coefficients(&p)?;
    let target = CumulantVector::standard(vec![int(0), k.kappa()[1].clone(), int(0), int(0)])?;
    let h = coefficients_from_cumulants(&target)?;
    println!("
κ(p) = {:?}", k.kappa().iter().map(ToString::to_string).collect::<Vec<_>>());
    for n in [1u64, 4, 10, 16, 64, 256] {
        let s = clt_rescaled_sum(&p, n)?;
        let dist = to_f64(&coefficient_distance(&s.poly, &h)?);
        println!("n = {n:>3}  exact: {:<5}  distance to Hermite {dist:.3e}", s.exact);
    }
    Ok(())
}
