//! Finite free cumulants approach free cumulants as the degree grows.
//!
//! cargo run --example free_limit

use finfree::freeprob::{convergence_report, free_moments_from_free_cumulants, FreeCumulantVector};
use finfree::rational::{int, to_f64};

fn main() -> finfree::error::Result<()> {
    // free Poisson with rate 1: every free cumulant equals 1
    let r = FreeCumulantVector::new(vec![int(1); 6])?;
    let m = free_moments_from_free_cumulants(&r, 6)?;
    println!("moments (Catalan-type): {:?}", m.entries().iter().map(ToString::to_string).collect::<Vec<_>>());

    let ds = [8, 16, 32, 64, 128, 256];
    for n in 2..=6 {
        let rep = convergence_report(&r, n, &ds)?;
        print!("n = {n}  |κ_n^(d) - r_n| ·d:");
        for row in &rep.rows {
            print!("  {:>7.3}", to_f64(&row.error) * row.d as f64);
        }
        println!();
    }
    Ok(())
}
