//! Infinite divisibility, the real-rootedness threshold of convolution powers,
//! and a pair of non-Hermite polynomials whose convolution is Hermite.
//!
//! cargo run --example divisibility

use finfree::divisibility::{cramer_counterexample, cramer_epsilon, infinite_divisibility_report, real_rooted_threshold};
use finfree::families::{finite_poisson, hermite_clt, HermiteScaling};
use finfree::polynomial::MonicPoly;
use finfree::rational::{int, rat};

fn main() -> finfree::error::Result<()> {
    let candidates = [
        ("Hermite, d=5", hermite_clt(5, HermiteScaling::Unit)?),
        ("shifted Hermite", hermite_clt(5, HermiteScaling::Unit)?.dilate(&int(3)).translate(&int(-1))),
        ("Poiss(1, 4)", finite_poisson(&int(1), 4)?),
        ("roots 0,1,3", MonicPoly::from_roots(&[int(0), int(1), int(3)])?),
    ];
    for (name, p) in &candidates {
        let r = infinite_divisibility_report(p)?;
        println!("{name:<16} CPD κ: {:<5}  CPD κ̃: {:<5}  verdict {:?}", r.cpd_standard, r.cpd_rescaled, r.verdict);
    }

    let t_max = int(1 << 20);
    for (name, p) in [
        ("Poiss(1/4, 4)", finite_poisson(&rat(1, 4), 4)?),
        ("roots 0,0,1", MonicPoly::from_roots(&[int(0), int(0), int(1)])?),
    ] {
        match real_rooted_threshold(&p, &t_max, 16)? {
            Some(t) => println!("{name}: distinct real roots from t ≈ {t}"),
            None => println!("{name}: no threshold below {t_max}"),
        }
    }

    let eps = cramer_epsilon(4, &int(1), 20)?.expect("some ε works");
    let ex = cramer_counterexample(4, &eps)?;
    println!("\nε = {eps}");
    println!("p+ = {}", ex.p_plus);
    println!("p- = {}", ex.p_minus);
    println!("p+^(1/2) ⊞ p-^(1/2) = {}", ex.halved_convolution);
    Ok(())
}
