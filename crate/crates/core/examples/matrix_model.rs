//! The convolution as an expected characteristic polynomial of A + Q B Qᵀ with
//! Haar-random orthogonal Q, estimated by Monte Carlo.
//!
//! cargo run --release --example matrix_model

use finfree::convolution::boxplus;
use finfree::matrix_oracle::mc_boxplus;
use finfree::polynomial::MonicPoly;
use finfree::rational::{int, rat, to_f64};

fn main() -> finfree::error::Result<()> {
    let p = MonicPoly::from_roots(&[int(-1), int(0), int(2)])?;
    let q = MonicPoly::from_roots(&[rat(1, 2), int(1), int(3)])?;
    let exact = boxplus(&p, &q)?;
    let est = mc_boxplus(&p, &q, 200_000, 42)?;
    println!("{:>3} {:>12} {:>12} {:>10}", "i", "exact a_i", "MC mean", "stderr");
    for i in 0..=exact.degree() {
        println!(
            "{i:>3} {:>12.6} {:>12.6} {:>10.2e}",
            to_f64(&exact.a()[i]),
            est.coeff_mean[i],
            est.coeff_stderr[i]
        );
    }
    let ok = est.agrees_with(&exact, 5.0, 0.02);
    println!("within 5σ + 0.02: {ok:?}");
    Ok(())
}
