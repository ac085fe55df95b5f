//! The set-partition lattice: counts by type, Möbius function, and the
//! polynomials P_σ(d), Q_σ(d) that drive the moment-cumulant formulas.
//!
//! cargo run --example partitions

use finfree::partitions::{enumerate_noncrossing, lattice_table, partition_lattice_charpoly, SetPartition};
use finfree::transforms::{p_sigma, q_sigma};

fn main() -> finfree::error::Result<()> {
    let n = 5;
    let table = lattice_table(n)?;
    println!("P({n}) by block type");
    println!("{:<14}{:>8}{:>8}{:>8}", "type", "all", "NC", "μ");
    for class in table.classes() {
        println!(
            "{:<14}{:>8}{:>8}{:>8}",
            format!("{:?}", class.sizes),
            class.count_all,
            class.count_noncrossing,
            class.mobius
        );
    }
    println!("Σ μ(0,π) t^|π| = {}", partition_lattice_charpoly(n)?);

    println!("\nNC(4):");
    for p in enumerate_noncrossing(4)? {
        print!(" {p}");
    }
    println!();

    for text in ["{1,2|3}", "{1,3|2,4}", "{1,2|3,4}", "{1|2|3|4}"] {
        let sigma: SetPartition = text.parse()?;
        print!("\nσ = {sigma:<12} P_σ(d) = {}", p_sigma(&sigma)?);
        if sigma.is_noncrossing() {
            print!("   Q_σ(d) = {}", q_sigma(&sigma)?);
        }
    }
    println!();
    Ok(())
}
