//! Tridiagonal chain lattices: Gram matrices, exact determinants, and
//! positive definiteness.
//!
//! Run with `cargo run --example chain_lattices`.

use lens_lattice::contfrac::{dual, expand, Fraction};
use lens_lattice::lattice::IntegralLattice;
use lens_lattice::Result;

fn main() -> Result<()> {
    let f = Fraction::new(35, 6)?;
    let s = expand(&f)?;
    let d = dual(&s)?;

    for (label, string) in [("chain", &s), ("dual chain", &d)] {
        let l = IntegralLattice::chain(string);
        println!("{label} for {string} (rank {}):", l.rank());
        for row in l.gram() {
            println!("  {row:?}");
        }
        println!(
            "  det = {}   positive definite: {}",
            l.determinant(),
            l.is_positive_definite()
        );
    }

    // both determinants equal p, by the continuant recurrence
    println!("\nboth determinants equal p = {}", f.p());
    Ok(())
}
