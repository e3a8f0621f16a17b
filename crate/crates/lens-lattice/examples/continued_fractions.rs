//! Negative continued fractions: expansion, evaluation, duality, and the
//! Riemenschneider point-rule transcription.
//!
//! Run with `cargo run --example continued_fractions`.

use lens_lattice::contfrac::{dual, eval, expand, point_rule_transcription, Fraction};
use lens_lattice::Result;

fn main() -> Result<()> {
    for (p, q) in [(6, 1), (35, 6), (41, 7), (496, 63)] {
        let f = Fraction::new(p, q)?;
        let s = expand(&f)?;
        let d = dual(&s)?;
        println!("{p}/{q}:");
        println!("  expansion        {s}");
        println!("  dual             {d}");
        println!("  eval(dual)       {}", eval(&d)?);
        if s.coeffs().iter().all(|&a| a >= 3) && s.len() >= 2 {
            println!("  point rule       {}", point_rule_transcription(&s)?);
        }
        println!(
            "  length identity  {} = {} - 2*{} + 1",
            d.len(),
            s.coeff_sum(),
            s.len()
        );
    }
    Ok(())
}
