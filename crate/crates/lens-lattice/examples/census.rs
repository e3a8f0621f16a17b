//! A small census over strings with every coefficient in a fixed range:
//! minimal embedding rank, orbit counts, and complement checks, all derived
//! from the library (the `lenslat census` subcommand prints the same data).
//!
//! Run with `cargo run --example census`.

use lens_lattice::contfrac::{dual, eval, CfString};
use lens_lattice::embedder::{
    count_orbits_mod_chain_reversal, enumerate_embeddings, minimal_embedding_rank, EmbedQuery,
    DEFAULT_NODE_BUDGET,
};
use lens_lattice::lattice::IntegralLattice;
use lens_lattice::Result;

fn main() -> Result<()> {
    println!("{:<12} {:>8} {:>6} {:>7} {:>7}", "string", "p/q", "m", "min_n", "orbits");
    for m in 1..=2usize {
        for bits in 0..3usize.pow(m as u32) {
            let mut coeffs = Vec::with_capacity(m);
            let mut b = bits;
            for _ in 0..m {
                coeffs.push(6 + (b % 3) as i64);
                b /= 3;
            }
            coeffs.reverse();
            let s = CfString::new(coeffs)?;
            let f = eval(&s)?;
            let l = IntegralLattice::chain(&dual(&s)?);
            let min_n = minimal_embedding_rank(&l, l.rank() + m + 1, DEFAULT_NODE_BUDGET)?
                .expect("in-family strings embed at rank sum(a) - m + 1");
            let orbits = enumerate_embeddings(&EmbedQuery::new(
                l.clone(),
                IntegralLattice::diagonal(min_n),
            ))?;
            println!(
                "{:<12} {:>8} {:>6} {:>7} {:>7}",
                s.to_string(),
                f.to_string(),
                m,
                min_n,
                count_orbits_mod_chain_reversal(&l, &orbits)
            );
        }
    }
    Ok(())
}
