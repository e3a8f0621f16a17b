//! Enumerating embeddings of a chain lattice into diagonal lattices, up to
//! signed coordinate permutations of the target.
//!
//! Run with `cargo run --example embeddings`.

use lens_lattice::contfrac::{dual, expand, Fraction};
use lens_lattice::embedder::{
    count_orbits_mod_chain_reversal, enumerate_embeddings, minimal_embedding_rank, EmbedQuery,
    DEFAULT_NODE_BUDGET,
};
use lens_lattice::lattice::IntegralLattice;
use lens_lattice::Result;

fn main() -> Result<()> {
    let s = expand(&Fraction::new(35, 6)?)?; // [6, 6]
    let l = IntegralLattice::chain(&dual(&s)?);
    println!("dual chain of {s} has rank {}", l.rank());

    let min = minimal_embedding_rank(&l, l.rank() + 4, DEFAULT_NODE_BUDGET)?;
    println!("minimal diagonal rank admitting an embedding: {min:?}");
    let n = min.expect("embeds within the cap");

    let query = EmbedQuery::new(l.clone(), IntegralLattice::diagonal(n));
    let orbits = enumerate_embeddings(&query)?;
    println!(
        "orbits at rank {n}: {} ({} after merging chain reversal)",
        orbits.len(),
        count_orbits_mod_chain_reversal(&l, &orbits)
    );
    for (i, orbit) in orbits.iter().enumerate() {
        println!("orbit {i} representative (rows are target coordinates):");
        for row in orbit.representative.matrix() {
            println!("  {row:?}");
        }
    }

    // one rank below, nothing embeds
    let below = EmbedQuery::new(l, IntegralLattice::diagonal(n - 1));
    println!(
        "orbits at rank {}: {}",
        n - 1,
        enumerate_embeddings(&below)?.len()
    );
    Ok(())
}
