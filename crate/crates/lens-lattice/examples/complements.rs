//! Orthogonal complements of dual-chain embeddings, and the explicit
//! complement basis whose Gram matrix is the original chain.
//!
//! Run with `cargo run --example complements`.

use lens_lattice::contfrac::{dual, expand, Fraction};
use lens_lattice::embedder::{enumerate_embeddings, EmbedQuery};
use lens_lattice::lattice::{is_isometric, orthogonal_complement, IntegralLattice};
use lens_lattice::lensspace::{complement_decomposition, explicit_dual_complement_basis};
use lens_lattice::Result;

fn main() -> Result<()> {
    let s = expand(&Fraction::new(35, 6)?)?; // [6, 6]
    let chain = IntegralLattice::chain(&s);
    let dual_lattice = IntegralLattice::chain(&dual(&s)?);
    let n = (s.coeff_sum() - s.len() as i64 + 1) as usize;

    let query = EmbedQuery::new(dual_lattice, IntegralLattice::diagonal(n)).exists();
    let embedding = enumerate_embeddings(&query)?.remove(0).representative;
    let (basis, complement) = orthogonal_complement(&embedding)?;
    println!("complement of the dual embedding in Id_{n} has Gram:");
    for row in complement.gram() {
        println!("  {row:?}");
    }
    println!(
        "isometric to chain({s}): {}",
        is_isometric(&complement, &chain)?.is_some()
    );
    println!("kernel basis (columns):");
    for row in basis.matrix() {
        println!("  {row:?}");
    }

    let explicit = explicit_dual_complement_basis(&s)?;
    println!("\nexplicit complement basis realizes the chain Gram exactly:");
    for row in explicit.matrix() {
        println!("  {row:?}");
    }

    // two ranks higher the complement picks up an Id_2 summand
    let decomposed = complement_decomposition(&s, n + 2, u64::MAX, false)?;
    println!(
        "\ncomplement at rank {} is chain + Id_2, rank {}",
        n + 2,
        decomposed.rank()
    );
    Ok(())
}
