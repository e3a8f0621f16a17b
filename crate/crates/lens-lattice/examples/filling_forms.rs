//! Filling-form restriction: which positive-definite forms can be the
//! intersection form of a definite filling of L(p,q)?
//!
//! Run with `cargo run --example filling_forms`.

use lens_lattice::embedder::DEFAULT_NODE_BUDGET;
use lens_lattice::lattice::IntegralLattice;
use lens_lattice::lensspace::{filling_form_check, lens_build};
use lens_lattice::Result;

fn main() -> Result<()> {
    let data = lens_build(35, 6)?; // string [6, 6], m = 2

    // the linking form itself, in a different basis: passes, with an isometry
    let conjugate = IntegralLattice::new(vec![vec![6, 7], vec![7, 14]])?;
    let report = filling_form_check(&data, &conjugate, DEFAULT_NODE_BUDGET)?;
    println!("candidate [[6,7],[7,14]] (b2 = {}):", report.b2);
    println!("  chain embeds: {}", report.embeds);
    if let Some(minimal) = &report.minimal_case {
        println!("  det matches p: {}", minimal.det_ok);
        println!("  isometric to the chain: {}", minimal.isometry.is_some());
    }

    // wrong determinant at minimal rank: the chain cannot embed at all,
    // since an equal-rank embedding forces det to be a square multiple
    let wrong_det = IntegralLattice::new(vec![vec![6, 1], vec![1, 7]])?;
    let report = filling_form_check(&data, &wrong_det, DEFAULT_NODE_BUDGET)?;
    println!("candidate [[6,1],[1,7]] (det 41 != 35):");
    println!("  chain embeds: {}", report.embeds);
    println!(
        "  det matches p: {}",
        report.minimal_case.as_ref().map(|m| m.det_ok) == Some(true)
    );

    // rank below m: ruled out immediately
    let unit = IntegralLattice::new(vec![vec![1]])?;
    let report = filling_form_check(&data, &unit, DEFAULT_NODE_BUDGET)?;
    println!("candidate [[1]]: chain embeds: {}", report.embeds);
    Ok(())
}
