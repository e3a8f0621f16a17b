//! The embedding obstruction: L(p,q) with all coefficients at least 6 does
//! not embed smoothly in a connected sum of n copies of CP^2 when n <= m.
//!
//! Run with `cargo run --example obstruction`.

use lens_lattice::lensspace::{lens_build, obstruct, rank_accounting};
use lens_lattice::Result;

fn main() -> Result<()> {
    let data = lens_build(35, 6)?; // string [6, 6], m = 2
    println!(
        "L({},{}): string {}, dual {}",
        data.p(),
        data.q(),
        data.string,
        data.dual_string
    );

    let acct = rank_accounting(&data.string)?;
    println!(
        "m = {}, dual rank = {}, minimal closed rank = {}, filling bound b_2 > {}",
        acct.m, acct.dual_rank, acct.minimal_closed_rank, acct.filling_bound
    );

    for n in 1..=3 {
        let verdict = obstruct(&data, n, false)?;
        println!("n = {n}: {:?} — {}", verdict.kind, verdict.detail);
    }
    Ok(())
}
