//! Simulates a slightly tilted quantum coin and removes its bias.
//!
//! Run with `cargo run --release --example tilted_coin`.

use vindef::certify::borel_normality;
use vindef::fmt_sig;
use vindef::rng::{click_probability, simulate_coin, von_neumann_extract};

fn main() -> vindef::Result<()> {
    let phi = 0.1;
    let n = 1_000_000;
    let raw = simulate_coin(phi, n, 42)?;
    println!(
        "tilt {phi}: P(click) = {}",
        fmt_sig(click_probability(phi)?)
    );
    println!(
        "raw:       {} bits, ones frequency {}",
        raw.len(),
        fmt_sig(raw.ones() as f64 / n as f64)
    );

    let (out, stats) = von_neumann_extract(&raw);
    println!(
        "extracted: {} bits, ones frequency {} ({} of {} pairs discarded)",
        out.len(),
        fmt_sig(out.ones() as f64 / out.len() as f64),
        stats.pairs_discarded,
        stats.pairs_consumed
    );

    println!("\nraw stream:\n{}", borel_normality(&raw, None)?);
    println!("\nextracted stream:\n{}", borel_normality(&out, None)?);
    Ok(())
}
