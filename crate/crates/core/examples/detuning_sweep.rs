//! Raw and extracted bias as the measurement is detuned from the preparation.
//!
//! Run with `cargo run --release --example detuning_sweep`.

use vindef::fmt_sig;
use vindef::rng::{click_probability, transition_sweep};

fn main() -> vindef::Result<()> {
    let phis: Vec<f64> = (0..=10)
        .map(|k| std::f64::consts::FRAC_PI_2 * k as f64 / 10.0)
        .collect();
    let rows = transition_sweep(&phis, 100_000, 7)?;
    println!(
        "{:>14}  {:>14}  {:>14}  {:>9}  {:>14}",
        "phi", "sin^2 phi", "raw ones", "extracted", "extracted ones"
    );
    for row in rows {
        println!(
            "{:>14}  {:>14}  {:>14}  {:>9}  {:>14}",
            fmt_sig(row.phi),
            fmt_sig(click_probability(row.phi)?),
            fmt_sig(row.raw_ones_frequency),
            row.extracted_len,
            row.extracted_ones_frequency
                .map_or("-".to_string(), fmt_sig)
        );
    }
    Ok(())
}
