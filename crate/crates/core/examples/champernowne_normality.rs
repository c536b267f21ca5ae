//! A normality test is not a randomness test: the binary Champernowne
//! sequence is perfectly predictable, yet block frequencies approach uniform.
//!
//! Run with `cargo run --release --example champernowne_normality`.

use vindef::certify::{
    bias, borel_normality, champernowne_bits, champernowne_digits, predictor_accuracy,
    ChampernownePredictor,
};
use vindef::fmt_sig;
use vindef::rng::simulate_coin;

fn main() -> vindef::Result<()> {
    println!("base 10: {}", champernowne_digits(30, 10)?);
    println!("base 2:  {}", champernowne_digits(30, 2)?);

    for k in [10, 16, 20] {
        let bits = champernowne_bits(1 << k);
        let report = borel_normality(&bits, None)?;
        println!("\nn = 2^{k}, ones frequency {}", fmt_sig(bias(&bits)?));
        println!("{report}");
    }

    let n = 1 << 16;
    let champ = champernowne_bits(n);
    let coin = simulate_coin(std::f64::consts::FRAC_PI_4, n, 1)?;
    let on_champ = predictor_accuracy(&mut ChampernownePredictor::default(), &champ)?;
    let on_coin = predictor_accuracy(&mut ChampernownePredictor::default(), &coin)?;
    println!(
        "\nregenerating predictor: {} on Champernowne, {} on the quantum coin",
        fmt_sig(on_champ),
        fmt_sig(on_coin)
    );
    Ok(())
}
