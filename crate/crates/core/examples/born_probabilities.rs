//! Born probabilities for a few pre- and post-selected states.
//!
//! Run with `cargo run --example born_probabilities`.

use num_complex::Complex64;
use vindef::fmt_sig;
use vindef::hilbert::{born, context_probabilities, normalize, tilt_basis, ContextBasis, Ket};

fn main() -> vindef::Result<()> {
    let psi = Ket::from_real(&[1.0, 0.0, 0.0])?;
    let phi = Ket::from_real(&[2f64.sqrt(), 1.0, 1.0])?;
    println!("|<PHI|PSI>|^2 = {}", fmt_sig(born(&psi, &phi)?));

    // a matched measurement always clicks in the first detector
    let ctx = tilt_basis(0.4)?;
    let probs = context_probabilities(&ctx[0], &ctx)?;
    println!(
        "pre = ctx[0], tilt 0.4: {:?}",
        probs.iter().map(|p| fmt_sig(*p)).collect::<Vec<_>>()
    );

    // a slightly mismatched one clicks in the second with probability sin^2(phi)
    for phi in [0.0, 0.01, 0.1, 0.5, std::f64::consts::FRAC_PI_4] {
        let probs = context_probabilities(&Ket::basis(2, 0), &tilt_basis(phi)?)?;
        println!(
            "tilt {:<14} -> P(click 1) = {}",
            fmt_sig(phi),
            fmt_sig(probs[1])
        );
    }

    // complex amplitudes: (1, i)/sqrt(2) in the standard basis
    let circular = normalize(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)])?;
    let probs = context_probabilities(&circular, &ContextBasis::standard(2))?;
    println!(
        "circular state: {} {}",
        fmt_sig(probs[0]),
        fmt_sig(probs[1])
    );
    Ok(())
}
