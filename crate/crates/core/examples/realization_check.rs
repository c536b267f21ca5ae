//! Checks vector labels against contexts and completes a context in C^3.
//!
//! Run with `cargo run --example realization_check`.

use vindef::hilbert::{Ket, ORTHO_TOL};
use vindef::hypergraph::{Atom, OrthoHypergraph};
use vindef::realization::{complete_context_d3, verify_realization};
use vindef::{fixtures_dir, fmt_sig};

fn main() -> vindef::Result<()> {
    let h = OrthoHypergraph::from_path(fixtures_dir().join("tifs.json"))?;
    println!("{}", verify_realization(&h, ORTHO_TOL)?);

    let u = Ket::from_real(&[1.0, 1.0, 0.0])?;
    let v = Ket::from_real(&[1.0, -1.0, 1.0])?;
    let w = complete_context_d3(&u, &v)?;
    let parts: Vec<String> = w.amplitudes().iter().map(|z| fmt_sig(z.re)).collect();
    println!("\ncompleting (1,1,0), (1,-1,1): ({})", parts.join(", "));

    let triad = OrthoHypergraph::new(
        vec![
            Atom::labeled("u", u),
            Atom::labeled("v", v.clone()),
            Atom::labeled("w", w),
        ],
        vec![vec!["u".into(), "v".into(), "w".into()]],
    );
    println!("{}", verify_realization(&triad, ORTHO_TOL)?);

    // a label nudged off orthogonality is caught
    let bent = OrthoHypergraph::new(
        vec![
            Atom::labeled("u", Ket::from_real(&[1.0, 1.01, 0.0])?),
            Atom::labeled("v", v),
            Atom::labeled("w", Ket::from_real(&[-1.0, 1.0, 2.0])?),
        ],
        vec![vec!["u".into(), "v".into(), "w".into()]],
    );
    println!("\n{}", verify_realization(&bent, ORTHO_TOL)?);
    Ok(())
}
