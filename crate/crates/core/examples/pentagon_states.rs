//! Two-valued states of the pentagon: five triads chained in a cycle.
//!
//! Run with `cargo run --example pentagon_states`.

use vindef::hypergraph::{
    closure, enumerate_total_states, indefiniteness_report, OrthoHypergraph, TwoValuedState,
};

fn main() -> vindef::Result<()> {
    let contexts: Vec<Vec<String>> = (0..5)
        .map(|i| {
            vec![
                format!("a{i}"),
                format!("b{i}"),
                format!("a{}", (i + 1) % 5),
            ]
        })
        .collect();
    let h = OrthoHypergraph::from_contexts(&contexts);

    let states = enumerate_total_states(&h, &TwoValuedState::new())?;
    println!("{} total states", states.len());
    for s in &states {
        println!("  {s}");
    }

    let partial = TwoValuedState::new().with("a0", true);
    println!(
        "\nclosure of a0 = 1: {}",
        closure(&h, &partial)?.state().expect("consistent")
    );

    let report = indefiniteness_report(&h, "a0")?;
    println!("\n{} states with a0 = 1", report.total_states);
    for (atom, status) in &report.atoms {
        println!("  {atom}: {status}");
    }
    Ok(())
}
