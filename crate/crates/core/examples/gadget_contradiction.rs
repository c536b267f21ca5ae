//! Two gadgets with the same terminals compose into a graph where the
//! prepared atom admits no two-valued state at all.
//!
//! Run with `cargo run --release --example gadget_contradiction`.

use vindef::hypergraph::{
    classify_pair, closure, indefiniteness_report, merge, OrthoHypergraph, TwoValuedState,
};
use vindef::realization::terminal_gap;
use vindef::{fixtures_dir, fmt_sig};

fn main() -> vindef::Result<()> {
    let tifs = OrthoHypergraph::from_path(fixtures_dir().join("tifs.json"))?;
    let tits = OrthoHypergraph::from_path(fixtures_dir().join("tits.json"))?;

    for (name, h) in [
        ("true-implies-false gadget", &tifs),
        ("true-implies-true gadget", &tits),
    ] {
        let gap = terminal_gap(h, "PSI", "PHI")?;
        println!(
            "{name}: {} atoms, {} contexts, {} ({} / {} states), Born probability {}",
            h.atoms().len(),
            h.contexts().len(),
            gap.classical.relation,
            gap.classical.both_true,
            gap.classical.target_false,
            fmt_sig(gap.quantum)
        );
    }

    let composed = merge(&tifs, &tits)?;
    let r = classify_pair(&composed, "PSI", "PHI")?;
    println!(
        "\ncomposed: {} atoms, {} contexts, {}",
        composed.atoms().len(),
        composed.contexts().len(),
        r.relation
    );

    // local propagation alone does not see the contradiction
    let prepared = TwoValuedState::new().with("PSI", true);
    let closed = closure(&composed, &prepared)?;
    println!(
        "closure from PSI = 1: {} atoms fixed, contradiction: {}",
        closed.state().map_or(0, |s| s.len()),
        closed.is_contradiction()
    );

    let report = indefiniteness_report(&composed, "PSI")?;
    println!("total states with PSI = 1: {}", report.total_states);
    println!("PHI: {}", report.status("PHI").expect("PHI is an atom"));
    Ok(())
}
