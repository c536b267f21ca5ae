mod common;

use common::{brute_force_states, fixture, naive_states, pentagon, random_graph, seeded};
use rand_core::RngCore;
use vindef::hypergraph::{
    classify_pair, closure, count_total_states, enumerate_total_states, indefiniteness_report,
    merge, AtomStatus, Closure, OrthoHypergraph, Relation, TwoValuedState, Violation,
};
use vindef::Error;

fn none() -> TwoValuedState {
    TwoValuedState::new()
}

fn psi() -> TwoValuedState {
    TwoValuedState::new().with("PSI", true)
}

fn assert_exactly_one_true(h: &OrthoHypergraph, states: &[TwoValuedState]) {
    for s in states {
        assert!(s.is_total_for(h));
        for ctx in h.contexts() {
            let ones = ctx.iter().filter(|a| s.get(a) == Some(true)).count();
            assert_eq!(ones, 1, "context {ctx:?} in state {s}");
        }
    }
}

#[test]
fn single_context_has_one_state_per_atom() {
    let h = OrthoHypergraph::from_contexts(&[vec!["a", "b", "c"]]);
    let states = enumerate_total_states(&h, &none()).unwrap();
    assert_eq!(states.len(), 3);
    assert_eq!(states, brute_force_states(&h, &none()));
}

#[test]
fn pentagon_matches_brute_force() {
    let h = pentagon();
    let states = enumerate_total_states(&h, &none()).unwrap();
    assert_eq!(states.len(), 11);
    assert_eq!(states, brute_force_states(&h, &none()));
    assert_exactly_one_true(&h, &states);
}

#[test]
fn pentagon_fixture_file_matches_builder() {
    let file = fixture("pentagon");
    assert_eq!(
        enumerate_total_states(&file, &none()).unwrap(),
        enumerate_total_states(&pentagon(), &none()).unwrap()
    );
}

#[test]
fn random_graphs_match_brute_force() {
    let mut rng = seeded(11);
    for _ in 0..200 {
        let h = random_graph(&mut rng, "x", 14, 8);
        let fast = enumerate_total_states(&h, &none()).unwrap();
        assert_eq!(
            fast,
            brute_force_states(&h, &none()),
            "graph {:?}",
            h.contexts()
        );
        assert_exactly_one_true(&h, &fast);
        assert_eq!(count_total_states(&h, &none()).unwrap(), fast.len() as u64);
    }
}

#[test]
fn constrained_enumeration_matches_brute_force() {
    let mut rng = seeded(12);
    for _ in 0..200 {
        let h = random_graph(&mut rng, "x", 12, 6);
        let atoms = h.atoms();
        let pick = &atoms[rng.next_u64() as usize % atoms.len()].id;
        let c = TwoValuedState::new().with(pick.clone(), rng.next_u64().is_multiple_of(2));
        assert_eq!(
            enumerate_total_states(&h, &c).unwrap(),
            brute_force_states(&h, &c)
        );
    }
}

#[test]
fn disjoint_union_multiplies_counts() {
    let mut rng = seeded(13);
    for _ in 0..20 {
        let g1 = random_graph(&mut rng, "x", 10, 5);
        let g2 = random_graph(&mut rng, "y", 10, 5);
        let union = merge(&g1, &g2).unwrap();
        let n1 = count_total_states(&g1, &none()).unwrap();
        let n2 = count_total_states(&g2, &none()).unwrap();
        assert_eq!(count_total_states(&union, &none()).unwrap(), n1 * n2);
    }
}

#[test]
fn removing_a_context_never_loses_states() {
    let mut rng = seeded(14);
    for _ in 0..100 {
        let h = random_graph(&mut rng, "x", 12, 6);
        let before = count_total_states(&h, &none()).unwrap();
        for i in 0..h.contexts().len() {
            let smaller = h.without_context(i);
            if smaller.validate().is_empty() {
                assert!(count_total_states(&smaller, &none()).unwrap() >= before);
            }
        }
    }
    for name in ["tifs", "tits", "composed"] {
        let h = fixture(name);
        let before = count_total_states(&h, &psi()).unwrap();
        for i in 0..h.contexts().len() {
            let smaller = h.without_context(i);
            if smaller.validate().is_empty() {
                assert!(count_total_states(&smaller, &psi()).unwrap() >= before);
            }
        }
    }
}

fn random_partial(
    rng: &mut rand_chacha::ChaCha8Rng,
    h: &OrthoHypergraph,
    k: usize,
) -> TwoValuedState {
    let mut s = TwoValuedState::new();
    for _ in 0..k {
        let a = &h.atoms()[rng.next_u64() as usize % h.atoms().len()].id;
        s.set(a.clone(), rng.next_u64().is_multiple_of(3));
    }
    s
}

fn check_closure_soundness(h: &OrthoHypergraph, all: &[TwoValuedState], partial: &TwoValuedState) {
    let extensions: Vec<&TwoValuedState> =
        all.iter().filter(|s| partial.is_extended_by(s)).collect();
    match closure(h, partial).unwrap() {
        Closure::Consistent(closed) => {
            assert!(partial.is_extended_by(&closed));
            for s in extensions {
                assert!(
                    closed.is_extended_by(s),
                    "{s} does not extend closure {closed}"
                );
            }
        }
        Closure::Contradiction { atom } => {
            assert!(
                extensions.is_empty(),
                "contradiction at {atom} but {} extensions",
                extensions.len()
            );
        }
    }
}

#[test]
fn closure_is_sound_on_random_graphs() {
    let mut rng = seeded(15);
    for _ in 0..100 {
        let h = random_graph(&mut rng, "x", 12, 7);
        let all = brute_force_states(&h, &none());
        for k in 0..4 {
            let partial = random_partial(&mut rng, &h, k);
            check_closure_soundness(&h, &all, &partial);
        }
    }
}

#[test]
fn closure_is_sound_on_fixtures() {
    let mut rng = seeded(16);
    for name in ["pentagon", "tifs", "tits", "composed"] {
        let h = fixture(name);
        let all = enumerate_total_states(&h, &none()).unwrap();
        for k in 0..5 {
            for _ in 0..10 {
                let partial = random_partial(&mut rng, &h, k);
                check_closure_soundness(&h, &all, &partial);
            }
        }
        check_closure_soundness(&h, &all, &none());
    }
}

#[test]
fn closure_detects_two_ones_in_a_context() {
    let h = OrthoHypergraph::from_contexts(&[vec!["a", "b", "c"]]);
    let partial = TwoValuedState::new().with("a", true).with("b", true);
    assert!(closure(&h, &partial).unwrap().is_contradiction());
    let partial = TwoValuedState::new()
        .with("a", false)
        .with("b", false)
        .with("c", false);
    assert!(closure(&h, &partial).unwrap().is_contradiction());
}

#[test]
fn closure_from_prepared_source_on_composed_fixture_stays_consistent() {
    // Local propagation alone cannot refute PSI = 1 here; only case splitting
    // (enumeration) shows there is no total state.
    let h = fixture("composed");
    let closed = closure(&h, &psi()).unwrap();
    assert!(!closed.is_contradiction());
    assert_eq!(closed.state().unwrap().get("PHI"), None);
    assert_eq!(count_total_states(&h, &psi()).unwrap(), 0);
}

#[test]
fn fixtures_agree_with_naive_backtracking() {
    for name in ["tifs", "tits", "composed"] {
        let h = fixture(name);
        for c in [
            none(),
            psi(),
            psi().with("PHI", true),
            psi().with("PHI", false),
            none().with("PHI", true),
        ] {
            let fast = enumerate_total_states(&h, &c).unwrap();
            assert_eq!(fast, naive_states(&h, &c), "{name} with {c}");
            assert_exactly_one_true(&h, &fast);
        }
    }
}

#[test]
fn gadget_relations() {
    let tifs = classify_pair(&fixture("tifs"), "PSI", "PHI").unwrap();
    assert_eq!(tifs.relation, Relation::TrueImpliesFalse);
    assert_eq!(tifs.both_true, 0);
    assert!(tifs.target_false >= 1);

    let tits = classify_pair(&fixture("tits"), "PSI", "PHI").unwrap();
    assert_eq!(tits.relation, Relation::TrueImpliesTrue);
    assert_eq!(tits.target_false, 0);
    assert!(tits.both_true >= 1);

    let composed = classify_pair(&fixture("composed"), "PSI", "PHI").unwrap();
    assert_eq!(composed.relation, Relation::NoStateWithSourceTrue);
}

#[test]
fn witness_counts_match_naive_oracle() {
    for name in ["tifs", "tits", "composed"] {
        let h = fixture(name);
        let g = classify_pair(&h, "PSI", "PHI").unwrap();
        assert_eq!(
            g.both_true as usize,
            naive_states(&h, &psi().with("PHI", true)).len()
        );
        assert_eq!(
            g.target_false as usize,
            naive_states(&h, &psi().with("PHI", false)).len()
        );
    }
}

#[test]
fn composition_of_gadgets_has_no_state_with_source_true() {
    let h1 = fixture("tifs");
    let h2 = fixture("tits");
    assert_eq!(
        classify_pair(&h1, "PSI", "PHI").unwrap().relation,
        Relation::TrueImpliesFalse
    );
    assert_eq!(
        classify_pair(&h2, "PSI", "PHI").unwrap().relation,
        Relation::TrueImpliesTrue
    );
    let merged = merge(&h1, &h2).unwrap();
    assert_eq!(
        classify_pair(&merged, "PSI", "PHI").unwrap().relation,
        Relation::NoStateWithSourceTrue
    );
    assert_eq!(
        enumerate_total_states(&merged, &none()).unwrap(),
        enumerate_total_states(&fixture("composed"), &none()).unwrap()
    );
}

#[test]
fn composition_is_order_independent() {
    let ab = merge(&fixture("tifs"), &fixture("tits")).unwrap();
    let ba = merge(&fixture("tits"), &fixture("tifs")).unwrap();
    assert_eq!(
        classify_pair(&ab, "PSI", "PHI").unwrap().relation,
        classify_pair(&ba, "PSI", "PHI").unwrap().relation
    );
    assert_eq!(
        count_total_states(&ab, &none()).unwrap(),
        count_total_states(&ba, &none()).unwrap()
    );
}

#[test]
fn indefiniteness_reports() {
    let single = OrthoHypergraph::from_contexts(&[vec!["a", "b", "c"]]);
    let r = indefiniteness_report(&single, "a").unwrap();
    assert_eq!(r.status("b"), Some(AtomStatus::Forced0));
    assert_eq!(r.status("c"), Some(AtomStatus::Forced0));

    let r = indefiniteness_report(&pentagon(), "a0").unwrap();
    assert_eq!(r.status("a2"), Some(AtomStatus::Free));
    assert_eq!(r.status("a1"), Some(AtomStatus::Forced0));

    let r = indefiniteness_report(&fixture("composed"), "PSI").unwrap();
    assert_eq!(r.total_states, 0);
    assert_eq!(r.status("PHI"), Some(AtomStatus::UndefinedRequired));

    let r = indefiniteness_report(&fixture("tifs"), "PSI").unwrap();
    assert_eq!(r.status("PHI"), Some(AtomStatus::Forced0));
    let r = indefiniteness_report(&fixture("tits"), "PSI").unwrap();
    assert_eq!(r.status("PHI"), Some(AtomStatus::Forced1));
}

#[test]
fn report_statuses_match_brute_force_on_random_graphs() {
    let mut rng = seeded(17);
    for _ in 0..100 {
        let h = random_graph(&mut rng, "x", 12, 6);
        let prepared = h.atoms()[0].id.clone();
        let r = indefiniteness_report(&h, &prepared).unwrap();
        let states = brute_force_states(&h, &TwoValuedState::new().with(prepared.clone(), true));
        assert_eq!(r.total_states, states.len() as u64);
        for (atom, status) in &r.atoms {
            let ones = states.iter().filter(|s| s.get(atom) == Some(true)).count();
            let expected = if states.is_empty() {
                AtomStatus::UndefinedRequired
            } else if ones == states.len() {
                AtomStatus::Forced1
            } else if ones == 0 {
                AtomStatus::Forced0
            } else {
                AtomStatus::Free
            };
            assert_eq!(*status, expected, "{atom}");
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    let h = fixture("composed");
    let first = enumerate_total_states(&h, &none()).unwrap();
    for _ in 0..5 {
        assert_eq!(enumerate_total_states(&h, &none()).unwrap(), first);
    }
}

#[test]
fn invalid_inputs_are_reported() {
    let h = OrthoHypergraph::from_contexts(&[vec!["a", "a", "b"]]);
    assert!(h
        .validate()
        .iter()
        .any(|v| matches!(v, Violation::RepeatedAtomInContext { .. })));
    assert!(matches!(
        enumerate_total_states(&h, &none()),
        Err(Error::InvalidHypergraph(_))
    ));

    let h = OrthoHypergraph::from_contexts(&[vec!["a", "b"]]);
    assert!(matches!(
        enumerate_total_states(&h, &none().with("zzz", true)),
        Err(Error::UnknownAtom(_))
    ));
    assert!(matches!(
        enumerate_total_states(&h, &none().with("a", true).with("b", true)),
        Err(Error::InvalidConstraint(_))
    ));
    assert!(matches!(
        classify_pair(&h, "a", "a"),
        Err(Error::IdenticalTerminals(_))
    ));
    assert!(matches!(
        indefiniteness_report(&h, "q"),
        Err(Error::UnknownAtom(_))
    ));
}
