mod common;

use std::collections::BTreeSet;

use common::{corpus, load, poly};
use linkbounds::diagram::Quantity;
use linkbounds::exec::Exec;
use linkbounds::invariants::{
    deleted_column_minor_gcd, one_variable_alexander, sato_levine, AlexanderData, DEFAULT_CONWAY_BUDGET,
};
use linkbounds::laurent::LaurentPoly;
use linkbounds::obstructions::{
    component_polynomials, component_product, gordian_extremal_divisibility, ObstructionReport, Rule,
};
use linkbounds::search::{bounded_search, certify_gap, Goal, Mode, SearchResult, Status};

#[test]
fn fox_rows_annihilate_column_weights() {
    for fx in corpus() {
        let j = fx.diagram.fox_jacobian();
        for r in 0..j.row_count() {
            assert!(j.row_identity_holds(r), "{} row {r}", fx.name);
        }
    }
}

#[test]
fn deleted_column_gcds_are_consistent() {
    for fx in corpus() {
        let j = fx.diagram.fox_jacobian();
        let gcds: Vec<LaurentPoly> =
            (0..j.column_count()).map(|c| deleted_column_minor_gcd(&j, c, Exec::default())).collect();
        for a in 0..j.column_count() {
            for b in a + 1..j.column_count() {
                let left = &gcds[a] * &j.column_weight(b);
                let right = &gcds[b] * &j.column_weight(a);
                assert!(left.associate(&right), "{}: columns {a} and {b}", fx.name);
            }
        }
    }
}

#[test]
fn rank_bounded_and_polynomials_symmetric() {
    for fx in corpus() {
        let a = AlexanderData::compute(&fx.diagram, Exec::default());
        let m = fx.diagram.component_count();
        assert!(a.beta < m, "{}: beta {} with {m} components", fx.name, a.beta);
        assert_eq!(a.delta.is_zero(), a.beta > 0, "{}", fx.name);
        assert!(!a.delta_tor.is_zero(), "{}", fx.name);
        assert!(a.delta.associate(&a.delta.involute()), "{}: {}", fx.name, a.delta);
        assert!(a.delta_tor.associate(&a.delta_tor.involute()), "{}: {}", fx.name, a.delta_tor);
    }
}

#[test]
fn sequential_and_parallel_agree() {
    for name in ["L12n1320", "L9a46", "L8a16", "trefoil_trefoil"] {
        let d = load(name).diagram;
        assert_eq!(AlexanderData::compute(&d, Exec::Sequential), AlexanderData::compute(&d, Exec::Parallel), "{name}");
        for mode in [Mode::InterComponentOnly, Mode::AnyCrossing] {
            let s = bounded_search(&d, 2, mode, Goal::TotallySplit, Exec::Sequential).unwrap();
            let p = bounded_search(&d, 2, mode, Goal::TotallySplit, Exec::Parallel).unwrap();
            assert_eq!(s, p, "{name}");
        }
    }
}

#[test]
fn one_variable_polynomial_from_diagonal() {
    for fx in corpus() {
        let m = fx.diagram.component_count();
        if m < 2 || fx.diagram.crossing_count() > DEFAULT_CONWAY_BUDGET {
            continue;
        }
        let a = AlexanderData::compute(&fx.diagram, Exec::default());
        let expected = a.delta.diagonal() * LaurentPoly::t_minus_one(1, 0);
        let got = one_variable_alexander(&fx.diagram, DEFAULT_CONWAY_BUDGET).unwrap();
        assert!(got.associate(&expected), "{}: {got} vs {expected}", fx.name);
    }
}

#[test]
fn invariants_do_not_depend_on_the_diagram() {
    for (a, b) in [("L2a1", "hopf4"), ("trefoil", "trefoil4")] {
        let x = AlexanderData::compute(&load(a).diagram, Exec::default());
        let y = AlexanderData::compute(&load(b).diagram, Exec::default());
        assert_eq!(x, y, "{a} vs {b}");
    }
}

#[test]
fn trivial_links_have_trivial_modules() {
    for (name, m) in [("unlink2", 2), ("unlink3", 3), ("unlink4", 4)] {
        let fx = load(name);
        let a = AlexanderData::compute(&fx.diagram, Exec::default());
        assert_eq!((a.components, a.beta), (m, m - 1));
        assert!(a.delta_tor.is_one());
        let r = ObstructionReport::compute(name, &fx.diagram, Exec::default());
        for q in Quantity::ALL {
            assert_eq!(r.bound(q).lower, 0, "{name} {q}");
        }
    }
}

#[test]
fn split_unions_multiply_component_polynomials() {
    for name in ["trefoil_trefoil", "trefoil_unknot"] {
        let d = load(name).diagram;
        let a = AlexanderData::compute(&d, Exec::default());
        assert_eq!(a.beta, d.component_count() - 1);
        let product = component_product(&component_polynomials(&d, Exec::default()));
        assert!(a.delta_tor.associate(&product), "{name}: {} vs {product}", a.delta_tor);
    }
}

#[test]
fn linking_matrix_is_symmetric() {
    for fx in corpus() {
        let d = &fx.diagram;
        for i in 0..d.component_count() {
            for j in 0..d.component_count() {
                if i != j {
                    assert_eq!(d.linking_number(i, j).unwrap(), d.linking_number(j, i).unwrap(), "{}", fx.name);
                }
            }
        }
    }
}

#[test]
fn reversing_a_component_keeps_delta_up_to_substitution() {
    // Reversing component i replaces t_i by its inverse.
    let d = load("L9a54").diagram;
    let a = AlexanderData::compute(&d, Exec::default());
    let r = AlexanderData::compute(&d.reverse_component(2).unwrap(), Exec::default());
    let subst: Vec<_> =
        (0..3).map(|i| linkbounds::laurent::Monomial::var_power(3, i, if i == 2 { -1 } else { 1 })).collect();
    assert!(r.delta.associate(&a.delta.evaluate(&subst).unwrap()));
}

fn all_searches(d: &linkbounds::diagram::LinkDiagram, depth: usize) -> Vec<SearchResult> {
    let mut out = Vec::new();
    for mode in [Mode::InterComponentOnly, Mode::AnyCrossing] {
        for goal in [Goal::TotallySplit, Goal::Unlink] {
            out.push(bounded_search(d, depth, mode, goal, Exec::default()).unwrap());
        }
    }
    out
}

#[test]
fn search_results_replay_and_respect_lower_bounds() {
    for fx in corpus() {
        let report = ObstructionReport::compute(fx.name.clone(), &fx.diagram, Exec::default());
        let searches = all_searches(&fx.diagram, 3);
        for s in &searches {
            assert!(s.replay_matches(&fx.diagram), "{} {:?}", fx.name, s);
            if s.found && s.mode == Mode::InterComponentOnly {
                assert!(s.sequence.iter().all(|&c| fx.diagram.is_inter_component(c)));
            }
        }
        let gap = certify_gap(&fx.diagram, &report, &searches).unwrap_or_else(|e| panic!("{}: {e}", fx.name));
        for (q, iv) in &gap {
            if let Some(ext) = fx.external(*q) {
                assert!(iv.lower <= ext.lower, "{} {q}: lower {} above known {}", fx.name, iv.lower, ext.lower);
                if let (Some(u), Some(known_upper)) = (iv.upper, ext.upper) {
                    assert!(u >= ext.lower && iv.lower <= known_upper, "{} {q}", fx.name);
                }
            }
        }
    }
}

#[test]
fn found_at_a_depth_stays_found_deeper() {
    for name in ["L2a1", "L4a1", "L5a1", "trefoil_unknot", "band_clasp_trivial"] {
        let d = load(name).diagram;
        for mode in [Mode::InterComponentOnly, Mode::AnyCrossing] {
            let mut first = None;
            for depth in 0..=3 {
                let r = bounded_search(&d, depth, mode, Goal::TotallySplit, Exec::default()).unwrap();
                match first {
                    None if r.found => first = Some(r),
                    None => {}
                    Some(ref f) => assert_eq!(&r, f, "{name} depth {depth}"),
                }
            }
        }
    }
}

#[test]
fn inter_component_changes_cannot_beat_arbitrary_ones() {
    for fx in corpus() {
        let inter =
            bounded_search(&fx.diagram, 2, Mode::InterComponentOnly, Goal::TotallySplit, Exec::default()).unwrap();
        let any = bounded_search(&fx.diagram, 2, Mode::AnyCrossing, Goal::TotallySplit, Exec::default()).unwrap();
        if inter.found {
            assert!(any.found && any.depth <= inter.depth, "{}", fx.name);
        }
    }
}

#[test]
fn hopf_splitting_number_is_exact() {
    for name in ["L2a1", "hopf4"] {
        let fx = load(name);
        let report = ObstructionReport::compute(name, &fx.diagram, Exec::default());
        let s = bounded_search(&fx.diagram, 1, Mode::InterComponentOnly, Goal::TotallySplit, Exec::default()).unwrap();
        let gap = certify_gap(&fx.diagram, &report, &[s]).unwrap();
        let sp = &gap[&Quantity::Splitting];
        assert_eq!((sp.lower, sp.upper, sp.status), (1, Some(1), Status::Exact), "{name}");
    }
}

#[test]
fn open_links_stay_inconclusive() {
    for name in ["L9a30", "L9a15", "L9a17", "L9a2", "L9a10"] {
        let fx = load(name);
        let ext = fx.external(Quantity::Unlinking).expect("annotated");
        assert_eq!((ext.lower, ext.upper), (2, Some(3)));
        let report = ObstructionReport::compute(name, &fx.diagram, Exec::default());
        let gap = certify_gap(&fx.diagram, &report, &all_searches(&fx.diagram, 2)).unwrap();
        assert_eq!(gap[&Quantity::Unlinking].status, Status::Inconclusive, "{name}");
    }
}

#[test]
fn band_clasp_fixture_is_trivial() {
    let d = load("band_clasp_trivial").diagram;
    let a = AlexanderData::compute(&d, Exec::default());
    let k = poly("t1^2-t1+1", 1);
    let v = linkbounds::obstructions::band_clasping_check(&a.delta, &k, &k).unwrap();
    assert!(v.consistent, "{}", a.delta);
}

#[test]
fn lt_changes_to_trefoil_plus_unknot() {
    let fx = load("LT_trefoil");
    let d = &fx.diagram;
    let a = AlexanderData::compute(d, Exec::default());
    assert!(a.delta.associate(&poly("(t1-1)(t2-1)(t1^2-t1+1)", 2)), "{}", a.delta);
    assert_eq!(sato_levine(d, DEFAULT_CONWAY_BUDGET).unwrap(), -1);
    let after = AlexanderData::compute(&d.crossing_change(0).unwrap(), Exec::default());
    assert_eq!(after.beta, 1);
    assert!(after.delta_tor.associate(&poly("t1^2-t1+1", 2)));
    let v = gordian_extremal_divisibility(&a, &after).unwrap();
    assert_eq!(v.candidate, 1);
    assert!(v.compatible);
    // The change that splits off the circle is a self-crossing of the knotted component.
    let (u, o) = d.crossing_components(0);
    assert_eq!(u, o);
    let report = ObstructionReport::compute("LT_trefoil", d, Exec::default());
    assert_eq!(report.bound(Quantity::WeakSplitting).lower, 1);
}

#[test]
fn reasons_name_the_rules_that_fired() {
    let r = ObstructionReport::compute("L12n1320", &load("L12n1320").diagram, Exec::default());
    let sp = r.bound(Quantity::Splitting);
    assert_eq!(sp.lower, 3);
    assert_eq!(sp.reasons, vec![Rule::SplittingNorm, Rule::Parity]);
    assert!(r.bound(Quantity::WeakSplitting).lower >= 2);
    let r = ObstructionReport::compute("L8a16", &load("L8a16").diagram, Exec::default());
    assert_eq!(r.bound(Quantity::Unlinking).reasons, vec![Rule::UnlinkingNorm]);
    let parts: BTreeSet<usize> = (0..3).collect();
    assert_eq!(load("L8a16").diagram.delete_components(&parts).unwrap().component_count(), 3);
}
