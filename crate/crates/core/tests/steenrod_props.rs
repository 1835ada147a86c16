use std::sync::Arc;

use sr_chroma::search::{search_action, SearchOptions, SearchOutcome};
use sr_chroma::steenrod::{
    check_action, check_relations, coloring_from_action, decompose_pp, default_degree_bound, RelationSet,
    SteenrodTable,
};
use sr_chroma::{build_complex, AlgebraElement, Family, Graph, JoinComplex, SrRing};

fn ring(family: Family, g: Graph) -> Arc<SrRing> {
    let p = family.prime().unwrap();
    SrRing::new(build_complex(&family, &g).unwrap(), p).unwrap()
}

fn uncapped() -> SearchOptions {
    SearchOptions { cap: None, ..SearchOptions::default() }
}

fn found_instances() -> Vec<(String, Arc<SrRing>)> {
    vec![
        ("B(3, K3)".into(), ring(Family::B { n: 3 }, Graph::complete(3))),
        ("B(2, C4)".into(), ring(Family::B { n: 2 }, Graph::cycle(4))),
        ("B_5((2,0), C4)".into(), ring(Family::Bp { p: 5, r: vec![2, 0] }, Graph::cycle(4))),
    ]
}

#[test]
fn found_tables_are_sound() {
    for (name, r) in found_instances() {
        let rep = search_action(&r, &uncapped()).unwrap();
        let t = rep.table().unwrap_or_else(|| panic!("{name}: expected a table"));
        let check = check_action(t, RelationSet::Basic, rep.degree_bound).unwrap();
        assert!(check.passes(), "{name}:\n{}", check.to_text());
        assert_eq!(SteenrodTable::parse(&r, &t.to_text()).unwrap(), *t, "{name}");
    }
}

#[test]
fn pp_decomposition_recombines() {
    for (name, r) in found_instances() {
        let rep = search_action(&r, &uncapped()).unwrap();
        let t = rep.table().unwrap();
        let p = r.prime();
        let k = r.complex();
        for v in 0..k.graph().vertex_count() {
            let d = decompose_pp(t, v).unwrap();
            let value = t.get(k.vertex_generator(v), p).cloned().unwrap_or_else(|| AlgebraElement::zero(&r));
            assert_eq!(d.recombine(&r), value, "{name} vertex {v}");
        }
        let (g, cokernels) = coloring_from_action(t).unwrap();
        assert!(cokernels.all_nonzero(), "{name}");
        assert_eq!(g.labels, k.graph().labels());
    }
}

#[test]
fn frozen_search_outcomes() {
    // Exhausted under the basic relation set at the default bound.
    for (family, g) in [
        (Family::B { n: 1 }, Graph::complete(3)),
        (Family::B { n: 2 }, Graph::complete(3)),
        (Family::B { n: 2 }, Graph::cycle(5)),
    ] {
        let rep = search_action(&ring(family.clone(), g), &uncapped()).unwrap();
        assert_eq!(rep.outcome, SearchOutcome::ExhaustedNone, "{family}");
    }
    let rep = search_action(&ring(Family::B { n: 3 }, Graph::complete(3)), &uncapped()).unwrap();
    assert!(rep.is_found());
    assert_eq!((rep.stats.unknowns, rep.stats.branch_variables), (132, 36));
}

#[test]
fn adem_tables_satisfy_the_basic_relation() {
    let r = SrRing::new(JoinComplex::polynomial(&[("x", 4), ("z", 8)]).unwrap(), 3).unwrap();
    let opts = SearchOptions { relations: RelationSet::Adem, degree_bound: Some(20), cap: None };
    let rep = search_action(&r, &opts).unwrap();
    // BSp(2) has this cohomology.
    let t = rep.table().expect("an action exists");
    assert!(check_action(t, RelationSet::Adem, 20).unwrap().passes());
    assert!(check_relations(t, RelationSet::Basic, 20).unwrap().violations.is_empty());
}

#[test]
fn degree_four_generator_choices() {
    // P^1(x) = c x^2 for |x| = 4 at p = 3: both nonzero c pass, zero does not
    // once P^1 P^3 (x^2) is in range.
    let r = SrRing::new(JoinComplex::polynomial(&[("x", 4)]).unwrap(), 3).unwrap();
    let bound = default_degree_bound(3);
    let mut passing = Vec::new();
    for c in 0..3 {
        let mut t = SteenrodTable::new(&r).unwrap();
        let value = AlgebraElement::parse(&r, &format!("{c} * x^2")).unwrap();
        t.set_by_label("x", 1, value).unwrap();
        if check_action(&t, RelationSet::Basic, bound).unwrap().passes() {
            passing.push(c);
        }
    }
    assert_eq!(passing, [1, 2]);
}
