use std::collections::BTreeSet;

use misere_core::fixtures::load_fixture;
use misere_core::game::{adjoin_misere_terminal, depth};
use misere_core::grundy::{mex, swap_sets, verify_sg_consistency, Label, LabeledGraph};
use misere_core::zoo::{box_positions, make_family, FamilySpec};
use misere_core::{enumerate_subgame, sg_labels, EnumerateOptions, GameDef, Position};
use proptest::prelude::*;

fn family(spec: FamilySpec) -> GameDef {
    make_family(&spec).unwrap()
}

fn p<const N: usize>(c: [u32; N]) -> Position {
    Position::from(c)
}

#[test]
fn one_pile_nim_closure() {
    let g = enumerate_subgame(
        &family(FamilySpec::Nim { n: 1 }),
        &[p([3])],
        &EnumerateOptions::default(),
    )
    .unwrap();
    assert_eq!(g.len(), 4);
    assert_eq!(g.edge_count(), 6);
    assert_eq!(depth(&g, &p([3])).unwrap(), 3);
}

#[test]
fn terminal_roots_only() {
    let g = enumerate_subgame(
        &family(FamilySpec::Wythoff),
        &[p([0, 0])],
        &EnumerateOptions::default(),
    )
    .unwrap();
    assert_eq!(g.len(), 1);
    assert_eq!(g.edge_count(), 0);
    assert_eq!(g.depth(0), 0);
}

#[test]
fn wythoff_from_two_two() {
    let g = enumerate_subgame(
        &family(FamilySpec::Wythoff),
        &[p([2, 2])],
        &EnumerateOptions::exact(),
    )
    .unwrap();
    for x in 0..=2 {
        for y in 0..=2 {
            assert!(g.lookup(&p([x, y])).is_some(), "({x},{y}) missing");
        }
    }
}

#[test]
fn nim_pile_depth() {
    let g = enumerate_subgame(
        &family(FamilySpec::Nim { n: 1 }),
        &[p([5])],
        &EnumerateOptions::default(),
    )
    .unwrap();
    assert_eq!(depth(&g, &p([5])).unwrap(), 5);
    assert_eq!(depth(&g, &p([0])).unwrap(), 0);
}

#[test]
fn pet_fixture_shape_and_depth() {
    let pet = load_fixture("pet").unwrap();
    assert_eq!(pet.node_count(), 3);
    let edges: BTreeSet<(String, String)> = pet
        .edges()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let want: BTreeSet<(String, String)> = [("C", "B"), ("B", "A"), ("C", "A")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    assert_eq!(edges, want);
    let g = pet.graph().unwrap();
    assert_eq!(depth(&g, &pet.node("C").unwrap()).unwrap(), 2);
}

#[test]
fn fixture_shapes() {
    let abc = load_fixture("abc_chain").unwrap();
    assert_eq!((abc.node_count(), abc.edge_count()), (3, 2));
    let tnm = load_fixture("tame_not_miserable").unwrap();
    assert_eq!((tnm.node_count(), tnm.edge_count()), (6, 9));
    assert!(load_fixture("no_such_game").is_err());
}

#[test]
fn adjoined_terminal_on_small_graphs() {
    let single = enumerate_subgame(
        &family(FamilySpec::Nim { n: 1 }),
        &[p([0])],
        &EnumerateOptions::default(),
    )
    .unwrap();
    let chain = adjoin_misere_terminal(&single);
    assert_eq!((chain.len(), chain.edge_count()), (2, 1));

    let one = enumerate_subgame(
        &family(FamilySpec::Nim { n: 1 }),
        &[p([1])],
        &EnumerateOptions::default(),
    )
    .unwrap();
    let adj = sg_labels(&adjoin_misere_terminal(&one));
    let zero = adj.graph().find(&p([0])).unwrap();
    assert_eq!(adj.label(zero).g, 1);
    assert_eq!(
        adj.label(zero).g,
        sg_labels(&one).label_of(&p([0])).unwrap().g_minus
    );
}

#[test]
fn adjoined_terminal_matches_tnp_fixture() {
    let f = load_fixture("tame_not_pet").unwrap();
    let g = f.graph().unwrap();
    let misere = sg_labels(&g);
    let adj = sg_labels(&adjoin_misere_terminal(&g));
    assert_eq!(adj.graph().len(), g.len() + 1);
    for id in 0..g.len() {
        assert_eq!(adj.label(id).g, misere.label(id).g_minus);
    }
}

#[test]
fn mex_examples() {
    assert_eq!(mex([]), 0);
    assert_eq!(mex([0, 1, 3]), 2);
    assert_eq!(mex([1, 2, 3]), 0);
}

#[test]
fn one_pile_nim_labels() {
    let lg = sg_labels(
        &enumerate_subgame(
            &family(FamilySpec::Nim { n: 1 }),
            &[p([8])],
            &EnumerateOptions::default(),
        )
        .unwrap(),
    );
    assert_eq!(lg.label_of(&p([0])).unwrap(), Label::P01);
    assert_eq!(lg.label_of(&p([1])).unwrap(), Label::P10);
    for m in 2..=8 {
        assert_eq!(lg.label_of(&p([m])).unwrap(), Label::new(m, m));
    }
}

#[test]
fn named_labels() {
    let lg = sg_labels(
        &enumerate_subgame(
            &family(FamilySpec::Wythoff),
            &[p([3, 5])],
            &EnumerateOptions::default(),
        )
        .unwrap(),
    );
    assert_eq!(lg.label_of(&p([3, 5])).unwrap(), Label::P00);

    let f = load_fixture("not_domestic").unwrap();
    let lg = sg_labels(&f.graph().unwrap());
    assert_eq!(
        lg.label_of(&f.node("F").unwrap()).unwrap(),
        Label::new(2, 0)
    );
}

#[test]
fn consistency_catches_injected_fault() {
    let f = load_fixture("pet").unwrap();
    let lg = sg_labels(&f.graph().unwrap());
    assert!(verify_sg_consistency(&lg).passed());
    assert_eq!(f.annotated_labels().as_deref(), Some(lg.labels()));

    let mut labels = lg.labels().to_vec();
    labels[2].g += 1;
    let broken = LabeledGraph::with_labels(lg.graph().clone(), labels);
    let report = verify_sg_consistency(&broken);
    assert!(!report.passed());
    assert!(report
        .violations
        .iter()
        .any(|v| v.position == *lg.graph().position(2)));
}

#[test]
fn nim_swap_sets_by_parity() {
    for n in 1..=4 {
        let roots = box_positions(n, 0, 1);
        let lg = sg_labels(
            &enumerate_subgame(
                &family(FamilySpec::Nim { n }),
                &roots,
                &EnumerateOptions::exact(),
            )
            .unwrap(),
        );
        let s = swap_sets(&lg);
        for x in &roots {
            let ones = x.coords().iter().sum::<u32>();
            assert_eq!(s.v01.contains(x), ones % 2 == 0);
            assert_eq!(s.v10.contains(x), ones % 2 == 1);
        }
    }
}

#[test]
fn wythoff_swap_sets() {
    let roots = box_positions(2, 0, 10);
    let lg = sg_labels(
        &enumerate_subgame(
            &family(FamilySpec::Wythoff),
            &roots,
            &EnumerateOptions::exact(),
        )
        .unwrap(),
    );
    let s = swap_sets(&lg);
    assert_eq!(
        s.v01,
        [p([0, 0]), p([1, 2]), p([2, 1])].into_iter().collect()
    );
    assert_eq!(
        s.v10,
        [p([0, 1]), p([1, 0]), p([2, 2])].into_iter().collect()
    );
}

// Brute force gives more Grossman swap positions than (x,x) and (x,2x):
// (2,3) has the single option (2,1), a (1,0)-position.
#[test]
fn grossman_swap_sets_brute_force() {
    let roots = box_positions(2, 1, 8);
    let lg = sg_labels(
        &enumerate_subgame(
            &family(FamilySpec::EuclidGrossman),
            &roots,
            &EnumerateOptions::exact(),
        )
        .unwrap(),
    );
    let s = swap_sets(&lg);
    for x in 1..=8 {
        assert!(s.v01.contains(&p([x, x])));
        if 2 * x <= 8 {
            assert!(s.v10.contains(&p([x, 2 * x])));
            assert!(s.v10.contains(&p([2 * x, x])));
        }
    }
    assert!(s.v01.contains(&p([2, 3])));
    assert!(s.v10.contains(&p([3, 5])));
    assert!(s.v01.contains(&p([5, 8])));
}

proptest! {
    #[test]
    fn mex_is_least_excluded(values in proptest::collection::vec(0u32..20, 0..12)) {
        let m = mex(values.iter().copied());
        prop_assert!(!values.contains(&m));
        for v in 0..m {
            prop_assert!(values.contains(&v));
        }
    }

    #[test]
    fn labels_differ_along_edges(seed in 0u64..500, nodes in 2usize..12) {
        for g in misere_core::random::random_dags(seed, 1, nodes, 0.4) {
            let lg = sg_labels(&g.graph().unwrap());
            for x in 0..lg.graph().len() {
                for &y in lg.graph().succ(x) {
                    prop_assert_ne!(lg.label(x).g, lg.label(y).g);
                    prop_assert_ne!(lg.label(x).g_minus, lg.label(y).g_minus);
                    prop_assert!(lg.graph().depth(x) > lg.graph().depth(y));
                }
            }
        }
    }
}
