use misere_core::classify::{
    check_sm_equivalences, verify_candidate_sets, CandidateSets, CandidateTarget, Slot,
};
use misere_core::fixtures::load_fixture;
use misere_core::grundy::Label;
use misere_core::sums::{check_closure, sum_graph, sum_sg, tame_sum_label};
use misere_core::zoo::oracles::moore_swap_oracle;
use misere_core::zoo::{box_positions, make_family, FamilySpec};
use misere_core::{
    classify, enumerate_subgame, find_witness, sg_labels, ClassPredicate, EnumerateOptions,
    GameDef, LabeledGraph, Position,
};
use proptest::prelude::*;

use ClassPredicate::*;

fn fixture_labels(name: &str) -> LabeledGraph {
    sg_labels(&load_fixture(name).unwrap().graph().unwrap())
}

fn solve(spec: FamilySpec, roots: &[Position]) -> LabeledGraph {
    let game = make_family(&spec).unwrap();
    sg_labels(&enumerate_subgame(&game, roots, &EnumerateOptions::exact()).unwrap())
}

fn p<const N: usize>(c: [u32; N]) -> Position {
    Position::from(c)
}

#[test]
fn domestic_not_tame_fixture() {
    let r = classify(&fixture_labels("domestic_not_tame"));
    assert!(r.holds(Domestic));
    assert!(!r.holds(Tame));
    assert_eq!(r.witness(Tame).unwrap().label, Label::new(1, 2));
    assert!(r.invariant_violations().is_empty());
}

#[test]
fn tame_not_pet_fixture() {
    let r = classify(&fixture_labels("tame_not_pet"));
    assert!(r.holds(Tame) && r.holds(Miserable));
    assert!(!r.holds(Pet) && !r.holds(StronglyMiserable));
}

#[test]
fn wythoff_returnable_not_forced() {
    let r = classify(&solve(FamilySpec::Wythoff, &[p([20, 20])]));
    assert!(r.holds(Miserable) && r.holds(Returnable));
    assert!(!r.holds(Forced));
    let w = r.witness(Forced).unwrap();
    assert_eq!(w.position, p([1, 2]));
    assert!(w.reason.contains("1-1"), "{}", w.reason);
    let lg = solve(FamilySpec::Wythoff, &[p([20, 20])]);
    assert_eq!(lg.label_of(&p([2, 2])).unwrap(), Label::P10);
    assert!(lg.label_of(&p([1, 1])).unwrap().g >= 2);
}

#[test]
fn mark_not_domestic() {
    let r = classify(&solve(FamilySpec::Mark, &[p([20])]));
    assert!(!r.holds(Domestic));
    let w = r.witness(Domestic).unwrap();
    assert_eq!((w.position.clone(), w.label), (p([8]), Label::new(0, 2)));
}

#[test]
fn witness_lookup() {
    assert!(find_witness(&fixture_labels("not_returnable"), Returnable).is_some());
    assert!(find_witness(&fixture_labels("pet"), Pet).is_none());
    let lg = solve(FamilySpec::ExactNim { n: 5, k: 2 }, &box_positions(5, 0, 3));
    let w = find_witness(&lg, Domestic).unwrap();
    let mut c = w.position.coords().to_vec();
    c.sort_unstable();
    assert_eq!(c, vec![1, 2, 3, 3, 3]);
    assert_eq!(w.label, Label::new(0, 2));
    assert!("not_a_class".parse::<ClassPredicate>().is_err());
}

#[test]
fn pet_characterizations() {
    let sub = solve(FamilySpec::Subtraction { set: vec![1, 3, 4] }, &[p([40])]);
    let r = check_sm_equivalences(&sub);
    assert!(r.agree && r.conditions.iter().all(|c| c.holds));

    let r = check_sm_equivalences(&solve(FamilySpec::Wythoff, &box_positions(2, 0, 10)));
    assert!(r.agree && r.conditions.iter().all(|c| !c.holds));
    assert_eq!(
        r.condition("iii")
            .unwrap()
            .witness
            .as_ref()
            .unwrap()
            .position,
        p([3, 5])
    );

    let lg = fixture_labels("tame_not_pet");
    let r = check_sm_equivalences(&lg);
    assert!(r.agree && r.conditions.iter().all(|c| !c.holds));
    assert_eq!(
        r.condition("iv").unwrap().witness.as_ref().unwrap().label,
        Label::P00
    );
}

#[test]
fn abc_chain_needs_the_last_condition() {
    let f = load_fixture("abc_chain").unwrap();
    let lg = sg_labels(&f.graph().unwrap());
    let cand = CandidateSets::swaps([f.node("A").unwrap()], [f.node("B").unwrap()])
        .with_v00([])
        .with_v11([]);
    let r = verify_candidate_sets(lg.graph(), &cand, CandidateTarget::Tame).unwrap();
    for id in ["i", "ii", "iii", "iv", "v", "vi", "vii"] {
        assert!(r.condition(id).unwrap().holds, "condition {id}");
    }
    assert!(!r.condition("T(viii)").unwrap().holds);
    assert!(!r.sets_match_solver);
    assert_eq!(r.mismatch.as_ref().unwrap().position, f.node("C").unwrap());
}

#[test]
fn missing_candidate_set() {
    let lg = fixture_labels("pet");
    let cand = CandidateSets::swaps([], []);
    assert!(verify_candidate_sets(lg.graph(), &cand, CandidateTarget::Tame).is_err());
}

#[test]
fn moore_candidate_sets() {
    let lg = solve(FamilySpec::MooreNim { n: 4, k: 2 }, &box_positions(4, 0, 2));
    let cand = CandidateSets::from_fn(lg.graph(), &[Slot::V01, Slot::V10], |x| {
        moore_swap_oracle(4, 2, x).unwrap().map(|l| {
            if l == Label::P01 {
                Slot::V01
            } else {
                Slot::V10
            }
        })
    });
    let r = verify_candidate_sets(lg.graph(), &cand, CandidateTarget::Miserable).unwrap();
    assert!(r.passed());
}

// With (x,x) and (x,2x) as the only swap candidates, (2,3) moves only to
// (2,1) and so satisfies none of the alternatives.
#[test]
fn grossman_short_candidate_sets_fail() {
    let lg = solve(FamilySpec::EuclidGrossman, &box_positions(2, 1, 12));
    let cand = CandidateSets::from_fn(lg.graph(), &[Slot::V01, Slot::V10], |x| {
        let (a, b) = (x.coords()[0], x.coords()[1]);
        if a == b {
            Some(Slot::V01)
        } else if a == 2 * b || b == 2 * a {
            Some(Slot::V10)
        } else {
            None
        }
    });
    let r = verify_candidate_sets(lg.graph(), &cand, CandidateTarget::Miserable).unwrap();
    assert!(!r.passed());
    assert_eq!(
        r.first_failure().unwrap().witness.as_ref().unwrap().0,
        p([2, 3])
    );
}

fn nim1() -> GameDef {
    make_family(&FamilySpec::Nim { n: 1 }).unwrap()
}

#[test]
fn sum_graph_sizes() {
    let opts = EnumerateOptions::exact();
    let g = sum_graph(&[nim1(), nim1()], &[vec![p([2]), p([2])]], &opts).unwrap();
    assert_eq!(g.len(), 9);
    let g = sum_graph(&[nim1(), nim1()], &[vec![p([1]), p([1])]], &opts).unwrap();
    assert_eq!((g.len(), g.edge_count()), (4, 4));
}

#[test]
fn xor_and_tame_labels() {
    assert_eq!(sum_sg(&[3, 5]), 6);
    assert_eq!(sum_sg(&[7, 7]), 0);
    assert_eq!(
        tame_sum_label(&[Label::P01, Label::P01]).unwrap(),
        Label::P01
    );
    assert_eq!(
        tame_sum_label(&[Label::P01, Label::P10]).unwrap(),
        Label::P10
    );
    assert_eq!(
        tame_sum_label(&[Label::P10, Label::P10, Label::P10]).unwrap(),
        Label::P10
    );
    assert_eq!(
        tame_sum_label(&[Label::new(2, 2), Label::new(3, 3)]).unwrap(),
        Label::P11
    );
    assert!(tame_sum_label(&[Label::new(0, 2)]).is_err());
}

#[test]
fn sodo_sum_is_not_domestic() {
    let g1 = load_fixture("sodo_g1").unwrap();
    let g2 = load_fixture("sodo_g2").unwrap();
    let roots = vec![vec![g1.node("E").unwrap(), g2.node("Y").unwrap()]];
    let games: Vec<GameDef> = vec![g1.clone(), g2.clone()];
    let r = check_closure(Domestic, &games, &roots, &EnumerateOptions::default()).unwrap();
    assert!(r.summands_in_class());
    assert!(!r.closed());
    assert_eq!(r.xor_mismatches, 0);
    assert_eq!(r.sum.witness(Domestic).unwrap().label, Label::new(0, 3));
}

#[test]
fn nim_sums_forced_and_not_pet() {
    let roots = vec![vec![p([3]), p([3])]];
    let forced = check_closure(
        Forced,
        &[nim1(), nim1()],
        &roots,
        &EnumerateOptions::exact(),
    )
    .unwrap();
    assert!(forced.passed());
    assert!(forced.sum.holds(Miserable));

    let pet = check_closure(Pet, &[nim1(), nim1()], &roots, &EnumerateOptions::exact()).unwrap();
    assert!(pet.summands_in_class() && !pet.closed());
    let w = pet.sum.witness(Pet).unwrap();
    assert_eq!(w.label, Label::P00);
    assert_eq!(w.position, p([2, 2]));
}

proptest! {
    #[test]
    fn xor_is_commutative_and_associative(a in 0u32..1024, b in 0u32..1024, c in 0u32..1024) {
        prop_assert_eq!(sum_sg(&[a, b]), sum_sg(&[b, a]));
        prop_assert_eq!(sum_sg(&[sum_sg(&[a, b]), c]), sum_sg(&[a, sum_sg(&[b, c])]));
        prop_assert_eq!(sum_sg(&[a, b, c]), a ^ b ^ c);
    }
}
