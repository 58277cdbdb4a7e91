//! Batteries of checks behind `grundy verify` and the acceptance target.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{
    check_sm_equivalences, classify, verify_candidate_sets, CandidateSets, CandidateTarget,
    ClassPredicate, Slot,
};
use crate::error::{Error, Result};
use crate::fixtures::{load_fixture, FIXTURE_NAMES};
use crate::game::{adjoin_misere_terminal, enumerate_subgame, EnumerateOptions, GameDef, Position};
use crate::grundy::{sg_labels, verify_sg_consistency, Convention, Label, LabeledGraph};
use crate::random::random_dags;
use crate::sums::{check_closure, sum_graph, sum_sg};
use crate::zoo::oracles::{
    beatty_pair, c4_is_p00, c5_orbit, c5_p00_formula, euclid_swap_oracle, exact_swap_oracle,
    extended_swap_oracle, ferguson_check, grossman_chain_oracle, mex_b, moore_swap_oracle,
    slow_swap_oracle, wyt_ab_p, wyt_ab_p_set, wythoff_p, wythoff_recursive, EuclidVariant,
};
use crate::zoo::{box_positions, make_family, FamilySpec, HoShape};

pub const SUITE_NAMES: [&str; 12] = [
    "fixtures",
    "equalities",
    "sums",
    "spot_labels",
    "wythoff",
    "wyt_ab",
    "moore",
    "ferguson",
    "ho_nim",
    "families",
    "adjoined_terminal",
    "stated_formulas",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
    pub max_nodes: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            samples: 1000,
            max_nodes: 12,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Runs one suite by name, or every suite for "all".
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        return SUITE_NAMES.iter().map(|s| run_one(s, cfg)).collect();
    }
    Ok(vec![run_one(name, cfg)?])
}

fn run_one(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let checks = match name {
        "fixtures" => fixtures_suite()?,
        "equalities" => equalities_suite(cfg)?,
        "sums" => sums_suite(cfg)?,
        "spot_labels" => spot_labels_suite()?,
        "wythoff" => wythoff_suite()?,
        "wyt_ab" => wyt_ab_suite(cfg)?,
        "moore" => moore_suite()?,
        "ferguson" => ferguson_suite(cfg)?,
        "ho_nim" => ho_nim_suite()?,
        "families" => families_suite(cfg)?,
        "adjoined_terminal" => adjoined_terminal_suite(cfg)?,
        "stated_formulas" => stated_formulas_suite()?,
        other => {
            return Err(Error::InvalidParams(format!(
                "unknown suite `{other}`; expected one of {} or all",
                SUITE_NAMES.join(", ")
            )))
        }
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        checks,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn solve(game: &GameDef, roots: &[Position]) -> Result<LabeledGraph> {
    Ok(sg_labels(&enumerate_subgame(
        game,
        roots,
        &EnumerateOptions::default(),
    )?))
}

fn solve_exact(game: &GameDef, roots: &[Position]) -> Result<LabeledGraph> {
    Ok(sg_labels(&enumerate_subgame(
        game,
        roots,
        &EnumerateOptions::exact(),
    )?))
}

fn fixture_graph(name: &str) -> Result<LabeledGraph> {
    Ok(sg_labels(&load_fixture(name)?.graph()?))
}

fn expect_verdicts(name: &str, lg: &LabeledGraph, expect: &[(ClassPredicate, bool)]) -> Check {
    let report = classify(lg);
    let mut wrong: Vec<String> = expect
        .iter()
        .filter(|(p, v)| report.holds(*p) != *v)
        .map(|(p, v)| match report.witness(*p) {
            Some(w) => format!(
                "{p} expected {v}, witness {} {} ({})",
                w.name, w.label, w.reason
            ),
            None => format!("{p} expected {v}, but it holds"),
        })
        .collect();
    wrong.extend(report.invariant_violations());
    let summary: Vec<String> = expect.iter().map(|(p, v)| format!("{p}={v}")).collect();
    let detail = if wrong.is_empty() {
        format!("{} nodes: {}", lg.graph().len(), summary.join(", "))
    } else {
        wrong.join("; ")
    };
    check(format!("{name} verdicts"), wrong.is_empty(), detail)
}

fn label_check(name: &str, lg: &LabeledGraph, p: &Position, expect: Label) -> Check {
    match lg.label_of(p) {
        Ok(l) => check(
            format!("{name} {p}"),
            l == expect,
            format!("solver {l}, expected {expect}"),
        ),
        Err(e) => check(format!("{name} {p}"), false, e.to_string()),
    }
}

fn adjoined_terminal_mismatches(lg: &LabeledGraph) -> usize {
    let adjoined = sg_labels(&adjoin_misere_terminal(lg.graph()));
    (0..lg.graph().len())
        .filter(|&x| adjoined.label(x).g != lg.label(x).g_minus)
        .count()
}

/// Figure fixtures against their captions.
pub fn fixtures_suite() -> Result<Vec<Check>> {
    use ClassPredicate::*;
    let expectations: [(&str, &[(ClassPredicate, bool)]); 7] = [
        ("not_domestic", &[(Domestic, false)]),
        ("domestic_not_tame", &[(Domestic, true), (Tame, false)]),
        (
            "tame_not_pet",
            &[
                (Tame, true),
                (Pet, false),
                (Miserable, true),
                (StronglyMiserable, false),
            ],
        ),
        ("pet", &[(Pet, true)]),
        ("not_returnable", &[(Returnable, false)]),
        (
            "returnable_not_forced",
            &[(Returnable, true), (Forced, false)],
        ),
        ("tame_not_miserable", &[(Tame, true), (Miserable, false)]),
    ];
    let mut checks = Vec::new();
    for (name, expect) in expectations {
        checks.push(expect_verdicts(name, &fixture_graph(name)?, expect));
    }

    for name in FIXTURE_NAMES {
        let game = load_fixture(name)?;
        let lg = fixture_graph(name)?;
        let consistency = verify_sg_consistency(&lg);
        checks.push(check(
            format!("{name} labels consistent"),
            consistency.passed(),
            format!("{} violations", consistency.total),
        ));
        if let Some(annotated) = game.annotated_labels() {
            let diff: Vec<String> = (0..lg.graph().len())
                .filter(|&x| lg.label(x) != annotated[x])
                .map(|x| {
                    format!(
                        "{}: solver {}, figure {}",
                        lg.graph().name(x),
                        lg.label(x),
                        annotated[x]
                    )
                })
                .collect();
            checks.push(check(
                format!("{name} figure labels"),
                diff.is_empty(),
                diff.join("; "),
            ));
        }
    }

    let abc = load_fixture("abc_chain")?;
    let graph = abc.graph()?;
    let cand = CandidateSets::swaps(abc.node("A"), abc.node("B"))
        .with_v00([])
        .with_v11([]);
    let r = verify_candidate_sets(&graph, &cand, CandidateTarget::Tame)?;
    let first_seven = ["disjoint", "i", "ii", "iii", "iv", "v", "vi", "vii"]
        .iter()
        .all(|id| r.condition(id).is_some_and(|c| c.holds));
    let last = r
        .condition("T(viii)")
        .expect("tame conditions include T(viii)");
    let at_c = last.witness.as_ref().map(|w| &w.0) == abc.node("C").as_ref();
    checks.push(check(
        "abc_chain candidate sets",
        first_seven && !last.holds && at_c && !r.sets_match_solver,
        format!(
            "(i)-(vii) hold: {first_seven}; T(viii) fails at C: {}; sets equal solver: {}",
            !last.holds && at_c,
            r.sets_match_solver
        ),
    ));

    checks.extend(sodo_checks()?);
    Ok(checks)
}

fn sodo_checks() -> Result<Vec<Check>> {
    let g1 = load_fixture("sodo_g1")?;
    let g2 = load_fixture("sodo_g2")?;
    let mut checks = vec![
        expect_verdicts(
            "sodo_g1",
            &fixture_graph("sodo_g1")?,
            &[(ClassPredicate::Domestic, true)],
        ),
        expect_verdicts(
            "sodo_g2",
            &fixture_graph("sodo_g2")?,
            &[(ClassPredicate::Domestic, true)],
        ),
    ];
    let roots: Vec<Vec<Position>> = g1
        .all_positions()
        .into_iter()
        .flat_map(|a| {
            g2.all_positions()
                .into_iter()
                .map(move |b| vec![a.clone(), b])
        })
        .collect();
    let games: [GameDef; 2] = [g1.clone(), g2.clone()];
    let graph = sum_graph(&games, &roots, &EnumerateOptions::exact())?;
    let lg = sg_labels(&graph);
    let report = classify(&lg);
    let ey = crate::sums::SumGame::join(&[g1.node("E").unwrap(), g2.node("Y").unwrap()]);
    let label = lg.label_of(&ey)?;
    checks.push(check(
        "sodo sum not domestic",
        !report.holds(ClassPredicate::Domestic),
        report
            .witness(ClassPredicate::Domestic)
            .map(|w| format!("witness {} {}", w.name, w.label))
            .unwrap_or_default(),
    ));
    checks.push(check(
        "sodo sum E+Y",
        label == Label::new(0, 3),
        format!("solver {label}, expected (0,3)"),
    ));
    Ok(checks)
}

/// Class equalities and the six pet characterizations on random DAGs.
pub fn equalities_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let dags = random_dags(cfg.seed, cfg.samples, cfg.max_nodes, 0.3);
    let mut invariant_failures = Vec::new();
    let mut sm_disagreements = Vec::new();
    let mut inconsistent = 0;
    let mut adjoined_mismatches = 0;
    let mut counts = [0usize; 9];
    for game in &dags {
        let lg = sg_labels(&game.graph()?);
        let report = classify(&lg);
        for (i, p) in ClassPredicate::ALL.iter().enumerate() {
            counts[i] += usize::from(report.holds(*p));
        }
        if let Some(v) = report.invariant_violations().into_iter().next() {
            invariant_failures.push(format!("{}: {v}", game_name(game)));
        }
        let sm = check_sm_equivalences(&lg);
        if !sm.agree || sm.conditions[0].holds != report.holds(ClassPredicate::Pet) {
            sm_disagreements.push(game_name(game));
        }
        inconsistent += usize::from(!verify_sg_consistency(&lg).passed());
        adjoined_mismatches += adjoined_terminal_mismatches(&lg);
    }
    let class_counts: Vec<String> = ClassPredicate::ALL
        .iter()
        .zip(counts)
        .map(|(p, c)| format!("{p}={c}"))
        .collect();
    Ok(vec![
        check(
            "class equalities and implications",
            invariant_failures.is_empty(),
            if invariant_failures.is_empty() {
                format!(
                    "{} games (seed {}): {}",
                    dags.len(),
                    cfg.seed,
                    class_counts.join(", ")
                )
            } else {
                invariant_failures.join("; ")
            },
        ),
        check(
            "six pet characterizations agree",
            sm_disagreements.is_empty(),
            if sm_disagreements.is_empty() {
                format!("{} games", dags.len())
            } else {
                sm_disagreements.join(", ")
            },
        ),
        check(
            "labels consistent",
            inconsistent == 0,
            format!("{inconsistent} inconsistent games"),
        ),
        check(
            "adjoined terminal equals misère",
            adjoined_mismatches == 0,
            format!("{adjoined_mismatches} mismatched nodes"),
        ),
    ])
}

fn game_name(g: &Arc<crate::fixtures::ExplicitGame>) -> String {
    crate::game::Game::name(g.as_ref())
}

fn product_roots(a: &[Position], b: &[Position]) -> Vec<Vec<Position>> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| vec![x.clone(), y.clone()]))
        .collect()
}

/// XOR law on random pairs and closure of tame sums on bundled pairs.
pub fn sums_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let dags = random_dags(cfg.seed.wrapping_add(1), 400, 8, 0.3);
    let mut xor_failures = 0;
    let mut nodes = 0;
    for pair in dags.chunks(2) {
        let (g, h) = (&pair[0], &pair[1]);
        let lg_g = sg_labels(&g.graph()?);
        let lg_h = sg_labels(&h.graph()?);
        let games: [GameDef; 2] = [g.clone(), h.clone()];
        let sum = sg_labels(&sum_graph(
            &games,
            &product_roots(&g.all_positions(), &h.all_positions()),
            &EnumerateOptions::exact(),
        )?);
        nodes += sum.graph().len();
        for x in 0..sum.graph().len() {
            let c = sum.graph().position(x).coords();
            let parts = [lg_g.label(c[0] as usize).g, lg_h.label(c[1] as usize).g];
            xor_failures += usize::from(sum.label(x).g != sum_sg(&parts));
        }
    }
    checks.push(check(
        "sum value is XOR on random pairs",
        xor_failures == 0,
        format!("200 pairs, {nodes} sum positions, {xor_failures} mismatches"),
    ));

    let mut tame_games: Vec<(String, GameDef, Vec<Position>)> = Vec::new();
    for name in FIXTURE_NAMES {
        if classify(&fixture_graph(name)?).holds(ClassPredicate::Tame) {
            let g = load_fixture(name)?;
            let roots = g.all_positions();
            tame_games.push((name.to_string(), g, roots));
        }
    }
    tame_games.push((
        "nim(1)".into(),
        make_family(&FamilySpec::Nim { n: 1 })?,
        box_positions(1, 0, 5),
    ));
    tame_games.push((
        "nim(2)".into(),
        make_family(&FamilySpec::Nim { n: 2 })?,
        box_positions(2, 0, 3),
    ));
    tame_games.push((
        "euclid_cd".into(),
        make_family(&FamilySpec::EuclidCd)?,
        box_positions(2, 0, 6),
    ));
    tame_games.push((
        "euclid_grossman".into(),
        make_family(&FamilySpec::EuclidGrossman)?,
        box_positions(2, 1, 6),
    ));

    let mut failures = Vec::new();
    let mut pairs = 0;
    for (i, (na, ga, ra)) in tame_games.iter().enumerate() {
        for (nb, gb, rb) in &tame_games[i..] {
            pairs += 1;
            let games = [ga.clone(), gb.clone()];
            let roots = product_roots(ra, rb);
            let opts = EnumerateOptions::default();
            let tame = check_closure(ClassPredicate::Tame, &games, &roots, &opts)?;
            if !tame.passed() {
                failures.push(format!(
                    "{na}+{nb}: tame closure failed (tame-sum mismatches {:?})",
                    tame.tame_mismatches
                ));
            }
            for class in [
                ClassPredicate::Miserable,
                ClassPredicate::Returnable,
                ClassPredicate::Forced,
            ] {
                let in_class = tame.summands.iter().all(|r| r.holds(class));
                if in_class && !tame.sum.holds(class) {
                    failures.push(format!("{na}+{nb}: summands {class} but sum is not"));
                }
            }
        }
    }
    checks.push(check(
        "tame sums: class closure and sum labels",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{pairs} pairs")
        } else {
            failures.join("; ")
        },
    ));

    let nim: GameDef = make_family(&FamilySpec::Nim { n: 1 })?;
    let roots: Vec<Vec<Position>> = box_positions(3, 0, 3)
        .into_iter()
        .map(|p| p.coords().iter().map(|&c| Position::single(c)).collect())
        .collect();
    let forced = check_closure(
        ClassPredicate::Forced,
        &[nim.clone(), nim.clone(), nim],
        &roots,
        &EnumerateOptions::exact(),
    )?;
    checks.push(check(
        "nim sums of forced piles are forced and miserable",
        forced.summands_in_class()
            && forced.sum.holds(ClassPredicate::Forced)
            && forced.sum.holds(ClassPredicate::Miserable),
        forced.sum.bound.clone(),
    ));

    let tame_fast = crate::sums::tame_sum_label(&[Label::new(2, 2), Label::new(3, 3)])?;
    checks.push(check(
        "tame sum of (2,2) and (3,3)",
        tame_fast == Label::P11,
        format!("{tame_fast}"),
    ));
    checks.extend(sodo_checks()?.into_iter().skip(2));
    Ok(checks)
}

/// Every position whose label is named explicitly in the family analyses.
pub fn spot_labels_suite() -> Result<Vec<Check>> {
    let cases: Vec<(&str, FamilySpec, Vec<u32>, Label)> = vec![
        ("mark", FamilySpec::Mark, vec![8], Label::new(0, 2)),
        ("wythoff", FamilySpec::Wythoff, vec![3, 5], Label::P00),
        (
            "exact_nim(5,2)",
            FamilySpec::ExactNim { n: 5, k: 2 },
            vec![1, 2, 3, 3, 3],
            Label::new(0, 2),
        ),
        (
            "slow_nim(4,2)",
            FamilySpec::SlowNim { n: 4, k: 2 },
            vec![1, 1, 2, 3],
            Label::new(4, 0),
        ),
        (
            "ho_nim C5",
            FamilySpec::HoNim {
                shape: HoShape::Cycle,
                n: 5,
            },
            vec![2, 0, 1, 1, 1],
            Label::new(5, 1),
        ),
        (
            "ho_nim C6",
            FamilySpec::HoNim {
                shape: HoShape::Cycle,
                n: 6,
            },
            vec![1; 6],
            Label::new(0, 2),
        ),
        (
            "ho_nim P4",
            FamilySpec::HoNim {
                shape: HoShape::Path,
                n: 4,
            },
            vec![1, 1, 1, 2],
            Label::new(5, 1),
        ),
        (
            "ho_nim P5",
            FamilySpec::HoNim {
                shape: HoShape::Path,
                n: 5,
            },
            vec![1, 1, 1, 2, 0],
            Label::new(5, 1),
        ),
        (
            "ho_nim P6",
            FamilySpec::HoNim {
                shape: HoShape::Path,
                n: 6,
            },
            vec![1, 0, 1, 1, 1, 2],
            Label::new(4, 0),
        ),
        (
            "ho_nim conj2",
            FamilySpec::HoNim {
                shape: HoShape::Conj2,
                n: 4,
            },
            vec![1, 2, 2, 2],
            Label::new(7, 1),
        ),
        (
            "ho_nim conj1",
            FamilySpec::HoNim {
                shape: HoShape::Conj1,
                n: 5,
            },
            vec![1, 1, 1, 1, 1],
            Label::new(1, 5),
        ),
    ];
    let mut checks = Vec::new();
    for (name, spec, coords, expect) in cases {
        let p = Position::new(coords);
        let lg = solve(&make_family(&spec)?, std::slice::from_ref(&p))?;
        checks.push(label_check(name, &lg, &p, expect));
    }
    Ok(checks)
}

fn p_set(lg: &LabeledGraph, bound: u32, pick: fn(Label) -> u32) -> BTreeSet<(u64, u64)> {
    let mut out = BTreeSet::new();
    for x in 0..=bound {
        for y in 0..=bound {
            let l = lg
                .label_of(&Position::new([x, y]))
                .expect("box is enumerated");
            if pick(l) == 0 {
                out.insert((x as u64, y as u64));
            }
        }
    }
    out
}

fn set_diff(a: &BTreeSet<(u64, u64)>, b: &BTreeSet<(u64, u64)>) -> String {
    let only_a: Vec<String> = a.difference(b).take(5).map(|p| format!("{p:?}")).collect();
    let only_b: Vec<String> = b.difference(a).take(5).map(|p| format!("{p:?}")).collect();
    format!(
        "solver only: [{}]; oracle only: [{}]",
        only_a.join(" "),
        only_b.join(" ")
    )
}

fn oracle_p_set(bound: u64, next: impl Fn(u64) -> (u64, u64)) -> BTreeSet<(u64, u64)> {
    let mut out = BTreeSet::new();
    for n in 0..=2 * bound + 2 {
        let (x, y) = next(n);
        if x <= bound && y <= bound {
            out.insert((x, y));
            out.insert((y, x));
        }
    }
    out
}

/// Wythoff: Beatty formula, P-positions in both conventions, swap sets.
pub fn wythoff_suite() -> Result<Vec<Check>> {
    const N: usize = 100_000;
    let mut checks = Vec::new();
    let rec = wythoff_recursive(N + 1);
    let first_bad = rec.iter().enumerate().find(|&(n, &(x, y))| {
        let b = beatty_pair(n as u64);
        (b.x, b.y) != (x, y) || b.y != b.x + n as u64
    });
    checks.push(check(
        "mex recursion equals Beatty formula",
        first_bad.is_none(),
        match first_bad {
            None => format!("n = 0..={N}"),
            Some((n, p)) => format!("differs at n={n}: recursion {p:?}"),
        },
    ));

    let bound = 60;
    let game = make_family(&FamilySpec::Wythoff)?;
    let lg = solve(&game, &[Position::new([bound, bound])])?;
    let normal = p_set(&lg, bound, |l| l.g);
    let misere = p_set(&lg, bound, |l| l.g_minus);
    let oracle_normal = oracle_p_set(bound as u64, |n| wythoff_p(n, Convention::Normal));
    let oracle_misere = oracle_p_set(bound as u64, |n| wythoff_p(n, Convention::Misere));
    checks.push(check(
        "normal P-positions within 60",
        normal == oracle_normal,
        set_diff(&normal, &oracle_normal),
    ));
    checks.push(check(
        "misère P-positions within 60",
        misere == oracle_misere,
        set_diff(&misere, &oracle_misere),
    ));
    let six: BTreeSet<(u64, u64)> = [(0, 0), (1, 2), (2, 1), (0, 1), (1, 0), (2, 2)].into();
    let diff: BTreeSet<(u64, u64)> = normal.symmetric_difference(&misere).copied().collect();
    checks.push(check(
        "conventions differ in exactly six positions",
        diff == six,
        format!("{diff:?}"),
    ));

    let exact = solve_exact(&game, &[Position::new([10, 10])])?;
    let swaps = crate::grundy::swap_sets(&exact);
    let v01: BTreeSet<Position> = [[0, 0], [1, 2], [2, 1]].map(Position::new).into();
    let v10: BTreeSet<Position> = [[0, 1], [1, 0], [2, 2]].map(Position::new).into();
    checks.push(check(
        "swap sets within 10",
        swaps.v01 == v01 && swaps.v10 == v10,
        format!("{:?} / {:?}", swaps.v01, swaps.v10),
    ));
    checks.push(label_check(
        "wythoff",
        &lg,
        &Position::new([3, 5]),
        Label::P00,
    ));
    Ok(checks)
}

/// Wyt(a) and Wyt(a,b) recursions against the solver.
pub fn wyt_ab_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let bound = 60u32;
    for (a, b) in [(2u32, 1u32), (3, 1), (1, 2), (2, 2), (2, 3)] {
        let spec = if b == 1 {
            FamilySpec::WytA { a }
        } else {
            FamilySpec::WytAb { a, b }
        };
        let lg = solve(&make_family(&spec)?, &[Position::new([bound, bound])])?;
        for (convention, pick) in [
            (Convention::Normal, (|l: Label| l.g) as fn(Label) -> u32),
            (Convention::Misere, |l: Label| l.g_minus),
        ] {
            let solver = p_set(&lg, bound, pick);
            let oracle = wyt_ab_p_set(a as u64, b as u64, convention, bound as u64)?;
            checks.push(check(
                format!("wyt({a},{b}) {convention} P-positions within {bound}"),
                solver == oracle,
                if solver == oracle {
                    format!("{} positions", solver.len())
                } else {
                    set_diff(&solver, &oracle)
                },
            ));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut mex_failures = 0;
    for _ in 0..50 {
        let len = rng.gen_range(0..10);
        let s: BTreeSet<u64> = (0..len).map(|_| rng.gen_range(0..12)).collect();
        mex_failures +=
            usize::from(mex_b(1, &s) != crate::grundy::mex(s.iter().map(|&v| v as u32)) as u64);
    }
    checks.push(check(
        "mex_1 equals mex on 50 random sets",
        mex_failures == 0,
        format!("{mex_failures} mismatches"),
    ));

    let mut wythoff_ok = true;
    let mut nim_ok = true;
    for n in 0..=50 {
        wythoff_ok &=
            wyt_ab_p(1, 1, n, Convention::Normal)? == wythoff_p(n as u64, Convention::Normal);
        nim_ok &= wyt_ab_p(0, 1, n, Convention::Normal)? == (n as u64, n as u64);
    }
    checks.push(check("Wyt(1,1) sequence is Wythoff", wythoff_ok, "n <= 50"));
    checks.push(check(
        "Wyt(0,1) sequence is two-pile Nim",
        nim_ok,
        "n <= 50",
    ));
    Ok(checks)
}

fn swap_of(l: Label) -> Option<Label> {
    l.is_swap().then_some(l)
}

fn oracle_agreement(
    name: &str,
    spec: FamilySpec,
    bound: u32,
    oracle: impl Fn(&Position) -> Result<Option<Label>>,
) -> Result<Check> {
    let game = make_family(&spec)?;
    let positions = box_positions(spec.arity(), spec.min_coord(), bound);
    let lg = solve_exact(&game, &positions)?;
    let mut mismatches = Vec::new();
    for p in &positions {
        let solver = swap_of(lg.label_of(p)?);
        let predicted = oracle(p)?;
        if solver != predicted {
            mismatches.push(format!("{p}: solver {solver:?}, oracle {predicted:?}"));
        }
    }
    Ok(check(
        format!("{name} swap oracle within {bound}"),
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("{} positions", positions.len())
        } else {
            mismatches
                .into_iter()
                .take(5)
                .collect::<Vec<_>>()
                .join("; ")
        },
    ))
}

/// Swap-set formulas of the Nim variants against the solver, plus the
/// constructive check for Moore's Nim.
pub fn moore_suite() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (n, k) in [(3, 2), (4, 2), (4, 3), (5, 2), (5, 3), (6, 4)] {
        checks.push(oracle_agreement(
            &format!("moore_nim({n},{k})"),
            FamilySpec::MooreNim { n, k },
            3,
            |p| moore_swap_oracle(n, k, p),
        )?);
    }
    for (n, k) in [(3, 1), (3, 2), (4, 2), (4, 3)] {
        checks.push(oracle_agreement(
            &format!("extended_nim({n},{k}) plus (1,0,..,0)"),
            FamilySpec::ExtendedNim { n, k },
            3,
            |p| extended_swap_exact(n, k, p),
        )?);
    }
    for k in 1..=3 {
        checks.push(oracle_agreement(
            &format!("exact_nim({},{k})", 2 * k),
            FamilySpec::ExactNim { n: 2 * k, k },
            3,
            |p| exact_swap_oracle(2 * k, k, p),
        )?);
    }
    for (n, k) in [(2, 1), (2, 2), (3, 2), (3, 3), (4, 3), (4, 4)] {
        checks.push(oracle_agreement(
            &format!("slow_nim({n},{k})"),
            FamilySpec::SlowNim { n, k },
            4,
            |p| slow_swap_oracle(n, k, p),
        )?);
    }

    let game = make_family(&FamilySpec::MooreNim { n: 4, k: 2 })?;
    let graph = enumerate_subgame(&game, &box_positions(4, 0, 2), &EnumerateOptions::exact())?;
    let cand = CandidateSets::from_fn(
        &graph,
        &[Slot::V01, Slot::V10],
        |p| match moore_swap_oracle(4, 2, p).ok().flatten() {
            Some(Label::P01) => Some(Slot::V01),
            Some(Label::P10) => Some(Slot::V10),
            _ => None,
        },
    );
    let r = verify_candidate_sets(&graph, &cand, CandidateTarget::Miserable)?;
    checks.push(check(
        "moore_nim(4,2) formula sets satisfy the miserable conditions",
        r.passed(),
        format!("{:?}", r.first_failure().map(|c| c.id)),
    ));
    Ok(checks)
}

/// Random subtraction sets: every one is pet and satisfies the pairing
/// lemma.
pub fn subtraction_sets(seed: u64) -> Vec<Vec<u32>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    (0..25)
        .map(|_| {
            let size = rng.gen_range(1..=4);
            let mut set: Vec<u32> = sample(&mut rng, 12, size)
                .into_iter()
                .map(|i| i as u32 + 1)
                .collect();
            set.sort_unstable();
            set
        })
        .collect()
}

pub fn ferguson_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut corpus = vec![vec![1], vec![2, 3], vec![1, 4, 7]];
    corpus.extend(subtraction_sets(cfg.seed));
    for set in corpus {
        let r = ferguson_check(&set, 200)?;
        checks.push(check(
            format!("subtraction {set:?} pairing lemma"),
            r.passed(),
            format!(
                "pairing failures {:?}, missing 1-options {:?}",
                r.pairing_failures, r.missing_one_option
            ),
        ));
    }
    Ok(checks)
}

fn ho(shape: HoShape, n: usize) -> FamilySpec {
    FamilySpec::HoNim { shape, n }
}

fn orbit(coords: &[u32]) -> Vec<Position> {
    let n = coords.len();
    (0..n)
        .map(|r| Position::new((0..n).map(|i| coords[(i + r) % n]).collect::<Vec<_>>()))
        .collect()
}

/// HO-Nim verdicts, (0,0)-position formulas and candidate sets.
pub fn ho_nim_suite() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for inst in family_instances(&SuiteConfig::default())
        .iter()
        .filter(|i| i.name.starts_with("ho_nim"))
    {
        checks.push(inst.verdict_check()?);
    }

    let c4 = make_family(&ho(HoShape::Cycle, 4))?;
    let box4 = box_positions(4, 0, 4);
    let lg = solve_exact(&c4, &box4)?;
    let wrong: Vec<String> = box4
        .iter()
        .filter(|p| (lg.label_of(p).unwrap() == Label::P00) != c4_is_p00(p))
        .take(5)
        .map(|p| p.to_string())
        .collect();
    checks.push(check(
        "C4 (0,0)-positions are (a,b,a,b) with a+b >= 2",
        wrong.is_empty(),
        wrong.join(" "),
    ));
    let v01: Vec<Position> = std::iter::once(Position::new([0, 0, 0, 0]))
        .chain(orbit(&[0, 1, 0, 1]))
        .collect();
    let r = verify_candidate_sets(
        lg.graph(),
        &CandidateSets::swaps(v01, orbit(&[0, 0, 0, 1])),
        CandidateTarget::Miserable,
    )?;
    checks.push(check(
        "C4 candidate sets",
        r.passed(),
        format!("{:?}", r.first_failure().map(|c| c.id)),
    ));

    let c5 = make_family(&ho(HoShape::Cycle, 5))?;
    let box5 = box_positions(5, 0, 3);
    let lg = solve_exact(&c5, &box5)?;
    let true_p00: BTreeSet<Position> = box5
        .iter()
        .filter(|p| lg.label_of(p).unwrap() == Label::P00)
        .cloned()
        .collect();
    let formula: BTreeSet<Position> = c5_orbit(0, 3)
        .into_iter()
        .filter(|p| !lg.label_of(p).unwrap().is_swap())
        .collect();
    checks.push(check(
        "C5 (0,0)-positions are the orbit [a, c+a, b+a, a, c+b+a] off the swap positions",
        true_p00 == formula,
        format!(
            "{} positions; solver only {:?}; formula only {:?}",
            true_p00.len(),
            true_p00.difference(&formula).take(3).collect::<Vec<_>>(),
            formula.difference(&true_p00).take(3).collect::<Vec<_>>()
        ),
    ));
    let v01: Vec<Position> = [vec![0; 5], vec![1; 5]]
        .into_iter()
        .map(Position::new)
        .chain(orbit(&[0, 0, 1, 0, 1]))
        .collect();
    let v10: Vec<Position> = orbit(&[0, 0, 0, 0, 1])
        .into_iter()
        .chain(orbit(&[0, 1, 1, 1, 1]))
        .collect();
    let cand = CandidateSets::swaps(v01, v10).with_v00(true_p00);
    let r = verify_candidate_sets(lg.graph(), &cand, CandidateTarget::Domestic)?;
    checks.push(check(
        "C5 candidate sets",
        r.passed(),
        format!("{:?}", r.first_failure().map(|c| (c.id, c.witness.clone()))),
    ));

    let p3 = make_family(&ho(HoShape::Path, 3))?;
    let box3 = box_positions(3, 0, 4);
    let lg = solve_exact(&p3, &box3)?;
    let cand = CandidateSets::swaps(
        [[0, 0, 0], [1, 0, 1]].map(Position::new),
        [[0, 0, 1], [0, 1, 0], [1, 0, 0]].map(Position::new),
    );
    let r = verify_candidate_sets(lg.graph(), &cand, CandidateTarget::Miserable)?;
    checks.push(check(
        "P3 candidate sets",
        r.passed(),
        format!("{:?}", r.first_failure().map(|c| c.id)),
    ));
    let wrong: Vec<String> = box3
        .iter()
        .filter(|p| {
            let c = p.coords();
            (lg.label_of(p).unwrap() == Label::P00) != (c[1] == 0 && c[0] == c[2] && c[0] >= 2)
        })
        .take(5)
        .map(|p| p.to_string())
        .collect();
    checks.push(check(
        "P3 (0,0)-positions are (a,0,a) with a >= 2",
        wrong.is_empty(),
        wrong.join(" "),
    ));
    Ok(checks)
}

fn extended_swap_exact(n: usize, k: usize, p: &Position) -> Result<Option<Label>> {
    let unit = p.coords()[0] == 1 && p.coords()[1..].iter().all(|&v| v == 0);
    Ok(if unit {
        Some(Label::P10)
    } else {
        extended_swap_oracle(n, k, p)?
    })
}

/// The published swap and (0,0) formulas taken literally. Each check fails
/// on the positions the published sets leave out or add.
pub fn stated_formulas_suite() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (n, k) in [(3, 1), (3, 2), (4, 2)] {
        checks.push(oracle_agreement(
            &format!("extended_nim({n},{k})"),
            FamilySpec::ExtendedNim { n, k },
            3,
            |p| extended_swap_oracle(n, k, p),
        )?);
    }
    checks.push(oracle_agreement(
        "euclid_grossman",
        FamilySpec::EuclidGrossman,
        12,
        |p| Ok(euclid_swap_oracle(EuclidVariant::Grossman, p)),
    )?);

    let game = make_family(&FamilySpec::EuclidGrossman)?;
    let positions = box_positions(2, 1, 12);
    let lg = solve_exact(&game, &positions)?;
    let cand = CandidateSets::from_fn(lg.graph(), &[Slot::V01, Slot::V10], |p| {
        euclid_swap_oracle(EuclidVariant::Grossman, p).map(|l| {
            if l == Label::P01 {
                Slot::V01
            } else {
                Slot::V10
            }
        })
    });
    let r = verify_candidate_sets(lg.graph(), &cand, CandidateTarget::Miserable)?;
    checks.push(check(
        "euclid_grossman (x,x) / (x,2x) candidate sets",
        r.passed(),
        format!("{:?}", r.first_failure().map(|c| (c.id, c.witness.clone()))),
    ));

    let c5 = make_family(&ho(HoShape::Cycle, 5))?;
    let box5 = box_positions(5, 0, 3);
    let lg = solve_exact(&c5, &box5)?;
    let extra: Vec<String> = c5_p00_formula(3)
        .into_iter()
        .filter(|p| lg.label_of(p).unwrap() != Label::P00 && !lg.label_of(p).unwrap().is_swap())
        .map(|p| format!("{p} {}", lg.label_of(&p).unwrap()))
        .collect();
    let shown = extra.iter().take(8).cloned().collect::<Vec<_>>().join("; ");
    checks.push(check(
        "C5 three-orbit formula gives only (0,0)-positions",
        extra.is_empty(),
        format!("{} positions are not (0,0): {shown}", extra.len()),
    ));
    Ok(checks)
}

/// A family instance at a fixed bound with the verdicts it must produce.
pub struct Instance {
    pub name: String,
    pub spec: FamilySpec,
    pub roots: Vec<Position>,
    pub expect: Vec<(ClassPredicate, bool)>,
}

impl Instance {
    fn new(
        name: impl Into<String>,
        spec: FamilySpec,
        bound: u32,
        expect: &[(ClassPredicate, bool)],
    ) -> Self {
        let roots = box_positions(spec.arity(), spec.min_coord(), bound);
        Instance {
            name: name.into(),
            spec,
            roots,
            expect: expect.to_vec(),
        }
    }

    pub fn solve(&self) -> Result<LabeledGraph> {
        solve(&make_family(&self.spec)?, &self.roots)
    }

    pub fn verdict_check(&self) -> Result<Check> {
        let mut c = expect_verdicts(&self.name, &self.solve()?, &self.expect);
        c.detail = format!("{} [{} roots]", c.detail, self.roots.len());
        Ok(c)
    }
}

/// The family instances whose class verdicts are stated, at desk-scale bounds.
pub fn family_instances(cfg: &SuiteConfig) -> Vec<Instance> {
    use ClassPredicate::*;
    let miserable = &[(Miserable, true)][..];
    let mis_forced = &[(Miserable, true), (Forced, true)][..];
    let pet = &[(Pet, true)][..];
    let not_domestic = &[(Domestic, false)][..];
    let domestic_not_tame = &[(Domestic, true), (Tame, false)][..];
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push(Instance::new(
            format!("nim({n})"),
            FamilySpec::Nim { n },
            3,
            mis_forced,
        ));
    }
    for set in subtraction_sets(cfg.seed) {
        out.push(Instance::new(
            format!("subtraction{set:?}"),
            FamilySpec::Subtraction { set },
            200,
            pet,
        ));
    }
    out.push(Instance::new(
        "euclid_cd",
        FamilySpec::EuclidCd,
        25,
        mis_forced,
    ));
    out.push(Instance::new(
        "euclid_grossman",
        FamilySpec::EuclidGrossman,
        25,
        mis_forced,
    ));
    out.push(Instance::new(
        "wythoff",
        FamilySpec::Wythoff,
        25,
        &[
            (Miserable, true),
            (Returnable, true),
            (Forced, false),
            (Pet, false),
        ],
    ));
    for a in 2..=4 {
        out.push(Instance::new(
            format!("wyt_a({a})"),
            FamilySpec::WytA { a },
            25,
            pet,
        ));
    }
    for a in 0..=3 {
        for b in 1..=3 {
            let expect: &[(ClassPredicate, bool)] = if (a == 1) || (b == 1 && a <= 1) {
                &[(Miserable, true), (Returnable, true), (Pet, false)]
            } else {
                pet
            };
            out.push(Instance::new(
                format!("wyt_ab({a},{b})"),
                FamilySpec::WytAb { a, b },
                25,
                expect,
            ));
        }
    }
    out.push(Instance::new("mark", FamilySpec::Mark, 20, not_domestic));
    for (n, k) in [
        (3, 2),
        (4, 2),
        (4, 3),
        (5, 2),
        (5, 3),
        (5, 4),
        (6, 2),
        (6, 5),
    ] {
        out.push(Instance::new(
            format!("moore_nim({n},{k})"),
            FamilySpec::MooreNim { n, k },
            3,
            miserable,
        ));
    }
    for (n, k) in [(3, 1), (3, 2), (4, 1), (4, 2), (4, 3), (5, 2)] {
        out.push(Instance::new(
            format!("extended_nim({n},{k})"),
            FamilySpec::ExtendedNim { n, k },
            3,
            miserable,
        ));
    }
    for k in 1..=3 {
        out.push(Instance::new(
            format!("exact_nim({},{k})", 2 * k),
            FamilySpec::ExactNim { n: 2 * k, k },
            3,
            miserable,
        ));
    }
    for (n, k) in [(2, 2), (3, 2), (3, 3), (4, 3), (5, 3), (5, 4), (6, 4)] {
        out.push(Instance::new(
            format!("exact_nim({n},{k})"),
            FamilySpec::ExactNim { n, k },
            3,
            pet,
        ));
    }
    out.push(Instance::new(
        "exact_nim(5,2)",
        FamilySpec::ExactNim { n: 5, k: 2 },
        3,
        not_domestic,
    ));
    for (n, k) in [
        (1, 1),
        (2, 1),
        (2, 2),
        (3, 2),
        (3, 3),
        (4, 3),
        (4, 4),
        (5, 4),
        (6, 5),
    ] {
        out.push(Instance::new(
            format!("slow_nim({n},{k})"),
            FamilySpec::SlowNim { n, k },
            3,
            miserable,
        ));
    }
    out.push(Instance::new(
        "slow_nim(4,2)",
        FamilySpec::SlowNim { n: 4, k: 2 },
        3,
        not_domestic,
    ));
    out.push(Instance::new(
        "ho_nim C4",
        ho(HoShape::Cycle, 4),
        3,
        mis_forced,
    ));
    out.push(Instance::new(
        "ho_nim C5",
        ho(HoShape::Cycle, 5),
        3,
        domestic_not_tame,
    ));
    out.push(Instance::new(
        "ho_nim C6",
        ho(HoShape::Cycle, 6),
        3,
        not_domestic,
    ));
    out.push(Instance::new(
        "ho_nim P3",
        ho(HoShape::Path, 3),
        3,
        miserable,
    ));
    out.push(Instance::new(
        "ho_nim P4",
        ho(HoShape::Path, 4),
        3,
        domestic_not_tame,
    ));
    out.push(Instance::new(
        "ho_nim P5",
        ho(HoShape::Path, 5),
        3,
        domestic_not_tame,
    ));
    out.push(Instance::new(
        "ho_nim P6",
        ho(HoShape::Path, 6),
        3,
        not_domestic,
    ));
    out.push(Instance::new(
        "ho_nim conj1",
        ho(HoShape::Conj1, 5),
        2,
        &[(Tame, false)],
    ));
    out.push(Instance::new(
        "ho_nim conj2",
        ho(HoShape::Conj2, 4),
        2,
        &[(Tame, false)],
    ));
    out
}

/// Stated class verdicts of every family, plus the Euclid swap formulas.
pub fn families_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for inst in family_instances(cfg) {
        checks.push(inst.verdict_check()?);
    }
    checks.push(oracle_agreement(
        "euclid_cd",
        FamilySpec::EuclidCd,
        25,
        |p| Ok(euclid_swap_oracle(EuclidVariant::ColeDavie, p)),
    )?);
    checks.push(oracle_agreement(
        "euclid_grossman Fibonacci chain",
        FamilySpec::EuclidGrossman,
        25,
        |p| Ok(grossman_chain_oracle(p)),
    )?);
    for n in 1..=4 {
        checks.push(oracle_agreement(
            &format!("nim({n})"),
            FamilySpec::Nim { n },
            1,
            |p| {
                let ones = p.coords().iter().filter(|&&c| c == 1).count();
                Ok(Some(if ones % 2 == 0 {
                    Label::P01
                } else {
                    Label::P10
                }))
            },
        )?);
    }
    checks.extend(ferguson_suite(cfg)?);
    Ok(checks)
}

/// Normal play on the adjoined-terminal graph equals misère play, for every
/// fixture and family instance.
pub fn adjoined_terminal_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut graphs: Vec<(String, LabeledGraph)> = Vec::new();
    for name in FIXTURE_NAMES {
        graphs.push((name.to_string(), fixture_graph(name)?));
    }
    for inst in family_instances(cfg) {
        let lg = inst.solve()?;
        graphs.push((inst.name, lg));
    }
    for (a, b) in [(2, 1), (3, 1), (1, 2), (2, 2), (2, 3)] {
        let spec = FamilySpec::WytAb { a, b };
        graphs.push((
            format!("wyt_ab({a},{b}) within 60"),
            solve(&make_family(&spec)?, &[Position::new([60, 60])])?,
        ));
    }
    let mut total = 0;
    let mut bad = Vec::new();
    for (name, lg) in &graphs {
        total += lg.graph().len();
        let m = adjoined_terminal_mismatches(lg);
        if m > 0 {
            bad.push(format!("{name}: {m} nodes"));
        }
    }
    Ok(vec![check(
        "adjoined terminal equals misère",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} graphs, {total} nodes", graphs.len())
        } else {
            bad.join("; ")
        },
    )])
}
