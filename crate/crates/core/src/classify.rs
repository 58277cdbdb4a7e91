//! Class predicates (domestic, tame, pet, the four miserability classes,
//! forced, returnable), witnesses for failures, and the constructive
//! candidate-set characterizations.
//!
//! Every verdict applies to the enumerated subgame only; reports carry the
//! graph's bound string so a verdict is never detached from its truncation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{NodeId, Position, ReachableGraph};
use crate::grundy::{sg_labels, Label, LabeledGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassPredicate {
    Domestic,
    Tame,
    Pet,
    Miserable,
    StronglyMiserable,
    TMiserable,
    WeaklyMiserable,
    Forced,
    Returnable,
}

impl ClassPredicate {
    pub const ALL: [ClassPredicate; 9] = [
        ClassPredicate::Domestic,
        ClassPredicate::Tame,
        ClassPredicate::Pet,
        ClassPredicate::Miserable,
        ClassPredicate::StronglyMiserable,
        ClassPredicate::TMiserable,
        ClassPredicate::WeaklyMiserable,
        ClassPredicate::Forced,
        ClassPredicate::Returnable,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassPredicate::Domestic => "domestic",
            ClassPredicate::Tame => "tame",
            ClassPredicate::Pet => "pet",
            ClassPredicate::Miserable => "miserable",
            ClassPredicate::StronglyMiserable => "strongly_miserable",
            ClassPredicate::TMiserable => "t_miserable",
            ClassPredicate::WeaklyMiserable => "weakly_miserable",
            ClassPredicate::Forced => "forced",
            ClassPredicate::Returnable => "returnable",
        }
    }
}

impl fmt::Display for ClassPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassPredicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClassPredicate::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::UnknownPredicate(s.to_string()))
    }
}

/// Which of V_{0,1}, V_{1,0}, V_{0,0}, V_{1,1} a node can move into.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Reach {
    pub to01: bool,
    pub to10: bool,
    pub to00: bool,
    pub to11: bool,
}

pub fn reach(lg: &LabeledGraph, x: NodeId) -> Reach {
    let mut r = Reach::default();
    for &y in lg.graph().succ(x) {
        let l = lg.label(y);
        r.to01 |= l == Label::P01;
        r.to10 |= l == Label::P10;
        r.to00 |= l == Label::P00;
        r.to11 |= l == Label::P11;
    }
    r
}

/// The per-position properties used by the miserability classes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Properties {
    /// Swap position.
    pub a: bool,
    /// In V_{0,1} ∪ V_{1,0} ∪ V_{0,0} ∪ V_{1,1}.
    pub a0: bool,
    /// Not movable to V_{0,1} ∪ V_{1,0}.
    pub b: bool,
    /// Movable to V_{0,1} and to V_{1,0}.
    pub c: bool,
    /// Movable to V_{0,1} and to V_{0,0}.
    pub c0: bool,
    /// Movable to V_{1,0} and to V_{0,0}.
    pub c1: bool,
    /// Movable to V_{0,0} and to V_{1,1}.
    pub e: bool,
}

pub fn properties(lg: &LabeledGraph, x: NodeId) -> Properties {
    let l = lg.label(x);
    let r = reach(lg, x);
    Properties {
        a: l.is_swap(),
        a0: l.is_swap() || l == Label::P00 || l == Label::P11,
        b: !r.to01 && !r.to10,
        c: r.to01 && r.to10,
        c0: r.to01 && r.to00,
        c1: r.to10 && r.to00,
        e: r.to00 && r.to11,
    }
}

/// A node violating a predicate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub position: Position,
    pub name: String,
    pub label: Label,
    pub reason: String,
}

fn witness(lg: &LabeledGraph, x: NodeId, reason: String) -> Witness {
    Witness {
        position: lg.graph().position(x).clone(),
        name: lg.graph().name(x).to_string(),
        label: lg.label(x),
        reason,
    }
}

/// Why `x` breaks the defining condition of `pred`, if it does.
fn violation(lg: &LabeledGraph, x: NodeId, pred: ClassPredicate) -> Option<String> {
    let graph = lg.graph();
    let l = lg.label(x);
    let props = || properties(lg, x);
    match pred {
        ClassPredicate::Domestic => ((l.g == 0 && l.g_minus >= 2) || (l.g_minus == 0 && l.g >= 2))
            .then(|| format!("{l}-position")),
        ClassPredicate::Tame => (!l.is_swap() && l.g != l.g_minus)
            .then(|| format!("{l}-position is neither a swap nor (k,k)")),
        ClassPredicate::Pet => (!l.is_swap() && !(l.g == l.g_minus && l.g >= 2))
            .then(|| format!("{l}-position is neither a swap nor (k,k) with k >= 2")),
        ClassPredicate::StronglyMiserable => {
            let p = props();
            (!(p.a || p.c)).then(|| "properties a and c both fail".to_string())
        }
        ClassPredicate::Miserable => {
            let p = props();
            (!(p.a || p.b || p.c)).then(|| "properties a, b and c all fail".to_string())
        }
        ClassPredicate::TMiserable => {
            let p = props();
            (!(p.a0 || p.c || p.e)).then(|| "properties a0, c and e all fail".to_string())
        }
        ClassPredicate::WeaklyMiserable => {
            let p = props();
            (!(p.a || p.b || p.c || p.c0 || p.c1))
                .then(|| "properties a, b, c, c0 and c1 all fail".to_string())
        }
        ClassPredicate::Forced => {
            if !l.is_swap() {
                return None;
            }
            let opposite = if l == Label::P01 {
                Label::P10
            } else {
                Label::P01
            };
            graph
                .succ(x)
                .iter()
                .find(|&&y| lg.label(y) != opposite)
                .map(|&y| {
                    format!(
                        "{l}-position moves to {} labelled {}",
                        graph.name(y),
                        lg.label(y)
                    )
                })
        }
        ClassPredicate::Returnable => {
            if !l.is_swap() {
                return None;
            }
            graph
                .succ(x)
                .iter()
                .find(|&&y| {
                    !graph.is_terminal(y) && !graph.succ(y).iter().any(|&z| lg.label(z) == l)
                })
                .map(|&y| {
                    format!(
                        "{l}-position moves to {}, which has no move back to a {l}-position",
                        graph.name(y)
                    )
                })
        }
    }
}

/// Node ids by increasing depth, ties broken by coordinates.
fn witness_order(graph: &ReachableGraph) -> Vec<NodeId> {
    let mut ids: Vec<NodeId> = (0..graph.len()).collect();
    ids.sort_by(|&a, &b| {
        graph
            .depth(a)
            .cmp(&graph.depth(b))
            .then_with(|| graph.position(a).cmp(graph.position(b)))
    });
    ids
}

fn first_violation(lg: &LabeledGraph, order: &[NodeId], pred: ClassPredicate) -> Option<Witness> {
    order
        .iter()
        .find_map(|&x| violation(lg, x, pred).map(|reason| witness(lg, x, reason)))
}

/// Minimal-depth node violating `pred`, or `None` if the predicate holds on
/// the whole enumeration.
pub fn find_witness(lg: &LabeledGraph, pred: ClassPredicate) -> Option<Witness> {
    first_violation(lg, &witness_order(lg.graph()), pred)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub verdicts: BTreeMap<ClassPredicate, bool>,
    pub witnesses: BTreeMap<ClassPredicate, Option<Witness>>,
    pub bound: String,
}

impl ClassReport {
    pub fn holds(&self, pred: ClassPredicate) -> bool {
        self.verdicts[&pred]
    }

    pub fn witness(&self, pred: ClassPredicate) -> Option<&Witness> {
        self.witnesses[&pred].as_ref()
    }

    /// Implications between the classes that must hold on every game. Empty
    /// when the report is consistent.
    pub fn invariant_violations(&self) -> Vec<String> {
        use ClassPredicate::*;
        let h = |p| self.holds(p);
        let implications = [
            (Pet, Tame),
            (Tame, Domestic),
            (StronglyMiserable, Miserable),
            (Miserable, TMiserable),
            (TMiserable, WeaklyMiserable),
            (Miserable, Tame),
            (StronglyMiserable, Returnable),
            (Forced, Returnable),
        ];
        let equalities = [
            (Domestic, WeaklyMiserable),
            (Tame, TMiserable),
            (Pet, StronglyMiserable),
        ];
        let mut out = Vec::new();
        for (a, b) in implications {
            if h(a) && !h(b) {
                out.push(format!("{a} holds but {b} does not"));
            }
        }
        for (a, b) in equalities {
            if h(a) != h(b) {
                out.push(format!("{a} is {} but {b} is {}", h(a), h(b)));
            }
        }
        out
    }
}

/// Evaluates all nine predicates node by node from their definitions.
pub fn classify(lg: &LabeledGraph) -> ClassReport {
    let order = witness_order(lg.graph());
    let mut verdicts = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    for pred in ClassPredicate::ALL {
        let w = first_violation(lg, &order, pred);
        verdicts.insert(pred, w.is_none());
        witnesses.insert(pred, w);
    }
    ClassReport {
        verdicts,
        witnesses,
        bound: lg.graph().bound().to_string(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SmCondition {
    pub id: &'static str,
    pub holds: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub conditions: Vec<SmCondition>,
    pub agree: bool,
}

impl EquivalenceReport {
    pub fn condition(&self, id: &str) -> Option<&SmCondition> {
        self.conditions.iter().find(|c| c.id == id)
    }
}

/// Evaluates the six equivalent characterizations of pet games independently.
pub fn check_sm_equivalences(lg: &LabeledGraph) -> EquivalenceReport {
    let graph = lg.graph();
    let order = witness_order(graph);
    let find = |f: &dyn Fn(NodeId) -> Option<String>| {
        order
            .iter()
            .find_map(|&x| f(x).map(|reason| witness(lg, x, reason)))
    };
    let has_option = |x: NodeId, pick: fn(Label) -> u32, v: u32| {
        graph.succ(x).iter().any(|&y| pick(lg.label(y)) == v)
    };

    let witnesses = [
        (
            "i",
            first_violation(lg, &order, ClassPredicate::StronglyMiserable),
        ),
        ("ii", first_violation(lg, &order, ClassPredicate::Pet)),
        (
            "iii",
            find(&|x| (lg.label(x) == Label::P00).then(|| "(0,0)-position".to_string())),
        ),
        (
            "iv",
            find(&|x| {
                let l = lg.label(x);
                (l == Label::P00 || l == Label::P11).then(|| format!("{l}-position"))
            }),
        ),
        (
            "v",
            find(&|x| {
                (lg.label(x).g == 0 && !graph.is_terminal(x) && !has_option(x, |l| l.g, 1))
                    .then(|| "non-terminal 0-position with no move to a 1-position".to_string())
            }),
        ),
        (
            "vi",
            find(&|x| {
                (lg.label(x).g_minus == 0 && !has_option(x, |l| l.g_minus, 1))
                    .then(|| "misère 0-position with no move to a misère 1-position".to_string())
            }),
        ),
    ];
    let conditions: Vec<SmCondition> = witnesses
        .into_iter()
        .map(|(id, w)| SmCondition {
            id,
            holds: w.is_none(),
            witness: w,
        })
        .collect();
    let agree = conditions.iter().all(|c| c.holds == conditions[0].holds);
    EquivalenceReport { conditions, agree }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Slot {
    #[serde(rename = "v01")]
    V01,
    #[serde(rename = "v10")]
    V10,
    #[serde(rename = "v00")]
    V00,
    #[serde(rename = "v11")]
    V11,
}

impl Slot {
    pub const ALL: [Slot; 4] = [Slot::V01, Slot::V10, Slot::V00, Slot::V11];

    pub fn name(self) -> &'static str {
        match self {
            Slot::V01 => "V'01",
            Slot::V10 => "V'10",
            Slot::V00 => "V'00",
            Slot::V11 => "V'11",
        }
    }

    pub fn label(self) -> Label {
        match self {
            Slot::V01 => Label::P01,
            Slot::V10 => Label::P10,
            Slot::V00 => Label::P00,
            Slot::V11 => Label::P11,
        }
    }
}

/// Classes with a constructive candidate-set characterization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateTarget {
    Pet,
    Miserable,
    Tame,
    Domestic,
}

impl CandidateTarget {
    pub fn required(self) -> &'static [Slot] {
        match self {
            CandidateTarget::Pet | CandidateTarget::Miserable => &[Slot::V01, Slot::V10],
            CandidateTarget::Tame => &[Slot::V01, Slot::V10, Slot::V00, Slot::V11],
            CandidateTarget::Domestic => &[Slot::V01, Slot::V10, Slot::V00],
        }
    }

    pub fn class(self) -> ClassPredicate {
        match self {
            CandidateTarget::Pet => ClassPredicate::Pet,
            CandidateTarget::Miserable => ClassPredicate::Miserable,
            CandidateTarget::Tame => ClassPredicate::Tame,
            CandidateTarget::Domestic => ClassPredicate::Domestic,
        }
    }
}

impl FromStr for CandidateTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pet" | "strongly_miserable" => Ok(CandidateTarget::Pet),
            "miserable" => Ok(CandidateTarget::Miserable),
            "tame" | "t_miserable" => Ok(CandidateTarget::Tame),
            "domestic" | "weakly_miserable" => Ok(CandidateTarget::Domestic),
            other => Err(Error::UnknownPredicate(other.to_string())),
        }
    }
}

/// Proposed V'_{i,j} sets. Absent sets are `None`; an empty set is `Some`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CandidateSets {
    pub v01: Option<BTreeSet<Position>>,
    pub v10: Option<BTreeSet<Position>>,
    pub v00: Option<BTreeSet<Position>>,
    pub v11: Option<BTreeSet<Position>>,
}

impl CandidateSets {
    pub fn swaps(
        v01: impl IntoIterator<Item = Position>,
        v10: impl IntoIterator<Item = Position>,
    ) -> Self {
        CandidateSets {
            v01: Some(v01.into_iter().collect()),
            v10: Some(v10.into_iter().collect()),
            ..Default::default()
        }
    }

    pub fn with_v00(mut self, v00: impl IntoIterator<Item = Position>) -> Self {
        self.v00 = Some(v00.into_iter().collect());
        self
    }

    pub fn with_v11(mut self, v11: impl IntoIterator<Item = Position>) -> Self {
        self.v11 = Some(v11.into_iter().collect());
        self
    }

    /// Fills the `slots` sets by classifying every node of `graph` with `f`,
    /// for candidate families given by a formula rather than a list.
    pub fn from_fn(
        graph: &ReachableGraph,
        slots: &[Slot],
        f: impl Fn(&Position) -> Option<Slot>,
    ) -> Self {
        let mut sets = CandidateSets::default();
        for &s in slots {
            *sets.slot_mut(s) = Some(BTreeSet::new());
        }
        for p in graph.positions() {
            if let Some(s) = f(p) {
                if let Some(set) = sets.slot_mut(s) {
                    set.insert(p.clone());
                }
            }
        }
        sets
    }

    /// The solver's own V sets for the slots `target` needs.
    pub fn from_solver(lg: &LabeledGraph, target: CandidateTarget) -> Self {
        let mut sets = CandidateSets::default();
        for &s in target.required() {
            let l = s.label();
            let set = lg
                .vsets()
                .get(l.g, l.g_minus)
                .iter()
                .map(|&id| lg.graph().position(id).clone())
                .collect();
            *sets.slot_mut(s) = Some(set);
        }
        sets
    }

    pub fn slot(&self, s: Slot) -> Option<&BTreeSet<Position>> {
        match s {
            Slot::V01 => self.v01.as_ref(),
            Slot::V10 => self.v10.as_ref(),
            Slot::V00 => self.v00.as_ref(),
            Slot::V11 => self.v11.as_ref(),
        }
    }

    fn slot_mut(&mut self, s: Slot) -> &mut Option<BTreeSet<Position>> {
        match s {
            Slot::V01 => &mut self.v01,
            Slot::V10 => &mut self.v10,
            Slot::V00 => &mut self.v00,
            Slot::V11 => &mut self.v11,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionResult {
    pub id: &'static str,
    pub holds: bool,
    /// First offending position and what went wrong there.
    pub witness: Option<(Position, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SetMismatch {
    pub slot: Slot,
    pub position: Position,
    pub solver_label: Label,
    pub in_candidate: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub target: CandidateTarget,
    pub conditions: Vec<ConditionResult>,
    /// Candidate positions absent from the enumerated graph.
    pub ignored: usize,
    pub sets_match_solver: bool,
    pub mismatch: Option<SetMismatch>,
    pub bound: String,
}

impl VerifyReport {
    pub fn conditions_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    /// All conditions hold and the candidates equal the solver's V sets.
    pub fn passed(&self) -> bool {
        self.conditions_hold() && self.sets_match_solver
    }

    pub fn first_failure(&self) -> Option<&ConditionResult> {
        self.conditions.iter().find(|c| !c.holds)
    }

    pub fn condition(&self, id: &str) -> Option<&ConditionResult> {
        self.conditions.iter().find(|c| c.id == id)
    }
}

/// Node membership in the candidate sets.
struct Membership<'a> {
    graph: &'a ReachableGraph,
    of: Vec<[bool; 4]>,
}

impl Membership<'_> {
    fn is(&self, x: NodeId, s: Slot) -> bool {
        self.of[x][s as usize]
    }

    fn any(&self, x: NodeId, slots: &[Slot]) -> bool {
        slots.iter().any(|&s| self.is(x, s))
    }

    fn movable(&self, x: NodeId, slots: &[Slot]) -> bool {
        self.graph.succ(x).iter().any(|&y| self.any(y, slots))
    }
}

/// Checks the numbered conditions of the constructive characterization of
/// `target` for the proposed sets, then whether they coincide with the
/// solver's V sets.
pub fn verify_candidate_sets(
    graph: &ReachableGraph,
    cand: &CandidateSets,
    target: CandidateTarget,
) -> Result<VerifyReport> {
    use Slot::*;
    for &s in target.required() {
        if cand.slot(s).is_none() {
            return Err(Error::MissingSet(s.name()));
        }
    }

    let mut of = vec![[false; 4]; graph.len()];
    let mut ignored = 0;
    let mut disjoint_witness = None;
    for &s in target.required() {
        for p in cand.slot(s).into_iter().flatten() {
            match graph.lookup(p) {
                Some(x) => {
                    if of[x].iter().any(|&b| b) && !of[x][s as usize] && disjoint_witness.is_none()
                    {
                        disjoint_witness = Some((
                            graph.position(x).clone(),
                            format!("also listed in {}", s.name()),
                        ));
                    }
                    of[x][s as usize] = true;
                }
                None => ignored += 1,
            }
        }
    }
    let m = Membership { graph, of };
    let order = witness_order(graph);

    let mut conditions = vec![ConditionResult {
        id: "disjoint",
        holds: disjoint_witness.is_none(),
        witness: disjoint_witness,
    }];
    let mut check = |id: &'static str, f: &dyn Fn(NodeId) -> Option<String>| {
        let w = order
            .iter()
            .find_map(|&x| f(x).map(|why| (graph.position(x).clone(), why)));
        conditions.push(ConditionResult {
            id,
            holds: w.is_none(),
            witness: w,
        });
    };
    let required = target.required();

    check("i", &|x| {
        required.iter().find_map(|&s| {
            let y = graph.succ(x).iter().find(|&&y| m.is(x, s) && m.is(y, s))?;
            Some(format!("move to {} inside {}", graph.name(*y), s.name()))
        })
    });
    check("ii", &|x| {
        (graph.is_terminal(x) && !m.is(x, V01)).then(|| "terminal outside V'01".to_string())
    });

    match target {
        CandidateTarget::Pet | CandidateTarget::Miserable => {
            check("iii", &|x| {
                (m.is(x, V01) && !graph.is_terminal(x) && !m.movable(x, &[V10]))
                    .then(|| "non-terminal member of V'01 not movable to V'10".to_string())
            });
            check("iv", &|x| {
                (m.is(x, V10) && !m.movable(x, &[V01]))
                    .then(|| "member of V'10 not movable to V'01".to_string())
            });
            if target == CandidateTarget::Pet {
                check("SM(v)", &|x| {
                    let a = m.any(x, &[V01, V10]);
                    let c = m.movable(x, &[V01]) && m.movable(x, &[V10]);
                    (a == c).then(|| {
                        if a {
                            "both a' and c' hold"
                        } else {
                            "neither a' nor c' holds"
                        }
                        .to_string()
                    })
                });
            } else {
                check("M(v)", &|x| {
                    let a = m.any(x, &[V01, V10]);
                    let b = !m.movable(x, &[V01, V10]);
                    let c = m.movable(x, &[V01]) && m.movable(x, &[V10]);
                    (!(a || b || c)).then(|| "a', b' and c' all fail".to_string())
                });
            }
        }
        CandidateTarget::Tame => {
            check("iii", &|x| {
                if !m.is(x, V01) {
                    return None;
                }
                if !graph.is_terminal(x) && !m.movable(x, &[V10]) {
                    return Some("non-terminal member of V'01 not movable to V'10".to_string());
                }
                m.movable(x, &[V00, V11])
                    .then(|| "member of V'01 movable to V'00 or V'11".to_string())
            });
            check("iv", &|x| {
                if !m.is(x, V10) {
                    return None;
                }
                if !m.movable(x, &[V01]) {
                    return Some("member of V'10 not movable to V'01".to_string());
                }
                m.movable(x, &[V00, V11])
                    .then(|| "member of V'10 movable to V'00 or V'11".to_string())
            });
            check("v", &|x| {
                (m.is(x, V00) && m.movable(x, &[V01, V10]))
                    .then(|| "member of V'00 movable to V'01 or V'10".to_string())
            });
            check("vi", &|x| {
                if !m.is(x, V11) {
                    return None;
                }
                if !m.movable(x, &[V00]) {
                    return Some("member of V'11 not movable to V'00".to_string());
                }
                m.movable(x, &[V01, V10])
                    .then(|| "member of V'11 movable to V'01 or V'10".to_string())
            });
            check("vii", &|x| {
                (!m.any(x, &[V01, V10, V00]) && !m.movable(x, &[V01, V10, V00]))
                    .then(|| "outside V'01, V'10, V'00 and not movable into them".to_string())
            });
            check("T(viii)", &|x| {
                let a0 = m.any(x, &[V01, V10, V00, V11]);
                let c = m.movable(x, &[V01]) && m.movable(x, &[V10]);
                let e = m.movable(x, &[V00]) && m.movable(x, &[V11]);
                (!(a0 || c || e)).then(|| "a0', c' and e' all fail".to_string())
            });
        }
        CandidateTarget::Domestic => {
            check("iii", &|x| {
                if !m.is(x, V01) {
                    return None;
                }
                if !graph.is_terminal(x) && !m.movable(x, &[V10]) {
                    return Some("non-terminal member of V'01 not movable to V'10".to_string());
                }
                m.movable(x, &[V00])
                    .then(|| "member of V'01 movable to V'00".to_string())
            });
            check("iv", &|x| {
                if !m.is(x, V10) {
                    return None;
                }
                if !m.movable(x, &[V01]) {
                    return Some("member of V'10 not movable to V'01".to_string());
                }
                m.movable(x, &[V00])
                    .then(|| "member of V'10 movable to V'00".to_string())
            });
            check("v", &|x| {
                (m.is(x, V00) && m.movable(x, &[V01, V10]))
                    .then(|| "member of V'00 movable to V'01 or V'10".to_string())
            });
            check("vi", &|x| {
                (!m.any(x, &[V01, V10, V00]) && !m.movable(x, &[V01, V10, V00]))
                    .then(|| "outside V'01, V'10, V'00 and not movable into them".to_string())
            });
            check("D(vii)", &|x| {
                let a = m.any(x, &[V01, V10]);
                let b = !m.movable(x, &[V01, V10]);
                let c = m.movable(x, &[V01]) && m.movable(x, &[V10]);
                let c0 = m.movable(x, &[V01]) && m.movable(x, &[V00]);
                let c1 = m.movable(x, &[V10]) && m.movable(x, &[V00]);
                (!(a || b || c || c0 || c1)).then(|| "a', b', c', c0' and c1' all fail".to_string())
            });
        }
    }

    let lg = sg_labels(graph);
    let mismatch = order.iter().find_map(|&x| {
        required.iter().find_map(|&s| {
            let in_solver = lg.label(x) == s.label();
            (in_solver != m.is(x, s)).then(|| SetMismatch {
                slot: s,
                position: graph.position(x).clone(),
                solver_label: lg.label(x),
                in_candidate: m.is(x, s),
            })
        })
    });

    Ok(VerifyReport {
        target,
        conditions,
        ignored,
        sets_match_solver: mismatch.is_none(),
        mismatch,
        bound: graph.bound().to_string(),
    })
}
