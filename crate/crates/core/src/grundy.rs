//! Normal and misère Sprague-Grundy labels.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::game::{NodeId, Position, ReachableGraph};

/// Pairs with both coordinates at most this value get their own V-set cell.
pub const VSET_BOUND: u32 = 64;

/// Consistency reports keep at most this many violations.
pub const MAX_REPORTED_VIOLATIONS: usize = 100;

/// `(𝒢(x), 𝒢⁻(x))` of one position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Label {
    pub g: u32,
    pub g_minus: u32,
}

impl Label {
    pub const P01: Label = Label { g: 0, g_minus: 1 };
    pub const P10: Label = Label { g: 1, g_minus: 0 };
    pub const P00: Label = Label { g: 0, g_minus: 0 };
    pub const P11: Label = Label { g: 1, g_minus: 1 };

    pub const fn new(g: u32, g_minus: u32) -> Self {
        Label { g, g_minus }
    }

    pub fn is_swap(self) -> bool {
        self == Label::P01 || self == Label::P10
    }

    pub fn is(self, g: u32, g_minus: u32) -> bool {
        self.g == g && self.g_minus == g_minus
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.g, self.g_minus)
    }
}

/// Least non-negative integer absent from `values`.
pub fn mex<I: IntoIterator<Item = u32>>(values: I) -> u32 {
    let values: Vec<u32> = values.into_iter().collect();
    let mut seen = vec![false; values.len() + 1];
    for v in values {
        if let Some(slot) = seen.get_mut(v as usize) {
            *slot = true;
        }
    }
    seen.iter().position(|&s| !s).unwrap_or(0) as u32
}

/// Scratch bitset for mex over option values; an option set of size `d` only
/// needs `d + 1` bits.
#[derive(Default)]
struct MexScratch {
    words: Vec<u64>,
}

impl MexScratch {
    fn mex(&mut self, values: impl Iterator<Item = u32>, degree: usize) -> u32 {
        let words = degree / 64 + 1;
        self.words.clear();
        self.words.resize(words, 0);
        for v in values {
            let v = v as usize;
            if v <= degree {
                self.words[v / 64] |= 1 << (v % 64);
            }
        }
        for (i, w) in self.words.iter().enumerate() {
            if *w != u64::MAX {
                return (i * 64 + w.trailing_ones() as usize) as u32;
            }
        }
        (words * 64) as u32
    }
}

/// The V_{i,j} partition of a labeled graph.
#[derive(Clone, Debug, Default)]
pub struct VSets {
    cells: BTreeMap<(u32, u32), Vec<NodeId>>,
    high: Vec<NodeId>,
}

impl VSets {
    fn build(labels: &[Label]) -> Self {
        let mut sets = VSets::default();
        for (id, l) in labels.iter().enumerate() {
            if l.g <= VSET_BOUND && l.g_minus <= VSET_BOUND {
                sets.cells.entry((l.g, l.g_minus)).or_default().push(id);
            } else {
                sets.high.push(id);
            }
        }
        sets
    }

    /// Nodes labelled `(i,j)`. Pairs above [`VSET_BOUND`] live in [`VSets::high`].
    pub fn get(&self, i: u32, j: u32) -> &[NodeId] {
        self.cells.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn high(&self) -> &[NodeId] {
        &self.high
    }

    pub fn cells(&self) -> impl Iterator<Item = ((u32, u32), &[NodeId])> {
        self.cells.iter().map(|(k, v)| (*k, v.as_slice()))
    }
}

/// A reachable graph with both labels on every node.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    graph: ReachableGraph,
    labels: Vec<Label>,
    vsets: VSets,
}

impl LabeledGraph {
    /// Wraps externally supplied labels, e.g. figure annotations or an
    /// injected fault. Use [`verify_sg_consistency`] to check them.
    pub fn with_labels(graph: ReachableGraph, labels: Vec<Label>) -> Self {
        assert_eq!(graph.len(), labels.len());
        let vsets = VSets::build(&labels);
        LabeledGraph {
            graph,
            labels,
            vsets,
        }
    }

    pub fn graph(&self) -> &ReachableGraph {
        &self.graph
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, id: NodeId) -> Label {
        self.labels[id]
    }

    pub fn label_of(&self, p: &Position) -> Result<Label> {
        self.graph.find(p).map(|id| self.labels[id])
    }

    pub fn vsets(&self) -> &VSets {
        &self.vsets
    }

    pub fn into_graph(self) -> ReachableGraph {
        self.graph
    }
}

/// Labels every node bottom-up in topological order.
pub fn sg_labels(graph: &ReachableGraph) -> LabeledGraph {
    let mut labels = vec![Label::P00; graph.len()];
    let mut scratch = MexScratch::default();
    for &x in graph.topological_order() {
        let succ = graph.succ(x);
        labels[x] = if succ.is_empty() {
            Label::P01
        } else {
            let d = succ.len();
            Label {
                g: scratch.mex(succ.iter().map(|&y| labels[y].g), d),
                g_minus: scratch.mex(succ.iter().map(|&y| labels[y].g_minus), d),
            }
        };
    }
    LabeledGraph::with_labels(graph.clone(), labels)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    Normal,
    Misere,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Normal => "normal",
            Convention::Misere => "misere",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationKind {
    /// An option carries the node's own value.
    SharedValue { option: Position },
    /// No option realizes a value below the node's value.
    MissingValue { value: u32 },
    /// A misère terminal not labelled 1.
    TerminalValue { value: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub position: Position,
    pub convention: Convention,
    #[serde(flatten)]
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub violations: Vec<Violation>,
    pub total: usize,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.total == 0
    }

    fn push(&mut self, v: Violation) {
        self.total += 1;
        if self.violations.len() < MAX_REPORTED_VIOLATIONS {
            self.violations.push(v);
        }
    }
}

/// Checks the two characterizing conditions of an SG value at every node for
/// both conventions: no option shares the value, and every smaller value is
/// realized by some option.
pub fn verify_sg_consistency(lg: &LabeledGraph) -> ConsistencyReport {
    let graph = lg.graph();
    let mut report = ConsistencyReport::default();
    for x in 0..graph.len() {
        let succ = graph.succ(x);
        for convention in [Convention::Normal, Convention::Misere] {
            let value = |l: Label| match convention {
                Convention::Normal => l.g,
                Convention::Misere => l.g_minus,
            };
            let own = value(lg.label(x));
            if succ.is_empty() && convention == Convention::Misere {
                if own != 1 {
                    report.push(Violation {
                        position: graph.position(x).clone(),
                        convention,
                        kind: ViolationKind::TerminalValue { value: own },
                    });
                }
                continue;
            }
            if let Some(&y) = succ.iter().find(|&&y| value(lg.label(y)) == own) {
                report.push(Violation {
                    position: graph.position(x).clone(),
                    convention,
                    kind: ViolationKind::SharedValue {
                        option: graph.position(y).clone(),
                    },
                });
            }
            let realized: BTreeSet<u32> = succ.iter().map(|&y| value(lg.label(y))).collect();
            if let Some(k) = (0..own).find(|k| !realized.contains(k)) {
                report.push(Violation {
                    position: graph.position(x).clone(),
                    convention,
                    kind: ViolationKind::MissingValue { value: k },
                });
            }
        }
    }
    report
}

/// The swap sets V_{0,1}, V_{1,0} together with V_{0,0} and V_{1,1}.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SwapSets {
    pub v01: BTreeSet<Position>,
    pub v10: BTreeSet<Position>,
    pub v00: BTreeSet<Position>,
    pub v11: BTreeSet<Position>,
}

pub fn swap_sets(lg: &LabeledGraph) -> SwapSets {
    let collect = |i, j| {
        lg.vsets()
            .get(i, j)
            .iter()
            .map(|&id| lg.graph().position(id).clone())
            .collect()
    };
    SwapSets {
        v01: collect(0, 1),
        v10: collect(1, 0),
        v00: collect(0, 0),
        v11: collect(1, 1),
    }
}

/// One row of an SG table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SgRow {
    pub position: Position,
    pub name: String,
    pub g: u32,
    pub g_minus: u32,
}

/// Rows sorted by position.
pub fn sg_rows(lg: &LabeledGraph) -> Vec<SgRow> {
    let graph = lg.graph();
    graph
        .sorted_ids()
        .into_iter()
        .map(|id| SgRow {
            position: graph.position(id).clone(),
            name: graph.name(id).to_string(),
            g: lg.label(id).g,
            g_minus: lg.label(id).g_minus,
        })
        .collect()
}

/// CSV with columns `position,g,g_minus`.
pub fn sg_table_csv(lg: &LabeledGraph) -> String {
    let mut out = String::from("position,g,g_minus\n");
    for row in sg_rows(lg) {
        out.push_str(&format!("{},{},{}\n", row.position, row.g, row.g_minus));
    }
    out
}

pub fn sg_table_json(lg: &LabeledGraph) -> serde_json::Value {
    serde_json::to_value(sg_rows(lg)).expect("rows serialize")
}
