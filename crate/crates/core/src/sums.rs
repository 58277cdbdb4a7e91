//! Disjunctive sums: a move is a move in exactly one component.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::classify::{classify, ClassPredicate, ClassReport};
use crate::error::{Error, Result};
use crate::game::{enumerate_subgame, EnumerateOptions, Game, GameDef, Position, ReachableGraph};
use crate::grundy::{sg_labels, Label, LabeledGraph};

/// Sum of fixed-arity games. A position is the concatenation of the
/// component positions.
#[derive(Debug, Clone)]
pub struct SumGame {
    components: Vec<GameDef>,
    offsets: Vec<usize>,
}

impl SumGame {
    pub fn new(components: Vec<GameDef>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::InvalidParams(
                "a sum needs at least two components".into(),
            ));
        }
        let mut offsets = vec![0];
        for g in &components {
            let n = g
                .arity()
                .ok_or_else(|| Error::InvalidParams(format!("{} has no fixed arity", g.name())))?;
            offsets.push(offsets.last().unwrap() + n);
        }
        Ok(SumGame {
            components,
            offsets,
        })
    }

    pub fn components(&self) -> &[GameDef] {
        &self.components
    }

    pub fn split(&self, p: &Position) -> Vec<Position> {
        self.offsets
            .windows(2)
            .map(|w| Position::new(&p.coords()[w[0]..w[1]]))
            .collect()
    }

    pub fn join(parts: &[Position]) -> Position {
        Position::new(
            parts
                .iter()
                .flat_map(|p| p.coords().iter().copied())
                .collect::<Vec<_>>(),
        )
    }
}

impl Game for SumGame {
    fn name(&self) -> String {
        self.components
            .iter()
            .map(|g| g.name())
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn arity(&self) -> Option<usize> {
        self.offsets.last().copied()
    }

    fn options(&self, p: &Position) -> Vec<Position> {
        let parts = self.split(p);
        let mut out = Vec::new();
        for (i, g) in self.components.iter().enumerate() {
            for q in g.options(&parts[i]) {
                let mut next = parts.clone();
                next[i] = q;
                out.push(SumGame::join(&next));
            }
        }
        out
    }

    fn canonical(&self, p: &Position) -> Position {
        let parts: Vec<Position> = self
            .split(p)
            .iter()
            .zip(&self.components)
            .map(|(q, g)| g.canonical(q))
            .collect();
        SumGame::join(&parts)
    }

    fn has_symmetry(&self) -> bool {
        self.components.iter().any(|g| g.has_symmetry())
    }

    fn describe(&self, p: &Position) -> String {
        self.split(p)
            .iter()
            .zip(&self.components)
            .map(|(q, g)| g.describe(q))
            .collect::<Vec<_>>()
            .join("+")
    }

    fn validate(&self, p: &Position) -> Result<()> {
        if Some(p.len()) != self.arity() {
            return Err(Error::InvalidPosition {
                position: p.clone(),
                reason: format!(
                    "{} expects {} coordinates",
                    self.name(),
                    self.offsets.last().unwrap()
                ),
            });
        }
        self.split(p)
            .iter()
            .zip(&self.components)
            .try_for_each(|(q, g)| g.validate(q))
    }
}

/// Explicit product graph of the sum reachable from the given component roots.
/// `roots[i]` holds one position per component.
pub fn sum_graph(
    games: &[GameDef],
    roots: &[Vec<Position>],
    opts: &EnumerateOptions,
) -> Result<ReachableGraph> {
    let sum = SumGame::new(games.to_vec())?;
    let joined: Vec<Position> = roots
        .iter()
        .map(|parts| {
            if parts.len() != games.len() {
                return Err(Error::InvalidParams(format!(
                    "{} component positions for {} games",
                    parts.len(),
                    games.len()
                )));
            }
            Ok(SumGame::join(parts))
        })
        .collect::<Result<_>>()?;
    let game: GameDef = std::sync::Arc::new(sum);
    enumerate_subgame(&game, &joined, opts)
}

/// Normal-play value of a sum.
pub fn sum_sg(values: &[u32]) -> u32 {
    values.iter().fold(0, |acc, v| acc ^ v)
}

/// Label of a sum of tame positions.
pub fn tame_sum_label(labels: &[Label]) -> Result<Label> {
    if let Some(bad) = labels.iter().find(|l| !l.is_swap() && l.g != l.g_minus) {
        return Err(Error::NotTameLabel {
            g: bad.g,
            g_minus: bad.g_minus,
        });
    }
    if labels.iter().all(|l| l.is_swap()) {
        let odd = labels.iter().filter(|&&l| l == Label::P10).count() % 2 == 1;
        return Ok(if odd { Label::P10 } else { Label::P01 });
    }
    let g = sum_sg(&labels.iter().map(|l| l.g).collect::<Vec<_>>());
    Ok(Label::new(g, g))
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub class: ClassPredicate,
    pub summands: Vec<ClassReport>,
    pub sum: ClassReport,
    /// Sum nodes whose normal value differs from the XOR of the summands.
    pub xor_mismatches: usize,
    /// Sum nodes whose label differs from the tame sum formula; `None` when
    /// some summand is not tame.
    pub tame_mismatches: Option<usize>,
}

impl ClosureReport {
    pub fn summands_in_class(&self) -> bool {
        self.summands.iter().all(|r| r.holds(self.class))
    }

    /// Closure holds vacuously when a summand is outside the class.
    pub fn closed(&self) -> bool {
        !self.summands_in_class() || self.sum.holds(self.class)
    }

    pub fn passed(&self) -> bool {
        self.closed() && self.xor_mismatches == 0 && self.tame_mismatches.unwrap_or(0) == 0
    }
}

/// Labels every summand on its own closure and the sum on its product graph,
/// then compares the sum against the summand labels node by node.
pub fn check_closure(
    class: ClassPredicate,
    games: &[GameDef],
    roots: &[Vec<Position>],
    opts: &EnumerateOptions,
) -> Result<ClosureReport> {
    let sum = SumGame::new(games.to_vec())?;
    let graph = sum_graph(games, roots, opts)?;
    let lg = sg_labels(&graph);

    let mut parts: Vec<LabeledGraph> = Vec::new();
    for (i, g) in games.iter().enumerate() {
        let component_roots: Vec<Position> = roots.iter().map(|r| r[i].clone()).collect();
        parts.push(sg_labels(&enumerate_subgame(g, &component_roots, opts)?));
    }
    let summands: Vec<ClassReport> = parts.iter().map(classify).collect();
    let all_tame = summands.iter().all(|r| r.holds(ClassPredicate::Tame));

    let mut xor_mismatches = 0;
    let mut tame_mismatches = 0;
    for x in 0..graph.len() {
        let labels: Vec<Label> = sum
            .split(graph.position(x))
            .iter()
            .zip(&parts)
            .map(|(q, part)| part.label_of(q))
            .collect::<Result<_>>()?;
        let l = lg.label(x);
        if l.g != sum_sg(&labels.iter().map(|c| c.g).collect::<Vec<_>>()) {
            xor_mismatches += 1;
        }
        if all_tame && tame_sum_label(&labels)? != l {
            tame_mismatches += 1;
        }
    }

    Ok(ClosureReport {
        class,
        summands,
        sum: classify(&lg),
        xor_mismatches,
        tame_mismatches: all_tame.then_some(tame_mismatches),
    })
}

/// Label counts of a graph keyed by `(g, g_minus)`, useful for summaries.
pub fn label_histogram(lg: &LabeledGraph) -> BTreeMap<(u32, u32), usize> {
    let mut h = BTreeMap::new();
    for l in lg.labels() {
        *h.entry((l.g, l.g_minus)).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::load_fixture;

    #[test]
    fn tame_sum_labels() {
        assert_eq!(
            tame_sum_label(&[Label::P01, Label::P01]).unwrap(),
            Label::P01
        );
        assert_eq!(
            tame_sum_label(&[Label::P10, Label::P01]).unwrap(),
            Label::P10
        );
        assert_eq!(
            tame_sum_label(&[Label::P10, Label::P10]).unwrap(),
            Label::P01
        );
        assert_eq!(
            tame_sum_label(&[Label::P10, Label::new(2, 2)]).unwrap(),
            Label::new(3, 3)
        );
        assert_eq!(
            tame_sum_label(&[Label::P00, Label::P11]).unwrap(),
            Label::P11
        );
        assert_eq!(
            tame_sum_label(&[Label::new(0, 2)]),
            Err(Error::NotTameLabel { g: 0, g_minus: 2 })
        );
    }

    #[test]
    fn single_component_rejected() {
        let g: GameDef = load_fixture("pet").unwrap();
        assert!(matches!(
            SumGame::new(vec![g]),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn pet_plus_pet_is_tame_but_not_pet() {
        let g: GameDef = load_fixture("pet").unwrap();
        let roots = vec![vec![Position::single(2), Position::single(2)]];
        let opts = EnumerateOptions::exact();
        let r = check_closure(ClassPredicate::Pet, &[g.clone(), g.clone()], &roots, &opts).unwrap();
        assert!(r.summands_in_class());
        assert!(!r.closed());
        let w = r.sum.witness(ClassPredicate::Pet).unwrap();
        assert_eq!((w.name.as_str(), w.label), ("C+C", Label::P00));
        let r = check_closure(ClassPredicate::Tame, &[g.clone(), g], &roots, &opts).unwrap();
        assert!(r.passed());
        assert_eq!(r.tame_mismatches, Some(0));
    }

    #[test]
    fn sum_names_join_components() {
        let g1: GameDef = load_fixture("sodo_g1").unwrap();
        let g2: GameDef = load_fixture("sodo_g2").unwrap();
        let e = load_fixture("sodo_g1").unwrap().node("E").unwrap();
        let y = load_fixture("sodo_g2").unwrap().node("Y").unwrap();
        let graph = sum_graph(
            &[g1, g2],
            &[vec![e.clone(), y.clone()]],
            &EnumerateOptions::exact(),
        )
        .unwrap();
        let root = graph.roots()[0];
        assert_eq!(graph.name(root), "E+Y");
        assert_eq!(graph.position(root), &SumGame::join(&[e, y]));
    }
}
