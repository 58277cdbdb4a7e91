//! Explicit digraph games and the bundled figure fixtures.
//!
//! Fixture files are line-oriented:
//!
//! ```text
//! # comment
//! node A 0,1      # optional label annotation (g,g_minus)
//! node B
//! edge B A
//! ```
//!
//! Node lines must precede the edges that mention them. Positions of an
//! explicit game are single coordinates holding the node index in file order.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::game::{enumerate_subgame, EnumerateOptions, Game, GameDef, Position, ReachableGraph};
use crate::grundy::Label;

/// An impartial game given by its full digraph.
#[derive(Clone, Debug)]
pub struct ExplicitGame {
    name: String,
    node_names: Vec<String>,
    succ: Vec<Vec<usize>>,
    annotations: Vec<Option<Label>>,
}

impl ExplicitGame {
    /// Builds a game from adjacency lists. Node `i` becomes position `[i]`.
    pub fn new(
        name: impl Into<String>,
        node_names: Vec<String>,
        succ: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if node_names.len() != succ.len() {
            return Err(Error::InvalidParams(
                "node name count differs from adjacency count".into(),
            ));
        }
        let n = node_names.len();
        if let Some(&bad) = succ.iter().flatten().find(|&&y| y >= n) {
            return Err(Error::InvalidParams(format!(
                "edge target {bad} out of range"
            )));
        }
        Ok(ExplicitGame {
            name: name.into(),
            annotations: vec![None; n],
            node_names,
            succ,
        })
    }

    /// Parses the fixture text format.
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        let mut ids: HashMap<String, usize> = HashMap::new();
        let mut succ: Vec<Vec<usize>> = Vec::new();
        let mut annotations = Vec::new();
        let err = |line: usize, message: String| Error::FixtureParse { line, message };

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                ["node", id, rest @ ..] => {
                    if ids.contains_key(*id) {
                        return Err(err(line_no, format!("duplicate node `{id}`")));
                    }
                    let annotation = match rest {
                        [] => None,
                        [label] => Some(
                            parse_label(label)
                                .ok_or_else(|| err(line_no, format!("bad label `{label}`")))?,
                        ),
                        _ => return Err(err(line_no, "trailing tokens after node label".into())),
                    };
                    ids.insert(id.to_string(), names.len());
                    names.push(id.to_string());
                    succ.push(Vec::new());
                    annotations.push(annotation);
                }
                ["edge", from, to] => {
                    let from = *ids
                        .get(*from)
                        .ok_or_else(|| err(line_no, format!("unknown node `{from}`")))?;
                    let to = *ids
                        .get(*to)
                        .ok_or_else(|| err(line_no, format!("unknown node `{to}`")))?;
                    succ[from].push(to);
                }
                _ => return Err(err(line_no, format!("unrecognized line `{line}`"))),
            }
        }
        Ok(ExplicitGame {
            name: name.to_string(),
            node_names: names,
            succ,
            annotations,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn node_names(&self) -> &[String] {
        &self.node_names
    }

    /// Position of the node called `name`.
    pub fn node(&self, name: &str) -> Option<Position> {
        self.node_names
            .iter()
            .position(|n| n == name)
            .map(|i| Position::single(i as u32))
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.succ.iter().enumerate().flat_map(move |(x, s)| {
            s.iter()
                .map(move |&y| (self.node_names[x].as_str(), self.node_names[y].as_str()))
        })
    }

    /// Every node as a position, in file order.
    pub fn all_positions(&self) -> Vec<Position> {
        (0..self.node_count() as u32)
            .map(Position::single)
            .collect()
    }

    /// Labels printed next to the nodes, if every node carries one.
    pub fn annotated_labels(&self) -> Option<Vec<Label>> {
        self.annotations.iter().copied().collect()
    }

    /// The whole digraph as a reachable graph; node ids equal file order.
    pub fn graph(self: &Arc<Self>) -> Result<ReachableGraph> {
        let game: GameDef = self.clone();
        enumerate_subgame(&game, &self.all_positions(), &EnumerateOptions::exact())
    }
}

fn parse_label(s: &str) -> Option<Label> {
    let (g, gm) = s.split_once(',')?;
    Some(Label::new(g.trim().parse().ok()?, gm.trim().parse().ok()?))
}

impl Game for ExplicitGame {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn arity(&self) -> Option<usize> {
        Some(1)
    }

    fn options(&self, p: &Position) -> Vec<Position> {
        self.succ[p.coords()[0] as usize]
            .iter()
            .map(|&y| Position::single(y as u32))
            .collect()
    }

    fn describe(&self, p: &Position) -> String {
        match p.coords() {
            [i] => self
                .node_names
                .get(*i as usize)
                .cloned()
                .unwrap_or_else(|| p.to_string()),
            _ => p.to_string(),
        }
    }

    fn validate(&self, p: &Position) -> Result<()> {
        match p.coords() {
            [i] if (*i as usize) < self.node_count() => Ok(()),
            _ => Err(Error::InvalidPosition {
                position: p.clone(),
                reason: format!("{} has nodes 0..{}", self.name, self.node_count()),
            }),
        }
    }
}

/// Bundled fixtures, one per figure.
pub const FIXTURE_NAMES: [&str; 10] = [
    "not_domestic",
    "domestic_not_tame",
    "tame_not_pet",
    "pet",
    "not_returnable",
    "returnable_not_forced",
    "tame_not_miserable",
    "abc_chain",
    "sodo_g1",
    "sodo_g2",
];

pub fn fixture_source(name: &str) -> Result<&'static str> {
    Ok(match name {
        "not_domestic" => include_str!("../fixtures/not_domestic.txt"),
        "domestic_not_tame" => include_str!("../fixtures/domestic_not_tame.txt"),
        "tame_not_pet" => include_str!("../fixtures/tame_not_pet.txt"),
        "pet" => include_str!("../fixtures/pet.txt"),
        "not_returnable" => include_str!("../fixtures/not_returnable.txt"),
        "returnable_not_forced" => include_str!("../fixtures/returnable_not_forced.txt"),
        "tame_not_miserable" => include_str!("../fixtures/tame_not_miserable.txt"),
        "abc_chain" => include_str!("../fixtures/abc_chain.txt"),
        "sodo_g1" => include_str!("../fixtures/sodo_g1.txt"),
        "sodo_g2" => include_str!("../fixtures/sodo_g2.txt"),
        other => return Err(Error::UnknownFixture(other.to_string())),
    })
}

pub fn load_fixture(name: &str) -> Result<Arc<ExplicitGame>> {
    ExplicitGame::parse(name, fixture_source(name)?).map(Arc::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edges(name: &str) -> Vec<(String, String)> {
        let g = load_fixture(name).unwrap();
        let mut e: Vec<_> = g
            .edges()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        e.sort();
        e
    }

    fn pairs(list: &[(&str, &str)]) -> Vec<(String, String)> {
        let mut e: Vec<_> = list
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        e.sort();
        e
    }

    #[test]
    fn every_fixture_loads() {
        for name in FIXTURE_NAMES {
            let g = load_fixture(name).unwrap();
            assert!(g.node_count() > 0, "{name}");
            assert!(g.graph().is_ok(), "{name}");
        }
    }

    #[test]
    fn pet_shape() {
        let g = load_fixture("pet").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(edges("pet"), pairs(&[("C", "B"), ("B", "A"), ("C", "A")]));
    }

    #[test]
    fn abc_chain_shape() {
        assert_eq!(load_fixture("abc_chain").unwrap().node_count(), 3);
        assert_eq!(edges("abc_chain"), pairs(&[("C", "B"), ("B", "A")]));
        assert!(load_fixture("abc_chain")
            .unwrap()
            .annotated_labels()
            .is_none());
    }

    #[test]
    fn tame_not_miserable_shape() {
        let g = load_fixture("tame_not_miserable").unwrap();
        assert_eq!(g.node_count(), 6);
        assert_eq!(g.edge_count(), 9);
    }

    #[test]
    fn unknown_fixture() {
        assert_eq!(
            load_fixture("no_such_game").unwrap_err(),
            Error::UnknownFixture("no_such_game".into())
        );
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = ExplicitGame::parse("bad", "node A\nedge A B\n").unwrap_err();
        assert_eq!(
            err,
            Error::FixtureParse {
                line: 2,
                message: "unknown node `B`".into()
            }
        );
        let err = ExplicitGame::parse("bad", "# c\nnode A 1;2\n").unwrap_err();
        assert!(matches!(err, Error::FixtureParse { line: 2, .. }));
        let err = ExplicitGame::parse("bad", "vertex A\n").unwrap_err();
        assert!(matches!(err, Error::FixtureParse { line: 1, .. }));
    }

    #[test]
    fn node_ids_follow_file_order() {
        let g = load_fixture("sodo_g1").unwrap();
        let graph = g.graph().unwrap();
        for (i, name) in g.node_names().iter().enumerate() {
            assert_eq!(graph.name(i), name);
            assert_eq!(graph.position(i), &Position::single(i as u32));
        }
        assert_eq!(g.node("E"), Some(Position::single(4)));
    }
}
