//! Positions, rule objects and finite reachable subgames.
//!
//! A game is an implicit acyclic digraph: a [`Game`] yields the options of a
//! position on demand. [`enumerate_subgame`] materializes the subgame spanned
//! by a set of roots into a frozen [`ReachableGraph`] that every solver in the
//! crate works on.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type NodeId = usize;

/// Default cap on the number of enumerated positions.
pub const DEFAULT_NODE_CAP: usize = 5_000_000;

/// A game state as a vector of non-negative coordinates.
///
/// Pile games store pile sizes; explicit digraphs store a single node index.
/// The empty vector is reserved for the terminal adjoined by
/// [`adjoin_misere_terminal`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Position(Vec<u32>);

impl Position {
    pub fn new(coords: impl Into<Vec<u32>>) -> Self {
        Position(coords.into())
    }

    pub fn single(x: u32) -> Self {
        Position(vec![x])
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.0
    }
}

impl From<Vec<u32>> for Position {
    fn from(v: Vec<u32>) -> Self {
        Position(v)
    }
}

impl<const N: usize> From<[u32; N]> for Position {
    fn from(v: [u32; N]) -> Self {
        Position(v.to_vec())
    }
}

/// Dash-joined coordinates, e.g. `3-5`. The adjoined terminal prints as `T`.
impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "T");
        }
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "-")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Accepts coordinates separated by `-` or `,`.
impl FromStr for Position {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "T" {
            return Ok(Position::default());
        }
        s.split(['-', ','])
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidParams(format!("bad coordinate `{part}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Position)
    }
}

impl Serialize for Position {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Rule object for one game family instance.
///
/// Implementations must be acyclic: every option has to decrease some
/// well-founded measure. Enumeration still checks for cycles.
pub trait Game: Send + Sync + fmt::Debug {
    /// Short identifier used in reports.
    fn name(&self) -> String;

    /// Number of coordinates a valid position has, if fixed.
    fn arity(&self) -> Option<usize>;

    fn options(&self, p: &Position) -> Vec<Position>;

    fn is_terminal(&self, p: &Position) -> bool {
        self.options(p).is_empty()
    }

    /// Symmetry hook: maps a position to the representative of its class.
    fn canonical(&self, p: &Position) -> Position {
        p.clone()
    }

    fn has_symmetry(&self) -> bool {
        false
    }

    /// Human-readable name of a position (node names for explicit graphs).
    fn describe(&self, p: &Position) -> String {
        p.to_string()
    }

    fn validate(&self, p: &Position) -> Result<()> {
        match self.arity() {
            Some(n) if p.len() != n => Err(Error::InvalidPosition {
                position: p.clone(),
                reason: format!("{} expects {n} coordinates", self.name()),
            }),
            _ => Ok(()),
        }
    }
}

pub type GameDef = Arc<dyn Game>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub node_cap: usize,
    /// Merge symmetric positions through [`Game::canonical`].
    pub canonicalize: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            node_cap: DEFAULT_NODE_CAP,
            canonicalize: true,
        }
    }
}

impl EnumerateOptions {
    /// Keeps every coordinate vector distinct, even for symmetric families.
    pub fn exact() -> Self {
        EnumerateOptions {
            canonicalize: false,
            ..Self::default()
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.node_cap = cap;
        self
    }
}

/// The finite subgame reachable from a root set, frozen after construction.
#[derive(Clone, Debug)]
pub struct ReachableGraph {
    nodes: Vec<Position>,
    names: Vec<String>,
    index: HashMap<Position, NodeId>,
    succ: Vec<Vec<NodeId>>,
    /// Children before parents.
    order: Vec<NodeId>,
    depth: Vec<u32>,
    roots: Vec<NodeId>,
    bound: String,
    game: Option<GameDef>,
    canonical: bool,
}

impl ReachableGraph {
    /// Builds a graph from explicit parts, computing the topological order and
    /// depths. Fails with [`Error::CycleDetected`] if the edges contain a cycle.
    pub fn from_parts(
        nodes: Vec<Position>,
        names: Vec<String>,
        succ: Vec<Vec<NodeId>>,
        roots: Vec<NodeId>,
        bound: String,
    ) -> Result<Self> {
        Self::assemble(nodes, names, succ, roots, bound, None, false)
    }

    fn assemble(
        nodes: Vec<Position>,
        names: Vec<String>,
        mut succ: Vec<Vec<NodeId>>,
        roots: Vec<NodeId>,
        bound: String,
        game: Option<GameDef>,
        canonical: bool,
    ) -> Result<Self> {
        assert_eq!(nodes.len(), names.len());
        assert_eq!(nodes.len(), succ.len());
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        let n = nodes.len();
        let mut pred: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for (x, s) in succ.iter().enumerate() {
            for &y in s {
                pred[y].push(x);
            }
        }
        let mut remaining: Vec<usize> = succ.iter().map(Vec::len).collect();
        let mut order = Vec::with_capacity(n);
        let mut queue: VecDeque<NodeId> = (0..n).filter(|&x| remaining[x] == 0).collect();
        while let Some(y) = queue.pop_front() {
            order.push(y);
            for &x in &pred[y] {
                remaining[x] -= 1;
                if remaining[x] == 0 {
                    queue.push_back(x);
                }
            }
        }
        if order.len() < n {
            // Every unprocessed node has an unprocessed successor, so walking
            // along them must revisit a node.
            let mut seen = vec![false; n];
            let mut x = (0..n)
                .find(|&x| remaining[x] > 0)
                .expect("unprocessed node");
            while !seen[x] {
                seen[x] = true;
                x = *succ[x]
                    .iter()
                    .find(|&&y| remaining[y] > 0)
                    .expect("unprocessed successor");
            }
            return Err(Error::CycleDetected(nodes[x].clone()));
        }
        let mut depth = vec![0u32; n];
        for &x in &order {
            depth[x] = succ[x].iter().map(|&y| depth[y] + 1).max().unwrap_or(0);
        }
        let index = nodes
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        Ok(ReachableGraph {
            nodes,
            names,
            index,
            succ,
            order,
            depth,
            roots,
            bound,
            game,
            canonical,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn position(&self, id: NodeId) -> &Position {
        &self.nodes[id]
    }

    pub fn positions(&self) -> &[Position] {
        &self.nodes
    }

    pub fn name(&self, id: NodeId) -> &str {
        &self.names[id]
    }

    pub fn succ(&self, id: NodeId) -> &[NodeId] {
        &self.succ[id]
    }

    pub fn is_terminal(&self, id: NodeId) -> bool {
        self.succ[id].is_empty()
    }

    pub fn terminals(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.len()).filter(|&x| self.is_terminal(x))
    }

    /// Node ids with every option listed before the nodes that reach it.
    pub fn topological_order(&self) -> &[NodeId] {
        &self.order
    }

    pub fn depth(&self, id: NodeId) -> u32 {
        self.depth[id]
    }

    pub fn roots(&self) -> &[NodeId] {
        &self.roots
    }

    /// Description of the enumerated root set, embedded in every verdict.
    pub fn bound(&self) -> &str {
        &self.bound
    }

    pub fn game(&self) -> Option<&GameDef> {
        self.game.as_ref()
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// Finds the node for `p`, applying the game's symmetry map first when the
    /// graph was enumerated canonically.
    pub fn lookup(&self, p: &Position) -> Option<NodeId> {
        if let Some(&id) = self.index.get(p) {
            return Some(id);
        }
        match (&self.game, self.canonical) {
            (Some(game), true) => self.index.get(&game.canonical(p)).copied(),
            _ => None,
        }
    }

    pub fn find(&self, p: &Position) -> Result<NodeId> {
        self.lookup(p)
            .ok_or_else(|| Error::UnknownPosition(p.clone()))
    }

    /// Maps a position to the form stored in this graph.
    pub fn normalize(&self, p: &Position) -> Position {
        match (&self.game, self.canonical) {
            (Some(game), true) => game.canonical(p),
            _ => p.clone(),
        }
    }

    /// Ids sorted by position, the row order used by table exports.
    pub fn sorted_ids(&self) -> Vec<NodeId> {
        let mut ids: Vec<NodeId> = (0..self.len()).collect();
        ids.sort_by(|&a, &b| self.nodes[a].cmp(&self.nodes[b]));
        ids
    }
}

/// Closure of `roots` under the option relation of `game`.
pub fn enumerate_subgame(
    game: &GameDef,
    roots: &[Position],
    opts: &EnumerateOptions,
) -> Result<ReachableGraph> {
    let canon = opts.canonicalize && game.has_symmetry();
    let normalize = |p: &Position| if canon { game.canonical(p) } else { p.clone() };

    let mut nodes: Vec<Position> = Vec::new();
    let mut index: HashMap<Position, NodeId> = HashMap::new();
    let mut succ: Vec<Vec<NodeId>> = Vec::new();
    let mut queue = VecDeque::new();
    let mut root_ids = Vec::new();

    for root in roots {
        game.validate(root)?;
        let p = normalize(root);
        let id = match index.get(&p) {
            Some(&id) => id,
            None => {
                let id = nodes.len();
                index.insert(p.clone(), id);
                nodes.push(p);
                succ.push(Vec::new());
                queue.push_back(id);
                id
            }
        };
        if !root_ids.contains(&id) {
            root_ids.push(id);
        }
    }
    if nodes.len() > opts.node_cap {
        return Err(Error::LimitExceeded { cap: opts.node_cap });
    }

    while let Some(x) = queue.pop_front() {
        let options = game.options(&nodes[x]);
        let mut out = Vec::with_capacity(options.len());
        for q in options {
            let q = normalize(&q);
            let id = match index.get(&q) {
                Some(&id) => id,
                None => {
                    let id = nodes.len();
                    if id >= opts.node_cap {
                        return Err(Error::LimitExceeded { cap: opts.node_cap });
                    }
                    index.insert(q.clone(), id);
                    nodes.push(q);
                    succ.push(Vec::new());
                    queue.push_back(id);
                    id
                }
            };
            out.push(id);
        }
        succ[x] = out;
    }

    let names = nodes.iter().map(|p| game.describe(p)).collect();
    let bound = format!(
        "{} from roots [{}]",
        game.name(),
        roots
            .iter()
            .map(|r| format!(
                "({})",
                r.coords()
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            ))
            .collect::<Vec<_>>()
            .join(", ")
    );
    ReachableGraph::assemble(
        nodes,
        names,
        succ,
        root_ids,
        bound,
        Some(game.clone()),
        canon,
    )
}

/// Longest move sequence from `x` to a terminal.
pub fn depth(graph: &ReachableGraph, x: &Position) -> Result<u32> {
    graph.find(x).map(|id| graph.depth(id))
}

/// Adds one new terminal `x_T` with an edge from every former terminal.
///
/// Normal play on the result equals misère play on the input for every
/// original node. The new node is the last id and has the empty position.
pub fn adjoin_misere_terminal(graph: &ReachableGraph) -> ReachableGraph {
    let sink = graph.len();
    let mut nodes = graph.nodes.clone();
    let mut names = graph.names.clone();
    let mut succ = graph.succ.clone();
    for s in succ.iter_mut() {
        if s.is_empty() {
            s.push(sink);
        }
    }
    nodes.push(Position::default());
    names.push("x_T".to_string());
    succ.push(Vec::new());
    ReachableGraph::assemble(
        nodes,
        names,
        succ,
        graph.roots.clone(),
        format!("{} with adjoined misère terminal", graph.bound),
        graph.game.clone(),
        graph.canonical,
    )
    .expect("adjoining a sink keeps the graph acyclic")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug)]
    struct Pile;

    impl Game for Pile {
        fn name(&self) -> String {
            "pile".into()
        }
        fn arity(&self) -> Option<usize> {
            Some(1)
        }
        fn options(&self, p: &Position) -> Vec<Position> {
            (0..p.coords()[0]).map(Position::single).collect()
        }
    }

    #[derive(Debug)]
    struct Loop;

    impl Game for Loop {
        fn name(&self) -> String {
            "loop".into()
        }
        fn arity(&self) -> Option<usize> {
            Some(1)
        }
        fn options(&self, p: &Position) -> Vec<Position> {
            vec![Position::single((p.coords()[0] + 1) % 3)]
        }
    }

    fn pile() -> GameDef {
        Arc::new(Pile)
    }

    #[test]
    fn one_pile_closure() {
        let g = enumerate_subgame(
            &pile(),
            &[Position::single(3)],
            &EnumerateOptions::default(),
        )
        .unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(depth(&g, &Position::single(3)).unwrap(), 3);
        assert_eq!(depth(&g, &Position::single(0)).unwrap(), 0);
    }

    #[test]
    fn terminal_roots_only() {
        let g = enumerate_subgame(
            &pile(),
            &[Position::single(0)],
            &EnumerateOptions::default(),
        )
        .unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.depth(0), 0);
    }

    #[test]
    fn unknown_position() {
        let g = enumerate_subgame(
            &pile(),
            &[Position::single(2)],
            &EnumerateOptions::default(),
        )
        .unwrap();
        assert_eq!(
            depth(&g, &Position::single(7)),
            Err(Error::UnknownPosition(Position::single(7)))
        );
    }

    #[test]
    fn cycle_is_reported() {
        let game: GameDef = Arc::new(Loop);
        let err = enumerate_subgame(&game, &[Position::single(0)], &EnumerateOptions::default())
            .unwrap_err();
        assert!(matches!(err, Error::CycleDetected(_)));
    }

    #[test]
    fn node_cap() {
        let opts = EnumerateOptions::default().with_cap(3);
        let err = enumerate_subgame(&pile(), &[Position::single(5)], &opts).unwrap_err();
        assert_eq!(err, Error::LimitExceeded { cap: 3 });
    }

    #[test]
    fn wrong_arity_root() {
        let err = enumerate_subgame(
            &pile(),
            &[Position::from([1, 2])],
            &EnumerateOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidPosition { .. }));
    }

    #[test]
    fn adjoin_single_terminal() {
        let g = enumerate_subgame(
            &pile(),
            &[Position::single(0)],
            &EnumerateOptions::default(),
        )
        .unwrap();
        let m = adjoin_misere_terminal(&g);
        assert_eq!(m.len(), 2);
        assert_eq!(m.edge_count(), 1);
        assert_eq!(m.depth(0), 1);
        assert!(m.is_terminal(1));
    }

    #[test]
    fn position_text_round_trip() {
        let p = Position::from([3, 0, 12]);
        assert_eq!(p.to_string(), "3-0-12");
        assert_eq!("3-0-12".parse::<Position>().unwrap(), p);
        assert_eq!("3,0,12".parse::<Position>().unwrap(), p);
        assert!("3-x".parse::<Position>().is_err());
    }
}
