//! Move rules of the built-in families.

use crate::error::{Error, Result};
use crate::game::{Game, Position};

fn invalid(p: &Position, reason: impl Into<String>) -> Error {
    Error::InvalidPosition {
        position: p.clone(),
        reason: reason.into(),
    }
}

fn check_arity(name: &str, n: usize, p: &Position) -> Result<()> {
    if p.len() == n {
        Ok(())
    } else {
        Err(invalid(p, format!("{name} expects {n} coordinates")))
    }
}

fn sorted(p: &Position) -> Position {
    let mut c = p.coords().to_vec();
    c.sort_unstable();
    Position::new(c)
}

/// All vectors obtained from `x` by strictly lowering between `min` and `max`
/// of the coordinates in `free`, every other coordinate unchanged.
fn lower_coords(x: &[u32], free: &[usize], min: usize, max: usize, out: &mut Vec<Position>) {
    fn go(
        x: &mut Vec<u32>,
        free: &[usize],
        i: usize,
        changed: usize,
        min: usize,
        max: usize,
        out: &mut Vec<Position>,
    ) {
        if i == free.len() {
            if changed >= min {
                out.push(Position::new(x.clone()));
            }
            return;
        }
        let remaining = free.len() - i;
        if changed + remaining > min || changed >= min {
            go(x, free, i + 1, changed, min, max, out);
        }
        let c = free[i];
        let orig = x[c];
        if changed < max {
            for v in 0..orig {
                x[c] = v;
                go(x, free, i + 1, changed + 1, min, max, out);
            }
            x[c] = orig;
        }
    }
    let mut x = x.to_vec();
    go(&mut x, free, 0, 0, min, max, out);
}

/// Classic Nim on `n` piles.
#[derive(Debug, Clone)]
pub struct Nim {
    pub n: usize,
}

impl Game for Nim {
    fn name(&self) -> String {
        format!("nim(n={})", self.n)
    }

    fn arity(&self) -> Option<usize> {
        Some(self.n)
    }

    fn options(&self, p: &Position) -> Vec<Position> {
        let mut out = Vec::new();
        let all: Vec<usize> = (0..p.len()).collect();
        lower_coords(p.coords(), &all, 1, 1, &mut out);
        out
    }

    fn canonical(&self, p: &Position) -> Position {
        sorted(p)
    }

    fn has_symmetry(&self) -> bool {
        self.n > 1
    }
}

/// Moore's Nim: strictly reduce between 1 and k piles.
#[derive(Debug, Clone)]
pub struct MooreNim {
    pub n: usize,
    pub k: usize,
}

impl Game for MooreNim {
    fn name(&self) -> String {
        format!("moore_nim(n={},k={})", self.n, self.k)
    }

    fn arity(&self) -> Option<usize> {
        Some(self.n)
    }

    fn options(&self, p: &Position) -> Vec<Position> {
        let mut out = Vec::new();
        let all: Vec<usize> = (0..p.len()).collect();
        lower_coords(p.coords(), &all, 1, self.k, &mut out);
        out
    }

    fn canonical(&self, p: &Position) -> Position {
        sorted(p)
    }

    fn has_symmetry(&self) -> bool {
        true
    }
}

/// Extended Nim: pile x_0 plus n piles; a move lowers x_0 (possibly not at
/// all) together with at most k of the other piles, changing something.
#[derive(Debug, Clone)]
pub struct ExtendedNim {
    pub n: usize,
    pub k: usize,
}

impl Game for ExtendedNim {
    fn name(&self) -> String {
        format!("extended_nim(n={},k={})", self.n, self.k)
    }

    fn arity(&self) -> Option<usize> {
        Some(self.n + 1)
    }

    fn options(&self, p: &Position) -> Vec<Position> {
        let x = p.coords();
        let others: Vec<usize> = (1..x.len()).collect();
        let mut out = Vec::new();
        for x0 in 0..=x[0] {
            let mut base = x.to_vec();
            base[0] = x0;
            let min = usize::from(x0 == x[0]);
            lower_coords(&base, &others, min, self.k, &mut out);
        }
        out
    }

    fn canonical(&self, p: &Position) -> Position {
        let mut c = p.coords().to_vec();
        c[1..].sort_unstable();
        Position::new(c)
    }

    fn has_symmetry(&self) -> bool {
        true
    }
}

/// Exact k-Nim: strictly reduce exactly k piles.
#[derive(Debug, Clone)]
pub struct ExactNim {
    pub n: usize,
    pub k: usize,
}

impl Game for ExactNim {
    fn name(&self) -> String {
        format!("exact_nim(n={},k={})", self.n, self.k)
    }

    fn arity(&self) -> Option<usize> {
        Some(self.n)
    }

    fn options(&self, p: &Position) -> Vec<Position> {
        let nonempty: Vec<usize> = (0..p.len()).filter(|&i| p.coords()[i] > 0).collect();
        let mut out = Vec::new();
        if nonempty.len() >= self.k {
            lower_coords(p.coords(), &nonempty, self.k, self.k, &mut out);
        }
        out
    }

    fn canonical(&self, p: &Position) -> Position {
        sorted(p)
    }

    fn has_symmetry(&self) -> bool {
        true
    }
}

/// Slow k-Nim: take exactly one token from each of between 1 and k piles.
#[derive(Debug, Clone)]
pub struct SlowNim {
    pub n: usize,
    pub k: usize,
}

impl Game for SlowNim {
    fn name(&self) -> String {
        format!("slow_nim(n={},k={})", self.n, self.k)
    }

    fn arity(&self) -> Option<usize> {
        Some(self.n)
    }

    fn options(&self, p: &Position) -> Vec<Position> {
        let nonempty: Vec<usize> = (0..p.len()).filter(|&i| p.coords()[i] > 0).collect();
        let mut out = Vec::new();
        for mask in 1u64..(1u64 << nonempty.len()) {
            if mask.count_ones() as usize > self.k {
                continue;
            }
            let mut c = p.coords().to_vec();
            for (bit, &i) in nonempty.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    c[i] -= 1;
                }
            }
            out.push(Position::new(c));
        }
        out
    }

    fn canonical(&self, p: &Position) -> Position {
        sorted(p)
    }

    fn has_symmetry(&self) -> bool {
        true
    }
}

/// One-pile subtraction game S(X).
#[derive(Debug, Clone)]
pub struct Subtraction {
    pub set: Vec<u32>,
}

impl Game for Subtraction {
    fn name(&self) -> String {
        let set: Vec<String> = self.set.iter().map(u32::to_string).collect();
        format!("subtraction({{{}}})", set.join(","))
    }

    fn arity(&self) -> Option<usize> {
        Some(1)
    }

    fn options(&self, p: &Position) -> Vec<Position> {
        let x = p.coords()[0];
        self.set
            .iter()
            .filter(|&&s| s <= x)
            .map(|&s| Position::single(x - s))
            .collect()
    }
}

/// Euclid after Cole and Davie: subtract a positive multiple of the smaller
/// pile from the larger; a zero pile ends the game.
#[derive(Debug, Clone)]
pub struct EuclidCd;

impl Game for EuclidCd {
    fn name(&self) -> String {
        "euclid_cd".into()
    }

    fn arity(&self) -> Option<usize> {
        Some(2)
    }

    fn options(&self, p: &Position) -> Vec<Position> {
        let (a, b) = (p.coords()[0], p.coords()[1]);
        let mut out = Vec::new();
        if a == 0 || b == 0 {
            return out;
        }
        if a >= b {
            out.extend((1..=a / b).map(|m| Position::new([a - m * b, b])));
        }
        if b >= a {
            out.extend((1..=b / a).map(|m| Position::new([a, b - m * a])));
        }
        out
    }

    fn canonical(&self, p: &Position) -> Position {
        sorted(p)
    }

    fn has_symmetry(&self) -> bool {
        true
    }
}

/// Euclid after Grossman: as Cole and Davie, but entries stay positive, so
/// (x,x) is terminal.
#[derive(Debug, Clone)]
pub struct EuclidGrossman;

impl Game for EuclidGrossman {
    fn name(&self) -> String {
        "euclid_grossman".into()
    }

    fn arity(&self) -> Option<usize> {
        Some(2)
    }

    fn options(&self, p: &Position) -> Vec<Position> {
        let (a, b) = (p.coords()[0], p.coords()[1]);
        if a > b {
            (1..=(a - 1) / b)
                .map(|m| Position::new([a - m * b, b]))
                .collect()
        } else if b > a {
            (1..=(b - 1) / a)
                .map(|m| Position::new([a, b - m * a]))
                .collect()
        } else {
            Vec::new()
        }
    }

    fn canonical(&self, p: &Position) -> Position {
        sorted(p)
    }

    fn has_symmetry(&self) -> bool {
        true
    }

    fn validate(&self, p: &Position) -> Result<()> {
        check_arity("euclid_grossman", 2, p)?;
        if p.coords().contains(&0) {
            return Err(invalid(p, "euclid_grossman entries must be positive"));
        }
        Ok(())
    }
}

/// Two-pile game removing (k,l) from the piles whenever `allowed(k,l)`.
/// Wythoff is Wyt(1,1), Wyt(a) is Wyt(a,1).
#[derive(Debug, Clone)]
pub struct WytAb {
    pub a: u32,
    pub b: u32,
    pub label: String,
}

impl WytAb {
    pub fn allowed(&self, k: u32, l: u32) -> bool {
        k + l > 0 && (k.min(l) < self.b || k.abs_diff(l) < self.a)
    }
}

impl Game for WytAb {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn arity(&self) -> Option<usize> {
        Some(2)
    }

    fn options(&self, p: &Position) -> Vec<Position> {
        let (x, y) = (p.coords()[0], p.coords()[1]);
        let mut out = Vec::new();
        for k in 0..=x {
            for l in 0..=y {
                if self.allowed(k, l) {
                    out.push(Position::new([x - k, y - l]));
                }
            }
        }
        out
    }

    fn canonical(&self, p: &Position) -> Position {
        sorted(p)
    }

    fn has_symmetry(&self) -> bool {
        true
    }
}

/// Mark: n goes to n−1 or ⌊n/2⌋.
#[derive(Debug, Clone)]
pub struct Mark;

impl Game for Mark {
    fn name(&self) -> String {
        "mark".into()
    }

    fn arity(&self) -> Option<usize> {
        Some(1)
    }

    fn options(&self, p: &Position) -> Vec<Position> {
        let n = p.coords()[0];
        match n {
            0 => Vec::new(),
            1 => vec![Position::single(0)],
            _ => vec![Position::single(n - 1), Position::single(n / 2)],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HoShape {
    Cycle,
    Path,
    Conj1,
    Conj2,
}

impl HoShape {
    pub fn as_str(self) -> &'static str {
        match self {
            HoShape::Cycle => "cycle",
            HoShape::Path => "path",
            HoShape::Conj1 => "conj1",
            HoShape::Conj2 => "conj2",
        }
    }
}

impl std::str::FromStr for HoShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cycle" => Ok(HoShape::Cycle),
            "path" => Ok(HoShape::Path),
            "conj1" => Ok(HoShape::Conj1),
            "conj2" => Ok(HoShape::Conj2),
            other => Err(Error::InvalidParams(format!(
                "unknown ho_nim shape `{other}`"
            ))),
        }
    }
}

/// HO-Nim on a partitioned ground set. A position counts the elements left
/// in each block; a move picks a hyperedge and removes a nonempty set of
/// elements from its blocks.
#[derive(Debug, Clone)]
pub struct HoNim {
    pub shape: HoShape,
    pub blocks: usize,
    pub edges: Vec<Vec<usize>>,
}

impl HoNim {
    pub fn new(shape: HoShape, n: usize) -> Self {
        let (blocks, edges) = match shape {
            HoShape::Cycle => (n, (0..n).map(|i| vec![i, (i + 1) % n]).collect()),
            HoShape::Path => (n, (0..n - 1).map(|i| vec![i, i + 1]).collect()),
            HoShape::Conj2 => (4, vec![vec![0, 3], vec![1, 3], vec![2, 3], vec![0, 1, 2]]),
            HoShape::Conj1 => (
                5,
                vec![vec![0, 1, 4], vec![2, 3, 4], vec![0, 2, 4], vec![1, 3]],
            ),
        };
        HoNim {
            shape,
            blocks,
            edges,
        }
    }
}

impl Game for HoNim {
    fn name(&self) -> String {
        match self.shape {
            HoShape::Cycle => format!("ho_nim(C{})", self.blocks),
            HoShape::Path => format!("ho_nim(P{})", self.blocks),
            HoShape::Conj1 => "ho_nim(conj1)".into(),
            HoShape::Conj2 => "ho_nim(conj2)".into(),
        }
    }

    fn arity(&self) -> Option<usize> {
        Some(self.blocks)
    }

    fn options(&self, p: &Position) -> Vec<Position> {
        let mut out = Vec::new();
        for edge in &self.edges {
            let free: Vec<usize> = edge
                .iter()
                .copied()
                .filter(|&i| p.coords()[i] > 0)
                .collect();
            lower_coords(p.coords(), &free, 1, free.len(), &mut out);
        }
        out.sort();
        out.dedup();
        out
    }

    fn canonical(&self, p: &Position) -> Position {
        let c = p.coords();
        let n = c.len();
        let candidates: Vec<Vec<u32>> = match self.shape {
            HoShape::Cycle => (0..n)
                .flat_map(|r| {
                    let fwd: Vec<u32> = (0..n).map(|i| c[(i + r) % n]).collect();
                    let rev: Vec<u32> = (0..n).map(|i| c[(r + n - i) % n]).collect();
                    [fwd, rev]
                })
                .collect(),
            HoShape::Path => vec![c.to_vec(), c.iter().rev().copied().collect()],
            HoShape::Conj1 | HoShape::Conj2 => vec![c.to_vec()],
        };
        Position::new(candidates.into_iter().min().unwrap())
    }

    fn has_symmetry(&self) -> bool {
        matches!(self.shape, HoShape::Cycle | HoShape::Path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(g: &dyn Game, p: &[u32]) -> Vec<Position> {
        let mut o = g.options(&Position::new(p.to_vec()));
        o.sort();
        o.dedup();
        o
    }

    fn ps(list: &[&[u32]]) -> Vec<Position> {
        let mut v: Vec<Position> = list.iter().map(|c| Position::new(c.to_vec())).collect();
        v.sort();
        v
    }

    #[test]
    fn grossman_entries_stay_positive() {
        assert_eq!(opts(&EuclidGrossman, &[2, 6]), ps(&[&[2, 4], &[2, 2]]));
        assert!(opts(&EuclidGrossman, &[3, 3]).is_empty());
        assert!(EuclidGrossman.validate(&Position::new([0, 3])).is_err());
    }

    #[test]
    fn cole_davie_equal_piles() {
        assert_eq!(opts(&EuclidCd, &[4, 4]), ps(&[&[0, 4], &[4, 0]]));
        assert_eq!(opts(&EuclidCd, &[7, 3]), ps(&[&[4, 3], &[1, 3]]));
        assert!(opts(&EuclidCd, &[0, 5]).is_empty());
    }

    #[test]
    fn mark_moves() {
        assert_eq!(opts(&Mark, &[8]), ps(&[&[7], &[4]]));
        assert_eq!(opts(&Mark, &[1]), ps(&[&[0]]));
    }

    #[test]
    fn moore_reduces_up_to_k() {
        let g = MooreNim { n: 3, k: 2 };
        let o = opts(&g, &[1, 1, 1]);
        assert_eq!(o.len(), 6);
        assert!(!o.contains(&Position::new([0, 0, 0])));
    }

    #[test]
    fn exact_nim_needs_k_nonempty_piles() {
        let g = ExactNim { n: 3, k: 2 };
        assert!(opts(&g, &[0, 0, 5]).is_empty());
        assert_eq!(opts(&g, &[1, 1, 0]), ps(&[&[0, 0, 0]]));
        assert_eq!(opts(&g, &[2, 1, 0]).len(), 2);
    }

    #[test]
    fn extended_nim_x0_alone_is_legal() {
        let g = ExtendedNim { n: 2, k: 1 };
        let o = opts(&g, &[1, 1, 1]);
        assert!(o.contains(&Position::new([0, 1, 1])));
        assert!(o.contains(&Position::new([0, 0, 1])));
        assert!(o.contains(&Position::new([1, 1, 0])));
        assert!(!o.contains(&Position::new([1, 0, 0])));
        assert_eq!(o.len(), 5);
    }

    #[test]
    fn slow_nim_takes_single_tokens() {
        let g = SlowNim { n: 3, k: 2 };
        assert_eq!(
            opts(&g, &[2, 1, 0]),
            ps(&[&[1, 1, 0], &[2, 0, 0], &[1, 0, 0]])
        );
    }

    #[test]
    fn wythoff_rule() {
        let w = WytAb {
            a: 1,
            b: 1,
            label: "wythoff".into(),
        };
        assert_eq!(opts(&w, &[1, 1]), ps(&[&[0, 1], &[1, 0], &[0, 0]]));
        let w2 = WytAb {
            a: 2,
            b: 1,
            label: "wyt_a".into(),
        };
        assert!(w2.allowed(2, 1));
        assert!(!w2.allowed(3, 1));
        assert!(w2.allowed(3, 0));
    }

    #[test]
    fn ho_cycle_hyperedge_wraps() {
        let g = HoNim::new(HoShape::Cycle, 4);
        let o = opts(&g, &[1, 0, 0, 1]);
        for p in [[0, 0, 0, 0], [0, 0, 0, 1], [1, 0, 0, 0]] {
            assert!(o.contains(&Position::new(p)));
        }
        assert_eq!(o.len(), 3);
    }

    #[test]
    fn ho_cycle_canonical_is_dihedral_minimum() {
        let g = HoNim::new(HoShape::Cycle, 5);
        assert_eq!(
            g.canonical(&Position::new([2, 0, 1, 1, 1])),
            Position::new([0, 1, 1, 1, 2])
        );
        assert_eq!(
            g.canonical(&Position::new([1, 2, 0, 1, 1])),
            Position::new([0, 1, 1, 1, 2])
        );
    }
}
