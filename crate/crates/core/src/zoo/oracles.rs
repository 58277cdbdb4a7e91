//! Closed-form and recursive P-position and swap-set oracles.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{enumerate_subgame, EnumerateOptions, GameDef, Position};
use crate::grundy::{sg_labels, Convention, Label};
use crate::zoo::families::Subtraction;

/// Floor of the integer square root.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// ⌊φn⌋ in exact integer arithmetic.
pub fn floor_phi_times(n: u64) -> u64 {
    let n = n as u128;
    ((n + isqrt(5 * n * n)) / 2) as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BeattyPair {
    pub n: u64,
    pub x: u64,
    pub y: u64,
}

pub fn beatty_pair(n: u64) -> BeattyPair {
    let x = floor_phi_times(n);
    BeattyPair { n, x, y: x + n }
}

/// n-th Wythoff P-position with x ≤ y.
pub fn wythoff_p(n: u64, convention: Convention) -> (u64, u64) {
    match (convention, n) {
        (Convention::Misere, 0) => (0, 1),
        (Convention::Misere, 1) => (2, 2),
        _ => {
            let p = beatty_pair(n);
            (p.x, p.y)
        }
    }
}

/// Wythoff normal P-positions for n < len by the mex recursion
/// x_n = mex{x_i, y_i : i < n}, y_n = x_n + n.
pub fn wythoff_recursive(len: usize) -> Vec<(u64, u64)> {
    let mut used = vec![false; 3 * len + 3];
    let mut out = Vec::with_capacity(len);
    let mut next = 0usize;
    for n in 0..len {
        while used[next] {
            next += 1;
        }
        let (x, y) = (next, next + n);
        used[x] = true;
        used[y] = true;
        out.push((x as u64, y as u64));
    }
    out
}

/// The gap-based excludant: with s sorted and padded by s_0 = −b and
/// s_{m+1} = ∞, returns s_i + b for the first i with s_{i+1} − s_i > b.
pub fn mex_b(b: u64, s: &BTreeSet<u64>) -> u64 {
    let mut prev: i128 = -(b as i128);
    for &v in s {
        if v as i128 - prev > b as i128 {
            break;
        }
        prev = v as i128;
    }
    (prev + b as i128) as u64
}

type SeqKey = (u64, u64, Convention);
type SeqCache = RwLock<HashMap<SeqKey, Arc<Vec<(u64, u64)>>>>;

fn seq_cache() -> &'static SeqCache {
    static CACHE: OnceLock<SeqCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn compute_wyt_ab(a: u64, b: u64, convention: Convention, len: usize) -> Vec<(u64, u64)> {
    let mut used = BTreeSet::new();
    let mut out = Vec::with_capacity(len);
    let mut start = 0;
    if convention == Convention::Misere && a == 1 {
        out.push((b + 1, b + 1));
        used.insert(b + 1);
        start = 1;
    }
    for n in start..len as u64 {
        let x = mex_b(b, &used);
        let y = match convention {
            Convention::Normal => x + a * n,
            Convention::Misere if a == 1 => x + n,
            Convention::Misere => x + a * n + 1,
        };
        used.insert(x);
        used.insert(y);
        out.push((x, y));
    }
    out
}

/// First `len` P-positions of Wyt(a,b), memoized per (a, b, convention).
pub fn wyt_ab_sequence(
    a: u64,
    b: u64,
    convention: Convention,
    len: usize,
) -> Result<Arc<Vec<(u64, u64)>>> {
    if b == 0 {
        return Err(Error::InvalidParams("wyt_ab needs b >= 1".into()));
    }
    if convention == Convention::Misere && a == 0 {
        return Err(Error::UnsupportedParams(
            "no misère P-position recursion for a = 0".into(),
        ));
    }
    let key = (a, b, convention);
    if let Some(seq) = seq_cache().read().unwrap().get(&key) {
        if seq.len() >= len {
            return Ok(seq.clone());
        }
    }
    let seq = Arc::new(compute_wyt_ab(a, b, convention, len.max(16)));
    let mut cache = seq_cache().write().unwrap();
    let entry = cache.entry(key).or_insert_with(|| seq.clone());
    if entry.len() < seq.len() {
        *entry = seq.clone();
    }
    Ok(entry.clone())
}

/// n-th P-position of Wyt(a,b) in generation order.
pub fn wyt_ab_p(a: u64, b: u64, n: usize, convention: Convention) -> Result<(u64, u64)> {
    Ok(wyt_ab_sequence(a, b, convention, n + 1)?[n])
}

/// n-th P-position of Wyt(a), a ≥ 2.
pub fn wyt_a_p(a: u64, n: usize, convention: Convention) -> Result<(u64, u64)> {
    if a < 2 {
        return Err(Error::InvalidParams("wyt_a needs a >= 2".into()));
    }
    wyt_ab_p(a, 1, n, convention)
}

/// Both orientations of every sequence pair with coordinates ≤ bound.
pub fn wyt_ab_p_set(
    a: u64,
    b: u64,
    convention: Convention,
    bound: u64,
) -> Result<BTreeSet<(u64, u64)>> {
    // x_n ≥ n/2 for every sequence here, so 2·bound + 4 terms reach past it.
    let seq = wyt_ab_sequence(a, b, convention, 2 * bound as usize + 4)?;
    let mut set = BTreeSet::new();
    for &(x, y) in seq.iter() {
        if x <= bound && y <= bound {
            set.insert((x, y));
            set.insert((y, x));
        }
    }
    Ok(set)
}

fn swap_for(condition01: bool, condition10: bool) -> Option<Label> {
    if condition01 {
        Some(Label::P01)
    } else if condition10 {
        Some(Label::P10)
    } else {
        None
    }
}

/// Swap label of a Moore Nim position: all piles ≤ 1 with the count of ones
/// ≡ 0 (resp. 1) mod k+1.
pub fn moore_swap_oracle(n: usize, k: usize, x: &Position) -> Result<Option<Label>> {
    if !(2 <= k && k < n) {
        return Err(Error::InvalidParams(format!(
            "moore oracle needs 2 <= k < n, got n={n}, k={k}"
        )));
    }
    Ok(small_piles_swap(k, x.coords()))
}

fn small_piles_swap(k: usize, piles: &[u32]) -> Option<Label> {
    if piles.iter().any(|&c| c > 1) {
        return None;
    }
    let ones = piles.iter().filter(|&&c| c == 1).count() % (k + 1);
    swap_for(ones == 0, ones == 1)
}

/// Swap label of an Extended Nim position: x_0 = 0 and the other piles form
/// the corresponding swap position of Moore's Nim.
pub fn extended_swap_oracle(n: usize, k: usize, x: &Position) -> Result<Option<Label>> {
    if !(n >= 3 && 1 <= k && k < n) {
        return Err(Error::InvalidParams(format!(
            "extended oracle needs n >= 3 and 1 <= k < n, got n={n}, k={k}"
        )));
    }
    let (x0, rest) = x
        .coords()
        .split_first()
        .ok_or_else(|| Error::InvalidParams("empty position".into()))?;
    Ok(if *x0 == 0 {
        small_piles_swap(k, rest)
    } else {
        None
    })
}

/// Swap label of an Exact Nim position with n = 2k: (0,1) when the k+1
/// smallest piles are equal and at most 1, (1,0) when every move ends the
/// game.
pub fn exact_swap_oracle(n: usize, k: usize, x: &Position) -> Result<Option<Label>> {
    if n != 2 * k {
        return Err(Error::UnsupportedParams(format!(
            "no exact nim swap formula for n={n}, k={k}"
        )));
    }
    let mut c = x.coords().to_vec();
    c.sort_unstable();
    let low = &c[..=k];
    let p01 = low[0] <= 1 && low.iter().all(|&v| v == low[0]);
    let nonempty = c.iter().filter(|&&v| v > 0).count();
    let big = c.iter().filter(|&&v| v >= 2).count();
    let best_after = nonempty - k.saturating_sub(big).min(nonempty);
    let depth_one = nonempty >= k && best_after < k;
    Ok(swap_for(p01, depth_one))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EuclidVariant {
    ColeDavie,
    Grossman,
}

pub fn euclid_swap_oracle(variant: EuclidVariant, x: &Position) -> Option<Label> {
    let (a, b) = (x.coords()[0], x.coords()[1]);
    match variant {
        EuclidVariant::ColeDavie => swap_for(a == 0 || b == 0, a == b),
        EuclidVariant::Grossman => swap_for(a == b, a == 2 * b || b == 2 * a),
    }
}

/// Swap label of a Grossman Euclid position by walking the forced chain:
/// after dividing out the gcd, (F_m, F_{m+1}) with consecutive Fibonacci
/// numbers is (0,1) for odd m and (1,0) for even m.
pub fn grossman_chain_oracle(x: &Position) -> Option<Label> {
    let (a, b) = (x.coords()[0], x.coords()[1]);
    if a == 0 || b == 0 {
        return None;
    }
    let g = gcd(a, b);
    let (lo, hi) = (a.min(b) / g, a.max(b) / g);
    let (mut f, mut f1, mut m) = (1u32, 1u32, 1u32);
    while f < lo || (f == lo && f1 < hi) {
        (f, f1) = (f1, f + f1);
        m += 1;
    }
    (f == lo && f1 == hi).then_some(if m % 2 == 1 { Label::P01 } else { Label::P10 })
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Swap label of a Slow Nim position for k = n (sorted (0,…,0,m)) and
/// k = n−1 (sorted (i,…,i,i+m)); m even gives (0,1), odd (1,0).
pub fn slow_swap_oracle(n: usize, k: usize, x: &Position) -> Result<Option<Label>> {
    if k + 1 < n {
        return Err(Error::UnsupportedParams(format!(
            "no slow nim swap formula for n={n}, k={k}"
        )));
    }
    let mut c = x.coords().to_vec();
    c.sort_unstable();
    let (last, rest) = c
        .split_last()
        .ok_or_else(|| Error::InvalidParams("empty position".into()))?;
    let base = if k >= n {
        0
    } else {
        rest.first().copied().unwrap_or(0)
    };
    if rest.iter().any(|&v| v != base) {
        return Ok(None);
    }
    let m = last - base;
    Ok(swap_for(m % 2 == 0, m % 2 == 1))
}

#[derive(Clone, Debug, Serialize)]
pub struct FergusonReport {
    pub set: Vec<u32>,
    pub bound: u32,
    /// Piles x where 𝒢(x) = 0 and 𝒢(x + min X) = 1 disagree.
    pub pairing_failures: Vec<u32>,
    /// Non-terminal 0-positions without a move to a 1-position.
    pub missing_one_option: Vec<u32>,
}

impl FergusonReport {
    pub fn passed(&self) -> bool {
        self.pairing_failures.is_empty() && self.missing_one_option.is_empty()
    }
}

/// Checks on piles 0..=bound of S(X) that 𝒢(x) = 0 exactly when
/// 𝒢(x + min X) = 1, and that every non-terminal 0-position moves to a
/// 1-position.
pub fn ferguson_check(set: &[u32], bound: u32) -> Result<FergusonReport> {
    let max = *set
        .iter()
        .max()
        .ok_or_else(|| Error::InvalidParams("empty subtraction set".into()))?;
    if set.contains(&0) {
        return Err(Error::InvalidParams(
            "subtraction set must be positive".into(),
        ));
    }
    if bound < max {
        return Err(Error::InvalidParams(format!(
            "bound {bound} is below max X = {max}"
        )));
    }
    let k = *set.iter().min().unwrap();
    let game: GameDef = Arc::new(Subtraction { set: set.to_vec() });
    let roots: Vec<Position> = (0..=bound).map(Position::single).collect();
    let lg = sg_labels(&enumerate_subgame(
        &game,
        &roots,
        &EnumerateOptions::exact(),
    )?);
    let g = |x: u32| lg.label_of(&Position::single(x)).map(|l| l.g);

    let mut pairing_failures = Vec::new();
    let mut missing_one_option = Vec::new();
    for x in 0..=bound {
        if x + k <= bound && (g(x)? == 0) != (g(x + k)? == 1) {
            pairing_failures.push(x);
        }
        let options: Vec<u32> = set.iter().filter(|&&s| s <= x).map(|&s| x - s).collect();
        if g(x)? == 0 && !options.is_empty() && !options.iter().any(|&y| g(y).ok() == Some(1)) {
            missing_one_option.push(x);
        }
    }
    Ok(FergusonReport {
        set: set.to_vec(),
        bound,
        pairing_failures,
        missing_one_option,
    })
}

/// (0,0)-positions of HO-Nim on C4: (a,b,a,b) with a+b ≥ 2.
pub fn c4_is_p00(x: &Position) -> bool {
    let c = x.coords();
    c.len() == 4 && c[0] == c[2] && c[1] == c[3] && c[0] + c[1] >= 2
}

/// The three rotation orbits listed for the (0,0)-positions of HO-Nim on C5,
/// restricted to coordinates ≤ bound.
pub fn c5_p00_formula(bound: u32) -> BTreeSet<Position> {
    (0..3).flat_map(|shape| c5_orbit(shape, bound)).collect()
}

/// Rotations of one of the three C5 shapes
/// [a, c+a, b+a, a, c+b+a], [a, c+a, a, b+a, c+b+a], [a, a, c+a, b+a, c+b+a]
/// with every entry at most `bound`.
pub fn c5_orbit(shape: usize, bound: u32) -> BTreeSet<Position> {
    let mut out = BTreeSet::new();
    for a in 0..=bound {
        for b in 0..=bound {
            for c in 0..=bound {
                let s = match shape {
                    0 => [a, c + a, b + a, a, c + b + a],
                    1 => [a, c + a, a, b + a, c + b + a],
                    _ => [a, a, c + a, b + a, c + b + a],
                };
                if s.iter().all(|&v| v <= bound) {
                    for r in 0..5 {
                        out.insert(Position::new(
                            (0..5).map(|i| s[(i + r) % 5]).collect::<Vec<_>>(),
                        ));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_floor_small() {
        let expect = [0, 1, 3, 4, 6, 8, 9, 11, 12, 14, 16];
        for (n, &x) in expect.iter().enumerate() {
            assert_eq!(floor_phi_times(n as u64), x);
        }
    }

    #[test]
    fn beatty_y_is_x_plus_n() {
        for n in [0, 1, 7, 1000, 99_999] {
            let p = beatty_pair(n);
            assert_eq!(p.y, p.x + n);
        }
    }

    #[test]
    fn wythoff_examples() {
        assert_eq!(wythoff_p(0, Convention::Normal), (0, 0));
        assert_eq!(wythoff_p(2, Convention::Normal), (3, 5));
        assert_eq!(wythoff_p(0, Convention::Misere), (0, 1));
        assert_eq!(wythoff_p(1, Convention::Misere), (2, 2));
    }

    #[test]
    fn mex_b_examples() {
        assert_eq!(mex_b(3, &BTreeSet::new()), 0);
        assert_eq!(mex_b(2, &[0, 1, 4].into()), 3);
        assert_eq!(mex_b(1, &[0, 1, 3].into()), 2);
        assert_eq!(mex_b(1, &[1, 2].into()), 0);
    }

    #[test]
    fn wyt_sequences() {
        assert_eq!(wyt_a_p(2, 0, Convention::Normal).unwrap(), (0, 0));
        assert_eq!(wyt_a_p(2, 1, Convention::Normal).unwrap(), (1, 3));
        assert_eq!(wyt_a_p(2, 0, Convention::Misere).unwrap(), (0, 1));
        assert_eq!(wyt_ab_p(1, 2, 0, Convention::Misere).unwrap(), (3, 3));
        assert!(matches!(
            wyt_ab_p(0, 1, 0, Convention::Misere),
            Err(Error::UnsupportedParams(_))
        ));
        for n in 0..=50 {
            assert_eq!(
                wyt_ab_p(1, 1, n, Convention::Normal).unwrap(),
                wythoff_p(n as u64, Convention::Normal)
            );
            assert_eq!(
                wyt_ab_p(0, 1, n, Convention::Normal).unwrap(),
                (n as u64, n as u64)
            );
        }
    }

    #[test]
    fn moore_oracle_examples() {
        let o = |c: [u32; 4]| moore_swap_oracle(4, 2, &Position::new(c)).unwrap();
        assert_eq!(o([1, 1, 1, 0]), Some(Label::P01));
        assert_eq!(o([1, 0, 0, 0]), Some(Label::P10));
        assert_eq!(o([2, 0, 0, 0]), None);
        assert!(moore_swap_oracle(3, 3, &Position::new([0, 0, 0])).is_err());
    }

    #[test]
    fn exact_and_extended_oracles() {
        let o = |c: [u32; 4]| exact_swap_oracle(4, 2, &Position::new(c)).unwrap();
        assert_eq!(o([1, 1, 1, 1]), Some(Label::P01));
        assert_eq!(o([0, 0, 0, 7]), Some(Label::P01));
        assert_eq!(o([0, 0, 1, 1]), Some(Label::P10));
        assert_eq!(o([0, 1, 1, 1]), Some(Label::P10));
        assert_eq!(o([0, 0, 2, 1]), Some(Label::P10));
        assert_eq!(o([0, 1, 2, 2]), None);
        assert!(exact_swap_oracle(5, 2, &Position::new([0; 5])).is_err());
        let e = |c: [u32; 4]| extended_swap_oracle(3, 2, &Position::new(c)).unwrap();
        assert_eq!(e([0, 1, 1, 1]), Some(Label::P01));
        assert_eq!(e([1, 1, 1, 1]), None);
    }

    #[test]
    fn euclid_oracle_examples() {
        assert_eq!(
            euclid_swap_oracle(EuclidVariant::ColeDavie, &Position::new([5, 5])),
            Some(Label::P10)
        );
        assert_eq!(
            euclid_swap_oracle(EuclidVariant::Grossman, &Position::new([3, 6])),
            Some(Label::P10)
        );
        assert_eq!(
            euclid_swap_oracle(EuclidVariant::Grossman, &Position::new([2, 3])),
            None
        );
    }

    #[test]
    fn slow_oracle_examples() {
        assert_eq!(
            slow_swap_oracle(3, 3, &Position::new([0, 0, 4])).unwrap(),
            Some(Label::P01)
        );
        assert_eq!(
            slow_swap_oracle(3, 2, &Position::new([2, 2, 5])).unwrap(),
            Some(Label::P10)
        );
        assert!(matches!(
            slow_swap_oracle(4, 2, &Position::new([1, 1, 2, 3])),
            Err(Error::UnsupportedParams(_))
        ));
    }

    #[test]
    fn ferguson_examples() {
        assert!(ferguson_check(&[1], 20).unwrap().passed());
        assert!(ferguson_check(&[2, 3], 50).unwrap().passed());
        assert!(ferguson_check(&[1, 4, 7], 100).unwrap().passed());
        assert!(ferguson_check(&[5], 3).is_err());
    }

    #[test]
    fn c4_formula() {
        assert!(c4_is_p00(&Position::new([2, 0, 2, 0])));
        assert!(c4_is_p00(&Position::new([1, 1, 1, 1])));
        assert!(!c4_is_p00(&Position::new([0, 1, 0, 1])));
    }
}
