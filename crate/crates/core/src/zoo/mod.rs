//! Game families with their parameters, JSON game specs, and oracles.

pub mod families;
pub mod oracles;

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fixtures::load_fixture;
use crate::game::{GameDef, Position};

pub use families::HoShape;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Nim { n: usize },
    MooreNim { n: usize, k: usize },
    ExtendedNim { n: usize, k: usize },
    ExactNim { n: usize, k: usize },
    SlowNim { n: usize, k: usize },
    Subtraction { set: Vec<u32> },
    EuclidCd,
    EuclidGrossman,
    Wythoff,
    WytA { a: u32 },
    WytAb { a: u32, b: u32 },
    Mark,
    HoNim { shape: HoShape, n: usize },
}

pub const FAMILY_NAMES: [&str; 13] = [
    "nim",
    "moore_nim",
    "extended_nim",
    "exact_nim",
    "slow_nim",
    "subtraction",
    "euclid_cd",
    "euclid_grossman",
    "wythoff",
    "wyt_a",
    "wyt_ab",
    "mark",
    "ho_nim",
];

fn param_u64(params: &Value, key: &str) -> Result<Option<u64>> {
    match params.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v
            .as_u64()
            .map(Some)
            .ok_or_else(|| Error::InvalidParams(format!("`{key}` must be a non-negative integer"))),
    }
}

fn required(params: &Value, key: &str, family: &str) -> Result<u64> {
    param_u64(params, key)?.ok_or_else(|| Error::InvalidParams(format!("{family} needs `{key}`")))
}

impl FamilySpec {
    pub fn family(&self) -> &'static str {
        match self {
            FamilySpec::Nim { .. } => "nim",
            FamilySpec::MooreNim { .. } => "moore_nim",
            FamilySpec::ExtendedNim { .. } => "extended_nim",
            FamilySpec::ExactNim { .. } => "exact_nim",
            FamilySpec::SlowNim { .. } => "slow_nim",
            FamilySpec::Subtraction { .. } => "subtraction",
            FamilySpec::EuclidCd => "euclid_cd",
            FamilySpec::EuclidGrossman => "euclid_grossman",
            FamilySpec::Wythoff => "wythoff",
            FamilySpec::WytA { .. } => "wyt_a",
            FamilySpec::WytAb { .. } => "wyt_ab",
            FamilySpec::Mark => "mark",
            FamilySpec::HoNim { .. } => "ho_nim",
        }
    }

    /// Parses a family name and its parameter object.
    pub fn from_json(family: &str, params: &Value) -> Result<Self> {
        let n = || required(params, "n", family).map(|v| v as usize);
        let k = || required(params, "k", family).map(|v| v as usize);
        let spec = match family {
            "nim" => FamilySpec::Nim { n: n()? },
            "moore_nim" => FamilySpec::MooreNim { n: n()?, k: k()? },
            "extended_nim" => FamilySpec::ExtendedNim { n: n()?, k: k()? },
            "exact_nim" => FamilySpec::ExactNim { n: n()?, k: k()? },
            "slow_nim" => FamilySpec::SlowNim { n: n()?, k: k()? },
            "subtraction" => {
                let set = params
                    .get("set")
                    .and_then(Value::as_array)
                    .ok_or_else(|| {
                        Error::InvalidParams("subtraction needs `set` as an array".into())
                    })?
                    .iter()
                    .map(|v| {
                        v.as_u64()
                            .and_then(|v| u32::try_from(v).ok())
                            .ok_or_else(|| {
                                Error::InvalidParams(
                                    "subtraction set entries must be integers".into(),
                                )
                            })
                    })
                    .collect::<Result<Vec<u32>>>()?;
                FamilySpec::Subtraction { set }
            }
            "euclid_cd" => FamilySpec::EuclidCd,
            "euclid_grossman" => FamilySpec::EuclidGrossman,
            "wythoff" => FamilySpec::Wythoff,
            "wyt_a" => FamilySpec::WytA {
                a: required(params, "a", family)? as u32,
            },
            "wyt_ab" => FamilySpec::WytAb {
                a: required(params, "a", family)? as u32,
                b: required(params, "b", family)? as u32,
            },
            "mark" => FamilySpec::Mark,
            "ho_nim" => {
                let shape: HoShape = params
                    .get("shape")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::InvalidParams("ho_nim needs `shape`".into()))?
                    .parse()?;
                let n = match shape {
                    HoShape::Cycle | HoShape::Path => n()?,
                    HoShape::Conj2 => 4,
                    HoShape::Conj1 => 5,
                };
                FamilySpec::HoNim { shape, n }
            }
            other => return Err(Error::InvalidParams(format!("unknown family `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn params_json(&self) -> Value {
        match self {
            FamilySpec::Nim { n } => json!({ "n": n }),
            FamilySpec::MooreNim { n, k }
            | FamilySpec::ExtendedNim { n, k }
            | FamilySpec::ExactNim { n, k }
            | FamilySpec::SlowNim { n, k } => json!({ "n": n, "k": k }),
            FamilySpec::Subtraction { set } => json!({ "set": set }),
            FamilySpec::EuclidCd
            | FamilySpec::EuclidGrossman
            | FamilySpec::Wythoff
            | FamilySpec::Mark => json!({}),
            FamilySpec::WytA { a } => json!({ "a": a }),
            FamilySpec::WytAb { a, b } => json!({ "a": a, "b": b }),
            FamilySpec::HoNim { shape, n } => json!({ "shape": shape.as_str(), "n": n }),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        match *self {
            FamilySpec::Nim { n: 0 } => bad("nim needs n >= 1".into()),
            FamilySpec::MooreNim { n, k }
            | FamilySpec::ExactNim { n, k }
            | FamilySpec::SlowNim { n, k }
                if !(1 <= k && k <= n) =>
            {
                bad(format!(
                    "{} needs 1 <= k <= n, got n={n}, k={k}",
                    self.family()
                ))
            }
            FamilySpec::SlowNim { n, .. } if n > 20 => {
                bad("slow_nim supports at most 20 piles".into())
            }
            FamilySpec::ExtendedNim { n, k } if !(1 <= k && k <= n) => {
                bad(format!("extended_nim needs 1 <= k <= n, got n={n}, k={k}"))
            }
            FamilySpec::Subtraction { ref set } if set.is_empty() || set.contains(&0) => {
                bad("subtraction set must be a nonempty set of positive integers".into())
            }
            FamilySpec::WytA { a } if a < 1 => bad("wyt_a needs a >= 1".into()),
            FamilySpec::WytAb { b, .. } if b < 1 => bad("wyt_ab needs b >= 1".into()),
            FamilySpec::HoNim {
                shape: HoShape::Cycle | HoShape::Path,
                n,
            } if n < 3 => bad("ho_nim cycle/path needs n >= 3".into()),
            _ => Ok(()),
        }
    }

    pub fn arity(&self) -> usize {
        match *self {
            FamilySpec::Nim { n }
            | FamilySpec::MooreNim { n, .. }
            | FamilySpec::ExactNim { n, .. }
            | FamilySpec::SlowNim { n, .. }
            | FamilySpec::HoNim { n, .. } => n,
            FamilySpec::ExtendedNim { n, .. } => n + 1,
            FamilySpec::Subtraction { .. } | FamilySpec::Mark => 1,
            FamilySpec::EuclidCd
            | FamilySpec::EuclidGrossman
            | FamilySpec::Wythoff
            | FamilySpec::WytA { .. }
            | FamilySpec::WytAb { .. } => 2,
        }
    }

    /// Smallest legal coordinate value.
    pub fn min_coord(&self) -> u32 {
        u32::from(matches!(self, FamilySpec::EuclidGrossman))
    }
}

pub fn make_family(spec: &FamilySpec) -> Result<GameDef> {
    use families::*;
    spec.validate()?;
    Ok(match spec.clone() {
        FamilySpec::Nim { n } => Arc::new(Nim { n }),
        FamilySpec::MooreNim { n, k } => Arc::new(MooreNim { n, k }),
        FamilySpec::ExtendedNim { n, k } => Arc::new(ExtendedNim { n, k }),
        FamilySpec::ExactNim { n, k } => Arc::new(ExactNim { n, k }),
        FamilySpec::SlowNim { n, k } => Arc::new(SlowNim { n, k }),
        FamilySpec::Subtraction { mut set } => {
            set.sort_unstable();
            set.dedup();
            Arc::new(Subtraction { set })
        }
        FamilySpec::EuclidCd => Arc::new(EuclidCd),
        FamilySpec::EuclidGrossman => Arc::new(EuclidGrossman),
        FamilySpec::Wythoff => Arc::new(WytAb {
            a: 1,
            b: 1,
            label: "wythoff".into(),
        }),
        FamilySpec::WytA { a } => Arc::new(WytAb {
            a,
            b: 1,
            label: format!("wyt_a(a={a})"),
        }),
        FamilySpec::WytAb { a, b } => Arc::new(WytAb {
            a,
            b,
            label: format!("wyt_ab(a={a},b={b})"),
        }),
        FamilySpec::Mark => Arc::new(Mark),
        FamilySpec::HoNim { shape, n } => Arc::new(HoNim::new(shape, n)),
    })
}

/// Every position with coordinates in `min..=max`, in lexicographic order.
pub fn box_positions(arity: usize, min: u32, max: u32) -> Vec<Position> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (min..=max).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Position::new).collect()
}

#[derive(Clone, Debug)]
pub enum GameSource {
    Family(FamilySpec),
    Fixture(String),
}

/// A game plus the roots to enumerate from, as read from a spec file.
#[derive(Clone, Debug)]
pub struct GameSpec {
    pub source: GameSource,
    pub roots: Vec<Position>,
}

impl GameSpec {
    /// Parses `{"family": ..., "params": {...}, "roots": [[...], ...]}`.
    /// Family "fixture" takes `params.name`; its roots default to all nodes.
    pub fn from_json(value: &Value) -> Result<Self> {
        let family = value
            .get("family")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::InvalidParams("game spec needs a `family` string".into()))?;
        let empty = json!({});
        let params = value.get("params").unwrap_or(&empty);
        let source = if family == "fixture" {
            let name = params
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::InvalidParams("fixture spec needs `params.name`".into()))?;
            GameSource::Fixture(name.to_string())
        } else {
            GameSource::Family(FamilySpec::from_json(family, params)?)
        };
        let roots = match value.get("roots") {
            None | Some(Value::Null) => Vec::new(),
            Some(Value::Array(rows)) => rows
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| {
                            Error::InvalidParams("each root must be an array of integers".into())
                        })?
                        .iter()
                        .map(|v| {
                            v.as_u64()
                                .and_then(|v| u32::try_from(v).ok())
                                .ok_or_else(|| {
                                    Error::InvalidParams(
                                        "root coordinates must be non-negative integers".into(),
                                    )
                                })
                        })
                        .collect::<Result<Vec<u32>>>()
                        .map(Position::new)
                })
                .collect::<Result<_>>()?,
            Some(_) => return Err(Error::InvalidParams("`roots` must be an array".into())),
        };
        Ok(GameSpec { source, roots })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParams(format!("game spec is not valid JSON: {e}")))?;
        Self::from_json(&value)
    }

    pub fn family_name(&self) -> String {
        match &self.source {
            GameSource::Family(f) => f.family().to_string(),
            GameSource::Fixture(_) => "fixture".into(),
        }
    }

    pub fn params_json(&self) -> Value {
        match &self.source {
            GameSource::Family(f) => f.params_json(),
            GameSource::Fixture(name) => json!({ "name": name }),
        }
    }

    /// The game and the roots to use, filling in fixture defaults.
    pub fn build(&self) -> Result<(GameDef, Vec<Position>)> {
        match &self.source {
            GameSource::Family(f) => {
                if self.roots.is_empty() {
                    return Err(Error::InvalidParams(format!(
                        "{} needs at least one root",
                        f.family()
                    )));
                }
                Ok((make_family(f)?, self.roots.clone()))
            }
            GameSource::Fixture(name) => {
                let game = load_fixture(name)?;
                let roots = if self.roots.is_empty() {
                    game.all_positions()
                } else {
                    self.roots.clone()
                };
                Ok((game, roots))
            }
        }
    }
}
