//! Problem input: a JSON document whose matrix entries are either canonical
//! `{"free": [...], "tors": k}` objects or shorthand strings like `q^-2*z^3`.

use diagroot::{BraidingMatrix, GroupValue, ValueGroup};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("cannot parse entry {entry:?}: {reason}")]
    Shorthand { entry: String, reason: String },
    #[error("torsion order must be positive")]
    ZeroTorsion,
    #[error("torsion exponent {tors} is not in [0, {order})")]
    TorsOutOfRange { tors: u64, order: u64 },
    #[error("a leading '-' needs an even torsion order, got {0}")]
    OddTorsion(u64),
    #[error("entry has {found} free exponents, expected {expected}")]
    FreeLength { expected: usize, found: usize },
    #[error("matrix must be {rank}x{rank}: {detail}")]
    NotSquare { rank: usize, detail: String },
    #[error("invalid parameter name {0:?}")]
    BadName(String),
    #[error("rank must be positive")]
    ZeroRank,
}

/// One canonical entry: `∏ name_k^{free_k} · z^{tors}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub free: Vec<i64>,
    pub tors: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub rank: usize,
    pub torsion_order: u64,
    #[serde(default)]
    pub free: Vec<String>,
    pub matrix: Vec<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawEntry {
    Canonical(Entry),
    Shorthand(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    rank: usize,
    torsion_order: u64,
    #[serde(default)]
    free: Vec<String>,
    matrix: Vec<Vec<RawEntry>>,
    #[serde(default)]
    cap: Option<usize>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "z"
}

fn check_names(free: &[String]) -> Result<(), InputError> {
    for (k, name) in free.iter().enumerate() {
        if !valid_name(name) || free[..k].contains(name) {
            return Err(InputError::BadName(name.clone()));
        }
    }
    Ok(())
}

/// Parses one shorthand entry such as `q^2*z^-1`, `-z^2` or `1`.
///
/// `z` is a primitive `torsion_order`-th root of unity and a leading `-`
/// multiplies by `z^{N/2}`.
pub fn parse_entry(text: &str, free: &[String], torsion_order: u64) -> Result<Entry, InputError> {
    if torsion_order == 0 {
        return Err(InputError::ZeroTorsion);
    }
    let fail = |reason: &str| InputError::Shorthand {
        entry: text.to_string(),
        reason: reason.to_string(),
    };
    let body = text.trim();
    let (negate, body) = match body.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, body),
    };
    if body.is_empty() {
        return Err(fail("empty entry"));
    }
    let n = torsion_order as i128;
    let mut exps = vec![0i64; free.len()];
    let mut tors: i128 = 0;
    for factor in body.split('*') {
        let factor = factor.trim();
        let (name, exp) = match factor.split_once('^') {
            Some((name, exp)) => {
                let exp = exp.trim();
                let exp = exp
                    .strip_prefix('(')
                    .and_then(|e| e.strip_suffix(')'))
                    .unwrap_or(exp);
                let e: i64 = exp
                    .trim()
                    .parse()
                    .map_err(|_| fail("exponent is not an integer"))?;
                (name.trim(), e)
            }
            None => (factor, 1),
        };
        if name == "1" {
            continue;
        }
        if name == "z" {
            tors = (tors + (exp as i128).rem_euclid(n)) % n;
        } else if let Some(k) = free.iter().position(|f| f == name) {
            exps[k] = exps[k]
                .checked_add(exp)
                .ok_or_else(|| fail("exponent overflow"))?;
        } else if name.is_empty() {
            return Err(fail("empty factor"));
        } else {
            return Err(fail(&format!("unknown parameter {name:?}")));
        }
    }
    if negate {
        if !torsion_order.is_multiple_of(2) {
            return Err(InputError::OddTorsion(torsion_order));
        }
        tors = (tors + n / 2) % n;
    }
    Ok(Entry {
        free: exps,
        tors: tors as u64,
    })
}

impl ProblemSpec {
    fn validate(&self) -> Result<(), InputError> {
        if self.rank == 0 {
            return Err(InputError::ZeroRank);
        }
        if self.torsion_order == 0 {
            return Err(InputError::ZeroTorsion);
        }
        check_names(&self.free)?;
        if self.matrix.len() != self.rank {
            return Err(InputError::NotSquare {
                rank: self.rank,
                detail: format!("{} rows", self.matrix.len()),
            });
        }
        for (i, row) in self.matrix.iter().enumerate() {
            if row.len() != self.rank {
                return Err(InputError::NotSquare {
                    rank: self.rank,
                    detail: format!("row {} has {} entries", i + 1, row.len()),
                });
            }
            for e in row {
                if e.free.len() != self.free.len() {
                    return Err(InputError::FreeLength {
                        expected: self.free.len(),
                        found: e.free.len(),
                    });
                }
                if e.tors >= self.torsion_order {
                    return Err(InputError::TorsOutOfRange {
                        tors: e.tors,
                        order: self.torsion_order,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> ValueGroup {
        ValueGroup::new(self.free.len(), self.torsion_order).expect("validated torsion order")
    }

    pub fn braiding(&self) -> Result<BraidingMatrix, diagroot::Error> {
        let g = self.group();
        let entries = self
            .matrix
            .iter()
            .flatten()
            .map(|e| g.value(e.free.clone(), e.tors))
            .collect::<Result<Vec<_>, _>>()?;
        BraidingMatrix::new(self.rank, entries)
    }

    /// The spec describing `q`, naming its free generators `names`.
    pub fn from_braiding(q: &BraidingMatrix, names: &[String]) -> Self {
        let n = q.rank();
        let entry = |v: &GroupValue| Entry {
            free: v.free().to_vec(),
            tors: v.tors(),
        };
        ProblemSpec {
            rank: n,
            torsion_order: q.group().torsion(),
            free: names.to_vec(),
            matrix: (0..n)
                .map(|i| (0..n).map(|j| entry(q.get(i, j))).collect())
                .collect(),
            cap: None,
        }
    }

    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("plain data always serializes")
    }
}

/// Parses a problem document. Shorthand strings are resolved against the
/// declared parameter names and torsion order.
pub fn parse_input(text: &str) -> Result<ProblemSpec, InputError> {
    let raw: RawSpec = serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))?;
    if raw.torsion_order == 0 {
        return Err(InputError::ZeroTorsion);
    }
    check_names(&raw.free)?;
    let matrix = raw
        .matrix
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|e| match e {
                    RawEntry::Canonical(e) => Ok(e),
                    RawEntry::Shorthand(s) => parse_entry(&s, &raw.free, raw.torsion_order),
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let spec = ProblemSpec {
        rank: raw.rank,
        torsion_order: raw.torsion_order,
        free: raw.free,
        matrix,
        cap: raw.cap,
    };
    spec.validate()?;
    Ok(spec)
}

/// Shorthand for a value, using `names` for the free generators.
pub fn render(v: &GroupValue, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (k, &e) in v.free().iter().enumerate() {
        let name = names.get(k).cloned().unwrap_or_else(|| format!("q{k}"));
        match e {
            0 => {}
            1 => parts.push(name),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    match v.tors() {
        0 => {}
        1 => parts.push("z".into()),
        t => parts.push(format!("z^{t}")),
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}
