//! Exact arithmetic in the value group `Z^F × Z/N`.
//!
//! A [`GroupValue`] stands for the product `q_1^{a_1} ⋯ q_F^{a_F} · ζ_N^t`,
//! where the `q_k` are independent generic (non-root-of-unity) parameters and
//! `ζ_N` is a fixed primitive `N`-th root of unity. Only multiplication is
//! available; every condition that would need field addition is phrased as a
//! multiplicative predicate instead (for example `x + 1 = 0` becomes
//! [`GroupValue::is_minus_one`]).

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ambient group `Z^F × Z/N` of a problem instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ValueGroup {
    free_rank: usize,
    torsion: u64,
}

impl fmt::Display for ValueGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{} x Z/{}", self.free_rank, self.torsion)
    }
}

impl ValueGroup {
    pub fn new(free_rank: usize, torsion: u64) -> Result<Self> {
        if torsion == 0 {
            return Err(Error::ZeroTorsion);
        }
        Ok(Self { free_rank, torsion })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> u64 {
        self.torsion
    }

    pub fn one(&self) -> GroupValue {
        GroupValue {
            free: vec![0; self.free_rank],
            tors: 0,
            torsion: self.torsion,
        }
    }

    /// The `index`-th generic parameter `q_index`.
    pub fn generic(&self, index: usize) -> Result<GroupValue> {
        if index >= self.free_rank {
            return Err(Error::Index {
                index,
                rank: self.free_rank,
            });
        }
        let mut v = self.one();
        v.free[index] = 1;
        Ok(v)
    }

    /// `ζ_N^t` for any integer `t`.
    pub fn root(&self, t: i64) -> GroupValue {
        let mut v = self.one();
        v.tors = reduce(t as i128, self.torsion);
        v
    }

    /// `-1`, which exists only when `N` is even.
    pub fn minus_one(&self) -> Option<GroupValue> {
        self.torsion
            .is_multiple_of(2)
            .then(|| self.root((self.torsion / 2) as i64))
    }

    pub fn value(&self, free: Vec<i64>, tors: u64) -> Result<GroupValue> {
        if free.len() != self.free_rank {
            return Err(Error::FreeRank {
                expected: self.free_rank,
                found: free.len(),
            });
        }
        if tors >= self.torsion {
            return Err(Error::TorsionOutOfRange {
                tors,
                order: self.torsion,
            });
        }
        Ok(GroupValue {
            free,
            tors,
            torsion: self.torsion,
        })
    }

    /// All elements of multiplicative order exactly `n` that this group can
    /// host, in increasing torsion exponent. Empty unless `n` divides `N`.
    pub fn primitive_roots(&self, n: u64) -> Vec<GroupValue> {
        if n == 0 || !self.torsion.is_multiple_of(n) {
            return Vec::new();
        }
        let step = self.torsion / n;
        (0..n)
            .filter(|t| t.gcd(&n) == 1)
            .map(|t| {
                let mut v = self.one();
                v.tors = t * step;
                v
            })
            .collect()
    }
}

/// Multiplicative order of a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Order {
    Finite(u64),
    Infinite,
}

/// An element of `Z^F × Z/N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupValue {
    free: Vec<i64>,
    tors: u64,
    torsion: u64,
}

/// `lcm(a, b)`, or [`Error::Overflow`] when it does not fit in a `u64`.
pub fn checked_lcm(a: u64, b: u64) -> Result<u64> {
    (a / a.gcd(&b)).checked_mul(b).ok_or(Error::Overflow)
}

fn reduce(x: i128, n: u64) -> u64 {
    x.rem_euclid(n as i128) as u64
}

impl GroupValue {
    pub fn group(&self) -> ValueGroup {
        ValueGroup {
            free_rank: self.free.len(),
            torsion: self.torsion,
        }
    }

    pub fn free(&self) -> &[i64] {
        &self.free
    }

    pub fn tors(&self) -> u64 {
        self.tors
    }

    pub fn is_one(&self) -> bool {
        self.tors == 0 && self.free.iter().all(|&a| a == 0)
    }

    fn check_group(&self, other: &Self) -> Result<()> {
        if self.free.len() != other.free.len() || self.torsion != other.torsion {
            return Err(Error::GroupMismatch {
                left: self.group(),
                right: other.group(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let free = self
            .free
            .iter()
            .zip(&other.free)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            free,
            tors: reduce(self.tors as i128 + other.tors as i128, self.torsion),
            torsion: self.torsion,
        })
    }

    /// `self · other⁻¹`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        self.pow(-1)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let free = self
            .free
            .iter()
            .map(|a| a.checked_mul(k).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            free,
            tors: reduce(self.tors as i128 * k as i128, self.torsion),
            torsion: self.torsion,
        })
    }

    pub fn order(&self) -> Order {
        if self.free.iter().any(|&a| a != 0) {
            Order::Infinite
        } else {
            Order::Finite(self.torsion / self.torsion.gcd(&self.tors))
        }
    }

    /// True iff the value is a primitive `n`-th root of unity.
    pub fn is_primitive_root(&self, n: u64) -> bool {
        self.order() == Order::Finite(n)
    }

    /// True iff the value equals `-1`, i.e. has order exactly 2.
    pub fn is_minus_one(&self) -> bool {
        self.is_primitive_root(2)
    }

    /// Re-expresses the value in `Z^F × Z/M` for a multiple `M` of `N`.
    pub fn lift(&self, torsion: u64) -> Result<Self> {
        if torsion == 0 {
            return Err(Error::ZeroTorsion);
        }
        if !torsion.is_multiple_of(self.torsion) {
            return Err(Error::GroupMismatch {
                left: self.group(),
                right: ValueGroup {
                    free_rank: self.free.len(),
                    torsion,
                },
            });
        }
        Ok(Self {
            free: self.free.clone(),
            tors: self.tors * (torsion / self.torsion),
            torsion,
        })
    }
}

impl fmt::Display for GroupValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        for (k, &a) in self.free.iter().enumerate() {
            match a {
                0 => {}
                1 => factors.push(format!("q{k}")),
                _ => factors.push(format!("q{k}^{a}")),
            }
        }
        match self.tors {
            0 => {}
            1 => factors.push("z".to_string()),
            t => factors.push(format!("z^{t}")),
        }
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join("*"))
        }
    }
}
