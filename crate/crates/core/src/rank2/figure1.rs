//! The rank-2 classification table, stored as data, and a matcher that finds
//! the row a braiding's twist class belongs to.
//!
//! Every row lists one Weyl-equivalence class as a few matrices with `q12 = 1`
//! whose entries are signed monomials in a root of unity `ζ` and up to two
//! generic parameters `q`, `r`.

use std::fmt;

use num_integer::Integer;

use crate::bicharacter::BraidingMatrix;
use crate::error::{Error, Result};
use crate::values::{checked_lcm, GroupValue, Order, ValueGroup};

/// `(−1)^neg · ζ^zeta · q^q · r^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mono {
    pub neg: bool,
    pub zeta: i64,
    pub q: i64,
    pub r: i64,
}

const fn mono(neg: bool, zeta: i64, q: i64, r: i64) -> Mono {
    Mono { neg, zeta, q, r }
}
const ONE: Mono = mono(false, 0, 0, 0);
const NEG: Mono = mono(true, 0, 0, 0);
const fn z(k: i64) -> Mono {
    mono(false, k, 0, 0)
}
const fn nz(k: i64) -> Mono {
    mono(true, k, 0, 0)
}
const fn qp(k: i64) -> Mono {
    mono(false, 0, k, 0)
}
const R: Mono = mono(false, 0, 0, 1);

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("ζ", self.zeta), ("q", self.q), ("r", self.r)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        let body = if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("·")
        };
        if self.neg {
            write!(f, "-{body}")
        } else {
            f.write_str(&body)
        }
    }
}

/// Concrete values for the row parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub zeta: Option<GroupValue>,
    pub q: Option<GroupValue>,
    pub r: Option<GroupValue>,
}

impl Mono {
    /// Evaluates the monomial. `group` must host `−1` when `neg` is set.
    pub fn eval(&self, group: ValueGroup, params: &Params) -> Result<GroupValue> {
        let mut v = group.one();
        if self.neg {
            let minus = group
                .minus_one()
                .ok_or_else(|| Error::Invariant("−1 needs an even torsion order".into()))?;
            v = v.mul(&minus)?;
        }
        for (e, p, name) in [
            (self.zeta, &params.zeta, "ζ"),
            (self.q, &params.q, "q"),
            (self.r, &params.r, "r"),
        ] {
            if e != 0 {
                let p = p
                    .as_ref()
                    .ok_or_else(|| Error::Invariant(format!("parameter {name} is not set")))?;
                v = v.mul(&p.pow(e)?)?;
            }
        }
        Ok(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    Q,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exclusion {
    /// The parameter must differ from this monomial in `ζ`.
    Equals(Mono),
    /// The parameter must not be a primitive root of this order.
    Order(u64),
}

/// A generic parameter and the entry (0 = q11, 1 = q21, 2 = q22) of the
/// first variant from which it is read off.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenericParam {
    pub param: Param,
    pub exclusions: &'static [Exclusion],
}

/// An alternative parameter value that stays in the same class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Substitution {
    Zeta(Mono),
    Q(Mono),
}

/// One listed matrix `(q11, 1, q21, q22)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Variant {
    pub q11: Mono,
    pub q21: Mono,
    pub q22: Mono,
    pub tree: &'static str,
}

const fn var(q11: Mono, q21: Mono, q22: Mono, tree: &'static str) -> Variant {
    Variant {
        q11,
        q21,
        q22,
        tree,
    }
}

/// One row of the table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Figure1Row {
    pub id: u8,
    pub variants: &'static [Variant],
    /// Orders `n` with `ζ ∈ R_n`; empty when the row has no `ζ`.
    pub zeta_orders: &'static [u64],
    pub generic: &'static [GenericParam],
    pub alternatives: &'static [Substitution],
}

const NOT_PM1: &[Exclusion] = &[Exclusion::Equals(ONE), Exclusion::Equals(NEG)];

static ROWS: [Figure1Row; 16] = [
    Figure1Row {
        id: 1,
        variants: &[var(qp(1), ONE, R, "T1")],
        zeta_orders: &[],
        generic: &[
            GenericParam {
                param: Param::Q,
                exclusions: &[],
            },
            GenericParam {
                param: Param::R,
                exclusions: &[],
            },
        ],
        alternatives: &[],
    },
    Figure1Row {
        id: 2,
        variants: &[var(qp(1), qp(-1), qp(1), "T2")],
        zeta_orders: &[],
        generic: &[GenericParam {
            param: Param::Q,
            exclusions: &[Exclusion::Equals(ONE)],
        }],
        alternatives: &[],
    },
    Figure1Row {
        id: 3,
        variants: &[var(qp(1), qp(-1), NEG, "T2"), var(NEG, qp(1), NEG, "T2")],
        zeta_orders: &[],
        generic: &[GenericParam {
            param: Param::Q,
            exclusions: NOT_PM1,
        }],
        alternatives: &[],
    },
    Figure1Row {
        id: 4,
        variants: &[var(qp(1), qp(-2), qp(2), "T3")],
        zeta_orders: &[],
        generic: &[GenericParam {
            param: Param::Q,
            exclusions: NOT_PM1,
        }],
        alternatives: &[],
    },
    Figure1Row {
        id: 5,
        variants: &[var(qp(1), qp(-2), NEG, "T3")],
        zeta_orders: &[],
        generic: &[GenericParam {
            param: Param::Q,
            exclusions: NOT_PM1,
        }],
        alternatives: &[Substitution::Q(mono(true, 0, -1, 0))],
    },
    Figure1Row {
        id: 6,
        variants: &[var(z(1), qp(-1), qp(1), "T3")],
        zeta_orders: &[3],
        generic: &[GenericParam {
            param: Param::Q,
            exclusions: &[
                Exclusion::Equals(ONE),
                Exclusion::Equals(z(1)),
                Exclusion::Equals(z(2)),
            ],
        }],
        alternatives: &[Substitution::Q(mono(false, 1, -1, 0))],
    },
    Figure1Row {
        id: 7,
        variants: &[var(z(1), nz(1), NEG, "T3")],
        zeta_orders: &[3],
        generic: &[],
        alternatives: &[Substitution::Zeta(z(2))],
    },
    Figure1Row {
        id: 8,
        variants: &[
            var(z(4), z(-3), nz(2), "T4"),
            var(z(4), z(-1), NEG, "T5"),
            var(z(-3), z(1), NEG, "T7"),
        ],
        zeta_orders: &[12],
        generic: &[],
        alternatives: &[Substitution::Zeta(nz(-1))],
    },
    Figure1Row {
        id: 9,
        variants: &[
            var(nz(2), z(1), nz(2), "T4"),
            var(nz(2), z(3), NEG, "T5"),
            var(nz(-1), z(-3), NEG, "T7"),
        ],
        zeta_orders: &[12],
        generic: &[],
        alternatives: &[],
    },
    Figure1Row {
        id: 10,
        variants: &[
            var(z(1), z(-2), nz(3), "T6"),
            var(nz(2), nz(1), NEG, "T14"),
            var(nz(3), nz(-1), NEG, "T9"),
        ],
        zeta_orders: &[18],
        generic: &[],
        alternatives: &[],
    },
    Figure1Row {
        id: 11,
        variants: &[var(qp(1), qp(-3), qp(3), "T8")],
        zeta_orders: &[],
        generic: &[GenericParam {
            param: Param::Q,
            exclusions: &[
                Exclusion::Equals(ONE),
                Exclusion::Equals(NEG),
                Exclusion::Order(3),
            ],
        }],
        alternatives: &[],
    },
    Figure1Row {
        id: 12,
        variants: &[
            var(z(2), z(1), z(-1), "T8"),
            var(z(2), nz(-1), NEG, "T8"),
            var(z(1), nz(1), NEG, "T8"),
        ],
        zeta_orders: &[8],
        generic: &[],
        alternatives: &[],
    },
    Figure1Row {
        id: 13,
        variants: &[
            var(z(6), nz(-1), z(8), "T10"),
            var(z(6), z(1), z(-1), "T13"),
            var(z(8), z(5), NEG, "T17"),
            var(z(1), z(-5), NEG, "T21"),
        ],
        zeta_orders: &[24],
        generic: &[],
        alternatives: &[],
    },
    Figure1Row {
        id: 14,
        variants: &[var(z(1), z(-3), NEG, "T11"), var(nz(-2), z(3), NEG, "T16")],
        zeta_orders: &[5, 20],
        generic: &[],
        alternatives: &[Substitution::Zeta(z(11))],
    },
    Figure1Row {
        id: 15,
        variants: &[
            var(z(1), z(-3), nz(5), "T12"),
            var(nz(3), nz(4), nz(-4), "T15"),
            var(nz(5), nz(-2), NEG, "T18"),
            var(nz(3), nz(2), NEG, "T20"),
        ],
        zeta_orders: &[30],
        generic: &[],
        alternatives: &[],
    },
    Figure1Row {
        id: 16,
        variants: &[var(z(1), z(-3), NEG, "T19"), var(nz(-2), z(3), NEG, "T22")],
        zeta_orders: &[14],
        generic: &[],
        alternatives: &[],
    },
];

/// The sixteen rows in order.
pub fn figure1_rows() -> &'static [Figure1Row] {
    &ROWS
}

impl Variant {
    pub fn monos(&self) -> [Mono; 3] {
        [self.q11, self.q21, self.q22]
    }
}

impl Figure1Row {
    /// Smallest torsion order able to host every constant of the row.
    pub fn torsion(&self) -> u64 {
        self.zeta_orders.iter().fold(2, |acc, n| acc.lcm(n))
    }

    /// The matrix `(q11, 1, q21, q22)` of variant `index` (0-based).
    pub fn instantiate(
        &self,
        index: usize,
        group: ValueGroup,
        params: &Params,
    ) -> Result<BraidingMatrix> {
        let v = self.variants.get(index).ok_or(Error::Index {
            index,
            rank: self.variants.len(),
        })?;
        BraidingMatrix::rank2(
            v.q11.eval(group, params)?,
            group.one(),
            v.q21.eval(group, params)?,
            v.q22.eval(group, params)?,
        )
    }

    /// The parameter sets obtained from `params` by the row's listed
    /// alternatives, `params` itself first.
    pub fn alternative_params(&self, group: ValueGroup, params: &Params) -> Result<Vec<Params>> {
        let mut out = vec![params.clone()];
        for alt in self.alternatives {
            let mut p = params.clone();
            match alt {
                Substitution::Zeta(m) => p.zeta = Some(m.eval(group, params)?),
                Substitution::Q(m) => p.q = Some(m.eval(group, params)?),
            }
            out.push(p);
        }
        Ok(out)
    }

    fn admissible(&self, group: ValueGroup, params: &Params) -> Result<bool> {
        for g in self.generic {
            let value = match g.param {
                Param::Q => params.q.as_ref(),
                Param::R => params.r.as_ref(),
            };
            let Some(value) = value else {
                return Ok(false);
            };
            for ex in g.exclusions {
                let hit = match ex {
                    Exclusion::Equals(m) => &m.eval(group, params)? == value,
                    Exclusion::Order(n) => value.order() == Order::Finite(*n),
                };
                if hit {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// A successful table lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Figure1Match {
    pub row: u8,
    /// 1-based index of the variant within the row.
    pub variant: usize,
    pub tree: &'static str,
    /// The match used the transposed basis `(ε₂, ε₁)`.
    pub transposed: bool,
    /// Parameters, expressed in the lifted group `Z^F × Z/M` with
    /// `M = lcm(N, row torsion)`.
    pub params: Params,
}

/// Reads a generic parameter off an entry whose monomial is linear in it.
fn solve(
    target: &GroupValue,
    m: &Mono,
    param: Param,
    group: ValueGroup,
    zeta: &Option<GroupValue>,
) -> Result<Option<GroupValue>> {
    let (own, other) = match param {
        Param::Q => (m.q, m.r),
        Param::R => (m.r, m.q),
    };
    if own != 1 || other != 0 {
        return Ok(None);
    }
    let rest = Mono { q: 0, r: 0, ..*m };
    let known = rest.eval(
        group,
        &Params {
            zeta: zeta.clone(),
            ..Params::default()
        },
    )?;
    Ok(Some(target.div(&known)?))
}

/// Finds the lowest row (and variant) whose pattern the twist class of `q`
/// satisfies in either index order.
pub fn figure1_classify(q: &BraidingMatrix) -> Result<Option<Figure1Match>> {
    if q.rank() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            found: q.rank(),
        });
    }
    let base = q.group();
    for row in figure1_rows() {
        let torsion = checked_lcm(base.torsion(), row.torsion())?;
        let group = ValueGroup::new(base.free_rank(), torsion)?;
        let lifted = q.lift(torsion)?;
        let a = lifted.get(0, 0).clone();
        let p = lifted.symmetrized(0, 1)?;
        let b = lifted.get(1, 1).clone();

        let zetas: Vec<Option<GroupValue>> = if row.zeta_orders.is_empty() {
            vec![None]
        } else {
            row.zeta_orders
                .iter()
                .flat_map(|&n| group.primitive_roots(n))
                .map(Some)
                .collect()
        };

        for (vi, variant) in row.variants.iter().enumerate() {
            let monos = variant.monos();
            for (transposed, target) in [(false, [&a, &p, &b]), (true, [&b, &p, &a])] {
                for zeta in &zetas {
                    let mut params = Params {
                        zeta: zeta.clone(),
                        ..Params::default()
                    };
                    let mut solved = true;
                    for g in row.generic {
                        let found = monos
                            .iter()
                            .zip(target)
                            .find_map(|(m, t)| solve(t, m, g.param, group, zeta).transpose())
                            .transpose()?;
                        match (found, g.param) {
                            (Some(v), Param::Q) => params.q = Some(v),
                            (Some(v), Param::R) => params.r = Some(v),
                            (None, _) => solved = false,
                        }
                    }
                    if !solved || !row.admissible(group, &params)? {
                        continue;
                    }
                    let ok = monos
                        .iter()
                        .zip(target)
                        .map(|(m, t)| Ok(&m.eval(group, &params)? == t))
                        .collect::<Result<Vec<bool>>>()?
                        .into_iter()
                        .all(|x| x);
                    if ok {
                        return Ok(Some(Figure1Match {
                            row: row.id,
                            variant: vi + 1,
                            tree: variant.tree,
                            transposed,
                            params,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}
