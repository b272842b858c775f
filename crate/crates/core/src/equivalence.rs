//! Weyl-equivalence orbits, computed by walking the groupoid and trying every
//! index permutation at every node.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use crate::bicharacter::BraidingMatrix;
use crate::error::{Error, Result};
use crate::groupoid::{generate, OrderedBasis, WeylGroupoid};
use crate::values::{checked_lcm, GroupValue};

/// Diagonal entries plus symmetrized products `q_ij q_ji` for `i < j`.
/// Two matrices are twist equivalent exactly when their classes are equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TwistClass {
    pub rank: usize,
    pub diagonal: Vec<GroupValue>,
    /// Upper triangle, row by row.
    pub products: Vec<GroupValue>,
}

impl TwistClass {
    pub fn of(q: &BraidingMatrix) -> Result<Self> {
        let n = q.rank();
        let diagonal = (0..n).map(|i| q.get(i, i).clone()).collect();
        let mut products = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                products.push(q.symmetrized(i, j)?);
            }
        }
        Ok(TwistClass {
            rank: n,
            diagonal,
            products,
        })
    }

    /// The representative with `q_ij = 1` for `i < j`.
    pub fn representative(&self) -> Result<BraidingMatrix> {
        let n = self.rank;
        let group = self.diagonal[0].group();
        let mut entries = vec![group.one(); n * n];
        let mut k = 0;
        for i in 0..n {
            entries[i * n + i] = self.diagonal[i].clone();
            for j in i + 1..n {
                entries[j * n + i] = self.products[k].clone();
                k += 1;
            }
        }
        BraidingMatrix::new(n, entries)
    }
}

fn finite_groupoid(q: &BraidingMatrix, cap: usize) -> Result<WeylGroupoid> {
    let outcome = generate(q, &OrderedBasis::standard(q.rank()), cap)?;
    match outcome.groupoid() {
        Some(g) => Ok(g.clone()),
        None => Err(Error::NotFinite(outcome.label())),
    }
}

fn orbit_of(groupoid: &WeylGroupoid) -> Result<BTreeSet<TwistClass>> {
    let n = groupoid.braiding().rank();
    let mut out = BTreeSet::new();
    for k in 0..groupoid.len() {
        let local = groupoid.matrix_at(k);
        for perm in (0..n).permutations(n) {
            out.insert(TwistClass::of(&local.permuted(&perm)?)?);
        }
    }
    Ok(out)
}

/// Twist classes of `matrix_at_basis(q, E)` over every groupoid basis `E` and
/// every reordering of `E`.
pub fn weyl_orbit(q: &BraidingMatrix, cap: usize) -> Result<BTreeSet<TwistClass>> {
    orbit_of(&finite_groupoid(q, cap)?)
}

/// Whether `a` and `b` are Weyl equivalent. Matrices over groups with the same
/// free rank but different torsion orders are compared in the common lift.
pub fn weyl_equivalent(a: &BraidingMatrix, b: &BraidingMatrix, cap: usize) -> Result<bool> {
    let (a, b) = common_lift(a, b)?;
    if a.rank() != b.rank() {
        finite_groupoid(&a, cap)?;
        finite_groupoid(&b, cap)?;
        return Ok(false);
    }
    let orbit = weyl_orbit(&b, cap)?;
    if orbit.contains(&TwistClass::of(&a)?) {
        return Ok(true);
    }
    finite_groupoid(&a, cap)?;
    Ok(false)
}

/// Both matrices lifted to the torsion order `lcm(N_a, N_b)`; the free ranks
/// must agree.
pub fn common_lift(
    a: &BraidingMatrix,
    b: &BraidingMatrix,
) -> Result<(BraidingMatrix, BraidingMatrix)> {
    let (ga, gb) = (a.group(), b.group());
    if ga.free_rank() != gb.free_rank() {
        return Err(Error::GroupMismatch {
            left: ga,
            right: gb,
        });
    }
    let n = checked_lcm(ga.torsion(), gb.torsion())?;
    Ok((a.lift(n)?, b.lift(n)?))
}
