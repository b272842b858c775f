//! Braiding matrices, the bicharacter they define on `Z^n`, and the integers
//! `m_ij` that drive the pseudo-reflections.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupoid::OrderedBasis;
use crate::values::{GroupValue, Order, ValueGroup};

/// An integer vector of `Z^n`, written in the standard basis `E₀`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntVector(pub Vec<i64>);

impl IntVector {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// The standard basis vector `ε_i` (0-based index).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    pub fn checked_scale(&self, k: i64) -> Option<Self> {
        self.0
            .iter()
            .map(|a| a.checked_mul(k))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    pub fn is_nonpositive(&self) -> bool {
        self.0.iter().all(|&a| a <= 0)
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// The structure constants `q_ij = χ(ε_i, ε_j)` of a diagonal braiding.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidingMatrix {
    rank: usize,
    entries: Vec<GroupValue>,
}

/// Result of solving for `m_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanEntry {
    Defined(u64),
    Undefined,
}

impl CartanEntry {
    pub fn value(self) -> Option<u64> {
        match self {
            CartanEntry::Defined(m) => Some(m),
            CartanEntry::Undefined => None,
        }
    }
}

impl BraidingMatrix {
    /// Builds a matrix from row-major entries. All entries must share one
    /// value group.
    pub fn new(rank: usize, entries: Vec<GroupValue>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Dimension {
                expected: 1,
                found: 0,
            });
        }
        if entries.len() != rank * rank {
            return Err(Error::Dimension {
                expected: rank * rank,
                found: entries.len(),
            });
        }
        let group = entries[0].group();
        if let Some(bad) = entries.iter().find(|v| v.group() != group) {
            return Err(Error::GroupMismatch {
                left: group,
                right: bad.group(),
            });
        }
        Ok(Self { rank, entries })
    }

    /// Rank-2 shorthand, in the order `(q11, q12, q21, q22)`.
    pub fn rank2(
        q11: GroupValue,
        q12: GroupValue,
        q21: GroupValue,
        q22: GroupValue,
    ) -> Result<Self> {
        Self::new(2, vec![q11, q12, q21, q22])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn group(&self) -> ValueGroup {
        self.entries[0].group()
    }

    pub fn entries(&self) -> &[GroupValue] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupValue {
        &self.entries[i * self.rank + j]
    }

    /// `q_ij · q_ji`.
    pub fn symmetrized(&self, i: usize, j: usize) -> Result<GroupValue> {
        self.get(i, j).mul(self.get(j, i))
    }

    /// Re-expresses every entry with torsion order `torsion` (a multiple of
    /// the current one).
    pub fn lift(&self, torsion: u64) -> Result<Self> {
        Ok(Self {
            rank: self.rank,
            entries: self
                .entries
                .iter()
                .map(|v| v.lift(torsion))
                .collect::<Result<_>>()?,
        })
    }

    /// The same braiding written in the reordered standard basis
    /// `(ε_{perm[0]}, …)`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.rank {
            return Err(Error::Dimension {
                expected: self.rank,
                found: perm.len(),
            });
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        for &a in perm {
            for &b in perm {
                if a >= self.rank || b >= self.rank {
                    return Err(Error::Index {
                        index: a.max(b),
                        rank: self.rank,
                    });
                }
                entries.push(self.get(a, b).clone());
            }
        }
        Ok(Self {
            rank: self.rank,
            entries,
        })
    }

    /// `m_ij` computed from this matrix as the braiding at the current basis.
    pub fn cartan(&self, i: usize, j: usize) -> Result<CartanEntry> {
        if i >= self.rank || j >= self.rank {
            return Err(Error::Index {
                index: i.max(j),
                rank: self.rank,
            });
        }
        if i == j {
            return Err(Error::Invariant("m_ij needs i != j".into()));
        }
        let qii = self.get(i, i);
        let prod = self.symmetrized(i, j)?;
        Ok(cartan_from(qii, &prod))
    }
}

impl fmt::Display for BraidingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rank {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.rank {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// Smallest `m ≥ 0` with `x^m · y = 1`, if any.
///
/// The free parts give a linear system `m·u = -v` over `Z`, which pins `m`
/// down uniquely unless `u = 0`; the torsion parts give the congruence
/// `m·s ≡ -t (mod N)`.
pub(crate) fn min_power_solution(x: &GroupValue, y: &GroupValue) -> Option<u64> {
    let n = x.group().torsion() as i128;
    let s = x.tors() as i128;
    let t = y.tors() as i128;

    let mut pinned: Option<i128> = None;
    for (&u, &v) in x.free().iter().zip(y.free()) {
        if u == 0 {
            if v != 0 {
                return None;
            }
            continue;
        }
        let (u, v) = (u as i128, v as i128);
        if v % u != 0 {
            return None;
        }
        let m = -v / u;
        if m < 0 || pinned.is_some_and(|p| p != m) {
            return None;
        }
        pinned = Some(m);
    }

    if let Some(m) = pinned {
        return ((m * s + t).rem_euclid(n) == 0)
            .then(|| u64::try_from(m).ok())
            .flatten();
    }

    // m·s ≡ -t (mod n)
    let rhs = (-t).rem_euclid(n);
    let g = s.gcd(&n);
    if rhs % g != 0 {
        return None;
    }
    let modulus = n / g;
    if modulus == 1 {
        return Some(0);
    }
    let ext = (s / g).extended_gcd(&modulus);
    let inv = ext.x.rem_euclid(modulus);
    Some(((rhs / g) * inv).rem_euclid(modulus) as u64)
}

/// `m_ij` from `q_ii` and the symmetrized product `q_ij q_ji`.
pub(crate) fn cartan_from(qii: &GroupValue, prod: &GroupValue) -> CartanEntry {
    let via_product = min_power_solution(qii, prod);
    let via_order = match qii.order() {
        Order::Finite(d) if d >= 2 => Some(d - 1),
        _ => None,
    };
    match (via_product, via_order) {
        (Some(a), Some(b)) => CartanEntry::Defined(a.min(b)),
        (Some(a), None) | (None, Some(a)) => CartanEntry::Defined(a),
        (None, None) => CartanEntry::Undefined,
    }
}

fn check_vector(q: &BraidingMatrix, d: &IntVector) -> Result<()> {
    if d.len() != q.rank {
        return Err(Error::Dimension {
            expected: q.rank,
            found: d.len(),
        });
    }
    Ok(())
}

/// `χ(d, e) = ∏ q_ij^{d_i e_j}`.
pub fn chi_eval(q: &BraidingMatrix, d: &IntVector, e: &IntVector) -> Result<GroupValue> {
    check_vector(q, d)?;
    check_vector(q, e)?;
    let mut acc = q.group().one();
    for (i, &di) in d.0.iter().enumerate() {
        if di == 0 {
            continue;
        }
        for (j, &ej) in e.0.iter().enumerate() {
            if ej == 0 {
                continue;
            }
            let k = di.checked_mul(ej).ok_or(Error::Overflow)?;
            acc = acc.mul(&q.get(i, j).pow(k)?)?;
        }
    }
    Ok(acc)
}

/// The structure constants `χ(e_i, e_j)` with respect to the basis `E`.
pub fn matrix_at_basis(q: &BraidingMatrix, basis: &OrderedBasis) -> Result<BraidingMatrix> {
    if basis.rank() != q.rank {
        return Err(Error::Dimension {
            expected: q.rank,
            found: basis.rank(),
        });
    }
    let vs = basis.vectors();
    let mut entries = Vec::with_capacity(q.rank * q.rank);
    for ei in vs {
        for ej in vs {
            entries.push(chi_eval(q, ei, ej)?);
        }
    }
    BraidingMatrix::new(q.rank, entries)
}

/// `m_ij` for the basis `E`.
pub fn cartan_entry(
    q: &BraidingMatrix,
    basis: &OrderedBasis,
    i: usize,
    j: usize,
) -> Result<CartanEntry> {
    matrix_at_basis(q, basis)?.cartan(i, j)
}

/// Same diagonal and the same symmetrized products `q_jl q_lj`.
pub fn twist_equivalent(a: &BraidingMatrix, b: &BraidingMatrix) -> Result<bool> {
    if a.rank != b.rank {
        return Err(Error::Dimension {
            expected: a.rank,
            found: b.rank,
        });
    }
    if a.group() != b.group() {
        return Err(Error::GroupMismatch {
            left: a.group(),
            right: b.group(),
        });
    }
    for i in 0..a.rank {
        if a.get(i, i) != b.get(i, i) {
            return Ok(false);
        }
        for j in i + 1..a.rank {
            if a.symmetrized(i, j)? != b.symmetrized(i, j)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The matrix at the basis `(e_j + c_j e_pivot)_j` computed from the matrix
/// at `(e_j)_j` without touching coordinates:
/// `q'_jk = q_jk · q_jp^{c_k} · q_pk^{c_j} · q_pp^{c_j c_k}`.
pub(crate) fn shear_matrix(
    local: &BraidingMatrix,
    pivot: usize,
    shifts: &[i64],
) -> Result<BraidingMatrix> {
    let n = local.rank;
    let mut entries = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            let (cj, ck) = (shifts[j], shifts[k]);
            let v = local
                .get(j, k)
                .mul(&local.get(j, pivot).pow(ck)?)?
                .mul(&local.get(pivot, k).pow(cj)?)?
                .mul(
                    &local
                        .get(pivot, pivot)
                        .pow(cj.checked_mul(ck).ok_or(Error::Overflow)?)?,
                )?;
            entries.push(v);
        }
    }
    BraidingMatrix::new(n, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generic_group() -> ValueGroup {
        ValueGroup::new(1, 1).unwrap()
    }

    fn q_pow(k: i64) -> GroupValue {
        generic_group().generic(0).unwrap().pow(k).unwrap()
    }

    fn row2() -> BraidingMatrix {
        BraidingMatrix::rank2(q_pow(1), q_pow(0), q_pow(-1), q_pow(1)).unwrap()
    }

    #[test]
    fn chi_on_units_and_sums() {
        let g = ValueGroup::new(4, 1).unwrap();
        let qs: Vec<_> = (0..4).map(|k| g.generic(k).unwrap()).collect();
        let m = BraidingMatrix::new(2, qs.clone()).unwrap();
        let e1 = IntVector::unit(2, 0);
        let e2 = IntVector::unit(2, 1);
        assert_eq!(chi_eval(&m, &e1, &e2).unwrap(), qs[1]);
        let s = IntVector(vec![1, 1]);
        let all = qs[0]
            .mul(&qs[1])
            .unwrap()
            .mul(&qs[2])
            .unwrap()
            .mul(&qs[3])
            .unwrap();
        assert_eq!(chi_eval(&m, &s, &s).unwrap(), all);
        assert!(chi_eval(&m, &IntVector::zero(2), &s).unwrap().is_one());
    }

    #[test]
    fn chi_dimension_mismatch() {
        let m = row2();
        assert!(matches!(
            chi_eval(&m, &IntVector::zero(3), &IntVector::zero(2)),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn cartan_examples() {
        let g = ValueGroup::new(1, 2).unwrap();
        let q = g.generic(0).unwrap();
        let one = g.one();
        let minus = g.minus_one().unwrap();
        let q_inv2 = q.pow(-2).unwrap();

        assert_eq!(cartan_from(&q, &q_inv2), CartanEntry::Defined(2));
        assert_eq!(cartan_from(&minus, &q), CartanEntry::Defined(1));
        assert_eq!(cartan_from(&one, &q), CartanEntry::Undefined);
        assert_eq!(cartan_from(&q, &one), CartanEntry::Defined(0));
    }

    #[test]
    fn cartan_takes_minimum_of_both_branches() {
        let g = ValueGroup::new(0, 12).unwrap();
        // ζ^2 has order 6, so branch (b) alone gives 5.
        // 2m ≡ 4 (mod 12) gives 2.
        assert_eq!(
            cartan_from(&g.root(2), &g.root(-4)),
            CartanEntry::Defined(2)
        );
        // 2m ≡ 10 (mod 12) gives 5: both branches agree.
        assert_eq!(cartan_from(&g.root(2), &g.root(2)), CartanEntry::Defined(5));
        // 2m ≡ 11 (mod 12) is unsolvable; only branch (b) remains.
        assert_eq!(cartan_from(&g.root(2), &g.root(1)), CartanEntry::Defined(5));
    }

    #[test]
    fn min_power_solution_with_free_parts() {
        let g = ValueGroup::new(2, 6).unwrap();
        let x = g.value(vec![2, 0], 1).unwrap();
        let y = g.value(vec![-6, 0], 3).unwrap();
        assert_eq!(min_power_solution(&x, &y), Some(3));
        let y_bad = g.value(vec![-6, 1], 3).unwrap();
        assert_eq!(min_power_solution(&x, &y_bad), None);
        let y_neg = g.value(vec![6, 0], 0).unwrap();
        assert_eq!(min_power_solution(&x, &y_neg), None);
    }

    #[test]
    fn matrix_at_identity_basis_is_itself() {
        let m = row2();
        assert_eq!(matrix_at_basis(&m, &OrderedBasis::standard(2)).unwrap(), m);
    }

    #[test]
    fn matrix_at_reflected_basis() {
        let m = row2();
        let basis = OrderedBasis::new(vec![IntVector(vec![-1, 0]), IntVector(vec![1, 1])]).unwrap();
        let at = matrix_at_basis(&m, &basis).unwrap();
        assert_eq!(at.get(0, 0), &q_pow(1));
        assert_eq!(at.get(1, 1), &q_pow(1));
        let e = basis.vectors();
        let lhs = at.symmetrized(0, 1).unwrap();
        let rhs = chi_eval(&m, &e[0], &e[1])
            .unwrap()
            .mul(&chi_eval(&m, &e[1], &e[0]).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn shear_agrees_with_direct_evaluation() {
        let g = ValueGroup::new(2, 12).unwrap();
        let entries = vec![
            g.value(vec![1, 0], 5).unwrap(),
            g.value(vec![0, 1], 3).unwrap(),
            g.value(vec![-1, 2], 7).unwrap(),
            g.value(vec![0, -1], 11).unwrap(),
        ];
        let m = BraidingMatrix::new(2, entries).unwrap();
        let sheared = shear_matrix(&m, 0, &[-2, 3]).unwrap();
        let basis = OrderedBasis::new(vec![IntVector(vec![-1, 0]), IntVector(vec![3, 1])]).unwrap();
        assert_eq!(sheared, matrix_at_basis(&m, &basis).unwrap());
    }

    #[test]
    fn twist_examples() {
        let g = ValueGroup::new(2, 1).unwrap();
        let q = g.generic(0).unwrap();
        let t = g.generic(1).unwrap();
        let one = g.one();
        let qi = q.inv().unwrap();
        let a = BraidingMatrix::rank2(q.clone(), one.clone(), qi.clone(), q.clone()).unwrap();
        let twisted = BraidingMatrix::rank2(
            q.clone(),
            t.clone(),
            qi.mul(&t.inv().unwrap()).unwrap(),
            q.clone(),
        )
        .unwrap();
        assert!(twist_equivalent(&a, &twisted).unwrap());
        let b = BraidingMatrix::rank2(q.clone(), qi.clone(), one.clone(), q.clone()).unwrap();
        assert!(twist_equivalent(&a, &b).unwrap());
        let c = BraidingMatrix::rank2(q.clone(), one, q.pow(-2).unwrap(), q.clone()).unwrap();
        assert!(!twist_equivalent(&a, &c).unwrap());
        let rank1 = BraidingMatrix::new(1, vec![q]).unwrap();
        assert!(twist_equivalent(&a, &rank1).is_err());
    }

    #[test]
    fn permuted_swaps_rank2() {
        let m = row2();
        let p = m.permuted(&[1, 0]).unwrap();
        assert_eq!(p.get(0, 1), m.get(1, 0));
        assert_eq!(p.get(0, 0), m.get(1, 1));
    }
}
