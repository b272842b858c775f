//! Rank-2 decision machinery.
//!
//! In rank 2 the Weyl groupoid is explored by two chains of bases,
//! `E_{l+1} = τ(s_{1,E_l}(E_l))`, started at `E₀` and at `τ(E₀)`. The braiding
//! is finite-type exactly when both chains return to their start. Each chain
//! step only depends on the triple `(q11, q12·q21, q22)` at the current basis,
//! so once that triple repeats the whole future is known and the chain can be
//! decided with `SL(2,Z)` arguments.

mod figure1;

use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

pub use figure1::{
    figure1_classify, figure1_rows, Exclusion, Figure1Match, Figure1Row, GenericParam, Mono, Param,
    Params, Substitution, Variant,
};

use crate::bicharacter::{cartan_from, matrix_at_basis, BraidingMatrix, CartanEntry};
use crate::error::{Error, Result};
use crate::groupoid::OrderedBasis;
use crate::values::GroupValue;

/// A 2×2 integer matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2Z {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2Z {
    pub const IDENTITY: Mat2Z = Mat2Z::new(1, 0, 0, 1);
    /// The transposition `τ̃`.
    pub const SWAP: Mat2Z = Mat2Z::new(0, 1, 1, 0);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    /// `[[m, -1], [1, 0]]`, one chain step `T̃ τ̃` in local coordinates.
    pub const fn step(m: i64) -> Self {
        Self::new(m, -1, 1, 0)
    }

    pub fn det(&self) -> i128 {
        self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128
    }

    pub fn trace(&self) -> i128 {
        self.a as i128 + self.d as i128
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.a, -self.b, -self.c, -self.d)
    }

    pub fn checked_mul(&self, o: &Self) -> Option<Self> {
        let dot = |x: i64, y: i64, z: i64, w: i64| x.checked_mul(y)?.checked_add(z.checked_mul(w)?);
        Some(Self::new(
            dot(self.a, o.a, self.b, o.c)?,
            dot(self.a, o.b, self.b, o.d)?,
            dot(self.c, o.a, self.d, o.c)?,
            dot(self.c, o.b, self.d, o.d)?,
        ))
    }

    pub fn checked_pow(&self, k: u32) -> Option<Self> {
        (0..k).try_fold(Self::IDENTITY, |acc, _| acc.checked_mul(self))
    }

    /// Inverse of a matrix with determinant ±1.
    pub fn unimodular_inverse(&self) -> Option<Self> {
        match self.det() {
            1 => Some(Self::new(self.d, -self.b, -self.c, self.a)),
            -1 => Some(Self::new(-self.d, self.b, self.c, -self.a)),
            _ => None,
        }
    }
}

impl Mul for Mat2Z {
    type Output = Mat2Z;

    /// Panics on overflow; use [`Mat2Z::checked_mul`] for untrusted sizes.
    fn mul(self, o: Mat2Z) -> Mat2Z {
        self.checked_mul(&o).expect("Mat2Z product overflowed")
    }
}

impl fmt::Display for Mat2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Whether `A ∈ GL(2,Z)` has finite multiplicative order.
///
/// For determinant 1 this is the classical criterion (`A = ±id` or
/// `|tr A| ≤ 1`); for determinant −1 the order is finite exactly when the
/// trace vanishes, in which case `A² = id`.
pub fn sl2_order_finite(m: &Mat2Z) -> Result<bool> {
    let det = m.det();
    match det {
        1 => Ok(*m == Mat2Z::IDENTITY
            || *m == Mat2Z::IDENTITY.neg()
            || (-1..=1).contains(&m.trace())),
        -1 => Ok(m.trace() == 0),
        _ => Err(Error::NotInvertible(
            det.clamp(i64::MIN as i128, i64::MAX as i128) as i64,
        )),
    }
}

/// True iff every generator is `[[a, -b], [c, -d]]` with `0 < d < M·b < a`
/// and determinant 1; the semigroup they generate then avoids the identity.
pub fn subslz_certificate(generators: &[Mat2Z], bound: u64) -> bool {
    !generators.is_empty()
        && generators.iter().all(|g| {
            let (a, b, d) = (g.a as i128, -(g.b as i128), -(g.d as i128));
            let mb = bound as i128 * b;
            g.det() == 1 && 0 < d && d < mb && mb < a
        })
}

/// Which basis a reflection chain starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChainStart {
    /// `E₀`
    Standard,
    /// `τ(E₀)`
    Transposed,
}

impl ChainStart {
    pub fn basis(self) -> OrderedBasis {
        match self {
            ChainStart::Standard => OrderedBasis::standard(2),
            ChainStart::Transposed => OrderedBasis::standard(2).swapped(0, 1),
        }
    }
}

/// Twist data `(q11, q12·q21, q22)` at one basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Triple {
    q11: GroupValue,
    product: GroupValue,
    q22: GroupValue,
}

impl Triple {
    fn of(m: &BraidingMatrix) -> Result<Self> {
        Ok(Self {
            q11: m.get(0, 0).clone(),
            product: m.symmetrized(0, 1)?,
            q22: m.get(1, 1).clone(),
        })
    }

    /// `(m, p)` at this triple, or `None` when `m_12` is undefined.
    fn cartan(&self) -> Result<Option<(u64, GroupValue)>> {
        let CartanEntry::Defined(m) = cartan_from(&self.q11, &self.product) else {
            return Ok(None);
        };
        let mi = i64::try_from(m).map_err(|_| Error::Overflow)?;
        let lhs = self.q11.pow(mi)?.mul(&self.product)?;
        let p = if lhs.is_one() {
            self.q11.group().one()
        } else {
            self.q11.inv()?.mul(&self.product)?
        };
        Ok(Some((m, p)))
    }

    /// The triple at the next chain basis.
    fn advance(&self, m: u64, p: &GroupValue) -> Result<Self> {
        let mi = i64::try_from(m).map_err(|_| Error::Overflow)?;
        Ok(Self {
            q11: p.pow(mi)?.mul(&self.q22)?,
            product: p.pow(-2)?.mul(&self.product)?,
            q22: self.q11.clone(),
        })
    }
}

/// One step of a reflection chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainState {
    pub step: usize,
    pub basis: OrderedBasis,
    /// `m_12` at `basis`.
    pub m: u64,
    pub p: GroupValue,
    pub q11: GroupValue,
    pub q12q21: GroupValue,
    pub q22: GroupValue,
    /// `T_{step-1} ⋯ T_0` in `E₀` coordinates.
    pub cumulative: Mat2Z,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainOutcome {
    /// The chain returned to its start after `period` steps; `states` has
    /// `period + 1` entries, the last one being the return.
    Periodic {
        period: usize,
        states: Vec<ChainState>,
    },
    UndefinedAt {
        step: usize,
        states: Vec<ChainState>,
    },
    NotPeriodicWithinCap {
        states: Vec<ChainState>,
    },
}

impl ChainOutcome {
    pub fn is_periodic(&self) -> bool {
        matches!(self, ChainOutcome::Periodic { .. })
    }

    pub fn states(&self) -> &[ChainState] {
        match self {
            ChainOutcome::Periodic { states, .. }
            | ChainOutcome::UndefinedAt { states, .. }
            | ChainOutcome::NotPeriodicWithinCap { states } => states,
        }
    }
}

fn basis_matrix(b: &OrderedBasis) -> Mat2Z {
    let v = b.vectors();
    Mat2Z::new(v[0].0[0], v[1].0[0], v[0].0[1], v[1].0[1])
}

fn basis_from(m: &Mat2Z) -> OrderedBasis {
    use crate::bicharacter::IntVector;
    OrderedBasis::new(vec![IntVector(vec![m.a, m.c]), IntVector(vec![m.b, m.d])])
        .expect("product of unimodular matrices is unimodular")
}

fn require_rank2(q: &BraidingMatrix) -> Result<()> {
    if q.rank() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            found: q.rank(),
        });
    }
    Ok(())
}

/// Runs the reflection chain from `start` for at most `cap` steps.
///
/// The structure constants are advanced with the closed-form recursion and
/// compared against a direct evaluation at every basis; a disagreement is an
/// [`Error::Invariant`].
pub fn rank2_chain(q: &BraidingMatrix, start: ChainStart, cap: usize) -> Result<ChainOutcome> {
    require_rank2(q)?;
    let start_basis = start.basis();
    let start_matrix = basis_matrix(&start_basis);
    let mut frame = start_matrix;
    let mut basis = start_basis.clone();
    let mut triple = Triple::of(&matrix_at_basis(q, &basis)?)?;
    let mut cumulative = Mat2Z::IDENTITY;
    let mut states = Vec::new();

    for step in 0.. {
        let direct = match matrix_at_basis(q, &basis) {
            Ok(m) => Triple::of(&m)?,
            Err(Error::Overflow) => return Ok(ChainOutcome::NotPeriodicWithinCap { states }),
            Err(e) => return Err(e),
        };
        if direct != triple {
            return Err(Error::Invariant(format!(
                "chain recursion drifted from direct evaluation at step {step}"
            )));
        }
        let Some((m, p)) = triple.cartan()? else {
            return Ok(ChainOutcome::UndefinedAt { step, states });
        };
        states.push(ChainState {
            step,
            basis: basis.clone(),
            m,
            p: p.clone(),
            q11: triple.q11.clone(),
            q12q21: triple.product.clone(),
            q22: triple.q22.clone(),
            cumulative,
        });
        if step > 0 && basis == start_basis {
            return Ok(ChainOutcome::Periodic {
                period: step,
                states,
            });
        }
        if step >= cap {
            return Ok(ChainOutcome::NotPeriodicWithinCap { states });
        }

        // E_{l+1} = E_l · [[m, -1], [1, 0]] and T_l = E_{l+1} τ̃ E_l⁻¹.
        let Ok(mi) = i64::try_from(m) else {
            return Ok(ChainOutcome::NotPeriodicWithinCap { states });
        };
        let next = frame.checked_mul(&Mat2Z::step(mi));
        let reflection = next.and_then(|n| {
            n.checked_mul(&Mat2Z::SWAP)?
                .checked_mul(&frame.unimodular_inverse()?)
        });
        let (Some(next), Some(reflection)) = (next, reflection) else {
            return Ok(ChainOutcome::NotPeriodicWithinCap { states });
        };
        let Some(c) = reflection.checked_mul(&cumulative) else {
            return Ok(ChainOutcome::NotPeriodicWithinCap { states });
        };
        cumulative = c;
        frame = next;
        basis = basis_from(&frame);
        triple = match triple.advance(m, &p) {
            Ok(t) => t,
            Err(Error::Overflow) => return Ok(ChainOutcome::NotPeriodicWithinCap { states }),
            Err(e) => return Err(e),
        };
    }
    unreachable!()
}

/// Proof that a rank-2 Weyl groupoid is infinite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfinityCertificate {
    pub start: ChainStart,
    /// First step of the eventually periodic tail of `m` values.
    pub tail_start: usize,
    /// Period of the tail.
    pub period: usize,
    /// `m` values over one period of the tail.
    pub tail: Vec<u64>,
    pub kind: CertificateKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateKind {
    /// Consecutive pair products of the tail all satisfy
    /// [`subslz_certificate`] with this bound, so no even-length tail product
    /// is the identity.
    Semigroup { generators: Vec<Mat2Z>, bound: u64 },
    /// The product over one tail period has infinite order, so the chain
    /// bases at multiples of the period are pairwise distinct.
    InfiniteOrder { period_product: Mat2Z },
}

/// Looks for an infinity certificate on either chain of a rank-2 braiding,
/// iterating the twist data for at most `max_steps` steps per chain.
pub fn certify_infinite(
    q: &BraidingMatrix,
    max_steps: usize,
) -> Result<Option<InfinityCertificate>> {
    require_rank2(q)?;
    for start in [ChainStart::Standard, ChainStart::Transposed] {
        let local = matrix_at_basis(q, &start.basis())?;
        if let Some(cert) = certify_chain(&local, start, max_steps)? {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

fn certify_chain(
    local: &BraidingMatrix,
    start: ChainStart,
    max_steps: usize,
) -> Result<Option<InfinityCertificate>> {
    let mut seen: HashMap<Triple, usize> = HashMap::new();
    let mut ms = Vec::new();
    let mut triple = Triple::of(local)?;
    let (tail_start, period) = loop {
        if let Some(&first) = seen.get(&triple) {
            break (first, ms.len() - first);
        }
        if ms.len() >= max_steps {
            return Ok(None);
        }
        let Some((m, p)) = triple.cartan()? else {
            return Ok(None);
        };
        seen.insert(triple.clone(), ms.len());
        ms.push(m);
        triple = match triple.advance(m, &p) {
            Ok(t) => t,
            Err(Error::Overflow) => return Ok(None),
            Err(e) => return Err(e),
        };
    };

    let tail: Vec<u64> = ms[tail_start..].to_vec();
    let Some(steps) = tail
        .iter()
        .map(|&m| i64::try_from(m).ok())
        .collect::<Option<Vec<_>>>()
    else {
        return Ok(None);
    };
    let window = if period % 2 == 0 { period } else { 2 * period };
    let pairs: Option<Vec<Mat2Z>> = (0..window)
        .step_by(2)
        .map(|k| Mat2Z::step(steps[k % period]).checked_mul(&Mat2Z::step(steps[(k + 1) % period])))
        .collect();
    if let Some(generators) = pairs {
        let mut distinct = generators.clone();
        distinct.sort();
        distinct.dedup();
        for bound in 1..=3 {
            if subslz_certificate(&distinct, bound) {
                return Ok(Some(InfinityCertificate {
                    start,
                    tail_start,
                    period,
                    tail,
                    kind: CertificateKind::Semigroup {
                        generators: distinct,
                        bound,
                    },
                }));
            }
        }
    }
    let product = steps
        .iter()
        .try_fold(Mat2Z::IDENTITY, |acc, &m| acc.checked_mul(&Mat2Z::step(m)));
    let Some(period_product) = product else {
        return Ok(None);
    };
    if !sl2_order_finite(&period_product)? {
        return Ok(Some(InfinityCertificate {
            start,
            tail_start,
            period,
            tail,
            kind: CertificateKind::InfiniteOrder { period_product },
        }));
    }
    Ok(None)
}

/// Necessary condition for a rank-2 braiding to have finitely many roots.
pub fn lemma_no1_filter(q: &BraidingMatrix) -> Result<bool> {
    require_rank2(q)?;
    let (q11, q12, q21, q22) = (q.get(0, 0), q.get(0, 1), q.get(1, 0), q.get(1, 1));
    let prod = q12.mul(q21)?;

    let first = prod.is_one()
        || q11.mul(&prod)?.is_one()
        || prod.mul(q22)?.is_one()
        || q11.is_minus_one()
        || q22.is_minus_one();
    if first {
        return Ok(true);
    }
    let big = q11.mul(&prod.pow(2)?)?.mul(q22)?;
    if !big.is_minus_one() {
        return Ok(false);
    }
    Ok(q11.is_primitive_root(3)
        || q11.is_primitive_root(4)
        || q11.pow(2)?.mul(&prod)?.is_one()
        || q11.pow(3)?.mul(&prod)?.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::values::ValueGroup;

    fn generic(entries: [i64; 4]) -> BraidingMatrix {
        let g = ValueGroup::new(1, 2).unwrap();
        let q = g.generic(0).unwrap();
        BraidingMatrix::new(2, entries.iter().map(|&k| q.pow(k).unwrap()).collect()).unwrap()
    }

    #[test]
    fn order_examples() {
        assert!(sl2_order_finite(&Mat2Z::IDENTITY).unwrap());
        assert!(sl2_order_finite(&Mat2Z::new(1, -1, 1, 0)).unwrap());
        assert_eq!(
            Mat2Z::new(1, -1, 1, 0).checked_pow(6),
            Some(Mat2Z::IDENTITY)
        );
        assert!(!sl2_order_finite(&Mat2Z::new(1, 1, 0, 1)).unwrap());
        assert!(sl2_order_finite(&Mat2Z::SWAP).unwrap());
        assert!(matches!(
            sl2_order_finite(&Mat2Z::new(2, 0, 0, 1)),
            Err(Error::NotInvertible(2))
        ));
    }

    #[test]
    fn subsemigroup_examples() {
        assert!(subslz_certificate(&[Mat2Z::new(3, -2, 2, -1)], 1));
        assert_eq!(Mat2Z::step(2) * Mat2Z::step(2), Mat2Z::new(3, -2, 2, -1));
        assert!(!subslz_certificate(&[Mat2Z::IDENTITY], 1));
        assert!(!subslz_certificate(&[Mat2Z::new(1, -1, 1, 0)], 1));
        assert!(!subslz_certificate(&[], 1));
    }

    #[test]
    fn chain_row2_is_periodic() {
        let q = generic([1, 0, -1, 1]);
        let out = rank2_chain(&q, ChainStart::Standard, 100).unwrap();
        let s0 = &out.states()[0];
        assert_eq!(s0.m, 1);
        assert!(s0.p.is_one());
        let s1 = &out.states()[1];
        let qv = q.get(0, 0);
        assert_eq!(&s1.q11, qv);
        assert_eq!(s1.q12q21, qv.inv().unwrap());
        assert_eq!(&s1.q22, qv);
        let ChainOutcome::Periodic { period, states } = out else {
            panic!("expected periodic")
        };
        assert_eq!(period, 6);
        assert_eq!(states.last().unwrap().cumulative, Mat2Z::IDENTITY);
    }

    #[test]
    fn chain_row3_second_variant_first_step() {
        let g = ValueGroup::new(1, 2).unwrap();
        let q = g.generic(0).unwrap();
        let minus = g.minus_one().unwrap();
        let one = g.one();
        let m = BraidingMatrix::rank2(minus.clone(), one, q.clone(), minus.clone()).unwrap();
        let out = rank2_chain(&m, ChainStart::Standard, 100).unwrap();
        let s0 = &out.states()[0];
        assert_eq!(s0.m, 1);
        let minus_q = q.mul(&minus).unwrap();
        assert_eq!(s0.p, minus_q);
        assert_eq!(out.states()[1].q11, q);
        assert!(out.is_periodic());
    }

    #[test]
    fn chain_affine_never_closes() {
        let q = generic([1, 0, -2, 1]);
        let out = rank2_chain(&q, ChainStart::Standard, 50).unwrap();
        assert!(matches!(out, ChainOutcome::NotPeriodicWithinCap { .. }));
        let cert = certify_infinite(&q, 100).unwrap().expect("certificate");
        let CertificateKind::Semigroup { generators, bound } = &cert.kind else {
            panic!("expected semigroup certificate, got {cert:?}")
        };
        assert_eq!(*bound, 1);
        assert_eq!(generators, &vec![Mat2Z::new(3, -2, 2, -1)]);
    }

    #[test]
    fn finite_cases_have_no_certificate() {
        for e in [[1, 0, -1, 1], [1, 0, -2, 2], [1, 0, -3, 3], [1, 0, 0, 1]] {
            assert_eq!(certify_infinite(&generic(e), 1000).unwrap(), None);
        }
    }

    #[test]
    fn lemma_examples() {
        assert!(lemma_no1_filter(&generic([1, 0, -3, 3])).unwrap());
        let g = ValueGroup::new(3, 2).unwrap();
        let [u, v, w] = [0, 1, 2].map(|k| g.generic(k).unwrap());
        let free = BraidingMatrix::rank2(u, g.one(), v, w).unwrap();
        assert!(!lemma_no1_filter(&free).unwrap());
        let q = g.generic(0).unwrap();
        let minus = g.minus_one().unwrap();
        let m = BraidingMatrix::rank2(minus.clone(), g.one(), q, minus).unwrap();
        assert!(lemma_no1_filter(&m).unwrap());
    }
}
