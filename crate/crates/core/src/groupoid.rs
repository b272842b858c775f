//! Ordered bases of `Z^n`, the pseudo-reflections `s_{i,E}`, and the closure
//! that produces the Weyl groupoid and its root set.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bicharacter::{matrix_at_basis, shear_matrix, BraidingMatrix, CartanEntry, IntVector};
use crate::error::{Error, Result};
use crate::lattice::{self, IntMatrix};
use crate::rank2::{certify_infinite, InfinityCertificate};

/// Default number of bases the closure may visit before giving up.
pub const DEFAULT_CAP: usize = 100_000;

/// An ordered `Z`-basis of `Z^n`, vectors written in `E₀` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrderedBasis {
    vectors: Vec<IntVector>,
}

impl OrderedBasis {
    pub fn new(vectors: Vec<IntVector>) -> Result<Self> {
        let n = vectors.len();
        if let Some(bad) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::Dimension {
                expected: n,
                found: bad.len(),
            });
        }
        let basis = Self { vectors };
        let det = lattice::determinant(&basis.columns()).ok_or(Error::Overflow)?;
        if det != 1 && det != -1 {
            return Err(Error::NotUnimodular(det));
        }
        Ok(basis)
    }

    pub fn standard(n: usize) -> Self {
        Self {
            vectors: (0..n).map(|i| IntVector::unit(n, i)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[IntVector] {
        &self.vectors
    }

    /// The basis with positions `i` and `j` exchanged.
    pub fn swapped(&self, i: usize, j: usize) -> Self {
        let mut vectors = self.vectors.clone();
        vectors.swap(i, j);
        Self { vectors }
    }

    /// Matrix whose columns are the basis vectors.
    pub(crate) fn columns(&self) -> IntMatrix {
        let n = self.rank();
        (0..n)
            .map(|r| self.vectors.iter().map(|v| v.0[r]).collect())
            .collect()
    }

    /// Coordinates of `v` with respect to this basis.
    pub fn coordinates(&self, v: &IntVector) -> Result<IntVector> {
        let inv = lattice::unimodular_inverse(&self.columns())?;
        Ok(IntVector(lattice::apply(&inv, &v.0)?))
    }
}

impl fmt::Display for OrderedBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.vectors.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// The automorphism `s_{i,E}` of `Z^n`, as a matrix in `E₀` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReflectionMap {
    matrix: IntMatrix,
    pivot: usize,
}

impl ReflectionMap {
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn apply(&self, v: &IntVector) -> Result<IntVector> {
        Ok(IntVector(lattice::apply(&self.matrix, &v.0)?))
    }

    pub fn is_involution(&self) -> Result<bool> {
        Ok(lattice::mul(&self.matrix, &self.matrix)? == lattice::identity(self.matrix.len()))
    }

    /// `rk(T - id)`; equals 1 for a pseudo-reflection.
    pub fn defect_rank(&self) -> usize {
        let n = self.matrix.len();
        let shifted: IntMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.matrix[i][j] - i64::from(i == j))
                    .collect()
            })
            .collect();
        lattice::rank(&shifted)
    }
}

/// Outcome of applying `s_{i,E}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reflection {
    Defined {
        map: ReflectionMap,
        image: OrderedBasis,
    },
    /// `m_{pivot,other}` has no solution at this basis.
    Undefined { pivot: usize, other: usize },
}

/// Shifts `c_j` with `s(e_j) = e_j + c_j e_pivot`, or the first `j` whose
/// `m_{pivot,j}` is undefined.
fn reflection_shifts(
    local: &BraidingMatrix,
    pivot: usize,
) -> Result<std::result::Result<Vec<i64>, usize>> {
    let n = local.rank();
    let mut shifts = vec![0i64; n];
    for (j, c) in shifts.iter_mut().enumerate() {
        if j == pivot {
            *c = -2;
            continue;
        }
        match local.cartan(pivot, j)? {
            CartanEntry::Defined(m) => *c = i64::try_from(m).map_err(|_| Error::Overflow)?,
            CartanEntry::Undefined => return Ok(Err(j)),
        }
    }
    Ok(Ok(shifts))
}

fn sheared_basis(basis: &OrderedBasis, pivot: usize, shifts: &[i64]) -> Result<OrderedBasis> {
    let ei = &basis.vectors[pivot];
    let vectors = basis
        .vectors
        .iter()
        .zip(shifts)
        .map(|(ej, &c)| {
            ei.checked_scale(c)
                .and_then(|s| ej.checked_add(&s))
                .ok_or(Error::Overflow)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrderedBasis { vectors })
}

fn reflection_matrix(basis: &OrderedBasis, pivot: usize, shifts: &[i64]) -> Result<IntMatrix> {
    // T = id + e_pivot ⊗ φ with φ(e_j) = c_j, i.e. φ = c · B⁻¹.
    let n = basis.rank();
    let inv = lattice::unimodular_inverse(&basis.columns())?;
    let phi = lattice::mul(&[shifts.to_vec()], &inv)?.remove(0);
    let ei = &basis.vectors[pivot].0;
    let mut t = lattice::identity(n);
    for r in 0..n {
        for c in 0..n {
            t[r][c] = ei[r]
                .checked_mul(phi[c])
                .and_then(|x| t[r][c].checked_add(x))
                .ok_or(Error::Overflow)?;
        }
    }
    Ok(t)
}

/// Applies `s_{pivot,E}` to `E`.
pub fn reflect(q: &BraidingMatrix, basis: &OrderedBasis, pivot: usize) -> Result<Reflection> {
    if pivot >= basis.rank() {
        return Err(Error::Index {
            index: pivot,
            rank: basis.rank(),
        });
    }
    let local = matrix_at_basis(q, basis)?;
    let shifts = match reflection_shifts(&local, pivot)? {
        Ok(s) => s,
        Err(other) => return Ok(Reflection::Undefined { pivot, other }),
    };
    let image = sheared_basis(basis, pivot, &shifts)?;
    let matrix = reflection_matrix(basis, pivot, &shifts)?;
    Ok(Reflection::Defined {
        map: ReflectionMap { matrix, pivot },
        image,
    })
}

/// An `i`-labelled edge `from --s_i--> to` between node indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub pivot: usize,
    pub to: usize,
}

/// The objects and reflection edges of `W_{χ,E}`.
#[derive(Clone, Debug)]
pub struct WeylGroupoid {
    braiding: BraidingMatrix,
    nodes: Vec<OrderedBasis>,
    local: Vec<BraidingMatrix>,
    edges: Vec<Edge>,
}

impl WeylGroupoid {
    pub fn braiding(&self) -> &BraidingMatrix {
        &self.braiding
    }

    pub fn origin(&self) -> &OrderedBasis {
        &self.nodes[0]
    }

    /// Bases in discovery order; index 0 is the origin.
    pub fn nodes(&self) -> &[OrderedBasis] {
        &self.nodes
    }

    /// Every directed edge; each reflection appears once from each end.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The braiding matrix at node `k`.
    pub fn matrix_at(&self, k: usize) -> &BraidingMatrix {
        &self.local[k]
    }

    pub fn node_set(&self) -> BTreeSet<OrderedBasis> {
        self.nodes.iter().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// The root set `Δ`, its positive part and the data it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithmeticRootSystem {
    roots: BTreeSet<IntVector>,
    positive: BTreeSet<IntVector>,
    braiding: BraidingMatrix,
    base: OrderedBasis,
}

impl ArithmeticRootSystem {
    pub fn roots(&self) -> &BTreeSet<IntVector> {
        &self.roots
    }

    pub fn positive(&self) -> &BTreeSet<IntVector> {
        &self.positive
    }

    pub fn braiding(&self) -> &BraidingMatrix {
        &self.braiding
    }

    pub fn base(&self) -> &OrderedBasis {
        &self.base
    }

    /// No root is a rational multiple of another one except its negative.
    pub fn check_reduced(&self) -> Result<()> {
        let roots: Vec<&IntVector> = self.roots.iter().collect();
        for (k, a) in roots.iter().enumerate() {
            for b in &roots[k + 1..] {
                if proportional(a, b) && a.neg() != **b {
                    return Err(Error::Invariant(format!(
                        "roots {a} and {b} are proportional"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn proportional(a: &IntVector, b: &IntVector) -> bool {
    let n = a.len();
    (0..n).all(|i| {
        (i + 1..n).all(|j| a.0[i] as i128 * b.0[j] as i128 == a.0[j] as i128 * b.0[i] as i128)
    })
}

/// Everything [`generate`] can conclude.
#[derive(Clone, Debug)]
pub enum GenerationOutcome {
    Finite {
        groupoid: WeylGroupoid,
        roots: ArithmeticRootSystem,
    },
    /// `m_{pivot,other}` is undefined at `basis`.
    NotArithmetic {
        basis: OrderedBasis,
        pivot: usize,
        other: usize,
    },
    /// Rank 2 only: a reflection chain provably never closes.
    CertifiedInfinite {
        certificate: InfinityCertificate,
        visited: usize,
    },
    CapExceeded {
        visited: usize,
    },
}

impl GenerationOutcome {
    pub fn is_finite(&self) -> bool {
        matches!(self, GenerationOutcome::Finite { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            GenerationOutcome::Finite { .. } => "finite",
            GenerationOutcome::NotArithmetic { .. } => "not_arithmetic",
            GenerationOutcome::CertifiedInfinite { .. } => "certified_infinite",
            GenerationOutcome::CapExceeded { .. } => "cap_exceeded",
        }
    }

    pub fn root_system(&self) -> Option<&ArithmeticRootSystem> {
        match self {
            GenerationOutcome::Finite { roots, .. } => Some(roots),
            _ => None,
        }
    }

    pub fn groupoid(&self) -> Option<&WeylGroupoid> {
        match self {
            GenerationOutcome::Finite { groupoid, .. } => Some(groupoid),
            _ => None,
        }
    }
}

/// Steps a rank-2 infinity certificate search may take.
const CERTIFICATE_STEPS: usize = 4096;

enum Closure {
    Done(WeylGroupoid),
    Undefined {
        basis: OrderedBasis,
        pivot: usize,
        other: usize,
    },
    Inconclusive {
        visited: usize,
    },
}

fn closure(q: &BraidingMatrix, origin: &OrderedBasis, cap: usize) -> Result<Closure> {
    let n = q.rank();
    let mut index: HashMap<OrderedBasis, usize> = HashMap::new();
    let mut nodes = vec![origin.clone()];
    let mut local = vec![matrix_at_basis(q, origin)?];
    let mut edges = Vec::new();
    index.insert(origin.clone(), 0);
    let mut queue = VecDeque::from([0usize]);

    while let Some(cur) = queue.pop_front() {
        for pivot in 0..n {
            let shifts = match reflection_shifts(&local[cur], pivot)? {
                Ok(s) => s,
                Err(other) => {
                    return Ok(Closure::Undefined {
                        basis: nodes[cur].clone(),
                        pivot,
                        other,
                    })
                }
            };
            let image = match sheared_basis(&nodes[cur], pivot, &shifts) {
                Ok(b) => b,
                Err(Error::Overflow) => {
                    return Ok(Closure::Inconclusive {
                        visited: nodes.len(),
                    })
                }
                Err(e) => return Err(e),
            };
            let to = match index.get(&image) {
                Some(&k) => k,
                None => {
                    if nodes.len() >= cap {
                        return Ok(Closure::Inconclusive {
                            visited: nodes.len() + 1,
                        });
                    }
                    let m = match shear_matrix(&local[cur], pivot, &shifts) {
                        Ok(m) => m,
                        Err(Error::Overflow) => {
                            return Ok(Closure::Inconclusive {
                                visited: nodes.len(),
                            })
                        }
                        Err(e) => return Err(e),
                    };
                    let k = nodes.len();
                    index.insert(image.clone(), k);
                    nodes.push(image);
                    local.push(m);
                    queue.push_back(k);
                    k
                }
            };
            edges.push(Edge {
                from: cur,
                pivot,
                to,
            });
        }
    }

    Ok(Closure::Done(WeylGroupoid {
        braiding: q.clone(),
        nodes,
        local,
        edges,
    }))
}

/// Breadth-first closure of `E0` under all defined reflections.
///
/// Errors only on malformed input (rank mismatch, `E0` not a basis).
pub fn generate(
    q: &BraidingMatrix,
    origin: &OrderedBasis,
    cap: usize,
) -> Result<GenerationOutcome> {
    if origin.rank() != q.rank() {
        return Err(Error::Dimension {
            expected: q.rank(),
            found: origin.rank(),
        });
    }
    let cap = cap.max(1);
    let outcome = match closure(q, origin, cap) {
        Ok(Closure::Done(groupoid)) => {
            let roots = roots_of(&groupoid)?;
            GenerationOutcome::Finite { groupoid, roots }
        }
        Ok(Closure::Undefined {
            basis,
            pivot,
            other,
        }) => GenerationOutcome::NotArithmetic {
            basis,
            pivot,
            other,
        },
        Ok(Closure::Inconclusive { visited }) => inconclusive(q, origin, visited)?,
        Err(Error::Overflow) => inconclusive(q, origin, 0)?,
        Err(e) => return Err(e),
    };
    Ok(outcome)
}

fn inconclusive(
    q: &BraidingMatrix,
    origin: &OrderedBasis,
    visited: usize,
) -> Result<GenerationOutcome> {
    if q.rank() == 2 {
        let local = matrix_at_basis(q, origin)?;
        if let Some(certificate) = certify_infinite(&local, CERTIFICATE_STEPS)? {
            return Ok(GenerationOutcome::CertifiedInfinite {
                certificate,
                visited,
            });
        }
    }
    Ok(GenerationOutcome::CapExceeded { visited })
}

/// `Δ` as the union of all bases of a finite groupoid, split by sign in the
/// coordinates of the origin basis.
pub fn roots_of(groupoid: &WeylGroupoid) -> Result<ArithmeticRootSystem> {
    let roots: BTreeSet<IntVector> = groupoid
        .nodes
        .iter()
        .flat_map(|b| b.vectors.iter().cloned())
        .collect();
    let base = groupoid.origin().clone();
    let standard = base == OrderedBasis::standard(base.rank());
    let mut positive = BTreeSet::new();
    for r in &roots {
        let coords = if standard {
            r.clone()
        } else {
            base.coordinates(r)?
        };
        if coords.is_nonnegative() {
            positive.insert(r.clone());
        } else if !coords.is_nonpositive() {
            return Err(Error::Invariant(format!(
                "root {r} has mixed-sign coordinates"
            )));
        }
    }
    Ok(ArithmeticRootSystem {
        roots,
        positive,
        braiding: groupoid.braiding.clone(),
        base,
    })
}

/// Splits `Δ` into `Δ₊` and `Δ₋`, checking that the split is exact and that
/// `Δ₋ = −Δ₊`.
pub fn positive_split(
    system: &ArithmeticRootSystem,
) -> Result<(BTreeSet<IntVector>, BTreeSet<IntVector>)> {
    let base = &system.base;
    let standard = *base == OrderedBasis::standard(base.rank());
    let mut pos = BTreeSet::new();
    let mut neg = BTreeSet::new();
    for r in &system.roots {
        let c = if standard {
            r.clone()
        } else {
            base.coordinates(r)?
        };
        if c.is_zero() {
            return Err(Error::Invariant("zero vector among roots".into()));
        }
        if c.is_nonnegative() {
            pos.insert(r.clone());
        } else if c.is_nonpositive() {
            neg.insert(r.clone());
        } else {
            return Err(Error::Invariant(format!(
                "root {r} has mixed-sign coordinates"
            )));
        }
    }
    let mirrored: BTreeSet<IntVector> = pos.iter().map(IntVector::neg).collect();
    if mirrored != neg {
        return Err(Error::Invariant(
            "negative roots are not the negatives of the positive ones".into(),
        ));
    }
    if pos != system.positive {
        return Err(Error::Invariant(
            "stored positive roots disagree with the split".into(),
        ));
    }
    Ok((pos, neg))
}
