//! Heights of PBW generators and the resulting dimension verdict.

use num_bigint::BigUint;
use serde::Serialize;

use crate::bicharacter::{chi_eval, BraidingMatrix, IntVector};
use crate::error::Result;
use crate::groupoid::ArithmeticRootSystem;
use crate::values::Order;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Height {
    Finite(u64),
    Infinite,
}

/// Height of the generator of degree `d`: `ord χ(d,d)` when it lies in `[2, ∞)`.
pub fn pbw_height(q: &BraidingMatrix, d: &IntVector) -> Result<Height> {
    Ok(match chi_eval(q, d, d)?.order() {
        Order::Finite(n) if n >= 2 => Height::Finite(n),
        _ => Height::Infinite,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DimensionVerdict {
    /// `value` is the product of the listed heights.
    FiniteDim {
        value: BigUint,
        factors: Vec<(IntVector, u64)>,
    },
    InfiniteDim {
        witness: IntVector,
    },
}

impl DimensionVerdict {
    pub fn value(&self) -> Option<&BigUint> {
        match self {
            DimensionVerdict::FiniteDim { value, .. } => Some(value),
            DimensionVerdict::InfiniteDim { .. } => None,
        }
    }
}

/// Product of the heights over `Δ₊`, or the first positive root (in the order
/// of [`ArithmeticRootSystem::positive`]) whose height is infinite.
pub fn nichols_dimension(
    q: &BraidingMatrix,
    roots: &ArithmeticRootSystem,
) -> Result<DimensionVerdict> {
    let mut value = BigUint::from(1u32);
    let mut factors = Vec::with_capacity(roots.positive().len());
    for d in roots.positive() {
        match pbw_height(q, d)? {
            Height::Finite(h) => {
                value *= h;
                factors.push((d.clone(), h));
            }
            Height::Infinite => return Ok(DimensionVerdict::InfiniteDim { witness: d.clone() }),
        }
    }
    Ok(DimensionVerdict::FiniteDim { value, factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{generate, OrderedBasis};
    use crate::values::ValueGroup;

    fn dim(q: &BraidingMatrix) -> DimensionVerdict {
        let out = generate(q, &OrderedBasis::standard(2), 1000).unwrap();
        nichols_dimension(q, out.root_system().unwrap()).unwrap()
    }

    #[test]
    fn heights() {
        let g = ValueGroup::new(0, 2).unwrap();
        let m = BraidingMatrix::rank2(g.root(1), g.one(), g.one(), g.root(1)).unwrap();
        assert_eq!(
            pbw_height(&m, &IntVector(vec![1, 0])).unwrap(),
            Height::Finite(2)
        );
        assert_eq!(
            pbw_height(&m, &IntVector(vec![0, 0])).unwrap(),
            Height::Infinite
        );

        let g = ValueGroup::new(1, 1).unwrap();
        let q = g.generic(0).unwrap();
        let m = BraidingMatrix::rank2(q.clone(), g.one(), q.inv().unwrap(), q).unwrap();
        assert_eq!(
            pbw_height(&m, &IntVector(vec![1, 1])).unwrap(),
            Height::Infinite
        );
    }

    #[test]
    fn exterior_algebra() {
        let g = ValueGroup::new(0, 2).unwrap();
        let m = BraidingMatrix::rank2(g.root(1), g.one(), g.one(), g.root(1)).unwrap();
        assert_eq!(dim(&m).value(), Some(&BigUint::from(4u32)));
    }

    #[test]
    fn small_quantum_group_a2() {
        let g = ValueGroup::new(0, 3).unwrap();
        let q = g.root(1);
        let m = BraidingMatrix::rank2(q.clone(), g.one(), q.inv().unwrap(), q).unwrap();
        let DimensionVerdict::FiniteDim { value, factors } = dim(&m) else {
            panic!("expected a finite dimension");
        };
        assert_eq!(value, BigUint::from(27u32));
        assert_eq!(factors.len(), 3);
    }

    #[test]
    fn generic_super_row_is_infinite() {
        let g = ValueGroup::new(1, 2).unwrap();
        let q = g.generic(0).unwrap();
        let minus = g.minus_one().unwrap();
        let m = BraidingMatrix::rank2(minus.clone(), g.one(), q, minus).unwrap();
        assert_eq!(
            dim(&m),
            DimensionVerdict::InfiniteDim {
                witness: IntVector(vec![1, 1])
            }
        );
    }
}
