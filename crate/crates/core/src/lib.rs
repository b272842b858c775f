//! Exact computations with diagonal braidings.
//!
//! A braiding matrix `(q_ij)` with entries in `Z^F × Z/N` determines a
//! bicharacter on `Z^n`. From it this crate builds the Weyl groupoid by
//! reflecting bases, reads off the root system when the groupoid is finite,
//! and in rank 2 decides finiteness outright and matches the input against
//! the classification table.
//!
//! ```
//! use diagroot::{generate, BraidingMatrix, OrderedBasis, ValueGroup};
//!
//! let g = ValueGroup::new(0, 3).unwrap();
//! let q = g.root(1);
//! let m = BraidingMatrix::rank2(q.clone(), g.one(), q.inv().unwrap(), q).unwrap();
//! let out = generate(&m, &OrderedBasis::standard(2), 1000).unwrap();
//! assert_eq!(out.root_system().unwrap().positive().len(), 3);
//! ```

pub mod bicharacter;
pub mod dimension;
pub mod equivalence;
mod error;
pub mod groupoid;
mod lattice;
pub mod rank2;
pub mod values;

pub use bicharacter::{
    cartan_entry, chi_eval, matrix_at_basis, twist_equivalent, BraidingMatrix, CartanEntry,
    IntVector,
};
pub use dimension::{nichols_dimension, pbw_height, DimensionVerdict, Height};
pub use equivalence::{weyl_equivalent, weyl_orbit, TwistClass};
pub use error::{Error, Result};
pub use groupoid::{
    generate, positive_split, reflect, roots_of, ArithmeticRootSystem, Edge, GenerationOutcome,
    OrderedBasis, Reflection, ReflectionMap, WeylGroupoid, DEFAULT_CAP,
};
pub use rank2::{
    certify_infinite, figure1_classify, figure1_rows, lemma_no1_filter, rank2_chain,
    sl2_order_finite, subslz_certificate, ChainOutcome, ChainStart, ChainState, Figure1Match,
    Figure1Row, InfinityCertificate, Mat2Z,
};
pub use values::{GroupValue, Order, ValueGroup};
