//! Exact Seifert-matrix calculus.
//!
//! Seifert matrices `V` with `V - V^t = J`, the S-equivalence moves relating
//! them, the Alexander module and Blanchfield form they present, the
//! factorization of rational symplectic matrices into integral symplectic and
//! `Δ_n` factors, and the admissible lattices of a scalar space. Everything is
//! exact: rationals, Laurent polynomials and rational functions in `t`.

pub mod chi;
pub mod error;
pub mod forms;
pub mod invariants;
pub mod lattice;
pub mod laurent;
pub mod matrix;
pub mod normal_form;
pub mod ratfunc;
pub mod ring;
pub mod seifert;
pub mod symplectic;
pub mod wire;

use num_bigint::BigInt;

pub use chi::{chi, decompose_chi, ChiDecomposition};
pub use error::{Error, Result};
pub use invariants::{
    alexander_determinant, alexander_polynomial, blanchfield_matrix, default_points, distinguish, elementary_ideal, evaluate_ideal,
    module_decomposition, presentation, scalar_form, t_action, z_action, BlanchfieldMatrix,
    DistinguishReport, ElementaryIdeal, EvaluatedIdeal, IntegralWitness, ModuleDecomposition,
    ScalarForm,
};
pub use lattice::{verify_chain, AdjacencyWitness, AdjacentSeifertPair, ChainReport, Lattice, ScalarSpace};
pub use laurent::{Degree, Laurent};
pub use matrix::{Matrix, MatrixLaurent, MatrixQ, MatrixZ};
pub use ratfunc::RationalFunction;
pub use seifert::{
    apply_certificate, reduce, reduce_to_invertible, Certificate, ElementaryMove, Flavor,
    MoveKind, SeifertMatrix,
};
pub use symplectic::{delta, factor_symplectic, realize_delta, DeltaRealization, Factor, SymplecticFactorization};

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` as a reduced rational; panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
