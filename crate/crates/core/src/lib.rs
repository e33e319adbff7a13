//! Twisted multinomial expansions and their exact matrix-product
//! representation.
//!
//! For generators with `z_j z_i = ω_ij z_i z_j` (`i < j`) and `z_j^a = 1`,
//! the coefficients of `(Σ_j c_j z_j)^k` in the ordered monomials
//! `z_1^{r_1} ⋯ z_m^{r_m}` are computed by a bond-dimension `k + 1` MPS
//! whenever the twisting matrix is predecessor-uniform (possibly after
//! relabeling). Brute-force oracles and Pauli-operator utilities are
//! included for cross-checking.
//!
//! All numerics are generic over [`scalar::Scalar`]; the aliases below fix
//! the usual choices.
//!
//! ```
//! use twisted_mps::{Boundary, C64, PilotModel, WeightMatrix};
//!
//! let w = WeightMatrix::<C64>::from_phase_exponents(3, 2, &[(0, 1, 1), (0, 2, 1), (1, 2, 1)])?;
//! let c = [C64::new(1.0, 0.0), C64::new(2.0, 0.0), C64::new(3.0, 0.0)];
//! let pilot = PilotModel::new(&w, &c, 4)?;
//! let alpha = pilot.amplitude(&Boundary::Monomial(4), &[0, 0, 0])?;
//! assert!((alpha - C64::new(196.0, 0.0)).norm() < 1e-12);
//! # Ok::<(), twisted_mps::Error>(())
//! ```

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod gaussian;
pub mod hamiltonian;
pub mod mps;
pub mod oracle;
pub mod pauli;
pub mod pilot;
pub mod scalar;
pub mod suites;
pub mod twisted;

pub use error::{Error, Result};
pub use gaussian::{q_binom_minus1, q_binom_partition_oracle, q_binom_pascal, q_binom_product, QBinomTable, QParam};
pub use hamiltonian::HamiltonianSpec;
pub use mps::{
    all_amplitudes, build_model, contract, contract_monomial, contract_polynomial, AmplitudeTable, Boundary, MpsModel,
};
pub use oracle::{expand_dense_pauli, expand_wordwise, ExpansionResult};
pub use pauli::{
    anticommutation_graph, jordan_wigner, realize_lambda, weight_matrix_from_paulis, AnticommGraph, PauliGen,
};
pub use pilot::PilotModel;
pub use scalar::{FieldScalar, Scalar};
pub use twisted::{
    check_predecessor_uniform, exhaustive_pu_search, find_pu_ordering, twisted_multinomial_bruteforce,
    twisted_multinomial_factorized, twisted_multinomial_recurrence, Composition, PuOrdering, WeightMatrix,
};

pub use num_complex::Complex64;

/// Double-precision complex, the working type for general phases.
pub type C64 = Complex64;

pub type ComplexWeights = WeightMatrix<C64>;
pub type ComplexModel = MpsModel<C64>;
pub type ComplexTable = AmplitudeTable<C64>;
pub type ComplexPilot = PilotModel<C64>;

/// Exact integer path for sign-valued twistings (`q_j = ±1`).
pub type SignWeights = WeightMatrix<i64>;
pub type ExactModel = MpsModel<num_bigint::BigInt>;
pub type RationalParam = QParam<num_rational::Rational64>;
