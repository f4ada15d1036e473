//! Exact power sums and the recursions behind their coefficients.
//!
//! The crate computes the coefficients of `S_m(n) = 1^m + ... + n^m` three
//! ways (a strong row recursion, a condensed per-offset recursion and a
//! closed form), derives the per-offset constants `C_x` and `D_x` by four
//! independent recursions, converts them to Bernoulli numbers (with
//! `B_1 = +1/2`), and arbitrates everything against a brute-force oracle.
//!
//! ```
//! use powersum::{bernoulli, Backend, Rational};
//!
//! let b = bernoulli(4, Backend::LinearUnit).unwrap();
//! assert_eq!(b.traditional(4).unwrap(), &Rational::new(-1, 30).unwrap());
//! ```

pub mod bench;
pub mod cli;
pub mod coeffs;
pub mod combinatorics;
pub mod error;
pub mod exact;
pub mod faulhaber;
pub mod oracle;
pub mod sequence;
pub mod verify;

pub use coeffs::{
    alpha, build_table, closed_coeff, condensed_base, condensed_sequence, condensed_step, next_row, CoeffRow,
    CoeffTable,
};
pub use error::{Error, Result};
pub use exact::{normalize, poly_eval, PowerSumPoly, Rational};
pub use faulhaber::{bernoulli_formula_poly, faulhaber_poly, power_sum, FaulhaberSpec, PolySource};
pub use oracle::{brute_sum, oracle_coeffs, oracle_d, OracleRow};
pub use sequence::{
    bernoulli, beta, beta_star, c_next, c_table, d_from_strong, d_linear_empty, d_linear_unit, d_nonlinear, d_table,
    Backend, BernoulliView, Indexing, Reading, SeqKind, SeqTable, SequenceGenerator,
};

pub use bench::{bench, BenchReport};
pub use verify::{verify, VerifyOptions, VerifyReport};
