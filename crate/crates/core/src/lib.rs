//! Exact arithmetic on the Dirichlet convolution ring of arithmetic
//! functions, the divisor and additive coproducts on ℕ together with their
//! unrenormalized (Hopf algebra) counterparts, and Bell series.
//!
//! All values are exact: rationals extended by formal `log p` symbols
//! ([`values::Value`]), integer multiplicities for coproduct terms
//! ([`coalgebra::PairSum`]), and rational power series ([`bell::BellSeries`]).

pub mod arithfn;
pub mod bell;
pub mod cli;
pub mod coalgebra;
pub mod error;
pub mod integers;
pub mod values;
pub mod verdict;

pub use arithfn::{builtin, conv, inverse, ArithFn, MultClass};
pub use coalgebra::{Kind, PairSum, Variant};
pub use error::{Error, Result};
pub use values::Value;
pub use verdict::Verdict;
