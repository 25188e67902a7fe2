//! Uninorms with continuous underlying operations: generators, t-norms and
//! t-conorms, representable and internal uninorms, ordinal sums and their
//! extensions, and numeric recovery of that structure from a black box.
//!
//! ```
//! use uninorm::generator::Generator;
//! use uninorm::operator::Annihilator;
//! use uninorm::uninorms::make_representable;
//!
//! let u = make_representable(&Generator::logistic(0.5)?, Annihilator::Conjunctive)?;
//! assert!((u.eval(0.8, 0.8)? - 16.0 / 17.0).abs() < 1e-12);
//! # Ok::<(), uninorm::Error>(())
//! ```

pub mod analysis;
pub mod error;
pub mod extended_sum;
pub mod generator;
pub mod operator;
pub mod operators;
pub mod ordinal_sum;
pub mod uninorms;

pub use error::{Error, Result};
pub use operator::{Annihilator, OpKind, Operator};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/operators.md")]
    pub struct Operators;
    #[doc = include_str!("../../../book/src/uninorms.md")]
    pub struct Uninorms;
    #[doc = include_str!("../../../book/src/ordinal_sums.md")]
    pub struct OrdinalSums;
    #[doc = include_str!("../../../book/src/extended_sums.md")]
    pub struct ExtendedSums;
    #[doc = include_str!("../../../book/src/analysis.md")]
    pub struct Analysis;
}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
pub struct ReadmeDoctests;
