//! Exact combinatorics engine for topological order counting and
//! product-formula certification on layered graph families.
//!
//! Everything is exact: big-integer counts, integer polynomials, and
//! explicitly materialized weight-preserving pairings between signed sets.
//!
//! Module map, bottom up:
//! - [`arith`]: memoized factorials, binomials, exact fractions
//! - [`poly`]: multivariate integer polynomials and truncated series
//! - [`payload`] / [`signed`] / [`sijection`]: signed sets and the pairing
//!   calculus (identity, reverse, compose, sum/product lifts)
//! - [`binomial`]: weak-composition sets and the merge/split moves
//! - [`dag`]: graph families, topological order counting and enumeration
//! - [`matrix`]: signed-set matrices, determinant expansion as a signed set,
//!   row operations as pairings
//! - [`vandermonde`]: reduction of stacked composition matrices to products
//!   of difference factors
//! - [`phi`]: the label-list transform and its insertion/splitting moves
//! - [`trick`]: pendant-edge moves connecting topological orders to [`phi`]
//! - [`crux`]: the end-to-end factorial-ratio certificate pipeline
//! - [`formula`]: closed-form product formulas and counting cross-checks

pub mod arith;
pub mod binomial;
pub mod crux;
pub mod dag;
pub mod error;
pub mod formula;
pub mod matrix;
pub mod payload;
pub mod phi;
pub mod poly;
pub mod signed;
pub mod sijection;
pub mod trick;
pub mod vandermonde;

pub use error::{Error, Result};
