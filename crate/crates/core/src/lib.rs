//! Exact enumeration engine for card deals, two-row matrices over `{1,2,3}`
//! and labeled Delannoy paths.
//!
//! The three families are linked by explicit bijections ([`bijections`]) and
//! every binomial identity they realize is checked twice: once in closed form
//! ([`exact_counts`]) and once by pushing an exhaustive enumeration forward
//! under the relevant statistics ([`verifier`]).

pub mod bijections;
pub mod deals;
pub mod exact_counts;
pub mod matrices;
pub mod paths;
pub mod verifier;

pub use exact_counts::{binom, eval_expression, summand, BigCount, ExpressionId, IdentityId};
