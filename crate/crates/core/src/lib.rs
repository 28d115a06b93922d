//! Exact decision procedures for comparative risk aversion and for the
//! single-crossing family of comparative-statics conditions.
//!
//! All arithmetic is over exact rationals, so every verdict is a statement
//! about the input rather than about rounding, and every "fails" verdict
//! carries a witness that can be re-checked by direct evaluation.
//!
//! * [`risk_order`]: is `u` less risk-averse than `v`? Three independent
//!   routes plus a brute-force grid oracle.
//! * [`crossing`]: single-crossing, signed-ratio monotonicity and
//!   mixture aggregation on a finite poset.
//! * [`equivalence`]: for `U : X × Θ → ℚ`, compares "each slice is less
//!   risk-averse than every higher slice" with single-crossing differences
//!   plus signed-ratio monotonicity, and generates test instances.
//! * [`instance`]: the JSON instance format; [`cli`] the command-line front end.

pub mod cli;
pub mod crossing;
pub mod equivalence;
pub mod instance;
pub mod poset;
pub mod rational;
pub mod risk_order;
pub mod simplex;
pub mod table;

pub use rational::{ratio, Rational};
pub use table::{expected_value, Alternatives, Lottery, ParamFunction, ParamUtilityTable, UtilityTable};
