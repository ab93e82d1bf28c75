//! Exact decision procedures for the regular slice filtration of cyclic groups.
//!
//! The crate works entirely with combinatorial and algebraic data:
//!
//! * [`rep_theory`] models `C_m`, its subgroups and virtual real representations
//!   through their fixed-point dimension functions.
//! * [`slice_calculus`] decides membership of representation spheres in the
//!   slice-connective categories `tau_{>=n}`, classifies smash maps between them and
//!   enumerates the equivalence classes for `C_{p^k}`.
//! * [`integer_linear`] is an exact Smith normal form kernel with finitely
//!   generated abelian groups on top of it.
//! * [`mackey`] implements `C_p` Mackey functors and the functors `P^0` and `EC_p (x) -`.
//! * [`slice_formulas`] evaluates the complete `C_p` slice table.
//! * [`verify`] bundles the exhaustive sweeps used by the command line tool.

pub mod error;
pub mod integer_linear;
pub mod mackey;
pub mod rep_expr;
pub mod rep_theory;
pub mod slice_calculus;
pub mod slice_formulas;
pub mod verify;

mod arith;

pub use error::{Error, Result};
pub use integer_linear::{FgAbGroup, Homomorphism, IntMatrix};
pub use mackey::CpMackey;
pub use rep_theory::{CyclicGroup, OrbitFunction, Subgroup, VirtualRep};
