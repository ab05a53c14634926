//! Exact symbolic machinery for symmetric functions over Q(q,t), the modified
//! Macdonald basis, the eigenoperators nabla / Delta_f / Theta_f / D_k, the
//! combinatorics of decorated labelled lattice paths with their q,t-statistics,
//! and the Dyck path algebra. Every identity this crate claims is checked by
//! exact comparison of canonical forms; nothing is floating point.

pub mod bounded;
pub mod cache;
pub mod checks;
pub mod combinat;
pub mod dpa;
pub mod error;
pub mod expr;
pub mod macdonald;
pub mod ops;
pub mod paths;
pub mod qt;
pub mod symfun;

pub use error::{Error, Result};
