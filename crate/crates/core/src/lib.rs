//! Generic commuting Jordan types.
//!
//! For a nilpotent matrix of Jordan type `P`, `Q(P)` is the Jordan type of a
//! generic nilpotent matrix commuting with it. This crate computes `Q(P)`
//! combinatorially with Oblak's U-chain process on the poset `D_P`, and
//! independently by sampling the nilpotent centralizer of `J_P` with exact
//! arithmetic over a prime field. It also groups partitions by their image
//! under `Q` and checks the predicted box shape of each group.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod chains;
pub mod error;
pub mod fibers;
pub mod field;
pub mod matrix;
pub mod oblak;
pub mod oracle;
pub mod partition;
pub mod poset;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use matrix::{jordan_matrix, jordan_power_rank, Matrix};
pub use oblak::{oblak_process, oblak_step, q_map, OblakStep, OblakTrace};
pub use partition::{almost_rectangular, Dominance, Partition};
pub use poset::{PosetDp, UChain, Vertex};
