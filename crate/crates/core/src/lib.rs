//! Physics core for phonon-coupled germanium hole-spin qubits: units,
//! calibrated device models, phononic-crystal band structure, cavity
//! overlap and spin–phonon coupling, and the two-qubit phonon bus.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod bus;
pub mod cavity;
pub mod device;
pub mod lattice;
pub mod linalg;
pub mod units;
