//! Exact first-order differential calculi over basis-presented algebras.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod derivation;
pub mod divergence;
pub mod fodc;
pub mod gallery;
pub mod io;
pub mod linear;
pub mod report;
