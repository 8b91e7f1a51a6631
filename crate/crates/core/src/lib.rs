//! Exact Stokes data for quiver hearts.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod braid;
pub mod error;
pub mod fixtures;
pub mod goodness;
pub mod quiver;
pub mod stokes;
pub mod verify;

pub use error::{Error, Result};
