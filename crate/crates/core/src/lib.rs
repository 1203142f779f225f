// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod distributions;
pub mod error;
pub mod io;
pub mod rng;
pub mod special;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
