#![no_std]
#![doc = include_str!("../README.md")]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod classify;
pub mod deformation;
pub mod error;
pub mod fp;
pub mod lie;
pub mod matrix;
pub mod monodromy;
pub mod poly;
pub mod quotient;
pub mod ring;
pub mod roots;
pub mod scalar;

pub use classify::{classify, normal_form, Classification, Family, SingularityClass};
pub use error::{Error, Result};
pub use fp::{Fp, FpPoly};
pub use matrix::Matrix;
pub use poly::MultiPoly;
pub use scalar::{PadicScalar, ScalarConfig, Uniformizer, Valuation};
