//! Exact computations with graded generalised Gelfand-Graev characters on
//! ℤ/n-graded Lie algebras over finite fields.

pub mod builders;
pub mod error;
pub mod fchar;
pub mod ffield;
pub mod gact;
pub mod gggr;
pub mod glie;
pub mod linalg;
pub mod report;
pub mod sl2;
pub mod ungraded;
pub mod verify;

pub use error::{Error, Result};
