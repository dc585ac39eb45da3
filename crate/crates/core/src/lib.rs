//! Exact worst unstable points of monomial Grassmannians and Hilbert schemes.

pub mod cli;
pub mod error;
pub mod hilbert;
pub mod ideal;
pub mod kstability;
pub mod monomial;
pub mod poly;
pub mod state;
pub mod worst;

pub use error::{Error, Result};
