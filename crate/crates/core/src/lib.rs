pub mod boundary;
pub mod characters;
pub mod cyclotomic;
pub mod divisor;
pub mod elliptic_tail;
pub mod error;
pub mod group;
pub mod grr;
pub mod kodaira;
pub mod monodromy;
pub mod pencil;
pub mod rational;
pub mod selftest;

pub use error::{Error, Result};
