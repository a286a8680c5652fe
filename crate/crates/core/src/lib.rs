//! Characters of Sylow subgroups of symmetric groups and the restriction of
//! symmetric group characters to them.

pub mod combinatorics;
pub mod cyclotomic;
pub mod error;
pub mod lr;
pub mod oracle;
pub mod partitions;
pub mod symmetric;
pub mod theorem;
pub mod wreath;

pub use error::{is_prime, Error, Result};
pub use partitions::{BoxSpec, Partition};
