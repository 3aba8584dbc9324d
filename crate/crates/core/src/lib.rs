pub mod cli;
pub mod error;
pub mod f2linalg;
pub mod graph;
pub mod graphcode;
pub mod graphstate;
pub mod oracle;
pub mod pauli;

pub use error::{Error, Result};
