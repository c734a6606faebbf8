pub mod channel;
pub mod claw;
pub mod cli;
pub mod cost;
pub mod error;
pub mod label;
pub mod matrix;
pub mod pauli;
pub mod solution;
pub mod stats;
pub mod synthesis;
pub mod walk;

pub use error::{Error, Result};
