pub mod code;
pub mod config;
pub mod error;
pub mod gf;
pub mod graph;
pub mod lifted;
pub mod matq;
pub mod report;
pub mod suite;
pub mod verify;

pub use error::{Error, Result};
