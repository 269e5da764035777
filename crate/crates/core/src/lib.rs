pub mod audit;
pub mod cli;
pub mod closure;
pub mod dsl;
pub mod error;
pub mod exterior;
pub mod gpb;
pub mod jacobian;
pub mod linalg;

pub use error::{Error, Result};
