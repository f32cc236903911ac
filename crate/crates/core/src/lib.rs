pub use error::{Error, Result};

pub mod constants;
pub mod error;
pub mod functions;
pub mod quadrature;
pub mod rng;
pub mod special;
pub mod lehto;
pub mod convexity;
pub mod multiplier;
pub mod martingale;
pub mod report;
pub mod cli;
