pub mod antilinear;
pub mod biortho;
pub mod dynamics;
pub mod error;
pub mod intertwine;
pub mod numerics;
pub mod report;
pub mod sampling;
pub mod two_level;

pub use error::{Error, Result};
