pub mod adelic;
pub mod error;
pub mod jfun;
pub mod qdiff;
pub mod qseries;
pub mod rings;
pub mod verify;

pub use error::{Error, Result};
