pub mod algebra;
pub mod error;
pub mod filtration;
pub mod hearts;
pub mod io;
pub mod linalg;
pub mod tilting;

pub use error::{Error, Result};
