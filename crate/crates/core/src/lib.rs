pub mod ballean;
pub mod cardinal;
pub mod constructions;
pub mod error;
pub mod ordinal;
pub mod sets;
pub mod verify;

pub use error::{Error, Result};
pub use ordinal::{Ordinal, OrdinalGrid, OrdinalInterval};
