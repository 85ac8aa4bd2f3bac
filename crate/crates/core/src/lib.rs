pub mod arrangement;
pub mod error;
pub mod exact;
pub mod io;
pub mod linalg;
pub mod syzygy;
pub mod unexpected;

pub use error::{Error, Result};
