pub mod algebra;
pub mod cli;
pub mod complexes;
pub mod error;
pub mod hochschild;
pub mod linalg;
pub mod moybracket;
pub mod oracle;
pub mod presentations;
pub mod webs;

pub use error::{Error, Result};
