pub mod edge_pencil;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod geometry;
pub mod regularity;
pub mod scalar;
pub mod spaces;
pub mod vertex_pencil;

pub use error::{Error, Result};
