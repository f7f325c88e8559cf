pub mod analysis;
pub mod error;
pub mod gcr;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod rep;
pub mod scalar;
pub mod slice;
pub mod tensor;

pub use error::{Error, Result};
