pub mod analysis;
pub mod config;
pub mod error;
pub mod models;
pub mod numerics;
pub mod qfi;
pub mod uncertainty;

pub use config::Tolerances;
pub use error::{Error, Result};
pub use models::ParameterId;
pub use qfi::QfiMatrix;
