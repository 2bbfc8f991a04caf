pub mod arrangement;
pub mod assemble;
pub mod config;
pub mod error;
pub mod exactlin;
pub mod mvss;
pub mod pipeline;
pub mod presets;
pub mod report;
pub mod skgroups;
pub mod wedgelat;

pub use error::{Error, Result};
