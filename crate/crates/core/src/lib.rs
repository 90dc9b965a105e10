pub mod config;
pub mod covers;
pub mod dehn;
pub mod enumeration;
pub mod error;
pub mod group;
pub mod intersections;
pub mod linalg;
pub mod pipeline;
pub mod report;
pub mod words;

pub use error::{Error, Result};
