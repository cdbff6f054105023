pub mod cli;
pub mod error;
pub mod family;
pub mod geometry;
pub mod kkt;
pub mod oracle;
pub mod reduce;
