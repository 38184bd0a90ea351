pub mod certificate;
pub mod charring;
pub mod error;
pub mod lifting;
pub mod linalg;
pub mod oscillator;
pub mod rootdata;
pub mod superalg;
pub mod weylchar;

pub use error::{Error, Result};
