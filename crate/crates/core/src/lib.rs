pub mod error;
pub mod exactalg;

pub use error::{Error, Result};
pub mod catalog;
pub mod chow;
pub mod hilbert;
pub mod oracle;
pub mod par;
pub mod report;
pub mod schema;
pub mod slope;
pub mod testconfig;
