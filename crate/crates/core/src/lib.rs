pub mod error;
pub mod koszul;
pub mod kostant;
pub mod linalg;
pub mod par;
pub mod rational;
pub mod repbuilder;
pub mod rootsys;
pub mod chevalley;
pub mod complexflag;

pub use error::{Error, Result};
