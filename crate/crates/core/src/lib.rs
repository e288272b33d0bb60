pub mod cli;
pub mod error;
pub mod faithful;
pub mod filter;
pub mod fspec;
pub mod groups;
pub mod inertia;
pub mod lattice;
pub mod lie;
pub mod monoid;
pub mod pc;
pub mod prefilter;
pub mod section;
pub mod snf;
pub mod table;

pub use error::{Error, Result};
