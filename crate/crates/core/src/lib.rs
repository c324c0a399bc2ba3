//! Endomorphisms of Cuntz algebras given by unitaries in the gauge-invariant
//! core, and tests for whether they preserve the canonical diagonal MASA.

pub mod cli;
pub mod config;
pub mod element;
pub mod endo;
pub mod error;
pub mod io;
pub mod izumi;
pub mod masa;
pub mod matrix;
pub mod random;
pub mod scan;
pub mod subspace;
pub mod word;

pub use config::Config;
pub use element::{Element, Term, C64};
pub use error::{Error, Result};
pub use word::Word;
