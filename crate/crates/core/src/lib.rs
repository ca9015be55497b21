//! Forest automata and finite forest algebras over unranked ordered forests.

pub mod algebra;
pub mod automata;
pub mod builders;
pub mod cli;
pub mod decide;
pub mod error;
pub mod forest;
pub mod io;
pub mod oracle;
pub mod random;
pub mod substitution;

pub use error::{Diagnostic, Error, Result};
