pub mod braid;
pub mod cert;
pub mod config;
pub mod equiv;
pub mod error;
pub mod instances;
pub mod io;
pub mod semigroup;
mod search;
pub mod sym;
pub mod verify;

pub use braid::{BraidWord, GarsideNF, Permutation};
pub use cert::{Direction, Move, MoveCertificate, SearchLimits, SearchOutcome};
pub use error::{Error, Result};
pub use semigroup::{Factor, Factorization, MultiDegree, SingClass};
