//! Exact computations in the PROP of the Lie operad.

pub mod dgcat;
pub mod error;
pub mod catlie;
pub mod cecomplex;
pub mod exactla;
pub mod freelie;
pub mod lincomb;
pub mod mudelta;
pub mod perm;
pub mod schur_oracle;

pub use error::{Error, Result};
pub use exactla::{rat, Rat};
