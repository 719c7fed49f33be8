//! Exact computations with Ferrand's norm functor for finite free ring
//! extensions: divided powers, norm modules and algebras, base change,
//! Azumaya algebras with quadratic pairs, and the Segre embedding.

pub mod error;
pub mod algebra;
pub mod azumaya;
pub mod gamma;
pub mod norm;
pub mod scalars;
pub mod segre;
pub mod suite;

pub use error::{Error, Result};
