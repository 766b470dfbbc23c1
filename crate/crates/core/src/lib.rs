//! Exact symbolic toolkit for graded nilpotent Lie algebras and the symmetries
//! of real-analytic CR structures built from them.

pub mod crmodel;
pub mod cxstruct;
pub mod error;
pub mod exactmath;
pub mod extend;
pub mod gnla;
pub mod prolong;
pub mod suite;
pub mod vfield;

pub use error::{Error, Result};
pub use exactmath::{GaussRat, MPoly, Rat, RatMatrix};
pub use gnla::{Gnla, GnlaBuilder};
