//! Exact combinatorial checks for smooth toric Fano varieties: the
//! barycenter Kähler–Einstein criterion, lattice symmetry, alpha-invariants,
//! Ehrhart data and related inequalities.

pub mod conjectures;
pub mod criteria;
pub mod error;
pub mod exact;
pub mod io;
pub mod lp;
pub mod measures;
pub mod polyhedra;
pub mod symmetry;

pub use error::{Error, ParseError, Result};
