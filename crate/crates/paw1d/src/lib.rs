//! PAW and VPAW methods for the 1-D periodic Schrodinger operator with two
//! Dirac potentials.

extern crate openblas_src;

pub mod func;
mod linalg;
pub mod model;
pub mod pawgen;
pub mod quad;
pub mod root;
