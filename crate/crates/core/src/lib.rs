//! Group-theoretic quantum tomography for finite groups and small compact
//! groups: tomograms of density states from unitary representations, state
//! reconstruction, Naimark positivity certification, the GNS construction,
//! the inverse tomographic problem, and SU(2)/SU(3) tomography with Haar
//! quadrature and 3j-symbol reconstruction.

pub mod error;
pub mod linalg;

pub mod finite_group;
pub mod group_algebra;
pub mod irrep;

pub mod naimark;
pub mod tomography;

pub mod inverse;

pub mod embedding;
pub mod quadrature;
pub mod su2;
pub mod su3;
pub mod threej;

pub mod fixtures;
pub mod io;
pub mod cli;

pub use error::{Error, Result};
