//! Exact homological computations for Lagrangian tori `S^1 x gamma` in
//! link-surgery 4-manifolds: surface homology and Dehn twists, monodromy
//! orbits, the Novikov ring, Floer cohomology via the action spectral
//! sequence, Maslov parity, and an isotopy classification report.

pub mod cli;
pub mod error;
pub mod floer;
pub mod linalg;
pub mod maslov;
pub mod monodromy;
pub mod novikov;
pub mod surface;

pub use error::{Error, Result};
pub use linalg::IntMatrix;
pub use surface::{standard_surface, CurveClass, SurfaceModel};
