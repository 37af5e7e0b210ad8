//! Reference-element machinery: Lagrange bases on the unit tetrahedron,
//! the Gauss-Legendre temporal basis, setup quadrature, and the universal
//! matrices that make the runtime quadrature-free.

pub mod lagrange;
pub mod matrices;
pub mod quadrature;
pub mod time;

pub use lagrange::{lagrange_nodes, node_count, NodeLocation, ReferenceBasis};
pub use matrices::{face_node_count, face_signatures, UniversalMatrices};
pub use quadrature::{gauss_legendre_01, quadrature, Domain, QuadratureRule};
pub use time::TemporalBasis;
