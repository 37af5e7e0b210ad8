//! Agglomerated finite elements: per-cell DOF union without repetition,
//! cross-cell face pairing, and the element-wise operators built from the
//! universal reference matrices.

pub mod dofmap;
pub mod faces;
pub mod matrices;

pub use dofmap::{build_cell_dof_maps, CellDofMap, DofMaps};
pub use faces::{build_face_maps, FaceInfo, MeshFaces};
pub use matrices::{assemble_cell_k1, assemble_cell_mass, build_cell_ops, st_index, CellOps};
