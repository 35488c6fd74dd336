//! Exact-coordinate triangulations of the cells, the slice and the full space.

pub mod ambient;
pub mod charts;
pub mod complex;
pub mod io;

pub use charts::{
    assemble, assemble_full, assemble_slice, full_carrier_failures, full_charts, full_regions, mesh_cell, slice_charts,
    validate_slice_charts, FullAssembly, MeshChart, ValidityReport,
};
pub use complex::{complex_isomorphic, Isomorphism, PseudomanifoldCheck, Simplex, SimplicialComplex, VertexMapHint};
pub use io::{from_json, read_complex, to_json, write_complex};
