//! Isonemal weaving designs with quarter-turn symmetry.
//!
//! The crate classifies doubly periodic two-colour designs into the eleven
//! rotational species `33₃ … 39`, builds their symmetry groups from a
//! level-1 lattice seed, enumerates all designs of a given order, and
//! provides doubling, halving, falling-apart and woven-cube checks.

pub mod construct;
pub mod cube;
pub mod error;
pub mod grid;
pub mod io;
pub mod lattice;
pub mod render;
pub mod symmetry;
pub mod transform;

pub use error::{Error, Result};
pub use grid::{
    is_symmetry, is_symmetry_map, transform_design, transform_design_map, AffineMap, Design,
    HalfPoint, Isometry, IsometryKind, Linear, PointSort,
};
pub use lattice::{classify_square, decompose_order, escribe, inscribe, CentreSort, Lattice, LatticeUnit};
pub use symmetry::{
    classify, strand_symmetry, survey, Classification, Marker, Rejection, RejectionKind, Species,
    SpeciesReport, StrandSymmetry, SymmetrySurvey, WallpaperType,
};
pub use construct::{
    build_group, cell_orbits, enumerate_designs, falls_apart, EnumerateOptions, Enumeration,
    GroupSpec, OrbitPartition,
};
pub use io::{format_design, load_design, parse_design, save_design, Catalog, CatalogEntry};
pub use render::{render_ascii, render_svg, RenderSpec};
pub use cube::{check_cube, cube_net, cube_weavable, verify_cube_isonemal, CubeCheck, CubeNet};
pub use transform::{check_doublable, check_halving_theorem, double, halve};
