//! Quivers with relations, their representations, and homological tools.

pub mod complex;
pub mod dhom;
pub mod endo;
pub mod enumerate;
pub mod fixtures;
pub mod hom;
pub mod module;
pub mod path_algebra;
pub mod quiver;
pub mod resolution;

pub use hom::{hom_dim, hom_space, HomSpace};
pub use module::{Module, ModuleMap, Submodule};
pub use path_algebra::{FinDimAlgebra, Relation};
pub use quiver::{Arrow, Path, Quiver};
pub use resolution::{ext_dim, ext_group, global_dimension, minimal_resolution, projective_cover, ExtGroup, FreeModule, Resolution};
pub use complex::{coresolve_complex, resolve_complex, BoundedComplex, ChainMap, Cohomology, ComplexCoresolution, ComplexResolution};
pub use dhom::{derived_hom_dim, homotopy_classes_dim};
