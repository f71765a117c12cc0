//! Exact mod-p cohomology of finite groups from first principles.
//!
//! The pipeline: realize a finite group as a multiplication table, build a
//! free resolution of the trivial module over its mod-p group algebra, read
//! off cohomology in canonical cocycle coordinates, and compute cup products,
//! inflation, restriction, and the subalgebra generated in degree one.

pub mod bar;
pub mod cache;
pub mod catalog;
pub mod fp;
pub mod group;
pub mod iso;
pub mod ops;
pub mod parser;
pub mod resolution;
pub mod ring;
pub mod todd_coxeter;

pub use fp::{FpMatrix, Subspace};
pub use group::{FiniteGroup, GroupHom, SubgroupHandle};
pub use parser::{parse_group_spec, realize, GroupSpec, RealizeConfig};
pub use resolution::{CohClass, Resolution, Strategy};
