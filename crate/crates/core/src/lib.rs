//! Root systems of the simple Lie algebras, their cascades of strongly
//! orthogonal roots, and exact index computations for Borel subalgebras and
//! related subalgebras built from the cascade.
//!
//! ```
//! use lie_cascade::{Cascade, RootSystem};
//!
//! let g2 = RootSystem::new("G2".parse().unwrap());
//! let cascade = Cascade::build(&g2);
//! assert_eq!(cascade.len(), 2);
//! ```

pub mod cascade;
pub mod chevalley;
pub mod error;
pub mod index;
pub mod linalg;
pub mod root_system;
pub mod verify;

pub use cascade::{Cascade, CascadeIndex, CascadeNode, GammaSet};
pub use chevalley::{
    borel, build_d_m, nilradical_n, parabolic, parabolic_nilradical, q_plus, BasisElement,
    LieAlgebra, SignConvention, StructureTable, Subalgebra, SubalgebraKind,
};
pub use error::{Error, Result};
pub use index::{IndexReport, LinearForm, SamplingConfig, SkewFormMatrix};
pub use root_system::{Family, Root, RootSystem, SimpleType, Subsystem};
