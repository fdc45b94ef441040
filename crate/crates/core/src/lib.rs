//! Finite lattices, their spectra and classifying spaces, finite topological
//! spaces, and lattices of subcategories of small exact-category tables.
//!
//! ```
//! use latspace::{corpus, space::{build_space, SpaceKind}};
//!
//! let a2 = corpus::a2_nullity();
//! let kgp = build_space(&a2, SpaceKind::Kgp);
//! assert_eq!(kgp.points.len(), 3);
//! assert!(kgp.topology.ok);
//! ```

pub mod catlab;
pub mod check;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod hom;
pub mod lattice;
pub mod random;
pub mod space;
pub mod spectra;
pub mod topology;

pub use error::{Error, Result};
pub use hom::{check_hom, find_isomorphism, HomLevel, LatticeHom};
pub use lattice::{load_lattice, FiniteLattice, LatticeDoc};
pub use space::{build_space, verify_classification, ClassifyingSpace, SpaceKind};
pub use spectra::{classify_element, spectrum_report};
pub use topology::{kq_vs_K_check, load_space, t0_quotient, FiniteSpace, SpaceDoc};
