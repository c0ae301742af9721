//! Exact computations with finite-dimensional Lie algebras over the rationals:
//! structure constants, structural series, megaideal lattices, automorphism
//! groups of block-triangular shape and polynomial vector-field realizations.

pub mod autom;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod lie;
pub mod linalg;
pub mod lattice;
pub mod poly;
pub mod rational;
pub mod report;
pub mod vectorfield;

pub use autom::{
    adapted_basis, analyze_automorphisms, check_invariant, enumerate_coordinate_megaideals,
    inner_consistency, shape_from_flag, structure_equations, triangular_solve, AdaptedBasis,
    AutAnalysis, AutParametrization, AutShape, PolySystem,
};
pub use error::{Error, Result};
pub use lie::{LieAlgebra, SeriesKind, SeriesReport, ValidationReport};
pub use linalg::{Matrix, Subspace};
pub use lattice::{
    closure, essential_filter, prop34, prop34_explained, verify_megaideal, ClosureOptions,
    MegaidealLattice, MegaidealVerdict,
};
pub use poly::{Monomial, Poly};
pub use rational::{parse_rational, Rational};
pub use vectorfield::{
    extract_structure, realize_family, verify_homomorphism, FamilyGenerator, PointMap,
    PolyVectorField,
};
pub use report::{analyze, AnalysisReport, AnalyzeOptions};
