//! Exact-arithmetic calculus for strictly unital directed A∞-categories with
//! finitely many ordered objects and their right-module dg-category.
//!
//! The crate provides:
//!
//! * exact linear algebra over odd prime fields and the rationals
//!   ([`field`], [`matrix`], [`complex`]);
//! * the directed-category data model with its relation checker and fixture
//!   constructors ([`category`]);
//! * A∞-modules, pre-morphisms, hom complexes, cones, twists, Yoneda maps and
//!   quasi-isomorphism inversion with machine-checkable certificates
//!   ([`module`], [`morphism`], [`homcx`], [`twist`], [`quasi`]);
//! * the spectral sequence of the canonical filtration, its starting-page
//!   identification and the edge homomorphism ([`specseq`]);
//! * exceptional collections, braid mutations and the half twist ([`mutate`]);
//! * the graded Maslov-index calculus for split linear models ([`maslov`]).
//!
//! Everything is computed exactly; there are no floating-point code paths.

pub mod category;
pub mod complex;
pub mod error;
pub mod field;
pub mod graded;
pub mod homcx;
pub mod maslov;
pub mod matrix;
pub mod module;
pub mod morphism;
pub mod mutate;
pub mod quasi;
pub mod sample;
pub mod specseq;
pub mod twist;

pub use category::{Arg, CatKey, DirectedCategory, QuiverBuilder, SparseVec, ValidationReport};
pub use complex::{induced_map, tensor_complexes, ChainComplex, Cohomology, CommuteMode, GradedMap};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, Scalar};
pub use graded::{GenId, GradedSpace};
pub use homcx::HomComplex;
pub use matrix::Matrix;
pub use module::{AModule, ModKey, Truncation};
pub use morphism::PreMorphism;
