//! Gysin pushforwards along flag bundles and Schubert bundles as iterated
//! residues, with exact rational coefficients.
//!
//! A class on a flag bundle is written as a polynomial in the Chern roots
//! `t_1..t_d` of the tautological bundles, with coefficients in formal Segre
//! and line classes of the base. [`pushforward`] multiplies by the kernel of
//! the geometry and extracts one coefficient; [`oracle`] recomputes type A
//! results one projective bundle at a time.

pub mod coeffring;
pub mod error;
pub mod expr;
pub mod geometry;
pub mod job;
pub mod kernels;
pub mod oracle;
pub mod pushforward;
pub mod tpoly;

pub use coeffring::{ClassKind, ClassMonomial, ClassPoly, ClassSymbol, Rational};
pub use error::{Error, Result};
pub use expr::{parse_class, parse_expression, Expr};
pub use geometry::{BaseMode, Family, FlagGeometry, Partition, StrictPartition, Twist};
pub use job::{CheckReport, JobDraft, JobSpec, OutputFormat};
pub use pushforward::{pushforward, pushforward_with, InputDegree, PushforwardOptions, PushforwardResult};
pub use tpoly::TPoly;
