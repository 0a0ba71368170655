//! Resolutions of enhanced nilpotent orbit closures over prime fields.
//!
//! The crate builds the back-to-back diagram combinatorics of bipartitions,
//! realizes each orbit by a normal basis pair `(v, x)`, counts the points of
//! the fibers of the flag resolutions over GF(p), and turns those counts into
//! exact `q`-polynomials together with a battery of structural checks.

pub mod checks;
pub mod combinatorics;
pub mod error;
pub mod fiber;
pub mod gf;
pub mod normal_form;
pub mod qpoly;

pub use checks::{CheckContext, CheckKind, CheckReport, Verdict};
pub use combinatorics::{Bipartition, Diagram, FlagShape, Partition};
pub use error::{Error, Result};
pub use fiber::{FiberCounter, FiberQuery};
pub use gf::{Matrix, PrimeField, Subspace};
pub use normal_form::{Decomposition, GradedPair, NormalPair};
pub use qpoly::{PrimeSchedule, QPolynomial};
