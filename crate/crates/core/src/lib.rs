//! Fibered Dehn fillings of the Whitehead sibling: Teichmüller polynomial,
//! dilatations, hyperbolic volumes and per-genus minimizers.

pub mod algebra;
pub mod dilatation;
pub mod error;
pub mod filling;
pub mod search;
pub mod traintrack;
pub mod volume;

pub use dilatation::{dilatation, DilatationResult, FoliationData, RootMethod};
pub use error::{Error, Result, SolveDiagnostics};
pub use filling::{CohomologyClass, EpsilonTriple, Family, FillingData, MgSelection, Slope};
pub use search::{GenusReport, Table1Row, Table2Row};
pub use traintrack::{GradedSubstitution, TeichPoly};
pub use volume::{SolveOptions, TetShapes, VolumeEstimates, V8};
