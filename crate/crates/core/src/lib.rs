//! Exact computations around the Stanley–Reisner algebras `A(s, Γ)`,
//! `A_p(s, Γ)` and `B_p(r, Γ)`: chromatic and span-chromatic numbers, the
//! algebras themselves, Steenrod power tables and their exhaustive search,
//! and realizability certificates.

pub mod complex;
pub mod error;
pub mod fp;
pub mod graph;
pub mod realize;
pub mod search;
pub mod solver;
pub mod span;
pub mod steenrod;

pub use complex::{build_complex, AlgebraElement, Family, JoinComplex, Monomial, SrRing};
pub use error::{Error, Result};
pub use graph::{chromatic_number, parse_graph, two_core, Coloring, Graph};
pub use realize::{check_realizable, DegreeMultisetFamily, Partition, RealizabilityVerdict, Scheme};
pub use search::{search_action, SearchOptions, SearchOutcome, SearchReport};
pub use span::{span_chromatic_number, span_membership, verify_span_coloring, FpVector, SpanColoring};
pub use steenrod::{RelationSet, SteenrodTable};
