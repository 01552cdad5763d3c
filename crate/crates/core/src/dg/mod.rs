//! Shared machinery for dg algebras and dg categories: path polynomials over
//! graded quivers, rewriting modulo relations, windowed truncations and maps.

pub mod concrete;
pub mod maps;
pub mod poly;
pub mod presentation;
pub mod rewrite;

pub use concrete::{BasisElem, ConcreteDgAlg, ConcreteDgCat, DgError, Elem};
pub use maps::{BasisMap, FreeMap, SymbolicMap};
pub use poly::{Generator, NcPoly, Path, Quiver};
pub use presentation::{NotSemiFree, Presentation, PresentationError, SemiFreenessWitness, TruncationReport};
pub use rewrite::Rules;
