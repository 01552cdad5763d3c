//! Finite categories and the constructions on them.

pub mod colimits;
pub mod congruence;
pub mod constructions;
pub mod corpus;
pub mod enumerate;
pub mod equivalence;
pub mod fincat;
pub mod functor;
pub mod limits;
pub mod quiver;

pub use colimits::{colimit_presentation, saturate, CatPresentation, Colimit, Saturation};
pub use congruence::{factor_category, image_factorization, standard_factorization, HomCongruence};
pub use constructions::*;
pub use enumerate::{count_functors, enumerate_functors, find_functor, find_nat_iso, search_functors, Flow, GuardExceeded, DEFAULT_GUARD};
pub use equivalence::{find_quasi_inverse, is_equivalence};
pub use fincat::{CatError, CatValidation, FinCat, Morphism};
pub use functor::{Functor, FunctorError, NatTransf};
pub use limits::{limit, CatDiagram, Limit};
pub use quiver::{adjunction_check, free_category, path_category, Arrow, GradedQuiver, Path, Quiver};
