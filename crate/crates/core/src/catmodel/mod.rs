//! The natural model structure on finite categories: injections on objects,
//! equivalences and isofibrations.

mod ambient;
mod cells;
mod factor;
mod homotopy;
mod lifters;

pub use ambient::{CatAmbient, Preimages};
pub use cells::CatCells;
pub use factor::{
    cocylinder_pullback_check, cylinder, functor_cocylinder_factorization, functor_cylinder_factorization,
    functor_cylinder_pushout_check, path_object, CocylinderFactorization, CylinderDiagram, CylinderFactorization, PathDiagram,
    RemarkCheck,
};
pub use homotopy::{ho_hom, left_homotopy_relation, naturally_isomorphic, NatIsoRoutes};
pub use lifters::{lift_acyclic_injection_vs_isofibration, lift_injection_vs_acyclic_isofibration, LiftPrecondition};

use crate::cat::constructions::{interval, parallel_arrows, point, terminal};
use crate::cat::enumerate::{GuardExceeded, DEFAULT_GUARD};
use crate::cat::equivalence::find_quasi_inverse;
use crate::cat::{FinCat, Functor};
use crate::lifting::axioms::{check_model_axioms, AxiomOptions, AxiomReport, Factorizer, ModelTriple};
use crate::lifting::{is_orthogonal, AmbientError};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct FunctorClassification {
    pub injection: bool,
    pub equivalence: bool,
    pub isofibration: bool,
    pub full: bool,
    pub faithful: bool,
    pub dense: bool,
    pub surjective_on_objects: bool,
    pub acyclic_injection: bool,
    pub acyclic_isofibration: bool,
}

impl FunctorClassification {
    pub fn fields(&self) -> [(&'static str, bool); 9] {
        [
            ("injection", self.injection),
            ("equivalence", self.equivalence),
            ("isofibration", self.isofibration),
            ("full", self.full),
            ("faithful", self.faithful),
            ("dense", self.dense),
            ("surjective_on_objects", self.surjective_on_objects),
            ("acyclic_injection", self.acyclic_injection),
            ("acyclic_isofibration", self.acyclic_isofibration),
        ]
    }
}

/// Structural classification; the equivalence flag uses full, faithful and
/// dense.
pub fn classify(f: &Functor) -> FunctorClassification {
    let full = f.is_full();
    let faithful = f.is_faithful();
    let dense = f.is_dense();
    let injection = f.is_injective_on_objects();
    let isofibration = f.is_isofibration();
    let surjective_on_objects = f.is_surjective_on_objects();
    let equivalence = full && faithful && dense;
    FunctorClassification {
        injection,
        equivalence,
        isofibration,
        full,
        faithful,
        dense,
        surjective_on_objects,
        acyclic_injection: injection && equivalence,
        acyclic_isofibration: isofibration && equivalence,
    }
}

/// Classification with the equivalence flag confirmed by quasi-inverse search.
pub fn classify_checked(f: &Functor, guard: usize) -> Result<(FunctorClassification, bool), GuardExceeded> {
    let c = classify(f);
    let searched = find_quasi_inverse(f, guard)?.is_some();
    Ok((c, searched == c.equivalence))
}

/// The four test functors `∅ → 1`, `K0 → K1`, `K2 → K1` and `1 → I` at 0.
pub fn test_functors() -> [Functor; 4] {
    let one = Arc::new(terminal());
    let k0 = Arc::new(parallel_arrows(0));
    let k1 = Arc::new(parallel_arrows(1));
    let k2 = Arc::new(parallel_arrows(2));
    let i = Arc::new(interval());
    [
        Functor::from_empty(&one),
        Functor::new_unchecked(k0, k1.clone(), vec![0, 1], vec![0, 1]),
        Functor::new_unchecked(k2, k1, vec![0, 1], vec![0, 1, 2, 2]),
        point(&i, 0),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrthogonalityProfile {
    pub surjective_on_objects: bool,
    pub full: bool,
    pub faithful: bool,
    pub isofibration: bool,
}

/// Right lifting against the four test functors.
pub fn orthogonality_profile(amb: &CatAmbient, f: &Functor) -> Result<OrthogonalityProfile, AmbientError> {
    let t = test_functors();
    let r: Vec<bool> = t.iter().map(|s| is_orthogonal(amb, s, f).map(|o| o.holds)).collect::<Result<_, _>>()?;
    Ok(OrthogonalityProfile { surjective_on_objects: r[0], full: r[1], faithful: r[2], isofibration: r[3] })
}

pub fn structural_profile(f: &Functor) -> OrthogonalityProfile {
    OrthogonalityProfile {
        surjective_on_objects: f.is_surjective_on_objects(),
        full: f.is_full(),
        faithful: f.is_faithful(),
        isofibration: f.is_isofibration(),
    }
}

pub fn cat_triple<'a>() -> ModelTriple<'a, Functor> {
    ModelTriple::new(|f: &Functor| f.is_injective_on_objects(), |f: &Functor| classify(f).equivalence, |f: &Functor| f.is_isofibration())
}

pub fn cat_factorizer<'a>() -> Factorizer<'a, Functor> {
    Factorizer {
        acyclic_cof_then_fib: Box::new(|f: &Functor| {
            let c = functor_cocylinder_factorization(f);
            Some((c.iota, c.q))
        }),
        cof_then_acyclic_fib: Box::new(|f: &Functor| {
            let c = functor_cylinder_factorization(f);
            Some((c.j, c.p))
        }),
    }
}

/// The axiom suite on the given categories.
pub fn check_cat_model(objects: &[Arc<FinCat>], opts: AxiomOptions) -> Result<Vec<AxiomReport>, AmbientError> {
    let amb = CatAmbient::new(DEFAULT_GUARD);
    check_model_axioms(&amb, &cat_triple(), objects, Some(&cat_factorizer()), opts)
}
