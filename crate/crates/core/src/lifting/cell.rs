//! Relative cell complexes and the bounded small object argument.

use super::{Ambient, AmbientError};
use std::fmt::Debug;

pub const DEFAULT_MAX_STAGES: usize = 8;

/// An ambient that can attach cells along generating morphisms.
pub trait CellAmbient: Ambient {
    /// One attachment: a generator together with its attaching data.
    type Cell: Clone + Debug;

    /// Cells to attach so that `p` moves closer to the right class; empty
    /// when the ambient sees nothing left to attach.
    fn attachments(&self, p: &Self::Mor, stage: usize) -> Result<Vec<Self::Cell>, AmbientError>;

    /// Pushout of the coproduct of `cells` along the current stage:
    /// returns the stage map `X → X'` and the induced `p': X' → Y`.
    fn attach(&self, p: &Self::Mor, cells: &[Self::Cell]) -> Result<(Self::Mor, Self::Mor), AmbientError>;

    /// Whether `p` lifts against the generators on the ambient's test sample.
    fn right_class_sample(&self, p: &Self::Mor) -> Result<bool, AmbientError>;
}

#[derive(Clone, Debug)]
pub struct CellStage<M, C> {
    pub cells: Vec<C>,
    /// `X_k → X_{k+1}`.
    pub map: M,
    /// `X_{k+1} → Y`.
    pub right: M,
}

#[derive(Clone, Debug)]
pub struct CellComplexWitness<M, C> {
    pub stages: Vec<CellStage<M, C>>,
    /// Composite of the stage maps.
    pub composite: M,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SoaStatus {
    /// The right map passed the ambient's orthogonality sample.
    Converged,
    /// Stage cap reached first.
    Partial,
    /// No attachments were offered but the right map still fails the sample.
    Stuck,
}

#[derive(Clone, Debug)]
pub struct SoaResult<M, C> {
    pub cell: CellComplexWitness<M, C>,
    pub right: M,
    pub status: SoaStatus,
    /// `f = p_k∘i_k` held after every stage.
    pub invariant_held: bool,
}

/// One pushout stage, verifying that the new right map still factors `p`.
pub fn cell_step<A: CellAmbient>(amb: &A, p: &A::Mor, cells: &[A::Cell]) -> Result<CellStage<A::Mor, A::Cell>, AmbientError> {
    let (map, right) = amb.attach(p, cells)?;
    Ok(CellStage { cells: cells.to_vec(), map, right })
}

/// Factors `f = p∘i` with `i` a finite composite of cell attachments.
pub fn small_object_factorization<A: CellAmbient>(amb: &A, f: &A::Mor, max_stages: usize) -> Result<SoaResult<A::Mor, A::Cell>, AmbientError> {
    let mut i = amb.identity(&amb.dom(f));
    let mut p = f.clone();
    let mut stages = Vec::new();
    let mut invariant_held = true;
    let mut status = SoaStatus::Partial;
    for k in 0..=max_stages {
        if amb.right_class_sample(&p)? {
            status = SoaStatus::Converged;
            break;
        }
        if k == max_stages {
            break;
        }
        let cells = amb.attachments(&p, k)?;
        if cells.is_empty() {
            status = SoaStatus::Stuck;
            break;
        }
        let stage = cell_step(amb, &p, &cells)?;
        i = amb.compose(&stage.map, &i);
        p = stage.right.clone();
        invariant_held &= amb.mor_eq(&amb.compose(&p, &i), f);
        stages.push(stage);
    }
    Ok(SoaResult { cell: CellComplexWitness { stages, composite: i }, right: p, status, invariant_held })
}
