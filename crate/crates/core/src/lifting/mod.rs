//! Lifting properties, retracts, cell complexes and model-axiom checks over
//! an abstract ambient category.

pub mod axioms;
pub mod cell;

use crate::cat::enumerate::{Flow, GuardExceeded};
use std::fmt::{self, Debug};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AmbientError {
    Guard(GuardExceeded),
    NotEnumerable,
    Unsupported(String),
}

impl fmt::Display for AmbientError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmbientError::Guard(g) => write!(f, "{g}"),
            AmbientError::NotEnumerable => write!(f, "ambient cannot enumerate hom sets"),
            AmbientError::Unsupported(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for AmbientError {}

impl From<GuardExceeded> for AmbientError {
    fn from(g: GuardExceeded) -> Self {
        AmbientError::Guard(g)
    }
}

/// Operations a category must supply for the generic lifting machinery.
pub trait Ambient {
    type Obj: Clone + Debug;
    type Mor: Clone + Debug;

    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    /// `g∘f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;
    fn mor_eq(&self, a: &Self::Mor, b: &Self::Mor) -> bool;

    /// Every morphism `x → y`, in a deterministic order.
    fn hom(&self, _x: &Self::Obj, _y: &Self::Obj) -> Result<Vec<Self::Mor>, AmbientError> {
        Err(AmbientError::NotEnumerable)
    }

    /// A lift computed directly when the ambient knows how.
    fn constructive_lift(&self, _sq: &Square<Self::Mor>) -> Option<Self::Mor> {
        None
    }

    /// Visits every lift of the square.
    fn lifts(&self, sq: &Square<Self::Mor>, visit: &mut dyn FnMut(&Self::Mor) -> Flow) -> Result<(), AmbientError> {
        for h in self.hom(&self.cod(&sq.f), &self.dom(&sq.g))? {
            if square_lift_ok(self, sq, &h) && visit(&h) == Flow::Stop {
                break;
            }
        }
        Ok(())
    }

    /// Whether every commuting square from `f` to `g` lifts, with the first
    /// square that does not.
    fn orthogonal(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Orthogonality<Self::Mor>, AmbientError> {
        orthogonal_by_squares(self, f, g)
    }

    /// Visits every commuting square from `f` to `g` as `(top, bottom)`,
    /// lexicographically in (top, bottom).
    fn squares(&self, f: &Self::Mor, g: &Self::Mor, visit: &mut dyn FnMut(&Self::Mor, &Self::Mor) -> Flow) -> Result<(), AmbientError> {
        let tops = self.hom(&self.dom(f), &self.dom(g))?;
        let bottoms = self.hom(&self.cod(f), &self.cod(g))?;
        for t in &tops {
            let gt = self.compose(g, t);
            for b in &bottoms {
                if self.mor_eq(&gt, &self.compose(b, f)) && visit(t, b) == Flow::Stop {
                    return Ok(());
                }
            }
        }
        Ok(())
    }
}

/// Commuting square `g∘top = bottom∘f`.
#[derive(Clone, Debug)]
pub struct Square<M> {
    pub f: M,
    pub g: M,
    pub top: M,
    pub bottom: M,
}

impl<M: Clone> Square<M> {
    pub fn new(f: &M, g: &M, top: &M, bottom: &M) -> Square<M> {
        Square { f: f.clone(), g: g.clone(), top: top.clone(), bottom: bottom.clone() }
    }
}

pub fn square_commutes<A: Ambient + ?Sized>(amb: &A, sq: &Square<A::Mor>) -> bool {
    amb.mor_eq(&amb.compose(&sq.g, &sq.top), &amb.compose(&sq.bottom, &sq.f))
}

/// Both triangles: `h∘f = top` and `g∘h = bottom`.
pub fn square_lift_ok<A: Ambient + ?Sized>(amb: &A, sq: &Square<A::Mor>, h: &A::Mor) -> bool {
    amb.mor_eq(&amb.compose(h, &sq.f), &sq.top) && amb.mor_eq(&amb.compose(&sq.g, h), &sq.bottom)
}

#[derive(Clone, Debug)]
pub struct LiftWitness<M> {
    pub h: M,
    pub constructive: bool,
}

/// A lift, or `None` once every candidate has been exhausted.
pub fn find_lifting<A: Ambient + ?Sized>(amb: &A, sq: &Square<A::Mor>) -> Result<Option<LiftWitness<A::Mor>>, AmbientError> {
    if let Some(h) = amb.constructive_lift(sq) {
        if square_lift_ok(amb, sq, &h) {
            return Ok(Some(LiftWitness { h, constructive: true }));
        }
    }
    let mut found = None;
    amb.lifts(sq, &mut |h| {
        found = Some(h.clone());
        Flow::Stop
    })?;
    Ok(found.map(|h| LiftWitness { h, constructive: false }))
}

#[derive(Clone, Debug)]
pub struct Orthogonality<M> {
    pub holds: bool,
    pub squares_checked: usize,
    pub counterexample: Option<Square<M>>,
}

/// `f ⊥ g`, through the ambient's own decision procedure.
pub fn is_orthogonal<A: Ambient>(amb: &A, f: &A::Mor, g: &A::Mor) -> Result<Orthogonality<A::Mor>, AmbientError> {
    amb.orthogonal(f, g)
}

/// `f ⊥ g` by lifting every commuting square.
pub fn orthogonal_by_squares<A: Ambient + ?Sized>(amb: &A, f: &A::Mor, g: &A::Mor) -> Result<Orthogonality<A::Mor>, AmbientError> {
    let mut checked = 0;
    let mut counter = None;
    let mut err = None;
    amb.squares(f, g, &mut |t, b| {
        checked += 1;
        let sq = Square::new(f, g, t, b);
        match find_lifting(amb, &sq) {
            Ok(Some(_)) => Flow::Continue,
            Ok(None) => {
                counter = Some(sq);
                Flow::Stop
            }
            Err(e) => {
                err = Some(e);
                Flow::Stop
            }
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(Orthogonality { holds: counter.is_none(), squares_checked: checked, counterexample: counter })
}

/// `f` is a retract of `f2` via `(i, p)` on domains and `(j, q)` on codomains.
#[derive(Clone, Debug)]
pub struct RetractWitness<M> {
    pub i: M,
    pub p: M,
    pub j: M,
    pub q: M,
}

pub fn retract_ok<A: Ambient + ?Sized>(amb: &A, f: &A::Mor, f2: &A::Mor, w: &RetractWitness<A::Mor>) -> bool {
    let (x, y) = (amb.dom(f), amb.cod(f));
    amb.mor_eq(&amb.compose(&w.p, &w.i), &amb.identity(&x))
        && amb.mor_eq(&amb.compose(&w.q, &w.j), &amb.identity(&y))
        && amb.mor_eq(&amb.compose(f2, &w.i), &amb.compose(&w.j, f))
        && amb.mor_eq(&amb.compose(&w.q, f2), &amb.compose(f, &w.p))
}

/// Pairs `(s, r)` with `s: x → y`, `r: y → x` and `r∘s = Id`.
pub fn retraction_pairs<A: Ambient + ?Sized>(amb: &A, x: &A::Obj, y: &A::Obj) -> Result<Vec<(A::Mor, A::Mor)>, AmbientError> {
    let id = amb.identity(x);
    let back = amb.hom(y, x)?;
    let mut out = Vec::new();
    for s in amb.hom(x, y)? {
        for r in &back {
            if amb.mor_eq(&amb.compose(r, &s), &id) {
                out.push((s.clone(), r.clone()));
            }
        }
    }
    Ok(out)
}

/// Exhaustive search for a retract diagram from `f` to `f2`.
pub fn find_retract<A: Ambient>(amb: &A, f: &A::Mor, f2: &A::Mor) -> Result<Option<RetractWitness<A::Mor>>, AmbientError> {
    let dom_pairs = retraction_pairs(amb, &amb.dom(f), &amb.dom(f2))?;
    let cod_pairs = retraction_pairs(amb, &amb.cod(f), &amb.cod(f2))?;
    for (i, p) in &dom_pairs {
        for (j, q) in &cod_pairs {
            let w = RetractWitness { i: i.clone(), p: p.clone(), j: j.clone(), q: q.clone() };
            if retract_ok(amb, f, f2, &w) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Left homotopy through a chosen cylinder `x ⊔ x → cyl → x`, given by its
/// two legs `i0, i1: x → cyl`: some `H: cyl → y` with `H∘i0 = f`, `H∘i1 = g`.
pub fn cylinder_homotopy_check<A: Ambient>(amb: &A, f: &A::Mor, g: &A::Mor, i0: &A::Mor, i1: &A::Mor) -> Result<Option<A::Mor>, AmbientError> {
    for h in amb.hom(&amb.cod(i0), &amb.cod(f))? {
        if amb.mor_eq(&amb.compose(&h, i0), f) && amb.mor_eq(&amb.compose(&h, i1), g) {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// Right homotopy through a chosen path object with legs `p0, p1: path → y`.
pub fn path_homotopy_check<A: Ambient>(amb: &A, f: &A::Mor, g: &A::Mor, p0: &A::Mor, p1: &A::Mor) -> Result<Option<A::Mor>, AmbientError> {
    for k in amb.hom(&amb.dom(f), &amb.dom(p0))? {
        if amb.mor_eq(&amb.compose(p0, &k), f) && amb.mor_eq(&amb.compose(p1, &k), g) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
