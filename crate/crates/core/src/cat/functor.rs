//! Functors and natural transformations between finite categories.

use super::fincat::FinCat;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq)]
pub struct Functor {
    pub source: Arc<FinCat>,
    pub target: Arc<FinCat>,
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorError {
    Arity,
    Endpoints(String),
    Identity(String),
    Composition(String, String),
}

impl fmt::Display for FunctorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorError::Arity => write!(f, "object or morphism map has the wrong length"),
            FunctorError::Endpoints(m) => write!(f, "image of `{m}` has wrong endpoints"),
            FunctorError::Identity(o) => write!(f, "identity of `{o}` not preserved"),
            FunctorError::Composition(g, h) => write!(f, "composite {g}∘{h} not preserved"),
        }
    }
}

impl std::error::Error for FunctorError {}

impl fmt::Debug for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let objs: Vec<String> = self
            .obj
            .iter()
            .enumerate()
            .map(|(x, &y)| format!("{}↦{}", self.source.object_name(x), self.target.object_name(y)))
            .collect();
        let mors: Vec<String> = self
            .mor
            .iter()
            .enumerate()
            .filter(|(m, _)| !self.source.is_identity(*m))
            .map(|(m, &n)| format!("{}↦{}", self.source.mor_name(m), self.target.mor_name(n)))
            .collect();
        write!(f, "Functor[{}; {}]", objs.join(", "), mors.join(", "))
    }
}

/// Pointer equality first, then structural equality.
pub fn same_cat(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Functor {
    pub fn new(source: Arc<FinCat>, target: Arc<FinCat>, obj: Vec<usize>, mor: Vec<usize>) -> Result<Functor, FunctorError> {
        let f = Functor { source, target, obj, mor };
        f.check()?;
        Ok(f)
    }

    /// Builds without checking; callers guarantee functoriality.
    pub fn new_unchecked(source: Arc<FinCat>, target: Arc<FinCat>, obj: Vec<usize>, mor: Vec<usize>) -> Functor {
        Functor { source, target, obj, mor }
    }

    pub fn from_names(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        obj: &[(&str, &str)],
        mor: &[(&str, &str)],
    ) -> Result<Functor, FunctorError> {
        let mut om = vec![usize::MAX; source.num_objects()];
        for (a, b) in obj {
            let (Some(x), Some(y)) = (source.object_index(a), target.object_index(b)) else {
                return Err(FunctorError::Arity);
            };
            om[x] = y;
        }
        if om.contains(&usize::MAX) {
            return Err(FunctorError::Arity);
        }
        let mut mm = vec![usize::MAX; source.num_morphisms()];
        for x in 0..source.num_objects() {
            mm[source.id(x)] = target.id(om[x]);
        }
        for (a, b) in mor {
            let (Some(x), Some(y)) = (source.mor_index(a), target.mor_index(b)) else {
                return Err(FunctorError::Arity);
            };
            mm[x] = y;
        }
        if mm.contains(&usize::MAX) {
            return Err(FunctorError::Arity);
        }
        Functor::new(source, target, om, mm)
    }

    pub fn check(&self) -> Result<(), FunctorError> {
        let (c, d) = (&self.source, &self.target);
        if self.obj.len() != c.num_objects() || self.mor.len() != c.num_morphisms() {
            return Err(FunctorError::Arity);
        }
        if self.obj.iter().any(|&y| y >= d.num_objects()) || self.mor.iter().any(|&y| y >= d.num_morphisms()) {
            return Err(FunctorError::Arity);
        }
        for f in 0..c.num_morphisms() {
            let g = self.mor[f];
            if d.dom(g) != self.obj[c.dom(f)] || d.cod(g) != self.obj[c.cod(f)] {
                return Err(FunctorError::Endpoints(c.mor_name(f).to_string()));
            }
        }
        for x in 0..c.num_objects() {
            if self.mor[c.id(x)] != d.id(self.obj[x]) {
                return Err(FunctorError::Identity(c.object_name(x).to_string()));
            }
        }
        for g in 0..c.num_morphisms() {
            for f in 0..c.num_morphisms() {
                if let Some(h) = c.try_comp(g, f) {
                    if self.mor[h] != d.comp(self.mor[g], self.mor[f]) {
                        return Err(FunctorError::Composition(c.mor_name(g).to_string(), c.mor_name(f).to_string()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(c: &Arc<FinCat>) -> Functor {
        Functor {
            source: c.clone(),
            target: c.clone(),
            obj: (0..c.num_objects()).collect(),
            mor: (0..c.num_morphisms()).collect(),
        }
    }

    /// The unique functor out of the empty category.
    pub fn from_empty(target: &Arc<FinCat>) -> Functor {
        Functor { source: Arc::new(FinCat::empty()), target: target.clone(), obj: Vec::new(), mor: Vec::new() }
    }

    /// `self` then `next`, i.e. `next∘self`.
    pub fn then(&self, next: &Functor) -> Functor {
        assert!(same_cat(&self.target, &next.source), "functors not composable");
        Functor {
            source: self.source.clone(),
            target: next.target.clone(),
            obj: self.obj.iter().map(|&x| next.obj[x]).collect(),
            mor: self.mor.iter().map(|&f| next.mor[f]).collect(),
        }
    }

    pub fn composable_with(&self, next: &Functor) -> bool {
        same_cat(&self.target, &next.source)
    }

    pub fn is_full(&self) -> bool {
        let (c, d) = (&self.source, &self.target);
        for x in 0..c.num_objects() {
            for y in 0..c.num_objects() {
                let target_hom = d.hom(self.obj[x], self.obj[y]);
                let mut hit = vec![false; d.num_morphisms()];
                for &f in c.hom(x, y) {
                    hit[self.mor[f]] = true;
                }
                if target_hom.iter().any(|&g| !hit[g]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_faithful(&self) -> bool {
        let c = &self.source;
        for x in 0..c.num_objects() {
            for y in 0..c.num_objects() {
                let h = c.hom(x, y);
                for (i, &f) in h.iter().enumerate() {
                    for &g in &h[i + 1..] {
                        if self.mor[f] == self.mor[g] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Every target object is isomorphic to an image object.
    pub fn is_dense(&self) -> bool {
        let d = &self.target;
        (0..d.num_objects()).all(|y| self.obj.iter().any(|&fx| d.isomorphic_objects(fx, y)))
    }

    pub fn is_surjective_on_objects(&self) -> bool {
        let mut hit = vec![false; self.target.num_objects()];
        for &y in &self.obj {
            hit[y] = true;
        }
        hit.iter().all(|&h| h)
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut hit = vec![false; self.target.num_objects()];
        for &y in &self.obj {
            if hit[y] {
                return false;
            }
            hit[y] = true;
        }
        true
    }

    /// Every iso out of an image object lifts to an iso with that image.
    pub fn is_isofibration(&self) -> bool {
        let (c, d) = (&self.source, &self.target);
        for x in 0..c.num_objects() {
            let lifts: Vec<usize> = c.isos_from(x).iter().map(|&h| self.mor[h]).collect();
            for g in d.isos_from(self.obj[x]) {
                if !lifts.contains(&g) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_bijective_on_morphisms() && self.obj.len() == self.target.num_objects() && self.is_injective_on_objects()
    }

    fn is_bijective_on_morphisms(&self) -> bool {
        let mut hit = vec![false; self.target.num_morphisms()];
        for &g in &self.mor {
            if hit[g] {
                return false;
            }
            hit[g] = true;
        }
        hit.iter().all(|&h| h)
    }

    /// The inverse functor when this is an isomorphism of categories.
    pub fn inverse(&self) -> Option<Functor> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut obj = vec![0; self.target.num_objects()];
        for (x, &y) in self.obj.iter().enumerate() {
            obj[y] = x;
        }
        let mut mor = vec![0; self.target.num_morphisms()];
        for (f, &g) in self.mor.iter().enumerate() {
            mor[g] = f;
        }
        Some(Functor { source: self.target.clone(), target: self.source.clone(), obj, mor })
    }

    pub fn parallel(&self, other: &Functor) -> bool {
        same_cat(&self.source, &other.source) && same_cat(&self.target, &other.target)
    }

    /// Equal as functors: same endpoints and same maps.
    pub fn same(&self, other: &Functor) -> bool {
        self.obj == other.obj && self.mor == other.mor && self.parallel(other)
    }
}

/// A natural transformation `F ⇒ G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransf {
    pub from: Functor,
    pub to: Functor,
    pub components: Vec<usize>,
}

impl NatTransf {
    pub fn is_natural(&self) -> bool {
        let (c, d) = (&self.from.source, &self.from.target);
        for x in 0..c.num_objects() {
            let eta = self.components[x];
            if d.dom(eta) != self.from.obj[x] || d.cod(eta) != self.to.obj[x] {
                return false;
            }
        }
        (0..c.num_morphisms()).all(|f| {
            let (x, y) = (c.dom(f), c.cod(f));
            d.comp(self.to.mor[f], self.components[x]) == d.comp(self.components[y], self.from.mor[f])
        })
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(|&e| self.from.target.is_iso(e))
    }

    pub fn identity(f: &Functor) -> NatTransf {
        let comps = f.obj.iter().map(|&y| f.target.id(y)).collect();
        NatTransf { from: f.clone(), to: f.clone(), components: comps }
    }
}
