use super::concrete::{elem_add, elem_sub, unit, ConcreteDgCat, DgError, Elem};
use super::poly::{NcPoly, Path};
use super::presentation::Presentation;
use super::rewrite::Rules;
use crate::complexes::{ChainMap, ComplexError};
use crate::linalg::Matrix;
use crate::Scalar;
use std::sync::Arc;

/// A dg functor out of a presentation, given by images of generators in a
/// concrete target.
#[derive(Clone, Debug)]
pub struct FreeMap<S> {
    pub source: Arc<Presentation<S>>,
    pub target: Arc<ConcreteDgCat<S>>,
    pub obj: Vec<usize>,
    pub images: Vec<Elem<S>>,
}

impl<S: Scalar> FreeMap<S> {
    pub fn new(source: Arc<Presentation<S>>, target: Arc<ConcreteDgCat<S>>, obj: Vec<usize>, images: Vec<Elem<S>>) -> Self {
        FreeMap { source, target, obj, images }
    }

    /// Image of a path; `None` when a product in the target is unknown.
    pub fn eval_path(&self, p: &Path) -> Option<Elem<S>> {
        let mut acc = self.target.identity[self.obj[p.src]].clone();
        for &a in p.word.iter().rev() {
            acc = self.target.compose(&self.images[a], &acc)?;
        }
        Some(acc)
    }

    pub fn eval(&self, p: &NcPoly<S>) -> Option<Elem<S>> {
        let mut out = Elem::new();
        for (t, c) in &p.terms {
            elem_add(&mut out, &self.eval_path(t)?, c);
        }
        Some(out)
    }

    /// Degrees, endpoints, `f(d x) = d f(x)` on generators and relations sent to zero.
    pub fn check(&self) -> Result<(), DgError> {
        let (q, t) = (&self.source.quiver, &self.target);
        for (a, g) in q.gens.iter().enumerate() {
            for &i in self.images[a].keys() {
                let b = &t.basis[i];
                if b.degree != g.degree || b.src != self.obj[g.src] || b.tgt != self.obj[g.tgt] {
                    return Err(DgError::DegreeMismatch { what: format!("image of {}", g.name) });
                }
            }
            let lhs = self.eval(&self.source.diff[a]).ok_or_else(|| DgError::Unknown(format!("image of d({}) leaves the window", g.name)))?;
            if g.degree < t.hi && lhs != t.d(&self.images[a]) {
                return Err(DgError::NotChainMap { element: g.name.clone() });
            }
        }
        for (k, r) in self.source.relations.iter().enumerate() {
            match self.eval(r) {
                Some(v) if v.is_empty() => {}
                Some(_) => return Err(DgError::Relation { index: k }),
                None => return Err(DgError::Unknown(format!("image of relation {k} leaves the window"))),
            }
        }
        Ok(())
    }

    /// The induced map on a truncation of the source.
    pub fn on_truncation(&self, a: &Arc<ConcreteDgCat<S>>) -> Option<BasisMap<S>> {
        let images = a.basis.iter().map(|b| self.eval_path(b.path.as_ref()?)).collect::<Option<Vec<_>>>()?;
        Some(BasisMap { source: a.clone(), target: self.target.clone(), obj: self.obj.clone(), images })
    }

    pub fn compose_with(&self, g: &BasisMap<S>) -> FreeMap<S> {
        FreeMap {
            source: self.source.clone(),
            target: g.target.clone(),
            obj: self.obj.iter().map(|&x| g.obj[x]).collect(),
            images: self.images.iter().map(|e| g.apply(e)).collect(),
        }
    }
}

/// A dg functor between concrete dg categories, linear on basis elements.
#[derive(Clone, Debug)]
pub struct BasisMap<S> {
    pub source: Arc<ConcreteDgCat<S>>,
    pub target: Arc<ConcreteDgCat<S>>,
    pub obj: Vec<usize>,
    pub images: Vec<Elem<S>>,
}

impl<S: Scalar> BasisMap<S> {
    pub fn identity(c: &Arc<ConcreteDgCat<S>>) -> Self {
        BasisMap { source: c.clone(), target: c.clone(), obj: (0..c.num_objects()).collect(), images: (0..c.len()).map(unit).collect() }
    }

    pub fn apply(&self, e: &Elem<S>) -> Elem<S> {
        let mut out = Elem::new();
        for (&i, c) in e {
            elem_add(&mut out, &self.images[i], c);
        }
        out
    }

    pub fn then(&self, g: &BasisMap<S>) -> BasisMap<S> {
        BasisMap {
            source: self.source.clone(),
            target: g.target.clone(),
            obj: self.obj.iter().map(|&x| g.obj[x]).collect(),
            images: self.images.iter().map(|e| g.apply(e)).collect(),
        }
    }

    /// Degree, differential, product and identity compatibility wherever known.
    pub fn check(&self) -> Result<(), DgError> {
        let (s, t) = (&self.source, &self.target);
        for (i, b) in s.basis.iter().enumerate() {
            for &j in self.images[i].keys() {
                let c = &t.basis[j];
                if c.degree != b.degree || c.src != self.obj[b.src] || c.tgt != self.obj[b.tgt] {
                    return Err(DgError::DegreeMismatch { what: format!("image of {}", b.label) });
                }
            }
            if b.degree < s.hi.min(t.hi) && self.apply(&s.diff[i]) != t.d(&self.images[i]) {
                return Err(DgError::NotChainMap { element: b.label.clone() });
            }
        }
        for (x, id) in s.identity.iter().enumerate() {
            if self.apply(id) != t.identity[self.obj[x]] {
                return Err(DgError::Identity { element: format!("identity of {}", s.objects[x]) });
            }
        }
        let mut keys: Vec<&(usize, usize)> = s.mult.keys().collect();
        keys.sort();
        for &(a, b) in keys {
            if let Some(v) = t.compose(&self.images[a], &self.images[b]) {
                if v != self.apply(&s.mult[&(a, b)]) {
                    return Err(DgError::NotMultiplicative { left: s.label(a).into(), right: s.label(b).into() });
                }
            }
        }
        Ok(())
    }

    /// The cochain map on windowed Hom complexes, over the union of the windows.
    pub fn on_hom(&self, x: usize, y: usize) -> Result<ChainMap<S>, ComplexError> {
        let (s, t) = (&self.source, &self.target);
        let (fx, fy) = (self.obj[x], self.obj[y]);
        let (lo, hi) = (s.lo.min(t.lo), s.hi.max(t.hi));
        let src = s.hom_complex(x, y).widen(lo, hi);
        let tgt = t.hom_complex(fx, fy).widen(lo, hi);
        let comps = (lo..=hi)
            .map(|n| {
                let cols: Vec<Vec<S>> = s.block(x, y, n).iter().map(|&i| t.coords(&self.images[i], fx, fy, n)).collect();
                Matrix::from_columns(t.dim(fx, fy, n), &cols)
            })
            .collect();
        ChainMap::new(src, tgt, lo, comps)
    }

    pub fn differs_from(&self, other: &BasisMap<S>) -> Option<usize> {
        (0..self.images.len()).find(|&i| !elem_sub(&self.images[i], &other.images[i]).is_empty())
    }
}

/// A dg functor between presentations, by images of generators.
#[derive(Clone, Debug)]
pub struct SymbolicMap<S> {
    pub source: Arc<Presentation<S>>,
    pub target: Arc<Presentation<S>>,
    pub obj: Vec<usize>,
    pub images: Vec<NcPoly<S>>,
}

impl<S: Scalar> SymbolicMap<S> {
    pub fn eval_path(&self, p: &Path, rules: &Rules<S>) -> NcPoly<S> {
        let mut acc = self.target.id(self.obj[p.src]);
        for &a in p.word.iter().rev() {
            acc = self.target.reduce(rules, &self.images[a].after(&acc));
        }
        acc
    }

    pub fn eval(&self, p: &NcPoly<S>, rules: &Rules<S>) -> NcPoly<S> {
        let mut out = NcPoly::zero();
        for (t, c) in &p.terms {
            out.add_scaled(&self.eval_path(t, rules), c);
        }
        out
    }

    /// `F(d x) ≡ d F(x)` on generators and relations sent into the ideal,
    /// both modulo the target relations completed up to `bound`.
    pub fn check(&self, bound: u32) -> Result<(), DgError> {
        let rules = self.target.rules(bound);
        let q = &self.source.quiver;
        for (a, g) in q.gens.iter().enumerate() {
            let img = &self.images[a];
            if !img.is_zero() && (img.degree() != Some(g.degree) || img.endpoints() != Some((self.obj[g.src], self.obj[g.tgt]))) {
                return Err(DgError::DegreeMismatch { what: format!("image of {}", g.name) });
            }
            let lhs = self.eval(&self.source.diff[a], &rules);
            let rhs = self.target.reduce(&rules, &self.target.d(img));
            if !lhs.sub(&rhs).is_zero() {
                return Err(DgError::NotChainMap { element: g.name.clone() });
            }
        }
        for (k, r) in self.source.relations.iter().enumerate() {
            if !self.eval(r, &rules).is_zero() {
                return Err(DgError::Relation { index: k });
            }
        }
        Ok(())
    }
}
