//! Dg functors between concrete dg categories: products, the classes used by
//! the model structure, and cochain homotopies between functors.

use super::h0::H0Category;
use super::linear::{combine, small_combinations, unknown_product, System};
use super::mor::{mor_category, MorCategory, MorObject};
use crate::complexes::{is_quasi_iso, ChainMap};
use crate::dg::concrete::{elem_add, elem_scale, unit};
use crate::dg::{BasisElem, BasisMap, ConcreteDgCat, DgError, Elem, FreeMap, Path};
use crate::linalg::Matrix;
use crate::Scalar;
use std::collections::HashMap;
use std::sync::Arc;

/// `A × B`: object `(a, b)` has index `a · |B| + b`; Homs are direct sums
/// with the `A` part first.
pub struct Product<S> {
    pub cat: Arc<ConcreteDgCat<S>>,
    pub first: Arc<ConcreteDgCat<S>>,
    pub second: Arc<ConcreteDgCat<S>>,
    index: HashMap<(usize, usize, bool, usize), usize>,
}

impl<S: Scalar> Product<S> {
    pub fn new(a: &Arc<ConcreteDgCat<S>>, b: &Arc<ConcreteDgCat<S>>) -> Self {
        let (na, nb) = (a.num_objects(), b.num_objects());
        let mut basis = Vec::new();
        let mut origin = Vec::new();
        let mut index = HashMap::new();
        let mut objects = Vec::new();
        for x in 0..na {
            for y in 0..nb {
                objects.push(format!("({},{})", a.objects[x], b.objects[y]));
            }
        }
        for s in 0..na * nb {
            for t in 0..na * nb {
                let (sa, sb, ta, tb) = (s / nb, s % nb, t / nb, t % nb);
                for (second, c, (from, to)) in [(false, a, (sa, ta)), (true, b, (sb, tb))] {
                    for (i, be) in c.basis.iter().enumerate() {
                        if (be.src, be.tgt) == (from, to) {
                            index.insert((s, t, second, i), basis.len());
                            origin.push((second, i));
                            let label = if second { format!("(0,{})", be.label) } else { format!("({},0)", be.label) };
                            basis.push(BasisElem { src: s, tgt: t, label, path: None, ..be.clone() });
                        }
                    }
                }
            }
        }
        let side = |second: bool| if second { b } else { a };
        let lift = |s: usize, t: usize, second: bool, e: &Elem<S>| -> Elem<S> { e.iter().map(|(&i, c)| (index[&(s, t, second, i)], c.clone())).collect() };
        let diff = basis.iter().zip(&origin).map(|(be, &(second, i))| lift(be.src, be.tgt, second, &side(second).diff[i])).collect();
        let (lo, hi) = (a.lo.min(b.lo), a.hi.max(b.hi));
        let mut mult = HashMap::new();
        for (q, bq) in basis.iter().enumerate() {
            for (p, bp) in basis.iter().enumerate() {
                if bp.tgt != bq.src || bp.degree + bq.degree < lo || bp.degree + bq.degree > hi {
                    continue;
                }
                let ((s1, i), (s2, j)) = (origin[q], origin[p]);
                if s1 != s2 {
                    mult.insert((q, p), Elem::new());
                } else if let Some(v) = side(s1).compose_basis(i, j) {
                    mult.insert((q, p), lift(bp.src, bq.tgt, s1, &v));
                }
            }
        }
        let identity = (0..na * nb)
            .map(|s| {
                let mut id = lift(s, s, false, &a.identity[s / nb]);
                elem_add(&mut id, &lift(s, s, true, &b.identity[s % nb]), &S::one());
                id
            })
            .collect();
        let supported = a.supported && b.supported;
        let cap = if supported { None } else { a.cap.or(b.cap) };
        let cat = ConcreteDgCat::new(objects, lo, hi, cap, supported, basis, diff, mult, identity);
        Product { cat: Arc::new(cat), first: a.clone(), second: b.clone(), index }
    }

    pub fn object(&self, x: usize, y: usize) -> usize {
        x * self.second.num_objects() + y
    }

    pub fn left(&self, s: usize, t: usize, e: &Elem<S>) -> Elem<S> {
        e.iter().map(|(&i, c)| (self.index[&(s, t, false, i)], c.clone())).collect()
    }

    pub fn right(&self, s: usize, t: usize, e: &Elem<S>) -> Elem<S> {
        e.iter().map(|(&i, c)| (self.index[&(s, t, true, i)], c.clone())).collect()
    }

    /// `X ↦ (X, X)` for a product of a category with itself.
    pub fn diagonal(&self) -> BasisMap<S> {
        let c = &self.first;
        let obj: Vec<usize> = (0..c.num_objects()).map(|x| self.object(x, x)).collect();
        let images = c
            .basis
            .iter()
            .enumerate()
            .map(|(i, be)| {
                let (s, t) = (obj[be.src], obj[be.tgt]);
                let mut e = self.left(s, t, &unit(i));
                elem_add(&mut e, &self.right(s, t, &unit(i)), &S::one());
                e
            })
            .collect();
        BasisMap { source: c.clone(), target: self.cat.clone(), obj, images }
    }

    pub fn projection(&self, second: bool) -> BasisMap<S> {
        let nb = self.second.num_objects();
        let obj = (0..self.cat.num_objects()).map(|s| if second { s % nb } else { s / nb }).collect();
        let mut images = vec![Elem::new(); self.cat.len()];
        for (&(_, _, side, i), &k) in &self.index {
            if side == second {
                images[k] = unit(i);
            }
        }
        BasisMap { source: self.cat.clone(), target: if second { self.second.clone() } else { self.first.clone() }, obj, images }
    }
}

/// The cochain map `Hom(x, y) → Hom(Fx, Fy)`. Between finite categories the
/// window gets one zero degree on each side so that cohomology is exact.
pub fn hom_chain_map<S: Scalar>(f: &BasisMap<S>, x: usize, y: usize) -> ChainMap<S> {
    let (s, t) = (&f.source, &f.target);
    if !(s.supported && t.supported) {
        return f.on_hom(x, y).expect("a dg functor gives a cochain map");
    }
    let (fx, fy) = (f.obj[x], f.obj[y]);
    let (lo, hi) = (s.lo.min(t.lo) - 1, s.hi.max(t.hi) + 1);
    let comps = (lo..=hi)
        .map(|n| {
            let cols: Vec<Vec<S>> = s.block(x, y, n).iter().map(|&i| t.coords(&f.images[i], fx, fy, n)).collect();
            Matrix::from_columns(t.dim(fx, fy, n), &cols)
        })
        .collect();
    ChainMap::new(s.hom_complex_on(x, y, lo, hi), t.hom_complex_on(fx, fy, lo, hi), lo, comps).expect("a dg functor gives a cochain map")
}

pub fn is_quasi_iso_on_hom<S: Scalar>(f: &BasisMap<S>, x: usize, y: usize) -> bool {
    is_quasi_iso(&hom_chain_map(f, x, y))
}

/// Properties of a dg functor, decided on the stored windows. The full
/// isofibration lifting condition is only tried on small-coefficient
/// homotopy equivalences; `lifts_missing` counts candidates without a lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorClass {
    pub quasi_fully_faithful: bool,
    pub dense: bool,
    pub quasi_equivalence: bool,
    pub full: bool,
    pub surjective_on_objects: bool,
    pub full_isofibration: bool,
    pub candidates_checked: usize,
    pub lifts_missing: usize,
}

impl FunctorClass {
    /// Weak equivalence and fibration at once.
    pub fn trivial_fibration(&self) -> bool {
        self.quasi_equivalence && self.full_isofibration
    }
}

pub fn classify_dg_functor<S: Scalar>(f: &BasisMap<S>, per_pair: usize) -> Result<FunctorClass, DgError> {
    let (s, t) = (&f.source, &f.target);
    let (ns, nt) = (s.num_objects(), t.num_objects());
    let mut qff = true;
    let mut full = true;
    for x in 0..ns {
        for y in 0..ns {
            let m = hom_chain_map(f, x, y);
            qff &= is_quasi_iso(&m);
            full &= m.is_surjective();
        }
    }
    let ht = H0Category::new(t);
    let hs = H0Category::new(s);
    let mut dense = true;
    for y in 0..nt {
        let mut hit = false;
        for x in 0..ns {
            if f.obj[x] == y || ht.isomorphism(f.obj[x], y)?.is_some() {
                hit = true;
                break;
            }
        }
        dense &= hit;
    }
    let surjective_on_objects = (0..nt).all(|y| f.obj.contains(&y));
    let mut candidates_checked = 0;
    let mut lifts_missing = 0;
    if full {
        for x in 0..ns {
            for y2 in 0..nt {
                for v in ht.equivalence_candidates(f.obj[x], y2)?.into_iter().take(per_pair) {
                    candidates_checked += 1;
                    let mut found = false;
                    for x2 in (0..ns).filter(|&x2| f.obj[x2] == y2) {
                        if lift_equivalence(f, &hs, x, x2, &v)?.is_some() {
                            found = true;
                            break;
                        }
                    }
                    lifts_missing += (!found) as usize;
                }
            }
        }
    }
    Ok(FunctorClass {
        quasi_fully_faithful: qff,
        dense,
        quasi_equivalence: qff && dense,
        full,
        surjective_on_objects,
        full_isofibration: full && lifts_missing == 0,
        candidates_checked,
        lifts_missing,
    })
}

/// A closed `u: x → x2` with `F(u) = v` that is a homotopy equivalence, if
/// one is found among small combinations of the solution space.
pub fn lift_equivalence<S: Scalar>(f: &BasisMap<S>, hs: &H0Category<S>, x: usize, x2: usize, v: &Elem<S>) -> Result<Option<Elem<S>>, DgError> {
    let (s, t) = (&f.source, &f.target);
    let mut sys = System::new(s, vec![(x, x2, 0)]);
    let d = |i: usize| Some(s.d(&unit(i)));
    let image = |i: usize| Some(f.images[i].clone());
    sys.constrain(s, (x, x2, 1), &[(0, &d)], &Elem::new())?;
    sys.constrain(t, (f.obj[x], f.obj[x2], 0), &[(0, &image)], v)?;
    let Ok(sol) = sys.solve() else { return Ok(None) };
    let base = sys.value(&sol.particular, 0);
    let dirs: Vec<Elem<S>> = sol.directions.iter().map(|dv| sys.value(dv, 0)).collect();
    let mut tries = vec![base.clone()];
    for c in small_combinations::<S>(dirs.len(), 4) {
        let mut u = base.clone();
        elem_add(&mut u, &combine(&dirs, &c), &S::one());
        tries.push(u);
    }
    for u in tries {
        if hs.inverse(x, x2, &u)?.is_some() {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

/// `η_A: G(A) → F(A)` closed of degree zero and `h` of degree `-1` on
/// generators with `F(x) η_A − η_{A'} G(x) = h(d x) + d h(x)`, extended to
/// words by `h(a b) = h(a) G(b) + (−1)^{|a|} F(a) h(b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NaturalHomotopy<S> {
    pub eta: Vec<Elem<S>>,
    pub h: Vec<Elem<S>>,
}

#[derive(Clone, Debug)]
pub enum FunctorHomotopy<S> {
    Found(NaturalHomotopy<S>),
    /// Every solution has `η` null-homotopic at this object although its
    /// identity is not, so no `η` is a homotopy equivalence.
    Obstructed { object: usize },
    Undecided { tried: usize },
}

/// `(coefficient, prefix, generator, suffix)` terms of `h` on a word.
fn h_terms<S: Scalar>(f: &FreeMap<S>, g: &FreeMap<S>, p: &Path) -> Result<Vec<(S, Elem<S>, usize, Elem<S>)>, DgError> {
    let q = &f.source.quiver;
    let t = &f.target;
    let mut out = Vec::new();
    let mut prefix = t.identity[f.obj[p.tgt]].clone();
    let mut before = 0;
    for (i, &a) in p.word.iter().enumerate() {
        let suffix = match q.path(&p.word[i + 1..]) {
            Some(s) => g.eval_path(&s).ok_or_else(unknown_product)?,
            None => t.identity[g.obj[p.src]].clone(),
        };
        out.push((S::sign_pow(before), prefix.clone(), a, suffix));
        prefix = t.compose(&prefix, &f.images[a]).ok_or_else(unknown_product)?;
        before += q.gens[a].degree;
    }
    Ok(out)
}

impl<S: Scalar> NaturalHomotopy<S> {
    pub fn on_path(&self, f: &FreeMap<S>, g: &FreeMap<S>, p: &Path) -> Result<Elem<S>, DgError> {
        let t = &f.target;
        let mut out = Elem::new();
        for (c, pre, a, suf) in h_terms(f, g, p)? {
            let v = t.compose(&t.compose(&pre, &self.h[a]).ok_or_else(unknown_product)?, &suf).ok_or_else(unknown_product)?;
            elem_add(&mut out, &v, &c);
        }
        Ok(out)
    }

    /// The functor `A ↦ (G A, F A; η_A)`, `x ↦ (F x, s⁻¹h(x); G x)` into
    /// `mor(ℬ)`; it is a dg functor exactly when the homotopy equations hold.
    pub fn to_mor(&self, f: &FreeMap<S>, g: &FreeMap<S>) -> Result<(MorCategory<S>, FreeMap<S>), DgError> {
        let a = &f.source;
        let objects = (0..a.quiver.objects.len()).map(|x| MorObject { x1: g.obj[x], x0: f.obj[x], f: self.eta[x].clone() }).collect();
        let m = mor_category(&f.target, objects)?;
        let images = a.quiver.gens.iter().enumerate().map(|(k, x)| m.element(x.src, x.tgt, &f.images[k], &self.h[k], &g.images[k])).collect();
        let k = FreeMap::new(a.clone(), m.cat.clone(), (0..a.quiver.objects.len()).collect(), images);
        Ok((m, k))
    }

    pub fn verify(&self, f: &FreeMap<S>, g: &FreeMap<S>) -> Result<(), DgError> {
        let (_, k) = self.to_mor(f, g)?;
        k.check()
    }
}

/// Searches for a cochain homotopy `G ⇒ F` whose components are homotopy
/// equivalences. The equations are linear and homogeneous; the search runs
/// over small combinations of a basis of solutions.
pub fn cochain_homotopy_functors<S: Scalar>(f: &FreeMap<S>, g: &FreeMap<S>) -> Result<FunctorHomotopy<S>, DgError> {
    let a = &f.source;
    let t = &f.target;
    let q = &a.quiver;
    let no = q.objects.len();
    let mut blocks: Vec<(usize, usize, i64)> = (0..no).map(|x| (g.obj[x], f.obj[x], 0)).collect();
    blocks.extend(q.gens.iter().map(|x| (g.obj[x.src], f.obj[x.tgt], x.degree - 1)));
    let mut sys = System::new(t, blocks);
    let d = |i: usize| Some(t.d(&unit(i)));
    for x in 0..no {
        sys.constrain(t, (g.obj[x], f.obj[x], 1), &[(x, &d)], &Elem::new())?;
    }
    type Closure<'c, S> = Box<dyn Fn(usize) -> Option<Elem<S>> + 'c>;
    let h_on = |p: &crate::dg::NcPoly<S>, sign: S| -> Result<Vec<(usize, Closure<'_, S>)>, DgError> {
        let mut out: Vec<(usize, Closure<'_, S>)> = Vec::new();
        for (path, c) in &p.terms {
            for (k, pre, gen, suf) in h_terms(f, g, path)? {
                let coef = k * c.clone() * sign.clone();
                out.push((no + gen, Box::new(move |i| Some(elem_scale(&t.compose(&t.compose(&pre, &unit(i))?, &suf)?, &coef)))));
            }
        }
        Ok(out)
    };
    for (k, x) in q.gens.iter().enumerate() {
        let (src, tgt) = (x.src, x.tgt);
        let fx = f.images[k].clone();
        let gx = g.images[k].clone();
        let eta_src = move |i: usize| t.compose(&fx, &unit(i));
        let eta_tgt = move |i: usize| t.compose(&unit(i), &gx).map(|e| elem_scale(&e, &-S::one()));
        let neg_d = |i: usize| Some(elem_scale(&t.d(&unit(i)), &-S::one()));
        let hd = h_on(&a.diff[k], -S::one())?;
        let mut terms: Vec<(usize, &dyn Fn(usize) -> Option<Elem<S>>)> = vec![(src, &eta_src), (tgt, &eta_tgt), (no + k, &neg_d)];
        for (u, c) in &hd {
            terms.push((*u, c.as_ref()));
        }
        sys.constrain(t, (g.obj[src], f.obj[tgt], x.degree), &terms, &Elem::new())?;
    }
    for r in &a.relations {
        let (Some(n), Some((rs, rt))) = (r.degree(), r.endpoints()) else { continue };
        let hr = h_on(r, S::one())?;
        let terms: Vec<(usize, &dyn Fn(usize) -> Option<Elem<S>>)> = hr.iter().map(|(u, c)| (*u, c.as_ref())).collect();
        sys.constrain(t, (g.obj[rs], f.obj[rt], n - 1), &terms, &Elem::new())?;
    }
    let sol = sys.solve().map_err(|_| DgError::Unknown("homogeneous system without solutions".into()))?;
    let target = Arc::clone(t);
    let h0 = H0Category::new(&target);
    let mut tried = 0;
    for coeffs in small_combinations::<S>(sol.directions.len(), 6) {
        tried += 1;
        let mut v = sol.particular.clone();
        for (dv, c) in sol.directions.iter().zip(&coeffs) {
            v = crate::linalg::vec_add(&v, &crate::linalg::vec_scale(dv, c));
        }
        let vals = sys.values(&v);
        let mut ok = true;
        for x in 0..no {
            if h0.inverse(g.obj[x], f.obj[x], &vals[x])?.is_none() {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(FunctorHomotopy::Found(NaturalHomotopy { eta: vals[..no].to_vec(), h: vals[no..].to_vec() }));
        }
    }
    for x in 0..no {
        let (gx, fx) = (g.obj[x], f.obj[x]);
        let all_null = sol.directions.iter().all(|dv| h0.class_of(gx, fx, &sys.value(dv, x)).is_some_and(|c| c.iter().all(|v| v.is_negligible())));
        let id_nonzero = h0.class_of(gx, gx, &t.identity[gx]).is_some_and(|c| c.iter().any(|v| !v.is_negligible()));
        if all_null && id_nonzero {
            return Ok(FunctorHomotopy::Obstructed { object: x });
        }
    }
    Ok(FunctorHomotopy::Undecided { tried })
}
