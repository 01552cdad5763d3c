//! Explicit factorizations, cylinder and path objects, and the pushout and
//! pullback squares relating them.

use crate::cat::colimits::enumerate_cocones;
use crate::cat::constructions::{coproduct, interval, product};
use crate::cat::enumerate::{search_functors, Flow, GuardExceeded};
use crate::cat::limits::{enumerate_cones, CatDiagram};
use crate::cat::{FinCat, Functor, Morphism};
use std::collections::HashMap;
use std::sync::Arc;

/// The category on objects `names` with `Hom(X, Y) = D(ρX, ρY)`.
struct Reindexed {
    cat: Arc<FinCat>,
    index: HashMap<(usize, usize, usize), usize>,
    under: Vec<usize>,
}

fn reindex(d: &FinCat, names: Vec<String>, rho: &[usize]) -> Reindexed {
    let n = names.len();
    let mut morphisms = Vec::new();
    let mut under = Vec::new();
    let mut index = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            for &u in d.hom(rho[x], rho[y]) {
                index.insert((x, y, u), morphisms.len());
                under.push(u);
                morphisms.push(Morphism { id: format!("({};{};{})", names[x], d.mor_name(u), names[y]), dom: x, cod: y });
            }
        }
    }
    let identity = (0..n).map(|x| index[&(x, x, d.id(rho[x]))]).collect();
    let cat = FinCat::from_fn(names, morphisms.clone(), identity, |g, f| {
        index[&(morphisms[f].dom, morphisms[g].cod, d.comp(under[g], under[f]))]
    })
    .expect("reindexed category");
    Reindexed { cat: Arc::new(cat), index, under }
}

/// `F = p∘j` through `D′` on `Obj(C) ⊔ Obj(D)`.
pub struct CylinderFactorization {
    pub middle: Arc<FinCat>,
    pub j: Functor,
    pub p: Functor,
    /// `D → D′` on the `tgt/` objects.
    pub inc: Functor,
    index: HashMap<(usize, usize, usize), usize>,
}

impl CylinderFactorization {
    /// The morphism `X → Y` of `D′` lying over `u`.
    pub fn morphism(&self, x: usize, y: usize, u: usize) -> Option<usize> {
        self.index.get(&(x, y, u)).copied()
    }
}

pub fn functor_cylinder_factorization(f: &Functor) -> CylinderFactorization {
    let (c, d) = (&f.source, &f.target);
    let nc = c.num_objects();
    let mut names: Vec<String> = c.objects().iter().map(|o| format!("src/{o}")).collect();
    names.extend(d.objects().iter().map(|o| format!("tgt/{o}")));
    let mut rho = f.obj.clone();
    rho.extend(0..d.num_objects());
    let r = reindex(d, names, &rho);
    let mid = r.cat.clone();
    let j = Functor::new_unchecked(
        c.clone(),
        mid.clone(),
        (0..nc).collect(),
        (0..c.num_morphisms()).map(|k| r.index[&(c.dom(k), c.cod(k), f.mor[k])]).collect(),
    );
    let p = Functor::new_unchecked(
        mid.clone(),
        d.clone(),
        rho.clone(),
        r.under.clone(),
    );
    let inc = Functor::new_unchecked(
        d.clone(),
        mid.clone(),
        (0..d.num_objects()).map(|y| nc + y).collect(),
        (0..d.num_morphisms()).map(|u| r.index[&(nc + d.dom(u), nc + d.cod(u), u)]).collect(),
    );
    CylinderFactorization { middle: mid, j, p, inc, index: r.index }
}

/// `F = q∘ι` through the category of pairs `(C, α: F(C) ≅ D)`.
pub struct CocylinderFactorization {
    pub middle: Arc<FinCat>,
    pub iota: Functor,
    pub q: Functor,
    /// Quasi-inverse of `ι`, forgetting the isomorphism.
    pub pr: Functor,
    /// `(C, α)` per object.
    pub triples: Vec<(usize, usize)>,
}

pub fn functor_cocylinder_factorization(f: &Functor) -> CocylinderFactorization {
    let (c, d) = (&f.source, &f.target);
    let mut triples = Vec::new();
    for x in 0..c.num_objects() {
        for a in d.isos_from(f.obj[x]) {
            triples.push((x, a));
        }
    }
    let names: Vec<String> = triples
        .iter()
        .map(|&(x, a)| format!("({},{},{})", c.object_name(x), d.mor_name(a), d.object_name(d.cod(a))))
        .collect();
    let rho: Vec<usize> = triples.iter().map(|t| t.0).collect();
    let r = reindex(c, names, &rho);
    let mid = r.cat.clone();
    let slot: HashMap<(usize, usize), usize> = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let iota_obj: Vec<usize> = (0..c.num_objects()).map(|x| slot[&(x, d.id(f.obj[x]))]).collect();
    let iota = Functor::new_unchecked(
        c.clone(),
        mid.clone(),
        iota_obj.clone(),
        (0..c.num_morphisms()).map(|k| r.index[&(iota_obj[c.dom(k)], iota_obj[c.cod(k)], k)]).collect(),
    );
    let under_of = r.under.clone();
    let q_mor = (0..mid.num_morphisms())
        .map(|m| {
            let (s, t) = (triples[mid.dom(m)].1, triples[mid.cod(m)].1);
            let inv = d.inverse(s).expect("iso");
            d.comp(t, d.comp(f.mor[under_of[m]], inv))
        })
        .collect();
    let q = Functor::new_unchecked(mid.clone(), d.clone(), triples.iter().map(|&(_, a)| d.cod(a)).collect(), q_mor);
    let pr = Functor::new_unchecked(mid.clone(), c.clone(), rho, under_of);
    CocylinderFactorization { middle: mid, iota, q, pr, triples }
}

/// `C ⊔ C → C×I → C`.
pub struct CylinderDiagram {
    pub base: Arc<FinCat>,
    pub sum: Arc<FinCat>,
    pub cyl: Arc<FinCat>,
    pub i0: Functor,
    pub i1: Functor,
    pub legs: Functor,
    pub pr: Functor,
}

pub fn cylinder(c: &Arc<FinCat>) -> CylinderDiagram {
    let i = interval();
    let cyl = Arc::new(product(c, &i));
    let sum = Arc::new(coproduct(c, c));
    let (n, m) = (c.num_objects(), c.num_morphisms());
    let (ni, mi) = (i.num_objects(), i.num_morphisms());
    let at = |k: usize| {
        Functor::new_unchecked(c.clone(), cyl.clone(), (0..n).map(|x| x * ni + k).collect(), (0..m).map(|f| f * mi + i.id(k)).collect())
    };
    let (i0, i1) = (at(0), at(1));
    let legs = Functor::new_unchecked(
        sum.clone(),
        cyl.clone(),
        i0.obj.iter().chain(&i1.obj).copied().collect(),
        i0.mor.iter().chain(&i1.mor).copied().collect(),
    );
    let pr = Functor::new_unchecked(
        cyl.clone(),
        c.clone(),
        (0..cyl.num_objects()).map(|o| o / ni).collect(),
        (0..cyl.num_morphisms()).map(|f| f / mi).collect(),
    );
    CylinderDiagram { base: c.clone(), sum, cyl, i0, i1, legs, pr }
}

/// `D → Hom(I, D) → D × D`, with `Hom(I, D)` as triples `(D₀, α, D₁)`.
pub struct PathDiagram {
    pub base: Arc<FinCat>,
    pub path: Arc<FinCat>,
    pub square: Arc<FinCat>,
    pub constant: Functor,
    pub p0: Functor,
    pub p1: Functor,
    pub ends: Functor,
    /// The isomorphism of each object.
    pub isos: Vec<usize>,
    /// `(u₀, u₁)` of each morphism.
    pub pairs: Vec<(usize, usize)>,
}

impl PathDiagram {
    pub fn object_of_iso(&self, a: usize) -> Option<usize> {
        self.isos.iter().position(|&b| b == a)
    }

    pub fn morphism(&self, s: usize, t: usize, u0: usize, u1: usize) -> Option<usize> {
        self.path.hom(s, t).iter().copied().find(|&m| self.pairs[m] == (u0, u1))
    }
}

pub fn path_object(d: &Arc<FinCat>) -> PathDiagram {
    let isos: Vec<usize> = (0..d.num_objects()).flat_map(|x| d.isos_from(x)).collect();
    let names: Vec<String> =
        isos.iter().map(|&a| format!("({},{},{})", d.object_name(d.dom(a)), d.mor_name(a), d.object_name(d.cod(a)))).collect();
    let mut morphisms = Vec::new();
    let mut pairs = Vec::new();
    let mut index = HashMap::new();
    for (s, &a) in isos.iter().enumerate() {
        for (t, &b) in isos.iter().enumerate() {
            for &u0 in d.hom(d.dom(a), d.dom(b)) {
                for &u1 in d.hom(d.cod(a), d.cod(b)) {
                    if d.comp(u1, a) == d.comp(b, u0) {
                        index.insert((s, t, u0, u1), morphisms.len());
                        pairs.push((u0, u1));
                        morphisms.push(Morphism {
                            id: format!("({};{},{};{})", names[s], d.mor_name(u0), d.mor_name(u1), names[t]),
                            dom: s,
                            cod: t,
                        });
                    }
                }
            }
        }
    }
    let identity = (0..isos.len()).map(|s| index[&(s, s, d.id(d.dom(isos[s])), d.id(d.cod(isos[s])))]).collect();
    let path = Arc::new(
        FinCat::from_fn(names, morphisms.clone(), identity, |g, f| {
            let (pg, pf) = (pairs[g], pairs[f]);
            index[&(morphisms[f].dom, morphisms[g].cod, d.comp(pg.0, pf.0), d.comp(pg.1, pf.1))]
        })
        .expect("path category of isomorphisms"),
    );
    let square = Arc::new(product(d, d));
    let (n, m) = (d.num_objects(), d.num_morphisms());
    let obj_at = |x: usize| isos.iter().position(|&a| a == d.id(x)).expect("identity is an iso");
    let constant = Functor::new_unchecked(
        d.clone(),
        path.clone(),
        (0..n).map(obj_at).collect(),
        (0..m).map(|u| index[&(obj_at(d.dom(u)), obj_at(d.cod(u)), u, u)]).collect(),
    );
    let p0 = Functor::new_unchecked(path.clone(), d.clone(), isos.iter().map(|&a| d.dom(a)).collect(), pairs.iter().map(|p| p.0).collect());
    let p1 = Functor::new_unchecked(path.clone(), d.clone(), isos.iter().map(|&a| d.cod(a)).collect(), pairs.iter().map(|p| p.1).collect());
    let ends = Functor::new_unchecked(
        path.clone(),
        square.clone(),
        isos.iter().map(|&a| d.dom(a) * n + d.cod(a)).collect(),
        pairs.iter().map(|p| p.0 * m + p.1).collect(),
    );
    PathDiagram { base: d.clone(), path, square, constant, p0, p1, ends, isos, pairs }
}

#[derive(Clone, Debug)]
pub struct RemarkCheck {
    pub equations: Vec<(String, bool)>,
    pub universal: bool,
    pub cones_checked: usize,
}

impl RemarkCheck {
    pub fn holds(&self) -> bool {
        self.universal && self.equations.iter().all(|e| e.1)
    }
}

fn eq(name: &str, a: &Functor, b: &Functor) -> (String, bool) {
    (name.to_string(), a.same(b))
}

/// Functors out of `apex` whose composites with `legs` give `cocone`.
fn count_out(apex: &Arc<FinCat>, legs: &[Functor], cocone: &[Functor], t: &Arc<FinCat>) -> usize {
    let mut n = 0;
    search_functors(
        apex,
        t,
        &|x, y| legs.iter().zip(cocone).all(|(l, c)| l.obj.iter().zip(&c.obj).all(|(&a, &b)| a != x || b == y)),
        &|f, g| legs.iter().zip(cocone).all(|(l, c)| l.mor.iter().zip(&c.mor).all(|(&a, &b)| a != f || b == g)),
        &mut |_, _| {
            n += 1;
            Flow::Continue
        },
    );
    n
}

/// Functors into `apex` whose composites with `legs` give `cone`.
fn count_in(apex: &Arc<FinCat>, legs: &[Functor], cone: &[Functor], t: &Arc<FinCat>) -> usize {
    let mut n = 0;
    search_functors(
        t,
        apex,
        &|x, y| legs.iter().zip(cone).all(|(l, c)| l.obj[y] == c.obj[x]),
        &|f, g| legs.iter().zip(cone).all(|(l, c)| l.mor[g] == c.mor[f]),
        &mut |_, _| {
            n += 1;
            Flow::Continue
        },
    );
    n
}

/// The square `C → D`, `C → C×I`, `C×I → D′`, `D → D′` is a pushout, and
/// `F = p∘j` follows through it.
pub fn functor_cylinder_pushout_check(f: &Functor, apexes: &[Arc<FinCat>], guard: usize) -> Result<RemarkCheck, GuardExceeded> {
    let fac = functor_cylinder_factorization(f);
    let cyl = cylinder(&f.source);
    let (c, d, mid) = (&f.source, &f.target, &fac.middle);
    let nc = c.num_objects();
    let mi = 4;
    let h_obj: Vec<usize> = (0..cyl.cyl.num_objects()).map(|o| if o % 2 == 0 { nc + f.obj[o / 2] } else { o / 2 }).collect();
    let h_mor: Vec<usize> = (0..cyl.cyl.num_morphisms())
        .map(|m| {
            let (x, y) = (cyl.cyl.dom(m), cyl.cyl.cod(m));
            fac.morphism(h_obj[x], h_obj[y], f.mor[m / mi]).expect("morphism over F(f)")
        })
        .collect();
    let h = Functor::new_unchecked(cyl.cyl.clone(), mid.clone(), h_obj, h_mor);
    let equations = vec![
        ("H is a functor".to_string(), h.check().is_ok()),
        eq("H∘ι₀ = inc∘F", &cyl.i0.then(&h), &f.then(&fac.inc)),
        eq("H∘ι₁ = j", &cyl.i1.then(&h), &fac.j),
        eq("p∘inc = Id", &fac.inc.then(&fac.p), &Functor::identity(d)),
        eq("p∘H = F∘pr", &h.then(&fac.p), &cyl.pr.then(f)),
        eq("p∘j = F", &fac.j.then(&fac.p), f),
    ];
    let span = CatDiagram::span(c.clone(), cyl.cyl.clone(), d.clone(), cyl.i0.clone(), f.clone());
    let legs = [f.then(&fac.inc), h, fac.inc.clone()];
    let mut universal = true;
    let mut cones = 0;
    for t in apexes {
        for cocone in enumerate_cocones(&span, t, guard)? {
            cones += 1;
            if count_out(mid, &legs, &cocone, t) != 1 {
                universal = false;
            }
        }
    }
    Ok(RemarkCheck { equations, universal, cones_checked: cones })
}

/// The square `C′ → Hom(I, D)`, `C′ → C`, `C → D`, `Hom(I, D) → D` is a
/// pullback, and `F = q∘ι` follows through it.
pub fn cocylinder_pullback_check(f: &Functor, apexes: &[Arc<FinCat>], guard: usize) -> Result<RemarkCheck, GuardExceeded> {
    let fac = functor_cocylinder_factorization(f);
    let path = path_object(&f.target);
    let (c, d, mid) = (&f.source, &f.target, &fac.middle);
    let k_obj: Vec<usize> = fac.triples.iter().map(|&(_, a)| path.object_of_iso(a).expect("iso object")).collect();
    let k_mor: Vec<usize> = (0..mid.num_morphisms())
        .map(|m| {
            let (s, t) = (k_obj[mid.dom(m)], k_obj[mid.cod(m)]);
            path.morphism(s, t, f.mor[fac.pr.mor[m]], fac.q.mor[m]).expect("commuting pair")
        })
        .collect();
    let k = Functor::new_unchecked(mid.clone(), path.path.clone(), k_obj, k_mor);
    let equations = vec![
        ("K is a functor".to_string(), k.check().is_ok()),
        eq("p₀∘K = F∘pr", &k.then(&path.p0), &fac.pr.then(f)),
        eq("p₁∘K = q", &k.then(&path.p1), &fac.q),
        eq("K∘ι = const∘F", &fac.iota.then(&k), &f.then(&path.constant)),
        eq("p₁∘const = Id", &path.constant.then(&path.p1), &Functor::identity(d)),
        eq("pr∘ι = Id", &fac.iota.then(&fac.pr), &Functor::identity(c)),
        eq("q∘ι = F", &fac.iota.then(&fac.q), f),
    ];
    let cospan = CatDiagram::cospan(d.clone(), c.clone(), path.path.clone(), f.clone(), path.p0.clone());
    let legs = [fac.pr.then(f), fac.pr.clone(), k];
    let mut universal = true;
    let mut cones = 0;
    for t in apexes {
        for cone in enumerate_cones(&cospan, t, guard)? {
            cones += 1;
            if count_in(mid, &legs, &cone, t) != 1 {
                universal = false;
            }
        }
    }
    Ok(RemarkCheck { equations, universal, cones_checked: cones })
}
