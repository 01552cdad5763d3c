//! Standard small categories and basic constructions on them.

use super::fincat::{FinCat, Morphism};
use super::functor::Functor;
use std::sync::Arc;

fn s(x: &str) -> String {
    x.to_string()
}

/// The terminal category with one object `*`.
pub fn terminal() -> FinCat {
    FinCat::from_names(&["*"], &[("Id_*", "*", "*")], &[("*", "Id_*")], &[]).unwrap()
}

/// Discrete category on objects `0..n`.
pub fn discrete(n: usize) -> FinCat {
    let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let morphisms = (0..n).map(|i| Morphism { id: format!("Id_{i}"), dom: i, cod: i }).collect();
    FinCat::from_fn(objects, morphisms, (0..n).collect(), |g, _| g).unwrap()
}

/// Objects `0, 1` with `n` parallel arrows `a1..an: 1 → 0`.
pub fn parallel_arrows(n: usize) -> FinCat {
    let mut morphisms = vec![Morphism { id: s("Id_0"), dom: 0, cod: 0 }, Morphism { id: s("Id_1"), dom: 1, cod: 1 }];
    for k in 1..=n {
        morphisms.push(Morphism { id: format!("a{k}"), dom: 1, cod: 0 });
    }
    FinCat::from_fn(vec![s("0"), s("1")], morphisms, vec![0, 1], |g, f| if g < 2 { f } else { g }).unwrap()
}

/// The interval groupoid: `a: 0 → 1` and its inverse.
pub fn interval() -> FinCat {
    FinCat::from_names(
        &["0", "1"],
        &[("Id_0", "0", "0"), ("Id_1", "1", "1"), ("a", "0", "1"), ("a^-1", "1", "0")],
        &[("0", "Id_0"), ("1", "Id_1")],
        &[("a^-1", "a", "Id_0"), ("a", "a^-1", "Id_1")],
    )
    .unwrap()
}

/// The path category of the quiver `1 → 2`.
pub fn arrow_category() -> FinCat {
    FinCat::from_names(
        &["1", "2"],
        &[("e1", "1", "1"), ("e2", "2", "2"), ("alpha", "1", "2")],
        &[("1", "e1"), ("2", "e2")],
        &[],
    )
    .unwrap()
}

pub fn pair_id(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// Product with componentwise composition; ids are `(x,y)`.
pub fn product(c: &FinCat, d: &FinCat) -> FinCat {
    let (nc, nd) = (c.num_objects(), d.num_objects());
    let mut objects = Vec::new();
    for x in 0..nc {
        for y in 0..nd {
            objects.push(pair_id(c.object_name(x), d.object_name(y)));
        }
    }
    let md = d.num_morphisms();
    let mut morphisms = Vec::new();
    for f in 0..c.num_morphisms() {
        for g in 0..md {
            morphisms.push(Morphism {
                id: pair_id(c.mor_name(f), d.mor_name(g)),
                dom: c.dom(f) * nd + d.dom(g),
                cod: c.cod(f) * nd + d.cod(g),
            });
        }
    }
    let identity = (0..nc * nd).map(|o| c.id(o / nd.max(1)) * md + d.id(o % nd.max(1))).collect();
    FinCat::from_fn(objects, morphisms, identity, |a, b| c.comp(a / md, b / md) * md + d.comp(a % md, b % md)).unwrap()
}

/// Projections out of `product(c, d)`.
pub fn projections(c: &Arc<FinCat>, d: &Arc<FinCat>, prod: &Arc<FinCat>) -> (Functor, Functor) {
    let (nd, md) = (d.num_objects(), d.num_morphisms());
    let p0 = Functor::new_unchecked(
        prod.clone(),
        c.clone(),
        (0..prod.num_objects()).map(|o| o / nd).collect(),
        (0..prod.num_morphisms()).map(|m| m / md).collect(),
    );
    let p1 = Functor::new_unchecked(
        prod.clone(),
        d.clone(),
        (0..prod.num_objects()).map(|o| o % nd).collect(),
        (0..prod.num_morphisms()).map(|m| m % md).collect(),
    );
    (p0, p1)
}

/// Disjoint union with `left/` and `right/` prefixes.
pub fn coproduct(c: &FinCat, d: &FinCat) -> FinCat {
    let nc = c.num_objects();
    let mc = c.num_morphisms();
    let mut objects: Vec<String> = c.objects().iter().map(|o| format!("left/{o}")).collect();
    objects.extend(d.objects().iter().map(|o| format!("right/{o}")));
    let mut morphisms: Vec<Morphism> =
        c.morphisms().iter().map(|m| Morphism { id: format!("left/{}", m.id), dom: m.dom, cod: m.cod }).collect();
    morphisms.extend(d.morphisms().iter().map(|m| Morphism { id: format!("right/{}", m.id), dom: m.dom + nc, cod: m.cod + nc }));
    let mut identity: Vec<usize> = (0..nc).map(|x| c.id(x)).collect();
    identity.extend((0..d.num_objects()).map(|y| d.id(y) + mc));
    FinCat::from_fn(objects, morphisms, identity, |g, f| if g < mc { c.comp(g, f) } else { d.comp(g - mc, f - mc) + mc }).unwrap()
}

pub fn coproduct_injections(c: &Arc<FinCat>, d: &Arc<FinCat>, sum: &Arc<FinCat>) -> (Functor, Functor) {
    let (nc, mc) = (c.num_objects(), c.num_morphisms());
    let left = Functor::new_unchecked(c.clone(), sum.clone(), (0..nc).collect(), (0..mc).collect());
    let right = Functor::new_unchecked(
        d.clone(),
        sum.clone(),
        (0..d.num_objects()).map(|y| y + nc).collect(),
        (0..d.num_morphisms()).map(|g| g + mc).collect(),
    );
    (left, right)
}

/// Functor `1 → c` picking object `x`.
pub fn point(c: &Arc<FinCat>, x: usize) -> Functor {
    Functor::new_unchecked(Arc::new(terminal()), c.clone(), vec![x], vec![c.id(x)])
}

/// The unique functor `c → 1`.
pub fn to_terminal(c: &Arc<FinCat>) -> Functor {
    Functor::new_unchecked(c.clone(), Arc::new(terminal()), vec![0; c.num_objects()], vec![0; c.num_morphisms()])
}

/// Constant functor at object `y`.
pub fn constant(c: &Arc<FinCat>, d: &Arc<FinCat>, y: usize) -> Functor {
    Functor::new_unchecked(c.clone(), d.clone(), vec![y; c.num_objects()], vec![d.id(y); c.num_morphisms()])
}

/// Whether two categories are isomorphic, by search over object bijections
/// and hom-set bijections.
pub fn isomorphic(c: &Arc<FinCat>, d: &Arc<FinCat>) -> Option<Functor> {
    if c.num_objects() != d.num_objects() || c.num_morphisms() != d.num_morphisms() {
        return None;
    }
    let mut found = None;
    super::enumerate::search_functors(
        c,
        d,
        &|x, y| {
            let (cx, dy) = (c.hom(x, x).len(), d.hom(y, y).len());
            cx == dy
        },
        &|_, _| true,
        &mut |o, m| {
            let f = Functor::new_unchecked(c.clone(), d.clone(), o.to_vec(), m.to_vec());
            if f.is_isomorphism() {
                found = Some(f);
                super::enumerate::Flow::Stop
            } else {
                super::enumerate::Flow::Continue
            }
        },
    );
    found
}
