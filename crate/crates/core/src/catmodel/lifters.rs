use super::ambient::Preimages;
use super::classify;
use crate::cat::Functor;
use crate::lifting::{square_commutes, square_lift_ok, LiftWitness, Square};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftPrecondition {
    NotCommuting,
    LeftNotInjection,
    LeftNotAcyclicInjection,
    RightNotIsofibration,
    RightNotAcyclicIsofibration,
    ConstructionFailed,
}

impl fmt::Display for LiftPrecondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LiftPrecondition::NotCommuting => "square does not commute",
            LiftPrecondition::LeftNotInjection => "left functor is not injective on objects",
            LiftPrecondition::LeftNotAcyclicInjection => "left functor is not an acyclic injection",
            LiftPrecondition::RightNotIsofibration => "right functor is not an isofibration",
            LiftPrecondition::RightNotAcyclicIsofibration => "right functor is not an acyclic isofibration",
            LiftPrecondition::ConstructionFailed => "construction produced no valid lift",
        })
    }
}

impl std::error::Error for LiftPrecondition {}

/// Lift against a fully faithful functor surjective on objects: image objects
/// go where the top says, others to the first preimage, morphisms to their
/// preimage.
pub(crate) fn build_injection_lift(sq: &Square<Functor>) -> Option<Functor> {
    let (obj, mor) = injection_lift_parts(
        &sq.f,
        &sq.g,
        (&sq.top.obj, &sq.top.mor),
        (&sq.bottom.obj, &sq.bottom.mor),
        &Preimages::of(&sq.f),
        &Preimages::of(&sq.g),
    )?;
    Functor::new(sq.f.target.clone(), sq.g.source.clone(), obj, mor).ok()
}

type Parts<'a> = (&'a [usize], &'a [usize]);

pub(crate) fn injection_lift_parts(
    f: &Functor,
    g: &Functor,
    a: Parts,
    b: Parts,
    pre: &Preimages,
    gpre: &Preimages,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let (d, m) = (&f.target, &g.source);
    let mut obj = Vec::with_capacity(d.num_objects());
    for x in 0..d.num_objects() {
        let y = match pre.obj[x].first() {
            Some(&c) => a.0[c],
            None => *gpre.obj[b.0[x]].first()?,
        };
        obj.push(y);
    }
    let mut mor = Vec::with_capacity(d.num_morphisms());
    for u in 0..d.num_morphisms() {
        let (hx, hy) = (obj[d.dom(u)], obj[d.cod(u)]);
        let from_top = pre.mor[u].iter().map(|&c| a.1[c]).find(|&n| m.dom(n) == hx && m.cod(n) == hy);
        let n = match from_top {
            Some(n) => n,
            None => *m.hom(hx, hy).iter().find(|&&n| g.mor[n] == b.1[u])?,
        };
        mor.push(n);
    }
    Some((obj, mor))
}

/// Lift of an equivalence injective on objects against an isofibration:
/// each object `X` is reached by an iso `u_X: F(C_X) → X`, identity on the
/// image, and `b(u_X)` is lifted to an iso `h_X` out of `a(C_X)`.
pub(crate) fn build_acyclic_injection_lift(sq: &Square<Functor>) -> Option<Functor> {
    let (f, g, a, b) = (&sq.f, &sq.g, &sq.top, &sq.bottom);
    let (c, d, m) = (&f.source, &f.target, &g.source);
    let pre = Preimages::of(f);
    let mut cx = Vec::new();
    let mut ux = Vec::new();
    let mut hx = Vec::new();
    for x in 0..d.num_objects() {
        if let Some(&c0) = pre.obj[x].first() {
            cx.push(c0);
            ux.push(d.id(x));
            hx.push(m.id(a.obj[c0]));
            continue;
        }
        let mut found = None;
        'search: for c0 in 0..c.num_objects() {
            for &u in d.hom(f.obj[c0], x) {
                if !d.is_iso(u) {
                    continue;
                }
                if let Some(h) = m.isos_from(a.obj[c0]).into_iter().find(|&h| g.mor[h] == b.mor[u]) {
                    found = Some((c0, u, h));
                    break 'search;
                }
            }
        }
        let (c0, u, h) = found?;
        cx.push(c0);
        ux.push(u);
        hx.push(h);
    }
    let obj: Vec<usize> = hx.iter().map(|&h| m.cod(h)).collect();
    let mut mor = Vec::with_capacity(d.num_morphisms());
    for u in 0..d.num_morphisms() {
        let (x, y) = (d.dom(u), d.cod(u));
        let w = d.comp(d.inverse(ux[y])?, d.comp(u, ux[x]));
        let cf = *c.hom(cx[x], cx[y]).iter().find(|&&k| f.mor[k] == w)?;
        mor.push(m.comp(hx[y], m.comp(a.mor[cf], m.inverse(hx[x])?)));
    }
    Functor::new(d.clone(), m.clone(), obj, mor).ok()
}

fn finish(sq: &Square<Functor>, h: Option<Functor>) -> Result<LiftWitness<Functor>, LiftPrecondition> {
    match h {
        Some(h) if square_lift_ok(&super::CatAmbient::new(0), sq, &h) => Ok(LiftWitness { h, constructive: true }),
        _ => Err(LiftPrecondition::ConstructionFailed),
    }
}

/// Acyclic injection on the left, isofibration on the right.
pub fn lift_acyclic_injection_vs_isofibration(sq: &Square<Functor>) -> Result<LiftWitness<Functor>, LiftPrecondition> {
    if !square_commutes(&super::CatAmbient::new(0), sq) {
        return Err(LiftPrecondition::NotCommuting);
    }
    if !classify(&sq.f).acyclic_injection {
        return Err(LiftPrecondition::LeftNotAcyclicInjection);
    }
    if !sq.g.is_isofibration() {
        return Err(LiftPrecondition::RightNotIsofibration);
    }
    finish(sq, build_acyclic_injection_lift(sq))
}

/// Injection on the left, acyclic isofibration on the right.
pub fn lift_injection_vs_acyclic_isofibration(sq: &Square<Functor>) -> Result<LiftWitness<Functor>, LiftPrecondition> {
    if !square_commutes(&super::CatAmbient::new(0), sq) {
        return Err(LiftPrecondition::NotCommuting);
    }
    if !sq.f.is_injective_on_objects() {
        return Err(LiftPrecondition::LeftNotInjection);
    }
    if !classify(&sq.g).acyclic_isofibration {
        return Err(LiftPrecondition::RightNotAcyclicIsofibration);
    }
    finish(sq, build_injection_lift(sq))
}
