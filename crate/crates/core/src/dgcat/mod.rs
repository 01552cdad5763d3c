//! Dg categories: presentations by graded quivers, homotopy equivalences,
//! the categories of morphisms and the path object, limits and colimits.

pub mod cells;
pub mod cone;
pub mod corpus;
pub mod functor;
pub mod h0;
pub mod kcat;
pub mod limits;
pub mod linear;
pub mod mor;

pub use cone::{add_cone, check_cone, ConeReport};
pub use functor::{classify_dg_functor, cochain_homotopy_functors, hom_chain_map, FunctorClass, Product, FunctorHomotopy, NaturalHomotopy};
pub use h0::{contraction, homotopy_equivalence, upgrade_witness, ContractionWitness, H0Category, HomotopyEquivWitness};
pub use kcat::{bounded_k_cohomology, homs_from_k, k_category, k_embed, remark_identity, KCohomologyReport, KEmbed, KEmbedReport, KHoms};
pub use limits::{colimit_presentation, limit, ColimitPresentation, Diagram, Limit};
pub use mor::{default_mor_objects, equivalence_criterion, isofibration_lift, kernel_square_zero_identity, mor_category, path_object, zigzag_endomorphisms, MorCategory, MorObject, PathObject, Slot, Zigzag, ZigzagError};

use crate::dg::{DgError, Generator, NcPoly, Presentation, Quiver};
use crate::Scalar;

pub(crate) fn generator(name: &str, src: usize, tgt: usize, degree: i64) -> Generator {
    Generator { name: name.into(), src, tgt, degree, weight: 1 }
}

/// Objects with identities only.
pub fn discrete<S: Scalar>(names: &[&str]) -> Presentation<S> {
    Presentation::free(Quiver { objects: names.iter().map(|s| s.to_string()).collect(), gens: Vec::new() }, Vec::new())
}

/// One object with endomorphisms the ground field.
pub fn ground_cat<S: Scalar>() -> Presentation<S> {
    discrete(&["*"])
}

/// `𝒮(n)`: objects `1`, `2` and a closed arrow `u: 1 → 2` of degree `-n`.
pub fn sphere_cat<S: Scalar>(n: i64) -> Presentation<S> {
    let q = Quiver { objects: vec!["1".into(), "2".into()], gens: vec![generator("u", 0, 1, -n)] };
    Presentation::free(q, vec![NcPoly::zero()])
}

/// `𝒟(n)`: arrows `t`, `dt: 1 → 2` of degrees `-n`, `1-n` with `d t = dt`.
pub fn disc_cat<S: Scalar>(n: i64) -> Presentation<S> {
    let q = Quiver { objects: vec!["1".into(), "2".into()], gens: vec![generator("t", 0, 1, -n), generator("dt", 0, 1, 1 - n)] };
    let mut p = Presentation::free(q, vec![NcPoly::zero(), NcPoly::zero()]);
    let dt = p.gen("dt");
    p.set_d("t", dt);
    p
}

/// Appends a generator, keeping relations and earlier differentials.
pub(crate) fn push_generator<S: Scalar>(c: &mut Presentation<S>, g: Generator, d: NcPoly<S>) {
    c.quiver.gens.push(g);
    c.diff.push(NcPoly::zero());
    let name = c.quiver.gens.last().expect("just pushed").name.clone();
    let d = rebuild(&c.quiver, &d);
    c.set_d(&name, d);
}

/// Recomputes cached weights and degrees of every term after the quiver changed.
pub(crate) fn rebuild<S: Scalar>(q: &Quiver, p: &NcPoly<S>) -> NcPoly<S> {
    let mut out = NcPoly::zero();
    for (t, c) in &p.terms {
        let path = if t.word.is_empty() { q.id(t.src) } else { q.path(&t.word).expect("composable") };
        out.add_term(path, c.clone());
    }
    out
}

/// A name not yet used by a generator of `c`.
pub(crate) fn fresh_name<S: Scalar>(c: &Presentation<S>, base: &str) -> String {
    let mut n = base.to_string();
    while c.quiver.gen(&n).is_some() {
        n.push('\'');
    }
    n
}

/// Checks that `f` is zero or a closed morphism `x → y` of degree `n`.
pub(crate) fn closed_morphism<S: Scalar>(c: &Presentation<S>, x: usize, y: usize, f: &NcPoly<S>, n: i64, bound: u32) -> Result<(), DgError> {
    if f.is_zero() {
        return Ok(());
    }
    if f.degree() != Some(n) || f.endpoints() != Some((x, y)) {
        return Err(DgError::DegreeMismatch { what: c.quiver.render(f) });
    }
    let rules = c.rules(bound);
    if !c.reduce(&rules, &c.d(f)).is_zero() {
        return Err(DgError::NotClosed { element: c.quiver.render(f) });
    }
    Ok(())
}

/// `C⟨t; f⟩`: a new arrow `t: x → y` of degree `-n-1` with `d t = f`, where
/// `f` is closed of degree `-n`.
pub fn adjoin_morphism<S: Scalar>(c: &Presentation<S>, x: usize, y: usize, f: &NcPoly<S>, n: i64, name: &str) -> Result<Presentation<S>, DgError> {
    closed_morphism(c, x, y, f, -n, 8)?;
    let mut out = c.clone();
    let weight = f.max_weight().max(1);
    push_generator(&mut out, Generator { name: fresh_name(c, name), src: x, tgt: y, degree: -n - 1, weight }, f.clone());
    Ok(out)
}

/// Adds `c: x → x` of degree `-1` with `d c = Id_x`, making `x` contractible.
pub fn contract_object<S: Scalar>(c: &Presentation<S>, x: usize, name: &str) -> Presentation<S> {
    let mut out = c.clone();
    let id = out.id(x);
    push_generator(&mut out, generator(&fresh_name(c, name), x, x, -1), id);
    out
}
