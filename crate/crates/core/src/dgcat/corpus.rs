//! Small finite dg categories used as a test corpus.

use super::{add_cone, discrete, ground_cat, sphere_cat};
use crate::dg::{ConcreteDgCat, Generator, NcPoly, Presentation};
use crate::dgalg::dual_numbers;
use crate::Scalar;
use std::sync::Arc;

/// Two objects with inverse isomorphisms `f`, `g` of degree zero.
pub fn indiscrete_pair<S: Scalar>() -> Presentation<S> {
    let mut p = discrete::<S>(&["1", "2"]);
    p.quiver.gens.push(Generator { name: "f".into(), src: 0, tgt: 1, degree: 0, weight: 1 });
    p.quiver.gens.push(Generator { name: "g".into(), src: 1, tgt: 0, degree: 0, weight: 1 });
    p.diff = vec![NcPoly::zero(), NcPoly::zero()];
    let r1 = p.word(&["g", "f"]).sub(&p.id(0));
    let r2 = p.word(&["f", "g"]).sub(&p.id(1));
    p.relations = vec![r1, r2];
    p
}

/// `𝕂` with the cone of the identity adjoined: a contractible object.
pub fn contractible_pair<S: Scalar>() -> Presentation<S> {
    let k = ground_cat::<S>();
    add_cone(&k, 0, 0, &k.id(0), "c").expect("identities are closed")
}

fn finite<S: Scalar>(p: &Presentation<S>, lo: i64, hi: i64, cap: u32) -> Arc<ConcreteDgCat<S>> {
    let (c, _) = p.truncate(lo, hi, cap);
    assert!(c.supported, "corpus entries are finite");
    Arc::new(c)
}

/// Finite dg categories: the ground field, dual numbers, the arrow category,
/// two isomorphic objects, a contractible object next to a point, and a
/// homotopy equivalence that is not invertible.
pub fn finite_corpus<S: Scalar>() -> Vec<(String, Arc<ConcreteDgCat<S>>)> {
    vec![
        ("ground".into(), finite(&ground_cat(), 0, 0, 2)),
        ("dual-numbers".into(), Arc::new(dual_numbers())),
        ("arrow".into(), finite(&sphere_cat(0), 0, 0, 2)),
        ("indiscrete".into(), finite(&indiscrete_pair(), 0, 0, 3)),
        ("contractible".into(), finite(&contractible_pair(), -2, 2, 8)),
        ("retract".into(), finite(&retract_pair(), -1, 0, 4)),
    ]
}

/// `f: 1 → 2`, `g: 2 → 1`, `h: 1 → 1` of degree `-1` with `d h = g f − 1`,
/// `f g = 1` and `f h = h g = h h = 0`: a homotopy equivalence that is not
/// an isomorphism, in a finite dg category.
pub fn retract_pair<S: Scalar>() -> Presentation<S> {
    let mut p = discrete::<S>(&["1", "2"]);
    for (name, src, tgt, degree) in [("f", 0, 1, 0), ("g", 1, 0, 0), ("h", 0, 0, -1)] {
        p.quiver.gens.push(Generator { name: name.into(), src, tgt, degree, weight: 1 });
        p.diff.push(NcPoly::zero());
    }
    let dh = p.word(&["g", "f"]).sub(&p.id(0));
    p.set_d("h", dh);
    p.relations = vec![p.word(&["f", "g"]).sub(&p.id(1)), p.word(&["f", "h"]), p.word(&["h", "g"]), p.word(&["h", "h"])];
    p
}
