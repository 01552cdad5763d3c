//! The interval category `𝒦`: a homotopy equivalence `f: 1 → 2` with its
//! inverse and the coherence data.

use super::cone::add_cone;
use super::h0::HomotopyEquivWitness;
use super::linear::System;
use super::{contract_object, generator, sphere_cat};
use crate::dg::concrete::{elem_add, elem_scale, unit};
use crate::dg::{ConcreteDgCat, DgError, Elem, NcPoly, Presentation, Quiver, SymbolicMap};
use crate::dgalg::Affine;
use crate::linalg::span_coefficients;
use crate::Scalar;
use std::sync::Arc;

/// Objects `1`, `2`; arrows `f`, `g`, `h1`, `h2`, `r` with `d h1 = g f − 1`,
/// `d h2 = f g − 1`, `d r = h2 f − f h1`. Weights make `d` weight-preserving.
pub fn k_category<S: Scalar>() -> Presentation<S> {
    let gens = vec![generator("f", 0, 1, 0), generator("g", 1, 0, 0), generator("h1", 0, 0, -1), generator("h2", 1, 1, -1), generator("r", 0, 1, -2)];
    let q = Quiver { objects: vec!["1".into(), "2".into()], gens };
    let mut p = Presentation::free(q, vec![NcPoly::zero(); 5]);
    let dh1 = p.word(&["g", "f"]).sub(&p.id(0));
    let dh2 = p.word(&["f", "g"]).sub(&p.id(1));
    let dr = p.word(&["h2", "f"]).sub(&p.word(&["f", "h1"]));
    p.set_d("h1", dh1);
    p.set_d("h2", dh2);
    p.set_d("r", dr);
    p.set_filtration_weights();
    p
}

/// `g h2 − h1 g` and `d(g r g + g h2 h2 + h1 h1 g − h1 g h2)` in `𝒦`.
pub fn remark_identity<S: Scalar>() -> (NcPoly<S>, NcPoly<S>) {
    let k = k_category::<S>();
    let lhs = k.word(&["g", "h2"]).sub(&k.word(&["h1", "g"]));
    let b = k.word(&["g", "r", "g"]).add(&k.word(&["g", "h2", "h2"])).add(&k.word(&["h1", "h1", "g"])).sub(&k.word(&["h1", "g", "h2"]));
    (lhs, k.d(&b))
}

/// Mutually inverse functors between `𝒦` with the cone of `f` adjoined and
/// `𝒮(0)` with the cone of `u` adjoined and that cone contracted.
pub struct KEmbed<S> {
    pub source: Arc<Presentation<S>>,
    pub target: Arc<Presentation<S>>,
    pub forward: SymbolicMap<S>,
    pub backward: SymbolicMap<S>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KEmbedReport {
    pub forward_ok: bool,
    pub backward_ok: bool,
    pub source_words: usize,
    pub target_words: usize,
    /// `G(F(w)) = w` on source normal words in the window.
    pub source_roundtrip: bool,
    /// `F(G(w)) = w` on target normal words in the window.
    pub target_roundtrip: bool,
    pub contraction_roundtrip: bool,
    pub rules_complete: bool,
}

pub fn k_embed<S: Scalar>() -> KEmbed<S> {
    let k = k_category::<S>();
    let f = k.gen("f");
    let source = add_cone(&k, 0, 1, &f, "*").expect("f is closed");
    let s = sphere_cat::<S>(0);
    let u = s.gen("u");
    let target = contract_object(&add_cone(&s, 0, 1, &u, "*").expect("u is closed"), 2, "c");
    let t = |w: &[&str]| target.word(w);
    let forward = vec![
        t(&["u"]),
        t(&["p", "c", "i"]),
        t(&["p", "c", "j"]),
        t(&["q", "c", "i"]).neg(),
        t(&["q", "c", "j"]),
        t(&["i"]),
        t(&["q"]),
        t(&["p"]),
        t(&["j"]),
    ];
    let w = |x: &[&str]| source.word(x);
    let c_image = w(&["i", "h2", "q"]).neg().add(&w(&["i", "r", "p"])).add(&w(&["j", "g", "q"])).add(&w(&["j", "h1", "p"]));
    let backward = vec![w(&["f"]), w(&["i"]), w(&["q"]), w(&["p"]), w(&["j"]), c_image];
    let (source, target) = (Arc::new(source), Arc::new(target));
    KEmbed {
        forward: SymbolicMap { source: source.clone(), target: target.clone(), obj: vec![0, 1, 2], images: forward },
        backward: SymbolicMap { source: target.clone(), target: source.clone(), obj: vec![0, 1, 2], images: backward },
        source,
        target,
    }
}

impl<S: Scalar> KEmbed<S> {
    /// Round trips on normal words of weight at most `cap` in degrees `lo..=hi`.
    pub fn check(&self, lo: i64, hi: i64, cap: u32, bound: u32) -> KEmbedReport {
        let (rs, rt) = (self.source.rules(bound), self.target.rules(bound));
        let (ws, _) = self.source.normal_words(&rs, lo, hi, cap);
        let (wt, _) = self.target.normal_words(&rt, lo, hi, cap);
        let source_roundtrip = ws.iter().all(|w| {
            let p = NcPoly::path(w.clone());
            self.backward.eval(&self.forward.eval(&p, &rt), &rs).sub(&p).is_zero()
        });
        let target_roundtrip = wt.iter().all(|w| {
            let p = NcPoly::path(w.clone());
            self.forward.eval(&self.backward.eval(&p, &rs), &rt).sub(&p).is_zero()
        });
        let c = self.target.gen("c");
        KEmbedReport {
            forward_ok: self.forward.check(bound).is_ok(),
            backward_ok: self.backward.check(bound).is_ok(),
            source_words: ws.len(),
            target_words: wt.len(),
            source_roundtrip,
            target_roundtrip,
            contraction_roundtrip: self.forward.eval(&self.backward.eval(&c, &rs), &rt).sub(&c).is_zero(),
            rules_complete: rs.complete && rt.complete,
        }
    }
}

/// One Hom block of `𝒦` examined up to a weight bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KCohomologyEntry {
    pub src: usize,
    pub tgt: usize,
    pub degree: i64,
    /// Dimension of the cycles spanned by words of weight at most the bound.
    pub cycles: usize,
    /// How many of those are cohomologous to a multiple of the canonical
    /// class, with a bounding element of weight at most the bound plus slack.
    pub explained: usize,
    /// The canonical class is nonzero (degree zero) or absent (elsewhere).
    pub canonical_nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KCohomologyReport {
    pub cap: u32,
    pub slack: u32,
    pub entries: Vec<KCohomologyEntry>,
    /// `(g f)² − 1` bounds.
    pub square_trivial: bool,
}

impl KCohomologyReport {
    /// Every Hom complex looks like the ground field in degree zero.
    pub fn all_scalar(&self) -> bool {
        self.square_trivial && self.entries.iter().all(|e| e.cycles == e.explained && e.canonical_nonzero)
    }
}

/// Cohomology of the Hom complexes of `𝒦` in degrees `-4..=0`, seen through
/// cycles of weight at most `cap`.
pub fn bounded_k_cohomology<S: Scalar>(cap: u32, slack: u32) -> KCohomologyReport {
    let k = k_category::<S>();
    let (t, _) = k.truncate(-5, 0, cap + slack);
    let canonical = |x: usize, y: usize| -> Elem<S> {
        match (x, y) {
            (0, 1) => t.block(0, 1, 0).iter().find(|&&i| t.label(i) == "f").map(|&i| unit(i)).unwrap_or_default(),
            (1, 0) => t.block(1, 0, 0).iter().find(|&&i| t.label(i) == "g").map(|&i| unit(i)).unwrap_or_default(),
            _ => t.identity[x].clone(),
        }
    };
    let mut entries = Vec::new();
    for x in 0..2 {
        for y in 0..2 {
            for n in -4..=0 {
                let block = t.block(x, y, n);
                let light: Vec<usize> = (0..block.len()).filter(|&a| t.basis[block[a]].weight <= cap).collect();
                let hc = t.hom_complex_on(x, y, n - 1, n + 1);
                let dmat = hc.diff(n);
                let sub = crate::linalg::Matrix::from_columns(dmat.rows(), &light.iter().map(|&a| dmat.column(a)).collect::<Vec<_>>());
                let cycles: Vec<Vec<S>> = sub
                    .kernel()
                    .into_iter()
                    .map(|z| {
                        let mut full = vec![S::zero(); block.len()];
                        for (c, &a) in light.iter().enumerate() {
                            full[a] = z[c].clone();
                        }
                        full
                    })
                    .collect();
                let mut span = hc.boundaries(n);
                let dim = block.len();
                let canonical_nonzero = if n == 0 {
                    let can = t.coords(&canonical(x, y), x, y, 0);
                    let nonzero = span_coefficients(dim, &span, &can).is_none();
                    span.push(can);
                    nonzero
                } else {
                    true
                };
                let explained = cycles.iter().filter(|z| span_coefficients(dim, &span, z).is_some()).count();
                entries.push(KCohomologyEntry { src: x, tgt: y, degree: n, cycles: cycles.len(), explained, canonical_nonzero });
            }
        }
    }
    let gf = k.word(&["g", "f"]);
    let sq = gf.after(&gf).sub(&k.id(0));
    let index: std::collections::HashMap<_, _> = t.basis.iter().enumerate().filter_map(|(a, b)| b.path.clone().map(|p| (p, a))).collect();
    let mut e = Elem::new();
    for (p, c) in &sq.terms {
        if let Some(&i) = index.get(p) {
            e.insert(i, c.clone());
        }
    }
    let square_trivial = e.len() == sq.terms.len() && t.bound(&e, 0, 0, 0).is_some();
    KCohomologyReport { cap, slack, entries, square_trivial }
}

/// Dg functors `𝒦 → C` sending `f` to a fixed closed `u: x → y`: the affine
/// space of `(g, h1, h2, r)`, or a certificate that there is none.
pub struct KHoms<S> {
    pub x: usize,
    pub y: usize,
    pub u: Elem<S>,
    pub blocks: Vec<(usize, usize, i64)>,
    pub solutions: Result<Affine<S>, Vec<S>>,
}

pub fn homs_from_k<S: Scalar>(c: &ConcreteDgCat<S>, x: usize, y: usize, u: &Elem<S>) -> Result<KHoms<S>, DgError> {
    if !c.d(u).is_empty() {
        return Err(DgError::NotClosed { element: c.render(u) });
    }
    let blocks = vec![(y, x, 0), (x, x, -1), (y, y, -1), (x, y, -2)];
    let mut sys = System::new(c, blocks.clone());
    let d = |i: usize| Some(c.d(&unit(i)));
    let neg_d = |i: usize| Some(elem_scale(&c.d(&unit(i)), &-S::one()));
    let right = |i: usize| c.compose(&unit(i), u);
    let left = |i: usize| c.compose(u, &unit(i));
    let neg_left = |i: usize| c.compose(u, &unit(i)).map(|e| elem_scale(&e, &-S::one()));
    sys.constrain(c, (y, x, 1), &[(0, &d)], &Elem::new())?;
    sys.constrain(c, (x, x, 0), &[(0, &right), (1, &neg_d)], &c.identity[x])?;
    sys.constrain(c, (y, y, 0), &[(0, &left), (2, &neg_d)], &c.identity[y])?;
    sys.constrain(c, (x, y, -1), &[(2, &right), (1, &neg_left), (3, &neg_d)], &Elem::new())?;
    Ok(KHoms { x, y, u: u.clone(), blocks, solutions: sys.solve() })
}

impl<S: Scalar> KHoms<S> {
    pub fn witness(&self, c: &ConcreteDgCat<S>, v: &[S]) -> HomotopyEquivWitness<S> {
        let sys = System::new(c, self.blocks.clone());
        let w = sys.values(v);
        HomotopyEquivWitness { x: self.x, y: self.y, f: self.u.clone(), g: w[0].clone(), h_x: w[1].clone(), h_y: w[2].clone(), r: w[3].clone() }
    }

    /// On `Cone(Hom(z, u))` with `D(b, a) = (d b + u a, −d a)`, the map
    /// `(b, a) ↦ (r a − h2 b, h1 a + g b)` satisfies `D c + c D = 1`.
    pub fn cone_contraction_holds(&self, c: &ConcreteDgCat<S>, w: &HomotopyEquivWitness<S>, z: usize) -> Result<bool, DgError> {
        let (x, y) = (self.x, self.y);
        let comp = |a: &Elem<S>, b: &Elem<S>| c.compose(a, b).ok_or_else(super::linear::unknown_product);
        let dd = |(b, a): &(Elem<S>, Elem<S>)| -> Result<(Elem<S>, Elem<S>), DgError> {
            let mut top = c.d(b);
            elem_add(&mut top, &comp(&self.u, a)?, &S::one());
            Ok((top, elem_scale(&c.d(a), &-S::one())))
        };
        let hh = |(b, a): &(Elem<S>, Elem<S>)| -> Result<(Elem<S>, Elem<S>), DgError> {
            let mut top = comp(&w.r, a)?;
            elem_add(&mut top, &comp(&w.h_y, b)?, &-S::one());
            let mut bottom = comp(&w.h_x, a)?;
            elem_add(&mut bottom, &comp(&w.g, b)?, &S::one());
            Ok((top, bottom))
        };
        let (lo, hi) = if c.supported { (c.lo - 2, c.hi + 1) } else { (c.lo + 1, c.hi - 2) };
        for n in lo..=hi {
            let mut gens: Vec<(Elem<S>, Elem<S>)> = c.block(z, y, n).iter().map(|&i| (unit(i), Elem::new())).collect();
            gens.extend(c.block(z, x, n + 1).iter().map(|&i| (Elem::new(), unit(i))));
            for v in gens {
                let a = dd(&hh(&v)?)?;
                let b = hh(&dd(&v)?)?;
                let mut top = a.0;
                elem_add(&mut top, &b.0, &S::one());
                let mut bottom = a.1;
                elem_add(&mut bottom, &b.1, &S::one());
                if top != v.0 || bottom != v.1 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
