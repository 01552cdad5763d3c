//! Formally adjoining the cone of a closed degree-zero morphism.

use super::{closed_morphism, fresh_name, generator};
use crate::dg::concrete::elem_add;
use crate::dg::{DgError, Elem, NcPoly, Path, Presentation};
use crate::linalg::Matrix;
use crate::Scalar;
use std::collections::HashMap;

/// Adds an object `∗` and arrows `i: y → ∗`, `q: ∗ → y`, `p: ∗ → x`,
/// `j: x → ∗` of degrees `0, 0, 1, -1` with `d q = −f p`, `d j = i f` and
/// relations `q i = 1`, `p j = 1`, `j p + i q = 1`. Then
/// `Hom(z, ∗) → Hom(z, y) ⊕ Hom(z, x)[1]`, `w ↦ (q w, p w)` is an
/// isomorphism onto the cone of `f ∘ −`.
pub fn add_cone<S: Scalar>(c: &Presentation<S>, x: usize, y: usize, f: &NcPoly<S>, name: &str) -> Result<Presentation<S>, DgError> {
    closed_morphism(c, x, y, f, 0, 8)?;
    let mut k = c.clone();
    let star = k.quiver.objects.len();
    k.quiver.objects.push(name.into());
    let wf = f.max_weight();
    let mut ids = Vec::new();
    for (base, src, tgt, deg, w) in [("i", y, star, 0, 1), ("q", star, y, 0, wf + 1), ("p", star, x, 1, 1), ("j", x, star, -1, wf + 1)] {
        let mut g = generator(&fresh_name(&k, base), src, tgt, deg);
        g.weight = w;
        ids.push(k.quiver.gens.len());
        k.quiver.gens.push(g);
        k.diff.push(NcPoly::zero());
    }
    let arrow = |k: &Presentation<S>, a: usize| NcPoly::path(k.quiver.arrow(a));
    let (i, q, p, j) = (arrow(&k, ids[0]), arrow(&k, ids[1]), arrow(&k, ids[2]), arrow(&k, ids[3]));
    let f = super::rebuild(&k.quiver, f);
    k.diff[ids[1]] = f.after(&p).neg();
    k.diff[ids[3]] = i.after(&f);
    k.relations.push(q.after(&i).sub(&k.id(y)));
    k.relations.push(p.after(&j).sub(&k.id(x)));
    k.relations.push(j.after(&p).add(&i.after(&q)).sub(&k.id(star)));
    Ok(k)
}

/// Results of the checks on an adjoined cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeReport {
    /// `p i` and `q j` reduce to zero.
    pub ideal_rewriting: bool,
    /// `p i` and `q j` are combinations of products with relations.
    pub ideal_span: bool,
    /// Old Hom complexes are unchanged on the window.
    pub fully_faithful: bool,
    /// `w ↦ (q w, p w)` is a chain isomorphism onto the cone, for every old object.
    pub hom_cone: bool,
    /// When `f` is an identity: a contraction of `∗` was found.
    pub contraction: Option<bool>,
    pub rules_complete: bool,
}

fn express<S: Scalar>(index: &HashMap<Path, usize>, p: &NcPoly<S>) -> Result<Elem<S>, DgError> {
    let mut e = Elem::new();
    for (t, c) in &p.terms {
        let i = index.get(t).ok_or_else(|| DgError::Unknown(format!("word of weight {} leaves the truncation", t.weight)))?;
        e.insert(*i, c.clone());
    }
    Ok(e)
}

/// Checks the cone adjoined to `c` along `f: x → y` on degrees `lo..=hi`
/// and weights up to `cap`; `span_cap` bounds the linear-span ideal check.
pub fn check_cone<S: Scalar>(c: &Presentation<S>, x: usize, y: usize, f: &NcPoly<S>, lo: i64, hi: i64, cap: u32, span_cap: u32) -> Result<ConeReport, DgError> {
    let k = add_cone(c, x, y, f, "cone")?;
    let n = k.num_gens();
    let star = k.quiver.objects.len() - 1;
    let arrow = |a: usize| NcPoly::path(k.quiver.arrow(a));
    let (i, q, p, j) = (arrow(n - 4), arrow(n - 3), arrow(n - 2), arrow(n - 1));
    let rules = k.rules(2 * cap + 4);
    let (pi, qj) = (p.after(&i), q.after(&j));
    let ideal_rewriting = k.reduce(&rules, &pi).is_zero() && k.reduce(&rules, &qj).is_zero();
    let ideal_span = k.ideal_span_contains(&pi, span_cap) && k.ideal_span_contains(&qj, span_cap);

    let (tc, _) = c.truncate(lo, hi, cap);
    let (tk, _) = k.truncate(lo, hi, cap);
    let index: HashMap<Path, usize> = tk.basis.iter().enumerate().filter_map(|(a, b)| b.path.clone().map(|p| (p, a))).collect();
    let old = c.quiver.objects.len();
    let mut fully_faithful = true;
    for a in 0..old {
        for b in 0..old {
            for m in lo..=hi {
                fully_faithful &= tc.dim(a, b, m) == tk.dim(a, b, m)
                    && tc.block(a, b, m).iter().all(|&e| tc.basis[e].path.as_ref().is_some_and(|p| index.contains_key(p)));
            }
        }
    }

    let mut hom_cone = true;
    let poly = |e: usize| NcPoly::path(tk.basis[e].path.clone().expect("truncation words"));
    for z in 0..old {
        let phi = |m: i64| -> Result<Matrix<S>, DgError> {
            let (ry, rx) = (tk.dim(z, y, m), tk.dim(z, x, m + 1));
            let mut cols = Vec::new();
            for &w in tk.block(z, star, m) {
                let qw = express(&index, &k.reduce(&rules, &q.after(&poly(w))))?;
                let pw = express(&index, &k.reduce(&rules, &p.after(&poly(w))))?;
                let mut col = tk.coords(&qw, z, y, m);
                col.extend(tk.coords(&pw, z, x, m + 1));
                debug_assert_eq!(col.len(), ry + rx);
                cols.push(col);
            }
            Ok(Matrix::from_columns(ry + rx, &cols))
        };
        let cone_d = |m: i64| -> Result<Matrix<S>, DgError> {
            let (ry, rx) = (tk.dim(z, y, m), tk.dim(z, x, m + 1));
            let (sy, sx) = (tk.dim(z, y, m + 1), tk.dim(z, x, m + 2));
            let mut cols = Vec::new();
            for &b in tk.block(z, y, m) {
                let mut col = tk.coords(&tk.diff[b], z, y, m + 1);
                col.extend(vec![S::zero(); sx]);
                cols.push(col);
            }
            for &a in tk.block(z, x, m + 1) {
                let fa = express(&index, &k.reduce(&rules, &super::rebuild(&k.quiver, f).after(&poly(a))))?;
                let mut col = tk.coords(&fa, z, y, m + 1);
                let mut da = Elem::new();
                elem_add(&mut da, &tk.diff[a], &-S::one());
                col.extend(tk.coords(&da, z, x, m + 2));
                cols.push(col);
            }
            debug_assert_eq!(cols.len(), ry + rx);
            Ok(Matrix::from_columns(sy + sx, &cols))
        };
        for m in lo..hi {
            let phi_m = phi(m)?;
            hom_cone &= phi_m.rows() == phi_m.cols() && phi_m.rank() == phi_m.cols();
            if m + 1 < hi {
                let dk = Matrix::from_columns(tk.dim(z, star, m + 1), &tk.block(z, star, m).iter().map(|&w| tk.coords(&tk.diff[w], z, star, m + 1)).collect::<Vec<_>>());
                hom_cone &= phi(m + 1)?.mul(&dk).sub(&cone_d(m)?.mul(&phi_m)).is_zero();
            }
        }
    }

    let is_identity = x == y && k.reduce(&rules, &super::rebuild(&k.quiver, f)).sub(&k.id(x)).is_zero();
    let contraction = is_identity.then(|| super::h0::contraction(&tk, star).is_some_and(|w| w.verify(&tk)));
    Ok(ConeReport { ideal_rewriting, ideal_span, fully_faithful, hom_cone, contraction, rules_complete: rules.complete })
}
