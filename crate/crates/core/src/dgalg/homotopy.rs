//! Cochain and elementary homotopies between dg algebra maps out of presentations.

use super::cocylinder::{free_path_object, Cocylinder, FreePathObject};
use crate::dg::concrete::{elem_add, elem_scale, elem_sub, unit};
use crate::dg::{ConcreteDgAlg, DgError, Elem, FreeMap, NcPoly, Path, Presentation, SymbolicMap};
use crate::linalg::Matrix;
use crate::polyring::{groebner, is_inconsistent, Poly};
use crate::Scalar;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Values `Δ(x)` on generators of an `(f, g)`-derivation of degree −1,
/// extended to words by `Δ(ab) = Δ(a)g(b) + (−1)^{|a|} f(a)Δ(b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationWitness<S> {
    pub values: Vec<Elem<S>>,
}

fn unknown() -> DgError {
    DgError::Unknown("product outside the known window".into())
}

impl<S: Scalar> DerivationWitness<S> {
    pub fn apply_path(&self, f: &FreeMap<S>, g: &FreeMap<S>, p: &Path) -> Result<Elem<S>, DgError> {
        let q = &f.source.quiver;
        let t = &f.target;
        let mut out = Elem::new();
        let mut prefix = t.identity[0].clone();
        let mut before = 0;
        for (i, &a) in p.word.iter().enumerate() {
            let suffix = match q.path(&p.word[i + 1..]) {
                Some(s) => g.eval_path(&s).ok_or_else(unknown)?,
                None => t.identity[0].clone(),
            };
            let term = t.compose(&t.compose(&prefix, &self.values[a]).ok_or_else(unknown)?, &suffix).ok_or_else(unknown)?;
            elem_add(&mut out, &term, &S::sign_pow(before));
            prefix = t.compose(&prefix, &f.images[a]).ok_or_else(unknown)?;
            before += q.gens[a].degree;
        }
        Ok(out)
    }

    pub fn apply(&self, f: &FreeMap<S>, g: &FreeMap<S>, p: &NcPoly<S>) -> Result<Elem<S>, DgError> {
        let mut out = Elem::new();
        for (t, c) in &p.terms {
            elem_add(&mut out, &self.apply_path(f, g, t)?, c);
        }
        Ok(out)
    }

    /// `f − g = dΔ + Δd` on generators, degrees, and `Δ` vanishing on relations.
    pub fn verify(&self, f: &FreeMap<S>, g: &FreeMap<S>) -> Result<(), DgError> {
        let (a, b) = (&f.source, &f.target);
        for (i, x) in a.quiver.gens.iter().enumerate() {
            if b.degree_of(&self.values[i]).is_some_and(|d| d != x.degree - 1) {
                return Err(DgError::DegreeMismatch { what: format!("Δ({})", x.name) });
            }
            if x.degree > b.hi && !b.supported {
                continue;
            }
            let mut rhs = b.d(&self.values[i]);
            elem_add(&mut rhs, &self.apply(f, g, &a.diff[i])?, &S::one());
            if elem_sub(&f.images[i], &g.images[i]) != rhs {
                return Err(DgError::NotChainMap { element: x.name.clone() });
            }
        }
        for (k, r) in a.relations.iter().enumerate() {
            if !self.apply(f, g, r)?.is_empty() {
                return Err(DgError::Relation { index: k });
            }
        }
        Ok(())
    }
}

/// Why no cochain homotopy exists: a row combination `y` of the joint
/// linear system with `yᵀM = 0` and `yᵀb ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Obstruction<S> {
    pub certificate: Vec<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CochainHomotopy<S> {
    Found(DerivationWitness<S>),
    Obstructed(Obstruction<S>),
}

/// Solves for `Δ` on the generators of a semi-free source, all generators
/// at once.
pub fn cochain_homotopy<S: Scalar>(f: &FreeMap<S>, g: &FreeMap<S>) -> Result<CochainHomotopy<S>, DgError> {
    let (a, b) = (&f.source, &f.target);
    a.semi_free_witness().map_err(|e| DgError::Unknown(format!("source is not semi-free: {e:?}")))?;
    let n = a.num_gens();
    let mut offset = Vec::with_capacity(n);
    let mut total = 0;
    for x in &a.quiver.gens {
        offset.push(total);
        total += b.dim(0, 0, x.degree - 1);
    }
    let mut rows: Vec<Vec<S>> = Vec::new();
    let mut rhs: Vec<S> = Vec::new();
    for (i, x) in a.quiver.gens.iter().enumerate() {
        let deg = x.degree;
        if deg > b.hi && !b.supported {
            continue;
        }
        let dim = b.dim(0, 0, deg);
        let mut block = vec![vec![S::zero(); total]; dim];
        let mut add_col = |col: usize, e: &Elem<S>| {
            for (r, v) in b.coords(e, 0, 0, deg).into_iter().enumerate() {
                block[r][col] = block[r][col].clone() + v;
            }
        };
        for (k, &j) in b.block(0, 0, deg - 1).iter().enumerate() {
            add_col(offset[i] + k, &b.d(&unit(j)));
        }
        for (t, c) in &a.diff[i].terms {
            let mut prefix = b.identity[0].clone();
            let mut before = 0;
            for (m, &y) in t.word.iter().enumerate() {
                let suffix = match a.quiver.path(&t.word[m + 1..]) {
                    Some(s) => g.eval_path(&s).ok_or_else(unknown)?,
                    None => b.identity[0].clone(),
                };
                let ydeg = a.quiver.gens[y].degree;
                for (k, &j) in b.block(0, 0, ydeg - 1).iter().enumerate() {
                    let term = b.compose(&b.compose(&prefix, &unit(j)).ok_or_else(unknown)?, &suffix).ok_or_else(unknown)?;
                    add_col(offset[y] + k, &elem_scale(&term, &(S::sign_pow(before) * c.clone())));
                }
                prefix = b.compose(&prefix, &f.images[y]).ok_or_else(unknown)?;
                before += ydeg;
            }
        }
        rows.extend(block);
        rhs.extend(b.coords(&elem_sub(&f.images[i], &g.images[i]), 0, 0, deg));
    }
    let values_from = |v: &[S]| -> Vec<Elem<S>> {
        (0..n).map(|i| b.from_coords(0, 0, a.quiver.gens[i].degree - 1, &v[offset[i]..offset[i] + b.dim(0, 0, a.quiver.gens[i].degree - 1)])).collect()
    };
    if rows.is_empty() {
        return Ok(CochainHomotopy::Found(DerivationWitness { values: values_from(&vec![S::zero(); total]) }));
    }
    let m = Matrix::from_row_vecs(total, &rows);
    Ok(match m.solve(&rhs) {
        Some(v) => CochainHomotopy::Found(DerivationWitness { values: values_from(&v) }),
        None => CochainHomotopy::Obstructed(Obstruction { certificate: m.inconsistency_certificate(&rhs).unwrap_or_default() }),
    })
}

/// A dg map `K: A → B ∗ D(t)` with `p₀∘K = f` and `p₁∘K = g`.
#[derive(Clone, Debug)]
pub struct ElementaryHomotopy<S> {
    pub path: FreePathObject<S>,
    pub map: SymbolicMap<S>,
}

/// Why the bounded search found nothing.
#[derive(Clone, Debug, PartialEq)]
pub enum NoElementaryHomotopy<S> {
    /// The linear constraints alone are inconsistent.
    Linear(Obstruction<S>),
    /// The reduced Gröbner basis of the polynomial constraints is `{1}`.
    Groebner { equations: usize, unknowns: usize },
}

#[derive(Clone, Debug)]
pub enum ElementaryOutcome<S> {
    Found(ElementaryHomotopy<S>),
    /// Exhausted: no homotopy whose generator images are combinations of
    /// normal words of length at most `max_len`.
    None { max_len: u32, reason: NoElementaryHomotopy<S> },
    /// Neither a solution nor a contradiction within the step budget.
    Undecided { max_len: u32, parameters: usize },
}

type Sym<S> = BTreeMap<Path, Poly<S>>;

fn sym_add<S: Scalar>(a: &mut Sym<S>, p: &Path, v: &Poly<S>) {
    let e = a.entry(p.clone()).or_insert_with(|| Poly::zero(v.nvars));
    *e = e.add(v);
    if e.is_zero() {
        a.remove(p);
    }
}

/// Bounded search for an elementary homotopy. Generator images are
/// unknown combinations of normal words of length at most `max_len`; the
/// dg-map, relation and endpoint conditions become polynomial equations in
/// the coefficients, decided by linear elimination, a Gröbner basis, and
/// a final search over small values.
pub fn elementary_homotopy<S: Scalar>(f: &FreeMap<S>, g: &FreeMap<S>, max_len: u32, budget: usize) -> ElementaryOutcome<S> {
    let path = free_path_object(&f.target);
    let t: &Presentation<S> = &path.free;
    let a = &f.source;
    let b = &f.target;
    let rules = t.rules(2 * max_len + 4);
    let (words, _) = t.normal_words(&rules, i64::MIN / 4, i64::MAX / 4, max_len);
    let mut vars: Vec<(usize, Path)> = Vec::new();
    for (i, x) in a.quiver.gens.iter().enumerate() {
        for w in words.iter().filter(|w| w.degree == x.degree) {
            vars.push((i, w.clone()));
        }
    }
    let nv = vars.len();
    let images: Vec<Sym<S>> = (0..a.num_gens())
        .map(|i| {
            let mut s = Sym::new();
            for (k, (j, w)) in vars.iter().enumerate() {
                if *j == i {
                    sym_add(&mut s, w, &Poly::var(nv, k));
                }
            }
            s
        })
        .collect();
    let mul = |x: &Sym<S>, y: &Sym<S>| -> Sym<S> {
        let mut out = Sym::new();
        for (u, p) in x {
            for (v, q) in y {
                let pq = p.mul(q);
                for (w, c) in &t.reduce(&rules, &NcPoly::path(u.after(v).unwrap())).terms {
                    sym_add(&mut out, w, &pq.scale(c));
                }
            }
        }
        out
    };
    let eval = |p: &NcPoly<S>| -> Sym<S> {
        let mut out = Sym::new();
        for (word, c) in &p.terms {
            let mut acc: Sym<S> = Sym::new();
            sym_add(&mut acc, &t.quiver.id(0), &Poly::constant(nv, S::one()));
            for &x in &word.word {
                acc = mul(&acc, &images[x]);
            }
            for (w, v) in &acc {
                sym_add(&mut out, w, &v.scale(c));
            }
        }
        out
    };
    let d_sym = |x: &Sym<S>| -> Sym<S> {
        let mut out = Sym::new();
        for (u, p) in x {
            for (w, c) in &t.reduce(&rules, &t.d(&NcPoly::path(u.clone()))).terms {
                sym_add(&mut out, w, &p.scale(c));
            }
        }
        out
    };
    let mut eqs: Vec<Poly<S>> = Vec::new();
    for i in 0..a.num_gens() {
        let lhs = eval(&a.diff[i]);
        let rhs = d_sym(&images[i]);
        let mut diff = lhs;
        for (w, v) in &rhs {
            sym_add(&mut diff, w, &v.scale(&-S::one()));
        }
        eqs.extend(diff.into_values());
    }
    for r in &a.relations {
        eqs.extend(eval(r).into_values());
    }
    for (i, x) in a.quiver.gens.iter().enumerate() {
        for (p, target) in [(&path.p0, &f.images[i]), (&path.p1, &g.images[i])] {
            let dim = b.dim(0, 0, x.degree);
            let mut rows = vec![Poly::zero(nv); dim];
            for (k, (j, w)) in vars.iter().enumerate() {
                if *j != i {
                    continue;
                }
                let Some(img) = p.eval_path(w) else { continue };
                for (r, c) in b.coords(&img, 0, 0, x.degree).into_iter().enumerate() {
                    rows[r].add_term(crate::polyring::Mono::var(nv, k), c);
                }
            }
            for (r, c) in b.coords(target, 0, 0, x.degree).into_iter().enumerate() {
                rows[r].add_term(crate::polyring::Mono::one(nv), -c);
            }
            eqs.extend(rows);
        }
    }
    eqs.retain(|e| !e.is_zero());
    let (linear, nonlinear): (Vec<Poly<S>>, Vec<Poly<S>>) = eqs.into_iter().partition(|e| e.degree() <= 1);
    let lin_rows: Vec<Vec<S>> = linear
        .iter()
        .map(|e| (0..nv).map(|k| e.terms.get(&crate::polyring::Mono::var(nv, k)).cloned().unwrap_or_else(S::zero)).collect())
        .collect();
    let lin_rhs: Vec<S> = linear.iter().map(|e| -e.terms.get(&crate::polyring::Mono::one(nv)).cloned().unwrap_or_else(S::zero)).collect();
    let (particular, directions) = if lin_rows.is_empty() {
        (vec![S::zero(); nv], (0..nv).map(|k| crate::linalg::unit_vec(nv, k)).collect::<Vec<_>>())
    } else {
        let m = Matrix::from_row_vecs(nv, &lin_rows);
        match m.solve(&lin_rhs) {
            Some(p) => (p, m.kernel()),
            None => {
                let certificate = m.inconsistency_certificate(&lin_rhs).unwrap_or_default();
                return ElementaryOutcome::None { max_len, reason: NoElementaryHomotopy::Linear(Obstruction { certificate }) };
            }
        }
    };
    let np = directions.len();
    let subst: Vec<Poly<S>> = (0..nv)
        .map(|k| {
            let mut p = Poly::constant(np, particular[k].clone());
            for (j, d) in directions.iter().enumerate() {
                p.add_term(crate::polyring::Mono::var(np, j), d[k].clone());
            }
            p
        })
        .collect();
    let mut reduced: Vec<Poly<S>> = nonlinear.iter().map(|e| e.substitute(&subst, np)).filter(|e| !e.is_zero()).collect();
    reduced.dedup();
    let build = |params: &[S]| -> ElementaryHomotopy<S> {
        let coeff: Vec<S> = subst.iter().map(|p| p.eval(params)).collect();
        let mut imgs = vec![NcPoly::zero(); a.num_gens()];
        for (k, (i, w)) in vars.iter().enumerate() {
            imgs[*i].add_term(w.clone(), coeff[k].clone());
        }
        ElementaryHomotopy { map: SymbolicMap { source: a.clone(), target: path.free.clone(), obj: vec![0], images: imgs }, path: path.clone() }
    };
    if reduced.is_empty() {
        return ElementaryOutcome::Found(build(&vec![S::zero(); np]));
    }
    match groebner(&reduced, budget) {
        Ok(gb) if is_inconsistent(&gb) => {
            return ElementaryOutcome::None { max_len, reason: NoElementaryHomotopy::Groebner { equations: reduced.len(), unknowns: np } };
        }
        _ => {}
    }
    let used: Vec<usize> = (0..np).filter(|&j| reduced.iter().any(|e| e.terms.keys().any(|m| m.0[j] > 0))).collect();
    if used.len() > 12 {
        return ElementaryOutcome::Undecided { max_len, parameters: used.len() };
    }
    let choices = [S::zero(), S::one(), -S::one()];
    let mut idx = vec![0usize; used.len()];
    loop {
        let mut params = vec![S::zero(); np];
        for (k, &j) in used.iter().enumerate() {
            params[j] = choices[idx[k]].clone();
        }
        if reduced.iter().all(|e| e.eval(&params).is_negligible()) {
            return ElementaryOutcome::Found(build(&params));
        }
        let mut k = 0;
        while k < idx.len() && idx[k] == 2 {
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            return ElementaryOutcome::Undecided { max_len, parameters: used.len() };
        }
        idx[k] += 1;
    }
}

impl<S: Scalar> ElementaryHomotopy<S> {
    /// `p₀∘K = f`, `p₁∘K = g` on generators and `K` a dg map.
    pub fn verify(&self, f: &FreeMap<S>, g: &FreeMap<S>, bound: u32) -> Result<(), DgError> {
        self.map.check(bound)?;
        for (i, x) in f.source.quiver.gens.iter().enumerate() {
            for (p, want) in [(&self.path.p0, &f.images[i]), (&self.path.p1, &g.images[i])] {
                let got = p.eval(&self.map.images[i]).ok_or_else(unknown)?;
                if &got != want {
                    return Err(DgError::Unknown(format!("p∘K differs from the given map on {}", x.name)));
                }
            }
        }
        Ok(())
    }

    /// The cochain homotopy `Δ = (middle slot) ∘ φ ∘ K`.
    pub fn to_cochain(&self, c: &Cocylinder<S>, phi: &FreeMap<S>) -> Result<DerivationWitness<S>, DgError> {
        let mid = c.middle_slot();
        let values = self
            .map
            .images
            .iter()
            .map(|img| phi.eval(img).map(|e| mid.apply(&e)).ok_or_else(unknown))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DerivationWitness { values })
    }
}

/// Both maps on the windowed cohomology of a truncation of the source.
pub fn equal_on_cohomology<S: Scalar>(f: &FreeMap<S>, g: &FreeMap<S>, a: &Arc<ConcreteDgAlg<S>>, lo: i64, hi: i64) -> Option<bool> {
    let (fa, ga) = (f.on_truncation(a)?, g.on_truncation(a)?);
    let (cf, cg) = (fa.on_hom(0, 0).ok()?, ga.on_hom(0, 0).ok()?);
    let src = a.hom_complex(0, 0);
    Some((lo..=hi).all(|n| {
        let z = src.widen(cf.window().0, cf.window().1).cycles(n);
        let tgt = &cf.target;
        let bounds = tgt.boundaries(n);
        z.iter().all(|v| {
            let diff = crate::linalg::vec_sub(&cf.at(n).mul_vec(v), &cg.at(n).mul_vec(v));
            crate::linalg::span_coefficients(tgt.dim(n), &bounds, &diff).is_some()
        })
    }))
}
