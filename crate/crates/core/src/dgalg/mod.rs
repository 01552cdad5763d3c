//! Differential graded algebras: presentations, spheres and discs, cell
//! attachments, bounded cofibrant replacement and homotopies.

pub mod cocylinder;
pub mod corpus;
pub mod homotopy;
pub mod replace;

use crate::dg::concrete::{elem_add, unit};
use crate::dg::{BasisElem, ConcreteDgAlg, DgError, Elem, FreeMap, NcPoly, Presentation, PresentationError};
use crate::linalg::Matrix;
use crate::Scalar;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub type DgAlgPresentation<S> = Presentation<S>;

/// The ground field: no generators.
pub fn ground<S: Scalar>() -> Presentation<S> {
    Presentation::algebra(&[])
}

/// `S(n)`: one closed generator `u` of degree `-n`.
pub fn sphere<S: Scalar>(n: i64) -> Presentation<S> {
    Presentation::algebra(&[("u", -n)])
}

/// `D(n)`: generators `t`, `dt` of degrees `-n`, `1-n` with `d t = dt`.
pub fn disc<S: Scalar>(n: i64) -> Presentation<S> {
    disc_named("t", "dt", n)
}

pub fn disc_named<S: Scalar>(t: &str, dt: &str, n: i64) -> Presentation<S> {
    let mut p = Presentation::algebra(&[(t, -n), (dt, 1 - n)]);
    let d = p.gen(dt);
    p.set_d(t, d);
    p
}

/// Finite-dimensional algebra from a multiplication table on basis indices.
/// `unit_index` names the basis element serving as `1`.
pub fn concrete_algebra<S: Scalar>(
    labels: &[(&str, i64, u32)],
    unit_index: usize,
    diff: Vec<Elem<S>>,
    mult: impl Fn(usize, usize) -> Elem<S>,
) -> ConcreteDgAlg<S> {
    let lo = labels.iter().map(|l| l.1).min().unwrap_or(0);
    let hi = labels.iter().map(|l| l.1).max().unwrap_or(0);
    let basis: Vec<BasisElem> =
        labels.iter().map(|(l, d, w)| BasisElem { src: 0, tgt: 0, degree: *d, weight: *w, label: l.to_string(), path: None }).collect();
    let mut table = HashMap::new();
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            let n = basis[i].degree + basis[j].degree;
            if n >= lo && n <= hi {
                table.insert((i, j), mult(i, j));
            }
        }
    }
    ConcreteDgAlg::new(vec!["*".into()], lo, hi, None, true, basis, diff, table, vec![unit(unit_index)])
}

/// `𝕂[ε]/(ε²)` with `|ε| = 0` and zero differential.
pub fn dual_numbers<S: Scalar>() -> ConcreteDgAlg<S> {
    concrete_algebra(&[("1", 0, 0), ("e", 0, 1)], 0, vec![Elem::new(), Elem::new()], |i, j| match (i, j) {
        (0, k) | (k, 0) => unit(k),
        _ => Elem::new(),
    })
}

/// Generator names of `b` that clash with `a` get primes appended.
fn disjoint_names<S: Scalar>(a: &Presentation<S>, b: &Presentation<S>) -> Vec<String> {
    let mut taken: Vec<String> = a.quiver.gens.iter().map(|g| g.name.clone()).collect();
    b.quiver
        .gens
        .iter()
        .map(|g| {
            let mut n = g.name.clone();
            while taken.contains(&n) {
                n.push('\'');
            }
            taken.push(n.clone());
            n
        })
        .collect()
}

/// The coproduct `A ∗ B`: the union of generators, `A`'s first.
pub fn free_product<S: Scalar>(a: &Presentation<S>, b: &Presentation<S>) -> Presentation<S> {
    let names = disjoint_names(a, b);
    let off = a.num_gens();
    let mut q = a.quiver.clone();
    for (g, n) in b.quiver.gens.iter().zip(names) {
        q.gens.push(crate::dg::Generator { name: n, src: 0, tgt: 0, degree: g.degree, weight: g.weight });
    }
    let lift_a = |p: &NcPoly<S>| q.remap(p, |i| i, |_| 0);
    let lift_b = |p: &NcPoly<S>| q.remap(p, |i| i + off, |_| 0);
    let diff = a.diff.iter().map(lift_a).chain(b.diff.iter().map(lift_b)).collect();
    let relations = a.relations.iter().map(lift_a).chain(b.relations.iter().map(lift_b)).collect();
    Presentation { quiver: q, diff, relations }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeformError {
    Degree { generator: String },
    /// `d_A(α(x)) ≠ −α(d_W(x))`.
    Incompatible { generator: String },
    /// `d_W(x)` is not a combination of generators of `W`.
    NotLinear { generator: String },
    /// The deformed differential does not square to zero.
    Result(PresentationError),
}

impl fmt::Display for DeformError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeformError::Degree { generator } => write!(f, "α({generator}) has the wrong degree"),
            DeformError::Incompatible { generator } => write!(f, "α is not compatible with d on {generator}"),
            DeformError::NotLinear { generator } => write!(f, "d({generator}) is not linear in the new generators"),
            DeformError::Result(e) => write!(f, "deformed algebra: {e}"),
        }
    }
}

impl std::error::Error for DeformError {}

/// `T_A(A⊗W⊗A; α)`: the free product of `A` with the tensor algebra on the
/// complex `W` (a presentation whose differentials are linear in its
/// generators), with `d′(x) = d_W(x) + α(x)` for `x ∈ W`. `alpha` holds
/// elements of `A`, one per generator of `W`.
pub fn deformed_tensor<S: Scalar>(a: &Presentation<S>, w: &Presentation<S>, alpha: &[NcPoly<S>], bound: u32) -> Result<Presentation<S>, DeformError> {
    let rules = a.rules(bound);
    let alpha_of = |p: &NcPoly<S>| -> NcPoly<S> {
        let mut out = NcPoly::zero();
        for (t, c) in &p.terms {
            out.add_scaled(&alpha[t.word[0]], c);
        }
        out
    };
    for (k, g) in w.quiver.gens.iter().enumerate() {
        if w.diff[k].terms.keys().any(|t| t.word.len() != 1) {
            return Err(DeformError::NotLinear { generator: g.name.clone() });
        }
        if !alpha[k].is_zero() && alpha[k].degree() != Some(g.degree + 1) {
            return Err(DeformError::Degree { generator: g.name.clone() });
        }
        let lhs = a.reduce(&rules, &a.d(&alpha[k]));
        let rhs = a.reduce(&rules, &alpha_of(&w.diff[k]).neg());
        if !lhs.sub(&rhs).is_zero() {
            return Err(DeformError::Incompatible { generator: g.name.clone() });
        }
    }
    let mut out = free_product(a, w);
    let off = a.num_gens();
    for k in 0..w.num_gens() {
        let al = out.quiver.remap(&alpha[k], |i| i, |_| 0);
        out.diff[off + k] = out.diff[off + k].add(&al);
    }
    out.validate(bound).map_err(DeformError::Result)?;
    Ok(out)
}

/// `A⟨t; x⟩` for a cocycle `x` of degree `-n`: a new generator of degree
/// `-n-1` with `d t = x`.
pub fn adjoin_variable<S: Scalar>(a: &Presentation<S>, x: &NcPoly<S>, n: i64, name: &str, bound: u32) -> Result<Presentation<S>, DeformError> {
    let w = Presentation::algebra(&[(name, -n - 1)]);
    deformed_tensor(a, &w, std::slice::from_ref(x), bound)
}

/// An affine subspace `particular + span(directions)` of a coordinate space.
#[derive(Clone, Debug, PartialEq)]
pub struct Affine<S> {
    pub particular: Vec<S>,
    pub directions: Vec<Vec<S>>,
}

impl<S: Scalar> Affine<S> {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn contains(&self, v: &[S]) -> bool {
        let diff = crate::linalg::vec_sub(v, &self.particular);
        crate::linalg::span_coefficients(v.len(), &self.directions, &diff).is_some()
    }

    pub fn same_as(&self, o: &Affine<S>) -> bool {
        let n = self.particular.len();
        self.dim() == o.dim()
            && self.contains(&o.particular)
            && o.contains(&self.particular)
            && crate::linalg::span_rank(n, &[self.directions.clone(), o.directions.clone()].concat()) == self.dim()
    }
}

/// Dg maps out of a free presentation into a concrete algebra, with some
/// generator images prescribed. The unknown images must enter every
/// constraint linearly: each word of every differential and relation may
/// contain at most one unprescribed generator.
#[derive(Clone, Debug)]
pub struct Extensions<S> {
    /// For each unknown generator, its offset in the coordinate vector and its block.
    pub layout: Vec<(usize, usize, i64)>,
    pub solutions: Option<Affine<S>>,
}

impl<S: Scalar> Extensions<S> {
    /// The generator images for a coordinate vector.
    pub fn images(&self, target: &ConcreteDgAlg<S>, fixed: &[Option<Elem<S>>], v: &[S]) -> Vec<Elem<S>> {
        let mut out = Vec::new();
        let mut k = 0;
        for f in fixed {
            match f {
                Some(e) => out.push(e.clone()),
                None => {
                    let (off, _, n) = self.layout[k];
                    let dim = target.dim(0, 0, n);
                    out.push(target.from_coords(0, 0, n, &v[off..off + dim]));
                    k += 1;
                }
            }
        }
        out
    }
}

pub fn solve_extensions<S: Scalar>(p: &Presentation<S>, target: &ConcreteDgAlg<S>, fixed: &[Option<Elem<S>>]) -> Result<Extensions<S>, DgError> {
    let mut layout = Vec::new();
    let mut var_of = vec![None; p.num_gens()];
    let mut total = 0;
    for (i, g) in p.quiver.gens.iter().enumerate() {
        if fixed[i].is_none() {
            var_of[i] = Some(layout.len());
            layout.push((total, i, g.degree));
            total += target.dim(0, 0, g.degree);
        }
    }
    let mut rows: Vec<Vec<S>> = Vec::new();
    let mut rhs: Vec<S> = Vec::new();
    let basis_of = |k: usize| -> Vec<Elem<S>> { target.block(0, 0, layout[k].2).iter().map(|&i| unit(i)).collect() };
    // Each constraint is an element `E(images)` of the target that must vanish;
    // it is affine in the unknowns, so it is built as a constant part plus one
    // column per unknown coordinate.
    let mut add_constraint = |constant: Elem<S>, columns: Vec<(usize, Elem<S>)>, n: i64| {
        if n < target.lo || n > target.hi {
            return;
        }
        let dim = target.dim(0, 0, n);
        let c = target.coords(&constant, 0, 0, n);
        let mut block = vec![vec![S::zero(); total]; dim];
        for (col, e) in &columns {
            for (r, v) in target.coords(e, 0, 0, n).into_iter().enumerate() {
                block[r][*col] = block[r][*col].clone() + v;
            }
        }
        for r in 0..dim {
            rows.push(block[r].clone());
            rhs.push(-c[r].clone());
        }
    };
    let eval_affine = |poly: &NcPoly<S>| -> Result<(Elem<S>, Vec<(usize, Elem<S>)>), DgError> {
        let mut constant = Elem::new();
        let mut columns: Vec<(usize, Elem<S>)> = Vec::new();
        for (t, c) in &poly.terms {
            let unknown: Vec<usize> = t.word.iter().enumerate().filter(|(_, a)| var_of[**a].is_some()).map(|(k, _)| k).collect();
            let prod = |elems: &[Elem<S>]| -> Result<Elem<S>, DgError> {
                let mut acc = target.identity[0].clone();
                for e in elems.iter().rev() {
                    acc = target.compose(e, &acc).ok_or_else(|| DgError::Unknown("product outside the known window".into()))?;
                }
                Ok(acc)
            };
            match unknown.len() {
                0 => {
                    let elems: Vec<Elem<S>> = t.word.iter().map(|&a| fixed[a].clone().unwrap()).collect();
                    elem_add(&mut constant, &prod(&elems)?, c);
                }
                1 => {
                    let pos = unknown[0];
                    let k = var_of[t.word[pos]].unwrap();
                    for (j, b) in basis_of(k).into_iter().enumerate() {
                        let mut elems: Vec<Elem<S>> = Vec::new();
                        for (m, &a) in t.word.iter().enumerate() {
                            elems.push(if m == pos { b.clone() } else { fixed[a].clone().unwrap() });
                        }
                        let mut e = Elem::new();
                        elem_add(&mut e, &prod(&elems)?, c);
                        columns.push((layout[k].0 + j, e));
                    }
                }
                _ => return Err(DgError::Unknown("constraint is not linear in the unknown images".into())),
            }
        }
        Ok((constant, columns))
    };
    for (i, g) in p.quiver.gens.iter().enumerate() {
        let (mut constant, mut columns) = eval_affine(&p.diff[i])?;
        match &fixed[i] {
            Some(e) => elem_add(&mut constant, &target.d(e), &-S::one()),
            None => {
                let k = var_of[i].unwrap();
                for (j, b) in basis_of(k).into_iter().enumerate() {
                    columns.push((layout[k].0 + j, crate::dg::concrete::elem_scale(&target.d(&b), &-S::one())));
                }
            }
        }
        if g.degree < target.hi || target.supported {
            add_constraint(constant, columns, g.degree + 1);
        }
    }
    for r in &p.relations {
        let (constant, columns) = eval_affine(r)?;
        add_constraint(constant, columns, r.degree().unwrap_or(0));
    }
    let m = Matrix::from_row_vecs(total, &rows);
    let solutions = if rows.is_empty() {
        Some(Affine { particular: vec![S::zero(); total], directions: (0..total).map(|i| crate::linalg::unit_vec(total, i)).collect() })
    } else {
        m.solve(&rhs).map(|particular| Affine { particular, directions: m.kernel() })
    };
    Ok(Extensions { layout, solutions })
}

/// Basis of `Z^{-n}(A)`, the images `θ(u)` of maps `θ: S(n) → A`.
pub fn maps_from_sphere<S: Scalar>(n: i64, a: &ConcreteDgAlg<S>) -> Result<Vec<Elem<S>>, DgError> {
    in_window(-n, a)?;
    if -n + 1 > a.hi && !a.supported {
        return Err(DgError::Unknown(format!("cycles in degree {} need degree {} inside the window", -n, 1 - n)));
    }
    Ok(a.cycles(0, 0, -n))
}

/// Basis of `A^{-n}`, the images `θ(t)` of maps `θ: D(n) → A`.
pub fn maps_from_disc<S: Scalar>(n: i64, a: &ConcreteDgAlg<S>) -> Result<Vec<Elem<S>>, DgError> {
    in_window(-n, a)?;
    Ok(a.block(0, 0, -n).iter().map(|&i| unit(i)).collect())
}

fn in_window<S: Scalar>(n: i64, a: &ConcreteDgAlg<S>) -> Result<(), DgError> {
    if (n < a.lo || n > a.hi) && !a.supported {
        return Err(DgError::Unknown(format!("degree {n} lies outside the window {}..{}", a.lo, a.hi)));
    }
    Ok(())
}

/// A bijection of generators carrying degrees, differentials and relations
/// of `p` onto those of `q`, found by trying all degree-preserving matchings.
pub fn generator_matching<S: Scalar>(p: &Presentation<S>, q: &Presentation<S>) -> Option<Vec<usize>> {
    let n = p.num_gens();
    if n != q.num_gens() || p.relations.len() != q.relations.len() {
        return None;
    }
    let mut perm = Vec::new();
    let mut used = vec![false; n];
    fn go<S: Scalar>(p: &Presentation<S>, q: &Presentation<S>, perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let k = perm.len();
        if k == p.num_gens() {
            let map = |x: &NcPoly<S>| q.quiver.remap(x, |i| perm[i], |o| o);
            let diff_ok = (0..k).all(|i| map(&p.diff[i]) == q.diff[perm[i]]);
            let rels_ok = p.relations.iter().all(|r| {
                let m = map(r);
                q.relations.iter().any(|s| *s == m || *s == m.neg())
            });
            return diff_ok && rels_ok;
        }
        for j in 0..used.len() {
            let (a, b) = (&p.quiver.gens[k], &q.quiver.gens[j]);
            if !used[j] && a.degree == b.degree && (a.src, a.tgt) == (b.src, b.tgt) {
                used[j] = true;
                perm.push(j);
                if go(p, q, perm, used) {
                    return true;
                }
                perm.pop();
                used[j] = false;
            }
        }
        false
    }
    go(p, q, &mut perm, &mut used).then_some(perm)
}

/// The outcome of testing that `A⟨t; x⟩` is the pushout of `S(n) → D(n+1)`
/// along `u ↦ x` against a family of test targets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushoutCheck {
    pub targets: usize,
    /// Index of the first test target where the two solution sets differ.
    pub failure: Option<usize>,
}

/// For each test map `φ: A → T`, the cocones `(φ, ψ: D(n+1) → T)` and the maps
/// `A⟨t; x⟩ → T` extending `φ` are computed as two affine spaces of values
/// of `t`; they must coincide, and every such value must give a dg map.
pub fn verify_cell_pushout<S: Scalar>(
    a: &Presentation<S>,
    x: &NcPoly<S>,
    n: i64,
    adjoined: &Presentation<S>,
    tests: &[(Arc<ConcreteDgAlg<S>>, Vec<Elem<S>>)],
) -> Result<PushoutCheck, DgError> {
    for (k, (target, phi)) in tests.iter().enumerate() {
        let phi_map = FreeMap::new(Arc::new(a.clone()), target.clone(), vec![0], phi.clone());
        phi_map.check()?;
        let x_image = phi_map.eval(x).ok_or_else(|| DgError::Unknown("image of x leaves the window".into()))?;
        let disc = disc::<S>(n + 1);
        let cocones = solve_extensions(&disc, target, &[None, Some(x_image.clone())])?;
        let mut fixed: Vec<Option<Elem<S>>> = phi.iter().cloned().map(Some).collect();
        fixed.push(None);
        let ext = solve_extensions(adjoined, target, &fixed)?;
        let same = match (&cocones.solutions, &ext.solutions) {
            (None, None) => true,
            (Some(s), Some(t)) => s.same_as(t),
            _ => false,
        };
        if !same {
            return Ok(PushoutCheck { targets: tests.len(), failure: Some(k) });
        }
        if let Some(sol) = &ext.solutions {
            for v in std::iter::once(sol.particular.clone()).chain(sol.directions.iter().map(|d| crate::linalg::vec_add(&sol.particular, d))) {
                let images = ext.images(target, &fixed, &v);
                FreeMap::new(Arc::new(adjoined.clone()), target.clone(), vec![0], images).check()?;
            }
        }
    }
    Ok(PushoutCheck { targets: tests.len(), failure: None })
}

/// A presentation of a finite algebra: one generator per basis element
/// other than one chosen to be replaced by the unit, and every product of two
/// generators rewritten in that basis. Also returns the generator images,
/// which give an isomorphism onto `b`.
pub fn as_presentation<S: Scalar>(b: &ConcreteDgAlg<S>) -> (Presentation<S>, Vec<Elem<S>>) {
    let one = &b.identity[0];
    let (&k0, c0) = one.iter().next().expect("nonzero unit");
    let gens: Vec<usize> = (0..b.len()).filter(|&i| i != k0).collect();
    let pres_gens: Vec<(&str, i64)> = gens.iter().map(|&i| (b.basis[i].label.as_str(), b.basis[i].degree)).collect();
    let mut p = Presentation::algebra(&pres_gens);
    let q = p.quiver.clone();
    let express = |e: &Elem<S>| -> NcPoly<S> {
        let mut out = NcPoly::zero();
        let base = e.get(&k0).cloned().unwrap_or_else(S::zero) / c0.clone();
        out.add_term(q.id(0), base.clone());
        for (g, &i) in gens.iter().enumerate() {
            let v = e.get(&i).cloned().unwrap_or_else(S::zero) - base.clone() * one.get(&i).cloned().unwrap_or_else(S::zero);
            out.add_term(q.arrow(g), v);
        }
        out
    };
    p.diff = gens.iter().map(|&i| express(&b.d(&unit(i)))).collect();
    for (x, &i) in gens.iter().enumerate() {
        for (y, &j) in gens.iter().enumerate() {
            let prod = b.compose_basis(i, j).expect("finite algebra has all products");
            let word = NcPoly::path(q.path(&[x, y]).unwrap());
            p.relations.push(word.sub(&express(&prod)));
        }
    }
    (p, gens.iter().map(|&i| unit(i)).collect())
}
