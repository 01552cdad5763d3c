//! The cocylinder `Γ(B)` of a finite dg algebra and its comparison with `B ∗ D(t)`.

use super::{as_presentation, disc_named, free_product};
use crate::dg::concrete::{elem_add, elem_scale, elem_sub, unit};
use crate::dg::{BasisElem, BasisMap, ConcreteDgAlg, DgError, Elem, FreeMap, Presentation};
use crate::linalg::Matrix;
use crate::Scalar;
use std::collections::HashMap;
use std::sync::Arc;

/// `Γ(B) = B ⊕ s⁻¹B ⊕ B` with its two projections and the diagonal.
#[derive(Clone, Debug)]
pub struct Cocylinder<S> {
    pub base: Arc<ConcreteDgAlg<S>>,
    pub gamma: Arc<ConcreteDgAlg<S>>,
    pub pi0: BasisMap<S>,
    pub pi1: BasisMap<S>,
    pub diag: BasisMap<S>,
}

impl<S: Scalar> Cocylinder<S> {
    /// Basis index of `b_i` in slot 0, of `s⁻¹b_i`, and of `b_i` in slot 1.
    pub fn slot0(&self, i: usize) -> usize {
        i
    }

    pub fn middle(&self, i: usize) -> usize {
        self.base.len() + i
    }

    pub fn slot1(&self, i: usize) -> usize {
        2 * self.base.len() + i
    }

    fn embed(&self, e: &Elem<S>, slot: impl Fn(usize) -> usize) -> Elem<S> {
        e.iter().map(|(&i, c)| (slot(i), c.clone())).collect()
    }

    /// The element `(0, s⁻¹a, 0)`.
    pub fn desuspend(&self, a: &Elem<S>) -> Elem<S> {
        self.embed(a, |i| self.middle(i))
    }

    /// The idempotent `(0, 0, 1)`.
    pub fn second_unit(&self) -> Elem<S> {
        self.embed(&self.base.identity[0], |i| self.slot1(i))
    }

    /// The degree −1 map `(b₀, s⁻¹a, b₁) ↦ a`, a `(π₀, π₁)`-derivation.
    pub fn middle_slot(&self) -> ConcreteDerivation<S> {
        let n = self.base.len();
        let values = (0..self.gamma.len()).map(|k| if (n..2 * n).contains(&k) { unit(k - n) } else { Elem::new() }).collect();
        ConcreteDerivation { f: self.pi0.clone(), g: self.pi1.clone(), values }
    }
}

/// Requires `b` finite with every product known.
pub fn cocylinder<S: Scalar>(b: &Arc<ConcreteDgAlg<S>>) -> Cocylinder<S> {
    let n = b.len();
    let mut basis = Vec::with_capacity(3 * n);
    for (tag, shift) in [("0", 0), ("s", 1), ("1", 0)] {
        for e in &b.basis {
            basis.push(BasisElem { src: 0, tgt: 0, degree: e.degree + shift, weight: e.weight, label: format!("{tag}:{}", e.label), path: None });
        }
    }
    let shift = |e: &Elem<S>, off: usize| -> Elem<S> { e.iter().map(|(&i, c)| (i + off, c.clone())).collect() };
    let mut diff = Vec::with_capacity(3 * n);
    for i in 0..n {
        let mut v = shift(&b.diff[i], 0);
        elem_add(&mut v, &unit(n + i), &S::one());
        diff.push(v);
    }
    for i in 0..n {
        diff.push(elem_scale(&shift(&b.diff[i], n), &-S::one()));
    }
    for i in 0..n {
        let mut v = shift(&b.diff[i], 2 * n);
        elem_add(&mut v, &unit(n + i), &-S::one());
        diff.push(v);
    }
    let mut mult = HashMap::new();
    let lo = b.lo;
    let hi = b.hi + 1;
    let prod = |i: usize, j: usize| b.compose_basis(i, j).expect("finite algebra has all products");
    for x in 0..3 * n {
        for y in 0..3 * n {
            let deg = basis[x].degree + basis[y].degree;
            if deg < lo || deg > hi {
                continue;
            }
            let (sx, ix) = (x / n, x % n);
            let (sy, iy) = (y / n, y % n);
            let v = match (sx, sy) {
                (0, 0) => shift(&prod(ix, iy), 0),
                (0, 1) => elem_scale(&shift(&prod(ix, iy), n), &S::sign_pow(b.basis[ix].degree)),
                (1, 2) => shift(&prod(ix, iy), n),
                (2, 2) => shift(&prod(ix, iy), 2 * n),
                _ => Elem::new(),
            };
            mult.insert((x, y), v);
        }
    }
    let mut one = shift(&b.identity[0], 0);
    elem_add(&mut one, &shift(&b.identity[0], 2 * n), &S::one());
    let gamma = Arc::new(ConcreteDgAlg::new(vec!["*".into()], lo, hi, None, b.supported, basis, diff, mult, vec![one]));
    let project = |slot: usize| BasisMap {
        source: gamma.clone(),
        target: b.clone(),
        obj: vec![0],
        images: (0..3 * n).map(|k| if k / n == slot { unit(k % n) } else { Elem::new() }).collect(),
    };
    let diag = BasisMap {
        source: b.clone(),
        target: gamma.clone(),
        obj: vec![0],
        images: (0..n).map(|i| {
            let mut e = unit(i);
            e.insert(2 * n + i, S::one());
            e
        }).collect(),
    };
    Cocylinder { base: b.clone(), pi0: project(0), pi1: project(2), diag, gamma }
}

/// A degree −1 map `Δ` between finite algebras, listed on the source basis,
/// meant to satisfy `Δ(ab) = Δ(a)g(b) + (−1)^{|a|} f(a)Δ(b)` and
/// `f − g = dΔ + Δd`.
#[derive(Clone, Debug)]
pub struct ConcreteDerivation<S> {
    pub f: BasisMap<S>,
    pub g: BasisMap<S>,
    pub values: Vec<Elem<S>>,
}

impl<S: Scalar> ConcreteDerivation<S> {
    pub fn apply(&self, e: &Elem<S>) -> Elem<S> {
        let mut out = Elem::new();
        for (&i, c) in e {
            elem_add(&mut out, &self.values[i], c);
        }
        out
    }

    pub fn verify(&self) -> Result<(), DgError> {
        let (a, b) = (&self.f.source, &self.f.target);
        for i in 0..a.len() {
            let lhs = elem_sub(&self.f.images[i], &self.g.images[i]);
            let mut rhs = b.d(&self.values[i]);
            elem_add(&mut rhs, &self.apply(&a.diff[i]), &S::one());
            if (a.basis[i].degree < a.hi || a.supported) && lhs != rhs {
                return Err(DgError::NotChainMap { element: a.label(i).into() });
            }
            if b.degree_of(&self.values[i]).is_some_and(|d| d != a.basis[i].degree - 1) {
                return Err(DgError::DegreeMismatch { what: format!("Δ({})", a.label(i)) });
            }
        }
        for (&(x, y), xy) in sorted(&a.mult) {
            let mut rhs = b.compose(&self.values[x], &self.g.images[y]).ok_or_else(|| DgError::Unknown("product outside the window".into()))?;
            let right = b.compose(&self.f.images[x], &self.values[y]).ok_or_else(|| DgError::Unknown("product outside the window".into()))?;
            elem_add(&mut rhs, &right, &S::sign_pow(a.basis[x].degree));
            if self.apply(xy) != rhs {
                return Err(DgError::Leibniz { left: a.label(x).into(), right: a.label(y).into() });
            }
        }
        Ok(())
    }
}

fn sorted<K: Ord, V>(m: &HashMap<K, V>) -> Vec<(&K, &V)> {
    let mut v: Vec<_> = m.iter().collect();
    v.sort_by(|a, b| a.0.cmp(b.0));
    v
}

/// Solves for an `(f, g)`-derivation homotopy between maps of finite
/// algebras as one linear system in the matrix entries of `Δ`.
pub fn solve_concrete_derivation<S: Scalar>(f: &BasisMap<S>, g: &BasisMap<S>) -> Option<ConcreteDerivation<S>> {
    let (a, b) = (&f.source, &f.target);
    let mut offset = Vec::with_capacity(a.len());
    let mut total = 0;
    for e in &a.basis {
        offset.push(total);
        total += b.dim(0, 0, e.degree - 1);
    }
    let var_elem = |i: usize, k: usize| -> Elem<S> { unit(b.block(0, 0, a.basis[i].degree - 1)[k]) };
    let mut rows: Vec<Vec<S>> = Vec::new();
    let mut rhs: Vec<S> = Vec::new();
    let mut push = |constant: &Elem<S>, columns: &[(usize, Elem<S>)], n: i64| {
        let dim = b.dim(0, 0, n);
        let c = b.coords(constant, 0, 0, n);
        let mut block = vec![vec![S::zero(); total]; dim];
        for (col, e) in columns {
            for (r, v) in b.coords(e, 0, 0, n).into_iter().enumerate() {
                block[r][*col] = block[r][*col].clone() + v;
            }
        }
        for r in 0..dim {
            rows.push(block[r].clone());
            rhs.push(c[r].clone());
        }
    };
    let columns_of = |i: usize, coeff: &S, wrap: &dyn Fn(&Elem<S>) -> Elem<S>| -> Vec<(usize, Elem<S>)> {
        (0..b.dim(0, 0, a.basis[i].degree - 1)).map(|k| (offset[i] + k, elem_scale(&wrap(&var_elem(i, k)), coeff))).collect()
    };
    for i in 0..a.len() {
        let n = a.basis[i].degree;
        if n + 1 > a.hi && !a.supported {
            continue;
        }
        let mut cols = columns_of(i, &S::one(), &|e| b.d(e));
        for (&j, c) in &a.diff[i] {
            cols.extend(columns_of(j, c, &|e| e.clone()));
        }
        push(&elem_sub(&f.images[i], &g.images[i]), &cols, n);
    }
    for (&(x, y), xy) in sorted(&a.mult) {
        let n = a.basis[x].degree + a.basis[y].degree - 1;
        let mut cols: Vec<(usize, Elem<S>)> = Vec::new();
        for (&k, c) in xy {
            cols.extend(columns_of(k, c, &|e| e.clone()));
        }
        let gy = g.images[y].clone();
        cols.extend(columns_of(x, &-S::one(), &|e| b.compose(e, &gy).unwrap_or_default()));
        let fx = f.images[x].clone();
        cols.extend(columns_of(y, &-S::sign_pow(a.basis[x].degree), &|e| b.compose(&fx, e).unwrap_or_default()));
        push(&Elem::new(), &cols, n);
    }
    let values_from = |v: &[S]| -> Vec<Elem<S>> {
        (0..a.len()).map(|i| b.from_coords(0, 0, a.basis[i].degree - 1, &v[offset[i]..offset[i] + b.dim(0, 0, a.basis[i].degree - 1)])).collect()
    };
    let v = if rows.is_empty() { vec![S::zero(); total] } else { Matrix::from_row_vecs(total, &rows).solve(&rhs)? };
    Some(ConcreteDerivation { f: f.clone(), g: g.clone(), values: values_from(&v) })
}

/// `B ∗ D(t)` with `|t| = 0` for a finite `B`, and the two evaluations
/// `p_i: B ∗ D(t) → B` sending `t` to `i`.
#[derive(Clone, Debug)]
pub struct FreePathObject<S> {
    pub free: Arc<Presentation<S>>,
    /// Images in `B` of the generators coming from `B`.
    pub base_images: Vec<Elem<S>>,
    pub p0: FreeMap<S>,
    pub p1: FreeMap<S>,
}

pub fn free_path_object<S: Scalar>(b: &Arc<ConcreteDgAlg<S>>) -> FreePathObject<S> {
    let (pb, images) = as_presentation(b);
    let free = Arc::new(free_product(&pb, &disc_named("t", "dt", 0)));
    let at = |value: Elem<S>| {
        let mut v = images.clone();
        v.push(value);
        v.push(Elem::new());
        FreeMap::new(free.clone(), b.clone(), vec![0], v)
    };
    FreePathObject { p0: at(Elem::new()), p1: at(b.identity[0].clone()), free, base_images: images }
}

/// The map `φ: B ∗ D(t) → Γ(B)`: the diagonal on `B` and `t ↦ (0, 0, 1)`.
#[derive(Clone, Debug)]
pub struct PathComparison<S> {
    pub path: FreePathObject<S>,
    pub phi: FreeMap<S>,
}

pub fn compare_path_objects<S: Scalar>(c: &Cocylinder<S>) -> PathComparison<S> {
    let path = free_path_object(&c.base);
    let mut phi_images: Vec<Elem<S>> = path.base_images.iter().map(|e| c.diag.apply(e)).collect();
    let e1 = c.second_unit();
    phi_images.push(e1.clone());
    phi_images.push(c.gamma.d(&e1));
    PathComparison { phi: FreeMap::new(path.free.clone(), c.gamma.clone(), vec![0], phi_images), path }
}

impl<S: Scalar> PathComparison<S> {
    /// Checks `π_i ∘ φ = p_i` on every normal word of `B ∗ D(t)` of length at
    /// most `len`, returning how many words were compared.
    pub fn check_words(&self, c: &Cocylinder<S>, len: u32) -> Result<usize, DgError> {
        let free = &self.path.free;
        let rules = free.rules(len + 2);
        let (words, _) = free.normal_words(&rules, i64::MIN / 4, i64::MAX / 4, len);
        for w in &words {
            let via = self.phi.eval_path(w).ok_or_else(|| DgError::Unknown("φ leaves the window".into()))?;
            for (pi, p) in [(&c.pi0, &self.path.p0), (&c.pi1, &self.path.p1)] {
                let direct = p.eval_path(w).ok_or_else(|| DgError::Unknown("p leaves the window".into()))?;
                if pi.apply(&via) != direct {
                    return Err(DgError::Unknown(format!("π∘φ and p differ on {}", free.quiver.render_path(w))));
                }
            }
        }
        Ok(words.len())
    }
}
