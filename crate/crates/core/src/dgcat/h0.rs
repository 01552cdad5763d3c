//! Closed degree-zero morphisms up to homotopy: equivalence witnesses,
//! contractions and the linear category `H⁰`.

use super::linear::{small_combinations, combine, unknown_product, System};
use crate::complexes::Complex;
use crate::dg::concrete::{elem_sub, unit};
use crate::dg::{ConcreteDgCat, DgError, Elem};
use crate::linalg::{span_coefficients, Matrix};
use crate::Scalar;
use std::collections::BTreeMap;
use std::sync::Arc;

/// `f: x → y` with inverse `g` up to homotopy: `d h_x = g f − 1`,
/// `d h_y = f g − 1` and `d r = h_y f − f h_x`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomotopyEquivWitness<S> {
    pub x: usize,
    pub y: usize,
    pub f: Elem<S>,
    pub g: Elem<S>,
    pub h_x: Elem<S>,
    pub h_y: Elem<S>,
    pub r: Elem<S>,
}

fn compose<S: Scalar>(c: &ConcreteDgCat<S>, a: &Elem<S>, b: &Elem<S>) -> Result<Elem<S>, DgError> {
    c.compose(a, b).ok_or_else(unknown_product)
}

fn expect_equal<S: Scalar>(lhs: Elem<S>, rhs: Elem<S>, what: &str) -> Result<(), DgError> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(DgError::Unknown(format!("{what} fails")))
    }
}

impl<S: Scalar> HomotopyEquivWitness<S> {
    pub fn verify(&self, c: &ConcreteDgCat<S>) -> Result<(), DgError> {
        for (e, n, what) in [(&self.f, 0, "f"), (&self.g, 0, "g"), (&self.h_x, -1, "h_x"), (&self.h_y, -1, "h_y"), (&self.r, -2, "r")] {
            if c.degree_of(e).is_some_and(|d| d != n) {
                return Err(DgError::DegreeMismatch { what: what.into() });
            }
        }
        if !c.d(&self.f).is_empty() || !c.d(&self.g).is_empty() {
            return Err(DgError::NotClosed { element: "f or g".into() });
        }
        let (ix, iy) = (&c.identity[self.x], &c.identity[self.y]);
        expect_equal(c.d(&self.h_x), elem_sub(&compose(c, &self.g, &self.f)?, ix), "d h_x = g f - 1")?;
        expect_equal(c.d(&self.h_y), elem_sub(&compose(c, &self.f, &self.g)?, iy), "d h_y = f g - 1")?;
        let rhs = elem_sub(&compose(c, &self.h_y, &self.f)?, &compose(c, &self.f, &self.h_x)?);
        expect_equal(c.d(&self.r), rhs, "d r = h_y f - f h_x")
    }
}

/// Solves jointly for `(g, h_x, h_y, r)`; `None` when `f` is not a homotopy
/// equivalence. Errors when `f` is not closed or a needed product is unknown.
pub fn homotopy_equivalence<S: Scalar>(c: &ConcreteDgCat<S>, x: usize, y: usize, f: &Elem<S>) -> Result<Option<HomotopyEquivWitness<S>>, DgError> {
    if !c.d(f).is_empty() {
        return Err(DgError::NotClosed { element: c.render(f) });
    }
    let mut sys = System::new(c, vec![(y, x, 0), (x, x, -1), (y, y, -1), (x, y, -2)]);
    let d = |i: usize| Some(c.d(&unit(i)));
    let neg_d = |i: usize| Some(crate::dg::concrete::elem_scale(&c.d(&unit(i)), &-S::one()));
    let g_f = |i: usize| c.compose(&unit(i), f);
    let f_g = |i: usize| c.compose(f, &unit(i));
    let h_f = |i: usize| c.compose(&unit(i), f);
    let minus_f_h = |i: usize| c.compose(f, &unit(i)).map(|e| crate::dg::concrete::elem_scale(&e, &-S::one()));
    sys.constrain(c, (y, x, 1), &[(0, &d)], &Elem::new())?;
    sys.constrain(c, (x, x, 0), &[(0, &g_f), (1, &neg_d)], &c.identity[x])?;
    sys.constrain(c, (y, y, 0), &[(0, &f_g), (2, &neg_d)], &c.identity[y])?;
    sys.constrain(c, (x, y, -1), &[(2, &h_f), (1, &minus_f_h), (3, &neg_d)], &Elem::new())?;
    Ok(sys.solve().ok().map(|sol| {
        let v = sys.values(&sol.particular);
        HomotopyEquivWitness { x, y, f: f.clone(), g: v[0].clone(), h_x: v[1].clone(), h_y: v[2].clone(), r: v[3].clone() }
    }))
}

/// Completes partial data `(g, h_y)` with `d h_y = f g − 1` to a full witness.
pub fn upgrade_witness<S: Scalar>(
    c: &ConcreteDgCat<S>,
    x: usize,
    y: usize,
    f: &Elem<S>,
    g: &Elem<S>,
    h_y: &Elem<S>,
) -> Result<Option<HomotopyEquivWitness<S>>, DgError> {
    if !c.d(f).is_empty() || !c.d(g).is_empty() {
        return Err(DgError::NotClosed { element: "f or g".into() });
    }
    if c.d(h_y) != elem_sub(&compose(c, f, g)?, &c.identity[y]) {
        return Ok(None);
    }
    let mut sys = System::new(c, vec![(x, x, -1), (x, y, -2)]);
    let d = |i: usize| Some(c.d(&unit(i)));
    let f_h = |i: usize| c.compose(f, &unit(i));
    sys.constrain(c, (x, x, 0), &[(0, &d)], &elem_sub(&compose(c, g, f)?, &c.identity[x]))?;
    sys.constrain(c, (x, y, -1), &[(0, &f_h), (1, &d)], &compose(c, h_y, f)?)?;
    Ok(sys.solve().ok().map(|sol| {
        let v = sys.values(&sol.particular);
        HomotopyEquivWitness { x, y, f: f.clone(), g: g.clone(), h_x: v[0].clone(), h_y: h_y.clone(), r: v[1].clone() }
    }))
}

/// `d c = Id_x`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractionWitness<S> {
    pub object: usize,
    pub c: Elem<S>,
}

impl<S: Scalar> ContractionWitness<S> {
    pub fn verify(&self, cat: &ConcreteDgCat<S>) -> bool {
        cat.d(&self.c) == cat.identity[self.object]
    }
}

pub fn contraction<S: Scalar>(cat: &ConcreteDgCat<S>, x: usize) -> Option<ContractionWitness<S>> {
    cat.bound(&cat.identity[x], x, x, 0).map(|c| ContractionWitness { object: x, c })
}

struct H0Hom<S> {
    reps: Vec<Vec<S>>,
    boundaries: Vec<Vec<S>>,
    complex: Complex<S>,
}

/// `H⁰` of a concrete dg category: classes of closed degree-zero morphisms.
pub struct H0Category<S> {
    pub cat: Arc<ConcreteDgCat<S>>,
    homs: BTreeMap<(usize, usize), H0Hom<S>>,
}

impl<S: Scalar> H0Category<S> {
    pub fn new(cat: &Arc<ConcreteDgCat<S>>) -> Self {
        let mut homs = BTreeMap::new();
        for x in 0..cat.num_objects() {
            for y in 0..cat.num_objects() {
                let complex = cat.hom_complex_on(x, y, -1, 1);
                let h = complex.cohomology(0);
                homs.insert((x, y), H0Hom { reps: h.representatives, boundaries: complex.boundaries(0), complex });
            }
        }
        H0Category { cat: cat.clone(), homs }
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.homs[&(x, y)].reps.len()
    }

    pub fn representatives(&self, x: usize, y: usize) -> Vec<Elem<S>> {
        self.homs[&(x, y)].reps.iter().map(|v| self.cat.from_coords(x, y, 0, v)).collect()
    }

    /// Coordinates of the class of `e` in the representative basis; `None`
    /// when `e` is not closed.
    pub fn class_of(&self, x: usize, y: usize, e: &Elem<S>) -> Option<Vec<S>> {
        let h = &self.homs[&(x, y)];
        let v = self.cat.coords(e, x, y, 0);
        if h.complex.diff(0).mul_vec(&v).iter().any(|c| !c.is_negligible()) {
            return None;
        }
        let k = h.reps.len();
        let span: Vec<Vec<S>> = h.reps.iter().chain(h.boundaries.iter()).cloned().collect();
        span_coefficients(v.len(), &span, &v).map(|c| c[..k].to_vec())
    }

    pub fn homotopic(&self, x: usize, y: usize, a: &Elem<S>, b: &Elem<S>) -> Option<bool> {
        self.class_of(x, y, &elem_sub(a, b)).map(|c| c.iter().all(|v| v.is_negligible()))
    }

    /// A representative of the inverse class, if the class of `e` is invertible.
    pub fn inverse(&self, x: usize, y: usize, e: &Elem<S>) -> Result<Option<Elem<S>>, DgError> {
        let c = &self.cat;
        let back = self.representatives(y, x);
        let (nx, ny) = (self.dim(x, x), self.dim(y, y));
        let mut cols = Vec::new();
        for b in &back {
            let mut col = self.class_of(x, x, &compose(c, b, e)?).ok_or_else(|| DgError::NotClosed { element: c.render(e) })?;
            col.extend(self.class_of(y, y, &compose(c, e, b)?).ok_or_else(|| DgError::NotClosed { element: c.render(e) })?);
            cols.push(col);
        }
        let mut rhs = self.class_of(x, x, &c.identity[x]).expect("identities are closed");
        rhs.extend(self.class_of(y, y, &c.identity[y]).expect("identities are closed"));
        let m = Matrix::from_columns(nx + ny, &cols);
        Ok(m.solve(&rhs).map(|v| combine(&back, &v)))
    }

    /// Representatives `Σ c_k [z_k]` with small integer coefficients whose
    /// classes are invertible.
    pub fn equivalence_candidates(&self, x: usize, y: usize) -> Result<Vec<Elem<S>>, DgError> {
        let reps = self.representatives(x, y);
        let mut out = Vec::new();
        if reps.is_empty() {
            if self.inverse(x, y, &Elem::new())?.is_some() {
                out.push(Elem::new());
            }
            return Ok(out);
        }
        for coeffs in small_combinations::<S>(reps.len(), 6) {
            let e = combine(&reps, &coeffs);
            if self.inverse(x, y, &e)?.is_some() {
                out.push(e);
            }
        }
        Ok(out)
    }

    /// Some homotopy equivalence `x → y` among the candidates.
    pub fn isomorphism(&self, x: usize, y: usize) -> Result<Option<Elem<S>>, DgError> {
        if x == y {
            return Ok(Some(self.cat.identity[x].clone()));
        }
        Ok(self.equivalence_candidates(x, y)?.into_iter().next())
    }
}
