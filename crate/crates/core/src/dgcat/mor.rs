//! The dg category `mor(ℬ)` of closed degree-zero morphisms, the path object
//! `𝒫(ℬ)` and the zigzag between endomorphism algebras.

use super::functor::{is_quasi_iso_on_hom, Product};
use super::h0::{homotopy_equivalence, H0Category};
use super::linear::{combine, small_combinations, unknown_product};
use crate::dg::concrete::{elem_add, elem_scale, unit};
use crate::dg::{BasisElem, BasisMap, ConcreteDgCat, DgError, Elem, NcPoly, Presentation, Quiver};
use crate::Scalar;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Which entry of `(a0, s⁻¹h; a1)` a basis element sits in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Zero,
    Middle,
    One,
}

/// `(X1, X0; f)` with `f: X1 → X0` closed of degree zero.
#[derive(Clone, Debug, PartialEq)]
pub struct MorObject<S> {
    pub x1: usize,
    pub x0: usize,
    pub f: Elem<S>,
}

/// The full subcategory of `mor(ℬ)` on a finite list of objects. A morphism
/// `(X1, X0; f) → (Y1, Y0; g)` of degree `p` is `(a0, s⁻¹h; a1)` with
/// `a0 ∈ ℬ(X0, Y0)^p`, `h ∈ ℬ(X1, Y0)^{p-1}`, `a1 ∈ ℬ(X1, Y1)^p`.
pub struct MorCategory<S> {
    pub base: Arc<ConcreteDgCat<S>>,
    pub objects: Vec<MorObject<S>>,
    pub cat: Arc<ConcreteDgCat<S>>,
    /// Slot and underlying base element of each basis element.
    pub slots: Vec<(Slot, usize)>,
    index: HashMap<(usize, usize, Slot, usize), usize>,
}

fn slot_blocks<S>(a: &MorObject<S>, b: &MorObject<S>) -> [(Slot, usize, usize); 3] {
    [(Slot::Zero, a.x0, b.x0), (Slot::Middle, a.x1, b.x0), (Slot::One, a.x1, b.x1)]
}

pub fn mor_category<S: Scalar>(base: &Arc<ConcreteDgCat<S>>, objects: Vec<MorObject<S>>) -> Result<MorCategory<S>, DgError> {
    if !base.supported {
        return Err(DgError::Unknown("mor needs a finite base category".into()));
    }
    for o in &objects {
        if !base.d(&o.f).is_empty() {
            return Err(DgError::NotClosed { element: base.render(&o.f) });
        }
        for &i in o.f.keys() {
            let b = &base.basis[i];
            if (b.src, b.tgt, b.degree) != (o.x1, o.x0, 0) {
                return Err(DgError::DegreeMismatch { what: base.render(&o.f) });
            }
        }
    }
    let mut basis = Vec::new();
    let mut slots = Vec::new();
    let mut index = HashMap::new();
    for (oa, a) in objects.iter().enumerate() {
        for (ob, b) in objects.iter().enumerate() {
            for (slot, s, t) in slot_blocks(a, b) {
                for (e, be) in base.basis.iter().enumerate() {
                    if (be.src, be.tgt) != (s, t) {
                        continue;
                    }
                    let (degree, label) = match slot {
                        Slot::Zero => (be.degree, format!("({},0,0)", be.label)),
                        Slot::Middle => (be.degree + 1, format!("(0,s{},0)", be.label)),
                        Slot::One => (be.degree, format!("(0,0,{})", be.label)),
                    };
                    index.insert((oa, ob, slot, e), basis.len());
                    slots.push((slot, e));
                    basis.push(BasisElem { src: oa, tgt: ob, degree, weight: be.weight, label, path: None });
                }
            }
        }
    }
    let lift = |oa: usize, ob: usize, slot: Slot, e: &Elem<S>| -> Elem<S> { e.iter().map(|(&i, c)| (index[&(oa, ob, slot, i)], c.clone())).collect() };
    let comp = |a: &Elem<S>, b: &Elem<S>| base.compose(a, b).expect("finite base");
    let mut diff = Vec::new();
    for (k, b) in basis.iter().enumerate() {
        let (slot, e) = slots[k];
        let (oa, ob) = (b.src, b.tgt);
        let de = base.diff[e].clone();
        let mut out = Elem::new();
        match slot {
            Slot::Zero => {
                elem_add(&mut out, &lift(oa, ob, Slot::Zero, &de), &S::one());
                elem_add(&mut out, &lift(oa, ob, Slot::Middle, &comp(&unit(e), &objects[oa].f)), &S::one());
            }
            Slot::Middle => elem_add(&mut out, &lift(oa, ob, Slot::Middle, &de), &-S::one()),
            Slot::One => {
                elem_add(&mut out, &lift(oa, ob, Slot::Middle, &comp(&objects[ob].f, &unit(e))), &-S::one());
                elem_add(&mut out, &lift(oa, ob, Slot::One, &de), &S::one());
            }
        }
        diff.push(out);
    }
    let (lo, hi) = (base.lo, base.hi + 1);
    let mut by_tgt: Vec<Vec<usize>> = vec![Vec::new(); objects.len()];
    for (k, b) in basis.iter().enumerate() {
        by_tgt[b.tgt].push(k);
    }
    let mut mult = HashMap::new();
    for (q, bq) in basis.iter().enumerate() {
        for &p in &by_tgt[bq.src] {
            let bp = &basis[p];
            let n = bq.degree + bp.degree;
            if n < lo || n > hi {
                continue;
            }
            let ((sq, eq), (sp, ep)) = (slots[q], slots[p]);
            let (oa, oc) = (bp.src, bq.tgt);
            let prod = match (sq, sp) {
                (Slot::Zero, Slot::Zero) => lift(oa, oc, Slot::Zero, &comp(&unit(eq), &unit(ep))),
                (Slot::Zero, Slot::Middle) => lift(oa, oc, Slot::Middle, &elem_scale(&comp(&unit(eq), &unit(ep)), &S::sign_pow(bq.degree))),
                (Slot::Middle, Slot::One) => lift(oa, oc, Slot::Middle, &comp(&unit(eq), &unit(ep))),
                (Slot::One, Slot::One) => lift(oa, oc, Slot::One, &comp(&unit(eq), &unit(ep))),
                _ => Elem::new(),
            };
            mult.insert((q, p), prod);
        }
    }
    let identity = (0..objects.len())
        .map(|o| {
            let mut id = lift(o, o, Slot::Zero, &base.identity[objects[o].x0]);
            elem_add(&mut id, &lift(o, o, Slot::One, &base.identity[objects[o].x1]), &S::one());
            id
        })
        .collect();
    let names = objects.iter().map(|o| format!("({},{};{})", base.objects[o.x1], base.objects[o.x0], base.render(&o.f))).collect();
    let cat = ConcreteDgCat::new(names, lo, hi, None, true, basis, diff, mult, identity);
    Ok(MorCategory { base: base.clone(), objects, cat: Arc::new(cat), slots, index })
}

impl<S: Scalar> MorCategory<S> {
    /// `(a0, s⁻¹h; a1)` as a morphism `oa → ob`.
    pub fn element(&self, oa: usize, ob: usize, a0: &Elem<S>, h: &Elem<S>, a1: &Elem<S>) -> Elem<S> {
        let mut out = Elem::new();
        for (slot, e) in [(Slot::Zero, a0), (Slot::Middle, h), (Slot::One, a1)] {
            for (&i, c) in e {
                out.insert(self.index[&(oa, ob, slot, i)], c.clone());
            }
        }
        out
    }

    /// The entries `(a0, h, a1)` in the base.
    pub fn parts(&self, e: &Elem<S>) -> (Elem<S>, Elem<S>, Elem<S>) {
        let mut out = (Elem::new(), Elem::new(), Elem::new());
        for (&k, c) in e {
            let (slot, i) = self.slots[k];
            let part = match slot {
                Slot::Zero => &mut out.0,
                Slot::Middle => &mut out.1,
                Slot::One => &mut out.2,
            };
            part.insert(i, c.clone());
        }
        out
    }

    pub fn object_index(&self, o: &MorObject<S>) -> Option<usize> {
        self.objects.iter().position(|p| p == o)
    }

    fn projection(&self, slot: Slot) -> BasisMap<S> {
        let obj = self.objects.iter().map(|o| if slot == Slot::Zero { o.x0 } else { o.x1 }).collect();
        let images = self.slots.iter().map(|&(s, i)| if s == slot { unit(i) } else { Elem::new() }).collect();
        BasisMap { source: self.cat.clone(), target: self.base.clone(), obj, images }
    }

    /// `π0: (X1, X0; f) ↦ X0`.
    pub fn pi0(&self) -> BasisMap<S> {
        self.projection(Slot::Zero)
    }

    /// `π1: (X1, X0; f) ↦ X1`.
    pub fn pi1(&self) -> BasisMap<S> {
        self.projection(Slot::One)
    }

    /// `(π0, π1)` into `ℬ × ℬ`.
    pub fn pi(&self, product: &Product<S>) -> BasisMap<S> {
        let obj: Vec<usize> = self.objects.iter().map(|o| product.object(o.x0, o.x1)).collect();
        let images = self
            .slots
            .iter()
            .enumerate()
            .map(|(k, &(s, i))| {
                let b = &self.cat.basis[k];
                match s {
                    Slot::Zero => product.left(obj[b.src], obj[b.tgt], &unit(i)),
                    Slot::One => product.right(obj[b.src], obj[b.tgt], &unit(i)),
                    Slot::Middle => Elem::new(),
                }
            })
            .collect();
        BasisMap { source: self.cat.clone(), target: product.cat.clone(), obj, images }
    }

    /// `X ↦ (X, X; Id_X)`, when every such object is in the list.
    pub fn diag(&self) -> Option<BasisMap<S>> {
        let b = &self.base;
        let obj = (0..b.num_objects())
            .map(|x| self.object_index(&MorObject { x1: x, x0: x, f: b.identity[x].clone() }))
            .collect::<Option<Vec<_>>>()?;
        let images = b
            .basis
            .iter()
            .enumerate()
            .map(|(i, be)| {
                let (oa, ob) = (obj[be.src], obj[be.tgt]);
                self.element(oa, ob, &unit(i), &Elem::new(), &unit(i))
            })
            .collect();
        Some(BasisMap { source: b.clone(), target: self.cat.clone(), obj, images })
    }
}

/// The identities, then for each ordered pair the zero morphism and a basis
/// of closed degree-zero morphisms.
pub fn default_mor_objects<S: Scalar>(b: &ConcreteDgCat<S>) -> Vec<MorObject<S>> {
    let mut out: Vec<MorObject<S>> = (0..b.num_objects()).map(|x| MorObject { x1: x, x0: x, f: b.identity[x].clone() }).collect();
    for x1 in 0..b.num_objects() {
        for x0 in 0..b.num_objects() {
            let mut fs = vec![Elem::new()];
            fs.extend(b.hom_complex_on(x1, x0, -1, 1).cycles(0).iter().map(|v| b.from_coords(x1, x0, 0, v)));
            for f in fs {
                let o = MorObject { x1, x0, f };
                if !out.contains(&o) {
                    out.push(o);
                }
            }
        }
    }
    out
}

/// Agreement of "homotopy equivalence in `mor(ℬ)`" with "both diagonal
/// entries are homotopy equivalences in `ℬ`" over enumerated closed morphisms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EquivalenceCriterion {
    pub checked: usize,
    pub equivalences: usize,
    pub disagreements: Vec<(usize, usize)>,
}

pub fn equivalence_criterion<S: Scalar>(m: &MorCategory<S>, per_pair: usize) -> Result<EquivalenceCriterion, DgError> {
    let h0 = H0Category::new(&m.cat);
    let hb = H0Category::new(&m.base);
    let mut out = EquivalenceCriterion::default();
    for oa in 0..m.objects.len() {
        for ob in 0..m.objects.len() {
            let z: Vec<Elem<S>> = m.cat.hom_complex_on(oa, ob, -1, 1).cycles(0).iter().map(|v| m.cat.from_coords(oa, ob, 0, v)).collect();
            let mut cands = vec![Elem::new()];
            cands.extend(small_combinations::<S>(z.len(), 3).iter().map(|c| combine(&z, c)));
            for phi in cands.into_iter().take(per_pair) {
                let (a0, _, a1) = m.parts(&phi);
                let (x, y) = (&m.objects[oa], &m.objects[ob]);
                let lhs = h0.inverse(oa, ob, &phi)?.is_some();
                let rhs = hb.inverse(x.x0, y.x0, &a0)?.is_some() && hb.inverse(x.x1, y.x1, &a1)?.is_some();
                out.checked += 1;
                out.equivalences += lhs as usize;
                if lhs != rhs {
                    out.disagreements.push((oa, ob));
                }
            }
        }
    }
    Ok(out)
}

/// The explicit lift `(a, −a f h; b): (X1, X0; f) → (X1', X0'; a f e)` of a
/// pair of homotopy equivalences `a: X0 → X0'`, `b: X1 → X1'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftCheck {
    pub closed: bool,
    pub projects: bool,
    pub equivalence: bool,
    pub target_in_path: bool,
}

impl LiftCheck {
    pub fn ok(&self) -> bool {
        self.closed && self.projects && self.equivalence && self.target_in_path
    }
}

pub fn isofibration_lift<S: Scalar>(base: &Arc<ConcreteDgCat<S>>, o: &MorObject<S>, x0n: usize, a: &Elem<S>, x1n: usize, b: &Elem<S>) -> Result<Option<LiftCheck>, DgError> {
    let Some(wb) = homotopy_equivalence(base, o.x1, x1n, b)? else { return Ok(None) };
    let comp = |p: &Elem<S>, q: &Elem<S>| base.compose(p, q).ok_or_else(unknown_product);
    let af = comp(a, &o.f)?;
    let target = MorObject { x1: x1n, x0: x0n, f: comp(&af, &wb.g)? };
    let target_in_path = homotopy_equivalence(base, x1n, x0n, &target.f)?.is_some();
    let m = mor_category(base, vec![o.clone(), target])?;
    let lift = m.element(0, 1, a, &elem_scale(&comp(&af, &wb.h_x)?, &-S::one()), b);
    let (p0, _, p1) = m.parts(&lift);
    Ok(Some(LiftCheck {
        closed: m.cat.d(&lift).is_empty(),
        projects: &p0 == a && &p1 == b,
        equivalence: homotopy_equivalence(&m.cat, 0, 1, &lift)?.is_some(),
        target_in_path,
    }))
}

/// `ℬ → 𝒫(ℬ) → ℬ × ℬ` on a finite list of objects of `𝒫(ℬ)`: the diagonal
/// objects, then small-coefficient homotopy equivalences between each pair.
pub struct PathObject<S> {
    pub mor: MorCategory<S>,
    pub product: Product<S>,
    pub diag: BasisMap<S>,
    pub pi: BasisMap<S>,
}

pub fn path_object<S: Scalar>(base: &Arc<ConcreteDgCat<S>>, per_pair: usize) -> Result<PathObject<S>, DgError> {
    let h0 = H0Category::new(base);
    let n = base.num_objects();
    let mut objects: Vec<MorObject<S>> = (0..n).map(|x| MorObject { x1: x, x0: x, f: base.identity[x].clone() }).collect();
    for x1 in 0..n {
        for x0 in 0..n {
            for f in h0.equivalence_candidates(x1, x0)?.into_iter().take(per_pair) {
                let o = MorObject { x1, x0, f };
                if !objects.contains(&o) {
                    objects.push(o);
                }
            }
        }
    }
    let mor = mor_category(base, objects)?;
    let product = Product::new(base, base);
    let diag = mor.diag().expect("diagonal objects come first");
    let pi = mor.pi(&product);
    Ok(PathObject { mor, product, diag, pi })
}

/// Outcome of the explicit lifts over all objects of a path object.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IsofibrationReport {
    pub lifts: usize,
    pub failures: usize,
}

impl<S: Scalar> PathObject<S> {
    /// Lifts every pair of small-coefficient homotopy equivalences out of the
    /// two ends of each object.
    pub fn isofibration_report(&self, per_pair: usize) -> Result<IsofibrationReport, DgError> {
        let base = &self.mor.base;
        let h0 = H0Category::new(base);
        let mut out = IsofibrationReport::default();
        for o in &self.mor.objects {
            for x0n in 0..base.num_objects() {
                for x1n in 0..base.num_objects() {
                    let a_s = h0.equivalence_candidates(o.x0, x0n)?;
                    let b_s = h0.equivalence_candidates(o.x1, x1n)?;
                    for a in a_s.iter().take(per_pair) {
                        for b in b_s.iter().take(per_pair) {
                            match isofibration_lift(base, o, x0n, a, x1n, b)? {
                                Some(c) if c.ok() => out.lifts += 1,
                                _ => out.failures += 1,
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(π0, π1) ∘ diag` is the diagonal of `ℬ × ℬ`.
    pub fn factors_diagonal(&self) -> bool {
        let composite = self.diag.then(&self.pi);
        let delta = self.product.diagonal();
        composite.obj == delta.obj && composite.differs_from(&delta).is_none()
    }
}

/// One-object category of endomorphisms of `x`, with the base index of each
/// of its basis elements.
pub fn endomorphism_algebra<S: Scalar>(base: &ConcreteDgCat<S>, x: usize) -> (Arc<ConcreteDgCat<S>>, Vec<usize>) {
    let keep: Vec<usize> = (0..base.len()).filter(|&i| base.basis[i].src == x && base.basis[i].tgt == x).collect();
    let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let remap = |e: &Elem<S>| -> Elem<S> { e.iter().map(|(i, c)| (pos[i], c.clone())).collect() };
    let basis = keep.iter().map(|&i| BasisElem { src: 0, tgt: 0, ..base.basis[i].clone() }).collect();
    let diff = keep.iter().map(|&i| remap(&base.diff[i])).collect();
    let mut mult = HashMap::new();
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate() {
            if let Some(v) = base.mult.get(&(i, j)) {
                mult.insert((a, b), remap(v));
            }
        }
    }
    let alg = ConcreteDgCat::new(vec![base.objects[x].clone()], base.lo, base.hi, base.cap, base.supported, basis, diff, mult, vec![remap(&base.identity[x])]);
    (Arc::new(alg), keep)
}

/// `ℬ(X, X) ← 𝒫((X, Y; θ), (X, Y; θ)) → ℬ(Y, Y)`.
pub struct Zigzag<S> {
    pub middle: Arc<ConcreteDgCat<S>>,
    pub left: BasisMap<S>,
    pub right: BasisMap<S>,
    pub left_quasi_iso: bool,
    pub right_quasi_iso: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZigzagError {
    NotEquivalence,
    Dg(DgError),
}

impl fmt::Display for ZigzagError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZigzagError::NotEquivalence => write!(f, "the given morphism is not a homotopy equivalence"),
            ZigzagError::Dg(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ZigzagError {}

impl From<DgError> for ZigzagError {
    fn from(e: DgError) -> Self {
        ZigzagError::Dg(e)
    }
}

pub fn zigzag_endomorphisms<S: Scalar>(base: &Arc<ConcreteDgCat<S>>, x: usize, y: usize, theta: &Elem<S>) -> Result<Zigzag<S>, ZigzagError> {
    if homotopy_equivalence(base, x, y, theta)?.is_none() {
        return Err(ZigzagError::NotEquivalence);
    }
    let m = mor_category(base, vec![MorObject { x1: x, x0: y, f: theta.clone() }])?;
    let leg = |slot: Slot, obj: usize| -> BasisMap<S> {
        let (alg, keep) = endomorphism_algebra(base, obj);
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let images = m.slots.iter().map(|&(s, i)| if s == slot { unit(pos[&i]) } else { Elem::new() }).collect();
        BasisMap { source: m.cat.clone(), target: alg, obj: vec![0], images }
    };
    let (left, right) = (leg(Slot::One, x), leg(Slot::Zero, y));
    left.check()?;
    right.check()?;
    Ok(Zigzag { left_quasi_iso: is_quasi_iso_on_hom(&left, 0, 0), right_quasi_iso: is_quasi_iso_on_hom(&right, 0, 0), middle: m.cat.clone(), left, right })
}

/// The composite of two morphisms of the kernel ideal of `H⁰(mor ℬ) →
/// mor(H⁰ ℬ)` is the boundary of `(v0 d u0, s⁻¹h'; d v1 u1)` with
/// `h' = e u1 − v0 h − v0 g u1`, checked in a free dg category.
pub fn kernel_square_zero_identity<S: Scalar>() -> bool {
    use super::generator;
    let objects = ["X1", "X0", "Y1", "Y0", "Z1", "Z0"].iter().map(|s| s.to_string()).collect();
    let (x1, x0, y1, y0, z1, z0) = (0, 1, 2, 3, 4, 5);
    let mut gens = vec![generator("f", x1, x0, 0), generator("g", y1, y0, 0), generator("k", z1, z0, 0)];
    for (name, s, t) in [("u0", x0, y0), ("u1", x1, y1), ("v0", y0, z0), ("v1", y1, z1)] {
        gens.push(generator(name, s, t, -1));
        gens.push(generator(&format!("d{name}"), s, t, 0));
    }
    gens.push(generator("h", x1, y0, -1));
    gens.push(generator("e", y1, z0, -1));
    let n = gens.len();
    let mut p: Presentation<S> = Presentation::free(Quiver { objects, gens }, vec![NcPoly::zero(); n]);
    for v in ["u0", "u1", "v0", "v1"] {
        let dv = p.gen(&format!("d{v}"));
        p.set_d(v, dv);
    }
    let w = |names: &[&str]| p.word(names);
    let dh = w(&["du0", "f"]).sub(&w(&["g", "du1"]));
    let de = w(&["dv0", "g"]).sub(&w(&["k", "dv1"]));
    p.set_d("h", dh);
    p.set_d("e", de);
    let w = |names: &[&str]| p.word(names);
    let composite = (w(&["dv0", "du0"]), w(&["dv0", "h"]).add(&w(&["e", "du1"])), w(&["dv1", "du1"]));
    let a0 = w(&["v0", "du0"]);
    let a1 = w(&["dv1", "u1"]);
    let h2 = w(&["e", "u1"]).sub(&w(&["v0", "h"])).sub(&w(&["v0", "g", "u1"]));
    let middle = p.d(&h2).neg().add(&a0.after(&w(&["f"]))).sub(&w(&["k"]).after(&a1));
    let boundary = (p.d(&a0), middle, p.d(&a1));
    composite.0.sub(&boundary.0).is_zero() && composite.1.sub(&boundary.1).is_zero() && composite.2.sub(&boundary.2).is_zero()
}
