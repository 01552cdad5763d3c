use super::poly::Path;
use crate::complexes::Complex;
use crate::linalg::Matrix;
use crate::Scalar;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Sparse vector over a global basis.
pub type Elem<S> = BTreeMap<usize, S>;

pub fn elem_add<S: Scalar>(a: &mut Elem<S>, b: &Elem<S>, k: &S) {
    for (i, c) in b {
        let v = a.get(i).cloned().unwrap_or_else(S::zero) + c.clone() * k.clone();
        if v.is_negligible() {
            a.remove(i);
        } else {
            a.insert(*i, v);
        }
    }
}

pub fn elem_sub<S: Scalar>(a: &Elem<S>, b: &Elem<S>) -> Elem<S> {
    let mut out = a.clone();
    elem_add(&mut out, b, &-S::one());
    out
}

pub fn elem_scale<S: Scalar>(a: &Elem<S>, k: &S) -> Elem<S> {
    let mut out = Elem::new();
    elem_add(&mut out, a, k);
    out
}

pub fn unit<S: Scalar>(i: usize) -> Elem<S> {
    let mut e = Elem::new();
    e.insert(i, S::one());
    e
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub src: usize,
    pub tgt: usize,
    pub degree: i64,
    pub weight: u32,
    pub label: String,
    /// The normal word this element stands for, when built from a presentation.
    pub path: Option<Path>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DgError {
    DegreeMismatch { what: String },
    SquareNonzero { element: String },
    Leibniz { left: String, right: String },
    Associativity { elements: [String; 3] },
    Identity { element: String },
    NotClosed { element: String },
    NotMultiplicative { left: String, right: String },
    NotChainMap { element: String },
    Relation { index: usize },
    Unknown(String),
}

impl fmt::Display for DgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DgError::DegreeMismatch { what } => write!(f, "degree mismatch: {what}"),
            DgError::SquareNonzero { element } => write!(f, "d² ≠ 0 on {element}"),
            DgError::Leibniz { left, right } => write!(f, "Leibniz rule fails on ({left}, {right})"),
            DgError::Associativity { elements } => write!(f, "associativity fails on {elements:?}"),
            DgError::Identity { element } => write!(f, "identity law fails on {element}"),
            DgError::NotClosed { element } => write!(f, "{element} is not closed"),
            DgError::NotMultiplicative { left, right } => write!(f, "map does not preserve the product of ({left}, {right})"),
            DgError::NotChainMap { element } => write!(f, "map does not commute with d on {element}"),
            DgError::Relation { index } => write!(f, "relation {index} is not sent to zero"),
            DgError::Unknown(s) => write!(f, "{s}"),
        }
    }
}

impl std::error::Error for DgError {}

/// Windowed data of a dg category: a basis of each `Hom(x, y)^n` for `n` in
/// `lo..=hi`, the differential, and composition on basis pairs.
///
/// Products are stored only where they are known: the pair's weights sum to
/// at most `cap` and the degree stays in the window. A missing entry is
/// unknown unless `supported`, in which case all pieces outside the window
/// vanish and out-of-window products are zero.
#[derive(Clone, Debug)]
pub struct ConcreteDgCat<S> {
    pub objects: Vec<String>,
    pub lo: i64,
    pub hi: i64,
    pub cap: Option<u32>,
    pub supported: bool,
    pub basis: Vec<BasisElem>,
    pub diff: Vec<Elem<S>>,
    pub mult: HashMap<(usize, usize), Elem<S>>,
    pub identity: Vec<Elem<S>>,
    blocks: BTreeMap<(usize, usize, i64), Vec<usize>>,
    pos: Vec<usize>,
}

/// One-object case.
pub type ConcreteDgAlg<S> = ConcreteDgCat<S>;

impl<S: Scalar> ConcreteDgCat<S> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        objects: Vec<String>,
        lo: i64,
        hi: i64,
        cap: Option<u32>,
        supported: bool,
        basis: Vec<BasisElem>,
        diff: Vec<Elem<S>>,
        mult: HashMap<(usize, usize), Elem<S>>,
        identity: Vec<Elem<S>>,
    ) -> Self {
        let mut blocks: BTreeMap<(usize, usize, i64), Vec<usize>> = BTreeMap::new();
        let mut pos = vec![0; basis.len()];
        for (i, b) in basis.iter().enumerate() {
            let v = blocks.entry((b.src, b.tgt, b.degree)).or_default();
            pos[i] = v.len();
            v.push(i);
        }
        ConcreteDgCat { objects, lo, hi, cap, supported, basis, diff, mult, identity, blocks, pos }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn block(&self, x: usize, y: usize, n: i64) -> &[usize] {
        self.blocks.get(&(x, y, n)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn dim(&self, x: usize, y: usize, n: i64) -> usize {
        self.block(x, y, n).len()
    }

    pub fn position(&self, i: usize) -> usize {
        self.pos[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn render(&self, e: &Elem<S>) -> String {
        if e.is_empty() {
            return "0".into();
        }
        e.iter()
            .map(|(i, c)| if c.is_one() { self.basis[*i].label.clone() } else { format!("{}*{}", crate::scalar::render(c), self.basis[*i].label) })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn degree_of(&self, e: &Elem<S>) -> Option<i64> {
        let mut it = e.keys().map(|&i| self.basis[i].degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Coordinates of `e` in the block `(x, y, n)`; components elsewhere are ignored.
    pub fn coords(&self, e: &Elem<S>, x: usize, y: usize, n: i64) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim(x, y, n)];
        for (&i, c) in e {
            let b = &self.basis[i];
            if (b.src, b.tgt, b.degree) == (x, y, n) {
                v[self.pos[i]] = c.clone();
            }
        }
        v
    }

    pub fn from_coords(&self, x: usize, y: usize, n: i64, v: &[S]) -> Elem<S> {
        let mut e = Elem::new();
        for (k, &i) in self.block(x, y, n).iter().enumerate() {
            if !v[k].is_negligible() {
                e.insert(i, v[k].clone());
            }
        }
        e
    }

    pub fn d(&self, e: &Elem<S>) -> Elem<S> {
        let mut out = Elem::new();
        for (&i, c) in e {
            elem_add(&mut out, &self.diff[i], c);
        }
        out
    }

    /// Product of basis elements `a ∘ b`; `None` when unknown.
    pub fn compose_basis(&self, a: usize, b: usize) -> Option<Elem<S>> {
        let (x, y) = (&self.basis[a], &self.basis[b]);
        if x.src != y.tgt {
            return Some(Elem::new());
        }
        if let Some(v) = self.mult.get(&(a, b)) {
            return Some(v.clone());
        }
        let n = x.degree + y.degree;
        if self.supported && (n < self.lo || n > self.hi) {
            return Some(Elem::new());
        }
        None
    }

    pub fn compose(&self, a: &Elem<S>, b: &Elem<S>) -> Option<Elem<S>> {
        let mut out = Elem::new();
        for (&i, c) in a {
            for (&j, k) in b {
                let p = self.compose_basis(i, j)?;
                elem_add(&mut out, &p, &(c.clone() * k.clone()));
            }
        }
        Some(out)
    }

    pub fn hom_complex(&self, x: usize, y: usize) -> Complex<S> {
        self.hom_complex_on(x, y, self.lo, self.hi)
    }

    /// `Hom(x, y)` on degrees `lo..=hi`, zero outside the stored window.
    pub fn hom_complex_on(&self, x: usize, y: usize, lo: i64, hi: i64) -> Complex<S> {
        let dims: Vec<usize> = (lo..=hi).map(|n| self.dim(x, y, n)).collect();
        let mut d = Vec::new();
        for n in lo..hi {
            let cols: Vec<Vec<S>> = self.block(x, y, n).iter().map(|&i| self.coords(&self.diff[i], x, y, n + 1)).collect();
            d.push(Matrix::from_columns(self.dim(x, y, n + 1), &cols));
        }
        Complex::new(lo, dims, d).expect("windowed Hom is a complex")
    }

    /// `d²`, Leibniz, associativity and identity laws wherever every term is known.
    pub fn validate(&self) -> Result<(), DgError> {
        for i in 0..self.len() {
            if !self.d(&self.diff[i]).is_empty() {
                return Err(DgError::SquareNonzero { element: self.label(i).into() });
            }
            for &j in self.diff[i].keys() {
                if self.basis[j].degree != self.basis[i].degree + 1 || (self.basis[j].src, self.basis[j].tgt) != (self.basis[i].src, self.basis[i].tgt) {
                    return Err(DgError::DegreeMismatch { what: format!("d({})", self.label(i)) });
                }
            }
        }
        for (x, id) in self.identity.iter().enumerate() {
            if !self.d(id).is_empty() {
                return Err(DgError::NotClosed { element: format!("identity of {}", self.objects[x]) });
            }
        }
        for a in 0..self.len() {
            let ba = &self.basis[a];
            if let Some(l) = self.compose(&self.identity[ba.tgt], &unit(a)) {
                if l != unit(a) {
                    return Err(DgError::Identity { element: self.label(a).into() });
                }
            }
            if let Some(r) = self.compose(&unit(a), &self.identity[ba.src]) {
                if r != unit(a) {
                    return Err(DgError::Identity { element: self.label(a).into() });
                }
            }
        }
        let mut keys: Vec<&(usize, usize)> = self.mult.keys().collect();
        keys.sort();
        for &&(a, b) in &keys {
            let ab = &self.mult[&(a, b)];
            if self.basis[a].degree + 1 > self.hi && !self.supported || self.basis[b].degree + 1 > self.hi && !self.supported {
                continue;
            }
            let lhs = self.d(ab);
            let left = self.compose(&self.diff[a], &unit(b));
            let right = self.compose(&unit(a), &self.diff[b]);
            if let (Some(l), Some(r)) = (left, right) {
                let mut rhs = l;
                elem_add(&mut rhs, &r, &S::sign_pow(self.basis[a].degree));
                let top = self.basis[a].degree + self.basis[b].degree + 1;
                if top <= self.hi && lhs != rhs {
                    return Err(DgError::Leibniz { left: self.label(a).into(), right: self.label(b).into() });
                }
            }
        }
        for &&(a, b) in &keys {
            let ab = &self.mult[&(a, b)];
            for c in self.block_all_into(self.basis[b].src) {
                let (Some(bc), Some(ab_c)) = (self.compose_basis(b, c), self.compose(ab, &unit(c))) else { continue };
                if let Some(a_bc) = self.compose(&unit(a), &bc) {
                    if a_bc != ab_c {
                        return Err(DgError::Associativity { elements: [self.label(a).into(), self.label(b).into(), self.label(c).into()] });
                    }
                }
            }
        }
        Ok(())
    }

    /// All basis elements with target `x`.
    pub fn block_all_into(&self, x: usize) -> Vec<usize> {
        self.blocks.iter().filter(|((_, t, _), _)| *t == x).flat_map(|(_, v)| v.iter().copied()).collect()
    }

    /// Cycles of `Hom(x, y)^n` as elements.
    pub fn cycles(&self, x: usize, y: usize, n: i64) -> Vec<Elem<S>> {
        self.hom_complex(x, y).cycles(n).iter().map(|v| self.from_coords(x, y, n, v)).collect()
    }

    /// Solves `d(z) = e` for `z` of degree one less, if possible.
    pub fn bound(&self, e: &Elem<S>, x: usize, y: usize, n: i64) -> Option<Elem<S>> {
        let c = self.hom_complex(x, y);
        let v = self.coords(e, x, y, n);
        let m = c.diff(n - 1);
        m.solve(&v).map(|z| self.from_coords(x, y, n - 1, &z))
    }
}
