//! Bounded cofibrant replacement by attaching sphere, disc and killing cells.

use crate::complexes::{cone, ChainMap, Complex};
use crate::dg::{ConcreteDgAlg, DgError, Elem, FreeMap, NcPoly, Presentation, SemiFreenessWitness};
use crate::linalg::{complement_from, Matrix};
use crate::Scalar;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CellKind {
    /// A closed generator hitting a missing cohomology class.
    Sphere,
    /// A generator and its differential, hitting a missing element.
    Disc,
    /// A generator bounding a cycle whose image is a boundary.
    Kill,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cell<S> {
    pub kind: CellKind,
    pub degree: i64,
    pub weight: u32,
    /// The new generators, the bottom one first.
    pub generators: Vec<usize>,
    /// The image of the bottom generator.
    pub image: Elem<S>,
}

/// The cells of each stage, in order of attachment.
#[derive(Clone, Debug, PartialEq)]
pub struct CellComplexWitness<S> {
    pub stages: Vec<Vec<Cell<S>>>,
}

/// Independent re-check of the produced map on the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplacementCheck {
    pub surjective: bool,
    pub cone_acyclic: bool,
}

#[derive(Clone, Debug)]
pub struct Replacement<S> {
    pub source: Arc<Presentation<S>>,
    pub map: FreeMap<S>,
    pub cells: CellComplexWitness<S>,
    pub semi_free: SemiFreenessWitness,
    /// No defect remained when the search stopped.
    pub complete: bool,
    pub check: ReplacementCheck,
    pub window: (i64, i64),
    pub cap: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReplaceError {
    /// The interior `lo+1..=hi-1` is empty.
    WindowTooSmall { lo: i64, hi: i64 },
    /// `B` does not know the products the map needs.
    Products(String),
    Map(DgError),
}

impl fmt::Display for ReplaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReplaceError::WindowTooSmall { lo, hi } => write!(f, "window {lo}..{hi} has no interior to witness surjectivity and acyclicity"),
            ReplaceError::Products(s) => write!(f, "{s}"),
            ReplaceError::Map(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ReplaceError {}

struct Defect<S> {
    kind: CellKind,
    weight: u32,
    degree: i64,
    /// Coordinates in `B^n` for spheres and discs, in `A^n` for kills.
    vector: Vec<S>,
}

/// Truncation of `A` on `lo−1..=hi+1` and the matrices of `p` there.
struct Snapshot<S> {
    a: Arc<ConcreteDgAlg<S>>,
    ca: Complex<S>,
    cb: Complex<S>,
    p: Vec<Matrix<S>>,
    lo: i64,
}

impl<S: Scalar> Snapshot<S> {
    fn p_at(&self, n: i64) -> &Matrix<S> {
        &self.p[(n - self.lo) as usize]
    }
}

fn snapshot<S: Scalar>(map: &FreeMap<S>, b: &ConcreteDgAlg<S>, lo: i64, hi: i64, cap: u32) -> Result<Snapshot<S>, ReplaceError> {
    let (a, _) = map.source.truncate(lo - 1, hi + 1, cap);
    let a = Arc::new(a);
    let mut p = Vec::new();
    for n in (lo - 1)..=(hi + 1) {
        let mut cols = Vec::new();
        for &i in a.block(0, 0, n) {
            let img = if n < b.lo || n > b.hi {
                Elem::new()
            } else {
                map.eval_path(a.basis[i].path.as_ref().unwrap()).ok_or_else(|| ReplaceError::Products(format!("image of {} needs unknown products", a.label(i))))?
            };
            cols.push(b.coords(&img, 0, 0, n));
        }
        p.push(Matrix::from_columns(b.dim(0, 0, n), &cols));
    }
    Ok(Snapshot { ca: a.hom_complex(0, 0), cb: b.hom_complex_on(0, 0, lo - 1, hi + 1), a, p, lo: lo - 1 })
}

/// Rows of `m` restricted to the columns in `keep`.
fn columns<S: Scalar>(m: &Matrix<S>, keep: &[usize]) -> Matrix<S> {
    let cols: Vec<Vec<S>> = keep.iter().map(|&c| m.column(c)).collect();
    Matrix::from_columns(m.rows(), &cols)
}

fn spread<S: Scalar>(n: usize, keep: &[usize], v: &[S]) -> Vec<S> {
    let mut out = vec![S::zero(); n];
    for (k, &c) in keep.iter().enumerate() {
        out[c] = v[k].clone();
    }
    out
}

/// Cycles of degree `n` supported on the basis positions `keep`.
fn cycles_on<S: Scalar>(c: &Complex<S>, n: i64, keep: &[usize]) -> Vec<Vec<S>> {
    let dim = c.dim(n);
    if keep.is_empty() {
        return Vec::new();
    }
    let d = columns(&c.diff(n), keep);
    if d.rows() == 0 {
        return keep.iter().map(|&k| crate::linalg::unit_vec(dim, k)).collect();
    }
    d.kernel().iter().map(|v| spread(dim, keep, v)).collect()
}

fn positions_by_weight<S: Scalar>(c: &ConcreteDgAlg<S>, n: i64, w: u32) -> Vec<usize> {
    c.block(0, 0, n).iter().enumerate().filter(|(_, &i)| c.basis[i].weight <= w).map(|(k, _)| k).collect()
}

fn defects<S: Scalar>(s: &Snapshot<S>, b: &ConcreteDgAlg<S>, lo: i64, hi: i64, cap: u32) -> Vec<Defect<S>> {
    let bmax = b.basis.iter().map(|e| e.weight).max().unwrap_or(0);
    let mut found: Vec<Defect<S>> = Vec::new();
    let offer = |kind: CellKind, weight: u32, degree: i64, vectors: Vec<Vec<S>>, found: &mut Vec<Defect<S>>| {
        found.extend(vectors.into_iter().map(|vector| Defect { kind, weight, degree, vector }));
    };
    let lightest = |found: Vec<Defect<S>>| -> Vec<Defect<S>> {
        let w = found.iter().map(|d| d.weight).min().unwrap_or(0);
        found.into_iter().filter(|d| d.weight == w).collect()
    };
    for n in (lo + 1)..=(hi - 1) {
        let dim = s.cb.dim(n);
        let hit: Vec<Vec<S>> = s.ca.cycles(n).iter().map(|z| s.p_at(n).mul_vec(z)).collect();
        let base = [s.cb.boundaries(n), hit].concat();
        for w in 0..=bmax {
            let cand = cycles_on(&s.cb, n, &positions_by_weight(b, n, w));
            let new: Vec<Vec<S>> = complement_from(dim, &base, &cand).into_iter().map(|i| cand[i].clone()).collect();
            if !new.is_empty() {
                offer(CellKind::Sphere, w, n, new, &mut found);
                break;
            }
        }
    }
    if !found.is_empty() {
        return lightest(found);
    }
    for n in lo..=hi {
        let dim = s.cb.dim(n);
        let m = s.p_at(n);
        let image: Vec<Vec<S>> = (0..m.cols()).map(|c| m.column(c)).collect();
        for w in 0..=bmax {
            let cand: Vec<Vec<S>> = positions_by_weight(b, n, w).into_iter().map(|k| crate::linalg::unit_vec(dim, k)).collect();
            let new: Vec<Vec<S>> = complement_from(dim, &image, &cand).into_iter().map(|i| cand[i].clone()).collect();
            if !new.is_empty() {
                offer(CellKind::Disc, w, n, new, &mut found);
                break;
            }
        }
    }
    if !found.is_empty() {
        return lightest(found);
    }
    for n in (lo + 2)..=hi {
        let dim = s.ca.dim(n);
        let bounds = s.ca.boundaries(n);
        let db = s.cb.diff(n - 1);
        for w in 1..=cap {
            let z = cycles_on(&s.ca, n, &positions_by_weight(&s.a, n, w));
            if z.is_empty() {
                continue;
            }
            let pz: Vec<Vec<S>> = z.iter().map(|v| s.p_at(n).mul_vec(v)).collect();
            let sys = Matrix::from_columns(s.cb.dim(n), &pz).hstack(&db.neg());
            let cand: Vec<Vec<S>> = if sys.rows() == 0 {
                z.clone()
            } else {
                sys.kernel()
                    .into_iter()
                    .map(|k| {
                        let mut v = vec![S::zero(); dim];
                        for (j, zj) in z.iter().enumerate() {
                            v = crate::linalg::vec_add(&v, &crate::linalg::vec_scale(zj, &k[j]));
                        }
                        v
                    })
                    .filter(|v| !crate::linalg::vec_is_zero(v))
                    .collect()
            };
            let new: Vec<Vec<S>> = complement_from(dim, &bounds, &cand).into_iter().map(|i| cand[i].clone()).collect();
            if !new.is_empty() {
                offer(CellKind::Kill, w, n, new, &mut found);
                break;
            }
        }
    }
    lightest(found)
}

/// Factors `𝕂 → B` as a relative cell complex `𝕂 → A` followed by
/// `p: A → B`, attaching cells in stages until `p` is surjective on
/// `lo..=hi` and its cone is acyclic on `lo+1..=hi−1`, as seen on the
/// truncation of `A` to weight at most `cap`. Each stage attaches the
/// cells of one kind and one weight: spheres before discs before kills,
/// lowest weight first.
pub fn cofibrant_replacement<S: Scalar>(b: &Arc<ConcreteDgAlg<S>>, lo: i64, hi: i64, max_stages: usize, cap: u32) -> Result<Replacement<S>, ReplaceError> {
    if hi - lo < 2 {
        return Err(ReplaceError::WindowTooSmall { lo, hi });
    }
    let mut pres: Presentation<S> = super::ground();
    let mut images: Vec<Elem<S>> = Vec::new();
    let mut stages: Vec<Vec<Cell<S>>> = Vec::new();
    let mut complete = false;
    let mut counter = 0usize;
    loop {
        let map = FreeMap::new(Arc::new(pres.clone()), b.clone(), vec![0], images.clone());
        let snap = snapshot(&map, b, lo, hi, cap)?;
        let found = defects(&snap, b, lo, hi, cap);
        if found.is_empty() {
            complete = true;
        }
        if complete || stages.len() >= max_stages {
            break;
        }
        let mut stage = Vec::new();
        for def in found {
            counter += 1;
            let weight = def.weight.max(1);
            let cell = match def.kind {
                CellKind::Sphere => {
                    let img = b.from_coords(0, 0, def.degree, &def.vector);
                    let g = push_gen(&mut pres, &format!("z{counter}"), def.degree, weight, NcPoly::zero());
                    images.push(img.clone());
                    Cell { kind: def.kind, degree: def.degree, weight, generators: vec![g], image: img }
                }
                CellKind::Disc => {
                    let img = b.from_coords(0, 0, def.degree, &def.vector);
                    let top = push_gen(&mut pres, &format!("dx{counter}"), def.degree + 1, weight, NcPoly::zero());
                    let q = pres.quiver.clone();
                    let g = push_gen(&mut pres, &format!("x{counter}"), def.degree, weight, NcPoly::path(q.arrow(top)));
                    images.push(b.d(&img));
                    images.push(img.clone());
                    Cell { kind: def.kind, degree: def.degree, weight, generators: vec![g, top], image: img }
                }
                CellKind::Kill => {
                    let mut z = NcPoly::zero();
                    for (k, &i) in snap.a.block(0, 0, def.degree).iter().enumerate() {
                        z.add_term(snap.a.basis[i].path.clone().unwrap(), def.vector[k].clone());
                    }
                    let pz = snap.p_at(def.degree).mul_vec(&def.vector);
                    let pz_elem = b.from_coords(0, 0, def.degree, &pz);
                    let bound = if pz_elem.is_empty() {
                        Elem::new()
                    } else {
                        b.bound(&pz_elem, 0, 0, def.degree).ok_or_else(|| ReplaceError::Products("image of a killed cycle is not a boundary".into()))?
                    };
                    let w = z.max_weight().max(1);
                    let g = push_gen(&mut pres, &format!("t{counter}"), def.degree - 1, w, z);
                    images.push(bound.clone());
                    Cell { kind: def.kind, degree: def.degree - 1, weight: w, generators: vec![g], image: bound }
                }
            };
            stage.push(cell);
        }
        stages.push(stage);
    }
    let source = Arc::new(pres);
    let map = FreeMap::new(source.clone(), b.clone(), vec![0], images);
    map.check().map_err(ReplaceError::Map)?;
    let semi_free = source.semi_free_witness().map_err(|e| ReplaceError::Products(format!("replacement is not semi-free: {e:?}")))?;
    let check = recheck(&map, b, lo, hi, cap)?;
    Ok(Replacement { source, map, cells: CellComplexWitness { stages }, semi_free, complete, check, window: (lo, hi), cap })
}

fn push_gen<S: Scalar>(p: &mut Presentation<S>, name: &str, degree: i64, weight: u32, d: NcPoly<S>) -> usize {
    p.quiver.gens.push(crate::dg::Generator { name: name.into(), src: 0, tgt: 0, degree, weight });
    p.diff.push(d);
    p.quiver.gens.len() - 1
}

/// Degreewise surjectivity on `lo..=hi` and acyclicity of the mapping cone
/// on `lo+1..=hi−1`, from the chain map alone.
pub fn recheck<S: Scalar>(map: &FreeMap<S>, b: &ConcreteDgAlg<S>, lo: i64, hi: i64, cap: u32) -> Result<ReplacementCheck, ReplaceError> {
    let s = snapshot(map, b, lo, hi, cap)?;
    let f = ChainMap::new(s.ca.clone(), s.cb.clone(), lo - 1, s.p.clone()).map_err(|e| ReplaceError::Products(format!("{e}")))?;
    let surjective = (lo..=hi).all(|n| f.is_surjective_at(n));
    let cone_acyclic = cone(&f).complex.is_acyclic_on(lo + 1, hi - 1);
    Ok(ReplacementCheck { surjective, cone_acyclic })
}

impl<S: Scalar> Replacement<S> {
    pub fn generator_count(&self) -> usize {
        self.source.num_gens()
    }

    /// The image of every generator, for reporting.
    pub fn images(&self) -> Vec<(String, Elem<S>)> {
        self.source.quiver.gens.iter().zip(&self.map.images).map(|(g, e)| (g.name.clone(), e.clone())).collect()
    }
}
