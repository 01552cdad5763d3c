//! Bounded cochain complexes of finite-dimensional vector spaces.

use crate::linalg::{complement_from, span_rank, Matrix};
use crate::scalar::Scalar;
use std::fmt;

/// A complex concentrated in degrees `lo..=hi`; every piece outside the
/// window is zero.
#[derive(Clone, PartialEq)]
pub struct Complex<S> {
    pub lo: i64,
    pub hi: i64,
    dims: Vec<usize>,
    /// `d[k]` maps degree `lo + k` to `lo + k + 1`, for `k < hi - lo`.
    d: Vec<Matrix<S>>,
}

impl<S> fmt::Debug for Complex<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex[{}..{}] dims {:?}", self.lo, self.hi, self.dims)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexError {
    EmptyWindow,
    Shape { degree: i64 },
    SquareNonzero { degree: i64 },
    MapShape { degree: i64 },
    NotChainMap { degree: i64 },
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::EmptyWindow => write!(f, "empty degree window"),
            ComplexError::Shape { degree } => write!(f, "differential in degree {degree} has the wrong shape"),
            ComplexError::SquareNonzero { degree } => write!(f, "d∘d is nonzero starting in degree {degree}"),
            ComplexError::MapShape { degree } => write!(f, "map component in degree {degree} has the wrong shape"),
            ComplexError::NotChainMap { degree } => write!(f, "map does not commute with differentials in degree {degree}"),
        }
    }
}

impl std::error::Error for ComplexError {}

impl<S: Scalar> Complex<S> {
    pub fn new(lo: i64, dims: Vec<usize>, d: Vec<Matrix<S>>) -> Result<Self, ComplexError> {
        if dims.is_empty() {
            return Err(ComplexError::EmptyWindow);
        }
        let hi = lo + dims.len() as i64 - 1;
        if d.len() != dims.len() - 1 {
            return Err(ComplexError::Shape { degree: hi });
        }
        for (k, m) in d.iter().enumerate() {
            if m.rows() != dims[k + 1] || m.cols() != dims[k] {
                return Err(ComplexError::Shape { degree: lo + k as i64 });
            }
        }
        let c = Complex { lo, hi, dims, d };
        for n in lo..hi {
            if !c.diff(n + 1).mul(&c.diff(n)).is_zero() {
                return Err(ComplexError::SquareNonzero { degree: n });
            }
        }
        Ok(c)
    }

    pub fn zero(lo: i64, hi: i64) -> Self {
        let len = (hi - lo + 1).max(1) as usize;
        Complex { lo, hi: lo + len as i64 - 1, dims: vec![0; len], d: vec![Matrix::zeros(0, 0); len - 1] }
    }

    /// `dim` copies of the ground field in degree `n`.
    pub fn stalk(n: i64, dim: usize) -> Self {
        Complex { lo: n, hi: n, dims: vec![dim], d: Vec::new() }
    }

    pub fn dim(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// The differential out of degree `n`, zero outside the window.
    pub fn diff(&self, n: i64) -> Matrix<S> {
        if n >= self.lo && n < self.hi {
            self.d[(n - self.lo) as usize].clone()
        } else {
            Matrix::zeros(self.dim(n + 1), self.dim(n))
        }
    }

    /// The same complex on a larger window, zero in the added degrees.
    pub fn widen(&self, lo: i64, hi: i64) -> Self {
        let (lo, hi) = (lo.min(self.lo), hi.max(self.hi));
        let dims = (lo..=hi).map(|n| self.dim(n)).collect();
        let d = (lo..hi).map(|n| self.diff(n)).collect();
        Complex { lo, hi, dims, d }
    }

    /// One zero degree added at each end.
    pub fn padded(&self) -> Self {
        self.widen(self.lo - 1, self.hi + 1)
    }

    pub fn cycles(&self, n: i64) -> Vec<Vec<S>> {
        if self.dim(n) == 0 {
            return Vec::new();
        }
        self.diff(n).kernel()
    }

    /// Spanning vectors of the boundaries in degree `n`.
    pub fn boundaries(&self, n: i64) -> Vec<Vec<S>> {
        let m = self.diff(n - 1);
        (0..m.cols()).map(|c| m.column(c)).filter(|v| v.iter().any(|x| !x.is_negligible())).collect()
    }

    pub fn cohomology(&self, n: i64) -> CohomologyData<S> {
        let dim = self.dim(n);
        let z = self.cycles(n);
        let b = self.boundaries(n);
        let b_rank = span_rank(dim, &b);
        let reps = complement_from(dim, &b, &z).into_iter().map(|i| z[i].clone()).collect::<Vec<_>>();
        CohomologyData { degree: n, cycles: z.len(), boundaries: b_rank, dim: z.len() - b_rank, representatives: reps }
    }

    pub fn is_acyclic_on(&self, lo: i64, hi: i64) -> bool {
        (lo..=hi).all(|n| self.cohomology(n).dim == 0)
    }

    /// Window `lo-1..=hi-1` with `ΣX^n = X^{n+1}` and `d_ΣX = -d_X`.
    pub fn suspension(&self) -> Self {
        Complex { lo: self.lo - 1, hi: self.hi - 1, dims: self.dims.clone(), d: self.d.iter().map(|m| m.neg()).collect() }
    }

    /// `ξ: X → ΣX`, `x ↦ sx`, of degree −1: identity matrices indexed by the
    /// degree of the source.
    pub fn suspension_map(&self) -> GradedMap<S> {
        GradedMap { degree: -1, lo: self.lo, components: self.dims.iter().map(|&k| Matrix::identity(k)).collect() }
    }

    pub fn identity(&self) -> ChainMap<S> {
        ChainMap { source: self.clone(), target: self.clone(), lo: self.lo, components: self.dims.iter().map(|&k| Matrix::identity(k)).collect() }
    }
}

/// Ranks and representatives of one cohomology group.
#[derive(Clone, Debug)]
pub struct CohomologyData<S> {
    pub degree: i64,
    pub cycles: usize,
    pub boundaries: usize,
    pub dim: usize,
    pub representatives: Vec<Vec<S>>,
}

/// A homogeneous linear map of the given degree, components indexed by the
/// source degree starting at `lo`.
#[derive(Clone)]
pub struct GradedMap<S> {
    pub degree: i64,
    pub lo: i64,
    pub components: Vec<Matrix<S>>,
}

impl<S: Scalar> GradedMap<S> {
    pub fn at(&self, n: i64, rows: usize, cols: usize) -> Matrix<S> {
        let k = n - self.lo;
        if k >= 0 && (k as usize) < self.components.len() {
            self.components[k as usize].clone()
        } else {
            Matrix::zeros(rows, cols)
        }
    }
}

#[derive(Clone)]
pub struct ChainMap<S> {
    pub source: Complex<S>,
    pub target: Complex<S>,
    lo: i64,
    components: Vec<Matrix<S>>,
}

impl<S: Scalar> fmt::Debug for ChainMap<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChainMap").field("source", &self.source).field("target", &self.target).field("components", &self.components).finish()
    }
}

impl<S: Scalar> ChainMap<S> {
    /// Components for degrees `lo, lo+1, ...`; missing degrees are zero.
    pub fn new(source: Complex<S>, target: Complex<S>, lo: i64, components: Vec<Matrix<S>>) -> Result<Self, ComplexError> {
        let f = ChainMap { source, target, lo, components };
        for (k, m) in f.components.iter().enumerate() {
            let n = lo + k as i64;
            if m.rows() != f.target.dim(n) || m.cols() != f.source.dim(n) {
                return Err(ComplexError::MapShape { degree: n });
            }
        }
        let (a, b) = f.window();
        for n in a - 1..=b {
            let lhs = f.target.diff(n).mul(&f.at(n));
            let rhs = f.at(n + 1).mul(&f.source.diff(n));
            if !lhs.sub(&rhs).is_zero() {
                return Err(ComplexError::NotChainMap { degree: n });
            }
        }
        Ok(f)
    }

    pub fn zero(source: Complex<S>, target: Complex<S>) -> Self {
        ChainMap { lo: source.lo, components: Vec::new(), source, target }
    }

    /// Union of the source and target windows.
    pub fn window(&self) -> (i64, i64) {
        (self.source.lo.min(self.target.lo), self.source.hi.max(self.target.hi))
    }

    pub fn at(&self, n: i64) -> Matrix<S> {
        let k = n - self.lo;
        if k >= 0 && (k as usize) < self.components.len() {
            self.components[k as usize].clone()
        } else {
            Matrix::zeros(self.target.dim(n), self.source.dim(n))
        }
    }

    pub fn then(&self, next: &ChainMap<S>) -> ChainMap<S> {
        let (lo, hi) = self.window();
        let components = (lo..=hi).map(|n| next.at(n).mul(&self.at(n))).collect();
        ChainMap { source: self.source.clone(), target: next.target.clone(), lo, components }
    }

    pub fn is_surjective_at(&self, n: i64) -> bool {
        self.at(n).rank() == self.target.dim(n)
    }

    pub fn is_surjective(&self) -> bool {
        let (lo, hi) = self.window();
        (lo..=hi).all(|n| self.is_surjective_at(n))
    }

    /// Rank of `H^n(f)`.
    pub fn cohomology_rank(&self, n: i64) -> usize {
        let hx = self.source.cohomology(n);
        let by = self.target.boundaries(n);
        let by_rank = span_rank(self.target.dim(n), &by);
        let m = self.at(n);
        let mut span: Vec<Vec<S>> = hx.representatives.iter().map(|z| m.mul_vec(z)).collect();
        span.extend(by);
        span_rank(self.target.dim(n), &span) - by_rank
    }

    pub fn cohomology_injective(&self, n: i64) -> bool {
        self.cohomology_rank(n) == self.source.cohomology(n).dim
    }

    pub fn cohomology_surjective(&self, n: i64) -> bool {
        self.cohomology_rank(n) == self.target.cohomology(n).dim
    }

    /// `Z^n(f)` onto `Z^n(Y)`.
    pub fn cycles_surjective(&self, n: i64) -> bool {
        let m = self.at(n);
        let img: Vec<Vec<S>> = self.source.cycles(n).iter().map(|z| m.mul_vec(z)).collect();
        span_rank(self.target.dim(n), &img) == self.target.cycles(n).len()
    }
}

/// `Cone(f) = Y ⊕ ΣX` with differential `[[d_Y, f∘ξ⁻¹], [0, d_ΣX]]`, and the
/// canonical maps `Y → Cone(f) → ΣX`.
pub struct Cone<S> {
    pub complex: Complex<S>,
    pub inclusion: ChainMap<S>,
    pub projection: ChainMap<S>,
}

pub fn cone<S: Scalar>(f: &ChainMap<S>) -> Cone<S> {
    let (x, y) = (&f.source, &f.target);
    let sx = x.suspension();
    let lo = y.lo.min(sx.lo);
    let hi = y.hi.max(sx.hi);
    let dims: Vec<usize> = (lo..=hi).map(|n| y.dim(n) + x.dim(n + 1)).collect();
    let d: Vec<Matrix<S>> = (lo..hi)
        .map(|n| {
            let mut m = Matrix::zeros(dims[(n + 1 - lo) as usize], dims[(n - lo) as usize]);
            let (yn, yn1) = (y.dim(n), y.dim(n + 1));
            m.set_block(0, 0, &y.diff(n));
            m.set_block(0, yn, &f.at(n + 1));
            m.set_block(yn1, yn, &sx.diff(n));
            m
        })
        .collect();
    let complex = Complex { lo, hi, dims: dims.clone(), d };
    let inc: Vec<Matrix<S>> = (lo..=hi)
        .map(|n| {
            let mut m = Matrix::zeros(complex.dim(n), y.dim(n));
            m.set_block(0, 0, &Matrix::identity(y.dim(n)));
            m
        })
        .collect();
    let proj: Vec<Matrix<S>> = (lo..=hi)
        .map(|n| {
            let mut m = Matrix::zeros(sx.dim(n), complex.dim(n));
            m.set_block(0, y.dim(n), &Matrix::identity(sx.dim(n)));
            m
        })
        .collect();
    Cone {
        inclusion: ChainMap { source: y.clone(), target: complex.clone(), lo, components: inc },
        projection: ChainMap { source: complex.clone(), target: sx, lo, components: proj },
        complex,
    }
}

/// Quasi-isomorphism test: the cone is acyclic on the interior of its window.
pub fn is_quasi_iso<S: Scalar>(f: &ChainMap<S>) -> bool {
    let c = cone(f).complex;
    c.is_acyclic_on(c.lo + 1, c.hi - 1)
}

/// The three equivalent conditions for a surjective quasi-isomorphism,
/// evaluated independently over the given degrees.
#[derive(Clone, Debug)]
pub struct SurjQuasCriteria<S> {
    /// Surjective and quasi-isomorphism.
    pub c1: bool,
    /// Cycles map onto cycles and cohomology injects.
    pub c2: bool,
    /// Every compatible pair `(x, y)` has a section `x'`.
    pub c3: bool,
    /// A degree and pair `(x, y)` without a section, when `c3` fails.
    pub c3_failure: Option<(i64, Vec<S>, Vec<S>)>,
}

impl<S> SurjQuasCriteria<S> {
    pub fn agree(&self) -> bool {
        self.c1 == self.c2 && self.c2 == self.c3
    }
}

pub fn surj_quas_criteria<S: Scalar>(f: &ChainMap<S>, lo: i64, hi: i64) -> SurjQuasCriteria<S> {
    let c = cone(f).complex;
    let c1 = (lo..=hi).all(|n| f.is_surjective_at(n)) && c.is_acyclic_on(lo - 1, hi);
    let c2 = (lo..=hi).all(|n| f.cycles_surjective(n) && f.cohomology_injective(n)) && f.cohomology_injective(hi + 1);
    let mut c3_failure = None;
    for n in (lo - 1)..=hi {
        if let Some((x, y)) = section_obstruction(f, n) {
            c3_failure = Some((n, x, y));
            break;
        }
    }
    SurjQuasCriteria { c1, c2, c3: c3_failure.is_none(), c3_failure }
}

/// Pairs `(x, y) ∈ X^{n+1} ⊕ Y^n` with `d x = 0` and `f x = d y`, as a basis.
pub fn compatible_pairs<S: Scalar>(f: &ChainMap<S>, n: i64) -> Vec<(Vec<S>, Vec<S>)> {
    let (x, y) = (&f.source, &f.target);
    let (a, b) = (x.dim(n + 1), y.dim(n));
    if a + b == 0 {
        return Vec::new();
    }
    let top = x.diff(n + 1).hstack(&Matrix::zeros(x.dim(n + 2), b));
    let bottom = f.at(n + 1).hstack(&y.diff(n).neg());
    let sys = top.vstack(&bottom);
    sys.kernel().into_iter().map(|v| (v[..a].to_vec(), v[a..].to_vec())).collect()
}

/// The first basis pair in degree `n` with no section.
fn section_obstruction<S: Scalar>(f: &ChainMap<S>, n: i64) -> Option<(Vec<S>, Vec<S>)> {
    compatible_pairs(f, n).into_iter().find(|(x, y)| solve_section(f, n, x, y).is_err())
}

/// `x' ∈ X^n` with `d x' = x` and `f x' = y`, or a row vector annihilating
/// the stacked system but not `(x, y)`.
pub fn solve_section<S: Scalar>(f: &ChainMap<S>, n: i64, x: &[S], y: &[S]) -> Result<Vec<S>, Vec<S>> {
    let sys = f.source.diff(n).vstack(&f.at(n));
    let mut rhs = x.to_vec();
    rhs.extend(y.iter().cloned());
    if sys.cols() == 0 {
        return if rhs.iter().all(|v| v.is_negligible()) { Ok(Vec::new()) } else { Err(rhs) };
    }
    match sys.solve(&rhs) {
        Some(v) => Ok(v),
        None => Err(sys.inconsistency_certificate(&rhs).unwrap_or_default()),
    }
}

/// Seeded random complexes and chain maps with small integer entries.
pub mod random {
    use super::{ChainMap, Complex};
    use crate::linalg::Matrix;
    use crate::scalar::Scalar;
    use rand::Rng;

    fn small<S: Scalar, R: Rng>(rng: &mut R) -> S {
        S::from_int(rng.gen_range(-2..=2))
    }

    pub fn matrix<S: Scalar, R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Matrix<S> {
        let data = (0..rows * cols).map(|_| small(rng)).collect();
        Matrix::from_rows(rows, cols, data)
    }

    pub fn invertible<S: Scalar, R: Rng>(rng: &mut R, n: usize) -> (Matrix<S>, Matrix<S>) {
        loop {
            let m = matrix(rng, n, n);
            if let Some(inv) = m.inverse() {
                return (m, inv);
            }
        }
    }

    /// Sum of stalks and two-term discs, then a random change of basis in
    /// every degree; dimensions stay at most `max_dim`.
    pub fn complex<S: Scalar, R: Rng>(rng: &mut R, lo: i64, hi: i64, max_dim: usize) -> Complex<S> {
        let len = (hi - lo + 1) as usize;
        let mut dims = vec![0usize; len];
        let mut discs = vec![0usize; len];
        for k in 0..len {
            if k + 1 < len {
                let room = max_dim.saturating_sub(dims[k]).min(max_dim.saturating_sub(dims[k + 1]));
                discs[k] = rng.gen_range(0..=room.min(2));
                dims[k] += discs[k];
                dims[k + 1] += discs[k];
            }
            let room = max_dim.saturating_sub(dims[k]);
            dims[k] += rng.gen_range(0..=room.min(2));
        }
        let mut d = Vec::new();
        for k in 0..len.saturating_sub(1) {
            let mut m = Matrix::zeros(dims[k + 1], dims[k]);
            let src_off = dims[k] - discs[k];
            for j in 0..discs[k] {
                m[(j, src_off + j)] = S::one();
            }
            d.push(m);
        }
        let bases: Vec<(Matrix<S>, Matrix<S>)> = dims.iter().map(|&n| invertible(rng, n)).collect();
        let d = d.iter().enumerate().map(|(k, m)| bases[k + 1].0.mul(m).mul(&bases[k].1)).collect();
        Complex::new(lo, dims, d).expect("random complex")
    }

    /// Basis of all chain maps `X → Y`, as component lists on the union window.
    pub fn chain_map_space<S: Scalar>(x: &Complex<S>, y: &Complex<S>) -> (i64, Vec<Vec<Matrix<S>>>) {
        let lo = x.lo.min(y.lo);
        let hi = x.hi.max(y.hi);
        let mut offsets = Vec::new();
        let mut total = 0;
        for n in lo..=hi {
            offsets.push(total);
            total += x.dim(n) * y.dim(n);
        }
        let mut rows: Vec<Vec<S>> = Vec::new();
        for n in lo - 1..=hi {
            let dy = y.diff(n);
            let dx = x.diff(n);
            for r in 0..y.dim(n + 1) {
                for c in 0..x.dim(n) {
                    let mut row = vec![S::zero(); total];
                    if n >= lo {
                        let off = offsets[(n - lo) as usize];
                        for k in 0..y.dim(n) {
                            row[off + k * x.dim(n) + c] = row[off + k * x.dim(n) + c].clone() + dy[(r, k)].clone();
                        }
                    }
                    if n < hi {
                        let off = offsets[(n + 1 - lo) as usize];
                        for k in 0..x.dim(n + 1) {
                            row[off + r * x.dim(n + 1) + k] = row[off + r * x.dim(n + 1) + k].clone() - dx[(k, c)].clone();
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let basis = if total == 0 {
            Vec::new()
        } else if rows.is_empty() {
            (0..total).map(|i| crate::linalg::unit_vec(total, i)).collect()
        } else {
            Matrix::from_row_vecs(total, &rows).kernel()
        };
        let maps = basis
            .iter()
            .map(|v| {
                (lo..=hi)
                    .map(|n| {
                        let off = offsets[(n - lo) as usize];
                        Matrix::from_rows(y.dim(n), x.dim(n), v[off..off + x.dim(n) * y.dim(n)].to_vec())
                    })
                    .collect()
            })
            .collect();
        (lo, maps)
    }

    /// A random combination of a basis of chain maps.
    pub fn chain_map_between<S: Scalar, R: Rng>(rng: &mut R, x: &Complex<S>, y: &Complex<S>) -> ChainMap<S> {
        let (lo, space) = chain_map_space(x, y);
        let hi = x.hi.max(y.hi);
        let mut comps: Vec<Matrix<S>> = (lo..=hi).map(|n| Matrix::zeros(y.dim(n), x.dim(n))).collect();
        for b in &space {
            let k: S = small(rng);
            for (c, m) in comps.iter_mut().zip(b) {
                *c = c.add(&m.scale(&k));
            }
        }
        ChainMap::new(x.clone(), y.clone(), lo, comps).expect("combination of chain maps")
    }

    /// Direct sum `X ⊕ E` with its projection onto `X`, where `E` is random.
    fn projection_from_sum<S: Scalar, R: Rng>(rng: &mut R, x: &Complex<S>, e: &Complex<S>) -> ChainMap<S> {
        let (lo, hi) = (x.lo.min(e.lo), x.hi.max(e.hi));
        let dims: Vec<usize> = (lo..=hi).map(|n| x.dim(n) + e.dim(n)).collect();
        let d = (lo..hi).map(|n| x.diff(n).block_diag(&e.diff(n))).collect();
        let sum = Complex::new(lo, dims.clone(), d).expect("direct sum");
        let bases: Vec<(Matrix<S>, Matrix<S>)> = dims.iter().map(|&n| invertible(rng, n)).collect();
        let d = (lo..hi).map(|n| bases[(n + 1 - lo) as usize].0.mul(&sum.diff(n)).mul(&bases[(n - lo) as usize].1)).collect();
        let twisted = Complex::new(lo, dims, d).expect("change of basis");
        let comps = (lo..=hi)
            .map(|n| {
                let mut p = Matrix::zeros(x.dim(n), x.dim(n) + e.dim(n));
                p.set_block(0, 0, &Matrix::identity(x.dim(n)));
                p.mul(&bases[(n - lo) as usize].1)
            })
            .collect();
        ChainMap::new(twisted, x.widen(lo, hi), lo, comps).expect("projection")
    }

    /// Disc summands only, so the projection is a surjective quasi-isomorphism.
    fn acyclic<S: Scalar, R: Rng>(rng: &mut R, lo: i64, hi: i64, room: &[usize]) -> Complex<S> {
        let len = (hi - lo + 1) as usize;
        let mut starts = vec![0usize; len];
        let mut dims = vec![0usize; len];
        for k in 0..len.saturating_sub(1) {
            if dims[k] < room[k] && room[k + 1] > 0 && rng.gen_bool(0.5) {
                starts[k] = 1;
                dims[k] += 1;
                dims[k + 1] += 1;
            }
        }
        let d = (0..len.saturating_sub(1))
            .map(|k| {
                let mut m = Matrix::zeros(dims[k + 1], dims[k]);
                if starts[k] == 1 {
                    m[(0, dims[k] - 1)] = S::one();
                }
                m
            })
            .collect();
        Complex::new(lo, dims, d).expect("acyclic complex")
    }

    /// A random bounded chain map drawn from several families so that both
    /// answers of the surjective quasi-isomorphism test occur often.
    pub fn chain_map<S: Scalar, R: Rng>(rng: &mut R, lo: i64, hi: i64, max_dim: usize) -> ChainMap<S> {
        match rng.gen_range(0..5) {
            0 => {
                let x = complex(rng, lo, hi, max_dim);
                let y = complex(rng, lo, hi, max_dim);
                chain_map_between(rng, &x, &y)
            }
            1 => {
                let y = complex(rng, lo, hi, max_dim.saturating_sub(1).max(1));
                let room: Vec<usize> = (lo..=hi).map(|n| max_dim - y.dim(n)).collect();
                let e = acyclic(rng, lo, hi, &room);
                projection_from_sum(rng, &y, &e)
            }
            2 => {
                let y = complex(rng, lo, hi, max_dim.saturating_sub(1).max(1));
                let room: Vec<usize> = (lo..=hi).map(|n| max_dim - y.dim(n)).collect();
                let n = rng.gen_range(lo..=hi);
                let e = if room[(n - lo) as usize] > 0 { Complex::stalk(n, 1).widen(lo, hi) } else { Complex::zero(lo, hi) };
                projection_from_sum(rng, &y, &e)
            }
            3 => complex::<S, R>(rng, lo, hi, max_dim).identity(),
            _ => {
                let x = complex(rng, lo, hi, max_dim);
                let y = complex(rng, lo, hi, max_dim);
                let f = chain_map_between(rng, &x, &y);
                let (x2, _) = (f.source.clone(), ());
                let g = chain_map_between(rng, &y, &x2);
                f.then(&g)
            }
        }
    }
}
