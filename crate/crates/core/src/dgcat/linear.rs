//! Linear systems whose unknowns are elements of Hom blocks.

use crate::dg::concrete::{elem_add, unit};
use crate::dg::{ConcreteDgCat, DgError, Elem};
use crate::dgalg::Affine;
use crate::linalg::Matrix;
use crate::Scalar;

/// Unknowns `u_k ∈ C(x_k, y_k)^{n_k}` of one concrete category, constrained
/// by equations in blocks of possibly another category.
pub struct System<'a, S> {
    pub cat: &'a ConcreteDgCat<S>,
    pub blocks: Vec<(usize, usize, i64)>,
    offsets: Vec<usize>,
    pub total: usize,
    rows: Vec<Vec<S>>,
    rhs: Vec<S>,
}

/// A term of a constraint: unknown `k` and its effect on one basis element.
pub type Term<'t, S> = (usize, &'t dyn Fn(usize) -> Option<Elem<S>>);

pub(crate) fn unknown_product() -> DgError {
    DgError::Unknown("product outside the known window".into())
}

impl<'a, S: Scalar> System<'a, S> {
    pub fn new(cat: &'a ConcreteDgCat<S>, blocks: Vec<(usize, usize, i64)>) -> Self {
        let mut offsets = Vec::new();
        let mut total = 0;
        for &(x, y, n) in &blocks {
            offsets.push(total);
            total += cat.dim(x, y, n);
        }
        System { cat, blocks, offsets, total, rows: Vec::new(), rhs: Vec::new() }
    }

    /// `Σ_k L_k(u_k) = rhs` in the block `(x, y, n)` of `target`, where each
    /// `L_k` is given on basis elements of the unknown's block.
    pub fn constrain(&mut self, target: &ConcreteDgCat<S>, block: (usize, usize, i64), terms: &[Term<'_, S>], rhs: &Elem<S>) -> Result<(), DgError> {
        let (x, y, n) = block;
        let dim = target.dim(x, y, n);
        if dim == 0 {
            return Ok(());
        }
        let mut rows = vec![vec![S::zero(); self.total]; dim];
        for (k, f) in terms {
            let (a, b, m) = self.blocks[*k];
            for (c, &i) in self.cat.block(a, b, m).iter().enumerate() {
                let e = f(i).ok_or_else(unknown_product)?;
                for (r, v) in target.coords(&e, x, y, n).into_iter().enumerate() {
                    rows[r][self.offsets[*k] + c] = rows[r][self.offsets[*k] + c].clone() + v;
                }
            }
        }
        self.rows.extend(rows);
        self.rhs.extend(target.coords(rhs, x, y, n));
        Ok(())
    }

    /// `d u_k` as a term.
    pub fn d_of(&self) -> impl Fn(usize) -> Option<Elem<S>> + '_ {
        move |i| Some(self.cat.d(&unit(i)))
    }

    fn matrix(&self) -> Matrix<S> {
        Matrix::from_row_vecs(self.total, &self.rows)
    }

    /// All solutions, or a certificate `y` with `yᵀA = 0`, `yᵀb ≠ 0`.
    pub fn solve(&self) -> Result<Affine<S>, Vec<S>> {
        let a = self.matrix();
        match a.solve(&self.rhs) {
            Some(particular) => Ok(Affine { particular, directions: if self.total == 0 { Vec::new() } else { a.kernel() } }),
            None => Err(a.inconsistency_certificate(&self.rhs).unwrap_or_default()),
        }
    }

    pub fn value(&self, v: &[S], k: usize) -> Elem<S> {
        let (x, y, n) = self.blocks[k];
        let off = self.offsets[k];
        self.cat.from_coords(x, y, n, &v[off..off + self.cat.dim(x, y, n)])
    }

    pub fn values(&self, v: &[S]) -> Vec<Elem<S>> {
        (0..self.blocks.len()).map(|k| self.value(v, k)).collect()
    }
}

/// `Σ c_k v_k` for small integer coefficient vectors, in a fixed order:
/// all of `{-1, 0, 1}^k` minus zero when `k ≤ full`, else unit vectors,
/// their negatives and sums of pairs.
pub fn small_combinations<S: Scalar>(k: usize, full: usize) -> Vec<Vec<S>> {
    let mut out = Vec::new();
    if k <= full {
        let total = 3usize.pow(k as u32);
        for code in 0..total {
            let mut c = code;
            let mut v = Vec::with_capacity(k);
            for _ in 0..k {
                v.push(S::from_int((c % 3) as i64 - 1));
                c /= 3;
            }
            if v.iter().any(|x| !x.is_zero()) {
                out.push(v);
            }
        }
        out.sort_by_key(|v| v.iter().filter(|x| !x.is_zero()).count());
        return out;
    }
    for i in 0..k {
        for s in [1, -1] {
            let mut v = vec![S::zero(); k];
            v[i] = S::from_int(s);
            out.push(v);
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let mut v = vec![S::zero(); k];
            v[i] = S::one();
            v[j] = S::one();
            out.push(v);
        }
    }
    out
}

pub fn combine<S: Scalar>(vectors: &[Elem<S>], coeffs: &[S]) -> Elem<S> {
    let mut out = Elem::new();
    for (v, c) in vectors.iter().zip(coeffs) {
        elem_add(&mut out, v, c);
    }
    out
}
