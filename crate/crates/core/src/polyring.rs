//! Commutative polynomials in finitely many variables and Buchberger's algorithm.

use crate::Scalar;
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Exponent vector, ordered graded reverse lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Mono {
        Mono(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Mono {
        let mut e = vec![0; n];
        e[i] = 1;
        Mono(e)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    pub nvars: usize,
    pub terms: BTreeMap<Mono, S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Mono::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Mono::var(nvars, i), S::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total() == 0)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Mono::total).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Mono, c: S) {
        if c.is_negligible() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_negligible() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, o: &Poly<S>, k: &S) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone() * k.clone());
        }
    }

    pub fn add(&self, o: &Poly<S>) -> Poly<S> {
        let mut out = self.clone();
        out.add_scaled(o, &S::one());
        out
    }

    pub fn sub(&self, o: &Poly<S>) -> Poly<S> {
        let mut out = self.clone();
        out.add_scaled(o, &-S::one());
        out
    }

    pub fn scale(&self, k: &S) -> Poly<S> {
        let mut out = Poly::zero(self.nvars);
        out.add_scaled(self, k);
        out
    }

    pub fn mul(&self, o: &Poly<S>) -> Poly<S> {
        let mut out = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(a.mul(b), x.clone() * y.clone());
            }
        }
        out
    }

    fn mul_term(&self, m: &Mono, c: &S) -> Poly<S> {
        let mut out = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            out.add_term(a.mul(m), x.clone() * c.clone());
        }
        out
    }

    pub fn leading(&self) -> Option<(&Mono, &S)> {
        self.terms.iter().next_back()
    }

    pub fn eval(&self, point: &[S]) -> S {
        let mut out = S::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    v = v * point[i].clone();
                }
            }
            out = out + v;
        }
        out
    }

    /// Substitutes `vars[i]` for the `i`-th variable, landing in `nvars` variables.
    pub fn substitute(&self, vars: &[Poly<S>], nvars: usize) -> Poly<S> {
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut v = Poly::constant(nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    v = v.mul(&vars[i]);
                }
            }
            out = out.add(&v);
        }
        out
    }

    fn monic(&self) -> Poly<S> {
        match self.leading() {
            Some((_, c)) => self.scale(&(S::one() / c.clone())),
            None => self.clone(),
        }
    }

    /// Full reduction modulo `basis`.
    pub fn reduce(&self, basis: &[Poly<S>]) -> Poly<S> {
        let mut work = self.clone();
        let mut out = Poly::zero(self.nvars);
        while let Some((m, c)) = work.terms.pop_last() {
            match basis.iter().find(|g| g.leading().is_some_and(|(lm, _)| lm.divides(&m))) {
                Some(g) => {
                    let (lm, lc) = g.leading().unwrap();
                    let k = -(c / lc.clone());
                    let q = lm.quotient(&m);
                    let mut tail = g.clone();
                    tail.terms.pop_last();
                    work.add_scaled(&tail.mul_term(&q, &S::one()), &k);
                }
                None => out.add_term(m, c),
            }
        }
        out
    }
}

/// Why a Gröbner computation stopped early.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetExhausted;

/// Reduced Gröbner basis of the ideal generated by `gens`, or `Err` after
/// `budget` pair reductions.
pub fn groebner<S: Scalar>(gens: &[Poly<S>], budget: usize) -> Result<Vec<Poly<S>>, BudgetExhausted> {
    let mut basis: Vec<Poly<S>> = Vec::new();
    for g in gens {
        let r = g.reduce(&basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut steps = 0;
    while let Some((i, j)) = pairs.pop() {
        steps += 1;
        if steps > budget {
            return Err(BudgetExhausted);
        }
        let (a, b) = (&basis[i], &basis[j]);
        let (la, lb) = (a.leading().unwrap().0.clone(), b.leading().unwrap().0.clone());
        if la.coprime(&lb) {
            continue;
        }
        let l = la.lcm(&lb);
        let s = a.mul_term(&la.quotient(&l), &S::one()).sub(&b.mul_term(&lb.quotient(&l), &S::one()));
        let r = s.reduce(&basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(vec![Poly::constant(r.nvars, S::one())]);
        }
        basis.push(r.monic());
        let k = basis.len() - 1;
        pairs.extend((0..k).map(|i| (i, k)));
    }
    Ok(interreduce(basis))
}

fn interreduce<S: Scalar>(mut basis: Vec<Poly<S>>) -> Vec<Poly<S>> {
    basis.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    let mut kept: Vec<Poly<S>> = Vec::new();
    for g in basis {
        let lm = g.leading().unwrap().0.clone();
        if kept.iter().any(|k| k.leading().unwrap().0.divides(&lm)) {
            continue;
        }
        kept.push(g);
    }
    let mut out = Vec::new();
    for i in 0..kept.len() {
        let others: Vec<Poly<S>> = kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let (lm, lc) = kept[i].leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut tail = kept[i].clone();
        tail.terms.remove(&lm);
        let mut r = tail.reduce(&others);
        r.add_term(lm, lc);
        out.push(r.monic());
    }
    out
}

/// True when the ideal contains `1`, i.e. the system has no solution over
/// any extension field.
pub fn is_inconsistent<S: Scalar>(gb: &[Poly<S>]) -> bool {
    gb.iter().any(|g| !g.is_zero() && g.is_constant())
}
