use crate::Scalar;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A graded arrow `src → tgt`. The weight orders words and bounds truncations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
    pub degree: i64,
    pub weight: u32,
}

/// Objects and graded generating arrows. A dg algebra is the one-object case.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Quiver {
    pub objects: Vec<String>,
    pub gens: Vec<Generator>,
}

/// The composite `a_1 ∘ … ∘ a_k` of the generators in `word`; for algebras
/// this is the product `a_1 ⋯ a_k`. The empty word is the identity of `src`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub src: usize,
    pub tgt: usize,
    pub degree: i64,
    pub weight: u32,
    pub word: Vec<usize>,
}

impl Ord for Path {
    /// Weight, then length, then lexicographic: a monomial order.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.weight, self.word.len(), &self.word, self.src, self.tgt).cmp(&(
            other.weight,
            other.word.len(),
            &other.word,
            other.src,
            other.tgt,
        ))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Path {
    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// `self ∘ inner`, defined when `inner` ends where `self` starts.
    pub fn after(&self, inner: &Path) -> Option<Path> {
        if self.src != inner.tgt {
            return None;
        }
        let mut word = self.word.clone();
        word.extend_from_slice(&inner.word);
        Some(Path {
            src: inner.src,
            tgt: self.tgt,
            degree: self.degree + inner.degree,
            weight: self.weight + inner.weight,
            word,
        })
    }
}

impl Quiver {
    pub fn algebra(gens: Vec<(String, i64)>) -> Quiver {
        Quiver {
            objects: vec!["*".into()],
            gens: gens.into_iter().map(|(name, degree)| Generator { name, src: 0, tgt: 0, degree, weight: 1 }).collect(),
        }
    }

    pub fn is_algebra(&self) -> bool {
        self.objects.len() == 1
    }

    pub fn object(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn gen(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn id(&self, x: usize) -> Path {
        Path { src: x, tgt: x, degree: 0, weight: 0, word: Vec::new() }
    }

    pub fn arrow(&self, a: usize) -> Path {
        let g = &self.gens[a];
        Path { src: g.src, tgt: g.tgt, degree: g.degree, weight: g.weight, word: vec![a] }
    }

    /// The path spelled by a nonempty composable word.
    pub fn path(&self, word: &[usize]) -> Option<Path> {
        let (first, last) = (word.first()?, word.last()?);
        for w in word.windows(2) {
            if self.gens[w[0]].src != self.gens[w[1]].tgt {
                return None;
            }
        }
        Some(Path {
            src: self.gens[*last].src,
            tgt: self.gens[*first].tgt,
            degree: word.iter().map(|&a| self.gens[a].degree).sum(),
            weight: word.iter().map(|&a| self.gens[a].weight).sum(),
            word: word.to_vec(),
        })
    }

    pub fn word_degree(&self, word: &[usize]) -> i64 {
        word.iter().map(|&a| self.gens[a].degree).sum()
    }

    /// Replaces `len` letters at `pos` in `p` by the path `t` with the same endpoints.
    pub fn splice(&self, p: &Path, pos: usize, len: usize, t: &Path) -> Path {
        let removed = &p.word[pos..pos + len];
        let mut word = p.word[..pos].to_vec();
        word.extend_from_slice(&t.word);
        word.extend_from_slice(&p.word[pos + len..]);
        Path {
            src: p.src,
            tgt: p.tgt,
            degree: p.degree - self.word_degree(removed) + t.degree,
            weight: p.weight - removed.iter().map(|&a| self.gens[a].weight).sum::<u32>() + t.weight,
            word,
        }
    }

    /// Rewrites `p`, given over another quiver, letter by letter and object by object.
    pub fn remap<S: Scalar>(&self, p: &NcPoly<S>, gen: impl Fn(usize) -> usize, obj: impl Fn(usize) -> usize) -> NcPoly<S> {
        let mut out = NcPoly::zero();
        for (t, c) in &p.terms {
            let path = if t.word.is_empty() {
                self.id(obj(t.src))
            } else {
                self.path(&t.word.iter().map(|&a| gen(a)).collect::<Vec<_>>()).expect("remapped word composes")
            };
            out.add_term(path, c.clone());
        }
        out
    }

    pub fn render_path(&self, p: &Path) -> String {
        if p.word.is_empty() {
            return if self.is_algebra() { "1".into() } else { format!("1_{}", self.objects[p.src]) };
        }
        p.word.iter().map(|&a| self.gens[a].name.as_str()).collect::<Vec<_>>().join("*")
    }

    pub fn render<S: Scalar>(&self, p: &NcPoly<S>) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (path, c)) in p.terms.iter().rev().enumerate() {
            let neg = crate::scalar::render(c).starts_with('-');
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if abs.is_one() {
                out.push_str(&self.render_path(path));
            } else if path.is_identity() && self.is_algebra() {
                out.push_str(&crate::scalar::render(&abs));
            } else {
                out.push_str(&format!("{}*{}", crate::scalar::render(&abs), self.render_path(path)));
            }
        }
        out
    }
}

/// A finite linear combination of paths.
#[derive(Clone, PartialEq)]
pub struct NcPoly<S> {
    pub terms: BTreeMap<Path, S>,
}

impl<S: fmt::Debug> fmt::Debug for NcPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(p, c)| (&p.word, c))).finish()
    }
}

impl<S: Scalar> Default for NcPoly<S> {
    fn default() -> Self {
        NcPoly::zero()
    }
}

impl<S: Scalar> NcPoly<S> {
    pub fn zero() -> Self {
        NcPoly { terms: BTreeMap::new() }
    }

    pub fn path(p: Path) -> Self {
        NcPoly::term(p, S::one())
    }

    pub fn term(p: Path, c: S) -> Self {
        let mut out = NcPoly::zero();
        out.add_term(p, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, p: Path, c: S) {
        if c.is_negligible() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_negligible() {
                    self.terms.remove(&p);
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &NcPoly<S>, k: &S) {
        for (p, c) in &other.terms {
            self.add_term(p.clone(), c.clone() * k.clone());
        }
    }

    pub fn add(&self, other: &NcPoly<S>) -> NcPoly<S> {
        let mut out = self.clone();
        out.add_scaled(other, &S::one());
        out
    }

    pub fn sub(&self, other: &NcPoly<S>) -> NcPoly<S> {
        let mut out = self.clone();
        out.add_scaled(other, &-S::one());
        out
    }

    pub fn scale(&self, k: &S) -> NcPoly<S> {
        let mut out = NcPoly::zero();
        out.add_scaled(self, k);
        out
    }

    pub fn neg(&self) -> NcPoly<S> {
        self.scale(&-S::one())
    }

    /// `self ∘ inner`; pairs of paths that do not compose contribute nothing.
    pub fn after(&self, inner: &NcPoly<S>) -> NcPoly<S> {
        let mut out = NcPoly::zero();
        for (p, a) in &self.terms {
            for (q, b) in &inner.terms {
                if let Some(pq) = p.after(q) {
                    out.add_term(pq, a.clone() * b.clone());
                }
            }
        }
        out
    }

    pub fn leading(&self) -> Option<(&Path, &S)> {
        self.terms.iter().next_back()
    }

    /// Common degree of all terms; `None` when empty or mixed.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|p| p.degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Common endpoints of all terms.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(|p| (p.src, p.tgt));
        let e = it.next()?;
        it.all(|f| f == e).then_some(e)
    }

    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(|p| p.weight).max().unwrap_or(0)
    }

    pub fn coefficient(&self, p: &Path) -> S {
        self.terms.get(p).cloned().unwrap_or_else(S::zero)
    }
}

/// Extends `diff` (values on generators) to paths by the Koszul–Leibniz rule
/// `d(a∘b) = d(a)∘b + (−1)^{|a|} a∘d(b)`.
pub fn leibniz<S: Scalar>(q: &Quiver, diff: &[NcPoly<S>], p: &NcPoly<S>) -> NcPoly<S> {
    let mut out = NcPoly::zero();
    for (path, c) in &p.terms {
        let mut before = 0i64;
        for (i, &a) in path.word.iter().enumerate() {
            let sign = S::sign_pow(before) * c.clone();
            for (t, k) in &diff[a].terms {
                out.add_term(q.splice(path, i, 1, t), k.clone() * sign.clone());
            }
            before += q.gens[a].degree;
        }
    }
    out
}
