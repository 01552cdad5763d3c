use super::concrete::{BasisElem, ConcreteDgCat, Elem};
use super::poly::{leibniz, NcPoly, Path, Quiver};
use super::rewrite::Rules;
use crate::Scalar;
use std::collections::HashMap;
use std::fmt;

/// Generators with degrees, their differentials, and relations generating a
/// two-sided dg ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation<S> {
    pub quiver: Quiver,
    pub diff: Vec<NcPoly<S>>,
    pub relations: Vec<NcPoly<S>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentationError {
    DiffDegree { generator: String },
    DiffEndpoints { generator: String },
    SquareNonzero { generator: String },
    RelationNotHomogeneous { index: usize },
    RelationNotClosed { index: usize },
}

impl fmt::Display for PresentationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationError::DiffDegree { generator } => write!(f, "d({generator}) does not have degree |{generator}|+1"),
            PresentationError::DiffEndpoints { generator } => write!(f, "d({generator}) has the wrong source or target"),
            PresentationError::SquareNonzero { generator } => write!(f, "d²({generator}) ≠ 0"),
            PresentationError::RelationNotHomogeneous { index } => write!(f, "relation {index} is not homogeneous"),
            PresentationError::RelationNotClosed { index } => write!(f, "d of relation {index} is not in the ideal"),
        }
    }
}

impl std::error::Error for PresentationError {}

/// Layers `I_0, I_1, …` with `d(x)` for `x ∈ I_p` a combination of words in earlier layers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiFreenessWitness {
    pub layers: Vec<Vec<usize>>,
}

/// Why no layering exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotSemiFree {
    HasRelations,
    /// Generators whose differentials depend on each other in a cycle.
    Cycle(Vec<usize>),
}

impl SemiFreenessWitness {
    pub fn layer_of(&self, g: usize) -> Option<usize> {
        self.layers.iter().position(|l| l.contains(&g))
    }

    pub fn verify<S: Scalar>(&self, p: &Presentation<S>) -> bool {
        let mut all: Vec<usize> = self.layers.concat();
        all.sort();
        if all != (0..p.quiver.gens.len()).collect::<Vec<_>>() || !p.relations.is_empty() {
            return false;
        }
        self.layers.iter().enumerate().all(|(k, layer)| {
            layer.iter().all(|&x| p.diff[x].terms.keys().all(|t| t.word.iter().all(|&y| self.layer_of(y).is_some_and(|l| l < k))))
        })
    }
}

/// Outcome of a truncation beyond the concrete data.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TruncationReport {
    /// Some in-window degree has words beyond the weight cap.
    pub incomplete: bool,
    /// The differential of some basis word left the weight cap.
    pub inexact_differential: bool,
    /// Overlaps of relations above the cap were left unresolved.
    pub relations_unresolved: bool,
}

impl<S: Scalar> Presentation<S> {
    pub fn free(quiver: Quiver, diff: Vec<NcPoly<S>>) -> Self {
        Presentation { quiver, diff, relations: Vec::new() }
    }

    /// One object, the given generators, zero differential.
    pub fn algebra(gens: &[(&str, i64)]) -> Self {
        let q = Quiver::algebra(gens.iter().map(|(n, d)| (n.to_string(), *d)).collect());
        let diff = vec![NcPoly::zero(); q.gens.len()];
        Presentation::free(q, diff)
    }

    pub fn set_d(&mut self, name: &str, p: NcPoly<S>) {
        let i = self.quiver.gen(name).unwrap_or_else(|| panic!("no generator {name}"));
        self.diff[i] = p;
    }

    pub fn num_gens(&self) -> usize {
        self.quiver.gens.len()
    }

    pub fn gen(&self, name: &str) -> NcPoly<S> {
        NcPoly::path(self.quiver.arrow(self.quiver.gen(name).unwrap_or_else(|| panic!("no generator {name}"))))
    }

    pub fn id(&self, x: usize) -> NcPoly<S> {
        NcPoly::path(self.quiver.id(x))
    }

    /// The product `a_1 ∘ … ∘ a_k` of named generators; `""` is the unit of the
    /// single object.
    pub fn word(&self, names: &[&str]) -> NcPoly<S> {
        let mut p = self.id(0);
        let mut first = true;
        for n in names {
            let g = self.gen(n);
            p = if first { g } else { p.after(&g) };
            first = false;
        }
        p
    }

    /// Differential on the free algebra, without reducing by relations.
    pub fn d(&self, p: &NcPoly<S>) -> NcPoly<S> {
        leibniz(&self.quiver, &self.diff, p)
    }

    pub fn rules(&self, bound: u32) -> Rules<S> {
        if self.relations.is_empty() {
            return Rules::none();
        }
        Rules::complete(&self.quiver, &self.relations, bound)
    }

    pub fn reduce(&self, rules: &Rules<S>, p: &NcPoly<S>) -> NcPoly<S> {
        rules.reduce(&self.quiver, p)
    }

    /// Degrees, endpoints, `d² = 0` and closure of the relations under `d`,
    /// the last two modulo the relations completed up to `bound`.
    pub fn validate(&self, bound: u32) -> Result<(), PresentationError> {
        let rules = self.rules(bound);
        for (i, g) in self.quiver.gens.iter().enumerate() {
            let dx = &self.diff[i];
            if !dx.is_zero() {
                if dx.degree() != Some(g.degree + 1) {
                    return Err(PresentationError::DiffDegree { generator: g.name.clone() });
                }
                if dx.endpoints() != Some((g.src, g.tgt)) {
                    return Err(PresentationError::DiffEndpoints { generator: g.name.clone() });
                }
            }
            if !self.reduce(&rules, &self.d(dx)).is_zero() {
                return Err(PresentationError::SquareNonzero { generator: g.name.clone() });
            }
        }
        for (k, r) in self.relations.iter().enumerate() {
            if r.degree().is_none() || r.endpoints().is_none() {
                return Err(PresentationError::RelationNotHomogeneous { index: k });
            }
            if !self.reduce(&rules, &self.d(r)).is_zero() {
                return Err(PresentationError::RelationNotClosed { index: k });
            }
        }
        Ok(())
    }

    /// Whether `p` is a combination of products `u ∘ r ∘ v` of relations with
    /// arbitrary words, all of weight at most `cap`. Plain linear algebra
    /// over free words, independent of the rewriting system.
    pub fn ideal_span_contains(&self, p: &NcPoly<S>, cap: u32) -> bool {
        if p.is_zero() {
            return true;
        }
        let Some(deg) = p.degree() else { return false };
        let Some((ps, pt)) = p.endpoints() else { return false };
        let q = &self.quiver;
        let mut words: Vec<Path> = (0..q.objects.len()).map(|x| q.id(x)).collect();
        let mut frontier = words.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for (a, g) in q.gens.iter().enumerate() {
                    if g.src == w.tgt && w.weight + g.weight <= cap {
                        next.push(q.arrow(a).after(w).expect("composable"));
                    }
                }
            }
            words.extend(next.iter().cloned());
            frontier = next;
        }
        let mut index: HashMap<Path, usize> = HashMap::new();
        let mut vectors: Vec<Vec<(usize, S)>> = Vec::new();
        for r in &self.relations {
            let (Some(rd), Some((rs, rt))) = (r.degree(), r.endpoints()) else { continue };
            let rw = r.max_weight();
            for u in words.iter().filter(|u| u.src == rt && u.tgt == pt) {
                for v in words.iter().filter(|v| v.tgt == rs && v.src == ps) {
                    if u.weight + rw + v.weight > cap || u.degree + rd + v.degree != deg {
                        continue;
                    }
                    let prod = NcPoly::path(u.clone()).after(r).after(&NcPoly::path(v.clone()));
                    let mut vec = Vec::new();
                    for (t, c) in &prod.terms {
                        let n = index.len();
                        vec.push((*index.entry(t.clone()).or_insert(n), c.clone()));
                    }
                    vectors.push(vec);
                }
            }
        }
        let mut target = Vec::new();
        for (t, c) in &p.terms {
            let Some(&i) = index.get(t) else { return false };
            target.push((i, c.clone()));
        }
        let n = index.len();
        let dense = |v: &[(usize, S)]| {
            let mut out = vec![S::zero(); n];
            for (i, c) in v {
                out[*i] = out[*i].clone() + c.clone();
            }
            out
        };
        let span: Vec<Vec<S>> = vectors.iter().map(|v| dense(v)).collect();
        crate::linalg::span_coefficients(n, &span, &dense(&target)).is_some()
    }

    /// Greedy layering by differential dependencies.
    pub fn semi_free_witness(&self) -> Result<SemiFreenessWitness, NotSemiFree> {
        if !self.relations.is_empty() {
            return Err(NotSemiFree::HasRelations);
        }
        let n = self.quiver.gens.len();
        let deps: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                let mut v: Vec<usize> = self.diff[x].terms.keys().flat_map(|t| t.word.iter().copied()).collect();
                v.sort();
                v.dedup();
                v
            })
            .collect();
        let mut layer: Vec<Option<usize>> = vec![None; n];
        let mut remaining: Vec<usize> = (0..n).collect();
        while !remaining.is_empty() {
            let ready: Vec<usize> = remaining.iter().copied().filter(|&x| deps[x].iter().all(|&y| layer[y].is_some())).collect();
            if ready.is_empty() {
                return Err(NotSemiFree::Cycle(find_cycle(&deps, &remaining)));
            }
            for &x in &ready {
                layer[x] = Some(deps[x].iter().map(|&y| layer[y].unwrap() + 1).max().unwrap_or(0));
            }
            remaining.retain(|x| !ready.contains(x));
        }
        let depth = layer.iter().map(|l| l.unwrap() + 1).max().unwrap_or(0);
        let mut layers = vec![Vec::new(); depth];
        for (x, l) in layer.iter().enumerate() {
            layers[l.unwrap()].push(x);
        }
        Ok(SemiFreenessWitness { layers })
    }

    /// Resets generator weights so that `d` never raises weight: each weight
    /// is the largest weight of a word in its differential, and at least one.
    /// Relations are ignored; returns false when the dependencies are cyclic.
    pub fn set_filtration_weights(&mut self) -> bool {
        let free = Presentation { quiver: self.quiver.clone(), diff: self.diff.clone(), relations: Vec::new() };
        let Ok(w) = free.semi_free_witness() else { return false };
        for layer in &w.layers {
            for &x in layer {
                let wt = self.diff[x]
                    .terms
                    .keys()
                    .map(|t| t.word.iter().map(|&a| self.quiver.gens[a].weight).sum::<u32>())
                    .max()
                    .unwrap_or(0)
                    .max(1);
                self.quiver.gens[x].weight = wt;
            }
        }
        let q = self.quiver.clone();
        let fix = |p: &NcPoly<S>| -> NcPoly<S> {
            let mut out = NcPoly::zero();
            for (t, c) in &p.terms {
                let path = if t.word.is_empty() { t.clone() } else { q.path(&t.word).expect("composable") };
                out.add_term(path, c.clone());
            }
            out
        };
        self.diff = self.diff.iter().map(&fix).collect();
        self.relations = self.relations.iter().map(&fix).collect();
        true
    }

    /// Normal words of weight at most `cap` and degree in `lo..=hi`, and
    /// whether some normal word cut off by the cap could still extend to a
    /// word of degree in the window.
    pub fn normal_words(&self, rules: &Rules<S>, lo: i64, hi: i64, cap: u32) -> (Vec<Path>, bool) {
        let q = &self.quiver;
        let mut out = Vec::new();
        let mut cut = false;
        let gmin = q.gens.iter().map(|g| g.degree).min().unwrap_or(0);
        let gmax = q.gens.iter().map(|g| g.degree).max().unwrap_or(0);
        let reaches = |e: i64| (e >= lo && e <= hi) || (e > hi && gmin < 0) || (e < lo && gmax > 0);
        let mut stack: Vec<Path> = (0..q.objects.len()).map(|x| q.id(x)).collect();
        while let Some(p) = stack.pop() {
            if p.degree >= lo && p.degree <= hi {
                out.push(p.clone());
            }
            for (a, g) in q.gens.iter().enumerate() {
                if g.tgt != p.src {
                    continue;
                }
                let mut word = p.word.clone();
                word.push(a);
                if !rules.suffix_normal(&word) {
                    continue;
                }
                if p.weight + g.weight > cap {
                    cut |= reaches(p.degree + g.degree);
                    continue;
                }
                stack.push(Path { src: g.src, tgt: p.tgt, degree: p.degree + g.degree, weight: p.weight + g.weight, word });
            }
        }
        out.sort_by(|a, b| (a.src, a.tgt, a.degree).cmp(&(b.src, b.tgt, b.degree)).then(a.cmp(b)));
        (out, cut)
    }

    /// Windowed concrete data: normal words of weight at most `cap` with degree
    /// in `lo..=hi`, products of pairs whose weights sum to at most `cap`.
    pub fn truncate(&self, lo: i64, hi: i64, cap: u32) -> (ConcreteDgCat<S>, TruncationReport) {
        let rules = self.rules(cap);
        let (words, cut) = self.normal_words(&rules, lo, hi, cap);
        let (all, unbounded) = self.normal_words(&rules, i64::MIN / 4, i64::MAX / 4, cap);
        let finite = !unbounded;
        let supported = finite && all.len() == words.len();
        let index: HashMap<Path, usize> = words.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut report = TruncationReport { incomplete: cut, relations_unresolved: !rules.complete, ..Default::default() };
        let express = |p: &NcPoly<S>, report: &mut TruncationReport| -> Elem<S> {
            let mut e = Elem::new();
            for (t, c) in &p.terms {
                match index.get(t) {
                    Some(&i) => {
                        e.insert(i, c.clone());
                    }
                    None if t.degree >= lo && t.degree <= hi => report.inexact_differential = true,
                    None => {}
                }
            }
            e
        };
        let diff: Vec<Elem<S>> = words.iter().map(|w| express(&self.reduce(&rules, &self.d(&NcPoly::path(w.clone()))), &mut report)).collect();
        let mut mult = HashMap::new();
        for (i, a) in words.iter().enumerate() {
            for (j, b) in words.iter().enumerate() {
                if a.src != b.tgt || a.weight + b.weight > cap {
                    continue;
                }
                let n = a.degree + b.degree;
                if n < lo || n > hi {
                    continue;
                }
                let ab = NcPoly::path(a.after(b).unwrap());
                let mut sink = TruncationReport::default();
                mult.insert((i, j), express(&self.reduce(&rules, &ab), &mut sink));
            }
        }
        let identity = (0..self.quiver.objects.len())
            .map(|x| {
                let mut sink = TruncationReport::default();
                express(&self.reduce(&rules, &self.id(x)), &mut sink)
            })
            .collect();
        let basis = words
            .iter()
            .map(|w| BasisElem { src: w.src, tgt: w.tgt, degree: w.degree, weight: w.weight, label: self.quiver.render_path(w), path: Some(w.clone()) })
            .collect();
        let c = ConcreteDgCat::new(self.quiver.objects.clone(), lo, hi, if finite { None } else { Some(cap) }, supported, basis, diff, mult, identity);
        (c, report)
    }
}

fn find_cycle(deps: &[Vec<usize>], remaining: &[usize]) -> Vec<usize> {
    let start = remaining[0];
    let mut seen = vec![start];
    let mut cur = start;
    loop {
        let next = *deps[cur].iter().find(|y| remaining.contains(y)).expect("stuck generator depends on a stuck one");
        if let Some(k) = seen.iter().position(|&s| s == next) {
            return seen[k..].to_vec();
        }
        seen.push(next);
        cur = next;
    }
}
