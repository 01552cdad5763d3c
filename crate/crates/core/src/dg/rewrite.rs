use super::poly::{NcPoly, Path, Quiver};
use crate::Scalar;
use std::collections::HashSet;

/// `lead → tail` with `tail` strictly smaller than `lead`.
#[derive(Clone, Debug)]
pub struct Rule<S> {
    pub lead: Path,
    pub tail: NcPoly<S>,
}

/// A rewriting system for a two-sided ideal of a path algebra, completed by
/// resolving overlaps up to a weight bound. When `complete` is false some
/// overlap above the bound was left unresolved, so normal forms are only
/// trustworthy below it.
#[derive(Clone, Debug)]
pub struct Rules<S> {
    pub rules: Vec<Rule<S>>,
    pub complete: bool,
}

impl<S: Scalar> Default for Rules<S> {
    fn default() -> Self {
        Rules::none()
    }
}

fn find_sub(word: &[usize], pat: &[usize]) -> Option<usize> {
    if pat.is_empty() || pat.len() > word.len() {
        return None;
    }
    (0..=word.len() - pat.len()).find(|&i| &word[i..i + pat.len()] == pat)
}

impl<S: Scalar> Rules<S> {
    pub fn none() -> Self {
        Rules { rules: Vec::new(), complete: true }
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    fn find(&self, word: &[usize]) -> Option<(usize, usize)> {
        self.rules.iter().enumerate().find_map(|(i, r)| find_sub(word, &r.lead.word).map(|pos| (i, pos)))
    }

    pub fn is_normal(&self, word: &[usize]) -> bool {
        self.find(word).is_none()
    }

    /// True when no rule matches a suffix of `word`; enough to keep words
    /// normal when they are grown one letter at a time.
    pub fn suffix_normal(&self, word: &[usize]) -> bool {
        self.rules.iter().all(|r| !word.ends_with(&r.lead.word) || r.lead.word.is_empty())
    }

    pub fn reduce(&self, q: &Quiver, p: &NcPoly<S>) -> NcPoly<S> {
        if self.rules.is_empty() {
            return p.clone();
        }
        let mut work = p.clone();
        let mut out = NcPoly::zero();
        while let Some((m, c)) = work.terms.pop_last() {
            match self.find(&m.word) {
                Some((ri, pos)) => {
                    let r = &self.rules[ri];
                    for (t, k) in &r.tail.terms {
                        work.add_term(q.splice(&m, pos, r.lead.word.len(), t), k.clone() * c.clone());
                    }
                }
                None => out.add_term(m, c),
            }
        }
        out
    }

    fn monic(p: &NcPoly<S>) -> Rule<S> {
        let (lead, c) = p.leading().expect("nonzero");
        let (lead, c) = (lead.clone(), c.clone());
        let mut tail = p.clone();
        tail.terms.remove(&lead);
        Rule { lead, tail: tail.scale(&(-S::one() / c)) }
    }

    fn insert(&mut self, q: &Quiver, p: NcPoly<S>, pending: &mut Vec<NcPoly<S>>) {
        let p = self.reduce(q, &p);
        if p.is_zero() {
            return;
        }
        let rule = Self::monic(&p);
        let mut kept = Vec::new();
        for r in self.rules.drain(..) {
            if find_sub(&r.lead.word, &rule.lead.word).is_some() {
                pending.push(NcPoly::path(r.lead.clone()).sub(&r.tail));
            } else {
                kept.push(r);
            }
        }
        self.rules = kept;
        self.rules.push(rule);
        let snapshot = self.clone();
        for r in &mut self.rules {
            r.tail = snapshot.reduce(q, &r.tail);
        }
    }

    /// Completes the relations by resolving overlaps of leading words
    /// whose total weight is at most `bound`.
    pub fn complete(q: &Quiver, relations: &[NcPoly<S>], bound: u32) -> Rules<S> {
        let mut rs = Rules::none();
        let mut pending: Vec<NcPoly<S>> = relations.iter().rev().cloned().collect();
        let mut seen: HashSet<(Vec<usize>, Vec<usize>, usize)> = HashSet::new();
        for _ in 0..10_000 {
            while let Some(p) = pending.pop() {
                rs.insert(q, p, &mut pending);
            }
            let mut found = None;
            'pairs: for a in &rs.rules {
                for b in &rs.rules {
                    let (x, y) = (&a.lead.word, &b.lead.word);
                    for k in 1..x.len().min(y.len()) {
                        if x[x.len() - k..] != y[..k] {
                            continue;
                        }
                        if !seen.insert((x.clone(), y.clone(), k)) {
                            continue;
                        }
                        let mut word = x.clone();
                        word.extend_from_slice(&y[k..]);
                        let Some(w) = q.path(&word) else { continue };
                        if w.weight > bound {
                            rs.complete = false;
                            continue;
                        }
                        let mut s = NcPoly::zero();
                        for (t, c) in &a.tail.terms {
                            s.add_term(q.splice(&w, 0, x.len(), t), c.clone());
                        }
                        for (t, c) in &b.tail.terms {
                            s.add_term(q.splice(&w, x.len() - k, y.len(), t), -c.clone());
                        }
                        let s = rs.reduce(q, &s);
                        if !s.is_zero() {
                            found = Some(s);
                            break 'pairs;
                        }
                    }
                }
            }
            match found {
                Some(s) => pending.push(s),
                None => return rs,
            }
        }
        rs.complete = false;
        rs
    }
}
