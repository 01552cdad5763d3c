//! Exhaustive, deterministically ordered enumeration of functors and
//! natural transformations.

use super::fincat::FinCat;
use super::functor::{Functor, NatTransf};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GuardExceeded {
    pub limit: usize,
}

impl fmt::Display for GuardExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "enumeration guard of {} exceeded", self.limit)
    }
}

impl std::error::Error for GuardExceeded {}

pub const DEFAULT_GUARD: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Stop,
}

/// Composition constraints of the source, grouped by the position at which
/// all three morphisms of a triple become assigned.
struct Plan {
    order: Vec<usize>,
    checks: Vec<Vec<(usize, usize, usize)>>,
}

fn plan(c: &FinCat) -> Plan {
    let order: Vec<usize> = (0..c.num_morphisms()).filter(|&f| !c.is_identity(f)).collect();
    let mut pos = vec![None; c.num_morphisms()];
    for (k, &f) in order.iter().enumerate() {
        pos[f] = Some(k);
    }
    let mut checks = vec![Vec::new(); order.len()];
    for &g in &order {
        for &f in &order {
            if let Some(h) = c.try_comp(g, f) {
                let k = [pos[g], pos[f], pos[h]].into_iter().flatten().max().unwrap();
                checks[k].push((g, f, h));
            }
        }
    }
    Plan { order, checks }
}

/// Visits every functor `c → d` whose object and morphism assignments pass
/// the filters, in lexicographic order of (object map, morphism map).
pub fn search_functors(
    c: &FinCat,
    d: &FinCat,
    obj_ok: &dyn Fn(usize, usize) -> bool,
    mor_ok: &dyn Fn(usize, usize) -> bool,
    visit: &mut dyn FnMut(&[usize], &[usize]) -> Flow,
) {
    FunctorSearch::new(c, d).run(obj_ok, mor_ok, visit);
}

/// A functor search with its constraint plan computed once, for repeated
/// runs under different filters.
pub struct FunctorSearch<'a> {
    c: &'a FinCat,
    d: &'a FinCat,
    plan: Plan,
}

impl<'a> FunctorSearch<'a> {
    pub fn new(c: &'a FinCat, d: &'a FinCat) -> Self {
        FunctorSearch { c, d, plan: plan(c) }
    }

    /// Same order and semantics as [`search_functors`]; returns whether the
    /// visitor stopped the search.
    pub fn run(
        &self,
        obj_ok: &dyn Fn(usize, usize) -> bool,
        mor_ok: &dyn Fn(usize, usize) -> bool,
        visit: &mut dyn FnMut(&[usize], &[usize]) -> Flow,
    ) -> Flow {
        let mut obj = vec![0usize; self.c.num_objects()];
        let mut mor = vec![0usize; self.c.num_morphisms()];
        assign_objects(self.c, self.d, &self.plan, 0, &mut obj, &mut mor, obj_ok, mor_ok, visit)
    }
}

#[allow(clippy::too_many_arguments)]
fn assign_objects(
    c: &FinCat,
    d: &FinCat,
    p: &Plan,
    x: usize,
    obj: &mut Vec<usize>,
    mor: &mut Vec<usize>,
    obj_ok: &dyn Fn(usize, usize) -> bool,
    mor_ok: &dyn Fn(usize, usize) -> bool,
    visit: &mut dyn FnMut(&[usize], &[usize]) -> Flow,
) -> Flow {
    if x == c.num_objects() {
        for y in 0..c.num_objects() {
            if !mor_ok(c.id(y), d.id(obj[y])) {
                return Flow::Continue;
            }
            mor[c.id(y)] = d.id(obj[y]);
        }
        let candidates: Vec<Vec<usize>> = p
            .order
            .iter()
            .map(|&f| d.hom(obj[c.dom(f)], obj[c.cod(f)]).iter().copied().filter(|&g| mor_ok(f, g)).collect())
            .collect();
        if candidates.iter().any(|v| v.is_empty()) {
            return Flow::Continue;
        }
        return assign_morphisms(d, p, 0, &candidates, obj, mor, visit);
    }
    for y in 0..d.num_objects() {
        if !obj_ok(x, y) {
            continue;
        }
        obj[x] = y;
        if assign_objects(c, d, p, x + 1, obj, mor, obj_ok, mor_ok, visit) == Flow::Stop {
            return Flow::Stop;
        }
    }
    Flow::Continue
}

fn assign_morphisms(
    d: &FinCat,
    p: &Plan,
    k: usize,
    candidates: &[Vec<usize>],
    obj: &[usize],
    mor: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize], &[usize]) -> Flow,
) -> Flow {
    if k == p.order.len() {
        return visit(obj, mor);
    }
    let f = p.order[k];
    'cand: for &g in &candidates[k] {
        mor[f] = g;
        for &(a, b, h) in &p.checks[k] {
            if d.comp(mor[a], mor[b]) != mor[h] {
                continue 'cand;
            }
        }
        if assign_morphisms(d, p, k + 1, candidates, obj, mor, visit) == Flow::Stop {
            return Flow::Stop;
        }
    }
    Flow::Continue
}

/// All functors `c → d`, failing once more than `guard` are found.
pub fn enumerate_functors(c: &Arc<FinCat>, d: &Arc<FinCat>, guard: usize) -> Result<Vec<Functor>, GuardExceeded> {
    enumerate_functors_where(c, d, &|_, _| true, &|_, _| true, guard)
}

pub fn enumerate_functors_where(
    c: &Arc<FinCat>,
    d: &Arc<FinCat>,
    obj_ok: &dyn Fn(usize, usize) -> bool,
    mor_ok: &dyn Fn(usize, usize) -> bool,
    guard: usize,
) -> Result<Vec<Functor>, GuardExceeded> {
    let mut out = Vec::new();
    let mut exceeded = false;
    search_functors(c, d, obj_ok, mor_ok, &mut |o, m| {
        if out.len() >= guard {
            exceeded = true;
            return Flow::Stop;
        }
        out.push(Functor::new_unchecked(c.clone(), d.clone(), o.to_vec(), m.to_vec()));
        Flow::Continue
    });
    if exceeded {
        Err(GuardExceeded { limit: guard })
    } else {
        Ok(out)
    }
}

pub fn count_functors(c: &FinCat, d: &FinCat) -> usize {
    let mut n = 0;
    search_functors(c, d, &|_, _| true, &|_, _| true, &mut |_, _| {
        n += 1;
        Flow::Continue
    });
    n
}

/// First functor passing the filters, if any.
pub fn find_functor(
    c: &Arc<FinCat>,
    d: &Arc<FinCat>,
    obj_ok: &dyn Fn(usize, usize) -> bool,
    mor_ok: &dyn Fn(usize, usize) -> bool,
) -> Option<Functor> {
    let mut found = None;
    search_functors(c, d, obj_ok, mor_ok, &mut |o, m| {
        found = Some(Functor::new_unchecked(c.clone(), d.clone(), o.to_vec(), m.to_vec()));
        Flow::Stop
    });
    found
}

/// Visits natural transformations `f ⇒ g`; with `iso_only` the components
/// are restricted to isomorphisms.
pub fn search_nat_transfs(f: &Functor, g: &Functor, iso_only: bool, visit: &mut dyn FnMut(&[usize]) -> Flow) {
    assert!(f.parallel(g), "natural transformations need parallel functors");
    let (c, d) = (&*f.source, &*f.target);
    let n = c.num_objects();
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for m in 0..c.num_morphisms() {
        if c.is_identity(m) {
            continue;
        }
        checks[c.dom(m).max(c.cod(m))].push(m);
    }
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|x| d.hom(f.obj[x], g.obj[x]).iter().copied().filter(|&e| !iso_only || d.is_iso(e)).collect())
        .collect();
    let mut comps = vec![0usize; n];
    fn rec(
        x: usize,
        comps: &mut Vec<usize>,
        candidates: &[Vec<usize>],
        checks: &[Vec<usize>],
        c: &FinCat,
        d: &FinCat,
        f: &Functor,
        g: &Functor,
        visit: &mut dyn FnMut(&[usize]) -> Flow,
    ) -> Flow {
        if x == comps.len() {
            return visit(comps);
        }
        'cand: for &e in &candidates[x] {
            comps[x] = e;
            for &m in &checks[x] {
                let (a, b) = (c.dom(m), c.cod(m));
                if d.comp(g.mor[m], comps[a]) != d.comp(comps[b], f.mor[m]) {
                    continue 'cand;
                }
            }
            if rec(x + 1, comps, candidates, checks, c, d, f, g, visit) == Flow::Stop {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }
    rec(0, &mut comps, &candidates, &checks, c, d, f, g, visit);
}

pub fn find_nat_iso(f: &Functor, g: &Functor) -> Option<NatTransf> {
    let mut found = None;
    search_nat_transfs(f, g, true, &mut |comps| {
        found = Some(NatTransf { from: f.clone(), to: g.clone(), components: comps.to_vec() });
        Flow::Stop
    });
    found
}

pub fn enumerate_nat_transfs(f: &Functor, g: &Functor, iso_only: bool) -> Vec<NatTransf> {
    let mut out = Vec::new();
    search_nat_transfs(f, g, iso_only, &mut |comps| {
        out.push(NatTransf { from: f.clone(), to: g.clone(), components: comps.to_vec() });
        Flow::Continue
    });
    out
}
