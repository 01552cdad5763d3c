//! Diagrams of finite categories and their limits.

use super::constructions::terminal;
use super::enumerate::{enumerate_functors, search_functors, Flow, GuardExceeded};
use super::fincat::{FinCat, Morphism};
use super::functor::Functor;
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct CatDiagram {
    pub shape: Arc<FinCat>,
    pub nodes: Vec<Arc<FinCat>>,
    /// One functor per morphism of the shape.
    pub edges: Vec<Functor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramError {
    Arity,
    EdgeEndpoints(String),
    NotFunctorial(String),
}

impl std::fmt::Display for DiagramError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DiagramError::Arity => write!(f, "diagram needs one node per shape object and one edge per shape morphism"),
            DiagramError::EdgeEndpoints(m) => write!(f, "edge for `{m}` has wrong source or target"),
            DiagramError::NotFunctorial(m) => write!(f, "diagram is not functorial at `{m}`"),
        }
    }
}

impl std::error::Error for DiagramError {}

impl CatDiagram {
    pub fn new(shape: Arc<FinCat>, nodes: Vec<Arc<FinCat>>, edges: Vec<Functor>) -> Result<CatDiagram, DiagramError> {
        let d = CatDiagram { shape, nodes, edges };
        d.check()?;
        Ok(d)
    }

    /// Diagram on a shape given only by its non-identity generators; every
    /// other edge is filled in by composition. Identity edges are identities.
    pub fn from_parallel_pair(a: Arc<FinCat>, b: Arc<FinCat>, f: Functor, g: Functor) -> CatDiagram {
        let shape = Arc::new(super::constructions::parallel_arrows(2));
        // Shape objects: 0 receives the arrows, 1 is their source.
        let edges = vec![Functor::identity(&b), Functor::identity(&a), f, g];
        CatDiagram { shape, nodes: vec![b, a], edges }
    }

    pub fn discrete(nodes: Vec<Arc<FinCat>>) -> CatDiagram {
        let shape = Arc::new(super::constructions::discrete(nodes.len()));
        let edges = nodes.iter().map(Functor::identity).collect();
        CatDiagram { shape, nodes, edges }
    }

    /// Span `b ← a → c` indexed by objects `0 = a`, `1 = b`, `2 = c`.
    pub fn span(a: Arc<FinCat>, b: Arc<FinCat>, c: Arc<FinCat>, f: Functor, g: Functor) -> CatDiagram {
        let shape = Arc::new(
            FinCat::from_names(
                &["a", "b", "c"],
                &[("Id_a", "a", "a"), ("Id_b", "b", "b"), ("Id_c", "c", "c"), ("l", "a", "b"), ("r", "a", "c")],
                &[("a", "Id_a"), ("b", "Id_b"), ("c", "Id_c")],
                &[],
            )
            .unwrap(),
        );
        let edges = vec![Functor::identity(&a), Functor::identity(&b), Functor::identity(&c), f, g];
        CatDiagram { shape, nodes: vec![a, b, c], edges }
    }

    /// Cospan `b → a ← c` indexed by objects `0 = a`, `1 = b`, `2 = c`.
    pub fn cospan(a: Arc<FinCat>, b: Arc<FinCat>, c: Arc<FinCat>, f: Functor, g: Functor) -> CatDiagram {
        let shape = Arc::new(
            FinCat::from_names(
                &["a", "b", "c"],
                &[("Id_a", "a", "a"), ("Id_b", "b", "b"), ("Id_c", "c", "c"), ("l", "b", "a"), ("r", "c", "a")],
                &[("a", "Id_a"), ("b", "Id_b"), ("c", "Id_c")],
                &[],
            )
            .unwrap(),
        );
        let edges = vec![Functor::identity(&a), Functor::identity(&b), Functor::identity(&c), f, g];
        CatDiagram { shape, nodes: vec![a, b, c], edges }
    }

    pub fn check(&self) -> Result<(), DiagramError> {
        let s = &*self.shape;
        if self.nodes.len() != s.num_objects() || self.edges.len() != s.num_morphisms() {
            return Err(DiagramError::Arity);
        }
        for a in 0..s.num_morphisms() {
            let e = &self.edges[a];
            if *e.source != *self.nodes[s.dom(a)] || *e.target != *self.nodes[s.cod(a)] {
                return Err(DiagramError::EdgeEndpoints(s.mor_name(a).to_string()));
            }
            if s.is_identity(a) && *e != Functor::identity(&self.nodes[s.dom(a)]) {
                return Err(DiagramError::NotFunctorial(s.mor_name(a).to_string()));
            }
        }
        for b in 0..s.num_morphisms() {
            for a in 0..s.num_morphisms() {
                if let Some(ba) = s.try_comp(b, a) {
                    let composed = self.edges[a].then(&self.edges[b]);
                    if composed.obj != self.edges[ba].obj || composed.mor != self.edges[ba].mor {
                        return Err(DiagramError::NotFunctorial(s.mor_name(ba).to_string()));
                    }
                }
            }
        }
        Ok(())
    }
}

fn tuple_name(parts: &[&str]) -> String {
    format!("({})", parts.join(","))
}

/// Compatible tuples: `pick(λ)` ranges over `choices(λ)` with every edge
/// mapping the λ-entry to the μ-entry.
fn compatible_tuples(d: &CatDiagram, choices: &dyn Fn(usize) -> Vec<usize>, apply: &dyn Fn(&Functor, usize) -> usize) -> Vec<Vec<usize>> {
    let s = &*d.shape;
    let n = s.num_objects();
    let mut checks = vec![Vec::new(); n];
    for a in 0..s.num_morphisms() {
        if !s.is_identity(a) {
            checks[s.dom(a).max(s.cod(a))].push(a);
        }
    }
    let opts: Vec<Vec<usize>> = (0..n).map(choices).collect();
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(
        k: usize,
        cur: &mut Vec<usize>,
        opts: &[Vec<usize>],
        checks: &[Vec<usize>],
        d: &CatDiagram,
        apply: &dyn Fn(&Functor, usize) -> usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        'o: for &x in &opts[k] {
            cur[k] = x;
            for &a in &checks[k] {
                let (l, m) = (d.shape.dom(a), d.shape.cod(a));
                if apply(&d.edges[a], cur[l]) != cur[m] {
                    continue 'o;
                }
            }
            rec(k + 1, cur, opts, checks, d, apply, out);
        }
    }
    rec(0, &mut cur, &opts, &checks, d, apply, &mut out);
    out
}

pub struct Limit {
    pub category: Arc<FinCat>,
    pub projections: Vec<Functor>,
}

/// Limit as compatible object and morphism tuples.
pub fn limit(d: &CatDiagram) -> Limit {
    let n = d.nodes.len();
    let objs = compatible_tuples(d, &|l| (0..d.nodes[l].num_objects()).collect(), &|e, x| e.obj[x]);
    let mors = compatible_tuples(d, &|l| (0..d.nodes[l].num_morphisms()).collect(), &|e, f| e.mor[f]);
    let obj_index: HashMap<Vec<usize>, usize> = objs.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
    let mor_index: HashMap<Vec<usize>, usize> = mors.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let objects = objs
        .iter()
        .map(|t| tuple_name(&(0..n).map(|l| d.nodes[l].object_name(t[l])).collect::<Vec<_>>()))
        .collect();
    let morphisms = mors
        .iter()
        .map(|t| {
            let dom: Vec<usize> = (0..n).map(|l| d.nodes[l].dom(t[l])).collect();
            let cod: Vec<usize> = (0..n).map(|l| d.nodes[l].cod(t[l])).collect();
            Morphism {
                id: tuple_name(&(0..n).map(|l| d.nodes[l].mor_name(t[l])).collect::<Vec<_>>()),
                dom: obj_index[&dom],
                cod: obj_index[&cod],
            }
        })
        .collect();
    let identity = objs
        .iter()
        .map(|t| mor_index[&(0..n).map(|l| d.nodes[l].id(t[l])).collect::<Vec<_>>()])
        .collect();
    let cat = FinCat::from_fn(objects, morphisms, identity, |g, f| {
        mor_index[&(0..n).map(|l| d.nodes[l].comp(mors[g][l], mors[f][l])).collect::<Vec<_>>()]
    })
    .expect("limit of categories is a category");
    let cat = Arc::new(if n == 0 { terminal_named() } else { cat });
    let projections = (0..n)
        .map(|l| {
            Functor::new_unchecked(cat.clone(), d.nodes[l].clone(), objs.iter().map(|t| t[l]).collect(), mors.iter().map(|t| t[l]).collect())
        })
        .collect();
    Limit { category: cat, projections }
}

fn terminal_named() -> FinCat {
    let t = terminal();
    FinCat::from_fn(vec!["()".into()], vec![Morphism { id: "()".into(), dom: 0, cod: 0 }], vec![0], |_, _| 0).unwrap_or(t)
}

/// Cones over `d` with apex `t`, found by brute force over leg families.
pub fn enumerate_cones(d: &CatDiagram, t: &Arc<FinCat>, guard: usize) -> Result<Vec<Vec<Functor>>, GuardExceeded> {
    let legs: Vec<Vec<Functor>> = d.nodes.iter().map(|node| enumerate_functors(t, node, guard)).collect::<Result<_, _>>()?;
    let s = &*d.shape;
    let mut out = Vec::new();
    let mut cur: Vec<usize> = vec![0; legs.len()];
    fn rec(k: usize, cur: &mut Vec<usize>, legs: &[Vec<Functor>], d: &CatDiagram, s: &FinCat, out: &mut Vec<Vec<Functor>>) {
        if k == legs.len() {
            let family: Vec<Functor> = cur.iter().enumerate().map(|(l, &i)| legs[l][i].clone()).collect();
            let ok = (0..s.num_morphisms()).all(|a| {
                let composed = family[s.dom(a)].then(&d.edges[a]);
                composed.obj == family[s.cod(a)].obj && composed.mor == family[s.cod(a)].mor
            });
            if ok {
                out.push(family);
            }
            return;
        }
        for i in 0..legs[k].len() {
            cur[k] = i;
            rec(k + 1, cur, legs, d, s, out);
        }
    }
    rec(0, &mut cur, &legs, d, s, &mut out);
    Ok(out)
}

/// Number of functors `t → L` whose composites with the projections equal
/// the given cone; the universal property demands exactly one.
pub fn mediating_count(lim: &Limit, t: &Arc<FinCat>, cone: &[Functor]) -> usize {
    let mut count = 0;
    search_functors(
        t,
        &lim.category,
        &|x, y| lim.projections.iter().zip(cone).all(|(p, leg)| p.obj[y] == leg.obj[x]),
        &|f, g| lim.projections.iter().zip(cone).all(|(p, leg)| p.mor[g] == leg.mor[f]),
        &mut |_, _| {
            count += 1;
            Flow::Continue
        },
    );
    count
}

/// Checks the universal property against every cone with apex in `apexes`.
pub fn verify_limit(d: &CatDiagram, lim: &Limit, apexes: &[Arc<FinCat>], guard: usize) -> Result<bool, GuardExceeded> {
    for t in apexes {
        for cone in enumerate_cones(d, t, guard)? {
            if mediating_count(lim, t, &cone) != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn terminal_cat() -> FinCat {
    terminal()
}
