//! Quivers, their path categories, and the free/forgetful adjunction.

use super::enumerate::{search_functors, Flow};
use super::fincat::{FinCat, Morphism};
use super::functor::Functor;
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub s: usize,
    pub t: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

/// Graded quiver: arrows carry an integer degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedQuiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub degrees: Vec<i32>,
}

impl Quiver {
    pub fn new(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
        let vs: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
        let ix = |n: &str| vs.iter().position(|v| v == n).expect("arrow endpoint is a vertex");
        let arrows = arrows.iter().map(|(id, s, t)| Arrow { id: id.to_string(), s: ix(s), t: ix(t) }).collect();
        Quiver { vertices: vs, arrows }
    }

    pub fn a2() -> Quiver {
        Quiver::new(&["1", "2"], &[("alpha", "1", "2")])
    }

    pub fn jordan() -> Quiver {
        Quiver::new(&["*"], &[("alpha", "*", "*")])
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.t] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in &self.arrows {
                if a.s == v {
                    indeg[a.t] -= 1;
                    if indeg[a.t] == 0 {
                        stack.push(a.t);
                    }
                }
            }
        }
        seen == n
    }

    /// Underlying quiver of a category: every morphism becomes an arrow.
    pub fn underlying(c: &FinCat) -> Quiver {
        Quiver {
            vertices: c.objects().to_vec(),
            arrows: c.morphisms().iter().map(|m| Arrow { id: m.id.clone(), s: m.dom, t: m.cod }).collect(),
        }
    }
}

/// A path listed in traversal order (first arrow applied first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    /// Name in composition order, e.g. `g.f` for `f` then `g`; trivial paths are `e<vertex>`.
    pub fn name(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", q.vertices[self.source]);
        }
        let parts: Vec<&str> = self.arrows.iter().rev().map(|&a| q.arrows[a].id.as_str()).collect();
        parts.join(".")
    }
}

pub struct PathCategorySlice {
    pub paths: Vec<Path>,
    /// `(g, f) ↦ g∘f` when both are paths and the composite fits the cap.
    pub table: HashMap<(usize, usize), usize>,
    /// Composable pairs whose composite is longer than the cap.
    pub overflow: Vec<(usize, usize)>,
    pub total: bool,
    pub category: Option<FinCat>,
}

/// All paths of length at most `max_len`, in order of length then arrow sequence.
pub fn path_category(q: &Quiver, max_len: usize) -> PathCategorySlice {
    let mut paths: Vec<Path> = (0..q.vertices.len()).map(|v| Path { source: v, target: v, arrows: Vec::new() }).collect();
    let mut frontier: Vec<usize> = (0..paths.len()).collect();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for &p in &frontier {
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.s != paths[p].target {
                    continue;
                }
                let mut arrows = paths[p].arrows.clone();
                arrows.push(ai);
                next.push(paths.len());
                paths.push(Path { source: paths[p].source, target: a.t, arrows });
            }
        }
        frontier = next;
    }
    let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut table = HashMap::new();
    let mut overflow = Vec::new();
    for (gi, g) in paths.iter().enumerate() {
        for (fi, f) in paths.iter().enumerate() {
            if f.target != g.source {
                continue;
            }
            let mut arrows = f.arrows.clone();
            arrows.extend(g.arrows.iter().copied());
            let h = Path { source: f.source, target: g.target, arrows };
            match index.get(&h) {
                Some(&hi) => {
                    table.insert((gi, fi), hi);
                }
                None => overflow.push((gi, fi)),
            }
        }
    }
    let total = q.is_acyclic() && overflow.is_empty() && frontier.is_empty();
    let category = if total {
        let morphisms = paths.iter().map(|p| Morphism { id: p.name(q), dom: p.source, cod: p.target }).collect();
        let identity = (0..q.vertices.len()).collect();
        Some(FinCat::from_fn(q.vertices.clone(), morphisms, identity, |g, f| table[&(g, f)]).expect("path category"))
    } else {
        None
    };
    PathCategorySlice { paths, table, overflow, total, category }
}

/// The full path category of an acyclic quiver.
pub fn free_category(q: &Quiver) -> Option<FinCat> {
    if !q.is_acyclic() {
        return None;
    }
    path_category(q, q.vertices.len()).category
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionWitness {
    pub functors: usize,
    pub quiver_maps: usize,
    /// Restriction sends distinct functors to distinct quiver maps.
    pub injective: bool,
    /// Every quiver map extends to a functor.
    pub surjective: bool,
}

impl AdjunctionWitness {
    pub fn is_bijection(&self) -> bool {
        self.injective && self.surjective && self.functors == self.quiver_maps
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicQuiver;

/// Compares `Cat(P(Q), C)` with `Quiv(Q, U(C))` by enumerating both sides.
pub fn adjunction_check(q: &Quiver, c: &Arc<FinCat>) -> Result<AdjunctionWitness, CyclicQuiver> {
    let pq = Arc::new(free_category(q).ok_or(CyclicQuiver)?);
    let arrow_paths: Vec<usize> = (0..q.arrows.len())
        .map(|a| pq.mor_index(&Path { source: q.arrows[a].s, target: q.arrows[a].t, arrows: vec![a] }.name(q)).unwrap())
        .collect();
    let mut restrictions = Vec::new();
    search_functors(&pq, c, &|_, _| true, &|_, _| true, &mut |o, m| {
        let arrows: Vec<usize> = arrow_paths.iter().map(|&p| m[p]).collect();
        restrictions.push((o.to_vec(), arrows));
        Flow::Continue
    });
    let functors = restrictions.len();
    let mut sorted = restrictions.clone();
    sorted.sort();
    sorted.dedup();
    let injective = sorted.len() == functors;
    let maps = enumerate_quiver_maps(q, c);
    let surjective = maps.iter().all(|m| sorted.binary_search(m).is_ok());
    Ok(AdjunctionWitness { functors, quiver_maps: maps.len(), injective, surjective })
}

/// Quiver morphisms `Q → U(C)` as (vertex map, arrow map).
pub fn enumerate_quiver_maps(q: &Quiver, c: &FinCat) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    let n = q.vertices.len();
    let mut vmap = vec![0usize; n];
    fn arrows_rec(q: &Quiver, c: &FinCat, vmap: &[usize], k: usize, amap: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Vec<usize>)>) {
        if k == q.arrows.len() {
            out.push((vmap.to_vec(), amap.clone()));
            return;
        }
        let a = &q.arrows[k];
        for &f in c.hom(vmap[a.s], vmap[a.t]) {
            amap.push(f);
            arrows_rec(q, c, vmap, k + 1, amap, out);
            amap.pop();
        }
    }
    fn verts_rec(q: &Quiver, c: &FinCat, v: usize, vmap: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Vec<usize>)>) {
        if v == q.vertices.len() {
            arrows_rec(q, c, vmap, 0, &mut Vec::new(), out);
            return;
        }
        for x in 0..c.num_objects() {
            vmap[v] = x;
            verts_rec(q, c, v + 1, vmap, out);
        }
    }
    verts_rec(q, c, 0, &mut vmap, &mut out);
    out.sort();
    out
}

/// The functor `P(Q) → C` extending a quiver map, for acyclic `Q`.
pub fn extend_quiver_map(q: &Quiver, pq: &Arc<FinCat>, c: &Arc<FinCat>, vmap: &[usize], amap: &[usize]) -> Functor {
    let slice = path_category(q, q.vertices.len());
    let mor = slice
        .paths
        .iter()
        .map(|p| p.arrows.iter().fold(c.id(vmap[p.source]), |acc, &a| c.comp(amap[a], acc)))
        .collect();
    Functor::new_unchecked(pq.clone(), c.clone(), vmap.to_vec(), mor)
}
