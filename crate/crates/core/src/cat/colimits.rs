//! Colimits of finite diagrams as presentations, with a coset-enumeration
//! style saturation back to a finite category when one exists.

use super::enumerate::{enumerate_functors, search_functors, Flow, GuardExceeded};
use super::fincat::{FinCat, Morphism};
use super::functor::Functor;
use super::limits::CatDiagram;
use super::quiver::{Arrow, Path, Quiver};
use std::sync::Arc;

pub const DEFAULT_SATURATION_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    Composition,
    Identity,
    Edge,
    Given,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatPresentation {
    pub quiver: Quiver,
    pub relations: Vec<(Path, Path)>,
    pub kinds: Vec<RelationKind>,
    pub saturation_cap: usize,
}

impl CatPresentation {
    pub fn new(quiver: Quiver, relations: Vec<(Path, Path)>) -> CatPresentation {
        let kinds = vec![RelationKind::Given; relations.len()];
        CatPresentation { quiver, relations, kinds, saturation_cap: DEFAULT_SATURATION_CAP }
    }

    pub fn check(&self) -> bool {
        self.relations.iter().all(|(l, r)| l.source == r.source && l.target == r.target && self.is_path(l) && self.is_path(r))
    }

    fn is_path(&self, p: &Path) -> bool {
        let mut v = p.source;
        for &a in &p.arrows {
            if self.quiver.arrows[a].s != v {
                return false;
            }
            v = self.quiver.arrows[a].t;
        }
        v == p.target
    }

    /// Eliminates arrows that some relation equates to a path of length at
    /// most one, then drops relations that became trivial.
    pub fn reduced(&self) -> CatPresentation {
        let m = self.quiver.arrows.len();
        let mut sub: Vec<Option<Vec<usize>>> = vec![None; m];
        let normalize = |sub: &[Option<Vec<usize>>], p: &[usize]| -> Vec<usize> {
            let mut cur = p.to_vec();
            loop {
                let mut next = Vec::new();
                let mut changed = false;
                for &a in &cur {
                    match &sub[a] {
                        Some(w) => {
                            next.extend(w.iter().copied());
                            changed = true;
                        }
                        None => next.push(a),
                    }
                }
                cur = next;
                if !changed {
                    return cur;
                }
            }
        };
        loop {
            let mut changed = false;
            for (l, r) in &self.relations {
                let (l, r) = (normalize(&sub, &l.arrows), normalize(&sub, &r.arrows));
                for (a, b) in [(&l, &r), (&r, &l)] {
                    if a.len() == 1 && b.len() <= 1 && !b.contains(&a[0]) {
                        let (x, y) = (a[0], b.first().copied());
                        // Keep the smaller index when both sides are arrows.
                        match y {
                            Some(y) if y > x => sub[y] = Some(vec![x]),
                            _ => sub[x] = Some(b.clone()),
                        }
                        changed = true;
                        break;
                    }
                }
                if changed {
                    break;
                }
            }
            if !changed {
                break;
            }
        }
        let kept: Vec<usize> = (0..m).filter(|&a| sub[a].is_none()).collect();
        let mut pos = vec![usize::MAX; m];
        for (i, &a) in kept.iter().enumerate() {
            pos[a] = i;
        }
        let arrows = kept.iter().map(|&a| self.quiver.arrows[a].clone()).collect();
        let mut relations: Vec<(Path, Path)> = Vec::new();
        let mut kinds = Vec::new();
        for ((l, r), &k) in self.relations.iter().zip(&self.kinds) {
            let ln: Vec<usize> = normalize(&sub, &l.arrows).iter().map(|&a| pos[a]).collect();
            let rn: Vec<usize> = normalize(&sub, &r.arrows).iter().map(|&a| pos[a]).collect();
            if ln == rn {
                continue;
            }
            let pair = (Path { source: l.source, target: l.target, arrows: ln }, Path { source: r.source, target: r.target, arrows: rn });
            if !relations.contains(&pair) {
                relations.push(pair);
                kinds.push(k);
            }
        }
        CatPresentation {
            quiver: Quiver { vertices: self.quiver.vertices.clone(), arrows },
            relations,
            kinds,
            saturation_cap: self.saturation_cap,
        }
    }
}

/// Result of saturating a presentation.
#[derive(Clone, Debug)]
pub struct Saturation {
    /// Shortlex-minimal representative path of each class.
    pub classes: Vec<Path>,
    /// `table[c][a]`: the class of `c` followed by arrow `a`.
    pub table: Vec<Vec<Option<usize>>>,
    /// Class of each trivial path.
    pub units: Vec<usize>,
    /// Every class has every applicable arrow defined and relations hold.
    pub total: bool,
    pub category: Option<FinCat>,
}

impl Saturation {
    pub fn possibly_infinite(&self) -> bool {
        !self.total
    }

    pub fn trace(&self, c: usize, arrows: &[usize]) -> Option<usize> {
        arrows.iter().try_fold(c, |cur, &a| self.table[cur][a])
    }
}

struct Enumerator<'a> {
    q: &'a Quiver,
    rels: &'a [(Path, Path)],
    rep: Vec<Vec<usize>>,
    start: Vec<usize>,
    end: Vec<usize>,
    next: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
}

fn shortlex_less(a: &[usize], b: &[usize]) -> bool {
    (a.len(), a) < (b.len(), b)
}

impl<'a> Enumerator<'a> {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let n = self.parent[y];
            self.parent[y] = r;
            y = n;
        }
        r
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn new_class(&mut self, start: usize, end: usize, rep: Vec<usize>) -> usize {
        let id = self.rep.len();
        self.rep.push(rep);
        self.start.push(start);
        self.end.push(end);
        self.next.push(vec![None; self.q.arrows.len()]);
        self.parent.push(id);
        id
    }

    fn get(&mut self, c: usize, a: usize) -> Option<usize> {
        let t = self.next[c][a]?;
        let r = self.find(t);
        self.next[c][a] = Some(r);
        Some(r)
    }

    fn trace(&mut self, c: usize, path: &[usize]) -> Result<usize, (usize, usize)> {
        let mut cur = c;
        for (i, &a) in path.iter().enumerate() {
            match self.get(cur, a) {
                Some(t) => cur = t,
                None => return Err((cur, i)),
            }
        }
        Ok(cur)
    }

    fn coincide(&mut self, a: usize, b: usize) {
        let mut queue = vec![(a, b)];
        while let Some((x, y)) = queue.pop() {
            let (x, y) = (self.find(x), self.find(y));
            if x == y {
                continue;
            }
            let (keep, drop) = if x < y { (x, y) } else { (y, x) };
            if shortlex_less(&self.rep[drop], &self.rep[keep]) {
                self.rep[keep] = self.rep[drop].clone();
            }
            self.parent[drop] = keep;
            for arrow in 0..self.q.arrows.len() {
                if let Some(t) = self.next[drop][arrow] {
                    match self.next[keep][arrow] {
                        Some(u) => queue.push((u, t)),
                        None => self.next[keep][arrow] = Some(t),
                    }
                }
            }
        }
    }

    /// One pass of relation tracing with deductions; returns whether anything changed.
    fn close(&mut self) -> bool {
        let rels = self.rels;
        let mut changed = false;
        let mut c = 0;
        while c < self.rep.len() {
            if !self.alive(c) {
                c += 1;
                continue;
            }
            for (l, r) in rels {
                let c = self.find(c);
                if l.source != self.end[c] {
                    continue;
                }
                let (tl, tr) = (self.trace(c, &l.arrows), self.trace(c, &r.arrows));
                match (tl, tr) {
                    (Ok(x), Ok(y)) if x != y => {
                        self.coincide(x, y);
                        changed = true;
                    }
                    (Ok(x), Err((u, i))) if i + 1 == r.arrows.len() => {
                        self.next[u][r.arrows[i]] = Some(x);
                        changed = true;
                    }
                    (Err((u, i)), Ok(y)) if i + 1 == l.arrows.len() => {
                        self.next[u][l.arrows[i]] = Some(y);
                        changed = true;
                    }
                    _ => {}
                }
            }
            c += 1;
        }
        changed
    }
}

/// Enumerates classes of paths modulo the relations in shortlex order of
/// their representatives, up to `max_len` and the presentation's class cap.
pub fn saturate(p: &CatPresentation, max_len: Option<usize>) -> Saturation {
    let q = &p.quiver;
    let mut e = Enumerator { q, rels: &p.relations, rep: Vec::new(), start: Vec::new(), end: Vec::new(), next: Vec::new(), parent: Vec::new() };
    for v in 0..q.vertices.len() {
        e.new_class(v, v, Vec::new());
    }
    let mut capped = false;
    loop {
        while e.close() {}
        let alive: Vec<usize> = (0..e.rep.len()).filter(|&c| e.alive(c)).collect();
        let mut open: Vec<(usize, usize)> = Vec::new();
        for &c in &alive {
            for (a, arrow) in q.arrows.iter().enumerate() {
                if arrow.s == e.end[c] && e.next[c][a].is_none() {
                    open.push((c, a));
                }
            }
        }
        let allowed: Vec<(usize, usize)> = open.iter().copied().filter(|&(c, _)| max_len.is_none_or(|m| e.rep[c].len() < m)).collect();
        let Some(shortest) = allowed.iter().map(|&(c, _)| e.rep[c].len()).min() else { break };
        let mut room = p.saturation_cap.saturating_sub(alive.len());
        let layer: Vec<(usize, usize)> = allowed.into_iter().filter(|&(c, _)| e.rep[c].len() == shortest).collect();
        for (c, a) in layer {
            if e.next[c][a].is_some() {
                continue;
            }
            if room == 0 {
                capped = true;
                break;
            }
            let mut rep = e.rep[c].clone();
            rep.push(a);
            let start = e.start[c];
            let n = e.new_class(start, q.arrows[a].t, rep);
            e.next[c][a] = Some(n);
            room -= 1;
        }
        if capped {
            while e.close() {}
            break;
        }
    }
    let alive: Vec<usize> = (0..e.rep.len()).filter(|&c| e.alive(c)).collect();
    let mut pos = vec![usize::MAX; e.rep.len()];
    let mut order = alive.clone();
    order.sort_by(|&a, &b| (e.start[a], e.rep[a].len(), &e.rep[a]).cmp(&(e.start[b], e.rep[b].len(), &e.rep[b])));
    for (i, &c) in order.iter().enumerate() {
        pos[c] = i;
    }
    let mut table = Vec::with_capacity(order.len());
    let mut total = true;
    for &c in &order {
        let mut row = Vec::with_capacity(q.arrows.len());
        for (a, arrow) in q.arrows.iter().enumerate() {
            let t = e.get(c, a).map(|t| pos[t]);
            if arrow.s == e.end[c] && t.is_none() {
                total = false;
            }
            row.push(t);
        }
        table.push(row);
    }
    let classes: Vec<Path> = order.iter().map(|&c| Path { source: e.start[c], target: e.end[c], arrows: e.rep[c].clone() }).collect();
    let units: Vec<usize> = (0..q.vertices.len()).map(|v| pos[e.find(v)]).collect();
    let mut sat = Saturation { classes, table, units, total, category: None };
    if total {
        sat.category = Some(category_of(q, &sat));
    }
    sat
}

fn category_of(q: &Quiver, sat: &Saturation) -> FinCat {
    let morphisms = sat.classes.iter().map(|p| Morphism { id: p.name(q), dom: p.source, cod: p.target }).collect();
    FinCat::from_fn(q.vertices.clone(), morphisms, sat.units.clone(), |g, f| {
        sat.trace(f, &sat.classes[g].arrows).expect("saturated table is total")
    })
    .expect("saturated presentation is a category")
}

pub struct Colimit {
    pub presentation: CatPresentation,
    pub saturation: Saturation,
    /// Class of each node object.
    pub object_class: Vec<Vec<usize>>,
    /// Arrow of the presentation for each node morphism.
    pub arrow_of: Vec<Vec<usize>>,
    pub category: Option<Arc<FinCat>>,
    pub injections: Option<Vec<Functor>>,
}

impl Colimit {
    pub fn possibly_infinite(&self) -> bool {
        self.saturation.possibly_infinite()
    }
}

/// Presentation of the colimit with the composition, identity and edge
/// relation families, saturated up to `max_len` (unbounded if `None`).
pub fn colimit_presentation(d: &CatDiagram, cap: usize, max_len: Option<usize>) -> Colimit {
    let s = &*d.shape;
    let mut offset = Vec::new();
    let mut total_objs = 0;
    for node in &d.nodes {
        offset.push(total_objs);
        total_objs += node.num_objects();
    }
    let mut parent: Vec<usize> = (0..total_objs).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for a in 0..s.num_morphisms() {
        let (l, m) = (s.dom(a), s.cod(a));
        for x in 0..d.nodes[l].num_objects() {
            let (u, v) = (find(&mut parent, offset[l] + x), find(&mut parent, offset[m] + d.edges[a].obj[x]));
            if u != v {
                let (lo, hi) = if u < v { (u, v) } else { (v, u) };
                parent[hi] = lo;
            }
        }
    }
    let roots: Vec<usize> = (0..total_objs).filter(|&x| find(&mut parent, x) == x).collect();
    let mut vertex_of_root = vec![usize::MAX; total_objs];
    let mut vertices = Vec::new();
    for &r in &roots {
        vertex_of_root[r] = vertices.len();
        let l = offset.iter().rposition(|&o| o <= r).unwrap();
        vertices.push(format!("{}/{}", s.object_name(l), d.nodes[l].object_name(r - offset[l])));
    }
    let object_class: Vec<Vec<usize>> = (0..d.nodes.len())
        .map(|l| (0..d.nodes[l].num_objects()).map(|x| vertex_of_root[find(&mut parent, offset[l] + x)]).collect())
        .collect();
    let mut arrows = Vec::new();
    let mut arrow_of = Vec::new();
    for (l, node) in d.nodes.iter().enumerate() {
        let mut row = Vec::new();
        for f in 0..node.num_morphisms() {
            row.push(arrows.len());
            arrows.push(Arrow {
                id: format!("{}/{}", s.object_name(l), node.mor_name(f)),
                s: object_class[l][node.dom(f)],
                t: object_class[l][node.cod(f)],
            });
        }
        arrow_of.push(row);
    }
    let single = |a: usize, arrows: &[Arrow]| Path { source: arrows[a].s, target: arrows[a].t, arrows: vec![a] };
    let mut relations = Vec::new();
    let mut kinds = Vec::new();
    for (l, node) in d.nodes.iter().enumerate() {
        for g in 0..node.num_morphisms() {
            for f in 0..node.num_morphisms() {
                if let Some(gf) = node.try_comp(g, f) {
                    let (af, ag) = (arrow_of[l][f], arrow_of[l][g]);
                    relations.push((Path { source: arrows[af].s, target: arrows[ag].t, arrows: vec![af, ag] }, single(arrow_of[l][gf], &arrows)));
                    kinds.push(RelationKind::Composition);
                }
            }
        }
        for x in 0..node.num_objects() {
            let v = object_class[l][x];
            relations.push((single(arrow_of[l][node.id(x)], &arrows), Path { source: v, target: v, arrows: vec![] }));
            kinds.push(RelationKind::Identity);
        }
    }
    for a in 0..s.num_morphisms() {
        if s.is_identity(a) {
            continue;
        }
        let (l, m) = (s.dom(a), s.cod(a));
        for f in 0..d.nodes[l].num_morphisms() {
            relations.push((single(arrow_of[l][f], &arrows), single(arrow_of[m][d.edges[a].mor[f]], &arrows)));
            kinds.push(RelationKind::Edge);
        }
    }
    let presentation = CatPresentation { quiver: Quiver { vertices, arrows }, relations, kinds, saturation_cap: cap };
    let saturation = saturate(&presentation, max_len);
    let (category, injections) = match &saturation.category {
        Some(c) => {
            let c = Arc::new(c.clone());
            let inj = d
                .nodes
                .iter()
                .enumerate()
                .map(|(l, node)| {
                    let mor = (0..node.num_morphisms())
                        .map(|f| saturation.trace(saturation.units[object_class[l][node.dom(f)]], &[arrow_of[l][f]]).unwrap())
                        .collect();
                    Functor::new_unchecked(node.clone(), c.clone(), object_class[l].clone(), mor)
                })
                .collect();
            (Some(c), Some(inj))
        }
        None => (None, None),
    };
    Colimit { presentation, saturation, object_class, arrow_of, category, injections }
}

/// Cocones under `d` with apex `t`, by brute force over leg families.
pub fn enumerate_cocones(d: &CatDiagram, t: &Arc<FinCat>, guard: usize) -> Result<Vec<Vec<Functor>>, GuardExceeded> {
    let legs: Vec<Vec<Functor>> = d.nodes.iter().map(|node| enumerate_functors(node, t, guard)).collect::<Result<_, _>>()?;
    let s = &*d.shape;
    let mut out = Vec::new();
    let mut cur = vec![0usize; legs.len()];
    fn rec(k: usize, cur: &mut Vec<usize>, legs: &[Vec<Functor>], d: &CatDiagram, s: &FinCat, out: &mut Vec<Vec<Functor>>) {
        if k == legs.len() {
            let family: Vec<Functor> = cur.iter().enumerate().map(|(l, &i)| legs[l][i].clone()).collect();
            let ok = (0..s.num_morphisms()).all(|a| {
                let composed = d.edges[a].then(&family[s.cod(a)]);
                composed.obj == family[s.dom(a)].obj && composed.mor == family[s.dom(a)].mor
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

/// Number of functors out of the colimit composing with the injections to
/// the given cocone.
pub fn comediating_count(col: &Colimit, t: &Arc<FinCat>, cocone: &[Functor]) -> usize {
    let (Some(c), Some(inj)) = (&col.category, &col.injections) else { return 0 };
    let mut count = 0;
    search_functors(
        c,
        t,
        &|x, y| inj.iter().zip(cocone).all(|(i, leg)| i.obj.iter().zip(&leg.obj).all(|(&a, &b)| a != x || b == y)),
        &|f, g| inj.iter().zip(cocone).all(|(i, leg)| i.mor.iter().zip(&leg.mor).all(|(&a, &b)| a != f || b == g)),
        &mut |_, _| {
            count += 1;
            Flow::Continue
        },
    );
    count
}

pub fn verify_colimit(d: &CatDiagram, col: &Colimit, apexes: &[Arc<FinCat>], guard: usize) -> Result<bool, GuardExceeded> {
    if col.category.is_none() {
        return Ok(false);
    }
    for t in apexes {
        for cocone in enumerate_cocones(d, t, guard)? {
            if comediating_count(col, t, &cocone) != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
