//! Congruences on hom sets, factor categories and the two factorizations
//! of a functor through its image.

use super::fincat::{FinCat, Morphism};
use super::functor::Functor;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct HomCongruence {
    pub base: Arc<FinCat>,
    pub generating_pairs: Vec<(usize, usize)>,
    /// Class representative for every morphism: the smallest index in its class.
    pub closure: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MismatchedPair(pub String, pub String);

impl std::fmt::Display for MismatchedPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "pair ({}, {}) is not parallel", self.0, self.1)
    }
}

impl std::error::Error for MismatchedPair {}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

impl HomCongruence {
    /// Smallest congruence containing the pairs, by fixpoint iteration.
    pub fn generate(base: &Arc<FinCat>, pairs: &[(usize, usize)]) -> Result<HomCongruence, MismatchedPair> {
        let c = &**base;
        for &(a, b) in pairs {
            if c.dom(a) != c.dom(b) || c.cod(a) != c.cod(b) {
                return Err(MismatchedPair(c.mor_name(a).to_string(), c.mor_name(b).to_string()));
            }
        }
        let n = c.num_morphisms();
        let mut uf = UnionFind((0..n).collect());
        for &(a, b) in pairs {
            uf.union(a, b);
        }
        loop {
            let mut changed = false;
            for a in 0..n {
                for b in (a + 1)..n {
                    if uf.find(a) != uf.find(b) {
                        continue;
                    }
                    for f in 0..n {
                        if let (Some(af), Some(bf)) = (c.try_comp(a, f), c.try_comp(b, f)) {
                            changed |= uf.union(af, bf);
                        }
                    }
                    for g in 0..n {
                        if let (Some(ga), Some(gb)) = (c.try_comp(g, a), c.try_comp(g, b)) {
                            changed |= uf.union(ga, gb);
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let closure = (0..n).map(|x| uf.find(x)).collect();
        Ok(HomCongruence { base: base.clone(), generating_pairs: pairs.to_vec(), closure })
    }

    pub fn by_names(base: &Arc<FinCat>, pairs: &[(&str, &str)]) -> Result<HomCongruence, MismatchedPair> {
        let idx: Vec<(usize, usize)> = pairs
            .iter()
            .map(|(a, b)| {
                let ia = base.mor_index(a).ok_or_else(|| MismatchedPair(a.to_string(), b.to_string()))?;
                let ib = base.mor_index(b).ok_or_else(|| MismatchedPair(a.to_string(), b.to_string()))?;
                Ok((ia, ib))
            })
            .collect::<Result<_, MismatchedPair>>()?;
        HomCongruence::generate(base, &idx)
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.closure[a] == self.closure[b]
    }

    /// Checks that the closure is a congruence containing the generators.
    pub fn is_congruence(&self) -> bool {
        let c = &*self.base;
        let n = c.num_morphisms();
        if self.generating_pairs.iter().any(|&(a, b)| !self.related(a, b)) {
            return false;
        }
        for a in 0..n {
            for b in 0..n {
                if !self.related(a, b) {
                    continue;
                }
                if c.dom(a) != c.dom(b) || c.cod(a) != c.cod(b) {
                    return false;
                }
                for f in 0..n {
                    if let (Some(x), Some(y)) = (c.try_comp(a, f), c.try_comp(b, f)) {
                        if !self.related(x, y) {
                            return false;
                        }
                    }
                    if let (Some(x), Some(y)) = (c.try_comp(f, a), c.try_comp(f, b)) {
                        if !self.related(x, y) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// The factor category and its canonical functor.
pub fn factor_category(r: &HomCongruence) -> (Arc<FinCat>, Functor) {
    let c = &*r.base;
    let n = c.num_morphisms();
    let reps: Vec<usize> = (0..n).filter(|&f| r.closure[f] == f).collect();
    let mut pos = vec![usize::MAX; n];
    for (i, &f) in reps.iter().enumerate() {
        pos[f] = i;
    }
    let morphisms = reps.iter().map(|&f| Morphism { id: c.mor_name(f).to_string(), dom: c.dom(f), cod: c.cod(f) }).collect();
    let identity = (0..c.num_objects()).map(|x| pos[r.closure[c.id(x)]]).collect();
    let q = FinCat::from_fn(c.objects().to_vec(), morphisms, identity, |g, f| pos[r.closure[c.comp(reps[g], reps[f])]])
        .expect("quotient by a congruence is a category");
    let q = Arc::new(q);
    let can = Functor::new_unchecked(
        r.base.clone(),
        q.clone(),
        (0..c.num_objects()).collect(),
        (0..n).map(|f| pos[r.closure[f]]).collect(),
    );
    (q, can)
}

/// The congruence identifying morphisms with equal image under `f`.
pub fn kernel_congruence(f: &Functor) -> HomCongruence {
    let c = &*f.source;
    let mut pairs = Vec::new();
    for a in 0..c.num_morphisms() {
        for b in (a + 1)..c.num_morphisms() {
            if c.dom(a) == c.dom(b) && c.cod(a) == c.cod(b) && f.mor[a] == f.mor[b] {
                pairs.push((a, b));
            }
        }
    }
    HomCongruence::generate(&f.source, &pairs).expect("kernel pairs are parallel")
}

/// Essential image of `f` as a full subcategory, with its inclusion.
pub fn essential_image(f: &Functor) -> (Arc<FinCat>, Functor) {
    let d = &*f.target;
    let objs: Vec<usize> = (0..d.num_objects()).filter(|&y| f.obj.iter().any(|&fx| d.isomorphic_objects(fx, y))).collect();
    let (sub, mor_map) = d.full_subcategory(&objs);
    let sub = Arc::new(sub);
    let inc = Functor::new_unchecked(sub.clone(), f.target.clone(), objs, mor_map);
    (sub, inc)
}

pub struct StandardFactorization {
    pub can: Functor,
    pub tilde: Functor,
    pub inc: Functor,
    pub tilde_faithful: bool,
    pub tilde_dense: bool,
    pub tilde_equivalence: bool,
}

/// `F = inc ∘ F̃ ∘ can` through the factor category and the essential image.
pub fn standard_factorization(f: &Functor) -> StandardFactorization {
    let r = kernel_congruence(f);
    let (q, can) = factor_category(&r);
    let (im, inc) = essential_image(f);
    let mut im_obj = vec![usize::MAX; f.target.num_objects()];
    for (i, &y) in inc.obj.iter().enumerate() {
        im_obj[y] = i;
    }
    let mut im_mor = vec![usize::MAX; f.target.num_morphisms()];
    for (i, &g) in inc.mor.iter().enumerate() {
        im_mor[g] = i;
    }
    let c = &*f.source;
    let mut tilde_mor = vec![0; q.num_morphisms()];
    for a in 0..c.num_morphisms() {
        tilde_mor[can.mor[a]] = im_mor[f.mor[a]];
    }
    let tilde = Functor::new_unchecked(q.clone(), im.clone(), (0..c.num_objects()).map(|x| im_obj[f.obj[x]]).collect(), tilde_mor);
    let tilde_equivalence = super::equivalence::is_equivalence(&tilde);
    StandardFactorization {
        tilde_faithful: tilde.is_faithful(),
        tilde_dense: tilde.is_dense(),
        tilde_equivalence,
        can,
        tilde,
        inc,
    }
}

pub struct ImageFactorization {
    pub first: Functor,
    pub middle: Arc<FinCat>,
    pub second: Functor,
}

/// `C → C_F → D` where `C_F(x, y) = D(Fx, Fy)`.
pub fn image_factorization(f: &Functor) -> ImageFactorization {
    let (c, d) = (&*f.source, &*f.target);
    let n = c.num_objects();
    let mut morphisms = Vec::new();
    let mut origin = Vec::new();
    let mut index = std::collections::HashMap::new();
    for x in 0..n {
        for y in 0..n {
            for &g in d.hom(f.obj[x], f.obj[y]) {
                index.insert((x, y, g), morphisms.len());
                origin.push(g);
                morphisms.push(Morphism { id: format!("{}:{}->{}", d.mor_name(g), c.object_name(x), c.object_name(y)), dom: x, cod: y });
            }
        }
    }
    let identity = (0..n).map(|x| index[&(x, x, d.id(f.obj[x]))]).collect();
    let moved = morphisms.clone();
    let middle = FinCat::from_fn(c.objects().to_vec(), morphisms, identity, |g, h| {
        index[&(moved[h].dom, moved[g].cod, d.comp(origin[g], origin[h]))]
    })
    .expect("C_F is a category");
    let middle = Arc::new(middle);
    let first = Functor::new_unchecked(
        f.source.clone(),
        middle.clone(),
        (0..n).collect(),
        (0..c.num_morphisms()).map(|a| index[&(c.dom(a), c.cod(a), f.mor[a])]).collect(),
    );
    let second = Functor::new_unchecked(middle.clone(), f.target.clone(), f.obj.clone(), origin);
    ImageFactorization { first, middle, second }
}
