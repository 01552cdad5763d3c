use super::lifters::{build_acyclic_injection_lift, build_injection_lift, injection_lift_parts};
use crate::cat::enumerate::{enumerate_functors, search_functors, Flow, FunctorSearch};
use crate::cat::{FinCat, Functor};
use crate::lifting::{Ambient, AmbientError, Orthogonality, Square};
use std::sync::Arc;

/// Finite categories and functors, with lifts found by constrained search
/// after trying the constructive lifters.
#[derive(Clone, Debug)]
pub struct CatAmbient {
    pub guard: usize,
    pub constructive: bool,
}

impl CatAmbient {
    pub fn new(guard: usize) -> Self {
        CatAmbient { guard, constructive: true }
    }

    /// Brute force only.
    pub fn enumerative(guard: usize) -> Self {
        CatAmbient { guard, constructive: false }
    }
}

/// Fibres of a functor over each target object and morphism.
pub struct Preimages {
    pub obj: Vec<Vec<usize>>,
    pub mor: Vec<Vec<usize>>,
}

impl Preimages {
    pub fn of(f: &Functor) -> Preimages {
        let mut obj = vec![Vec::new(); f.target.num_objects()];
        for (x, &y) in f.obj.iter().enumerate() {
            obj[y].push(x);
        }
        let mut mor = vec![Vec::new(); f.target.num_morphisms()];
        for (m, &n) in f.mor.iter().enumerate() {
            mor[n].push(m);
        }
        Preimages { obj, mor }
    }
}

impl Ambient for CatAmbient {
    type Obj = Arc<FinCat>;
    type Mor = Functor;

    fn dom(&self, f: &Functor) -> Arc<FinCat> {
        f.source.clone()
    }

    fn cod(&self, f: &Functor) -> Arc<FinCat> {
        f.target.clone()
    }

    fn identity(&self, x: &Arc<FinCat>) -> Functor {
        Functor::identity(x)
    }

    fn compose(&self, g: &Functor, f: &Functor) -> Functor {
        f.then(g)
    }

    fn mor_eq(&self, a: &Functor, b: &Functor) -> bool {
        a.same(b)
    }

    fn hom(&self, x: &Arc<FinCat>, y: &Arc<FinCat>) -> Result<Vec<Functor>, AmbientError> {
        Ok(enumerate_functors(x, y, self.guard)?)
    }

    fn constructive_lift(&self, sq: &Square<Functor>) -> Option<Functor> {
        if !self.constructive {
            return None;
        }
        build_injection_lift(sq).or_else(|| build_acyclic_injection_lift(sq))
    }

    fn lifts(&self, sq: &Square<Functor>, visit: &mut dyn FnMut(&Functor) -> Flow) -> Result<(), AmbientError> {
        let pre = Preimages::of(&sq.f);
        let (g, top, bottom) = (&sq.g, &sq.top, &sq.bottom);
        let (src, tgt) = (sq.f.target.clone(), g.source.clone());
        search_functors(
            &src,
            &tgt,
            &|x, y| g.obj[y] == bottom.obj[x] && pre.obj[x].iter().all(|&a| top.obj[a] == y),
            &|m, n| g.mor[n] == bottom.mor[m] && pre.mor[m].iter().all(|&a| top.mor[a] == n),
            &mut |o, m| visit(&Functor::new_unchecked(src.clone(), tgt.clone(), o.to_vec(), m.to_vec())),
        );
        Ok(())
    }

    /// Squares are enumerated as in [`Ambient::squares`]; each is settled by
    /// the constructive lift when the right leg is fully faithful and
    /// surjective on objects, otherwise by constrained search.
    fn orthogonal(&self, f: &Functor, g: &Functor) -> Result<Orthogonality<Functor>, AmbientError> {
        let (pf, pg) = (Preimages::of(f), Preimages::of(g));
        let constructive = self.constructive && g.is_surjective_on_objects() && g.is_full() && g.is_faithful();
        let tops = enumerate_functors(&f.source, &g.source, self.guard)?;
        let bottoms = FunctorSearch::new(&f.target, &g.target);
        let lifts = FunctorSearch::new(&f.target, &g.source);
        let (d, m) = (&*f.target, &*g.source);
        let mut checked = 0;
        let mut counter = None;
        for top in &tops {
            let flow = bottoms.run(
                &|x, y| pf.obj[x].iter().all(|&a| g.obj[top.obj[a]] == y),
                &|u, n| pf.mor[u].iter().all(|&a| g.mor[top.mor[a]] == n),
                &mut |bo, bm| {
                    checked += 1;
                    if constructive {
                        if let Some((ho, hm)) = injection_lift_parts(f, g, (&top.obj, &top.mor), (bo, bm), &pf, &pg) {
                            let triangles = (0..d.num_objects()).all(|x| g.obj[ho[x]] == bo[x])
                                && (0..d.num_morphisms()).all(|u| g.mor[hm[u]] == bm[u])
                                && f.obj.iter().zip(&top.obj).all(|(&x, &y)| ho[x] == y)
                                && f.mor.iter().zip(&top.mor).all(|(&u, &n)| hm[u] == n);
                            let functorial = (0..d.num_morphisms()).all(|v| {
                                (0..d.num_morphisms()).all(|u| d.try_comp(v, u).is_none_or(|vu| hm[vu] == m.comp(hm[v], hm[u])))
                            });
                            if triangles && functorial {
                                return Flow::Continue;
                            }
                        }
                    }
                    let found = lifts.run(
                        &|x, y| g.obj[y] == bo[x] && pf.obj[x].iter().all(|&a| top.obj[a] == y),
                        &|u, n| g.mor[n] == bm[u] && pf.mor[u].iter().all(|&a| top.mor[a] == n),
                        &mut |_, _| Flow::Stop,
                    );
                    if found == Flow::Stop {
                        return Flow::Continue;
                    }
                    let bottom = Functor::new_unchecked(f.target.clone(), g.target.clone(), bo.to_vec(), bm.to_vec());
                    counter = Some(Square::new(f, g, top, &bottom));
                    Flow::Stop
                },
            );
            if flow == Flow::Stop {
                break;
            }
        }
        Ok(Orthogonality { holds: counter.is_none(), squares_checked: checked, counterexample: counter })
    }

    fn squares(&self, f: &Functor, g: &Functor, visit: &mut dyn FnMut(&Functor, &Functor) -> Flow) -> Result<(), AmbientError> {
        let pre = Preimages::of(f);
        let tops = enumerate_functors(&f.source, &g.source, self.guard)?;
        let (b_src, b_tgt) = (f.target.clone(), g.target.clone());
        for top in &tops {
            let mut flow = Flow::Continue;
            search_functors(
                &b_src,
                &b_tgt,
                &|x, y| pre.obj[x].iter().all(|&a| g.obj[top.obj[a]] == y),
                &|m, n| pre.mor[m].iter().all(|&a| g.mor[top.mor[a]] == n),
                &mut |o, m| {
                    let bottom = Functor::new_unchecked(b_src.clone(), b_tgt.clone(), o.to_vec(), m.to_vec());
                    flow = visit(top, &bottom);
                    flow
                },
            );
            if flow == Flow::Stop {
                break;
            }
        }
        Ok(())
    }
}
