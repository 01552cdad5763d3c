use super::ambient::{CatAmbient, Preimages};
use crate::cat::colimits::colimit_presentation;
use crate::cat::enumerate::{find_functor, Flow};
use crate::cat::limits::CatDiagram;
use crate::cat::Functor;
use crate::lifting::cell::CellAmbient;
use crate::lifting::{find_lifting, is_orthogonal, Ambient, AmbientError, Square};

/// Cell attachments in Cat along a list of generating functors, with
/// pushouts computed by saturating colimit presentations.
pub struct CatCells {
    pub amb: CatAmbient,
    pub generators: Vec<Functor>,
    pub saturation_cap: usize,
}

impl CatCells {
    pub fn new(generators: Vec<Functor>) -> Self {
        CatCells { amb: CatAmbient::new(crate::cat::DEFAULT_GUARD), generators, saturation_cap: 2_000 }
    }
}

impl Ambient for CatCells {
    type Obj = <CatAmbient as Ambient>::Obj;
    type Mor = Functor;

    fn dom(&self, f: &Functor) -> Self::Obj {
        self.amb.dom(f)
    }
    fn cod(&self, f: &Functor) -> Self::Obj {
        self.amb.cod(f)
    }
    fn identity(&self, x: &Self::Obj) -> Functor {
        self.amb.identity(x)
    }
    fn compose(&self, g: &Functor, f: &Functor) -> Functor {
        self.amb.compose(g, f)
    }
    fn mor_eq(&self, a: &Functor, b: &Functor) -> bool {
        self.amb.mor_eq(a, b)
    }
    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Vec<Functor>, AmbientError> {
        self.amb.hom(x, y)
    }
}

/// A generator index with the square's top and bottom.
pub type CatCell = (usize, Functor, Functor);

impl CellAmbient for CatCells {
    type Cell = CatCell;

    fn attachments(&self, p: &Functor, _stage: usize) -> Result<Vec<CatCell>, AmbientError> {
        let mut out = Vec::new();
        for (k, s) in self.generators.iter().enumerate() {
            let mut err = None;
            self.amb.squares(s, p, &mut |top, bottom| {
                match find_lifting(&self.amb, &Square::new(s, p, top, bottom)) {
                    Ok(Some(_)) => {}
                    Ok(None) => out.push((k, top.clone(), bottom.clone())),
                    Err(e) => err = Some(e),
                }
                Flow::Continue
            })?;
            if let Some(e) = err {
                return Err(e);
            }
        }
        Ok(out)
    }

    fn attach(&self, p: &Functor, cells: &[CatCell]) -> Result<(Functor, Functor), AmbientError> {
        let mut acc = Functor::identity(&p.source);
        let mut right = p.clone();
        for (k, top, bottom) in cells {
            let s = &self.generators[*k];
            let top = top.then(&acc);
            let span = CatDiagram::span(s.source.clone(), acc.target.clone(), s.target.clone(), top, s.clone());
            let col = colimit_presentation(&span, self.saturation_cap, None);
            let (Some(cat), Some(inj)) = (col.category, col.injections) else {
                return Err(AmbientError::Unsupported("pushout of a cell is possibly infinite".into()));
            };
            let (px, pb) = (Preimages::of(&inj[1]), Preimages::of(&inj[2]));
            let induced = find_functor(
                &cat,
                &right.target,
                &|o, y| px.obj[o].iter().all(|&x| right.obj[x] == y) && pb.obj[o].iter().all(|&b| bottom.obj[b] == y),
                &|m, n| px.mor[m].iter().all(|&x| right.mor[x] == n) && pb.mor[m].iter().all(|&b| bottom.mor[b] == n),
            )
            .ok_or_else(|| AmbientError::Unsupported("no induced functor out of the pushout".into()))?;
            acc = acc.then(&inj[1]);
            right = induced;
        }
        Ok((acc, right))
    }

    fn right_class_sample(&self, p: &Functor) -> Result<bool, AmbientError> {
        for s in &self.generators {
            if !is_orthogonal(&self.amb, s, p)?.holds {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
