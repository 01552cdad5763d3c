//! Resolution of document blocks into library objects.

use crate::ast::*;
use modelbench::cat::functor::same_cat;
use modelbench::cat::{self, saturate, CatDiagram, CatPresentation, FinCat, Functor, Saturation};
use modelbench::complexes::{ChainMap, Complex};
use modelbench::dg::{Generator, NcPoly, Presentation, Quiver as DgQuiver};
use modelbench::lifting::Square;
use modelbench::linalg::Matrix;
use modelbench::Q;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildError {
    pub span: Span,
    pub message: String,
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.span, self.message)
    }
}

impl std::error::Error for BuildError {}

fn err<T>(span: Span, message: impl Into<String>) -> Result<T, BuildError> {
    Err(BuildError { span, message: message.into() })
}

type Res<T> = Result<T, BuildError>;

/// A finite category with the presentation it came from.
#[derive(Clone)]
pub struct BuiltCategory {
    pub cat: Arc<FinCat>,
    pub presentation: CatPresentation,
    pub saturation: Saturation,
}

pub struct Resolver<'a> {
    pub doc: &'a Document,
}

fn index_of(names: &[Ident], x: &Ident, what: &str) -> Res<usize> {
    names.iter().position(|n| n == x).map_or_else(|| err(x.span, format!("unknown {what} `{x}`")), Ok)
}

fn unique(names: &[Ident], what: &str) -> Res<()> {
    for (k, n) in names.iter().enumerate() {
        if names[..k].contains(n) {
            return err(n.span, format!("duplicate {what} `{n}`"));
        }
    }
    Ok(())
}

fn cat_quiver(objects: &[Ident], arrows: &[ArrowDecl]) -> Res<cat::Quiver> {
    unique(objects, "object")?;
    let names: Vec<Ident> = arrows.iter().map(|a| a.name.clone()).collect();
    unique(&names, "arrow")?;
    let mut out = Vec::new();
    for a in arrows {
        out.push(cat::Arrow { id: a.name.name.clone(), s: index_of(objects, &a.src, "object")?, t: index_of(objects, &a.tgt, "object")? });
    }
    Ok(cat::Quiver { vertices: objects.iter().map(|o| o.name.clone()).collect(), arrows: out })
}

/// A path expression as arrows in traversal order, with its endpoints.
fn cat_path(q: &cat::Quiver, objects: &[Ident], p: &PathExpr, at: Span) -> Res<cat::Path> {
    match p {
        PathExpr::Identity(Some(x)) => {
            let v = index_of(objects, x, "object")?;
            Ok(cat::Path { source: v, target: v, arrows: vec![] })
        }
        PathExpr::Identity(None) => err(at, "`id` needs an object here"),
        PathExpr::Word(w) => {
            let mut arrows = Vec::new();
            for a in w.iter().rev() {
                match q.arrows.iter().position(|x| x.id == a.name) {
                    Some(i) => arrows.push(i),
                    None => return err(a.span, format!("unknown arrow `{a}`")),
                }
            }
            for k in 1..arrows.len() {
                if q.arrows[arrows[k - 1]].t != q.arrows[arrows[k]].s {
                    return err(w[w.len() - 1 - k].span, format!("`{p}` does not compose"));
                }
            }
            Ok(cat::Path { source: q.arrows[arrows[0]].s, target: q.arrows[*arrows.last().unwrap()].t, arrows })
        }
    }
}

fn path_span(p: &PathExpr, fallback: Span) -> Span {
    match p {
        PathExpr::Word(w) => w[0].span,
        PathExpr::Identity(Some(x)) => x.span,
        PathExpr::Identity(None) => fallback,
    }
}

fn matrix(rows: usize, cols: usize, m: &MatrixLit, at: Span) -> Res<Matrix<Q>> {
    if m.is_empty() && (rows == 0 || cols == 0) {
        return Ok(Matrix::zeros(rows, cols));
    }
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return err(at, format!("expected a {rows}×{cols} matrix"));
    }
    Ok(Matrix::from_rows(rows, cols, m.iter().flatten().cloned().collect()))
}

impl<'a> Resolver<'a> {
    pub fn new(doc: &'a Document) -> Self {
        Resolver { doc }
    }

    fn block(&self, name: &Ident, kind: &str) -> Res<&'a Block> {
        match self.doc.get(&name.name) {
            Some(b) if b.body.keyword() == kind => Ok(b),
            Some(b) => err(name.span, format!("`{name}` is a {}, not a {kind}", b.body.keyword())),
            None => err(name.span, format!("no {kind} named `{name}`")),
        }
    }

    pub fn by_name(&self, name: &str, kind: &str) -> Res<&'a Block> {
        self.block(&Ident::new(name), kind)
    }

    pub fn category(&self, name: &Ident) -> Res<BuiltCategory> {
        let b = self.block(name, "category")?;
        let Body::Category(d) = &b.body else { unreachable!() };
        let q = cat_quiver(&d.objects, &d.arrows)?;
        let mut rels = Vec::new();
        for (l, r) in &d.relations {
            let (pl, pr) = (cat_path(&q, &d.objects, l, b.name.span)?, cat_path(&q, &d.objects, r, b.name.span)?);
            if (pl.source, pl.target) != (pr.source, pr.target) {
                return err(path_span(l, b.name.span), format!("`{l}` and `{r}` have different endpoints"));
            }
            rels.push((pl, pr));
        }
        let presentation = CatPresentation::new(q, rels);
        let saturation = saturate(&presentation, None);
        let Some(c) = saturation.category.clone() else {
            return err(b.name.span, format!("`{}` has more than {} morphisms or is infinite", b.name, presentation.saturation_cap));
        };
        Ok(BuiltCategory { cat: Arc::new(c), presentation, saturation })
    }

    pub fn quiver(&self, name: &Ident) -> Res<cat::Quiver> {
        let b = self.block(name, "quiver")?;
        let Body::Quiver(d) = &b.body else { unreachable!() };
        cat_quiver(&d.vertices, &d.arrows)
    }

    pub fn functor(&self, name: &Ident) -> Res<Functor> {
        let b = self.block(name, "functor")?;
        let Body::Functor(d) = &b.body else { unreachable!() };
        let (src, tgt) = (self.category(&d.source)?, self.category(&d.target)?);
        let (sq, tq) = (&src.presentation.quiver, &tgt.presentation.quiver);
        let sobj: Vec<Ident> = sq.vertices.iter().map(|v| Ident::new(v)).collect();
        let tobj: Vec<Ident> = tq.vertices.iter().map(|v| Ident::new(v)).collect();
        let mut obj = vec![None; sobj.len()];
        for (a, x) in &d.objects {
            let i = index_of(&sobj, a, "source object")?;
            if obj[i].is_some() {
                return err(a.span, format!("object `{a}` mapped twice"));
            }
            obj[i] = Some(index_of(&tobj, x, "target object")?);
        }
        let obj: Vec<usize> = match obj.iter().position(Option::is_none) {
            Some(i) => return err(b.name.span, format!("object `{}` has no image", sobj[i])),
            None => obj.into_iter().flatten().collect(),
        };
        let mut images: Vec<Option<Vec<usize>>> = vec![None; sq.arrows.len()];
        for (a, p) in &d.arrows {
            let Some(i) = sq.arrows.iter().position(|x| x.id == a.name) else { return err(a.span, format!("unknown source arrow `{a}`")) };
            let path = cat_path(tq, &tobj, p, a.span)?;
            let (s, t) = (obj[sq.arrows[i].s], obj[sq.arrows[i].t]);
            if (path.source, path.target) != (s, t) {
                return err(path_span(p, a.span), format!("image of `{a}` must go from `{}` to `{}`", tq.vertices[s], tq.vertices[t]));
            }
            images[i] = Some(path.arrows);
        }
        if let Some(i) = images.iter().position(Option::is_none) {
            return err(b.name.span, format!("arrow `{}` has no image", sq.arrows[i].id));
        }
        let images: Vec<Vec<usize>> = images.into_iter().flatten().collect();
        let mut mor = Vec::new();
        for class in &src.saturation.classes {
            let word: Vec<usize> = class.arrows.iter().flat_map(|&a| images[a].clone()).collect();
            let start = tgt.saturation.units[obj[class.source]];
            mor.push(tgt.saturation.trace(start, &word).expect("target table is total"));
        }
        Functor::new(src.cat, tgt.cat, obj, mor).or_else(|e| err(b.name.span, format!("`{}` is not a functor: {e}", b.name)))
    }

    pub fn diagram(&self, name: &Ident) -> Res<CatDiagram> {
        let b = self.block(name, "diagram")?;
        let Body::Diagram(d) = &b.body else { unreachable!() };
        if d.shape == Shape::Discrete {
            let cats = d.members.iter().map(|m| self.category(m).map(|c| c.cat)).collect::<Res<Vec<_>>>()?;
            return Ok(CatDiagram::discrete(cats));
        }
        if d.members.len() != 2 {
            return err(b.name.span, format!("a {} diagram lists two functors", d.shape.keyword()));
        }
        let f = self.functor(&d.members[0])?;
        let g = self.functor(&d.members[1])?;
        let same = |a: &Arc<FinCat>, b: &Arc<FinCat>| cat::functor::same_cat(a, b) || **a == **b;
        match d.shape {
            Shape::Parallel if same(&f.source, &g.source) && same(&f.target, &g.target) => {
                Ok(CatDiagram::from_parallel_pair(f.source.clone(), f.target.clone(), f.clone(), Functor::new_unchecked(f.source.clone(), f.target.clone(), g.obj, g.mor)))
            }
            Shape::Span if same(&f.source, &g.source) => {
                Ok(CatDiagram::span(f.source.clone(), f.target.clone(), g.target.clone(), f.clone(), Functor::new_unchecked(f.source.clone(), g.target.clone(), g.obj, g.mor)))
            }
            Shape::Cospan if same(&f.target, &g.target) => {
                Ok(CatDiagram::cospan(f.target.clone(), f.source.clone(), g.source.clone(), f.clone(), Functor::new_unchecked(g.source.clone(), f.target.clone(), g.obj, g.mor)))
            }
            _ => err(d.members[1].span, format!("`{}` and `{}` do not form a {}", d.members[0], d.members[1], d.shape.keyword())),
        }
    }

    pub fn square(&self, name: &Ident) -> Res<Square<Functor>> {
        let b = self.block(name, "square")?;
        let Body::Square(d) = &b.body else { unreachable!() };
        let [f, g, top, bottom] = [&d.left, &d.right, &d.top, &d.bottom].map(|n| self.functor(n));
        let (f, g, top, bottom) = (f?, g?, top?, bottom?);
        let fits = same_cat(&f.source, &top.source)
            && top.composable_with(&g)
            && f.composable_with(&bottom)
            && same_cat(&g.target, &bottom.target);
        if !fits {
            return err(b.name.span, format!("the sides of square `{}` do not fit together", b.name.name));
        }
        Ok(Square::new(&f, &g, &top, &bottom))
    }

    pub fn complex(&self, name: &Ident) -> Res<Complex<Q>> {
        let b = self.block(name, "complex")?;
        let Body::Complex(d) = &b.body else { unreachable!() };
        let len = d.dims.len() as i64;
        let mut ds: Vec<Matrix<Q>> = (0..len.max(1) - 1).map(|k| Matrix::zeros(d.dims[k as usize + 1], d.dims[k as usize])).collect();
        for (n, m) in &d.diffs {
            let k = n - d.lo;
            if k < 0 || k + 1 >= len {
                return err(b.name.span, format!("d {n} leaves the degrees {}..{}", d.lo, d.lo + len - 1));
            }
            ds[k as usize] = matrix(d.dims[k as usize + 1], d.dims[k as usize], m, b.name.span)?;
        }
        Complex::new(d.lo, d.dims.clone(), ds).or_else(|e| err(b.name.span, e.to_string()))
    }

    pub fn chain_map(&self, name: &Ident) -> Res<ChainMap<Q>> {
        let b = self.block(name, "chainmap")?;
        let Body::ChainMap(d) = &b.body else { unreachable!() };
        let (x, y) = (self.complex(&d.source)?, self.complex(&d.target)?);
        let Some(lo) = d.components.iter().map(|c| c.0).min() else { return Ok(ChainMap::zero(x, y)) };
        let hi = d.components.iter().map(|c| c.0).max().unwrap();
        let mut comps: Vec<Matrix<Q>> = (lo..=hi).map(|n| Matrix::zeros(y.dim(n), x.dim(n))).collect();
        for (n, m) in &d.components {
            comps[(n - lo) as usize] = matrix(y.dim(*n), x.dim(*n), m, b.name.span)?;
        }
        ChainMap::new(x, y, lo, comps).or_else(|e| err(b.name.span, e.to_string()))
    }

    /// A dg algebra or dg category presentation; algebras have the one object `*`.
    pub fn presentation(&self, name: &Ident) -> Res<Presentation<Q>> {
        let b = match self.doc.get(&name.name) {
            Some(b) if matches!(b.body, Body::DgAlg(_) | Body::DgCat(_)) => b,
            Some(b) => return err(name.span, format!("`{name}` is a {}, not a dg algebra or dg category", b.body.keyword())),
            None => return err(name.span, format!("no dgalg or dgcat named `{name}`")),
        };
        let (Body::DgAlg(d) | Body::DgCat(d)) = &b.body else { unreachable!() };
        let algebra = matches!(b.body, Body::DgAlg(_));
        let objects: Vec<Ident> = if algebra { vec![Ident::new("*")] } else { d.objects.clone() };
        unique(&objects, "object")?;
        let names: Vec<Ident> = d.generators.iter().map(|g| g.name.clone()).collect();
        unique(&names, "generator")?;
        let mut gens = Vec::new();
        for g in &d.generators {
            let (src, tgt) = match &g.ends {
                Some((s, t)) => (index_of(&objects, s, "object")?, index_of(&objects, t, "object")?),
                None => (0, 0),
            };
            gens.push(Generator { name: g.name.name.clone(), src, tgt, degree: g.degree, weight: g.weight.unwrap_or(1) });
        }
        let q = DgQuiver { objects: objects.iter().map(|o| o.name.clone()).collect(), gens };
        let poly = |p: &Poly| -> Res<NcPoly<Q>> {
            let mut out = NcPoly::zero();
            for (c, path) in &p.terms {
                let pth = match path {
                    PathExpr::Identity(None) if algebra => q.id(0),
                    PathExpr::Identity(None) => return err(b.name.span, "write `id(x)` for identities in a dg category"),
                    PathExpr::Identity(Some(x)) => q.id(index_of(&objects, x, "object")?),
                    PathExpr::Word(w) => {
                        let word = w.iter().map(|a| q.gen(&a.name).map_or_else(|| err(a.span, format!("unknown generator `{a}`")), Ok)).collect::<Res<Vec<_>>>()?;
                        match q.path(&word) {
                            Some(p) => p,
                            None => return err(w[0].span, format!("`{path}` does not compose")),
                        }
                    }
                };
                out.add_term(pth, c.clone());
            }
            let (deg, ends) = (out.degree(), out.endpoints());
            let homogeneous = out.terms.keys().all(|t| Some(q.word_degree(&t.word)) == deg && Some((t.src, t.tgt)) == ends);
            if !homogeneous {
                return err(b.name.span, format!("`{p}` is not homogeneous"));
            }
            Ok(out)
        };
        let mut diff = vec![NcPoly::zero(); q.gens.len()];
        for (g, p) in &d.diffs {
            let Some(i) = q.gen(&g.name) else { return err(g.span, format!("unknown generator `{g}`")) };
            let v = poly(p)?;
            let gd = &q.gens[i];
            if !v.is_zero() && (v.degree() != Some(gd.degree + 1) || v.endpoints() != Some((gd.src, gd.tgt))) {
                return err(g.span, format!("d {g} must have degree {} and the endpoints of `{g}`", gd.degree + 1));
            }
            diff[i] = v;
        }
        let mut relations = Vec::new();
        for (l, r) in &d.relations {
            let v = poly(l)?.sub(&poly(r)?);
            let deg = v.degree();
            if v.terms.keys().any(|t| Some(q.word_degree(&t.word)) != deg) {
                return err(b.name.span, format!("relation `{l} = {r}` is not homogeneous"));
            }
            relations.push(v);
        }
        let mut p = Presentation::free(q, diff);
        p.relations = relations;
        Ok(p)
    }

    /// An element of a presentation written in the document language.
    pub fn element(&self, p: &Presentation<Q>, text: &str) -> Res<NcPoly<Q>> {
        let wrapped = format!("dgcat E {{ relations {text} = 0; }}");
        let doc = crate::parse::parse(&wrapped).or_else(|e| err(e.span, format!("in `{text}`: {}", e.message)))?;
        let Body::DgCat(d) = &doc.blocks[0].body else { unreachable!() };
        let poly = &d.relations[0].0;
        let q = &p.quiver;
        let mut out = NcPoly::zero();
        for (c, path) in &poly.terms {
            let pth = match path {
                PathExpr::Identity(None) if q.objects.len() == 1 => q.id(0),
                PathExpr::Identity(Some(x)) => match q.object(&x.name) {
                    Some(o) => q.id(o),
                    None => return err(x.span, format!("unknown object `{x}`")),
                },
                PathExpr::Identity(None) => return err(Span::default(), "write `id(x)` for identities"),
                PathExpr::Word(w) => {
                    let word = w.iter().map(|a| q.gen(&a.name).map_or_else(|| err(a.span, format!("unknown generator `{a}`")), Ok)).collect::<Res<Vec<_>>>()?;
                    q.path(&word).map_or_else(|| err(w[0].span, format!("`{path}` does not compose")), Ok)?
                }
            };
            out.add_term(pth, c.clone());
        }
        Ok(out)
    }
}
