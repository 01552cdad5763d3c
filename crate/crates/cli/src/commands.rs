//! Command implementations over resolved documents.

use crate::ast::{rational, Body, Ident};
use crate::build::Resolver;
use crate::cli::{Command, DgAlgOp, DgCatOp, Flags, Mode, Source};
use crate::report::{CmdError, Outcome};
use modelbench::cat::colimits::DEFAULT_SATURATION_CAP;
use modelbench::cat::limits::verify_limit;
use modelbench::cat::{self, colimit_presentation, find_quasi_inverse, limit, path_category, FinCat, Functor};
use modelbench::catmodel::{self, CatAmbient, CatCells};
use modelbench::complexes::{surj_quas_criteria, Complex};
use modelbench::dg::concrete::unit;
use modelbench::dg::{BasisMap, ConcreteDgCat, Elem, FreeMap, NcPoly, Presentation};
use modelbench::dgalg::cocylinder::{cocylinder, compare_path_objects, solve_concrete_derivation};
use modelbench::dgalg::homotopy::{elementary_homotopy, ElementaryOutcome, NoElementaryHomotopy};
use modelbench::dgalg::replace::{cofibrant_replacement, recheck, CellKind};
use modelbench::dgalg::as_presentation;
use modelbench::dgcat::{self, bounded_k_cohomology, check_cone, classify_dg_functor, default_mor_objects, equivalence_criterion, k_category, k_embed};
use modelbench::dgcat::{mor_category, path_object, remark_identity, zigzag_endomorphisms, FunctorClass, ZigzagError};
use modelbench::lifting::cell::{small_object_factorization, SoaStatus, DEFAULT_MAX_STAGES};
use modelbench::lifting::{find_lifting, is_orthogonal, orthogonal_by_squares, square_commutes, square_lift_ok, Ambient};
use modelbench::Q;
use serde_json::{json, Map, Value};
use std::sync::Arc;

type Res = Result<Outcome, CmdError>;

fn need(src: Option<&Source>) -> Result<&Source, CmdError> {
    src.ok_or_else(|| CmdError::input("this command needs a document"))
}

fn id(name: &str) -> Ident {
    Ident::new(name)
}

pub fn dispatch(cmd: &Command, flags: &Flags, src: Option<&Source>) -> Res {
    match cmd {
        Command::Parse { .. } => parse_report(need(src)?),
        Command::CheckModelAxioms { categories, .. } => model_axioms(src, categories),
        Command::Classify { functor, .. } => classify(&Resolver::new(&need(src)?.doc), functor, flags),
        Command::Orthogonal { left, right, .. } => orthogonal(&Resolver::new(&need(src)?.doc), left, right, flags),
        Command::Lift { square, .. } => lift(&Resolver::new(&need(src)?.doc), square, flags),
        Command::Soa { functor, .. } => soa(&Resolver::new(&need(src)?.doc), functor, flags),
        Command::Factorize { functor, mode, .. } => factorize(&Resolver::new(&need(src)?.doc), functor, *mode, flags),
        Command::Homotopic { left, right, .. } => homotopic(&Resolver::new(&need(src)?.doc), left, right, flags),
        Command::HoHom { source, target, .. } => ho_hom(&Resolver::new(&need(src)?.doc), source, target, flags),
        Command::Limit { diagram, .. } => limit_cmd(&Resolver::new(&need(src)?.doc), diagram, flags),
        Command::Colimit { diagram, .. } => colimit_cmd(&Resolver::new(&need(src)?.doc), diagram, flags),
        Command::Paths { quiver, .. } => paths(&Resolver::new(&need(src)?.doc), quiver, flags),
        Command::Cohomology { complex, .. } => cohomology(&Resolver::new(&need(src)?.doc), complex),
        Command::SurjQuas { map, .. } => surj_quas(&Resolver::new(&need(src)?.doc), map, flags),
        Command::Dgalg { op } => match op {
            DgAlgOp::Replace { name, .. } => dg_replace(&Resolver::new(&need(src)?.doc), name, flags),
            DgAlgOp::Homotopy { name, .. } => dg_homotopy(&Resolver::new(&need(src)?.doc), name, flags),
            DgAlgOp::Cohomology { name, .. } => dg_cohomology(&Resolver::new(&need(src)?.doc), name, flags),
        },
        Command::Dgcat { op } => match op {
            DgCatOp::Validate { name, .. } => dgcat_validate(&Resolver::new(&need(src)?.doc), name, flags),
            DgCatOp::Classify { name, .. } => dgcat_classify(&Resolver::new(&need(src)?.doc), name, flags),
            DgCatOp::Cone { name, from, to, morphism, .. } => dgcat_cone(&Resolver::new(&need(src)?.doc), name, from, to, morphism, flags),
            DgCatOp::KReport => k_report(flags),
            DgCatOp::Mor { name, .. } => dgcat_mor(&Resolver::new(&need(src)?.doc), name, flags),
            DgCatOp::Zigzag { name, from, to, morphism, .. } => dgcat_zigzag(&Resolver::new(&need(src)?.doc), name, from, to, morphism, flags),
        },
        Command::Suite => crate::suite::run(flags),
        Command::Print { .. } | Command::Run { .. } => unreachable!("handled before dispatch"),
    }
}

pub fn functor_json(f: &Functor) -> Value {
    let (s, t) = (&f.source, &f.target);
    let objects: Map<String, Value> = (0..s.num_objects()).map(|x| (s.object_name(x).to_string(), json!(t.object_name(f.obj[x])))).collect();
    let morphisms: Map<String, Value> =
        (0..s.num_morphisms()).filter(|&m| !s.is_identity(m)).map(|m| (s.mor_name(m).to_string(), json!(t.mor_name(f.mor[m])))).collect();
    json!({ "objects": objects, "morphisms": morphisms })
}

pub fn cat_json(c: &FinCat) -> Value {
    let morphisms: Vec<Value> =
        c.morphisms().iter().enumerate().filter(|(i, _)| !c.is_identity(*i)).map(|(_, m)| json!([m.id, c.object_name(m.dom), c.object_name(m.cod)])).collect();
    let mut comps = Vec::new();
    for g in 0..c.num_morphisms() {
        for f in 0..c.num_morphisms() {
            if c.is_identity(g) || c.is_identity(f) {
                continue;
            }
            if let Some(h) = c.try_comp(g, f) {
                comps.push(json!([c.mor_name(g), c.mor_name(f), c.mor_name(h)]));
            }
        }
    }
    json!({ "objects": c.objects(), "morphisms": morphisms, "compositions": comps })
}

fn parse_report(src: &Source) -> Res {
    let r = Resolver::new(&src.doc);
    let mut blocks = Vec::new();
    for b in &src.doc.blocks {
        let summary = match &b.body {
            Body::Category(_) => {
                let c = r.category(&b.name)?;
                json!({ "objects": c.cat.num_objects(), "morphisms": c.cat.num_morphisms() })
            }
            Body::Quiver(_) => {
                let q = r.quiver(&b.name)?;
                json!({ "vertices": q.vertices.len(), "arrows": q.arrows.len(), "acyclic": q.is_acyclic() })
            }
            Body::Functor(_) => {
                let f = r.functor(&b.name)?;
                json!({ "objects": f.source.num_objects(), "morphisms": f.source.num_morphisms() })
            }
            Body::Diagram(_) => {
                let d = r.diagram(&b.name)?;
                json!({ "nodes": d.nodes.len(), "edges": d.edges.len() })
            }
            Body::Complex(_) => {
                let c = r.complex(&b.name)?;
                json!({ "dims": c.dims() })
            }
            Body::ChainMap(_) => {
                let m = r.chain_map(&b.name)?;
                let (lo, hi) = m.window();
                json!({ "window": [lo, hi] })
            }
            Body::DgAlg(_) | Body::DgCat(_) => {
                let p = r.presentation(&b.name)?;
                json!({ "objects": p.quiver.objects.len(), "generators": p.num_gens(), "relations": p.relations.len() })
            }
            Body::Square(_) => {
                let sq = r.square(&b.name)?;
                json!({ "commutes": square_commutes(&CatAmbient::new(cat::DEFAULT_GUARD), &sq) })
            }
            Body::Command(c) => json!({ "argv": c.argv }),
        };
        blocks.push(json!({ "name": b.name.name, "kind": b.body.keyword(), "summary": summary }));
    }
    let round_trip = crate::parse(&crate::print(&src.doc)).map(|d| d == src.doc).unwrap_or(false);
    Ok(Outcome::new(round_trip, json!({ "blocks": blocks, "round_trip": round_trip })))
}

fn model_axioms(src: Option<&Source>, names: &[String]) -> Res {
    let objects: Vec<(String, Arc<FinCat>)> = if names.is_empty() {
        cat::corpus::full()
    } else {
        let r = Resolver::new(&need(src)?.doc);
        names.iter().map(|n| r.category(&id(n)).map(|c| (n.clone(), c.cat))).collect::<Result<_, _>>()?
    };
    let cats: Vec<Arc<FinCat>> = objects.iter().map(|o| o.1.clone()).collect();
    let reports = catmodel::check_cat_model(&cats, Default::default())?;
    let ok = reports.iter().all(|r| r.passed());
    let list: Vec<Value> = reports
        .iter()
        .map(|r| json!({ "axiom": r.axiom, "status": r.status.to_string(), "checked": r.checked, "counterexample": r.counterexample }))
        .collect();
    Ok(Outcome::new(ok, json!({ "categories": objects.iter().map(|o| &o.0).collect::<Vec<_>>(), "axioms": list })))
}

fn classify(r: &Resolver, name: &str, flags: &Flags) -> Res {
    let f = r.functor(&id(name))?;
    let c = catmodel::classify(&f);
    let mut m: Map<String, Value> = c.fields().iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    let qi = find_quasi_inverse(&f, flags.guard())?;
    let agrees = qi.is_some() == c.equivalence;
    m.insert("search_agrees".into(), json!(agrees));
    let mut ok = agrees;
    match &qi {
        Some(q) => {
            let comps = |t: &cat::NatTransf| -> Vec<Value> { t.components.iter().map(|&u| json!(t.to.target.mor_name(u))).collect() };
            m.insert("quasi_inverse".into(), json!({ "functor": functor_json(&q.inverse), "unit": comps(&q.unit), "counit": comps(&q.counit) }));
            if flags.verify {
                let v = q.inverse.check().is_ok() && [&q.unit, &q.counit].iter().all(|t| t.is_natural() && t.is_iso());
                m.insert("verified".into(), json!(v));
                ok &= v;
            }
        }
        None => {
            m.insert("quasi_inverse".into(), Value::Null);
            m.insert("exhausted".into(), json!({ "functors_searched_within_guard": flags.guard() }));
        }
    }
    Ok(Outcome::new(ok, Value::Object(m)))
}

fn square_json(sq: &modelbench::lifting::Square<Functor>) -> Value {
    json!({ "top": functor_json(&sq.top), "bottom": functor_json(&sq.bottom) })
}

fn orthogonal(r: &Resolver, left: &str, right: &str, flags: &Flags) -> Res {
    let (f, g) = (r.functor(&id(left))?, r.functor(&id(right))?);
    let amb = CatAmbient::new(flags.guard());
    let o = is_orthogonal(&amb, &f, &g)?;
    let mut m = Map::new();
    m.insert("holds".into(), json!(o.holds));
    m.insert("squares_checked".into(), json!(o.squares_checked));
    m.insert("counterexample".into(), o.counterexample.as_ref().map_or(Value::Null, square_json));
    let mut ok = o.holds;
    if flags.verify {
        let e = CatAmbient::enumerative(flags.guard());
        let again = orthogonal_by_squares(&e, &f, &g)?;
        let cex_ok = o.counterexample.as_ref().is_none_or(|sq| square_commutes(&e, sq) && find_lifting(&e, sq).ok().flatten().is_none());
        let v = again.holds == o.holds && cex_ok;
        m.insert("verified".into(), json!(v));
        ok &= v;
    }
    Ok(Outcome::new(ok, Value::Object(m)))
}

fn lift(r: &Resolver, name: &str, flags: &Flags) -> Res {
    let sq = r.square(&id(name))?;
    let amb = CatAmbient::new(flags.guard());
    if !(sq.top.composable_with(&sq.g) && sq.f.composable_with(&sq.bottom)) || !square_commutes(&amb, &sq) {
        return Err(CmdError::input(format!("square `{name}` does not commute")));
    }
    let found = find_lifting(&amb, &sq)?;
    let mut m = Map::new();
    let ok = match &found {
        Some(w) => {
            m.insert("lift".into(), functor_json(&w.h));
            m.insert("constructive".into(), json!(w.constructive));
            if flags.verify {
                let v = square_lift_ok(&CatAmbient::enumerative(flags.guard()), &sq, &w.h);
                m.insert("verified".into(), json!(v));
                v
            } else {
                true
            }
        }
        None => {
            let candidates = amb.hom(&amb.cod(&sq.f), &amb.dom(&sq.g))?.len();
            m.insert("lift".into(), Value::Null);
            m.insert("exhausted".into(), json!({ "candidates": candidates }));
            false
        }
    };
    Ok(Outcome::new(ok, Value::Object(m)))
}

fn soa(r: &Resolver, name: &str, flags: &Flags) -> Res {
    let f = r.functor(&id(name))?;
    let gens: Vec<Functor> = catmodel::test_functors()[..3].to_vec();
    let cells = CatCells { amb: CatAmbient::new(flags.guard()), ..CatCells::new(gens) };
    let res = small_object_factorization(&cells, &f, flags.max_stages.unwrap_or(DEFAULT_MAX_STAGES))?;
    let status = match res.status {
        SoaStatus::Converged => "converged",
        SoaStatus::Partial => "partial",
        SoaStatus::Stuck => "stuck",
    };
    let stages: Vec<Value> = res.cell.stages.iter().map(|s| json!({ "cells": s.cells.iter().map(|c| c.0).collect::<Vec<_>>() })).collect();
    let right = catmodel::classify(&res.right);
    let mut m = Map::new();
    m.insert("status".into(), json!(status));
    m.insert("stages".into(), json!(stages));
    m.insert("left_injective".into(), json!(res.cell.composite.is_injective_on_objects()));
    m.insert("right_acyclic_isofibration".into(), json!(right.acyclic_isofibration));
    m.insert("invariant_held".into(), json!(res.invariant_held));
    m.insert("left".into(), functor_json(&res.cell.composite));
    m.insert("right".into(), functor_json(&res.right));
    let mut ok = res.status == SoaStatus::Converged && res.invariant_held;
    if flags.verify {
        let v = res.cell.composite.then(&res.right).same(&f);
        m.insert("verified".into(), json!(v));
        ok &= v;
    }
    Ok(Outcome::new(ok, Value::Object(m)))
}

fn factorize(r: &Resolver, name: &str, mode: Mode, flags: &Flags) -> Res {
    let f = r.functor(&id(name))?;
    let (middle, left, right, want) = match mode {
        Mode::Cylinder => {
            let c = catmodel::functor_cylinder_factorization(&f);
            (c.middle, c.j, c.p, "injection then acyclic isofibration")
        }
        Mode::Cocylinder => {
            let c = catmodel::functor_cocylinder_factorization(&f);
            (c.middle, c.iota, c.q, "acyclic injection then isofibration")
        }
    };
    let (cl, cr) = (catmodel::classify(&left), catmodel::classify(&right));
    let classes_ok = match mode {
        Mode::Cylinder => cl.injection && cr.acyclic_isofibration,
        Mode::Cocylinder => cl.acyclic_injection && cr.isofibration,
    };
    let composite = left.then(&right).same(&f);
    let mut m = Map::new();
    m.insert("shape".into(), json!(want));
    m.insert("middle".into(), json!({ "objects": middle.objects(), "morphisms": middle.num_morphisms() }));
    m.insert("left".into(), functor_json(&left));
    m.insert("right".into(), functor_json(&right));
    m.insert("classes_hold".into(), json!(classes_ok));
    m.insert("composite_is_input".into(), json!(composite));
    let mut ok = classes_ok && composite;
    if flags.verify {
        let eq = match mode {
            Mode::Cylinder => find_quasi_inverse(&right, flags.guard())?.is_some(),
            Mode::Cocylinder => find_quasi_inverse(&left, flags.guard())?.is_some(),
        };
        m.insert("verified".into(), json!(eq));
        ok &= eq;
    }
    Ok(Outcome::new(ok, Value::Object(m)))
}

fn homotopic(r: &Resolver, left: &str, right: &str, flags: &Flags) -> Res {
    let (f, g) = (r.functor(&id(left))?, r.functor(&id(right))?);
    if !f.parallel(&g) {
        return Err(CmdError::input(format!("`{left}` and `{right}` are not parallel")));
    }
    let routes = catmodel::naturally_isomorphic(&f, &g);
    let mut m = Map::new();
    m.insert("homotopic".into(), json!(routes.homotopic()));
    m.insert("routes_agree".into(), json!(routes.agree()));
    m.insert("natural_isomorphism".into(), json!(routes.nat_iso.is_some()));
    m.insert("cylinder_homotopy".into(), json!(routes.left.is_some()));
    m.insert("path_homotopy".into(), json!(routes.right.is_some()));
    match &routes.nat_iso {
        Some(t) => {
            let comps: Map<String, Value> =
                t.components.iter().enumerate().map(|(x, &u)| (f.source.object_name(x).to_string(), json!(f.target.mor_name(u)))).collect();
            m.insert("components".into(), Value::Object(comps));
        }
        None => {
            m.insert("exhausted".into(), json!("every family of isomorphisms between the images"));
        }
    }
    let mut ok = routes.homotopic() && routes.agree();
    if flags.verify {
        let v = routes.nat_iso.as_ref().is_none_or(|t| t.is_natural() && t.is_iso());
        m.insert("verified".into(), json!(v));
        ok &= v;
    }
    Ok(Outcome::new(ok, Value::Object(m)))
}

fn ho_hom(r: &Resolver, source: &str, target: &str, flags: &Flags) -> Res {
    let (c, d) = (r.category(&id(source))?, r.category(&id(target))?);
    let classes = catmodel::ho_hom(&c.cat, &d.cat, flags.guard())?;
    let list: Vec<Value> = classes.iter().map(|k| json!({ "size": k.len(), "representative": functor_json(&k[0]) })).collect();
    let total: usize = classes.iter().map(|k| k.len()).sum();
    Ok(Outcome::new(true, json!({ "functors": total, "classes": list })))
}

fn small_apexes() -> Vec<Arc<FinCat>> {
    vec![Arc::new(cat::terminal()), Arc::new(cat::interval())]
}

fn limit_cmd(r: &Resolver, name: &str, flags: &Flags) -> Res {
    let d = r.diagram(&id(name))?;
    d.check().map_err(|e| CmdError::input(format!("diagram `{name}`: {e:?}")))?;
    let lim = limit(&d);
    let mut m = Map::new();
    m.insert("category".into(), cat_json(&lim.category));
    m.insert("projections".into(), json!(lim.projections.iter().map(functor_json).collect::<Vec<_>>()));
    let mut ok = true;
    if flags.verify {
        let v = verify_limit(&d, &lim, &small_apexes(), flags.guard())?;
        m.insert("verified".into(), json!(v));
        ok = v;
    }
    Ok(Outcome::new(ok, Value::Object(m)))
}

fn colimit_cmd(r: &Resolver, name: &str, flags: &Flags) -> Res {
    let d = r.diagram(&id(name))?;
    d.check().map_err(|e| CmdError::input(format!("diagram `{name}`: {e:?}")))?;
    let col = colimit_presentation(&d, DEFAULT_SATURATION_CAP, flags.max_word_len.map(|n| n as usize));
    let q = &col.presentation.quiver;
    let classes: Vec<String> = col.saturation.classes.iter().map(|p| p.name(q)).collect();
    let mut m = Map::new();
    m.insert("objects".into(), json!(q.vertices));
    m.insert("morphism_classes".into(), json!(classes.len()));
    m.insert("representatives".into(), json!(classes));
    m.insert("total".into(), json!(col.saturation.total));
    m.insert("possibly_infinite".into(), json!(col.possibly_infinite()));
    if let Some(c) = &col.category {
        m.insert("category".into(), cat_json(c));
    }
    let mut ok = true;
    if flags.verify {
        let v = match &col.category {
            Some(_) => cat::colimits::verify_colimit(&d, &col, &small_apexes(), flags.guard())?,
            None => true,
        };
        m.insert("verified".into(), json!(v));
        ok = v;
    }
    Ok(Outcome::new(ok, Value::Object(m)))
}

fn paths(r: &Resolver, name: &str, flags: &Flags) -> Res {
    let q = r.quiver(&id(name))?;
    let s = path_category(&q, flags.len_or(6) as usize);
    let names: Vec<String> = s.paths.iter().map(|p| p.name(&q)).collect();
    Ok(Outcome::new(true, json!({ "max_len": flags.len_or(6), "count": names.len(), "total": s.total, "paths": names })))
}

fn vector(v: &[Q]) -> Value {
    json!(v.iter().map(rational).collect::<Vec<_>>())
}

fn cohomology_json(c: &Complex<Q>, lo: i64, hi: i64) -> Vec<Value> {
    (lo..=hi)
        .map(|n| {
            let h = c.cohomology(n);
            json!({ "degree": n, "cycles": h.cycles, "boundaries": h.boundaries, "dim": h.dim, "representatives": h.representatives.iter().map(|v| vector(v)).collect::<Vec<_>>() })
        })
        .collect()
}

fn cohomology(r: &Resolver, name: &str) -> Res {
    let c = r.complex(&id(name))?;
    let hi = c.lo + c.dims().len() as i64 - 1;
    Ok(Outcome::new(true, json!({ "degrees": cohomology_json(&c, c.lo, hi) })))
}

fn surj_quas(r: &Resolver, name: &str, flags: &Flags) -> Res {
    let f = r.chain_map(&id(name))?;
    let (lo, hi) = flags.window.map_or_else(|| f.window(), |w| (w.lo, w.hi));
    let c = surj_quas_criteria(&f, lo, hi);
    let failure = c.c3_failure.as_ref().map(|(n, x, y)| json!({ "degree": n, "x": vector(x), "y": vector(y) }));
    let mut m = Map::new();
    m.insert("window".into(), json!([lo, hi]));
    m.insert("surjective_quasi_iso".into(), json!(c.c1));
    m.insert("cycles_onto_and_cohomology_injective".into(), json!(c.c2));
    m.insert("sections_exist".into(), json!(c.c3));
    m.insert("section_obstruction".into(), failure.unwrap_or(Value::Null));
    m.insert("agree".into(), json!(c.agree()));
    let mut ok = c.agree() && c.c1;
    if flags.verify {
        let cone = modelbench::complexes::cone(&f).complex;
        let v = c.c1 == ((lo..=hi).all(|n| f.is_surjective_at(n)) && cone.is_acyclic_on(lo - 1, hi));
        m.insert("verified".into(), json!(v));
        ok &= v;
    }
    Ok(Outcome::new(ok, Value::Object(m)))
}

fn truncated(p: &Presentation<Q>, lo: i64, hi: i64, cap: u32) -> (Arc<ConcreteDgCat<Q>>, Value) {
    let (c, rep) = p.truncate(lo, hi, cap);
    let v = json!({ "window": [lo, hi], "cap": cap, "finite": c.supported, "incomplete": rep.incomplete, "inexact_differential": rep.inexact_differential, "relations_unresolved": rep.relations_unresolved });
    (Arc::new(c), v)
}

fn finite_truncation(p: &Presentation<Q>, name: &str, cap: u32) -> Result<Arc<ConcreteDgCat<Q>>, CmdError> {
    let (c, _) = p.truncate(-64, 64, cap);
    if !c.supported {
        return Err(CmdError::input(format!("`{name}` is not finite-dimensional up to word length {cap}")));
    }
    Ok(Arc::new(p.truncate(c.basis.iter().map(|b| b.degree).min().unwrap_or(0), c.basis.iter().map(|b| b.degree).max().unwrap_or(0), cap).0))
}

fn dims_json(c: &ConcreteDgCat<Q>) -> Value {
    let mut m = Map::new();
    for x in 0..c.num_objects() {
        for y in 0..c.num_objects() {
            let d: Vec<usize> = (c.lo..=c.hi).map(|n| c.dim(x, y, n)).collect();
            m.insert(format!("{}->{}", c.objects[x], c.objects[y]), json!(d));
        }
    }
    Value::Object(m)
}

fn dg_replace(r: &Resolver, name: &str, flags: &Flags) -> Res {
    let p = r.presentation(&id(name))?;
    let (lo, hi) = flags.window_or(-6, 0);
    let cap = flags.len_or(8);
    let b = finite_truncation(&p, name, cap)?;
    let stages = flags.max_stages.unwrap_or(DEFAULT_MAX_STAGES);
    let rep = cofibrant_replacement(&b, lo, hi, stages, cap).map_err(|e| CmdError::input(e.to_string()))?;
    let q = &rep.source.quiver;
    let kind = |k: CellKind| match k {
        CellKind::Sphere => "sphere",
        CellKind::Disc => "disc",
        CellKind::Kill => "kill",
    };
    let stage_list: Vec<Value> = rep
        .cells
        .stages
        .iter()
        .map(|s| {
            json!(s
                .iter()
                .map(|c| json!({ "kind": kind(c.kind), "degree": c.degree, "weight": c.weight, "generators": c.generators.iter().map(|&g| &q.gens[g].name).collect::<Vec<_>>(), "image": b.render(&c.image) }))
                .collect::<Vec<_>>())
        })
        .collect();
    let layers: Vec<Vec<&String>> = rep.semi_free.layers.iter().map(|l| l.iter().map(|&g| &q.gens[g].name).collect()).collect();
    let diffs: Map<String, Value> = q.gens.iter().zip(&rep.source.diff).map(|(g, d)| (g.name.clone(), json!(q.render(d)))).collect();
    let images: Map<String, Value> = rep.images().into_iter().map(|(n, e)| (n, json!(b.render(&e)))).collect();
    let mut m = Map::new();
    m.insert("window".into(), json!([lo, hi]));
    m.insert("stages".into(), json!(stage_list));
    m.insert("generators".into(), json!(q.gens.iter().map(|g| json!({ "name": g.name, "degree": g.degree, "weight": g.weight })).collect::<Vec<_>>()));
    m.insert("differential".into(), Value::Object(diffs));
    m.insert("map".into(), Value::Object(images));
    m.insert("semi_free_layers".into(), json!(layers));
    m.insert("complete".into(), json!(rep.complete));
    m.insert("surjective".into(), json!(rep.check.surjective));
    m.insert("cone_acyclic".into(), json!(rep.check.cone_acyclic));
    let mut ok = rep.complete && rep.check.surjective && rep.check.cone_acyclic && rep.cells.stages.len() <= stages;
    if flags.verify {
        let again = recheck(&rep.map, &b, lo, hi, cap).map_err(|e| CmdError::input(e.to_string()))?;
        let v = again == rep.check && rep.semi_free.verify(&rep.source) && rep.map.check().is_ok();
        m.insert("verified".into(), json!(v));
        ok &= v;
    }
    Ok(Outcome::new(ok, Value::Object(m)))
}

fn dg_homotopy(r: &Resolver, name: &str, flags: &Flags) -> Res {
    let p = r.presentation(&id(name))?;
    if p.quiver.objects.len() != 1 {
        return Err(CmdError::input(format!("`{name}` is not a dg algebra")));
    }
    let b = finite_truncation(&p, name, flags.len_or(8))?;
    let c = cocylinder(&b);
    let mut m = Map::new();
    m.insert("cocylinder_dims".into(), dims_json(&c.gamma));
    let derivation = solve_concrete_derivation(&c.pi0, &c.pi1);
    let mut ok = derivation.is_some();
    match &derivation {
        Some(d) => {
            let values: Vec<String> = d.values.iter().map(|v| b.render(v)).collect();
            m.insert("derivation".into(), json!(values));
            if flags.verify {
                let v = d.verify().is_ok();
                m.insert("verified".into(), json!(v));
                ok &= v;
            }
        }
        None => {
            m.insert("derivation".into(), Value::Null);
        }
    }
    let cmp = compare_path_objects(&c);
    let words = cmp.check_words(&c, 4);
    m.insert("path_comparison_words".into(), json!(words.as_ref().ok()));
    ok &= words.is_ok();
    let (gp, images) = as_presentation(&c.gamma);
    let gp = Arc::new(gp);
    let inc = FreeMap::new(gp, c.gamma.clone(), vec![0], images);
    let (f, g) = (inc.compose_with(&c.pi0), inc.compose_with(&c.pi1));
    let max_len = flags.len_or(4).min(6);
    let elementary = match elementary_homotopy(&f, &g, max_len, 20_000) {
        ElementaryOutcome::Found(_) => json!({ "found": true, "max_len": max_len }),
        ElementaryOutcome::None { max_len, reason } => {
            let why = match reason {
                NoElementaryHomotopy::Linear(_) => "linear constraints inconsistent".to_string(),
                NoElementaryHomotopy::Groebner { equations, unknowns } => format!("reduced basis is 1 on {equations} equations in {unknowns} unknowns"),
            };
            json!({ "found": false, "exhausted": { "max_len": max_len, "reason": why } })
        }
        ElementaryOutcome::Undecided { max_len, parameters } => json!({ "found": null, "undecided": { "max_len": max_len, "parameters": parameters } }),
    };
    m.insert("elementary_homotopy".into(), elementary);
    Ok(Outcome::new(ok, Value::Object(m)))
}

fn dg_cohomology(r: &Resolver, name: &str, flags: &Flags) -> Res {
    let p = r.presentation(&id(name))?;
    let (lo, hi) = flags.window_or(-4, 4);
    let (c, trunc) = truncated(&p, lo - 1, hi + 1, flags.len_or(6));
    let mut homs = Vec::new();
    for x in 0..c.num_objects() {
        for y in 0..c.num_objects() {
            let h = c.hom_complex(x, y);
            let degrees: Vec<Value> = (lo..=hi)
                .map(|n| {
                    let d = h.cohomology(n);
                    let reps: Vec<String> = d.representatives.iter().map(|v| c.render(&c.from_coords(x, y, n, v))).collect();
                    json!({ "degree": n, "cycles": d.cycles, "boundaries": d.boundaries, "dim": d.dim, "representatives": reps })
                })
                .collect();
            homs.push(json!({ "source": c.objects[x], "target": c.objects[y], "degrees": degrees }));
        }
    }
    Ok(Outcome::new(true, json!({ "truncation": trunc, "homs": homs })))
}

fn dgcat_validate(r: &Resolver, name: &str, flags: &Flags) -> Res {
    let p = r.presentation(&id(name))?;
    let cap = flags.len_or(6);
    let symbolic = p.validate(cap);
    let (lo, hi) = flags.window_or(-4, 0);
    let (c, trunc) = truncated(&p, lo, hi, cap);
    let concrete = c.validate();
    let semi_free = p.semi_free_witness().ok().map(|w| w.layers.iter().map(|l| l.iter().map(|&g| p.quiver.gens[g].name.clone()).collect::<Vec<_>>()).collect::<Vec<_>>());
    let ok = symbolic.is_ok() && concrete.is_ok();
    Ok(Outcome::new(
        ok,
        json!({
            "symbolic": symbolic.as_ref().map_or_else(|e| json!(e.to_string()), |_| json!("ok")),
            "truncation": trunc,
            "concrete": concrete.as_ref().map_or_else(|e| json!(e.to_string()), |_| json!("ok")),
            "dims": dims_json(&c),
            "semi_free_layers": semi_free,
        }),
    ))
}

fn class_json(c: &FunctorClass) -> Value {
    json!({
        "quasi_fully_faithful": c.quasi_fully_faithful,
        "dense": c.dense,
        "quasi_equivalence": c.quasi_equivalence,
        "full": c.full,
        "surjective_on_objects": c.surjective_on_objects,
        "full_isofibration": c.full_isofibration,
        "candidates_checked": c.candidates_checked,
        "lifts_missing": c.lifts_missing,
    })
}

fn identity_map(c: &Arc<ConcreteDgCat<Q>>) -> BasisMap<Q> {
    BasisMap { source: c.clone(), target: c.clone(), obj: (0..c.num_objects()).collect(), images: (0..c.len()).map(unit).collect() }
}

fn dgcat_classify(r: &Resolver, name: &str, flags: &Flags) -> Res {
    let p = r.presentation(&id(name))?;
    let b = finite_truncation(&p, name, flags.len_or(6))?;
    let po = path_object(&b, 4)?;
    let id_class = classify_dg_functor(&identity_map(&b), 2)?;
    let diag = classify_dg_functor(&po.diag, 4)?;
    let pi = classify_dg_functor(&po.pi, 2)?;
    let ok = id_class.trivial_fibration() && diag.quasi_equivalence && pi.full;
    Ok(Outcome::new(ok, json!({ "identity": class_json(&id_class), "diagonal": class_json(&diag), "projections": class_json(&pi) })))
}

fn object(p: &Presentation<Q>, name: &str) -> Result<usize, CmdError> {
    p.quiver.object(name).ok_or_else(|| CmdError::input(format!("unknown object `{name}`")))
}

/// `e` as a combination of basis elements of the truncation.
fn to_elem(p: &Presentation<Q>, c: &ConcreteDgCat<Q>, e: &NcPoly<Q>, cap: u32) -> Result<Elem<Q>, CmdError> {
    let reduced = p.reduce(&p.rules(cap), e);
    let mut out = Elem::new();
    for (t, k) in &reduced.terms {
        let i = c.basis.iter().position(|b| b.path.as_ref() == Some(t)).ok_or_else(|| CmdError::input(format!("`{}` lies outside the truncation", p.quiver.render_path(t))))?;
        out.insert(i, k.clone());
    }
    Ok(out)
}

fn dgcat_cone(r: &Resolver, name: &str, from: &str, to: &str, morphism: &str, flags: &Flags) -> Res {
    let p = r.presentation(&id(name))?;
    let (x, y) = (object(&p, from)?, object(&p, to)?);
    let f = r.element(&p, morphism)?;
    if !f.is_zero() && (f.endpoints() != Some((x, y)) || f.degree() != Some(0)) {
        return Err(CmdError::input(format!("`{morphism}` is not a degree 0 morphism {from} -> {to}")));
    }
    if !p.d(&f).is_zero() {
        return Err(CmdError::input(format!("`{morphism}` is not closed")));
    }
    let (lo, hi) = flags.window_or(-3, 3);
    let cap = flags.len_or(8);
    let rep = check_cone(&p, x, y, &f, lo, hi, cap, cap)?;
    let ok = rep.ideal_rewriting && rep.ideal_span && rep.fully_faithful && rep.hom_cone && rep.contraction != Some(false);
    let mut m = Map::new();
    m.insert("window".into(), json!([lo, hi]));
    m.insert("ideal_rewriting".into(), json!(rep.ideal_rewriting));
    m.insert("ideal_span".into(), json!(rep.ideal_span));
    m.insert("fully_faithful".into(), json!(rep.fully_faithful));
    m.insert("hom_cone".into(), json!(rep.hom_cone));
    m.insert("contraction".into(), json!(rep.contraction));
    m.insert("rules_complete".into(), json!(rep.rules_complete));
    if flags.verify {
        let k = dgcat::add_cone(&p, x, y, &f, "cone")?;
        let v = k.validate(cap).is_ok();
        m.insert("verified".into(), json!(v));
        return Ok(Outcome::new(ok && v, Value::Object(m)));
    }
    Ok(Outcome::new(ok, Value::Object(m)))
}

fn k_report(flags: &Flags) -> Res {
    let cap = flags.len_or(6);
    let (lo, hi) = flags.window_or(-4, 0);
    let k = k_category::<Q>();
    let d_squared = k.validate(8).is_ok();
    let (lhs, rhs) = remark_identity::<Q>();
    let identity = lhs.sub(&rhs).is_zero();
    let emb = k_embed::<Q>().check(lo, hi, cap, 2 * cap);
    let coh = bounded_k_cohomology::<Q>(cap, 2);
    let entries: Vec<Value> = coh
        .entries
        .iter()
        .map(|e| json!({ "source": k.quiver.objects[e.src], "target": k.quiver.objects[e.tgt], "degree": e.degree, "cycles": e.cycles, "explained": e.explained, "canonical_class_as_expected": e.canonical_nonzero }))
        .collect();
    let embed_ok = emb.forward_ok && emb.backward_ok && emb.source_roundtrip && emb.target_roundtrip && emb.contraction_roundtrip;
    let ok = d_squared && identity && embed_ok && coh.all_scalar();
    Ok(Outcome::new(
        ok,
        json!({
            "d_squared_zero": d_squared,
            "boundary_identity": identity,
            "embedding": {
                "window": [lo, hi],
                "max_word_len": cap,
                "d_compatible": emb.forward_ok && emb.backward_ok,
                "source_words": emb.source_words,
                "target_words": emb.target_words,
                "source_roundtrip": emb.source_roundtrip,
                "target_roundtrip": emb.target_roundtrip,
                "contraction_roundtrip": emb.contraction_roundtrip,
                "rules_complete": emb.rules_complete,
            },
            "bounded_k_cohomology": {
                "max_word_len": coh.cap,
                "slack": coh.slack,
                "square_trivial": coh.square_trivial,
                "all_scalar": coh.all_scalar(),
                "entries": entries,
            },
        }),
    ))
}

fn dgcat_mor(r: &Resolver, name: &str, flags: &Flags) -> Res {
    let p = r.presentation(&id(name))?;
    let b = finite_truncation(&p, name, flags.len_or(6))?;
    let m = mor_category(&b, default_mor_objects(&b))?;
    let valid = m.cat.validate();
    let crit = equivalence_criterion(&m, 6)?;
    let po = path_object(&b, 4)?;
    let factors = po.factors_diagonal();
    let iso = po.isofibration_report(2)?;
    let diag = classify_dg_functor(&po.diag, 4)?;
    let pi = classify_dg_functor(&po.pi, 2)?;
    let objects: Vec<Value> = m.objects.iter().map(|o| json!({ "x1": b.objects[o.x1], "x0": b.objects[o.x0], "f": b.render(&o.f) })).collect();
    let ok = valid.is_ok() && crit.disagreements.is_empty() && factors && iso.failures == 0 && diag.quasi_equivalence;
    let mut out = json!({
        "objects": objects,
        "mor_valid": valid.as_ref().map_or_else(|e| json!(e.to_string()), |_| json!("ok")),
        "equivalence_criterion": { "checked": crit.checked, "equivalences": crit.equivalences, "disagreements": crit.disagreements },
        "path_object": {
            "objects": po.mor.objects.len(),
            "factors_diagonal": factors,
            "explicit_lifts": iso.lifts,
            "lift_failures": iso.failures,
            "diagonal": class_json(&diag),
            "projections": class_json(&pi),
        },
    });
    if flags.verify {
        let v = po.diag.check().is_ok() && po.pi.check().is_ok() && po.mor.cat.validate().is_ok();
        out["verified"] = json!(v);
        return Ok(Outcome::new(ok && v, out));
    }
    Ok(Outcome::new(ok, out))
}

fn dgcat_zigzag(r: &Resolver, name: &str, from: &str, to: &str, morphism: &str, flags: &Flags) -> Res {
    let p = r.presentation(&id(name))?;
    let cap = flags.len_or(6);
    let b = finite_truncation(&p, name, cap)?;
    let (x, y) = (object(&p, from)?, object(&p, to)?);
    let theta = to_elem(&p, &b, &r.element(&p, morphism)?, cap)?;
    match zigzag_endomorphisms(&b, x, y, &theta) {
        Ok(z) => {
            let ok = z.left_quasi_iso && z.right_quasi_iso;
            let mut m = json!({
                "middle_dims": dims_json(&z.middle),
                "left": { "target_dim": z.left.target.len(), "quasi_iso": z.left_quasi_iso },
                "right": { "target_dim": z.right.target.len(), "quasi_iso": z.right_quasi_iso },
            });
            if flags.verify {
                let v = z.left.check().is_ok() && z.right.check().is_ok() && z.middle.validate().is_ok();
                m["verified"] = json!(v);
                return Ok(Outcome::new(ok && v, m));
            }
            Ok(Outcome::new(ok, m))
        }
        Err(ZigzagError::NotEquivalence) => {
            Ok(Outcome::new(false, json!({ "counterexample": format!("{morphism} is not invertible in the homotopy category") })))
        }
        Err(ZigzagError::Dg(e)) => Err(e.into()),
    }
}
