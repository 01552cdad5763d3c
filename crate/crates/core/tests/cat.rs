use modelbench::cat::colimits::{colimit_presentation, verify_colimit, DEFAULT_SATURATION_CAP};
use modelbench::cat::congruence::HomCongruence;
use modelbench::cat::limits::{limit, verify_limit, CatDiagram};
use modelbench::cat::*;
use std::collections::HashMap;
use std::sync::Arc;

fn arc(c: FinCat) -> Arc<FinCat> {
    Arc::new(c)
}

fn k(n: usize) -> Arc<FinCat> {
    arc(parallel_arrows(n))
}

fn collapse_k2() -> Functor {
    Functor::from_names(k(2), k(1), &[("0", "0"), ("1", "1")], &[("a1", "a1"), ("a2", "a1")]).unwrap()
}

fn inclusion_k0() -> Functor {
    Functor::from_names(k(0), k(1), &[("0", "0"), ("1", "1")], &[]).unwrap()
}

#[test]
fn interval_and_parallel_arrows_validate() {
    assert!(interval().validate().is_ok());
    assert!(parallel_arrows(2).validate().is_ok());
    assert_eq!(parallel_arrows(2).num_morphisms(), 4);
}

#[test]
fn broken_associativity_is_reported() {
    // One object, morphisms e, a, b with a∘a = b, a∘b = e, b∘a = b: (a∘a)∘a = b∘a = b
    // but a∘(a∘a) = a∘b = e.
    let objects = vec!["x".to_string()];
    let m = |id: &str| Morphism { id: id.into(), dom: 0, cod: 0 };
    let morphisms = vec![m("e"), m("a"), m("b")];
    let mut table = HashMap::new();
    for f in 0..3 {
        table.insert((0, f), f);
        table.insert((f, 0), f);
    }
    table.insert((1, 1), 2);
    table.insert((1, 2), 0);
    table.insert((2, 1), 2);
    table.insert((2, 2), 2);
    let c = FinCat::from_raw_table(objects, morphisms, vec![0], &table).unwrap();
    assert_eq!(c.validate(), CatValidation::AssociativityFailure { h: "a".into(), g: "a".into(), f: "a".into() });
}

#[test]
fn factor_category_examples() {
    let c = k(2);
    let eq = HomCongruence::generate(&c, &[]).unwrap();
    let (q, can) = factor_category(&eq);
    assert!(isomorphic(&q, &c).is_some());
    assert!(can.is_full() && can.is_dense());

    let r = HomCongruence::by_names(&c, &[("a1", "a2")]).unwrap();
    assert!(r.is_congruence());
    let (q, can) = factor_category(&r);
    assert!(isomorphic(&q, &k(1)).is_some());
    assert!(can.is_full() && can.is_dense() && can.obj == vec![0, 1]);

    let i = arc(interval());
    let r = HomCongruence::by_names(&i, &[("Id_1", "Id_1")]).unwrap();
    assert!(isomorphic(&factor_category(&r).0, &i).is_some());

    assert!(HomCongruence::by_names(&c, &[("a1", "Id_0")]).is_err());
}

#[test]
fn standard_factorization_examples() {
    let id = Functor::identity(&k(2));
    let s = standard_factorization(&id);
    assert!(s.tilde.is_isomorphism());

    let f = collapse_k2();
    let s = standard_factorization(&f);
    assert!(s.tilde_faithful && s.tilde_dense && s.tilde_equivalence);
    let composite = s.can.then(&s.tilde).then(&s.inc);
    assert_eq!((composite.obj, composite.mor), (f.obj.clone(), f.mor.clone()));

    let g = inclusion_k0();
    let s = standard_factorization(&g);
    assert!(!g.is_full());
    assert!(s.tilde_faithful && s.tilde_dense && !s.tilde.is_full() && !s.tilde_equivalence);
}

#[test]
fn image_factorization_hom_counts() {
    for f in [collapse_k2(), inclusion_k0(), Functor::identity(&k(2))] {
        let im = image_factorization(&f);
        let (c, d) = (&*f.source, &*f.target);
        for x in 0..c.num_objects() {
            for y in 0..c.num_objects() {
                assert_eq!(im.middle.hom(x, y).len(), d.hom(f.obj[x], f.obj[y]).len());
            }
        }
        let composite = im.first.then(&im.second);
        assert_eq!(composite.mor, f.mor);
        assert!(im.second.is_full() && im.second.is_faithful());
    }
    let im = image_factorization(&collapse_k2());
    assert!(isomorphic(&im.middle, &k(1)).is_some());
}

#[test]
fn path_categories() {
    let s = path_category(&Quiver::a2(), 2);
    assert!(s.total);
    let c = s.category.unwrap();
    let names: Vec<&str> = c.morphisms().iter().map(|m| m.id.as_str()).collect();
    assert_eq!(names, vec!["e1", "e2", "alpha"]);

    let s = path_category(&Quiver::jordan(), 3);
    assert!(!s.total);
    let names: Vec<String> = s.paths.iter().map(|p| p.name(&Quiver::jordan())).collect();
    assert_eq!(names, vec!["e*", "alpha", "alpha.alpha", "alpha.alpha.alpha"]);
    for n in 0..10 {
        assert_eq!(path_category(&Quiver::jordan(), n).paths.len(), n + 1);
    }

    let s = path_category(&Quiver::default(), 4);
    assert!(s.total);
    assert_eq!(s.category.unwrap().num_morphisms(), 0);
}

#[test]
fn free_forgetful_adjunction() {
    let i = arc(interval());
    let w = adjunction_check(&Quiver::a2(), &i).unwrap();
    assert!(w.is_bijection());
    // Quiver maps A2 → U(I): one per morphism of I.
    assert_eq!(w.quiver_maps, 4);
    let w = adjunction_check(&Quiver::default(), &i).unwrap();
    assert_eq!((w.functors, w.quiver_maps), (1, 1));
    let w = adjunction_check(&Quiver::a2(), &arc(terminal())).unwrap();
    assert_eq!((w.functors, w.quiver_maps), (1, 1));
    assert!(adjunction_check(&Quiver::jordan(), &i).is_err());
}

#[test]
fn functor_enumeration_counts() {
    for (_, c) in corpus::full() {
        let one = arc(terminal());
        assert_eq!(enumerate_functors(&one, &c, DEFAULT_GUARD).unwrap().len(), c.num_objects());
        let n = c.num_objects();
        assert_eq!(count_functors(&k(0), &c), n * n);
    }
    // Functors I → I against the objects of the independent arrow-category
    // construction of Hom(I, I): one per isomorphism of I.
    let i = arc(interval());
    let isos = (0..i.num_morphisms()).filter(|&f| i.is_iso(f)).count();
    assert_eq!(count_functors(&i, &i), isos);
    assert!(enumerate_functors(&k(3), &k(3), 2).is_err());
}

#[test]
fn limits() {
    let empty = CatDiagram::discrete(vec![]);
    let l = limit(&empty);
    assert_eq!((l.category.num_objects(), l.category.num_morphisms()), (1, 1));

    let c = k(2);
    let i = arc(interval());
    let prod = CatDiagram::discrete(vec![c.clone(), i.clone()]);
    let l = limit(&prod);
    assert_eq!(l.category.num_objects(), c.num_objects() * 2);
    assert!(isomorphic(&l.category, &arc(product(&c, &i))).is_some());
    let apexes = vec![arc(terminal()), k(1), i.clone()];
    assert!(verify_limit(&prod, &l, &apexes, DEFAULT_GUARD).unwrap());

    let one = arc(terminal());
    let a2 = arc(arrow_category());
    let i1 = point(&a2, 0);
    let i2 = point(&a2, 1);
    let eq = CatDiagram::from_parallel_pair(one.clone(), a2.clone(), i1, i2);
    eq.check().unwrap();
    let l = limit(&eq);
    assert_eq!(l.category.num_objects(), 0);
    assert!(verify_limit(&eq, &l, &apexes, DEFAULT_GUARD).unwrap());
}

#[test]
fn colimits() {
    let c = k(2);
    let i = arc(interval());
    let sum = CatDiagram::discrete(vec![c.clone(), i.clone()]);
    let col = colimit_presentation(&sum, DEFAULT_SATURATION_CAP, None);
    assert!(col.saturation.total);
    let cat = col.category.clone().unwrap();
    assert!(isomorphic(&cat, &arc(coproduct(&c, &i))).is_some());
    assert!(verify_colimit(&sum, &col, &[arc(terminal()), k(1), i.clone()], DEFAULT_GUARD).unwrap());

    let one = arc(terminal());
    let a2 = arc(arrow_category());
    let co = CatDiagram::from_parallel_pair(one.clone(), a2.clone(), point(&a2, 0), point(&a2, 1));
    let col = colimit_presentation(&co, DEFAULT_SATURATION_CAP, Some(5));
    assert!(col.possibly_infinite());
    assert_eq!(col.presentation.quiver.vertices.len(), 1);
    let reduced = col.presentation.reduced();
    assert_eq!(reduced.quiver.arrows.len(), 1);
    assert!(reduced.relations.is_empty());
    for cap in 0..=8 {
        let col = colimit_presentation(&co, DEFAULT_SATURATION_CAP, Some(cap));
        assert_eq!(col.saturation.classes.len(), cap + 1);
    }
    let col = colimit_presentation(&co, 50, None);
    assert!(col.possibly_infinite());
    assert!(col.saturation.classes.len() <= 50);

    // Pushout of C ← ∅ → 1.
    let e = arc(FinCat::empty());
    let span = CatDiagram::span(e.clone(), c.clone(), one.clone(), Functor::from_empty(&c), Functor::from_empty(&one));
    span.check().unwrap();
    let col = colimit_presentation(&span, DEFAULT_SATURATION_CAP, None);
    assert!(col.saturation.total);
    assert!(isomorphic(col.category.as_ref().unwrap(), &arc(coproduct(&c, &one))).is_some());
}

#[test]
fn colimit_objects_are_colimit_of_object_sets() {
    // Pushout of I ← 1 → I gluing 1 to 0: objects {0,1} ⊔ {0,1} / (1 ~ 0').
    let one = arc(terminal());
    let i = arc(interval());
    let span = CatDiagram::span(one.clone(), i.clone(), i.clone(), point(&i, 1), point(&i, 0));
    let col = colimit_presentation(&span, DEFAULT_SATURATION_CAP, None);
    assert_eq!(col.presentation.quiver.vertices.len(), 3);
    let cat = col.category.clone().unwrap();
    // Gluing two invertible arrows end to end gives the chaotic category on 3 objects.
    assert_eq!(cat.num_morphisms(), 9);
    assert!(cat.is_groupoid());
    assert!(verify_colimit(&span, &col, &[one.clone(), i.clone(), k(1)], DEFAULT_GUARD).unwrap());
}

#[test]
fn quasi_inverse_search() {
    let f = collapse_k2();
    assert!(find_quasi_inverse(&f, DEFAULT_GUARD).unwrap().is_none());
    let i = arc(interval());
    let one = arc(terminal());
    let inc = point(&i, 0);
    assert!(is_equivalence(&inc));
    let q = find_quasi_inverse(&inc, DEFAULT_GUARD).unwrap().unwrap();
    assert!(q.unit.is_natural() && q.counit.is_natural() && q.unit.is_iso());
    assert_eq!(q.inverse.target, one);
}
