use modelbench::cat::enumerate::{enumerate_functors, DEFAULT_GUARD};
use modelbench::cat::*;
use modelbench::catmodel::*;
use modelbench::lifting::axioms::{check_model_axioms, AxiomOptions, AxiomStatus, ModelTriple};
use modelbench::lifting::cell::{small_object_factorization, SoaStatus};
use modelbench::lifting::*;
use std::sync::Arc;

fn arc(c: FinCat) -> Arc<FinCat> {
    Arc::new(c)
}

fn k(n: usize) -> Arc<FinCat> {
    arc(parallel_arrows(n))
}

fn amb() -> CatAmbient {
    CatAmbient::new(DEFAULT_GUARD)
}

fn brute() -> CatAmbient {
    CatAmbient::enumerative(DEFAULT_GUARD)
}

/// Every functor between members of the small corpus.
fn small_functors() -> Vec<Functor> {
    let cats = corpus::small(3, 8);
    let mut out = Vec::new();
    for (_, c) in &cats {
        for (_, d) in &cats {
            out.extend(enumerate_functors(c, d, DEFAULT_GUARD).unwrap());
        }
    }
    out
}

#[test]
fn iso_square_has_a_lift() {
    let i = arc(interval());
    let swap = Functor::new(i.clone(), i.clone(), vec![1, 0], vec![1, 0, 3, 2]).unwrap();
    let g = to_terminal(&i);
    let one = g.target.clone();
    let top = Functor::identity(&i);
    let bottom = Functor::identity(&one);
    let sq = Square::new(&swap, &g, &top, &to_terminal(&i).then(&bottom));
    assert!(square_commutes(&brute(), &sq));
    let w = find_lifting(&brute(), &sq).unwrap().unwrap();
    assert!(square_lift_ok(&brute(), &sq, &w.h));
    assert!(w.h.same(&swap.inverse().unwrap()));
}

#[test]
fn identity_square_on_non_iso_has_no_lift() {
    let f = inclusion_of_discrete();
    let sq = Square::new(&f, &f, &Functor::identity(&f.source), &Functor::identity(&f.target));
    assert!(find_lifting(&brute(), &sq).unwrap().is_none());
    assert!(!is_orthogonal(&amb(), &f, &f).unwrap().holds);
}

fn inclusion_of_discrete() -> Functor {
    Functor::new(k(0), k(1), vec![0, 1], vec![0, 1]).unwrap()
}

#[test]
fn point_of_interval_lifts_constructively_against_projection() {
    let i = arc(interval());
    let cyl = cylinder(&i);
    let inc0 = point(&i, 0);
    let top = point(&cyl.cyl, 0);
    let sq = Square::new(&inc0, &cyl.pr, &top, &Functor::identity(&i));
    assert!(square_commutes(&amb(), &sq));
    let w = lift_acyclic_injection_vs_isofibration(&sq).unwrap();
    assert!(w.constructive && square_lift_ok(&amb(), &sq, &w.h));
    assert_eq!(w.h.obj[0], 0);
}

#[test]
fn lifter_preconditions_are_reported() {
    let f = inclusion_of_discrete();
    let id = Functor::identity(&f.target);
    let sq = Square::new(&f, &id, &f, &id);
    assert_eq!(lift_acyclic_injection_vs_isofibration(&sq).unwrap_err(), LiftPrecondition::LeftNotAcyclicInjection);
    let collapse = Functor::new(k(2), k(1), vec![0, 1], vec![0, 1, 2, 2]).unwrap();
    let sq = Square::new(&f, &collapse, &Functor::new(k(0), k(2), vec![0, 1], vec![0, 1]).unwrap(), &id);
    assert_eq!(lift_injection_vs_acyclic_isofibration(&sq).unwrap_err(), LiftPrecondition::RightNotAcyclicIsofibration);
    let bad = Square::new(&f, &id, &Functor::new(k(0), k(1), vec![1, 0], vec![1, 0]).unwrap(), &id);
    assert_eq!(lift_injection_vs_acyclic_isofibration(&bad).unwrap_err(), LiftPrecondition::NotCommuting);
}

#[test]
fn identity_square_gives_identity_lift() {
    let c = k(2);
    let id = Functor::identity(&c);
    let sq = Square::new(&id, &id, &id, &id);
    assert!(lift_acyclic_injection_vs_isofibration(&sq).unwrap().h.same(&id));
    assert!(lift_injection_vs_acyclic_isofibration(&sq).unwrap().h.same(&id));
}

#[test]
fn orthogonality_examples() {
    let fs = test_functors();
    let i = arc(interval());
    let swap = Functor::new(i.clone(), i.clone(), vec![1, 0], vec![1, 0, 3, 2]).unwrap();
    for g in [inclusion_of_discrete(), fs[2].clone(), Functor::from_empty(&k(1))] {
        assert!(is_orthogonal(&brute(), &Functor::identity(&g.source), &g).unwrap().holds);
    }
    assert!(is_orthogonal(&brute(), &swap, &to_terminal(&i)).unwrap().holds);
    assert!(is_orthogonal(&amb(), &fs[0], &fs[2]).unwrap().holds);
    assert!(is_orthogonal(&amb(), &fs[0], &to_terminal(&k(1))).unwrap().holds);
    let not_surj = point(&i, 0);
    let o = is_orthogonal(&amb(), &fs[0], &not_surj).unwrap();
    assert!(!o.holds && o.counterexample.is_some());
    assert!(is_orthogonal(&amb(), &fs[2], &inclusion_of_discrete()).unwrap().holds);
    assert!(!is_orthogonal(&amb(), &fs[2], &fs[2]).unwrap().holds);
}

#[test]
fn orthogonality_profile_matches_structure_on_small_corpus() {
    for f in small_functors() {
        assert_eq!(orthogonality_profile(&amb(), &f).unwrap(), structural_profile(&f), "{f:?}");
    }
}

#[test]
fn fast_orthogonality_agrees_with_square_enumeration() {
    let fs = small_functors();
    let cofs: Vec<&Functor> = fs.iter().filter(|f| f.is_injective_on_objects()).take(40).collect();
    let fibs: Vec<&Functor> = fs.iter().filter(|f| f.is_isofibration()).take(40).collect();
    for f in &cofs {
        for g in &fibs {
            let fast = is_orthogonal(&amb(), f, g).unwrap();
            let slow = orthogonal_by_squares(&brute(), f, g).unwrap();
            assert_eq!(fast.holds, slow.holds);
            if slow.holds {
                assert_eq!(fast.squares_checked, slow.squares_checked);
            }
        }
    }
}

#[test]
fn classify_examples() {
    let i = arc(interval());
    let c = classify(&point(&i, 0));
    assert!(c.acyclic_injection && !c.surjective_on_objects);
    let cyl = cylinder(&k(2));
    assert!(classify(&cyl.pr).acyclic_isofibration);
    let c = classify(&inclusion_of_discrete());
    assert!(c.injection && !c.full && !c.equivalence);
}

#[test]
fn classification_invariants_on_small_corpus() {
    for f in small_functors() {
        let c = classify(&f);
        assert_eq!(c.acyclic_isofibration, c.full && c.faithful && c.surjective_on_objects);
        let (_, agrees) = classify_checked(&f, DEFAULT_GUARD).unwrap();
        assert!(agrees, "{f:?}");
    }
}

#[test]
fn constructive_lifters_agree_with_brute_force() {
    let fs = small_functors();
    let acyclic_inj: Vec<&Functor> = fs.iter().filter(|f| classify(f).acyclic_injection).collect();
    let isofib: Vec<&Functor> = fs.iter().filter(|f| f.is_isofibration()).collect();
    let inj: Vec<&Functor> = fs.iter().filter(|f| f.is_injective_on_objects()).collect();
    let acyclic_fib: Vec<&Functor> = fs.iter().filter(|f| classify(f).acyclic_isofibration).collect();
    let mut checked = 0;
    for (lefts, rights, second) in [(&acyclic_inj, &isofib, false), (&inj, &acyclic_fib, true)] {
        for f in lefts.iter().step_by(3) {
            for g in rights.iter().step_by(5) {
                let (f, g): (&Functor, &Functor) = (f, g);
                brute()
                    .squares(f, g, &mut |top, bottom| {
                        let sq = Square::new(f, g, top, bottom);
                        let oracle = find_lifting(&brute(), &sq).unwrap();
                        let built = if second {
                            lift_injection_vs_acyclic_isofibration(&sq)
                        } else {
                            lift_acyclic_injection_vs_isofibration(&sq)
                        };
                        assert_eq!(oracle.is_some(), built.is_ok());
                        if let Ok(w) = built {
                            assert!(square_lift_ok(&brute(), &sq, &w.h));
                        }
                        checked += 1;
                        Flow::Continue
                    })
                    .unwrap();
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn cylinder_factorization_examples() {
    let c = k(2);
    let fac = functor_cylinder_factorization(&Functor::identity(&c));
    assert!(isomorphic(&fac.middle, &arc(product(&c, &interval()))).is_some());
    assert!(classify(&fac.j).injection && classify(&fac.p).acyclic_isofibration);

    let i = arc(interval());
    let fac = functor_cylinder_factorization(&point(&i, 0));
    assert_eq!(fac.middle.num_objects(), 3);
    assert!(fac.middle.object_index("src/*").is_some() && fac.middle.object_index("tgt/0").is_some());
    let p = classify(&fac.p);
    assert!(p.full && p.faithful && p.surjective_on_objects);

    let fac = functor_cylinder_factorization(&Functor::from_empty(&k(2)));
    assert!(isomorphic(&fac.middle, &k(2)).is_some());
}

#[test]
fn cocylinder_factorization_examples() {
    let c = k(1);
    let fac = functor_cocylinder_factorization(&Functor::identity(&c));
    assert!(isomorphic(&fac.middle, &path_object(&c).path).is_some());

    let f = point(&k(2), 0);
    let fac = functor_cocylinder_factorization(&f);
    assert_eq!(fac.triples.len(), 1);
    assert!(classify(&fac.iota).acyclic_injection && fac.q.is_isofibration());

    let i = arc(interval());
    let fac = functor_cocylinder_factorization(&point(&i, 1));
    assert_eq!(fac.triples.len(), 2);

    let fac = functor_cocylinder_factorization(&Functor::from_empty(&k(2)));
    assert_eq!(fac.middle.num_objects(), 0);
}

#[test]
fn factorizations_on_small_corpus_have_the_declared_classes() {
    for f in small_functors() {
        let cyl = functor_cylinder_factorization(&f);
        assert!(cyl.p.then(&Functor::identity(&f.target)).same(&cyl.p));
        assert!(cyl.j.then(&cyl.p).same(&f));
        assert!(classify(&cyl.j).injection && classify(&cyl.p).acyclic_isofibration);
        let co = functor_cocylinder_factorization(&f);
        assert!(co.iota.then(&co.q).same(&f));
        assert!(classify(&co.iota).acyclic_injection && co.q.is_isofibration());
    }
}

#[test]
fn cylinder_and_path_objects() {
    let one = arc(terminal());
    assert!(isomorphic(&cylinder(&one).cyl, &arc(interval())).is_some());
    assert_eq!(cylinder(&k(2)).cyl.num_objects(), 4);
    let i = arc(interval());
    let p = path_object(&i);
    assert_eq!(p.path.num_objects(), 4);
    assert_eq!(p.path.num_objects(), enumerate_functors(&i, &i, DEFAULT_GUARD).unwrap().len());
    for c in [k(2), i.clone(), arc(arrow_category())] {
        let cyl = cylinder(&c);
        assert!(classify(&cyl.legs).injection && classify(&cyl.pr).acyclic_isofibration);
        assert!(cyl.i0.then(&cyl.pr).same(&Functor::identity(&c)));
        let p = path_object(&c);
        assert!(classify(&p.constant).acyclic_injection && p.ends.is_isofibration());
        assert!(p.constant.then(&p.p0).same(&Functor::identity(&c)));
    }
}

#[test]
fn natural_isomorphism_examples() {
    let c = k(2);
    let id = Functor::identity(&c);
    assert!(naturally_isomorphic(&id, &id).homotopic());
    let cyl = cylinder(&c);
    let r = naturally_isomorphic(&cyl.i0, &cyl.i1);
    assert!(r.agree() && r.homotopic());
    let d = k(0);
    let one = arc(terminal());
    let r = naturally_isomorphic(&constant(&one, &d, 0), &constant(&one, &d, 1));
    assert!(r.agree() && !r.homotopic());
    let h = cylinder_homotopy_check(&brute(), &cyl.i0, &cyl.i1, &cylinder(&c).i0, &cylinder(&c).i1).unwrap();
    assert!(h.is_some());
    let cy1 = cylinder(&one);
    let none = cylinder_homotopy_check(&brute(), &constant(&one, &d, 0), &constant(&one, &d, 1), &cy1.i0, &cy1.i1).unwrap();
    assert!(none.is_none());
}

#[test]
fn natural_isomorphism_routes_agree_on_small_corpus() {
    let cats = corpus::small(3, 8);
    for (_, c) in &cats {
        for (_, d) in &cats {
            let fs = enumerate_functors(c, d, DEFAULT_GUARD).unwrap();
            for f in fs.iter().take(12) {
                for g in fs.iter().take(12) {
                    assert!(naturally_isomorphic(f, g).agree(), "{f:?} {g:?}");
                }
            }
        }
    }
}

#[test]
fn homotopy_classes() {
    let one = arc(terminal());
    let i = arc(interval());
    let cls = ho_hom(&one, &i, DEFAULT_GUARD).unwrap();
    assert_eq!(cls.len(), 1);
    let cls = ho_hom(&one, &k(2), DEFAULT_GUARD).unwrap();
    assert_eq!(cls.len(), 2);
    assert_eq!(ho_hom(&k(0), &one, DEFAULT_GUARD).unwrap().len(), 1);
    let cls = ho_hom(&i, &i, DEFAULT_GUARD).unwrap();
    assert_eq!(cls.len(), 1);
    assert_eq!(cls[0].len(), 4);
    let (fs, rel) = left_homotopy_relation(&i, &i, DEFAULT_GUARD).unwrap();
    assert!(rel.iter().flatten().all(|&b| b) && fs.len() == 4);
}

#[test]
fn left_homotopy_is_an_equivalence_relation() {
    let cats = corpus::small(3, 6);
    for (_, a) in &cats {
        for (_, x) in &cats {
            let (fs, rel) = left_homotopy_relation(a, x, DEFAULT_GUARD).unwrap();
            let n = fs.len();
            for i in 0..n {
                assert!(rel[i][i]);
                for j in 0..n {
                    assert_eq!(rel[i][j], rel[j][i]);
                    for l in 0..n {
                        assert!(!(rel[i][j] && rel[j][l]) || rel[i][l]);
                    }
                }
            }
        }
    }
}

#[test]
fn pushout_and_pullback_remarks() {
    let apexes: Vec<Arc<FinCat>> = vec![arc(terminal()), k(0), arc(interval())];
    let i = arc(interval());
    let collapse = Functor::new(k(2), k(1), vec![0, 1], vec![0, 1, 2, 2]).unwrap();
    for f in [Functor::identity(&k(1)), point(&i, 0), collapse] {
        let po = functor_cylinder_pushout_check(&f, &apexes, DEFAULT_GUARD).unwrap();
        assert!(po.holds(), "{:?}", po.equations);
        assert!(po.cones_checked > 0);
        let pb = cocylinder_pullback_check(&f, &apexes, DEFAULT_GUARD).unwrap();
        assert!(pb.holds(), "{:?}", pb.equations);
    }
}

#[test]
fn retracts_preserve_classes() {
    let fs: Vec<Functor> = small_functors().into_iter().step_by(7).collect();
    let mut found = 0;
    for f in &fs {
        for f2 in &fs {
            if let Some(w) = find_retract(&brute(), f, f2).unwrap() {
                assert!(retract_ok(&brute(), f, f2, &w));
                let (c, c2) = (classify(f), classify(f2));
                assert!(!c2.equivalence || c.equivalence);
                assert!(!c2.injection || c.injection);
                assert!(!c2.isofibration || c.isofibration);
                found += 1;
            }
        }
    }
    assert!(found > fs.len());
}

#[test]
fn retract_of_empty_maps_is_retract_of_targets() {
    let (a, b) = (k(0), k(1));
    let f = Functor::from_empty(&a);
    let f2 = Functor::from_empty(&b);
    let w = find_retract(&brute(), &f, &f2).unwrap();
    assert_eq!(w.is_some(), !retraction_pairs(&brute(), &a, &b).unwrap().is_empty());
    let f3 = Functor::from_empty(&arc(terminal()));
    assert!(find_retract(&brute(), &Functor::from_empty(&k(2)), &f3).unwrap().is_none());
}

#[test]
fn self_orthogonal_implies_iso() {
    for f in small_functors().iter().step_by(5) {
        if is_orthogonal(&amb(), f, f).unwrap().holds {
            assert!(f.is_isomorphism(), "{f:?}");
        }
    }
}

#[test]
fn two_out_of_three_for_equivalences() {
    let cats = corpus::small(2, 4);
    for (_, a) in &cats {
        for (_, b) in &cats {
            for (_, c) in &cats {
                for f in enumerate_functors(a, b, DEFAULT_GUARD).unwrap() {
                    for g in enumerate_functors(b, c, DEFAULT_GUARD).unwrap() {
                        let n = [classify(&f).equivalence, classify(&g).equivalence, classify(&f.then(&g)).equivalence];
                        assert_ne!(n.iter().filter(|&&b| b).count(), 2);
                    }
                }
            }
        }
    }
}

#[test]
fn broken_triple_fails_identities() {
    let triple = ModelTriple::new(|f: &Functor| f.is_injective_on_objects(), |_: &Functor| false, |f: &Functor| f.is_isofibration());
    let objs = vec![arc(terminal()), k(0)];
    let reps = check_model_axioms(&amb(), &triple, &objs, None, AxiomOptions::default()).unwrap();
    assert_eq!(reps[0].axiom, "MC1");
    assert_eq!(reps[0].status, AxiomStatus::Fail);
}

#[test]
fn model_axioms_on_base_corpus() {
    let objs: Vec<Arc<FinCat>> = corpus::base().into_iter().map(|(_, c)| c).collect();
    for r in check_cat_model(&objs, AxiomOptions::default()).unwrap() {
        assert!(r.passed(), "{} {:?}", r.axiom, r.counterexample);
    }
}

#[test]
fn small_object_argument_in_cat() {
    let gens: Vec<Functor> = test_functors()[..3].to_vec();
    let cells = CatCells::new(gens);
    let i = arc(interval());
    let id = Functor::identity(&i);
    let r = small_object_factorization(&cells, &id, 8).unwrap();
    assert_eq!(r.status, SoaStatus::Converged);
    assert!(r.cell.stages.is_empty() && r.right.same(&id));

    let a2 = arc(arrow_category());
    let r = small_object_factorization(&cells, &Functor::from_empty(&a2), 8).unwrap();
    assert!(r.invariant_held);
    assert_eq!(r.status, SoaStatus::Converged);
    assert!(classify(&r.right).acyclic_isofibration);
    assert!(r.cell.composite.is_injective_on_objects());
}
