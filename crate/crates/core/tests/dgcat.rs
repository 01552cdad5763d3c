use modelbench::dg::concrete::{elem_add, unit};
use modelbench::dg::{BasisMap, ConcreteDgCat, Elem, FreeMap, NcPoly, Presentation};
use modelbench::dgalg::cocylinder::cocylinder;
use modelbench::dgalg::generator_matching;
use modelbench::dgcat::cells::{bounded_extension_check, glue};
use modelbench::dgcat::corpus::{finite_corpus, indiscrete_pair, retract_pair};
use modelbench::dgcat::*;
use modelbench::Q;
use proptest::prelude::*;
use std::sync::Arc;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn finite(p: &Presentation<Q>, lo: i64, hi: i64, cap: u32) -> Arc<ConcreteDgCat<Q>> {
    let (c, _) = p.truncate(lo, hi, cap);
    assert!(c.supported);
    Arc::new(c)
}

fn basis_of(c: &ConcreteDgCat<Q>, label: &str) -> Elem<Q> {
    let i = (0..c.len()).find(|&i| c.label(i) == label).unwrap_or_else(|| panic!("no basis element {label}: {:?}", (0..c.len()).map(|i| c.label(i)).collect::<Vec<_>>()));
    unit(i)
}

fn identity_map(c: &Arc<ConcreteDgCat<Q>>) -> BasisMap<Q> {
    BasisMap { source: c.clone(), target: c.clone(), obj: (0..c.num_objects()).collect(), images: (0..c.len()).map(unit).collect() }
}

fn dims(c: &ConcreteDgCat<Q>) -> Vec<usize> {
    let mut out = Vec::new();
    for x in 0..c.num_objects() {
        for y in 0..c.num_objects() {
            for n in c.lo..=c.hi {
                out.push(c.dim(x, y, n));
            }
        }
    }
    out
}

#[test]
fn k_generators_and_weights() {
    let k = k_category::<Q>();
    assert!(k.validate(8).is_ok());
    let w: Vec<u32> = k.quiver.gens.iter().map(|g| g.weight).collect();
    assert_eq!(w, vec![1, 1, 2, 2, 3]);
}

#[test]
fn boundary_of_the_degree_minus_three_element() {
    let (lhs, rhs) = remark_identity::<Q>();
    assert!(lhs.sub(&rhs).is_zero());
}

#[test]
fn k_embeds_in_the_contracted_cone() {
    let r = k_embed::<Q>().check(-4, 0, 6, 12);
    assert!(r.forward_ok && r.backward_ok);
    assert!(r.source_roundtrip && r.target_roundtrip && r.contraction_roundtrip);
    assert!(r.rules_complete);
    assert!(r.source_words > 0 && r.target_words > 0);
}

#[test]
fn k_homs_are_the_ground_field_up_to_weight() {
    let r = bounded_k_cohomology::<Q>(6, 2);
    assert!(r.all_scalar(), "{:?}", r.entries.iter().filter(|e| e.cycles != e.explained || !e.canonical_nonzero).collect::<Vec<_>>());
}

#[test]
fn spheres_have_one_dimensional_hom() {
    for n in 0..3 {
        let c = finite(&sphere_cat::<Q>(n), -n, 0, 3);
        for m in c.lo..=c.hi {
            assert_eq!(c.dim(0, 1, m), usize::from(m == -n));
            assert_eq!(c.dim(1, 0, m), 0);
        }
        assert_eq!(c.dim(0, 0, 0), 1);
    }
}

#[test]
fn adjoining_a_closed_morphism_to_two_points_gives_the_next_sphere() {
    for n in 0..3 {
        let two = discrete::<Q>(&["1", "2"]);
        let adjoined = adjoin_morphism(&two, 0, 1, &NcPoly::zero(), n, "u").unwrap();
        let sphere = sphere_cat::<Q>(n + 1);
        assert!(generator_matching(&adjoined, &sphere).is_some());
        assert!(generator_matching(&adjoined, &sphere_cat::<Q>(n)).is_none());
        let d = disc_cat::<Q>(n + 1);
        assert!(generator_matching(&adjoined, &d).is_none());
    }
}

/// `𝒮(n) → 𝒟(n+1)`, `𝒮(n) → 𝕂 ⊔ 𝕂`, `𝒟(n+1) → 𝒮(n+1)`, `𝕂 ⊔ 𝕂 → 𝒮(n+1)`.
fn sphere_square(n: i64) -> (Diagram<Q>, Diagram<Q>, Arc<ConcreteDgCat<Q>>, Arc<ConcreteDgCat<Q>>) {
    let s = finite(&sphere_cat::<Q>(n), -n - 1, 0, 3);
    let dd = finite(&disc_cat::<Q>(n + 1), -n - 1, 0, 3);
    let kk = finite(&discrete::<Q>(&["1", "2"]), -n - 1, 0, 3);
    let s1 = finite(&sphere_cat::<Q>(n + 1), -n - 1, 0, 3);
    let by_label = |src: &Arc<ConcreteDgCat<Q>>, tgt: &Arc<ConcreteDgCat<Q>>, rename: &dyn Fn(&str) -> Option<String>| BasisMap {
        source: src.clone(),
        target: tgt.clone(),
        obj: vec![0, 1],
        images: (0..src.len()).map(|i| rename(src.label(i)).map(|l| basis_of(tgt, &l)).unwrap_or_default()).collect(),
    };
    let ids = |l: &str| l.starts_with("1_").then(|| l.to_string());
    let s_to_d = by_label(&s, &dd, &|l| if l == "u" { Some("dt".into()) } else { ids(l) });
    let s_to_kk = by_label(&s, &kk, &|l| ids(l));
    let d_to_s1 = by_label(&dd, &s1, &|l| if l == "t" { Some("u".into()) } else { ids(l) });
    let kk_to_s1 = by_label(&kk, &s1, &|l| ids(l));
    for m in [&s_to_d, &s_to_kk, &d_to_s1, &kk_to_s1] {
        m.check().unwrap();
    }
    let span = Diagram { cats: vec![s.clone(), dd.clone(), kk.clone()], arrows: vec![(0, 1, s_to_d), (0, 2, s_to_kk)] };
    let cospan = Diagram { cats: vec![dd, s1.clone(), kk], arrows: vec![(0, 1, d_to_s1), (2, 1, kk_to_s1)] };
    (span, cospan, s, s1)
}

#[test]
fn sphere_square_is_a_pushout_and_a_pullback() {
    for n in 0..2 {
        let (span, cospan, s, s1) = sphere_square(n);
        let colim = colimit_presentation(&span);
        let glued = finite(&colim.presentation, -n - 1, 0, 3);
        assert_eq!(dims(&glued), dims(&s1));
        let lim = limit(&cospan).unwrap();
        lim.cat.validate().unwrap();
        let pairs: Vec<usize> = lim.tuples.iter().map(|t| t[0]).collect();
        assert_eq!(pairs, vec![0, 1]);
        assert_eq!(dims(&lim.cat), dims(&s));
        let u = lim.cat.block(0, 1, -n);
        assert_eq!(u.len(), 1);
        assert!(lim.cat.d(&unit(u[0])).is_empty());
    }
}

#[test]
fn contracting_an_object() {
    let s = sphere_cat::<Q>(0);
    let c = contract_object(&s, 1, "c");
    let cgen = c.gen("c");
    assert!(c.reduce(&c.rules(6), &c.d(&cgen)).sub(&c.id(1)).is_zero());
    let (t, _) = c.truncate(-2, 0, 6);
    let w = contraction(&t, 1).expect("object 2 is contractible");
    assert!(w.verify(&t));
    assert!(contraction(&t, 0).is_none());
}

/// Words of the quiver from `x` to `y` in degree `n` with weight at most `cap`.
fn count_words(p: &Presentation<Q>, x: usize, y: usize, n: i64, cap: u32) -> usize {
    let mut count = 0;
    let mut frontier: Vec<(usize, i64, u32)> = vec![(x, 0, 0)];
    while let Some((at, deg, w)) = frontier.pop() {
        if at == y && deg == n {
            count += 1;
        }
        for g in p.quiver.gens.iter().filter(|g| g.src == at && w + g.weight <= cap) {
            frontier.push((g.tgt, deg + g.degree, w + g.weight));
        }
    }
    count
}

#[test]
fn adjoined_morphisms_grow_hom_like_words() {
    let free_loop = adjoin_morphism(&ground_cat::<Q>(), 0, 0, &NcPoly::zero(), 1, "x").unwrap();
    let (t, _) = free_loop.truncate(-8, 0, 4);
    for n in -8..=0 {
        assert_eq!(t.dim(0, 0, n), count_words(&free_loop, 0, 0, n, 4), "degree {n}");
        assert_eq!(t.dim(0, 0, n), usize::from(n % 2 == 0));
    }
    let s = sphere_cat::<Q>(0);
    let killed = adjoin_morphism(&s, 0, 1, &s.gen("u"), 0, "t").unwrap();
    let t = finite(&killed, -1, 0, 3);
    for n in -1..=0 {
        assert_eq!(t.dim(0, 1, n), count_words(&killed, 0, 1, n, 3));
    }
    assert!(t.hom_complex(0, 1).is_acyclic_on(-1, 0));
}

#[test]
fn homotopy_category_of_a_truncated_k() {
    let (t, _) = k_category::<Q>().truncate(-2, 0, 6);
    let t = Arc::new(t);
    let h0 = H0Category::new(&t);
    assert_eq!(h0.dim(0, 1), 1);
    assert_eq!(h0.dim(0, 0), 1);
    let f = basis_of(&t, "f");
    let g = basis_of(&t, "g");
    let inv = h0.inverse(0, 1, &f).unwrap().expect("f is invertible up to homotopy");
    assert_eq!(h0.homotopic(1, 0, &inv, &g), Some(true));
    assert!(h0.inverse(0, 1, &Elem::new()).unwrap().is_none());
    let id = t.identity[0].clone();
    assert_eq!(h0.inverse(0, 0, &id).unwrap(), Some(id));
}

#[test]
fn equivalence_witnesses() {
    let r = finite(&retract_pair::<Q>(), -1, 0, 4);
    let f = basis_of(&r, "f");
    let g = basis_of(&r, "g");
    let w = homotopy_equivalence(&r, 0, 1, &f).unwrap().expect("f is an equivalence");
    w.verify(&r).unwrap();
    assert!(homotopy_equivalence(&r, 0, 1, &Elem::new()).unwrap().is_none());
    let up = upgrade_witness(&r, 0, 1, &f, &g, &Elem::new()).unwrap().expect("f g = 1 exactly");
    up.verify(&r).unwrap();
    assert_eq!(up.h_x, basis_of(&r, "h"));
    let arrow = finite(&sphere_cat::<Q>(0), 0, 0, 2);
    let u = basis_of(&arrow, "u");
    assert!(homotopy_equivalence(&arrow, 0, 1, &u).unwrap().is_none());
}

#[test]
fn functors_out_of_k() {
    let ground = finite(&ground_cat::<Q>(), 0, 0, 2);
    let id = ground.identity[0].clone();
    let homs = homs_from_k(&ground, 0, 0, &id).unwrap();
    let sol = homs.solutions.as_ref().expect("the identity extends");
    assert!(sol.contains(&[q(1)]));
    let w = homs.witness(&ground, &sol.particular);
    assert_eq!(w.g, id);
    assert!(w.h_x.is_empty() && w.h_y.is_empty() && w.r.is_empty());
    assert!(homs.cone_contraction_holds(&ground, &w, 0).unwrap());
    assert!(homs_from_k(&ground, 0, 0, &Elem::new()).unwrap().solutions.is_err());

    let r = finite(&retract_pair::<Q>(), -1, 0, 4);
    let f = basis_of(&r, "f");
    let homs = homs_from_k(&r, 0, 1, &f).unwrap();
    let sol = homs.solutions.as_ref().expect("f extends");
    let w = homs.witness(&r, &sol.particular);
    w.verify(&r).unwrap();
    for z in 0..2 {
        assert!(homs.cone_contraction_holds(&r, &w, z).unwrap());
    }
    let arrow = finite(&sphere_cat::<Q>(0), 0, 0, 2);
    let u = basis_of(&arrow, "u");
    let cert = homs_from_k(&arrow, 0, 1, &u).unwrap().solutions.expect_err("u is not invertible");
    assert!(cert.iter().any(|c| *c != q(0)));
}

#[test]
fn cone_of_the_sphere_generator() {
    let s = sphere_cat::<Q>(0);
    let r = check_cone(&s, 0, 1, &s.gen("u"), -3, 3, 8, 8).unwrap();
    assert!(r.ideal_rewriting && r.ideal_span && r.fully_faithful && r.hom_cone && r.rules_complete);
    assert_eq!(r.contraction, None);
}

#[test]
fn cone_of_an_identity_is_contractible() {
    let k = ground_cat::<Q>();
    let r = check_cone(&k, 0, 0, &k.id(0), -3, 3, 8, 8).unwrap();
    assert!(r.ideal_rewriting && r.ideal_span && r.fully_faithful && r.hom_cone && r.rules_complete);
    assert_eq!(r.contraction, Some(true));
}

#[test]
fn identity_functors_are_everything() {
    for (name, c) in finite_corpus::<Q>() {
        let cl = classify_dg_functor(&identity_map(&c), 2).unwrap();
        assert!(cl.quasi_equivalence && cl.full && cl.surjective_on_objects && cl.full_isofibration, "{name}: {cl:?}");
        assert!(cl.trivial_fibration());
    }
}

#[test]
fn mor_and_path_objects_on_the_corpus() {
    for (name, c) in finite_corpus::<Q>() {
        c.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
        let m = mor_category(&c, default_mor_objects(&c)).unwrap();
        m.cat.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
        let crit = equivalence_criterion(&m, 6).unwrap();
        assert!(crit.disagreements.is_empty(), "{name}");
        assert!(crit.equivalences > 0);
        let p = path_object(&c, 4).unwrap();
        assert!(p.factors_diagonal());
        assert_eq!(p.isofibration_report(2).unwrap().failures, 0, "{name}");
        assert!(classify_dg_functor(&p.diag, 4).unwrap().quasi_equivalence, "{name}");
        let pi = classify_dg_functor(&p.pi, 2).unwrap();
        assert!(pi.full, "{name}");
        // Lifts whose source object lies outside the finite object list count as missing.
        assert_eq!(pi.full_isofibration, name != "dual-numbers", "{name}: {pi:?}");
    }
}

#[test]
fn mor_of_a_one_object_category_on_the_identity_is_the_cocylinder() {
    for (name, c) in finite_corpus::<Q>().into_iter().filter(|(_, c)| c.num_objects() == 1) {
        let m = mor_category(&c, vec![MorObject { x1: 0, x0: 0, f: c.identity[0].clone() }]).unwrap();
        let gamma = cocylinder(&c);
        let to_gamma = |k: usize| match m.slots[k] {
            (Slot::Zero, i) => gamma.slot0(i),
            (Slot::Middle, i) => gamma.middle(i),
            (Slot::One, i) => gamma.slot1(i),
        };
        let map = |e: &Elem<Q>| -> Elem<Q> { e.iter().map(|(&k, v)| (to_gamma(k), v.clone())).collect() };
        assert_eq!(m.cat.len(), gamma.gamma.len(), "{name}");
        for k in 0..m.cat.len() {
            let j = to_gamma(k);
            assert_eq!(m.cat.basis[k].degree, gamma.gamma.basis[j].degree, "{name}");
            assert_eq!(map(&m.cat.d(&unit(k))), gamma.gamma.d(&unit(j)), "{name}");
            for l in 0..m.cat.len() {
                assert_eq!(m.cat.compose_basis(k, l).map(|e| map(&e)), gamma.gamma.compose_basis(j, to_gamma(l)), "{name}");
            }
        }
    }
}

#[test]
fn mor_kernel_squares_to_zero() {
    assert!(kernel_square_zero_identity::<Q>());
}

#[test]
fn zigzags_between_endomorphism_algebras() {
    let ground = finite(&ground_cat::<Q>(), 0, 0, 2);
    let z = zigzag_endomorphisms(&ground, 0, 0, &ground.identity[0]).unwrap();
    assert!(z.left_quasi_iso && z.right_quasi_iso);

    let r = finite(&retract_pair::<Q>(), -1, 0, 4);
    let z = zigzag_endomorphisms(&r, 0, 1, &basis_of(&r, "f")).unwrap();
    assert!(z.left_quasi_iso && z.right_quasi_iso);
    assert_eq!(z.left.target.len(), 3);
    assert_eq!(z.right.target.len(), 1);
    z.middle.validate().unwrap();

    let iso = finite(&indiscrete_pair::<Q>(), 0, 0, 3);
    let z = zigzag_endomorphisms(&iso, 1, 0, &basis_of(&iso, "g")).unwrap();
    assert!(z.left_quasi_iso && z.right_quasi_iso);

    let arrow = finite(&sphere_cat::<Q>(0), 0, 0, 2);
    assert_eq!(zigzag_endomorphisms(&arrow, 0, 1, &basis_of(&arrow, "u")).err(), Some(ZigzagError::NotEquivalence));
}

#[test]
fn homotopies_between_functors() {
    let r = finite(&retract_pair::<Q>(), -1, 0, 4);
    let s = Arc::new(sphere_cat::<Q>(0));
    let f = FreeMap::new(s.clone(), r.clone(), vec![0, 1], vec![basis_of(&r, "f")]);
    f.check().unwrap();
    match cochain_homotopy_functors(&f, &f).unwrap() {
        FunctorHomotopy::Found(h) => {
            h.verify(&f, &f).unwrap();
            assert!(h.eta.iter().zip(&r.identity).all(|(e, id)| e.len() == 1 && e.keys().eq(id.keys())));
        }
        other => panic!("{other:?}"),
    }

    let g = FreeMap::new(s.clone(), r.clone(), vec![1, 1], vec![r.identity[1].clone()]);
    g.check().unwrap();
    match cochain_homotopy_functors(&f, &g).unwrap() {
        FunctorHomotopy::Found(h) => {
            h.verify(&f, &g).unwrap();
            assert!(homotopy_equivalence(&r, 1, 0, &h.eta[0]).unwrap().is_some());
            let (m, k) = h.to_mor(&f, &g).unwrap();
            m.cat.validate().unwrap();
            k.check().unwrap();
        }
        other => panic!("{other:?}"),
    }

    let arrow = finite(&sphere_cat::<Q>(0), 0, 0, 2);
    let point = Arc::new(ground_cat::<Q>());
    let to0 = FreeMap::new(point.clone(), arrow.clone(), vec![0], vec![]);
    let to1 = FreeMap::new(point, arrow, vec![1], vec![]);
    assert!(matches!(cochain_homotopy_functors(&to0, &to1).unwrap(), FunctorHomotopy::Obstructed { object: 0 }));
}

#[test]
fn coproducts_and_products() {
    let arrow = finite(&sphere_cat::<Q>(0), 0, 0, 2);
    let ground = finite(&ground_cat::<Q>(), 0, 0, 2);
    let d = Diagram { cats: vec![arrow.clone(), ground.clone()], arrows: vec![] };
    let colim = colimit_presentation(&d);
    let sum = finite(&colim.presentation, 0, 0, 3);
    assert_eq!(sum.num_objects(), 3);
    let new = colim.object_of[1][0];
    assert_eq!(sum.dim(new, new, 0), 1);
    for x in colim.object_of[0].iter() {
        assert_eq!(sum.dim(*x, new, 0) + sum.dim(new, *x, 0), 0);
    }
    assert_eq!(sum.dim(colim.object_of[0][0], colim.object_of[0][1], 0), 1);
    let prod = limit(&d).unwrap();
    assert_eq!(prod.cat.num_objects(), 2);
    let summed: Vec<usize> = dims(&arrow).iter().map(|d| d + 1).collect();
    assert_eq!(dims(&prod.cat), summed);
}

#[test]
fn empty_and_single_diagrams() {
    let empty = limit(&Diagram::<Q> { cats: vec![], arrows: vec![] }).unwrap();
    assert_eq!(empty.cat.num_objects(), 1);
    assert_eq!(empty.cat.len(), 0);
    let r = finite(&retract_pair::<Q>(), -1, 0, 4);
    let single = limit(&Diagram { cats: vec![r.clone()], arrows: vec![] }).unwrap();
    assert_eq!(dims(&single.cat), dims(&r));
    single.projections[0].check().unwrap();
    let id = identity_map(&r);
    let looped = limit(&Diagram { cats: vec![r.clone(), r.clone()], arrows: vec![(0, 1, id)] }).unwrap();
    assert_eq!(dims(&looped.cat), dims(&r));
}

#[test]
fn coequalizer_of_two_points() {
    let ground = finite(&ground_cat::<Q>(), 0, 0, 2);
    let two = finite(&discrete::<Q>(&["1", "2"]), 0, 0, 2);
    let pick = |x: usize| BasisMap { source: ground.clone(), target: two.clone(), obj: vec![x], images: vec![two.identity[x].clone()] };
    let d = Diagram { cats: vec![ground.clone(), two.clone()], arrows: vec![(0, 1, pick(0)), (0, 1, pick(1))] };
    let colim = colimit_presentation(&d);
    let c = finite(&colim.presentation, 0, 0, 3);
    assert_eq!(dims(&c), dims(&ground));
}

#[test]
fn attaching_cells_keeps_old_homs() {
    let s = sphere_cat::<Q>(0);
    let with_k = glue(&s, &k_category(), &[(0, 1)]);
    with_k.validate(6).unwrap();
    assert!(bounded_extension_check(&s, &with_k, -2, 0, 4, 2).iter().all(|e| e.ok()));
    for n in 0..2 {
        let with_disc = glue(&s, &disc_cat(n), &[(0, 0), (1, 1)]);
        let report = bounded_extension_check(&s, &with_disc, -n - 1, 0, 4, 2);
        assert!(report.iter().all(|e| e.ok()), "{report:?}");
    }
    let killed = adjoin_morphism(&s, 0, 1, &s.gen("u"), 0, "t").unwrap();
    let report = bounded_extension_check(&s, &killed, -1, 0, 4, 2);
    assert!(report.iter().any(|e| !e.ok()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mor_of_random_objects_is_a_dg_category(which in 0usize..6, picks in prop::collection::vec((0usize..4, 0usize..4, prop::collection::vec(-2i64..3, 4)), 1..3)) {
        let (_, c) = finite_corpus::<Q>().swap_remove(which);
        let no = c.num_objects();
        let mut objects = Vec::new();
        for (x1, x0, coeffs) in picks {
            let (x1, x0) = (x1 % no, x0 % no);
            let mut f = Elem::new();
            for (z, k) in c.cycles(x1, x0, 0).iter().zip(&coeffs) {
                elem_add(&mut f, z, &q(*k));
            }
            objects.push(MorObject { x1, x0, f });
        }
        let m = mor_category(&c, objects).unwrap();
        prop_assert!(m.cat.validate().is_ok());
        prop_assert!(m.pi0().check().is_ok());
        prop_assert!(m.pi1().check().is_ok());
        let crit = equivalence_criterion(&m, 3).unwrap();
        prop_assert!(crit.disagreements.is_empty());
    }

    #[test]
    fn equivalence_witnesses_verify(which in 0usize..6, x in 0usize..2, y in 0usize..2, coeffs in prop::collection::vec(-2i64..3, 3)) {
        let (_, c) = finite_corpus::<Q>().swap_remove(which);
        let (x, y) = (x % c.num_objects(), y % c.num_objects());
        let mut f = Elem::new();
        for (z, k) in c.cycles(x, y, 0).iter().zip(&coeffs) {
            elem_add(&mut f, z, &q(*k));
        }
        let h0 = H0Category::new(&c);
        let w = homotopy_equivalence(&c, x, y, &f).unwrap();
        prop_assert_eq!(w.is_some(), h0.inverse(x, y, &f).unwrap().is_some());
        if let Some(w) = w {
            prop_assert!(w.verify(&c).is_ok());
        }
    }
}
