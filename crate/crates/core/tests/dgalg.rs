use modelbench::dg::concrete::unit;
use modelbench::dg::{ConcreteDgAlg, Elem, FreeMap, NcPoly, Presentation};
use modelbench::dgalg::cocylinder::{cocylinder, compare_path_objects, solve_concrete_derivation};
use modelbench::dgalg::corpus::{concrete_corpus, k_finite};
use modelbench::dgalg::homotopy::*;
use modelbench::dgalg::replace::*;
use modelbench::dgalg::*;
use modelbench::linalg::Matrix;
use modelbench::{Scalar, Q};
use proptest::prelude::*;
use std::sync::Arc;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn dims(a: &ConcreteDgAlg<Q>) -> Vec<usize> {
    (a.lo..=a.hi).map(|n| a.dim(0, 0, n)).collect()
}

/// Words in generators of the given degrees, of length at most `cap`,
/// counted by degree.
fn count_words(degrees: &[i64], lo: i64, hi: i64, cap: u32) -> Vec<usize> {
    let mut out = vec![0; (hi - lo + 1) as usize];
    let mut layer: Vec<i64> = vec![0];
    for len in 0..=cap {
        for &d in &layer {
            if d >= lo && d <= hi {
                out[(d - lo) as usize] += 1;
            }
        }
        if len < cap {
            layer = layer.iter().flat_map(|&d| degrees.iter().map(move |&g| d + g)).collect();
        }
    }
    out
}

/// `dim Z^n` from the rank of the differential out of degree `n`.
fn cycle_dim(a: &ConcreteDgAlg<Q>, n: i64) -> usize {
    let src = a.block(0, 0, n);
    let cols: Vec<Vec<Q>> = src.iter().map(|&i| a.coords(&a.d(&unit(i)), 0, 0, n + 1)).collect();
    let m = Matrix::from_columns(a.dim(0, 0, n + 1), &cols);
    src.len() - m.rank()
}

#[test]
fn spheres_and_discs() {
    let s0 = sphere::<Q>(0);
    let (t, _) = s0.truncate(0, 0, 3);
    assert_eq!(dims(&t), vec![4]);
    for n in -2..=2 {
        let d = disc::<Q>(n);
        assert!(d.validate(6).is_ok());
        let dd = d.d(&d.d(&d.gen("t")));
        assert!(dd.is_zero());
        let w = d.semi_free_witness().unwrap();
        assert_eq!(w.layers, vec![vec![1], vec![0]]);
        assert!(w.verify(&d));
        let s = sphere::<Q>(n);
        assert_eq!(s.semi_free_witness().unwrap().layers, vec![vec![0]]);
    }
    let (v, _) = disc::<Q>(0).truncate(0, 1, 1);
    let c = v.hom_complex(0, 0);
    assert_eq!(c.cohomology(0).dim, 1);
    assert_eq!(c.cohomology(1).dim, 0);
}

#[test]
fn truncation_examples() {
    let (s1, rep) = sphere::<Q>(1).truncate(-3, 0, 3);
    assert_eq!(dims(&s1), vec![1, 1, 1, 1]);
    assert!(!rep.incomplete);
    let labels: Vec<&str> = (0..s1.len()).map(|i| s1.label(i)).collect();
    assert_eq!(labels.len(), 4);
    assert!(s1.validate().is_ok());

    for cap in 1..=4 {
        let (d1, _) = disc::<Q>(1).truncate(-2, 1, cap);
        assert_eq!(dims(&d1), count_words(&[-1, 0], -2, 1, cap), "cap {cap}");
        assert!(d1.validate().is_ok());
    }
    let (k, _) = ground::<Q>().truncate(-2, 2, 4);
    assert_eq!(k.len(), 1);
}

#[test]
fn self_dependent_differential_is_not_semi_free() {
    let mut p = Presentation::<Q>::algebra(&[("x", 1)]);
    let xx = p.word(&["x", "x"]);
    p.set_d("x", xx);
    assert!(p.validate(6).is_ok());
    assert!(p.semi_free_witness().is_err());
}

#[test]
fn free_product_units_and_dimensions() {
    let k = ground::<Q>();
    let s = sphere::<Q>(1);
    assert!(generator_matching(&free_product(&s, &k), &s).is_some());
    let d = disc::<Q>(2);
    assert!(generator_matching(&free_product(&k, &d), &d).is_some());

    let p = free_product(&s, &d);
    let (t, _) = p.truncate(-4, 0, 4);
    assert_eq!(dims(&t), count_words(&[-1, -2, -1], -4, 0, 4));
    assert!(t.validate().is_ok());
}

#[test]
fn free_product_universal_property() {
    let a = sphere::<Q>(1);
    let b = disc::<Q>(1);
    let ab = free_product(&a, &b);
    let target = Arc::new(free_product(&sphere(1), &disc(1)).truncate(-3, 1, 4).0);
    let mut pairs = 0;
    for ua in maps_from_sphere(1, &target).unwrap() {
        for tb in maps_from_disc(1, &target).unwrap() {
            let fixed = vec![Some(ua.clone()), Some(tb.clone()), None];
            let ext = solve_extensions(&ab, &target, &fixed).unwrap();
            let sol = ext.solutions.clone().expect("the induced map exists");
            assert_eq!(sol.dim(), 0);
            let images = ext.images(&target, &fixed, &sol.particular);
            assert_eq!(images[2], target.d(&tb));
            assert!(FreeMap::new(Arc::new(ab.clone()), target.clone(), vec![0], images).check().is_ok());
            pairs += 1;
        }
    }
    assert!(pairs > 0);
}

#[test]
fn deformed_tensor_special_cases() {
    let a = sphere::<Q>(0);
    let w = Presentation::<Q>::algebra(&[("y", -1)]);
    let plain = deformed_tensor(&a, &w, &[NcPoly::zero()], 6).unwrap();
    assert_eq!(plain, free_product(&a, &w));

    let x = a.gen("u");
    let adj = adjoin_variable(&a, &x, 0, "t", 6).unwrap();
    let wt = Presentation::<Q>::algebra(&[("t", -1)]);
    assert_eq!(deformed_tensor(&a, &wt, std::slice::from_ref(&x), 6).unwrap(), adj);
    assert_eq!(adj.diff[1], x);

    let dt = disc::<Q>(1);
    assert_eq!(deformed_tensor(&a, &dt, &[NcPoly::zero(), NcPoly::zero()], 6).unwrap(), free_product(&a, &dt));

    let bad = Presentation::<Q>::algebra(&[("y", 0)]);
    assert!(matches!(deformed_tensor(&a, &bad, std::slice::from_ref(&x), 6), Err(DeformError::Degree { .. })));
    let mut incompatible = disc::<Q>(0);
    incompatible.quiver.gens[0].name = "s".into();
    let r = deformed_tensor(&a, &incompatible, &[NcPoly::zero(), a.word(&["u", "u"]).add(&a.gen("u"))], 6);
    assert!(matches!(r, Err(DeformError::Degree { .. }) | Err(DeformError::Incompatible { .. })));
}

#[test]
fn adjoining_kills_the_class() {
    let a = sphere::<Q>(0);
    let adj = adjoin_variable(&a, &a.gen("u"), 0, "t", 6).unwrap();
    let before = a.truncate(-1, 1, 4).0;
    let after = adj.truncate(-2, 1, 4).0;
    let u_before = before.from_coords(0, 0, 0, &before.coords(&unit(1), 0, 0, 0));
    assert!(before.bound(&u_before, 0, 0, 0).is_none());
    let u = after.basis.iter().position(|b| b.label == "u").unwrap();
    assert!(after.bound(&unit(u), 0, 0, 0).is_some());
    assert_eq!(after.hom_complex(0, 0).cohomology(0).dim, 1);

    let trivial = adjoin_variable(&ground::<Q>(), &NcPoly::zero(), 0, "t", 6).unwrap();
    assert!(generator_matching(&trivial, &sphere(1)).is_some());
}

#[test]
fn sphere_and_disc_maps_match_cycle_and_degree_dimensions() {
    let corpus = concrete_corpus::<Q>();
    assert_eq!(corpus.len(), 10);
    for (name, a) in &corpus {
        assert!(a.validate().is_ok(), "{name}");
        let hi = if a.supported { a.hi } else { a.hi - 1 };
        for deg in a.lo..=hi {
            let n = -deg;
            let zs = maps_from_sphere(n, a).unwrap();
            assert_eq!(zs.len(), cycle_dim(a, deg), "{name} Z^{deg}");
            let ext = solve_extensions(&sphere(n), a, &[None]).unwrap();
            assert_eq!(ext.solutions.unwrap().dim(), zs.len(), "{name} S({n})");
            let ds = maps_from_disc(n, a).unwrap();
            assert_eq!(ds.len(), a.dim(0, 0, deg), "{name} A^{deg}");
            let ext = solve_extensions(&disc(n), a, &[None, None]).unwrap();
            assert_eq!(ext.solutions.unwrap().dim(), ds.len(), "{name} D({n})");
        }
    }
}

#[test]
fn cell_pushout_is_the_next_sphere() {
    for n in -2..=2 {
        let k = ground::<Q>();
        let adj = adjoin_variable(&k, &NcPoly::zero(), n, "u", 6).unwrap();
        assert!(generator_matching(&adj, &sphere(n + 1)).is_some(), "n = {n}");
        let lo = -(n + 1).abs() - 3;
        let target = Arc::new(free_product(&sphere(n + 1), &disc(n + 1)).truncate(lo, lo + 6, 3).0);
        let check = verify_cell_pushout(&k, &NcPoly::zero(), n, &adj, &[(target, vec![])]).unwrap();
        assert_eq!(check.failure, None);
    }
}

#[test]
fn nontrivial_pushout_against_targets() {
    let a = sphere::<Q>(0);
    let x = a.gen("u");
    let adj = adjoin_variable(&a, &x, 0, "t", 6).unwrap();
    let target = Arc::new(disc::<Q>(1).truncate(-2, 1, 3).0);
    let dt = target.basis.iter().position(|b| b.label == "dt").unwrap();
    let tests = vec![(target.clone(), vec![Elem::new()]), (target.clone(), vec![unit(dt)]), (target.clone(), vec![target.identity[0].clone()])];
    let check = verify_cell_pushout(&a, &x, 0, &adj, &tests).unwrap();
    assert_eq!(check, PushoutCheck { targets: 3, failure: None });
}

#[test]
fn replacement_of_the_ground_field_is_empty() {
    let r = cofibrant_replacement(&k_finite::<Q>(), -2, 0, 6, 4);
    let k = Arc::new(ground::<Q>().truncate(-3, 1, 4).0);
    let r = r.or_else(|_| cofibrant_replacement(&k, -2, 0, 6, 4)).unwrap();
    assert_eq!(r.generator_count(), 0);
    assert!(r.cells.stages.is_empty());
    assert!(r.complete && r.check.surjective && r.check.cone_acyclic);
}

#[test]
fn replacement_of_dual_numbers() {
    let b = Arc::new(dual_numbers::<Q>());
    let r = cofibrant_replacement(&b, -6, 0, 6, 8).unwrap();
    assert!(r.cells.stages.len() <= 6);
    assert!(r.complete);
    assert!(r.check.surjective);
    assert!(r.check.cone_acyclic);
    assert!(r.semi_free.verify(&r.source));
    assert!(r.map.check().is_ok());
    let again = recheck(&r.map, &b, -6, 0, 8).unwrap();
    assert_eq!(again, r.check);
    let kinds: Vec<CellKind> = r.cells.stages.iter().flatten().map(|c| c.kind).collect();
    assert_eq!(kinds[0], CellKind::Disc);
    assert!(kinds[1..].iter().all(|&k| k == CellKind::Kill));
}

#[test]
fn replacement_of_a_truncated_sphere() {
    let b = Arc::new(sphere::<Q>(1).truncate(-3, 0, 3).0);
    let r = cofibrant_replacement(&b, -3, 0, 6, 3).unwrap();
    assert_eq!(r.cells.stages.len(), 1);
    assert!(r.complete && r.check.surjective && r.check.cone_acyclic);
    assert!(generator_matching(&r.source, &sphere(1)).is_some());
}

#[test]
fn small_window_is_rejected() {
    let b = Arc::new(dual_numbers::<Q>());
    assert_eq!(cofibrant_replacement(&b, -1, 0, 6, 4).unwrap_err(), ReplaceError::WindowTooSmall { lo: -1, hi: 0 });
}

#[test]
fn cocylinder_of_the_ground_field() {
    let c = cocylinder(&k_finite::<Q>());
    assert!(c.gamma.validate().is_ok());
    assert_eq!(c.gamma.len(), 3);
    assert_eq!(c.gamma.dim(0, 0, 0), 2);
    assert_eq!(c.gamma.dim(0, 0, 1), 1);
    for m in [&c.pi0, &c.pi1, &c.diag] {
        assert!(m.check().is_ok());
    }
    for i in 0..c.base.len() {
        let x = unit(i);
        assert_eq!(c.gamma.d(&c.diag.apply(&x)), c.diag.apply(&c.base.d(&x)));
        assert_eq!(c.pi0.apply(&c.diag.apply(&x)), x);
        assert_eq!(c.pi1.apply(&c.diag.apply(&x)), x);
    }
}

#[test]
fn projections_are_cochain_homotopic() {
    for (name, b) in concrete_corpus::<Q>() {
        if !b.supported {
            continue;
        }
        let c = cocylinder(&b);
        assert!(c.gamma.validate().is_ok(), "{name}");
        let delta = c.middle_slot();
        assert!(delta.verify().is_ok(), "{name}");
        let solved = solve_concrete_derivation(&c.pi0, &c.pi1).expect("a derivation exists");
        assert!(solved.verify().is_ok(), "{name}");
        let cmp = compare_path_objects(&c);
        assert!(cmp.phi.check().is_ok(), "{name}");
        assert!(cmp.check_words(&c, 4).unwrap() > 0, "{name}");
    }
}

#[test]
fn projections_of_the_ground_cocylinder_are_not_elementarily_homotopic() {
    let c = cocylinder(&k_finite::<Q>());
    let (p, images) = as_presentation(&c.gamma);
    let p = Arc::new(p);
    let inc = FreeMap::new(p.clone(), c.gamma.clone(), vec![0], images);
    assert!(inc.check().is_ok());
    let f = inc.compose_with(&c.pi0);
    let g = inc.compose_with(&c.pi1);
    match elementary_homotopy(&f, &g, 4, 20_000) {
        ElementaryOutcome::None { max_len, .. } => assert_eq!(max_len, 4),
        other => panic!("expected exhaustion, got {other:?}"),
    }
}

#[test]
fn equal_maps_are_elementarily_homotopic() {
    let c = cocylinder(&k_finite::<Q>());
    let cmp = compare_path_objects(&c);
    let a = Arc::new(sphere::<Q>(0));
    let b = k_finite::<Q>();
    let f = FreeMap::new(a.clone(), b.clone(), vec![0], vec![b.identity[0].clone()]);
    match elementary_homotopy(&f, &f, 2, 10_000) {
        ElementaryOutcome::Found(k) => {
            assert!(k.verify(&f, &f, 6).is_ok());
            let delta = k.to_cochain(&c, &cmp.phi).unwrap();
            assert!(delta.verify(&f, &f).is_ok());
        }
        other => panic!("expected a homotopy, got {other:?}"),
    }
}

fn disc_target() -> Arc<ConcreteDgAlg<Q>> {
    Arc::new(disc::<Q>(1).truncate(-3, 1, 4).0)
}

fn disc_map(target: &Arc<ConcreteDgAlg<Q>>, c: Q) -> FreeMap<Q> {
    let t = target.basis.iter().position(|b| b.label == "t").unwrap();
    let img = modelbench::dg::concrete::elem_scale(&unit(t), &c);
    FreeMap::new(Arc::new(disc(1)), target.clone(), vec![0], vec![img.clone(), target.d(&img)])
}

#[test]
fn cochain_homotopy_found_and_obstructed() {
    let target = disc_target();
    let f = disc_map(&target, q(1));
    let g = disc_map(&target, q(0));
    assert!(f.check().is_ok() && g.check().is_ok());
    match cochain_homotopy(&f, &g).unwrap() {
        CochainHomotopy::Found(w) => assert!(w.verify(&f, &g).is_ok()),
        other => panic!("{other:?}"),
    }
    match cochain_homotopy(&f, &f).unwrap() {
        CochainHomotopy::Found(w) => assert!(w.values.iter().all(|v| v.is_empty())),
        other => panic!("{other:?}"),
    }

    let k = k_finite::<Q>();
    let s = Arc::new(sphere::<Q>(0));
    let one = FreeMap::new(s.clone(), k.clone(), vec![0], vec![k.identity[0].clone()]);
    let zero = FreeMap::new(s.clone(), k.clone(), vec![0], vec![Elem::new()]);
    match cochain_homotopy(&one, &zero).unwrap() {
        CochainHomotopy::Obstructed(o) => assert!(o.certificate.iter().any(|c| !c.is_negligible())),
        other => panic!("{other:?}"),
    }
    let a = Arc::new(sphere::<Q>(0).truncate(-1, 1, 3).0);
    assert_eq!(equal_on_cohomology(&one, &zero, &a, 0, 0), Some(false));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn truncated_discs_have_the_cohomology_of_a_point(n in -2i64..=2, cap in 1u32..=3) {
        let (d, _) = disc::<Q>(n).truncate(-4, 4, cap);
        prop_assert!(d.validate().is_ok());
        let c = d.hom_complex(0, 0);
        for k in -3..=3 {
            prop_assert_eq!(c.cohomology(k).dim, usize::from(k == 0));
        }
    }

    #[test]
    fn homotopic_maps_agree_on_cohomology(c in -5i64..=5) {
        let target = disc_target();
        let f = disc_map(&target, q(c));
        let g = disc_map(&target, q(0));
        let found = matches!(cochain_homotopy(&f, &g).unwrap(), CochainHomotopy::Found(ref w) if w.verify(&f, &g).is_ok());
        prop_assert!(found);
        let a = Arc::new(disc::<Q>(1).truncate(-3, 1, 3).0);
        prop_assert_eq!(equal_on_cohomology(&f, &g, &a, -2, 0), Some(true));
    }

    #[test]
    fn adjoining_a_multiple_of_a_cycle_kills_it(c in 1i64..=4, n in 0i64..=2) {
        let a = sphere::<Q>(n);
        let x = a.gen("u").scale(&q(c));
        let adj = adjoin_variable(&a, &x, n, "t", 6).unwrap();
        prop_assert!(adj.validate(6).is_ok());
        prop_assert!(adj.semi_free_witness().is_ok());
        let t = adj.truncate(-n - 2, 1, 3).0;
        let u = t.basis.iter().position(|b| b.label == "u").unwrap();
        prop_assert!(t.bound(&unit(u), 0, 0, -n).is_some());
    }
}
