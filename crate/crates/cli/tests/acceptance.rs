//! Acceptance checks, one PASS/FAIL line each.
//!
//! `ACCEPTANCE_ONLY=3,5` restricts the run to the listed criteria.

use modelbench::cat::colimits::{colimit_presentation, DEFAULT_SATURATION_CAP};
use modelbench::cat::{corpus, enumerate_functors, point, terminal, CatDiagram, FinCat, DEFAULT_GUARD};
use modelbench::catmodel::{check_cat_model, naturally_isomorphic, orthogonality_profile, structural_profile, test_functors, CatAmbient};
use modelbench::complexes::{random, surj_quas_criteria};
use modelbench::dg::concrete::unit;
use modelbench::dg::{ConcreteDgAlg, FreeMap, NcPoly};
use modelbench::dgalg::cocylinder::{cocylinder, compare_path_objects, solve_concrete_derivation};
use modelbench::dgalg::corpus::{concrete_corpus, k_finite};
use modelbench::dgalg::homotopy::{elementary_homotopy, ElementaryOutcome};
use modelbench::dgalg::replace::cofibrant_replacement;
use modelbench::dgalg::{adjoin_variable, as_presentation, disc, dual_numbers, free_product, generator_matching, ground, maps_from_disc, maps_from_sphere, sphere, verify_cell_pushout};
use modelbench::dgcat::corpus::{finite_corpus, retract_pair};
use modelbench::dgcat::{bounded_k_cohomology, classify_dg_functor, default_mor_objects, equivalence_criterion, k_category, k_embed, mor_category, path_object, remark_identity, zigzag_endomorphisms};
use modelbench::lifting::axioms::AxiomStatus;
use modelbench::linalg::Matrix;
use modelbench::Q;
use modelbench_cli::suite::CORPUS;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn model_axioms() -> Check {
    let started = Instant::now();
    let objs: Vec<Arc<FinCat>> = corpus::full().into_iter().map(|(_, c)| c).collect();
    let reports = check_cat_model(&objs, Default::default()).map_err(|e| e.to_string())?;
    for name in ["MC1", "MC2", "MC3", "MC4", "MC5"] {
        let r = reports.iter().find(|r| r.axiom == name).ok_or(format!("{name} missing"))?;
        ensure(r.status == AxiomStatus::Pass, || format!("{name}: {} {:?}", r.status, r.counterexample))?;
    }
    let t = started.elapsed();
    ensure(t < Duration::from_secs(300), || format!("took {t:?}"))?;
    Ok(format!("{} categories, {:.0?}", objs.len(), t))
}

fn small_categories() -> Vec<(String, Arc<FinCat>)> {
    corpus::full().into_iter().filter(|(_, c)| c.num_objects() <= 3).collect()
}

fn nat_iso_routes() -> Check {
    let cats = small_categories();
    let mut pairs = 0usize;
    for (_, c) in &cats {
        for (_, d) in &cats {
            let fs = enumerate_functors(c, d, DEFAULT_GUARD).map_err(|e| e.to_string())?;
            for f in &fs {
                for g in &fs {
                    pairs += 1;
                    ensure(naturally_isomorphic(f, g).agree(), || format!("routes disagree on {f:?} / {g:?}"))?;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs over {} categories", cats.len()))
}

fn orthogonality() -> Check {
    let amb = CatAmbient::new(DEFAULT_GUARD);
    let cats = corpus::full();
    let mut count = 0;
    for (_, c) in &cats {
        for (_, d) in &cats {
            for f in enumerate_functors(c, d, DEFAULT_GUARD).map_err(|e| e.to_string())? {
                count += 1;
                let p = orthogonality_profile(&amb, &f).map_err(|e| e.to_string())?;
                ensure(p == structural_profile(&f), || format!("{f:?}: {p:?}"))?;
            }
        }
    }
    Ok(format!("{count} functors against {} test maps", test_functors().len()))
}

fn jordan() -> Check {
    let one = Arc::new(terminal());
    let a2 = Arc::new(modelbench::cat::arrow_category());
    let co = CatDiagram::from_parallel_pair(one, a2.clone(), point(&a2, 0), point(&a2, 1));
    for k in 0..=8 {
        let col = colimit_presentation(&co, DEFAULT_SATURATION_CAP, Some(k));
        ensure(col.presentation.quiver.vertices.len() == 1, || format!("cap {k}: objects {:?}", col.presentation.quiver.vertices))?;
        let n = col.saturation.classes.len();
        ensure(n == k + 1, || format!("cap {k}: {n} morphisms"))?;
    }
    Ok("caps 0..=8".into())
}

fn surj_quas() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut yes, mut no) = (0, 0);
    for i in 0..200 {
        let f = random::chain_map::<Q, _>(&mut rng, -3, 3, 4);
        let c = surj_quas_criteria(&f, -3, 3);
        ensure(c.agree(), || format!("map {i}: {} {} {}", c.c1, c.c2, c.c3))?;
        if c.c1 {
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok(format!("{yes} yes, {no} no"))
}

fn cycle_dim(a: &ConcreteDgAlg<Q>, n: i64) -> usize {
    let src = a.block(0, 0, n);
    let cols: Vec<Vec<Q>> = src.iter().map(|&i| a.coords(&a.d(&unit(i)), 0, 0, n + 1)).collect();
    src.len() - Matrix::from_columns(a.dim(0, 0, n + 1), &cols).rank()
}

fn spheres_and_discs() -> Check {
    let corpus = concrete_corpus::<Q>();
    ensure(corpus.len() == 10, || format!("{} algebras", corpus.len()))?;
    let mut degrees = 0;
    for (name, a) in &corpus {
        let hi = if a.supported { a.hi } else { a.hi - 1 };
        for deg in a.lo..=hi {
            let z = maps_from_sphere(-deg, a).map_err(|e| e.to_string())?.len();
            ensure(z == cycle_dim(a, deg), || format!("{name}: Z^{deg} {z} vs {}", cycle_dim(a, deg)))?;
            let d = maps_from_disc(-deg, a).map_err(|e| e.to_string())?.len();
            ensure(d == a.dim(0, 0, deg), || format!("{name}: A^{deg} {d} vs {}", a.dim(0, 0, deg)))?;
            degrees += 1;
        }
    }
    Ok(format!("{degrees} degrees"))
}

fn cell_pushout() -> Check {
    for n in -2..=2 {
        let k = ground::<Q>();
        let adj = adjoin_variable(&k, &NcPoly::zero(), n, "u", 6).map_err(|e| e.to_string())?;
        ensure(generator_matching(&adj, &sphere(n + 1)).is_some(), || format!("n = {n}: not the next sphere"))?;
        let lo = -(n + 1).abs() - 3;
        let target = Arc::new(free_product(&sphere(n + 1), &disc(n + 1)).truncate(lo, lo + 6, 3).0);
        let check = verify_cell_pushout(&k, &NcPoly::zero(), n, &adj, &[(target, vec![])]).map_err(|e| e.to_string())?;
        ensure(check.failure.is_none(), || format!("n = {n}: {:?}", check.failure))?;
    }
    Ok("n in -2..=2".into())
}

fn replacement() -> Check {
    let b = Arc::new(dual_numbers::<Q>());
    let r = cofibrant_replacement(&b, -6, 0, 6, 8).map_err(|e| e.to_string())?;
    ensure(r.cells.stages.len() <= 6, || format!("{} stages", r.cells.stages.len()))?;
    ensure(r.complete && r.check.surjective && r.check.cone_acyclic, || format!("{:?}", r.check))?;
    ensure(r.semi_free.verify(&r.source), || "semi-free witness rejected".into())?;
    // Degree 0 is an edge of the window above; one degree more puts it inside.
    let wide = cofibrant_replacement(&b, -6, 1, 6, 8).map_err(|e| e.to_string())?;
    ensure(wide.cells.stages.len() <= 6, || format!("{} stages on -6..1", wide.cells.stages.len()))?;
    ensure(wide.complete && wide.check.surjective && wide.check.cone_acyclic, || format!("-6..1: {:?}", wide.check))?;
    ensure(wide.semi_free.verify(&wide.source), || "semi-free witness rejected on -6..1".into())?;
    Ok(format!("{} stages on -6..0, {} stages and {} generators on -6..1", r.cells.stages.len(), wide.cells.stages.len(), wide.generator_count()))
}

fn cocylinders() -> Check {
    let mut algebras = 0;
    for (name, b) in concrete_corpus::<Q>() {
        if !b.supported {
            continue;
        }
        let c = cocylinder(&b);
        let w = solve_concrete_derivation(&c.pi0, &c.pi1).ok_or(format!("{name}: no derivation"))?;
        ensure(w.verify().is_ok(), || format!("{name}: derivation rejected"))?;
        let words = compare_path_objects(&c).check_words(&c, 4).map_err(|e| format!("{name}: {e:?}"))?;
        ensure(words > 0, || format!("{name}: no words checked"))?;
        algebras += 1;
    }
    let c = cocylinder(&k_finite::<Q>());
    let (p, images) = as_presentation(&c.gamma);
    let inc = FreeMap::new(Arc::new(p), c.gamma.clone(), vec![0], images);
    let (f, g) = (inc.compose_with(&c.pi0), inc.compose_with(&c.pi1));
    match elementary_homotopy(&f, &g, 4, 20_000) {
        ElementaryOutcome::None { max_len: 4, .. } => Ok(format!("{algebras} algebras, no elementary homotopy for the ground field")),
        other => Err(format!("ground field search: {other:?}")),
    }
}

fn k_suite() -> Check {
    let k = k_category::<Q>();
    ensure(k.validate(8).is_ok(), || "d squared".into())?;
    let (lhs, rhs) = remark_identity::<Q>();
    ensure(lhs.sub(&rhs).is_zero(), || "boundary identity".into())?;
    let e = k_embed::<Q>().check(-4, 0, 6, 12);
    ensure(e.forward_ok && e.backward_ok, || "d-compatibility".into())?;
    ensure(e.source_roundtrip && e.target_roundtrip && e.contraction_roundtrip, || format!("{e:?}"))?;
    let h = bounded_k_cohomology::<Q>(6, 2);
    ensure(h.all_scalar(), || "non-scalar degree 0 cocycle".into())?;
    Ok(format!("{} source words, {} target words", e.source_words, e.target_words))
}

fn mor_and_paths() -> Check {
    let corpus = finite_corpus::<Q>();
    for (name, c) in &corpus {
        c.validate().map_err(|e| format!("{name}: {e}"))?;
        let m = mor_category(c, default_mor_objects(c)).map_err(|e| format!("{name}: {e}"))?;
        m.cat.validate().map_err(|e| format!("{name}: mor {e}"))?;
        let crit = equivalence_criterion(&m, 6).map_err(|e| format!("{name}: {e}"))?;
        ensure(crit.disagreements.is_empty(), || format!("{name}: {:?}", crit.disagreements))?;
        let p = path_object(c, 4).map_err(|e| format!("{name}: {e}"))?;
        ensure(p.factors_diagonal(), || format!("{name}: diagonal"))?;
        let d = classify_dg_functor(&p.diag, 4).map_err(|e| format!("{name}: {e}"))?;
        ensure(d.quasi_fully_faithful, || format!("{name}: diag not quasi-fully-faithful"))?;
        let iso = p.isofibration_report(2).map_err(|e| format!("{name}: {e}"))?;
        ensure(iso.failures == 0 && iso.lifts > 0, || format!("{name}: {iso:?}"))?;
    }
    let (lo, hi, cap) = (-1, 0, 4);
    let r = Arc::new(retract_pair::<Q>().truncate(lo, hi, cap).0);
    let f = (0..r.len()).find(|&i| r.label(i) == "f").ok_or("no f")?;
    let z = zigzag_endomorphisms(&r, 0, 1, &unit(f)).map_err(|e| format!("{e:?}"))?;
    ensure(z.left_quasi_iso && z.right_quasi_iso, || "zigzag legs".into())?;
    Ok(format!("{} dg categories", corpus.len()))
}

fn binary(args: &[&str]) -> Result<(Vec<u8>, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_modelbench")).args(args).output().map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code().unwrap_or(-1)))
}

fn determinism() -> Check {
    let (a, code) = binary(&["suite", "--seed", "11"])?;
    ensure(code == 0, || format!("suite exited {code}: {}", String::from_utf8_lossy(&a)))?;
    let (b, _) = binary(&["suite", "--seed", "11"])?;
    ensure(a == b, || "suite reports differ".into())?;
    let dir = std::env::temp_dir().join(format!("modelbench-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    for (name, text) in CORPUS {
        let doc = modelbench_cli::parse(text).map_err(|e| format!("{name}: {e}"))?;
        let printed = modelbench_cli::print(&doc);
        let again = modelbench_cli::parse(&printed).map_err(|e| format!("{name} reprinted: {e}"))?;
        ensure(again == doc, || format!("{name}: round trip changed the document"))?;
        let path = dir.join(name);
        std::fs::write(&path, &printed).map_err(|e| e.to_string())?;
        let (out, code) = binary(&["print", path.to_str().unwrap()])?;
        ensure(code == 0 && out == printed.as_bytes(), || format!("{name}: printer not idempotent"))?;
    }
    std::fs::remove_dir_all(&dir).ok();
    Ok(format!("{} bytes, {} files", a.len(), CORPUS.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("cat model axioms", model_axioms),
        ("natural isomorphism routes", nat_iso_routes),
        ("orthogonality characterizations", orthogonality),
        ("coequalizer of the two points", jordan),
        ("surjective quasi-isomorphism criteria", surj_quas),
        ("sphere and disc maps", spheres_and_discs),
        ("cell pushout", cell_pushout),
        ("bounded cofibrant replacement", replacement),
        ("cocylinder homotopies", cocylinders),
        ("contractible category suite", k_suite),
        ("mor and path objects", mor_and_paths),
        ("cli determinism", determinism),
    ];
    let only: Option<Vec<usize>> = std::env::var("ACCEPTANCE_ONLY").ok().map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let n = i + 1;
        if only.as_ref().is_some_and(|o| !o.contains(&n)) {
            continue;
        }
        let started = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let t = started.elapsed();
        match result {
            Ok(detail) => println!("PASS {n:>2} {name}: {detail} [{t:.1?}]"),
            Err(why) => {
                failed += 1;
                println!("FAIL {n:>2} {name}: {why} [{t:.1?}]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
