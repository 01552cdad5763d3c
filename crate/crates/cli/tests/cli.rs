use modelbench::Q;
use modelbench_cli::ast::*;
use modelbench_cli::cli::main_with;
use modelbench_cli::suite::CORPUS;
use modelbench_cli::{parse, print};
use proptest::prelude::*;
use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

fn corpus_file(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "corpus", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn temp_doc(tag: &str, text: &str) -> String {
    let p = std::env::temp_dir().join(format!("modelbench-cli-{}-{tag}.mb", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (Value, i32) {
    let argv: Vec<String> = std::iter::once("modelbench").chain(args.iter().copied()).map(String::from).collect();
    let (out, code) = main_with(argv).expect("arguments parse");
    (serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")), code)
}

#[test]
fn minimal_category_parses() {
    let doc = parse("category One { objects *; }").unwrap();
    assert_eq!(doc.blocks.len(), 1);
    let Body::Category(c) = &doc.blocks[0].body else { panic!() };
    assert_eq!(c.objects, vec![Ident::new("*")]);
}

#[test]
fn corpus_round_trips() {
    for (name, text) in CORPUS {
        let doc = parse(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = print(&doc);
        assert_eq!(parse(&printed).unwrap(), doc, "{name}");
        assert_eq!(print(&parse(&printed).unwrap()), printed, "{name}");
    }
}

#[test]
fn malformed_degree_points_at_the_token() {
    let e = parse("dgalg A {\n  generators x [1.5];\n}\n").unwrap_err();
    assert_eq!((e.span.line, e.span.col), (2, 17));
    assert!(e.message.contains("1.5"), "{}", e.message);
    let e = parse("dgalg A { generators x [y]; }").unwrap_err();
    assert_eq!((e.span.line, e.span.col), (1, 25));
    assert!(!e.expected.is_empty());
}

#[test]
fn reference_errors_have_spans() {
    let path = temp_doc("bad-ref", "category C {\n  objects a;\n  arrows f: a -> b;\n}\n");
    let (v, code) = run(&["parse", &path]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "input-error");
    assert_eq!((v["error"]["line"].as_u64(), v["error"]["col"].as_u64()), (Some(3), Some(18)));
}

#[test]
fn unknown_name_is_an_input_error() {
    let (v, code) = run(&["classify", &corpus_file("categories.mb"), "--functor", "missing"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "input-error");
    assert!(v["error"]["message"].as_str().unwrap().contains("missing"));
}

#[test]
fn inclusion_of_a_point_is_an_acyclic_injection() {
    let (v, code) = run(&["classify", &corpus_file("categories.mb"), "--functor", "inc0", "--verify"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["acyclic_injection"], true);
    assert_eq!(r["isofibration"], false);
    assert_eq!(r["verified"], true);
    assert!(r["quasi_inverse"].is_object());
}

#[test]
fn k_report_runs() {
    let (v, code) = run(&["dgcat", "k-report"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "dgcat k-report");
    assert_eq!(v["result"]["bounded_k_cohomology"]["all_scalar"], true);
    assert!(!v["result"]["bounded_k_cohomology"]["entries"].as_array().unwrap().is_empty());
}

#[test]
fn reports_are_deterministic() {
    let f = corpus_file("complexes.mb");
    let args = ["modelbench", "surj-quas", &f, "--map", "fold", "--window=0..1"].map(String::from).to_vec();
    assert_eq!(main_with(args.clone()).unwrap(), main_with(args).unwrap());
    let (a, _) = run(&["suite", "--seed", "3"]);
    let (b, _) = run(&["suite", "--seed", "3"]);
    assert_eq!(a, b);
    assert_eq!(a["result"]["random_chain_maps"]["seed"], 3);
}

#[test]
fn run_and_direct_invocation_agree() {
    let f = corpus_file("categories.mb");
    let (direct, _) = run(&["lift", &f, "--square", "lifted", "--verify"]);
    let (via, _) = run(&["run", &f, "--command", "lift_it"]);
    assert_eq!(direct, via);
}

#[test]
fn no_answer_exits_with_one() {
    let (v, code) = run(&["surj-quas", &corpus_file("complexes.mb"), "--map", "collapse", "--window=0..1"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "fail");
    assert!(v["result"]["section_obstruction"].is_object());
}

#[test]
fn guard_exhaustion_exits_with_three() {
    let (v, code) = run(&["ho-hom", &corpus_file("categories.mb"), "--source", "Iso", "--target", "A2", "--guard", "1"]);
    assert_eq!(code, 3, "{v}");
    assert_eq!(v["status"], "guard-exhausted");
}

#[test]
fn binary_exit_codes_and_text_format() {
    let bin = env!("CARGO_BIN_EXE_modelbench");
    let out = Command::new(bin).args(["paths", &corpus_file("quivers.mb"), "--quiver", "loop", "--format", "text"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("schema: 1\n"), "{text}");
    assert!(text.contains("count: 7"), "{text}");
    let out = Command::new(bin).args(["paths", "/nonexistent.mb", "--quiver", "loop"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin).args(["no-such-command"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn timings_only_on_request() {
    let (v, _) = run(&["dgcat", "k-report"]);
    assert!(v.get("timings").is_none());
    let (v, _) = run(&["dgcat", "k-report", "--timings"]);
    assert!(v["timings"]["total_ms"].is_u64());
}

fn ident() -> impl Strategy<Value = Ident> {
    "[a-z][a-z0-9_]{0,4}".prop_filter("keywords", |s| !["id", "objects", "arrows", "relations", "lo", "dims", "d", "at"].contains(&s.as_str())).prop_map(|s| Ident::new(&s))
}

fn rational_lit() -> impl Strategy<Value = Q> {
    (-9i64..10, 1i64..5).prop_map(|(a, b)| Q::new(a.into(), b.into()))
}

fn category_block() -> impl Strategy<Value = Body> {
    prop::collection::vec(ident(), 1..4).prop_flat_map(|objs| {
        let n = objs.len();
        let arrows = prop::collection::vec((ident(), 0..n, 0..n), 0..3);
        (Just(objs), arrows)
    })
    .prop_map(|(objects, arrows)| {
        let arrows = arrows.into_iter().map(|(name, s, t)| ArrowDecl { name, src: objects[s].clone(), tgt: objects[t].clone() }).collect();
        Body::Category(CategoryDef { objects, arrows, relations: vec![] })
    })
}

fn complex_block() -> impl Strategy<Value = Body> {
    (-3i64..3, prop::collection::vec(0usize..3, 1..4)).prop_flat_map(|(lo, dims)| {
        let ms: Vec<_> = (0..dims.len() - 1).map(|k| prop::collection::vec(prop::collection::vec(rational_lit(), dims[k]), dims[k + 1])).collect();
        (Just(lo), Just(dims), ms)
    })
    .prop_map(|(lo, dims, ms)| Body::Complex(ComplexDef { lo, dims, diffs: ms.into_iter().enumerate().map(|(k, m)| (lo + k as i64, m)).collect() }))
}

proptest! {
    #[test]
    fn printed_documents_parse_back(bodies in prop::collection::vec(prop_oneof![category_block(), complex_block()], 1..4)) {
        let blocks: Vec<Block> = bodies.into_iter().enumerate().map(|(i, body)| Block { name: Ident::new(&format!("B{i}")), body }).collect();
        let doc = Document { blocks };
        let printed = print(&doc);
        let back = parse(&printed).map_err(|e| TestCaseError::fail(format!("{e}\n{printed}")))?;
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(print(&back), printed);
    }
}
