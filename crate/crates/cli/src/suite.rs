//! The built-in corpus and the `suite` command.

use crate::cli::{execute, Cli, Flags, Format, Source};
use crate::report::{CmdError, Outcome};
use clap::Parser;
use modelbench::complexes::{random, surj_quas_criteria};
use modelbench::Q;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub const CORPUS: [(&str, &str); 4] = [
    ("categories.mb", include_str!("../corpus/categories.mb")),
    ("quivers.mb", include_str!("../corpus/quivers.mb")),
    ("complexes.mb", include_str!("../corpus/complexes.mb")),
    ("dg.mb", include_str!("../corpus/dg.mb")),
];

const RANDOM_MAPS: usize = 24;

fn run_block(name: &str, src: &Source, argv: &[String], verify: bool) -> Value {
    let full: Vec<String> = std::iter::once("modelbench".to_string()).chain(argv.iter().cloned()).collect();
    let mut cli = match Cli::try_parse_from(&full) {
        Ok(c) => c,
        Err(e) => return json!({ "command": name, "status": "input-error", "message": e.to_string().lines().next().unwrap_or_default() }),
    };
    cli.flags.format = Format::Json;
    cli.flags.timings = false;
    cli.flags.verify |= verify;
    let (out, _) = execute(&cli, argv, Some(src));
    let v: Value = serde_json::from_str(&out).unwrap_or(Value::Null);
    json!({ "command": name, "status": v["status"], "inputs": v["inputs"] })
}

pub fn run(flags: &Flags) -> Result<Outcome, CmdError> {
    let mut ok = true;
    let mut files = Vec::new();
    for (name, text) in CORPUS {
        let src = Source::parse(text.to_string())?;
        let printed = crate::print(&src.doc);
        let round_trip = crate::parse(&printed).map(|d| d == src.doc && crate::print(&d) == printed).unwrap_or(false);
        ok &= round_trip;
        let mut blocks = Vec::new();
        for b in &src.doc.blocks {
            if let crate::ast::Body::Command(c) = &b.body {
                let r = run_block(&b.name.name, &src, &c.argv, flags.verify);
                ok &= r["status"] == "ok";
                blocks.push(r);
            }
        }
        files.push(json!({ "file": name, "round_trip": round_trip, "commands": blocks }));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(flags.seed);
    let (mut agree, mut positive) = (0, 0);
    for _ in 0..RANDOM_MAPS {
        let f = random::chain_map::<Q, _>(&mut rng, -3, 3, 4);
        let (lo, hi) = f.window();
        let c = surj_quas_criteria(&f, lo, hi);
        agree += c.agree() as usize;
        positive += c.c1 as usize;
    }
    ok &= agree == RANDOM_MAPS;
    Ok(Outcome::new(
        ok,
        json!({
            "files": files,
            "random_chain_maps": { "seed": flags.seed, "count": RANDOM_MAPS, "criteria_agree": agree, "surjective_quasi_isos": positive },
        }),
    ))
}
