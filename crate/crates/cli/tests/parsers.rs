//! Replays the fuzz corpus and random mutations of it through every parser
//! entry point; none may panic.

use std::fs;
use std::path::PathBuf;

use ncym::io::{parse_connection, parse_form};
use ncym::{Matrix, PolynomialPotential, C64};
use ncym_cli::RunConfig;
use proptest::prelude::*;

fn corpus(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut files: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    files.into_iter().map(|p| fs::read(p).unwrap()).collect()
}

fn config(data: &[u8]) {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(cfg) = RunConfig::parse(text) {
            let _ = cfg.validate();
        }
    }
}

fn connection(data: &[u8]) {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_connection(text);
    }
}

fn form(data: &[u8]) {
    if let Some((&size, rest)) = data.split_first() {
        if let Ok(text) = std::str::from_utf8(rest) {
            let _ = parse_form(text, usize::from(size % 5));
        }
    }
}

fn potential(data: &[u8]) {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(v) = PolynomialPotential::parse(text) {
            let q = Matrix::<C64>::identity(2);
            let _ = v.eval(&q);
            let _ = v.derivative(&q);
        }
    }
}

type Target = (&'static str, fn(&[u8]));

const TARGETS: [Target; 4] = [
    ("parse_config", config),
    ("parse_connection", connection),
    ("parse_form", form),
    ("parse_potential", potential),
];

#[test]
fn corpus_seeds_parse_as_expected() {
    for (name, run) in TARGETS {
        let seeds = corpus(name);
        assert!(!seeds.is_empty(), "{name}");
        seeds.iter().for_each(|s| run(s));
    }
    assert!(RunConfig::parse(&String::from_utf8(corpus("parse_config")[2].clone()).unwrap()).is_ok());
    let (a, charges) = parse_connection(std::str::from_utf8(&corpus("parse_connection")[0]).unwrap()).unwrap();
    assert_eq!(a.potential().dim(), 3);
    assert_eq!(charges, vec![-2, 1]);
}

fn mutate(seed: &[u8], edits: &[(usize, u8)], cut: usize) -> Vec<u8> {
    let mut out = seed.to_vec();
    for &(i, b) in edits {
        if !out.is_empty() {
            let n = out.len();
            out[i % n] = b;
        }
    }
    out.truncate(cut.max(1));
    out
}

proptest! {
    #[test]
    fn arbitrary_bytes_never_panic(data in proptest::collection::vec(any::<u8>(), 0..256)) {
        for (_, run) in TARGETS {
            run(&data);
        }
    }

    #[test]
    fn mutated_seeds_never_panic(
        which in 0usize..64,
        edits in proptest::collection::vec((any::<usize>(), any::<u8>()), 0..6),
        cut in 0usize..512,
    ) {
        for (name, run) in TARGETS {
            let seeds = corpus(name);
            let seed = &seeds[which % seeds.len()];
            run(&mutate(seed, &edits, cut));
        }
    }

    #[test]
    fn json_shaped_forms_never_panic(
        label in "[0-9.]{0,6}",
        rows in proptest::collection::vec(proptest::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 0..4), 0..4),
        size in 0usize..5,
    ) {
        let m: Vec<Vec<[f64; 2]>> = rows.iter().map(|r| r.iter().map(|&(a, b)| [a, b]).collect()).collect();
        let text = serde_json::json!({ label: m }).to_string();
        let _ = parse_form(&text, size);
        let _ = parse_connection(&serde_json::json!({"A": [m.clone(), m.clone(), m]}).to_string());
    }
}
