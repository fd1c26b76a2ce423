//! Replays the checked-in fuzz corpus so the parser properties also run
//! under `cargo test` on a stable toolchain.

use std::path::PathBuf;

use emergent_cli::params::{normalize_key, Params};
use emergent_core::geometry::parse_edge_list;

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert!(!files.is_empty(), "no seeds for {target}");
    files.into_iter().map(|p| std::fs::read(p).unwrap()).collect()
}

#[test]
fn param_args_seeds_round_trip() {
    let mut parsed = 0;
    for data in seeds("param_args") {
        let text = String::from_utf8(data).unwrap();
        let args: Vec<&str> = text.split('\0').collect();
        let Ok(params) = Params::parse_args(&args) else { continue };
        let again: Vec<String> = params.keys().map(|k| format!("--{k}={}", params.get(k).unwrap())).collect();
        assert_eq!(Params::parse_args(&again).unwrap(), params);
        parsed += 1;
    }
    assert!(parsed > 0);
}

#[test]
fn config_file_seeds_have_normal_keys() {
    let mut parsed = 0;
    for data in seeds("config_file") {
        let Ok(params) = Params::parse_config(std::str::from_utf8(&data).unwrap()) else { continue };
        assert!(params.keys().all(|k| !k.is_empty() && normalize_key(k) == k));
        parsed += 1;
    }
    assert!(parsed > 0);
}

#[test]
fn edge_list_seeds_round_trip() {
    let mut parsed = 0;
    for data in seeds("edge_list") {
        let Ok(records) = parse_edge_list(std::str::from_utf8(&data).unwrap()) else { continue };
        let mut text = String::from("src,dst,mutual_info_nats,weight\n");
        for r in &records {
            text.push_str(&format!("{},{},{:?},{:?}\n", r.src, r.dst, r.mutual_info_nats, r.weight));
        }
        let again = parse_edge_list(&text).unwrap();
        assert_eq!(again.len(), records.len());
        for (a, b) in records.iter().zip(&again) {
            assert_eq!((&a.src, &a.dst), (&b.src, &b.dst));
            for (x, y) in [(a.mutual_info_nats, b.mutual_info_nats), (a.weight, b.weight)] {
                assert!(x.to_bits() == y.to_bits() || (x.is_nan() && y.is_nan()));
            }
        }
        parsed += 1;
    }
    assert!(parsed > 0);
}
