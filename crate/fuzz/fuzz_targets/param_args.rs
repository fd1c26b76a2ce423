#![no_main]

use emergent_cli::params::Params;
use libfuzzer_sys::fuzz_target;

// Arguments are NUL-separated so the fuzzer controls word boundaries.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let args: Vec<&str> = text.split('\0').collect();
    let Ok(params) = Params::parse_args(&args) else { return };

    // Re-emitting every pair as `--key=value` must reproduce the same set.
    let again: Vec<String> = params
        .keys()
        .map(|k| format!("--{k}={}", params.get(k).expect("listed key")))
        .collect();
    assert_eq!(Params::parse_args(&again).expect("canonical form parses"), params);
});
