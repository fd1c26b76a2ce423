#![no_main]

use emergent_cli::params::{normalize_key, Params};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(params) = Params::parse_config(text) else { return };
    for key in params.keys() {
        assert!(!key.is_empty());
        assert_eq!(normalize_key(key), key);
    }
});
