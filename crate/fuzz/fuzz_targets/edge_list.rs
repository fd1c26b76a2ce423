#![no_main]

use emergent_core::geometry::{parse_edge_list, EdgeRecord};
use libfuzzer_sys::fuzz_target;

fn render(records: &[EdgeRecord]) -> String {
    let mut out = String::from("src,dst,mutual_info_nats,weight\n");
    for r in records {
        out.push_str(&format!("{},{},{:?},{:?}\n", r.src, r.dst, r.mutual_info_nats, r.weight));
    }
    out
}

fn same_f64(x: f64, y: f64) -> bool {
    x.to_bits() == y.to_bits() || (x.is_nan() && y.is_nan())
}

fn same(a: &[EdgeRecord], b: &[EdgeRecord]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| {
            x.src == y.src
                && x.dst == y.dst
                && same_f64(x.mutual_info_nats, y.mutual_info_nats)
                && same_f64(x.weight, y.weight)
        })
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(records) = parse_edge_list(text) else { return };
    let again = parse_edge_list(&render(&records)).expect("rendered list parses");
    assert!(same(&records, &again), "round trip changed records");
});
