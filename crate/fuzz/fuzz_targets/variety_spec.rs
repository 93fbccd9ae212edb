#![no_main]

use libfuzzer_sys::fuzz_target;
use pdlab::catalog::parse_variety_spec;

const GRAPH: &str = "n = 2\nx1^2 - x2^2\nx1*x2\n";

fuzz_target!(|data: &[u8]| {
    let Ok(spec) = std::str::from_utf8(data) else { return };
    let _ = parse_variety_spec(spec, &|_| Ok(GRAPH.to_string()));
});
