#![no_main]

use libfuzzer_sys::fuzz_target;
use pdlab::catalog::parse_graph_file;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok((n, polys)) = parse_graph_file(src) {
        assert!(polys.iter().all(|p| p.nvars() == n));
    }
});
