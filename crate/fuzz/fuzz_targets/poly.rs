#![no_main]

use libfuzzer_sys::fuzz_target;
use pdlab::exact::parse_poly;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let Ok(src) = std::str::from_utf8(rest) else { return };
    let nvars = usize::from(n % 8) + 1;
    if let Ok(p) = parse_poly(src, nvars) {
        // printing and reparsing is the identity
        assert_eq!(parse_poly(&p.to_string(), nvars).ok(), Some(p));
    }
});
