#![no_main]

use libfuzzer_sys::fuzz_target;
use pdlab::exact::Sampler;
use pdlab::matspaces::parse_matspace_spec;

fuzz_target!(|data: &[u8]| {
    let Ok(spec) = std::str::from_utf8(data) else { return };
    let _ = parse_matspace_spec(spec, &mut Sampler::new(0));
});
