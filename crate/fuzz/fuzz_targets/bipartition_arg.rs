#![no_main]
use libfuzzer_sys::fuzz_target;
use nilcone::combinatorics::{flag_shape, Bipartition};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(b) = s.parse::<Bipartition>() {
        // display must parse back to the same value
        let again: Bipartition = b.to_string().parse().expect("display round-trips");
        assert_eq!(again, b);
        if b.n() <= 64 {
            assert_eq!(flag_shape(&b).n(), b.n());
        }
    }
});
