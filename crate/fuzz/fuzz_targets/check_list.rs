#![no_main]
use libfuzzer_sys::fuzz_target;
use nilcone::checks::parse_check_list;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(list) = parse_check_list(s) {
            assert!(!list.is_empty());
            assert!(list.windows(2).all(|w| w[0] < w[1]));
        }
    }
});
