#![no_main]
use libfuzzer_sys::fuzz_target;
use nilcone::fiber::parse_cache_line;
use nilcone::FiberCounter;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let _ = parse_cache_line(s);
    // whole-file loading must reject or accept without panicking
    let counter = FiberCounter::new();
    if counter.load(s.as_bytes()).is_ok() {
        let mut out = Vec::new();
        counter.save(&mut out).expect("in-memory write");
        let again = FiberCounter::new();
        again.load(out.as_slice()).expect("saved cache reloads");
        assert_eq!(again.stats().entries, counter.stats().entries);
    }
});
