#![no_main]
use libfuzzer_sys::fuzz_target;
use nilcone::PrimeSchedule;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let (list, holdout) = match s.split_once('|') {
        Some((l, h)) => (l, h.trim().parse::<u32>().ok()),
        None => (s, None),
    };
    if let Ok(primes) = PrimeSchedule::parse_primes(list) {
        if let Ok(schedule) = PrimeSchedule::new(primes, holdout) {
            for d in 0..4 {
                if let Ok((sample, held)) = schedule.for_degree(d) {
                    assert_eq!(sample.len(), d + 1);
                    assert!(!sample.contains(&held));
                }
            }
        }
    }
});
